//! Hand-derived values checked against the engine, with small independent
//! oracles where a value can be recomputed without the engine's own code
//! path.

use num_traits::{One, Zero};
use quadrica::brauer::{classes_equal, residue_profile, symbol, tame_residue, BrauerClass};
use quadrica::certify::{
    arason_nontriviality, build_certificate, pirutka_check, replay, verdict_p2, Outcome, PirutkaOutcome,
};
use quadrica::funfield::{parametrize, PrimeDivisor, SurfaceKind, SurfaceModel};
use quadrica::quadform::{apply_move, clifford_invariant, make_affine_form, BundleType, DiagForm, Move};
use quadrica::{Poly, RatFn, Rational};

const F1: &str = "x^2+y^2+1-2*(x*y+x+y)";
const F: &str = "x^2+y^2+z^2-2*(x*y+x*z+y*z)";

fn s() -> SurfaceModel {
    SurfaceModel::p2()
}

fn poly(t: &str) -> Poly {
    s().parse(t).unwrap()
}

fn f(t: &str) -> RatFn {
    RatFn::from(poly(t))
}

fn sym(a: &str, b: &str) -> BrauerClass {
    symbol(&f(a), &f(b)).unwrap()
}

fn div(t: &str) -> PrimeDivisor {
    PrimeDivisor::new(&s(), &poly(t)).unwrap()
}

fn affine(entries: [&str; 4]) -> DiagForm {
    make_affine_form(entries.map(poly), &s()).unwrap()
}

/// Exact rational evaluation by Horner over the term list; independent of
/// `compose` and `eval_partial`.
fn eval(p: &Poly, point: &[Rational]) -> Rational {
    p.terms().fold(Rational::zero(), |acc, (m, c)| {
        let mut term = c.clone();
        for (e, v) in m.exps().iter().zip(point) {
            for _ in 0..*e {
                term *= v;
            }
        }
        acc + term
    })
}

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// Whether a univariate coefficient list (constant term first) is a
/// constant times a square, by the power-series square root of the monic
/// reversal.
fn is_const_times_square(coeffs: &[Rational]) -> bool {
    let mut c: Vec<Rational> = coeffs.to_vec();
    while c.last().is_some_and(Zero::is_zero) {
        c.pop();
    }
    while c.first().is_some_and(Zero::is_zero) {
        c.remove(0);
        if c.first().is_some_and(Zero::is_zero) {
            c.remove(0);
        } else {
            return false;
        }
    }
    if c.len() <= 1 {
        return true;
    }
    if (c.len() - 1) % 2 != 0 {
        return false;
    }
    let lead = c.last().unwrap().clone();
    let monic: Vec<Rational> = c.iter().rev().map(|x| x / &lead).collect();
    let half = (monic.len() - 1) / 2;
    let mut r = vec![Rational::one()];
    for k in 1..=half {
        let mut acc = monic[k].clone();
        for i in 1..k {
            acc -= &r[i] * &r[k - i];
        }
        r.push(acc / Rational::from_integer(2.into()));
    }
    let mut sq = vec![Rational::zero(); 2 * half + 1];
    for (i, a) in r.iter().enumerate() {
        for (j, b) in r.iter().enumerate() {
            sq[i + j] += a * b;
        }
    }
    sq == monic
}

/// Residue of `(a, b)` along the affine line `v = 0` by hand: strip `v`
/// from each entry, restrict to `v = 0`, and test `a0^n / b0^m` for
/// squareness as a polynomial in the remaining chart variable.
fn line_residue_is_trivial(a: &Poly, b: &Poly, v: usize, other: usize) -> bool {
    let strip = |p: &Poly| {
        let var = Poly::var(p.vars(), v);
        let mut p = p.clone();
        let mut k = 0i64;
        while let Some(q) = p.div_exact(&var) {
            p = q;
            k += 1;
        }
        (k, p)
    };
    let (m, a0) = strip(a);
    let (n, b0) = strip(b);
    // Exponent parities are all that matter modulo squares.
    let pick = |p: &Poly, e: i64| if e % 2 != 0 { Some(p.clone()) } else { None };
    let mut prod = Poly::one(a.vars());
    for p in [pick(&a0, n), pick(&b0, m)].into_iter().flatten() {
        prod = &prod * &p;
    }
    let deg = prod.degree_in(other) as usize;
    let coeffs: Vec<Rational> = (0..=deg)
        .map(|k| {
            prod.terms()
                .filter(|(mo, _)| mo.exps()[other] == k as u32 && mo.exps()[v] == 0)
                .map(|(_, c)| c.clone())
                .fold(Rational::zero(), |x, y| x + y)
        })
        .collect();
    is_const_times_square(&coeffs)
}

#[test]
fn conic_parametrization_lies_on_f() {
    let p = parametrize(&div(F)).unwrap();
    for t in [q(0, 1), q(1, 1), q(-3, 2), q(7, 5), q(11, 1)] {
        let point: Vec<Rational> = p.coords.iter().map(|c| eval(c, &[t.clone()])).collect();
        assert!(eval(&poly(F), &point).is_zero(), "t = {t}");
    }
}

#[test]
fn conic_parametrization_is_the_hand_one() {
    // Projection from (1, 1, 0) gives ((t-1)^2, (t+1)^2, 4t^2) up to scaling.
    let p = parametrize(&div(F)).unwrap();
    for t in [q(2, 1), q(3, 1), q(-5, 7)] {
        let got: Vec<Rational> = p.coords.iter().map(|c| eval(c, &[t.clone()])).collect();
        let one = Rational::one();
        let want = [(&t - &one) * (&t - &one), (&t + &one) * (&t + &one), q(4, 1) * &t * &t];
        let ratio = &got[2] / &want[2];
        for (g, w) in got.iter().zip(&want) {
            assert_eq!(g, &(w * &ratio));
        }
    }
}

#[test]
fn line_residues_match_the_hand_oracle() {
    let pairs = [
        ("x", "y"),
        ("x*y", "x"),
        ("x", "y-2"),
        ("x^3", "y^2-3*y+1"),
        ("x", F1),
        ("x*(y+1)", "x^2*(y-1)"),
        ("y", F1),
        ("x*y", F1),
        ("x", "(y-1)^2"),
        ("x", "y*(y+1)"),
        ("x", "y^2-2"),
        ("x^2", "y"),
        ("x*(x-y)", "x+y+1"),
    ];
    let sx = 0;
    let sy = 1;
    for (a, b) in pairs {
        let (pa, pb) = (poly(a), poly(b));
        let engine = tame_residue(&sym(a, b), &div("x")).unwrap().is_trivial();
        assert_eq!(engine, line_residue_is_trivial(&pa, &pb, sx, sy), "({a}, {b}) along x = 0");
        let engine = tame_residue(&sym(a, b), &div("y")).unwrap().is_trivial();
        assert_eq!(engine, line_residue_is_trivial(&pa, &pb, sy, sx), "({a}, {b}) along y = 0");
    }
}

#[test]
fn square_test_oracle_is_sane() {
    let c = |v: &[i64]| v.iter().map(|&k| q(k, 1)).collect::<Vec<_>>();
    assert!(is_const_times_square(&c(&[1, -2, 1])));
    assert!(is_const_times_square(&c(&[0, 0, 3])));
    assert!(!is_const_times_square(&c(&[0, 1])));
    assert!(!is_const_times_square(&c(&[-2, 0, 1])));
}

/// Canonical fiber: d = {F}, alpha = (x, y) ramifies along x, y and z with
/// residue [t] on each line, and condition (*) holds with Hensel
/// witnesses (y-1)^2, (x-1)^2, (x-y)^2.
#[test]
fn hpt_certificate_matches_hand_values() {
    let v = verdict_p2(&BundleType::parse(SurfaceKind::P2, "2,2,2,2").unwrap()).unwrap();
    assert_eq!(v.outcome, Outcome::NotStablyRational);
    let cert = v.certificate.unwrap();
    assert_eq!(cert.discriminant.support, vec![poly(F1).to_string()]);
    assert!(cert.discriminant.nontrivial);
    let divisors: Vec<&str> = cert.alpha_residues.keys().map(String::as_str).collect();
    assert_eq!(divisors, vec!["x", "y", "z"]);
    assert!(cert.alpha_residues.values().all(|r| r == "[t]"));
    let witnesses: Vec<(String, String)> = cert
        .pirutka_report
        .entries
        .iter()
        .map(|e| (e.divisor.clone(), e.hensel_witness.clone().unwrap()))
        .collect();
    let expect = |d: &str, w: &str| (d.to_string(), poly(w).to_string());
    assert_eq!(
        witnesses,
        vec![expect("z", "(x-y)^2"), expect("y", "(x-1)^2"), expect("x", "(y-1)^2")]
    );
    assert_eq!(cert.pirutka_report.outcome, PirutkaOutcome::Pass);
    assert_eq!(cert.arason.alpha_nonzero_witness.as_deref(), Some("x"));
    assert!(replay(&cert).unwrap().all_ok());
}

#[test]
fn q2_certificate_scales_by_y() {
    let t = BundleType::parse(SurfaceKind::P2, "0,2,2,4").unwrap();
    let cert = build_certificate(&t, &s()).unwrap();
    assert_eq!(cert.degeneration, ["1", "x*z", "x*y", &format!("y*z*({F})")].map(|e| poly(e).to_string()));
    assert_eq!(cert.fiber, ["1", "x", "x*y", &format!("y*({F1})")].map(|e| poly(e).to_string()));
    assert_eq!(cert.similarity.scale, "y");
}

#[test]
fn open_type_is_not_certifiable() {
    let t = BundleType::parse(SurfaceKind::P2, "1,1,1,3").unwrap();
    assert!(build_certificate(&t, &s()).is_err());
}

/// For `<1, x, y, xy>` the Clifford invariant is `(x, y) + (xy, 1) = (x, y)`
/// by hand, so the residues of `alpha = (x, y)` match it everywhere and the
/// trivial discriminant is a square: condition (*) holds, but injectivity
/// is unavailable.
#[test]
fn split_pattern_form() {
    let q = affine(["1", "x", "y", "x*y"]);
    assert!(classes_equal(&clifford_invariant(&q).unwrap().class, &sym("x", "y"), &s()).unwrap());
    let report = pirutka_check(&q, &sym("x", "y")).unwrap();
    assert_eq!(report.outcome, PirutkaOutcome::Pass);
    assert_eq!(report.entries.len(), 3);
    let arason = arason_nontriviality(&q, &sym("x", "y")).unwrap();
    assert!(!arason.holds && !arason.d_nontrivial);
}

#[test]
fn equality_spot_checks() {
    assert!(classes_equal(&sym("x*y", "x"), &sym("y", "x"), &s()).unwrap());
    assert!(!classes_equal(&sym("x", "y"), &BrauerClass::zero(), &s()).unwrap());
    let q = affine(["y", "x", "x*y", F1]);
    let scaled = apply_move(&q, &Move::Scale(poly("y"))).unwrap();
    let want = quadrica::brauer::add_classes(&sym("x", "y"), &sym("y", F1));
    assert!(classes_equal(&clifford_invariant(&scaled).unwrap().class, &want, &s()).unwrap());
    assert!(residue_profile(&sym("y", F1), &s()).unwrap().is_empty());
}
