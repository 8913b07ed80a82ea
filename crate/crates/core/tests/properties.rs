//! Randomized identities for the exact kernel and the residue calculus.
//!
//! Functions are drawn as `c * prod p_i^k_i` over a pool of irreducible
//! polynomials on the plane chart, so every input stays inside the
//! supported factorization class.

use num_traits::{One, Zero};
use proptest::prelude::*;
use quadrica::brauer::{add_classes, classes_equal, residue_profile, symbol, tame_residue, BrauerClass};
use quadrica::funfield::{multiply_classes, square_class, valuation_along, PrimeDivisor, SurfaceModel};
use quadrica::quadform::{apply_move, clifford_invariant, discriminant, make_affine_form, Move};
use quadrica::{Poly, RatFn, Rational};

const CASES: u32 = 256;
const F1: &str = "x^2+y^2+1-2*(x*y+x+y)";

/// Affine irreducibles and the projective divisors they define.
const POOL: [(&str, &str); 7] = [
    ("x", "x"),
    ("y", "y"),
    ("x-y", "x-y"),
    ("x+1", "x+z"),
    ("y-2", "y-2*z"),
    ("x+y+1", "x+y+z"),
    (F1, "x^2+y^2+z^2-2*(x*y+x*z+y*z)"),
];

fn s() -> SurfaceModel {
    SurfaceModel::p2()
}

fn poly(t: &str) -> Poly {
    s().parse(t).unwrap()
}

fn divisor(i: usize) -> PrimeDivisor {
    if i == POOL.len() {
        return PrimeDivisor::new(&s(), &poly("z")).unwrap();
    }
    PrimeDivisor::new(&s(), &poly(POOL[i].1)).unwrap()
}

fn constant() -> impl Strategy<Value = Rational> {
    prop::sample::select(vec![(1, 1), (-1, 1), (2, 1), (-3, 1), (1, 2), (5, 3)])
        .prop_map(|(n, d)| Rational::new(n.into(), i64::into(d)))
}

fn exponents() -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(prop::sample::select(vec![0u32, 0, 0, 0, 1, 1, 2]), POOL.len())
}

fn product(c: &Rational, exps: &[u32]) -> Poly {
    let mut p = Poly::constant(s().vars(), c.clone());
    for (k, (text, _)) in exps.iter().zip(POOL) {
        p = &p * &poly(text).pow(*k).unwrap();
    }
    p
}

/// A nonzero rational function `c * N / D` on the chart.
fn ratfn() -> impl Strategy<Value = RatFn> {
    (constant(), exponents(), exponents()).prop_map(|(c, n, d)| {
        RatFn::new(product(&c, &n), product(&Rational::one(), &d)).unwrap()
    })
}

/// Random polynomial with small coefficients in `x, y, z`.
fn small_poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec(((0u32..3, 0u32..3, 0u32..2), -4i64..5), 0..5).prop_map(|terms| {
        let vars = s().vars().clone();
        terms.into_iter().fold(Poly::zero(&vars), |acc, ((a, b, c), k)| {
            &acc + &Poly::monomial(&vars, vec![a, b, c], Rational::from_integer(k.into()))
        })
    })
}

fn sym(a: &RatFn, b: &RatFn) -> BrauerClass {
    symbol(a, b).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(CASES))]

    #[test]
    fn ring_axioms(a in small_poly(), b in small_poly(), c in small_poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &Poly::one(a.vars()), a.clone());
        if !b.is_zero() {
            prop_assert_eq!((&a * &b).div_exact(&b), Some(a.clone()));
        }
    }

    #[test]
    fn factorization_is_multiplicative(c in constant(), e1 in exponents(), e2 in exponents()) {
        let p = product(&c, &e1);
        let q = product(&Rational::one(), &e2);
        let fp = p.factor().unwrap();
        prop_assert_eq!(fp.recombine(p.vars()), p.clone());
        let fpq = (&p * &q).factor().unwrap();
        prop_assert_eq!(fpq.recombine(p.vars()), &p * &q);
        for (i, (text, _)) in POOL.iter().enumerate() {
            let g = poly(text).normalized();
            let mult = fpq.factors.iter().find(|(f, _)| f == &g).map_or(0, |(_, k)| *k);
            prop_assert_eq!(mult, e1[i] + e2[i]);
        }
    }

    #[test]
    fn valuation_is_additive(f in ratfn(), g in ratfn(), i in 0..=POOL.len()) {
        let c = divisor(i);
        let fg = f.checked_mul(&g).unwrap();
        prop_assert_eq!(
            valuation_along(&fg, &c).unwrap(),
            valuation_along(&f, &c).unwrap() + valuation_along(&g, &c).unwrap()
        );
    }

    #[test]
    fn square_classes_are_multiplicative(f in ratfn(), g in ratfn()) {
        let fg = f.checked_mul(&g).unwrap();
        let lhs = square_class(&fg).unwrap();
        let rhs = multiply_classes(&square_class(&f).unwrap(), &square_class(&g).unwrap());
        prop_assert_eq!(lhs, rhs);
        prop_assert!(square_class(&f.powi(2).unwrap()).unwrap().is_trivial());
    }

    #[test]
    fn residue_is_bilinear(f1 in ratfn(), f2 in ratfn(), g in ratfn(), i in 0..=POOL.len()) {
        let c = divisor(i);
        let f12 = f1.checked_mul(&f2).unwrap();
        let lhs = tame_residue(&sym(&f12, &g), &c).unwrap();
        let r1 = tame_residue(&sym(&f1, &g), &c).unwrap();
        let r2 = tame_residue(&sym(&f2, &g), &c).unwrap();
        prop_assert_eq!(lhs, r1.mul(&r2));
    }

    #[test]
    fn symbol_with_negative_is_trivial(f in ratfn()) {
        let minus = f.checked_mul(&RatFn::from(Poly::from_i64(f.vars(), -1))).unwrap();
        prop_assert!(residue_profile(&sym(&f, &minus), &s()).unwrap().is_empty());
    }

    #[test]
    fn symbol_residues_are_symmetric(f in ratfn(), g in ratfn(), i in 0..=POOL.len()) {
        let c = divisor(i);
        prop_assert_eq!(tame_residue(&sym(&f, &g), &c).unwrap(), tame_residue(&sym(&g, &f), &c).unwrap());
    }

    /// Away from the zeros and poles of both entries the residue vanishes.
    #[test]
    fn residue_vanishes_off_support(c1 in constant(), e1 in exponents(), e2 in exponents(), i in 0..POOL.len()) {
        let mut e1 = e1;
        let mut e2 = e2;
        e1[i] = 0;
        e2[i] = 0;
        let f = RatFn::from(product(&c1, &e1));
        let g = RatFn::from(product(&Rational::one(), &e2));
        prop_assume!(!f.is_constant() && !g.is_constant());
        let r = tame_residue(&sym(&f, &g), &divisor(i)).unwrap();
        prop_assert!(r.is_trivial());
    }
}

fn affine(entries: [&str; 4]) -> quadrica::quadform::DiagForm {
    make_affine_form(entries.map(poly), &s()).unwrap()
}

/// Scale factors `c x^a y^b F^k` on the chart.
fn scale() -> impl Strategy<Value = Poly> {
    (constant(), 0u32..4, 0u32..4, 0u32..3).prop_map(|(c, a, b, k)| {
        let vars = s().vars().clone();
        let m = Poly::monomial(&vars, vec![a, b, 0], c);
        &m * &poly(F1).pow(k).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// `cl(l q) = cl(q) + (l, d)`, decided by the residue equality test.
    #[test]
    fn clifford_similarity_law(lambda in scale(), which in 0usize..3) {
        let yf = format!("y*({F1})");
        let xyf = format!("x*y*({F1})");
        let entries = [
            ["y", "x", "x*y", F1],
            ["1", "x", "x*y", &yf],
            ["1", "x", "y", &xyf],
        ][which];
        let q = affine(entries);
        let scaled = apply_move(&q, &Move::Scale(lambda.clone())).unwrap();
        let lhs = add_classes(&clifford_invariant(&scaled).unwrap().class, &clifford_invariant(&q).unwrap().class);
        let d = RatFn::from(discriminant(&q).unwrap().representative(s().vars()));
        let rhs = sym(&RatFn::from(lambda), &d);
        prop_assert!(classes_equal(&lhs, &rhs, &s()).unwrap());
    }
}

#[test]
fn constant_helpers_are_sane() {
    assert!(Rational::zero().is_zero());
    assert_eq!(product(&Rational::one(), &[0; 7]), Poly::one(s().vars()));
}
