//! Explicit degenerations: diagonal forms of a given type whose generic
//! fiber is similar to the canonical fiber `<y, x, xy, F>`.

use serde::{Deserialize, Serialize};

use super::CertifyError;
use crate::funfield::{SurfaceKind, SurfaceModel};
use crate::quadform::{chart_quadric, make_diag_form, BundleType, DiagForm};
use crate::Poly;

/// Which template produced a degeneration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    /// `<yz, xz, xy, F>` for type `(2,2,2,2)`.
    P2Hpt,
    P2Q1,
    P2Q2,
    P2Q3,
    A1,
    A2,
    A3,
    A4,
    B1,
    B2,
    C1,
    C2,
    /// Assignment search starting from `<1, x1, x1 y1, y1 h>`.
    ExtQ1,
    /// Assignment search starting from `<y1, x1, x1 y1, h>`.
    ExtQ2,
}

impl Rule {
    pub fn tag(&self) -> &'static str {
        match self {
            Rule::P2Hpt => "p2-hpt",
            Rule::P2Q1 => "p2-q1",
            Rule::P2Q2 => "p2-q2",
            Rule::P2Q3 => "p2-q3",
            Rule::A1 => "a1",
            Rule::A2 => "a2",
            Rule::A3 => "a3",
            Rule::A4 => "a4",
            Rule::B1 => "b1",
            Rule::B2 => "b2",
            Rule::C1 => "c1",
            Rule::C2 => "c2",
            Rule::ExtQ1 => "ext-q1",
            Rule::ExtQ2 => "ext-q2",
        }
    }

    pub fn surface_kind(&self) -> SurfaceKind {
        match self {
            Rule::P2Hpt | Rule::P2Q1 | Rule::P2Q2 | Rule::P2Q3 => SurfaceKind::P2,
            _ => SurfaceKind::P1xP1,
        }
    }
}

impl std::fmt::Display for Rule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.tag())
    }
}

/// One template entry: signed exponents over the surface variables and
/// whether the quadric (`F` or `h`) is a factor.
type Template = [(Vec<i64>, bool); 4];

fn realize(rule: Rule, surface: &SurfaceModel, template: Template) -> Result<DiagForm, CertifyError> {
    let vars = surface.vars();
    let quadric = surface.homogenize_poly(&chart_quadric(surface))?;
    let mut entries: Vec<Poly> = Vec::with_capacity(4);
    for (entry, (exps, with_quadric)) in template.into_iter().enumerate() {
        let exps: Vec<u32> = exps
            .iter()
            .map(|&e| u32::try_from(e).map_err(|_| CertifyError::NegativeExponent { rule, entry }))
            .collect::<Result<_, _>>()?;
        let mono = Poly::one(vars).mul_monomial(&exps)?;
        entries.push(if with_quadric { &mono * &quadric } else { mono });
    }
    let entries: [Poly; 4] = entries.try_into().expect("four entries");
    Ok(make_diag_form(entries, surface)?)
}

fn not_certifiable(t: &BundleType) -> CertifyError {
    CertifyError::NotCertifiable(t.to_string())
}

/// Template selection for a plane type, assuming the type sits in the
/// not-stably-rational branch.
pub fn select_rule_p2(t: &BundleType) -> Result<Rule, CertifyError> {
    let BundleType::P2(d) = *t else {
        return Err(CertifyError::SurfaceMismatch(t.to_string()));
    };
    let d = d.map(i64::from);
    if d == [2, 2, 2, 2] {
        return Ok(Rule::P2Hpt);
    }
    if d.iter().sum::<i64>() < 8 || d[1] < 1 || d[3] < 3 {
        return Err(not_certifiable(t));
    }
    Ok(if d[0] % 2 == 0 {
        Rule::P2Q2
    } else if d[2] >= 3 {
        Rule::P2Q1
    } else {
        Rule::P2Q3
    })
}

pub fn construct_degeneration_p2(t: &BundleType) -> Result<(Rule, DiagForm), CertifyError> {
    let rule = select_rule_p2(t)?;
    let BundleType::P2(d) = *t else { unreachable!() };
    let [d0, d1, d2, d3] = d.map(i64::from);
    // Exponents of (x, y, z).
    let template: Template = match rule {
        Rule::P2Hpt => [
            (vec![0, 1, 1], false),
            (vec![1, 0, 1], false),
            (vec![1, 1, 0], false),
            (vec![0, 0, 0], true),
        ],
        Rule::P2Q1 => [
            (vec![0, 0, d0], false),
            (vec![d1, 0, 0], false),
            (vec![1, 1, d2 - 2], false),
            (vec![0, 1, d3 - 3], true),
        ],
        Rule::P2Q2 => [
            (vec![0, 0, d0], false),
            (vec![1, 0, d1 - 1], false),
            (vec![d2 - 1, 1, 0], false),
            (vec![0, 1, d3 - 3], true),
        ],
        Rule::P2Q3 => {
            assert!(d3 >= 5, "odd d0 with d2 = 1 forces d3 >= 5, got {t}");
            [
                (vec![0, 0, d0], false),
                (vec![d1, 0, 0], false),
                (vec![0, 1, d2 - 1], false),
                (vec![1, 1, d3 - 4], true),
            ]
        }
        _ => unreachable!("plane rules only"),
    };
    Ok((rule, realize(rule, &SurfaceModel::p2(), template)?))
}

/// Case and subcase for a `P1 x P1` type with `d3, e3 >= 3` that is not
/// rational.
pub fn select_rule_p1xp1(t: &BundleType) -> Result<Rule, CertifyError> {
    let BundleType::P1xP1(p) = *t else {
        return Err(CertifyError::SurfaceMismatch(t.to_string()));
    };
    let [(d0, e0), (d1, e1), (d2, e2), (d3, e3)] = p;
    if d3 < 3 || e3 < 3 || d2 == 0 || (d1 == 0 && e1 == 0 && e0 == 0) || (e0 == 0 && e1 == 0 && e2 == 0) {
        return Err(not_certifiable(t));
    }
    let d0_even = d0 % 2 == 0;
    Ok(if e1 >= 1 {
        match (d0_even, e0 % 2 == 0) {
            (true, true) => Rule::A1,
            (false, true) => Rule::A2,
            (true, false) => Rule::A3,
            (false, false) => Rule::A4,
        }
    } else if e0 >= 1 {
        if d0_even { Rule::B1 } else { Rule::B2 }
    } else if d0_even {
        Rule::C1
    } else {
        Rule::C2
    })
}

/// The literal template for the Case A to C rules, or the assignment search
/// for the extension rules.
pub fn construct_degeneration_p1xp1(t: &BundleType, rule: Rule) -> Result<DiagForm, CertifyError> {
    let BundleType::P1xP1(p) = *t else {
        return Err(CertifyError::SurfaceMismatch(t.to_string()));
    };
    if rule.surface_kind() != SurfaceKind::P1xP1 {
        return Err(CertifyError::RuleMismatch { rule, ty: t.to_string() });
    }
    let [(d0, e0), (d1, e1), (d2, e2), (d3, e3)] = p.map(|(d, e)| (i64::from(d), i64::from(e)));
    // Exponents of (x0, x1, y0, y1).
    let h_entry = (vec![d3 - 3, 1, e3 - 3, 1], true);
    let template: Template = match rule {
        Rule::A1 => [
            (vec![0, d0, 0, e0], false),
            (vec![d1, 0, e1 - 1, 1], false),
            (vec![d2 - 1, 1, e2, 0], false),
            h_entry,
        ],
        Rule::A2 => [
            (vec![d0, 0, 0, e0], false),
            (vec![d1, 0, e1 - 1, 1], false),
            (vec![0, d2, e2, 0], false),
            h_entry,
        ],
        Rule::A3 => [
            (vec![0, d0, e0, 0], false),
            (vec![d1, 0, 0, e1], false),
            (vec![d2 - 1, 1, e2, 0], false),
            h_entry,
        ],
        Rule::A4 => [
            (vec![d0, 0, e0, 0], false),
            (vec![d1, 0, 0, e1], false),
            (vec![0, d2, e2, 0], false),
            h_entry,
        ],
        Rule::B1 => [
            (vec![0, d0, e0 - 1, 1], false),
            (vec![d1, 0, 0, 0], false),
            (vec![d2 - 1, 1, e2, 0], false),
            h_entry,
        ],
        Rule::B2 => [
            (vec![d0, 0, e0 - 1, 1], false),
            (vec![d1, 0, 0, 0], false),
            (vec![0, d2, e2, 0], false),
            h_entry,
        ],
        Rule::C1 => [
            (vec![0, d0, 0, 0], false),
            (vec![d1 - 1, 1, 0, 0], false),
            (vec![d2, 0, e2 - 1, 1], false),
            h_entry,
        ],
        Rule::C2 => [
            (vec![d0, 0, 0, 0], false),
            (vec![0, d1, 0, 0], false),
            (vec![d2, 0, e2 - 1, 1], false),
            h_entry,
        ],
        Rule::ExtQ1 | Rule::ExtQ2 => assign_extension(t, rule)?,
        _ => unreachable!("checked above"),
    };
    let form = realize(rule, &SurfaceModel::p1xp1(), template)?;
    if matches!(rule, Rule::ExtQ1 | Rule::ExtQ2) {
        debug_assert!(crate::quadform::is_weak_bundle(&form));
    }
    Ok(form)
}

type BaseEntry = ([u32; 4], bool);

/// Base entries of the extension rules as exponents of `(x0, x1, y0, y1)`.
fn extension_base(rule: Rule) -> [BaseEntry; 4] {
    match rule {
        Rule::ExtQ1 => [([0, 0, 0, 0], false), ([0, 1, 0, 0], false), ([0, 1, 0, 1], false), ([0, 0, 0, 1], true)],
        Rule::ExtQ2 => [([0, 0, 0, 1], false), ([0, 1, 0, 0], false), ([0, 1, 0, 1], false), ([0, 0, 0, 0], true)],
        _ => unreachable!("extension rules only"),
    }
}

/// Forms similar to `base` on the chart: scaled by `x1^i y1^j h^k` with
/// squares absorbed, optionally with the two factors exchanged. The
/// unscaled base comes first.
fn similarity_orbit(base: [BaseEntry; 4]) -> Vec<[BaseEntry; 4]> {
    let mut out: Vec<[BaseEntry; 4]> = Vec::new();
    for swap in [false, true] {
        for k in [false, true] {
            for (i, j) in [(0, 0), (1, 0), (0, 1), (1, 1)] {
                let form = base.map(|(e, h)| {
                    let (x1, y1) = if swap { (e[3], e[1]) } else { (e[1], e[3]) };
                    ([0, (x1 + i) % 2, 0, (y1 + j) % 2], h ^ k)
                });
                if !out.contains(&form) {
                    out.push(form);
                }
            }
        }
    }
    out
}

/// Cheapest coprime padding of `base` into the slots of `p`, as
/// `(cost, template)`.
fn assign_base(p: &[(u32, u32); 4], base: &[BaseEntry; 4]) -> Option<(u32, Template)> {
    let mut best: Option<(u32, Template)> = None;
    for perm in crate::quadform::permutations() {
        // Per slot: the cheapest padding for every zero pattern of interest.
        let mut options: Vec<Vec<BaseEntry>> = Vec::with_capacity(4);
        for (slot, &j) in perm.iter().enumerate() {
            let (exps, with_h) = base[j];
            let extra = if with_h { 2 } else { 0 };
            let (Some(dx), Some(dy)) = (
                p[slot].0.checked_sub(exps[0] + exps[1] + extra),
                p[slot].1.checked_sub(exps[2] + exps[3] + extra),
            ) else {
                break;
            };
            let mut here = Vec::new();
            for c in [dx / 2, 0] {
                for e in [dy / 2, 0] {
                    let v = [exps[0] + dx - 2 * c, exps[1] + 2 * c, exps[2] + dy - 2 * e, exps[3] + 2 * e];
                    if !here.contains(&(v, with_h)) {
                        here.push((v, with_h));
                    }
                }
            }
            options.push(here);
        }
        if options.len() != 4 {
            continue;
        }
        for a in &options[0] {
            for b in &options[1] {
                for c in &options[2] {
                    for d in &options[3] {
                        let chosen = [a, b, c, d];
                        let coprime = (0..4).all(|v| chosen.iter().any(|(x, _)| x[v] == 0));
                        if !coprime {
                            continue;
                        }
                        let cost = chosen.iter().map(|(x, _)| x[0] + x[2]).sum::<u32>();
                        if best.as_ref().is_none_or(|(b, _)| cost < *b) {
                            let template = chosen.map(|(x, h)| (x.iter().map(|&e| i64::from(e)).collect(), *h));
                            best = Some((cost, template));
                        }
                    }
                }
            }
        }
    }
    best
}

/// Whether the extension search finds a coprime form of type `t`.
pub fn extension_assignable(t: &BundleType, rule: Rule) -> bool {
    matches!(t, BundleType::P1xP1(_)) && matches!(rule, Rule::ExtQ1 | Rule::ExtQ2) && assign_extension(t, rule).is_ok()
}

/// Puts the base entries into the slots of `t`, padding each with
/// `x0^a y0^b x1^2c y1^2e`. Among assignments with coprime entries the
/// smallest total boundary exponent `sum(a + b)` wins; ties go to the
/// first permutation in lexicographic order. When the base itself admits
/// no assignment, the rest of its similarity orbit is tried in order.
fn assign_extension(t: &BundleType, rule: Rule) -> Result<Template, CertifyError> {
    let BundleType::P1xP1(p) = *t else { unreachable!() };
    similarity_orbit(extension_base(rule))
        .iter()
        .find_map(|base| assign_base(&p, base))
        .map(|(_, template)| template)
        .ok_or_else(|| CertifyError::NoAssignment { rule, ty: t.to_string() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadform::{is_weak_bundle, type_of};

    fn p2(s: &str) -> BundleType {
        BundleType::parse(SurfaceKind::P2, s).unwrap()
    }

    fn p11(s: &str) -> BundleType {
        BundleType::parse(SurfaceKind::P1xP1, s).unwrap()
    }

    fn entries(f: &DiagForm) -> Vec<Poly> {
        f.entries().to_vec()
    }

    fn parse_all(s: &SurfaceModel, items: &[&str]) -> Vec<Poly> {
        items.iter().map(|e| s.parse(e).unwrap()).collect()
    }

    const F: &str = "(x^2+y^2+z^2-2*(x*y+x*z+y*z))";
    const H: &str = "(x1^2*y0^2+x0^2*y1^2+x0^2*y0^2-2*(x1*y1*x0*y0+x1*x0*y0^2+y1*y0*x0^2))";

    #[test]
    fn plane_templates() {
        let s = SurfaceModel::p2();
        let (rule, f) = construct_degeneration_p2(&p2("2,2,2,2")).unwrap();
        assert_eq!(rule, Rule::P2Hpt);
        assert_eq!(entries(&f), parse_all(&s, &["y*z", "x*z", "x*y", F]));

        let (rule, f) = construct_degeneration_p2(&p2("0,2,2,4")).unwrap();
        assert_eq!(rule, Rule::P2Q2);
        assert_eq!(entries(&f), parse_all(&s, &["1", "x*z", "x*y", &format!("y*z*{F}")]));

        let (rule, f) = construct_degeneration_p2(&p2("1,1,3,3")).unwrap();
        assert_eq!(rule, Rule::P2Q1);
        assert_eq!(entries(&f), parse_all(&s, &["z", "x", "x*y*z", &format!("y*{F}")]));

        let (rule, f) = construct_degeneration_p2(&p2("1,1,1,5")).unwrap();
        assert_eq!(rule, Rule::P2Q3);
        assert_eq!(entries(&f), parse_all(&s, &["z", "x", "y", &format!("x*y*z*{F}")]));
    }

    #[test]
    fn plane_precondition() {
        for t in ["1,1,1,3", "0,2,2,2", "0,0,2,4", "1,1,1,1"] {
            assert!(matches!(construct_degeneration_p2(&p2(t)), Err(CertifyError::NotCertifiable(_))), "{t}");
        }
    }

    #[test]
    fn product_templates() {
        let s = SurfaceModel::p1xp1();
        let t = p11("1:1,1:1,1:1,3:3");
        assert_eq!(select_rule_p1xp1(&t).unwrap(), Rule::A4);
        let f = construct_degeneration_p1xp1(&t, Rule::A4).unwrap();
        assert_eq!(entries(&f), parse_all(&s, &["x0*y0", "x0*y1", "x1*y0", &format!("x1*y1*{H}")]));

        let t = p11("0:2,2:0,2:2,4:4");
        assert_eq!(select_rule_p1xp1(&t).unwrap(), Rule::B1);
        let f = construct_degeneration_p1xp1(&t, Rule::B1).unwrap();
        assert_eq!(entries(&f), parse_all(&s, &["y0*y1", "x0^2", "x0*x1*y0^2", &format!("x0*y0*x1*y1*{H}")]));
        assert_eq!(type_of(&f).unwrap().bundle_type, t);
        assert!(is_weak_bundle(&f));
    }

    #[test]
    fn negative_exponents_are_reported() {
        // e1 = 0 makes the Case A entry y0^(e1 - 1) illegal.
        let t = p11("0:0,2:0,2:2,4:4");
        assert_eq!(
            construct_degeneration_p1xp1(&t, Rule::A1),
            Err(CertifyError::NegativeExponent { rule: Rule::A1, entry: 1 })
        );
    }

    #[test]
    fn extension_assignment() {
        // d3 = 2 is outside the literal tables.
        let t = p11("0:1,2:1,2:1,2:3");
        let f = construct_degeneration_p1xp1(&t, Rule::ExtQ1).unwrap();
        assert_eq!(type_of(&f).unwrap().bundle_type, t);
        assert!(is_weak_bundle(&f));
        let t = p11("0:1,2:1,2:3,2:3");
        let f = construct_degeneration_p1xp1(&t, Rule::ExtQ2).unwrap();
        assert_eq!(type_of(&f).unwrap().bundle_type, t);
        assert!(is_weak_bundle(&f));
    }
}
