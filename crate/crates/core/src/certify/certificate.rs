//! Certificates: the degeneration chain with every intermediate value kept
//! as strings, so a reader can recompute each check.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::construct::{construct_degeneration_p1xp1, construct_degeneration_p2, Rule};
use super::{classify, CertifyError};
use crate::brauer::{candidate_divisors, symbol, tame_residue, BrauerClass};
use crate::funfield::{hensel_square_test, parametrize, FunFieldError, PrimeDivisor, SurfaceKind, SurfaceModel};
use crate::quadform::{
    clifford_invariant, discriminant, entries_gcd, generic_fiber, hpt_form, is_weak_bundle, make_diag_form,
    normalize_to_hpt, type_of, BundleType, DiagForm, SimilarityWitness,
};
use crate::{Poly, RatFn};

pub const SCHEMA: &str = "quadrica-cert/1";
pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");
/// Citation tag of the imported base fact: `(x, y)` is a nonzero unramified
/// class on the function field of the canonical fiber.
pub const BASE_FACT: &str = "HPT-Prop11";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeakBundleCheck {
    pub coprime: bool,
    pub gcd: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimilarityRecord {
    pub scale: String,
    pub square_factors: Vec<String>,
    pub permutation: Vec<usize>,
    pub target: Vec<String>,
    pub verified: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiscriminantRecord {
    pub support: Vec<String>,
    pub nontrivial: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PirutkaOutcome {
    Pass,
    Fail,
    Inconclusive,
}

/// Condition at one divisor where `alpha` or `beta` ramifies.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PirutkaEntry {
    pub divisor: String,
    pub alpha_residue: Option<String>,
    pub beta_residue: Option<String>,
    pub residues_match: bool,
    pub hensel: bool,
    /// The unit part of the discriminant restricted to the divisor.
    pub hensel_witness: Option<String>,
    pub holds: bool,
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PirutkaReport {
    pub entries: Vec<PirutkaEntry>,
    pub outcome: PirutkaOutcome,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArasonReport {
    pub d_nontrivial: bool,
    pub alpha_nonzero_witness: Option<String>,
    pub holds: bool,
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub schema: String,
    pub engine_version: String,
    pub base_fact: String,
    pub surface: SurfaceKind,
    pub input_type: String,
    pub rule: Rule,
    pub degeneration: Vec<String>,
    pub weak_bundle_check: WeakBundleCheck,
    pub fiber: Vec<String>,
    pub similarity: SimilarityRecord,
    pub discriminant: DiscriminantRecord,
    pub alpha: Vec<(String, String)>,
    pub alpha_residues: BTreeMap<String, String>,
    pub clifford: Vec<(String, String)>,
    pub pirutka_report: PirutkaReport,
    pub arason: ArasonReport,
    pub conclusion: Vec<String>,
}

fn strings(ps: &[Poly]) -> Vec<String> {
    ps.iter().map(Poly::to_string).collect()
}

/// Restriction of the unit part of `d` to `c`. Coordinate lines are shown in
/// surface coordinates (dehomogenized unless the line lies at infinity);
/// other curves in the parameter `t`.
fn hensel_witness(d: &RatFn, c: &PrimeDivisor) -> Result<String, FunFieldError> {
    let s = c.surface();
    let (n, den) = s.projectivize(d)?;
    let (n, _) = n.strip_factor(c.poly());
    let (den, _) = den.strip_factor(c.poly());
    let line = c.poly().support_vars();
    if c.poly().num_terms() == 1 && line.len() == 1 {
        let v = line[0];
        let zero = |p: &Poly| p.eval_partial(&[(v, <crate::Rational as num_traits::Zero>::zero())]);
        let (mut n, mut den) = (zero(&n), zero(&den));
        if !s.chart_fixed().contains(&v) {
            n = s.dehomogenize_poly(&n);
            den = s.dehomogenize_poly(&den);
        }
        return Ok(RatFn::new(n, den)?.to_string());
    }
    let param = parametrize(c)?;
    Ok(RatFn::new(param.pull_back(&n)?, param.pull_back(&den)?)?.to_string())
}

fn discriminant_function(fiber: &DiagForm) -> Result<RatFn, CertifyError> {
    Ok(RatFn::from(discriminant(fiber)?.representative(fiber.surface().vars())))
}

/// Condition (*) at every divisor where `alpha` or the Clifford invariant
/// `beta` ramifies: a nonzero residue of `alpha` must equal that of `beta`,
/// and the discriminant must be a square in the completion.
pub fn pirutka_check(fiber: &DiagForm, alpha: &BrauerClass) -> Result<PirutkaReport, CertifyError> {
    let s = fiber.surface();
    let beta = clifford_invariant(fiber)?.class;
    let d = discriminant_function(fiber)?;
    let divisors: BTreeSet<PrimeDivisor> = candidate_divisors(alpha, s)?.into_iter().chain(candidate_divisors(&beta, s)?).collect();
    let mut entries = Vec::new();
    for c in divisors {
        let residues = tame_residue(alpha, &c).and_then(|ra| Ok((ra, tame_residue(&beta, &c)?)));
        let (ra, rb) = match residues {
            Ok(r) => r,
            Err(e) => {
                entries.push(PirutkaEntry {
                    divisor: c.to_string(),
                    alpha_residue: None,
                    beta_residue: None,
                    residues_match: false,
                    hensel: false,
                    hensel_witness: None,
                    holds: false,
                    error: Some(e.to_string()),
                });
                continue;
            }
        };
        if ra.is_trivial() && rb.is_trivial() {
            continue;
        }
        let checked = hensel_square_test(&d, &c).and_then(|h| Ok((h, hensel_witness(&d, &c)?)));
        let (hensel, witness, error) = match checked {
            Ok((h, w)) => (h, Some(w), None),
            Err(e) => (false, None, Some(e.to_string())),
        };
        let residues_match = ra == rb;
        entries.push(PirutkaEntry {
            divisor: c.to_string(),
            alpha_residue: Some(ra.to_string()),
            beta_residue: Some(rb.to_string()),
            residues_match,
            hensel,
            hensel_witness: witness,
            holds: error.is_none() && (ra.is_trivial() || (residues_match && hensel)),
            error,
        });
    }
    let outcome = if entries.iter().any(|e| e.error.is_some()) {
        PirutkaOutcome::Inconclusive
    } else if entries.iter().all(|e| e.holds) {
        PirutkaOutcome::Pass
    } else {
        PirutkaOutcome::Fail
    };
    Ok(PirutkaReport { entries, outcome })
}

/// Nonzero-ness of `alpha` after pulling back to the quadric: needs a
/// nontrivial discriminant and a nonzero residue of `alpha`.
pub fn arason_nontriviality(fiber: &DiagForm, alpha: &BrauerClass) -> Result<ArasonReport, CertifyError> {
    let s = fiber.surface();
    let d_nontrivial = !discriminant(fiber)?.is_trivial();
    let profile = crate::brauer::residue_profile(alpha, s)?;
    let witness = profile
        .divisors()
        .min_by_key(|c| (c.is_boundary(), c.to_string()))
        .map(PrimeDivisor::to_string);
    let note = (!d_nontrivial).then(|| "ker(f*) = {1, beta}: injectivity unavailable".to_string());
    Ok(ArasonReport { d_nontrivial, holds: d_nontrivial && witness.is_some(), alpha_nonzero_witness: witness, note })
}

fn link(name: &'static str, ok: bool, detail: impl FnOnce() -> String) -> Result<(), CertifyError> {
    if ok {
        Ok(())
    } else {
        Err(CertifyError::LinkFailed { link: name, detail: detail() })
    }
}

/// The chart symbol `(x', y')` read off the canonical target.
fn canonical_alpha(witness: &SimilarityWitness) -> Result<BrauerClass, CertifyError> {
    let x = RatFn::from(witness.target[1].clone());
    let y = RatFn::from(witness.target[0].clone());
    Ok(symbol(&x, &y)?)
}

fn similarity_record(w: &SimilarityWitness, verified: bool) -> SimilarityRecord {
    SimilarityRecord {
        scale: w.scale.to_string(),
        square_factors: strings(&w.square_factors),
        permutation: w.permutation.to_vec(),
        target: strings(&w.target),
        verified,
    }
}

fn conclusion() -> Vec<String> {
    vec![
        format!("base-fact {BASE_FACT}: (x', y') is nonzero and unramified on the canonical fiber <y', x', x'y', F>"),
        "similarity: the generic fiber is similar to the canonical fiber, so both define the same quadric".to_string(),
        "arason-injectivity: d is nontrivial, so the pullback of (x', y') to the special fiber stays nonzero".to_string(),
        "degeneration-criterion: smooth generic fiber, nontrivial d and a nonzero unramified class give: not stably rational"
            .to_string(),
    ]
}

/// Runs the degeneration chain for a type in a not-stably-rational branch.
/// The first failing link aborts with its name.
pub fn build_certificate(t: &BundleType, surface: &SurfaceModel) -> Result<Certificate, CertifyError> {
    if t.surface_kind() != surface.kind() {
        return Err(CertifyError::SurfaceMismatch(t.to_string()));
    }
    let rule = classify(t)?.rule.ok_or_else(|| CertifyError::NotCertifiable(t.to_string()))?;
    let degeneration = match surface.kind() {
        SurfaceKind::P2 => construct_degeneration_p2(t)?.1,
        SurfaceKind::P1xP1 => construct_degeneration_p1xp1(t, rule)?,
    };
    let got = type_of(&degeneration)?.bundle_type;
    link("type", got == *t, || format!("degeneration has type {got}"))?;
    let gcd = entries_gcd(&degeneration);
    link("weak-bundle", gcd.is_constant(), || format!("entries share {gcd}"))?;
    let fiber = generic_fiber(&degeneration);
    let witness = normalize_to_hpt(&fiber)?
        .ok_or_else(|| CertifyError::LinkFailed { link: "similarity", detail: fiber.to_string() })?;
    let verified = witness.verify(&fiber);
    link("similarity", verified, || "witness does not verify".to_string())?;
    let alpha = canonical_alpha(&witness)?;
    let disc = discriminant(&fiber)?;
    link("discriminant", !disc.is_trivial(), || "trivial discriminant".to_string())?;
    let arason = arason_nontriviality(&fiber, &alpha)?;
    link("arason", arason.holds, || format!("{arason:?}"))?;
    let pirutka = pirutka_check(&fiber, &alpha)?;
    link("pirutka", pirutka.outcome == PirutkaOutcome::Pass, || format!("{:?}", pirutka.outcome))?;
    let residues = crate::brauer::residue_profile(&alpha, surface)?;
    let clifford = clifford_invariant(&fiber)?.class;
    Ok(Certificate {
        schema: SCHEMA.to_string(),
        engine_version: ENGINE_VERSION.to_string(),
        base_fact: BASE_FACT.to_string(),
        surface: surface.kind(),
        input_type: t.to_string(),
        rule,
        degeneration: degeneration.entry_strings(),
        weak_bundle_check: WeakBundleCheck { coprime: is_weak_bundle(&degeneration), gcd: gcd.to_string() },
        fiber: fiber.entry_strings(),
        similarity: similarity_record(&witness, verified),
        discriminant: DiscriminantRecord {
            support: disc.support().iter().map(Poly::to_string).collect(),
            nontrivial: !disc.is_trivial(),
        },
        alpha: alpha.to_strings(),
        alpha_residues: residues.to_strings(),
        clifford: clifford.to_strings(),
        pirutka_report: pirutka,
        arason,
        conclusion: conclusion(),
    })
}

/// One recomputed field of a certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReplayCheck {
    pub field: &'static str,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReplayReport {
    pub checks: Vec<ReplayCheck>,
}

impl ReplayReport {
    pub fn all_ok(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }

    pub fn failures(&self) -> Vec<&'static str> {
        self.checks.iter().filter(|c| !c.ok).map(|c| c.field).collect()
    }
}

fn parse_four(s: &SurfaceModel, items: &[String]) -> Result<[Poly; 4], CertifyError> {
    let polys: Vec<Poly> = items.iter().map(|e| s.parse(e)).collect::<Result<_, _>>()?;
    polys.try_into().map_err(|v: Vec<Poly>| CertifyError::Malformed(format!("expected four entries, got {}", v.len())))
}

/// Recomputes every derived value of `cert` from its stored inputs: the
/// degeneration, the witness and `alpha`.
pub fn replay(cert: &Certificate) -> Result<ReplayReport, CertifyError> {
    let s = SurfaceModel::new(cert.surface);
    let mut checks = Vec::new();
    let mut check = |field: &'static str, ok: bool| checks.push(ReplayCheck { field, ok });
    check("schema", cert.schema == SCHEMA && cert.base_fact == BASE_FACT);
    let t = BundleType::parse(cert.surface, &cert.input_type)?;
    let degeneration = make_diag_form(parse_four(&s, &cert.degeneration)?, &s)?;
    check("input_type", type_of(&degeneration)?.bundle_type == t);
    check(
        "weak_bundle_check",
        is_weak_bundle(&degeneration) == cert.weak_bundle_check.coprime
            && entries_gcd(&degeneration).to_string() == cert.weak_bundle_check.gcd,
    );
    let fiber = generic_fiber(&degeneration);
    check("fiber", fiber.entry_strings() == cert.fiber);
    let sim = &cert.similarity;
    let permutation: [usize; 4] = sim
        .permutation
        .clone()
        .try_into()
        .map_err(|_| CertifyError::Malformed("permutation needs four slots".to_string()))?;
    let witness = SimilarityWitness {
        scale: s.parse(&sim.scale)?,
        square_factors: parse_four(&s, &sim.square_factors)?,
        permutation,
        target: parse_four(&s, &sim.target)?,
    };
    let canonical = witness.target == hpt_form(&s, false) || witness.target == hpt_form(&s, true);
    check("similarity", canonical && witness.verify(&fiber) == sim.verified);
    let disc = discriminant(&fiber)?;
    let support: Vec<String> = disc.support().iter().map(Poly::to_string).collect();
    check("discriminant", support == cert.discriminant.support && !disc.is_trivial() == cert.discriminant.nontrivial);
    let mut alpha = BrauerClass::zero();
    for (a, b) in &cert.alpha {
        let sym = symbol(&RatFn::from(s.parse(a)?), &RatFn::from(s.parse(b)?))?;
        alpha = crate::brauer::add_classes(&alpha, &sym);
    }
    check("alpha", alpha == canonical_alpha(&witness)?);
    check("alpha_residues", crate::brauer::residue_profile(&alpha, &s)?.to_strings() == cert.alpha_residues);
    check("clifford", clifford_invariant(&fiber)?.class.to_strings() == cert.clifford);
    check("pirutka_report", pirutka_check(&fiber, &alpha)? == cert.pirutka_report);
    check("arason", arason_nontriviality(&fiber, &alpha)? == cert.arason);
    check("conclusion", cert.conclusion == conclusion());
    Ok(ReplayReport { checks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadform::make_affine_form;

    const F1: &str = "x^2+y^2+1-2*(x*y+x+y)";

    fn fiber(entries: [&str; 4]) -> DiagForm {
        let s = SurfaceModel::p2();
        make_affine_form(entries.map(|e| s.parse(e).unwrap()), &s).unwrap()
    }

    fn sym(a: &str, b: &str) -> BrauerClass {
        let s = SurfaceModel::p2();
        symbol(&RatFn::from(s.parse(a).unwrap()), &RatFn::from(s.parse(b).unwrap())).unwrap()
    }

    #[test]
    fn pirutka_on_canonical_fiber() {
        let report = pirutka_check(&fiber(["y", "x", "x*y", F1]), &sym("x", "y")).unwrap();
        assert_eq!(report.outcome, PirutkaOutcome::Pass);
        let got: Vec<(&str, &str)> = report
            .entries
            .iter()
            .map(|e| (e.divisor.as_str(), e.hensel_witness.as_deref().unwrap()))
            .collect();
        assert_eq!(got, vec![("z", "x^2-2*x*y+y^2"), ("y", "x^2-2*x+1"), ("x", "y^2-2*y+1")]);
        assert!(report.entries.iter().all(|e| e.residues_match && e.hensel));
    }

    #[test]
    fn pirutka_vacuous_for_zero_class() {
        let report = pirutka_check(&fiber(["y", "x", "x*y", F1]), &BrauerClass::zero()).unwrap();
        assert_eq!(report.outcome, PirutkaOutcome::Pass);
    }

    #[test]
    fn arason_examples() {
        let a = arason_nontriviality(&fiber(["y", "x", "x*y", F1]), &sym("x", "y")).unwrap();
        assert!(a.holds && a.d_nontrivial);
        assert_eq!(a.alpha_nonzero_witness.as_deref(), Some("x"));
        let zero = arason_nontriviality(&fiber(["y", "x", "x*y", F1]), &BrauerClass::zero()).unwrap();
        assert!(!zero.holds);
        let split = arason_nontriviality(&fiber(["1", "x", "y", "x*y"]), &sym("x", "y")).unwrap();
        assert!(!split.holds && !split.d_nontrivial);
        assert!(split.note.is_some());
    }

    #[test]
    fn hpt_certificate_replays() {
        let t = BundleType::parse(SurfaceKind::P2, "2,2,2,2").unwrap();
        let cert = build_certificate(&t, &SurfaceModel::p2()).unwrap();
        let f1 = SurfaceModel::p2().parse(F1).unwrap().to_string();
        assert_eq!(cert.discriminant.support, vec![f1]);
        assert!(replay(&cert).unwrap().all_ok());
    }

    #[test]
    fn tampered_certificate_fails_replay() {
        let t = BundleType::parse(SurfaceKind::P2, "0,2,2,4").unwrap();
        let mut cert = build_certificate(&t, &SurfaceModel::p2()).unwrap();
        cert.arason.d_nontrivial = false;
        cert.weak_bundle_check.coprime = false;
        let report = replay(&cert).unwrap();
        assert_eq!(report.failures(), vec!["weak_bundle_check", "arason"]);
    }
}
