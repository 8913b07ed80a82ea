//! Verdicts for bundle types.
//!
//! [`classify`] is the combinatorial decision on the degrees alone; the
//! verdict functions add a [`Certificate`] to every not-stably-rational
//! outcome by running the degeneration chain.

mod certificate;
mod construct;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use certificate::{
    arason_nontriviality, build_certificate, pirutka_check, replay, ArasonReport, Certificate, DiscriminantRecord,
    PirutkaEntry, PirutkaOutcome, PirutkaReport, ReplayCheck, ReplayReport, SimilarityRecord, WeakBundleCheck,
    BASE_FACT, ENGINE_VERSION, SCHEMA,
};
pub use construct::{
    construct_degeneration_p1xp1, construct_degeneration_p2, extension_assignable, select_rule_p1xp1, select_rule_p2,
    Rule,
};

use crate::brauer::BrauerError;
use crate::funfield::{FunFieldError, SurfaceKind, SurfaceModel};
use crate::poly::PolyError;
use crate::quadform::{BundleType, QuadError, TypeError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertifyError {
    #[error(transparent)]
    Type(#[from] TypeError),
    #[error(transparent)]
    Quad(#[from] QuadError),
    #[error(transparent)]
    Brauer(#[from] BrauerError),
    #[error(transparent)]
    FunField(#[from] FunFieldError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("type {0} is not in a certifiable branch")]
    NotCertifiable(String),
    #[error("type {0} belongs to another surface")]
    SurfaceMismatch(String),
    #[error("rule {rule} does not apply to type {ty}")]
    RuleMismatch { rule: Rule, ty: String },
    #[error("rule {rule} gives a negative exponent in entry {entry}")]
    NegativeExponent { rule: Rule, entry: usize },
    #[error("no coprime assignment for rule {rule} and type {ty}")]
    NoAssignment { rule: Rule, ty: String },
    #[error("certificate link `{link}` failed: {detail}")]
    LinkFailed { link: &'static str, detail: String },
    #[error("malformed certificate: {0}")]
    Malformed(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Outcome {
    Rational,
    NotStablyRational,
    Open,
    Unknown,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Outcome::Rational => "Rational",
            Outcome::NotStablyRational => "NotStablyRational",
            Outcome::Open => "Open",
            Outcome::Unknown => "Unknown",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Reason {
    /// Plane type with degree sum at most 4.
    SmallDegree,
    /// Two constant entries: the quadric contains a line over the base.
    TwoConstantEntries,
    /// One of the two undecided plane types.
    OpenType,
    /// `d1 = e1 = e0 = 0`: a constant 2x2 block gives a section.
    ConstantBlock,
    /// `d2 = 0`: a conic bundle over the second factor, which has a section.
    ConicBundleFirst,
    /// `e0 = e1 = e2 = 0`: the same over the first factor.
    ConicBundleSecond,
    /// Certified by a degeneration.
    Degeneration,
    /// Outside every decided regime.
    OutsideHypotheses,
    /// An extension regime holds but no slot assignment gives a coprime
    /// degeneration, so nothing is certified.
    NoDegeneration,
}

impl Reason {
    pub fn tag(&self) -> &'static str {
        match self {
            Reason::SmallDegree => "small-degree",
            Reason::TwoConstantEntries => "two-constant-entries",
            Reason::OpenType => "open-type",
            Reason::ConstantBlock => "constant-block",
            Reason::ConicBundleFirst => "conic-bundle-first",
            Reason::ConicBundleSecond => "conic-bundle-second",
            Reason::Degeneration => "degeneration",
            Reason::OutsideHypotheses => "outside-hypotheses",
            Reason::NoDegeneration => "no-degeneration",
        }
    }
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// Decision on the degrees alone, before any certificate is built.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub bundle_type: BundleType,
    pub outcome: Outcome,
    pub reason: Reason,
    pub rule: Option<Rule>,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub bundle_type: BundleType,
    pub outcome: Outcome,
    pub reason: Reason,
    pub rule: Option<Rule>,
    pub certificate: Option<Certificate>,
    pub notes: Vec<String>,
}

fn decided(t: BundleType, outcome: Outcome, reason: Reason, rule: Option<Rule>, notes: Vec<String>) -> Classification {
    Classification { bundle_type: t, outcome, reason, rule, notes }
}

/// Checks parity and sorts an unordered type, leaving a note.
fn prepare(t: &BundleType) -> Result<(BundleType, Vec<String>), CertifyError> {
    t.check_parity()?;
    if t.is_ordered() {
        Ok((*t, Vec::new()))
    } else {
        let s = t.sorted();
        Ok((s, vec![format!("input {t} reordered to {s}")]))
    }
}

fn classify_p2(t: BundleType, notes: Vec<String>) -> Result<Classification, CertifyError> {
    let BundleType::P2(d) = t else { unreachable!() };
    let sum: u32 = d.iter().sum();
    let c = if sum <= 4 {
        decided(t, Outcome::Rational, Reason::SmallDegree, None, notes)
    } else if d[0] == 0 && d[1] == 0 {
        decided(t, Outcome::Rational, Reason::TwoConstantEntries, None, notes)
    } else if d == [1, 1, 1, 3] || d == [0, 2, 2, 2] {
        decided(t, Outcome::Open, Reason::OpenType, None, notes)
    } else {
        let rule = select_rule_p2(&t)?;
        decided(t, Outcome::NotStablyRational, Reason::Degeneration, Some(rule), notes)
    };
    Ok(c)
}

/// The regimes where the extension rules apply.
fn extension_rules(p: [(u32, u32); 4]) -> Vec<Rule> {
    let [(_, e0), (d1, e1), (_, e2), (d3, e3)] = p;
    let mut out = Vec::new();
    if d1 >= 1 && d3 >= 2 && e1 + e2 >= 1 && e3 >= 3 {
        out.push(Rule::ExtQ1);
    }
    if d1 >= 1 && d3 >= 2 && e0 >= 1 && e1 + e2 >= 1 && e2 >= 2 {
        out.push(Rule::ExtQ2);
    }
    out
}

fn classify_p1xp1(t: BundleType, mut notes: Vec<String>) -> Result<Classification, CertifyError> {
    let BundleType::P1xP1(p) = t else { unreachable!() };
    let [(_, e0), (d1, e1), (d2, e2), (d3, e3)] = p;
    let ext = extension_rules(p);
    let c = if d3 >= 3 && e3 >= 3 {
        if d2 == 0 {
            decided(t, Outcome::Rational, Reason::ConicBundleFirst, None, notes)
        } else if d1 == 0 && e1 == 0 && e0 == 0 {
            decided(t, Outcome::Rational, Reason::ConstantBlock, None, notes)
        } else if e0 == 0 && e1 == 0 && e2 == 0 {
            decided(t, Outcome::Rational, Reason::ConicBundleSecond, None, notes)
        } else {
            let rule = select_rule_p1xp1(&t)?;
            for r in &ext {
                notes.push(format!("rule {r} also applies"));
            }
            decided(t, Outcome::NotStablyRational, Reason::Degeneration, Some(rule), notes)
        }
    } else if !ext.is_empty() {
        let usable: Vec<Rule> = ext.iter().copied().filter(|r| extension_assignable(&t, *r)).collect();
        match usable.first() {
            Some(&rule) => {
                if let Some(r) = usable.get(1) {
                    notes.push(format!("rule {r} also applies"));
                }
                decided(t, Outcome::NotStablyRational, Reason::Degeneration, Some(rule), notes)
            }
            None => {
                let tags: Vec<&str> = ext.iter().map(Rule::tag).collect();
                notes.push(format!("regime of {} holds but no coprime degeneration of this type exists", tags.join(", ")));
                decided(t, Outcome::Unknown, Reason::NoDegeneration, None, notes)
            }
        }
    } else {
        decided(t, Outcome::Unknown, Reason::OutsideHypotheses, None, notes)
    };
    Ok(c)
}

/// Outcome, reason and degeneration rule for a type of either surface.
/// Errors on parity violations; unordered types are sorted first.
pub fn classify(t: &BundleType) -> Result<Classification, CertifyError> {
    let (t, notes) = prepare(t)?;
    match t.surface_kind() {
        SurfaceKind::P2 => classify_p2(t, notes),
        SurfaceKind::P1xP1 => classify_p1xp1(t, notes),
    }
}

fn verdict_for(t: &BundleType, kind: SurfaceKind) -> Result<Verdict, CertifyError> {
    if t.surface_kind() != kind {
        return Err(CertifyError::SurfaceMismatch(t.to_string()));
    }
    let c = classify(t)?;
    let certificate = match c.rule {
        Some(_) => Some(build_certificate(&c.bundle_type, &SurfaceModel::new(kind))?),
        None => None,
    };
    Ok(Verdict {
        bundle_type: c.bundle_type,
        outcome: c.outcome,
        reason: c.reason,
        rule: c.rule,
        certificate,
        notes: c.notes,
    })
}

pub fn verdict_p2(t: &BundleType) -> Result<Verdict, CertifyError> {
    verdict_for(t, SurfaceKind::P2)
}

pub fn verdict_p1xp1(t: &BundleType) -> Result<Verdict, CertifyError> {
    verdict_for(t, SurfaceKind::P1xP1)
}

pub fn verdict(t: &BundleType) -> Result<Verdict, CertifyError> {
    verdict_for(t, t.surface_kind())
}

/// Ordered, parity-valid types with every coordinate at most `bound`, in
/// lexicographic order.
pub fn enumerate_types(kind: SurfaceKind, bound: u32) -> Vec<BundleType> {
    let mut out = Vec::new();
    match kind {
        SurfaceKind::P2 => {
            for d0 in 0..=bound {
                for d1 in (d0..=bound).step_by(2) {
                    for d2 in (d1..=bound).step_by(2) {
                        for d3 in (d2..=bound).step_by(2) {
                            out.push(BundleType::P2([d0, d1, d2, d3]));
                        }
                    }
                }
            }
        }
        SurfaceKind::P1xP1 => {
            let pairs: Vec<(u32, u32)> = (0..=bound).flat_map(|d| (0..=bound).map(move |e| (d, e))).collect();
            for (i, &a) in pairs.iter().enumerate() {
                let same = |q: &(u32, u32)| q.0 % 2 == a.0 % 2 && q.1 % 2 == a.1 % 2;
                let rest: Vec<(u32, u32)> = pairs[i..].iter().copied().filter(same).collect();
                for (j, &b) in rest.iter().enumerate() {
                    for (k, &c) in rest[j..].iter().enumerate() {
                        for &d in &rest[j + k..] {
                            out.push(BundleType::P1xP1([a, b, c, d]));
                        }
                    }
                }
            }
        }
    }
    out
}
