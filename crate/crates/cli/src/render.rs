//! Reports and their text and JSON renderings.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use sha2::{Digest, Sha256};

use quadrica::brauer::{residue_profile, BrauerClass};
use quadrica::certify::{arason_nontriviality, pirutka_check, ArasonReport, CertifyError, PirutkaReport, Verdict};
use quadrica::quadform::{clifford_invariant, discriminant, DiagForm};

#[derive(Debug, Serialize)]
pub struct Invariants {
    pub surface: String,
    pub fiber: Vec<String>,
    pub discriminant: Vec<String>,
    pub discriminant_trivial: bool,
    pub clifford_scale: String,
    pub clifford: Vec<(String, String)>,
    pub clifford_residues: BTreeMap<String, String>,
    pub alpha: Vec<(String, String)>,
    pub alpha_residues: BTreeMap<String, String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pirutka: Option<PirutkaReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub arason: Option<ArasonReport>,
}

pub fn invariants(form: &DiagForm, alpha: &BrauerClass) -> Result<Invariants, CertifyError> {
    let s = form.surface();
    let d = discriminant(form)?;
    let cl = clifford_invariant(form)?;
    let beta = residue_profile(&cl.class, s)?;
    let (alpha_residues, pirutka, arason) = if alpha.is_empty() {
        (BTreeMap::new(), None, None)
    } else {
        (
            residue_profile(alpha, s)?.to_strings(),
            Some(pirutka_check(form, alpha)?),
            Some(arason_nontriviality(form, alpha)?),
        )
    };
    Ok(Invariants {
        surface: s.tag().to_string(),
        fiber: form.entry_strings(),
        discriminant: d.support().iter().map(ToString::to_string).collect(),
        discriminant_trivial: d.is_trivial(),
        clifford_scale: cl.lambda.to_string(),
        clifford: cl.class.to_strings(),
        clifford_residues: beta.to_strings(),
        alpha: alpha.to_strings(),
        alpha_residues,
        pirutka,
        arason,
    })
}

fn symbols_text(symbols: &[(String, String)]) -> String {
    if symbols.is_empty() {
        return "0".to_string();
    }
    symbols.iter().map(|(a, b)| format!("({a}, {b})")).collect::<Vec<_>>().join(" + ")
}

fn profile_text(out: &mut String, label: &str, profile: &BTreeMap<String, String>) {
    if profile.is_empty() {
        let _ = writeln!(out, "{label}: unramified");
        return;
    }
    let _ = writeln!(out, "{label}:");
    for (divisor, residue) in profile {
        let _ = writeln!(out, "  {divisor} = 0: {residue}");
    }
}

pub fn invariants_text(r: &Invariants) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "surface: {}", r.surface);
    let _ = writeln!(out, "fiber: <{}>", r.fiber.join(", "));
    if r.discriminant_trivial {
        let _ = writeln!(out, "discriminant: trivial");
    } else {
        let _ = writeln!(out, "discriminant: {{{}}}", r.discriminant.join(", "));
    }
    let _ = writeln!(out, "clifford: {} (scale {})", symbols_text(&r.clifford), r.clifford_scale);
    profile_text(&mut out, "clifford residues", &r.clifford_residues);
    if r.alpha.is_empty() {
        return out;
    }
    let _ = writeln!(out, "alpha: {}", symbols_text(&r.alpha));
    profile_text(&mut out, "alpha residues", &r.alpha_residues);
    if let Some(p) = &r.pirutka {
        let _ = writeln!(out, "pirutka: {:?}", p.outcome);
        for e in &p.entries {
            let _ = writeln!(
                out,
                "  {}: alpha {} beta {} match {} hensel {}",
                e.divisor,
                e.alpha_residue.as_deref().unwrap_or("0"),
                e.beta_residue.as_deref().unwrap_or("0"),
                e.residues_match,
                e.hensel
            );
        }
    }
    if let Some(a) = &r.arason {
        let witness = a.alpha_nonzero_witness.as_deref().unwrap_or("-");
        let _ = writeln!(out, "arason: holds {} (d nontrivial {}, witness {witness})", a.holds, a.d_nontrivial);
        if let Some(note) = &a.note {
            let _ = writeln!(out, "  {note}");
        }
    }
    out
}

pub fn verdict_text(v: &Verdict) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "type: {}", v.bundle_type);
    let _ = writeln!(out, "verdict: {}", v.outcome);
    let _ = writeln!(out, "reason: {}", v.reason);
    if let Some(rule) = v.rule {
        let _ = writeln!(out, "rule: {rule}");
    }
    for note in &v.notes {
        let _ = writeln!(out, "note: {note}");
    }
    if let Some(c) = &v.certificate {
        let _ = writeln!(out, "degeneration: <{}>", c.degeneration.join(", "));
        let _ = writeln!(out, "fiber: <{}>", c.fiber.join(", "));
        let _ = writeln!(out, "scale: {}", c.similarity.scale);
        let _ = writeln!(out, "discriminant: {{{}}}", c.discriminant.support.join(", "));
        for (divisor, residue) in &c.alpha_residues {
            let _ = writeln!(out, "alpha residue at {divisor} = 0: {residue}");
        }
        let _ = writeln!(out, "pirutka: {:?}", c.pirutka_report.outcome);
        for step in &c.conclusion {
            let _ = writeln!(out, "  {step}");
        }
        let _ = writeln!(out, "digest: {}", digest(v));
    }
    out
}

#[derive(Debug, Serialize)]
struct VerdictJson<'a> {
    #[serde(rename = "type")]
    bundle_type: String,
    outcome: &'a quadrica::certify::Outcome,
    reason: &'static str,
    rule: Option<&'static str>,
    notes: &'a [String],
    certificate: Option<&'a quadrica::certify::Certificate>,
}

pub fn verdict_json(v: &Verdict) -> impl Serialize + '_ {
    VerdictJson {
        bundle_type: v.bundle_type.to_string(),
        outcome: &v.outcome,
        reason: v.reason.tag(),
        rule: v.rule.map(|r| r.tag()),
        notes: &v.notes,
        certificate: v.certificate.as_ref(),
    }
}

/// SHA-256 of the compact certificate JSON, or `-` without one.
pub fn digest(v: &Verdict) -> String {
    match &v.certificate {
        Some(c) => {
            let json = serde_json::to_vec(c).expect("serializable");
            format!("{:x}", Sha256::digest(json))
        }
        None => "-".to_string(),
    }
}

#[derive(Debug, Serialize)]
pub struct Row {
    #[serde(rename = "type")]
    pub bundle_type: String,
    pub verdict: String,
    pub reason: String,
    pub digest: String,
}

impl Row {
    pub fn text(&self) -> String {
        format!("{} {} {} {}", self.bundle_type, self.verdict, self.reason, self.digest)
    }
}

pub fn row(v: &Verdict) -> Row {
    Row {
        bundle_type: v.bundle_type.to_string(),
        verdict: v.outcome.to_string(),
        reason: v.reason.tag().to_string(),
        digest: digest(v),
    }
}
