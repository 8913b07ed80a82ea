//! Two-torsion Brauer classes of the function field as sums of symbols.
//!
//! A class is a set of symbols `(a, b)` read modulo 2. Nothing tries to
//! simplify symbol sums; instead equality is decided by residues: on the
//! plane and on `P1 x P1` a class with no residue anywhere is zero, so
//! `u = v` exactly when `u + v` has an empty residue profile.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::funfield::{unit_part_class, CurveClass, FunFieldError, PrimeDivisor, SurfaceModel};
use crate::RatFn;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BrauerError {
    #[error(transparent)]
    FunField(#[from] FunFieldError),
    #[error("symbol entries must be nonzero")]
    ZeroEntry,
}

/// Formal sum of symbols over `F_2`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BrauerClass {
    symbols: BTreeSet<(RatFn, RatFn)>,
}

impl BrauerClass {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn symbols(&self) -> impl Iterator<Item = &(RatFn, RatFn)> {
        self.symbols.iter()
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// Symbol entries as strings, in storage order.
    pub fn to_strings(&self) -> Vec<(String, String)> {
        self.symbols.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect()
    }
}

impl fmt::Display for BrauerClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.symbols.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.symbols.iter().map(|(a, b)| format!("({a}, {b})")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

pub fn symbol(a: &RatFn, b: &RatFn) -> Result<BrauerClass, BrauerError> {
    if a.is_zero() || b.is_zero() {
        return Err(BrauerError::ZeroEntry);
    }
    // A constant entry is a square over the complex numbers.
    if a.is_constant() || b.is_constant() {
        return Ok(BrauerClass::zero());
    }
    Ok(BrauerClass { symbols: BTreeSet::from([(a.clone(), b.clone())]) })
}

pub fn add_classes(u: &BrauerClass, v: &BrauerClass) -> BrauerClass {
    BrauerClass { symbols: u.symbols.symmetric_difference(&v.symbols).cloned().collect() }
}

/// Residue of `u` along `c`, a square class on the curve.
///
/// For a symbol `(f, g)` with valuations `m`, `n` the residue is the class of
/// `(-1)^(m n) f^n / g^m` restricted to `c`. The sign is a square over the
/// complex numbers and is dropped; modulo squares only the parities of `m`
/// and `n` matter.
pub fn tame_residue(u: &BrauerClass, c: &PrimeDivisor) -> Result<CurveClass, BrauerError> {
    let mut acc = CurveClass::trivial();
    for (f, g) in &u.symbols {
        let (m, cf) = unit_part_class(f, c)?;
        let (n, cg) = unit_part_class(g, c)?;
        if n % 2 != 0 {
            acc = acc.mul(&cf);
        }
        if m % 2 != 0 {
            acc = acc.mul(&cg);
        }
    }
    Ok(acc)
}

/// Nontrivial residues of a class, keyed by divisor.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ResidueProfile {
    entries: BTreeMap<PrimeDivisor, CurveClass>,
}

impl ResidueProfile {
    pub fn entries(&self) -> &BTreeMap<PrimeDivisor, CurveClass> {
        &self.entries
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, c: &PrimeDivisor) -> Option<&CurveClass> {
        self.entries.get(c)
    }

    pub fn divisors(&self) -> impl Iterator<Item = &PrimeDivisor> {
        self.entries.keys()
    }

    /// `{divisor -> residue}` as strings.
    pub fn to_strings(&self) -> BTreeMap<String, String> {
        self.entries.iter().map(|(d, r)| (d.to_string(), r.to_string())).collect()
    }
}

/// Every divisor along which some symbol entry has a zero or pole, plus
/// the boundary divisors of the surface.
pub fn candidate_divisors(u: &BrauerClass, s: &SurfaceModel) -> Result<BTreeSet<PrimeDivisor>, BrauerError> {
    let mut out: BTreeSet<PrimeDivisor> = s.boundary().into_iter().collect();
    for (a, b) in &u.symbols {
        for f in [a, b] {
            let (n, d) = s.projectivize(f)?;
            for p in [n, d] {
                let factored = p.factor().map_err(FunFieldError::from)?;
                for (g, _) in factored.factors {
                    out.insert(PrimeDivisor::new(s, &g)?);
                }
            }
        }
    }
    Ok(out)
}

pub fn residue_profile(u: &BrauerClass, s: &SurfaceModel) -> Result<ResidueProfile, BrauerError> {
    let candidates: Vec<PrimeDivisor> = candidate_divisors(u, s)?.into_iter().collect();
    let residues: Vec<(PrimeDivisor, CurveClass)> = candidates
        .into_par_iter()
        .map(|c| tame_residue(u, &c).map(|r| (c, r)))
        .collect::<Result<_, _>>()?;
    let entries = residues.into_iter().filter(|(_, r)| !r.is_trivial()).collect();
    Ok(ResidueProfile { entries })
}

pub fn is_unramified_over_c(u: &BrauerClass, s: &SurfaceModel) -> Result<bool, BrauerError> {
    Ok(residue_profile(u, s)?.is_empty())
}

/// Equality in the Brauer group of the function field of `s`.
pub fn classes_equal(u: &BrauerClass, v: &BrauerClass, s: &SurfaceModel) -> Result<bool, BrauerError> {
    is_unramified_over_c(&add_classes(u, v), s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funfield::param_vars;
    use crate::poly::parse_poly;

    const F1: &str = "x^2+y^2+1-2*(x*y+x+y)";

    fn s() -> SurfaceModel {
        SurfaceModel::p2()
    }

    fn f(t: &str) -> RatFn {
        RatFn::from(s().parse(t).unwrap())
    }

    fn sym(a: &str, b: &str) -> BrauerClass {
        symbol(&f(a), &f(b)).unwrap()
    }

    fn div(t: &str) -> PrimeDivisor {
        PrimeDivisor::new(&s(), &s().parse(t).unwrap()).unwrap()
    }

    fn cls(t: &str) -> CurveClass {
        CurveClass::of(&parse_poly(t, &param_vars()).unwrap())
    }

    #[test]
    fn symbol_construction() {
        assert_eq!(symbol(&f("x"), &f("0")), Err(BrauerError::ZeroEntry));
        assert!(sym("1", "y").is_empty());
        assert!(residue_profile(&sym("1", "y"), &s()).unwrap().is_empty());
        assert!(is_unramified_over_c(&sym("x", "x"), &s()).unwrap());
        assert!(classes_equal(&sym("x", "x"), &sym("x", "-1"), &s()).unwrap());
    }

    #[test]
    fn addition_is_mod_two() {
        let a = sym("x", "y");
        assert!(add_classes(&a, &a).is_empty());
        assert_eq!(add_classes(&a, &BrauerClass::zero()), a);
        assert_eq!(add_classes(&a, &sym("y", F1)).len(), 2);
    }

    #[test]
    fn tame_residues_by_hand() {
        // m = 1, n = 0 along x = 0: the residue is y restricted, i.e. t.
        assert_eq!(tame_residue(&sym("x", "y"), &div("x")).unwrap(), cls("t"));
        assert!(tame_residue(&sym("y", F1), &div("x")).unwrap().is_trivial());
        // m = n = -1 along z = 0: the residue is y/x on the line (t, 1, 0).
        assert_eq!(tame_residue(&sym("x", "y"), &div("z")).unwrap(), cls("t"));
    }

    #[test]
    fn profile_of_x_y() {
        let prof = residue_profile(&sym("x", "y"), &s()).unwrap();
        let got: Vec<String> = prof.divisors().map(|d| d.to_string()).collect();
        assert_eq!(got, vec!["z", "y", "x"]);
        assert!(!is_unramified_over_c(&sym("x", "y"), &s()).unwrap());
        assert!(residue_profile(&BrauerClass::zero(), &s()).unwrap().is_empty());
    }

    /// `(y, F)`: the residue along `F = 0` is `y` restricted to the conic
    /// `((t-1)^2, (t+1)^2, 4t^2)`, i.e. `(t+1)^2 / 4t^2`, a square. Along
    /// `y = 0` it is `F(x, 0, 1) = (x-1)^2` and along `z = 0` it is the
    /// square `(x-y)^2`; so the class is unramified.
    #[test]
    fn y_f_is_unramified() {
        let u = sym("y", F1);
        assert!(tame_residue(&u, &div("y")).unwrap().is_trivial());
        assert!(tame_residue(&u, &div("x^2+y^2+z^2-2*(x*y+x*z+y*z)")).unwrap().is_trivial());
        assert!(tame_residue(&u, &div("z")).unwrap().is_trivial());
        assert!(residue_profile(&u, &s()).unwrap().is_empty());
    }

    #[test]
    fn equality_examples() {
        assert!(classes_equal(&sym("x", "y"), &sym("y", "x"), &s()).unwrap());
        assert!(classes_equal(&sym("x*y", "x"), &sym("y", "x"), &s()).unwrap());
        assert!(!classes_equal(&sym("x", "y"), &BrauerClass::zero(), &s()).unwrap());
    }
}
