//! Exact multivariate polynomials over a rational field.
//!
//! Terms are kept in a `BTreeMap` keyed by exponent vectors under the
//! graded lexicographic order of the declared variable list, so two equal
//! polynomials always have identical term maps and print identically.

mod factor;
mod gcd;
mod parse;
mod ratfn;
pub mod scalar;
mod univariate;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::Signed;
use thiserror::Error;

pub use factor::FactoredPolynomial;
pub use gcd::gcd_all;
pub use parse::parse_poly;
pub use ratfn::RationalFunction;
pub use scalar::Scalar;
pub use univariate::{odd_part, square_free_decomposition};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable `{name}` at position {pos}")]
    UnknownVariable { name: String, pos: usize },
    #[error("negative exponent at position {pos}")]
    NegativeExponent { pos: usize },
    #[error("division by a non-constant expression at position {pos}")]
    NonConstantDivisor { pos: usize },
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid variable name `{0}`")]
    InvalidVariableName(String),
    #[error("duplicate variable name `{0}`")]
    DuplicateVariable(String),
    #[error("operands live over different variable lists")]
    VariableMismatch,
    #[error("exponent overflow")]
    ExponentOverflow,
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("`{0}` is not irreducible")]
    NotIrreducible(String),
    #[error("`{0}` is constant")]
    Constant(String),
    #[error("factorization of `{0}` is outside the supported class")]
    UnsupportedFactorization(String),
}

/// An ordered, shared list of variable names.
#[derive(Clone, Debug)]
pub struct VarSet(Arc<[String]>);

impl VarSet {
    pub fn new<I, S>(names: I) -> Result<Self, PolyError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        for (i, n) in names.iter().enumerate() {
            let mut chars = n.chars();
            let ok = chars.next().is_some_and(|c| c.is_ascii_alphabetic())
                && chars.all(|c| c.is_ascii_alphanumeric());
            if !ok {
                return Err(PolyError::InvalidVariableName(n.clone()));
            }
            if names[..i].contains(n) {
                return Err(PolyError::DuplicateVariable(n.clone()));
            }
        }
        Ok(VarSet(names.into()))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|n| n == name)
    }
}

impl PartialEq for VarSet {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for VarSet {}

impl std::hash::Hash for VarSet {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.0.hash(state);
    }
}

impl PartialOrd for VarSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for VarSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.cmp(&other.0)
    }
}

/// Exponent vector, ordered graded-lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Box<[u32]>);

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial(exps.into_boxed_slice())
    }

    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n].into_boxed_slice())
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    fn checked_mul(&self, other: &Monomial) -> Result<Monomial, PolyError> {
        let exps = self
            .0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| a.checked_add(*b).ok_or(PolyError::ExponentOverflow))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Monomial::new(exps))
    }

    fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    fn div(&self, other: &Monomial) -> Monomial {
        Monomial::new(self.0.iter().zip(other.0.iter()).map(|(a, b)| a - b).collect())
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

/// Choice of grading for [`Polynomial::degree_profile`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Grading {
    Total,
    Bidegree(Vec<String>, Vec<String>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DegreeProfile {
    Total(u32),
    Bidegree(u32, u32),
    Inhomogeneous,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial<C> {
    vars: VarSet,
    terms: BTreeMap<Monomial, C>,
}

impl<C: Scalar> Polynomial<C> {
    pub fn zero(vars: &VarSet) -> Self {
        Polynomial { vars: vars.clone(), terms: BTreeMap::new() }
    }

    pub fn one(vars: &VarSet) -> Self {
        Self::constant(vars, C::one())
    }

    pub fn constant(vars: &VarSet, c: C) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(vars.len()), c);
        }
        Polynomial { vars: vars.clone(), terms }
    }

    pub fn from_i64(vars: &VarSet, c: i64) -> Self {
        Self::constant(vars, C::from_small(c))
    }

    /// The variable at position `i` of the variable list.
    pub fn var(vars: &VarSet, i: usize) -> Self {
        let mut exps = vec![0; vars.len()];
        exps[i] = 1;
        Self::monomial(vars, exps, C::one())
    }

    pub fn var_named(vars: &VarSet, name: &str) -> Option<Self> {
        vars.index_of(name).map(|i| Self::var(vars, i))
    }

    pub fn monomial(vars: &VarSet, exps: Vec<u32>, c: C) -> Self {
        assert_eq!(exps.len(), vars.len(), "exponent vector length");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::new(exps), c);
        }
        Polynomial { vars: vars.clone(), terms }
    }

    pub fn from_terms<I>(vars: &VarSet, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u32>, C)>,
    {
        let mut p = Self::zero(vars);
        for (e, c) in terms {
            assert_eq!(e.len(), vars.len(), "exponent vector length");
            p.add_term(Monomial::new(e), c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().clone() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    pub fn is_one(&self) -> bool {
        self.constant_value().is_some_and(|c| c.is_one())
    }

    /// The value of a constant polynomial.
    pub fn constant_value(&self) -> Option<C> {
        if self.is_zero() {
            Some(C::zero())
        } else if self.is_constant() {
            self.terms.values().next().cloned()
        } else {
            None
        }
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in increasing monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &C)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> Option<&C> {
        self.leading_term().map(|(_, c)| c)
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0)
    }

    pub fn involves(&self, i: usize) -> bool {
        self.terms.keys().any(|m| m.0[i] > 0)
    }

    /// Indices of the variables that actually occur.
    pub fn support_vars(&self) -> Vec<usize> {
        (0..self.vars.len()).filter(|&i| self.involves(i)).collect()
    }

    pub fn coeff(&self, exps: &[u32]) -> C {
        self.terms
            .get(&Monomial::new(exps.to_vec()))
            .cloned()
            .unwrap_or_else(C::zero)
    }

    fn check_vars(&self, other: &Self) -> Result<(), PolyError> {
        if self.vars == other.vars {
            Ok(())
        } else {
            Err(PolyError::VariableMismatch)
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_vars(other)?;
        let mut out = Self::zero(&self.vars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.checked_mul(mb)?, ca.clone() * cb.clone());
            }
        }
        Ok(out)
    }

    pub fn pow(&self, mut e: u32) -> Result<Self, PolyError> {
        let mut base = self.clone();
        let mut acc = Self::one(&self.vars);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.checked_mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.checked_mul(&base)?;
            }
        }
        Ok(acc)
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        Polynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k.clone() * c.clone())).collect(),
        }
    }

    /// Multiplies by the monomial with exponent vector `exps`.
    pub fn mul_monomial(&self, exps: &[u32]) -> Result<Self, PolyError> {
        let m = Monomial::new(exps.to_vec());
        let mut terms = BTreeMap::new();
        for (k, c) in &self.terms {
            terms.insert(k.checked_mul(&m)?, c.clone());
        }
        Ok(Polynomial { vars: self.vars.clone(), terms })
    }

    /// Exact quotient `self / divisor`, or `None` if the division leaves a remainder.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() || self.vars != divisor.vars {
            return None;
        }
        if let Some(c) = divisor.constant_value() {
            return Some(self.scale(&(C::one() / c)));
        }
        let (lm, lc) = divisor.leading_term().map(|(m, c)| (m.clone(), c.clone()))?;
        let mut rem = self.clone();
        let mut quot = Self::zero(&self.vars);
        while let Some((m, c)) = rem.leading_term().map(|(m, c)| (m.clone(), c.clone())) {
            if !lm.divides(&m) {
                return None;
            }
            let qm = m.div(&lm);
            let qc = c / lc.clone();
            for (dm, dc) in &divisor.terms {
                rem.add_term(dm.checked_mul(&qm).ok()?, -(dc.clone() * qc.clone()));
            }
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    /// Largest `k` with `factor^k | self`; `self` must be nonzero.
    pub fn multiplicity_of(&self, factor: &Self) -> u32 {
        let mut k = 0;
        let mut cur = self.clone();
        while let Some(q) = cur.div_exact(factor) {
            k += 1;
            cur = q;
        }
        k
    }

    /// Removes every power of `factor`, returning the cofactor and the count.
    pub fn strip_factor(&self, factor: &Self) -> (Self, u32) {
        let mut k = 0;
        let mut cur = self.clone();
        while let Some(q) = cur.div_exact(factor) {
            k += 1;
            cur = q;
        }
        (cur, k)
    }

    pub fn derivative(&self, i: usize) -> Self {
        let mut out = Self::zero(&self.vars);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e > 0 {
                let mut exps = m.0.to_vec();
                exps[i] -= 1;
                out.add_term(Monomial::new(exps), c.clone() * C::from_small(e as i64));
            }
        }
        out
    }

    /// Coefficients with respect to variable `i`; keys are powers of that variable.
    pub fn coeffs_in(&self, i: usize) -> BTreeMap<u32, Self> {
        let mut out: BTreeMap<u32, Self> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut exps = m.0.to_vec();
            let e = exps[i];
            exps[i] = 0;
            out.entry(e)
                .or_insert_with(|| Self::zero(&self.vars))
                .add_term(Monomial::new(exps), c.clone());
        }
        out
    }

    /// Leading coefficient as a polynomial in variable `i`.
    pub fn leading_coeff_in(&self, i: usize) -> Self {
        self.coeffs_in(i)
            .into_iter()
            .next_back()
            .map(|(_, c)| c)
            .unwrap_or_else(|| Self::zero(&self.vars))
    }

    /// Componentwise minimum exponent over all terms.
    pub fn monomial_content(&self) -> Vec<u32> {
        let n = self.vars.len();
        let mut it = self.terms.keys();
        let Some(first) = it.next() else {
            return vec![0; n];
        };
        let mut out = first.0.to_vec();
        for m in it {
            for (o, e) in out.iter_mut().zip(m.0.iter()) {
                *o = (*o).min(*e);
            }
        }
        out
    }

    /// Divides out a monomial that is known to divide every term.
    pub fn div_monomial(&self, exps: &[u32]) -> Self {
        let m = Monomial::new(exps.to_vec());
        Polynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(k, c)| (k.div(&m), c.clone())).collect(),
        }
    }

    /// Rational content: positive, with `self / content` integral and primitive.
    pub fn content(&self) -> C {
        use num_integer::Integer;
        let mut num: Option<C::Int> = None;
        let mut den: Option<C::Int> = None;
        for c in self.terms.values() {
            num = Some(match num {
                None => c.numer().abs(),
                Some(g) => g.gcd(c.numer()),
            });
            den = Some(match den {
                None => c.denom().abs(),
                Some(l) => l.lcm(c.denom()),
            });
        }
        match (num, den) {
            (Some(n), Some(d)) => C::from_parts(n, d),
            _ => C::one(),
        }
    }

    /// Splits `self = unit * normalized` with `normalized` integral, primitive,
    /// and with positive leading coefficient.
    pub fn normalize(&self) -> (C, Self) {
        if self.is_zero() {
            return (C::zero(), self.clone());
        }
        let mut unit = self.content();
        if self.leading_coeff().is_some_and(|c| c.is_negative()) {
            unit = -unit;
        }
        (unit.clone(), self.scale(&(C::one() / unit)))
    }

    pub fn normalized(&self) -> Self {
        self.normalize().1
    }

    /// Scales to leading coefficient one.
    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            Some(c) => self.scale(&(C::one() / c.clone())),
            None => self.clone(),
        }
    }

    /// Composes with `images[i]` substituted for variable `i`; the result
    /// lives over the variable list of the images.
    pub fn compose(&self, images: &[Self], target: &VarSet) -> Result<Self, PolyError> {
        assert_eq!(images.len(), self.vars.len(), "one image per variable");
        if images.iter().any(|p| p.vars != *target) {
            return Err(PolyError::VariableMismatch);
        }
        let mut cache: Vec<Vec<Self>> = images.iter().map(|p| vec![Self::one(target), p.clone()]).collect();
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            let mut t = Self::constant(target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while cache[i].len() <= e as usize {
                    let next = cache[i].last().unwrap().checked_mul(&images[i])?;
                    cache[i].push(next);
                }
                t = t.checked_mul(&cache[i][e as usize])?;
                if t.is_zero() {
                    break;
                }
            }
            out = out.checked_add(&t)?;
        }
        Ok(out)
    }

    /// Substitutes the given polynomials for the named variables; unbound
    /// variables are left in place.
    pub fn substitute(&self, bindings: &[(&str, Self)]) -> Result<Self, PolyError> {
        let mut images: Vec<Self> = (0..self.vars.len()).map(|i| Self::var(&self.vars, i)).collect();
        for (name, img) in bindings {
            let i = self.vars.index_of(name).ok_or_else(|| PolyError::UnknownVariable {
                name: (*name).to_string(),
                pos: 0,
            })?;
            img.check_vars(self)?;
            images[i] = img.clone();
        }
        self.compose(&images, &self.vars)
    }

    /// Substitutes constants for variables by index.
    pub fn eval_partial(&self, values: &[(usize, C)]) -> Self {
        let mut out = Self::zero(&self.vars);
        for (m, c) in &self.terms {
            let mut exps = m.0.to_vec();
            let mut k = c.clone();
            for (i, v) in values {
                let e = exps[*i];
                if e > 0 {
                    k = k * num_traits::pow(v.clone(), e as usize);
                    exps[*i] = 0;
                }
            }
            out.add_term(Monomial::new(exps), k);
        }
        out
    }

    /// Degree if every term has the same degree in the listed variables.
    pub fn homogeneous_degree_in(&self, idx: &[usize]) -> Option<u32> {
        let mut deg = None;
        for m in self.terms.keys() {
            let d: u32 = idx.iter().map(|&i| m.0[i]).sum();
            match deg {
                None => deg = Some(d),
                Some(d0) if d0 != d => return None,
                _ => {}
            }
        }
        deg
    }

    /// Homogenizes in the variables `idx` using variable `w` (which must be in `idx`).
    pub fn homogenize_in(&self, idx: &[usize], w: usize) -> Result<Self, PolyError> {
        let deg = self
            .terms
            .keys()
            .map(|m| idx.iter().map(|&i| m.0[i]).sum::<u32>())
            .max()
            .unwrap_or(0);
        let mut out = Self::zero(&self.vars);
        for (m, c) in &self.terms {
            let d: u32 = idx.iter().map(|&i| m.0[i]).sum();
            let mut exps = m.0.to_vec();
            exps[w] = exps[w].checked_add(deg - d).ok_or(PolyError::ExponentOverflow)?;
            out.add_term(Monomial::new(exps), c.clone());
        }
        Ok(out)
    }

    pub fn degree_profile(&self, grading: &Grading) -> Result<DegreeProfile, PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        match grading {
            Grading::Total => {
                let all: Vec<usize> = (0..self.vars.len()).collect();
                Ok(self
                    .homogeneous_degree_in(&all)
                    .map_or(DegreeProfile::Inhomogeneous, DegreeProfile::Total))
            }
            Grading::Bidegree(a, b) => {
                let lookup = |names: &[String]| -> Result<Vec<usize>, PolyError> {
                    names
                        .iter()
                        .map(|n| {
                            self.vars.index_of(n).ok_or_else(|| PolyError::UnknownVariable {
                                name: n.clone(),
                                pos: 0,
                            })
                        })
                        .collect()
                };
                let (ia, ib) = (lookup(a)?, lookup(b)?);
                match (self.homogeneous_degree_in(&ia), self.homogeneous_degree_in(&ib)) {
                    (Some(da), Some(db)) => Ok(DegreeProfile::Bidegree(da, db)),
                    _ => Ok(DegreeProfile::Inhomogeneous),
                }
            }
        }
    }

    /// Rebuilds the polynomial over another variable list by name.
    pub fn rename_into(&self, target: &VarSet) -> Result<Self, PolyError> {
        let map: Vec<usize> = self
            .vars
            .names()
            .iter()
            .enumerate()
            .map(|(i, n)| match target.index_of(n) {
                Some(j) => Ok(j),
                None if !self.involves(i) => Ok(usize::MAX),
                None => Err(PolyError::UnknownVariable { name: n.clone(), pos: 0 }),
            })
            .collect::<Result<_, _>>()?;
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            let mut exps = vec![0; target.len()];
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    exps[map[i]] = e;
                }
            }
            out.add_term(Monomial::new(exps), c.clone());
        }
        Ok(out)
    }
}

impl<C: Scalar> PartialOrd for Polynomial<C> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Orders by variable list, then total degree, then terms from the leading
/// monomial downwards.
impl<C: Scalar> Ord for Polynomial<C> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.vars
            .cmp(&other.vars)
            .then_with(|| self.total_degree().cmp(&other.total_degree()))
            .then_with(|| self.terms.iter().rev().cmp(other.terms.iter().rev()))
    }
}

impl<C: Scalar> fmt::Display for Polynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if neg {
                write!(f, "-")?;
            } else if k > 0 {
                write!(f, "+")?;
            }
            let mut parts: Vec<String> = Vec::new();
            if !a.is_one() || m.degree() == 0 {
                if a.is_integer() {
                    parts.push(a.numer().to_string());
                } else {
                    parts.push(format!("{}/{}", a.numer(), a.denom()));
                }
            }
            for (i, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => parts.push(self.vars.0[i].clone()),
                    _ => parts.push(format!("{}^{}", self.vars.0[i], e)),
                }
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl<C: Scalar> $tr<&Polynomial<C>> for &Polynomial<C> {
            type Output = Polynomial<C>;
            fn $method(self, rhs: &Polynomial<C>) -> Polynomial<C> {
                self.$checked(rhs).expect(concat!("polynomial ", stringify!($method)))
            }
        }
        impl<C: Scalar> $tr<Polynomial<C>> for Polynomial<C> {
            type Output = Polynomial<C>;
            fn $method(self, rhs: Polynomial<C>) -> Polynomial<C> {
                (&self).$method(&rhs)
            }
        }
        impl<C: Scalar> $tr<&Polynomial<C>> for Polynomial<C> {
            type Output = Polynomial<C>;
            fn $method(self, rhs: &Polynomial<C>) -> Polynomial<C> {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl<C: Scalar> Neg for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn neg(self) -> Polynomial<C> {
        self.scale(&-C::one())
    }
}

impl<C: Scalar> Neg for Polynomial<C> {
    type Output = Polynomial<C>;
    fn neg(self) -> Polynomial<C> {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{Poly, Rational};

    fn xyz() -> VarSet {
        VarSet::new(["x", "y", "z"]).unwrap()
    }

    fn p(s: &str) -> Poly {
        parse_poly(s, &xyz()).unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        let f = p("x^2+y^2+z^2-2*(x*y+x*z+y*z)");
        assert!((&f + &(-&f)).is_zero());
        assert_eq!(p("x") * p("y"), p("x*y"));
        assert_eq!((p("x") - p("y")).pow(2).unwrap(), p("x^2-2*x*y+y^2"));
    }

    #[test]
    fn mismatched_variables_are_rejected() {
        let other = VarSet::new(["x", "y"]).unwrap();
        let a = p("x");
        let b = parse_poly("x", &other).unwrap();
        assert_eq!(a.checked_add(&b), Err(PolyError::VariableMismatch));
        assert_eq!(a.checked_mul(&b), Err(PolyError::VariableMismatch));
    }

    #[test]
    fn substitution_examples() {
        let f = p("x^2+y^2+z^2-2*(x*y+x*z+y*z)");
        let vars = xyz();
        let zero = Poly::zero(&vars);
        let one = Poly::one(&vars);
        assert_eq!(f.substitute(&[("x", zero), ("z", one)]).unwrap(), p("y^2-2*y+1"));
        let id = f
            .substitute(&[("x", p("x")), ("y", p("y")), ("z", p("z"))])
            .unwrap();
        assert_eq!(id, f);
    }

    #[test]
    fn h_at_the_chart_is_f() {
        let v = VarSet::new(["x0", "x1", "y0", "y1"]).unwrap();
        let h = parse_poly(
            "x1^2*y0^2+x0^2*y1^2+x0^2*y0^2-2*(x1*y1*x0*y0+x1*x0*y0^2+y1*y0*x0^2)",
            &v,
        )
        .unwrap();
        let one = Poly::one(&v);
        let chart = h.substitute(&[("x0", one.clone()), ("y0", one)]).unwrap();
        let f = parse_poly("x1^2+y1^2+1-2*(x1*y1+x1+y1)", &v).unwrap();
        assert_eq!(chart, f);
        let prof = h
            .degree_profile(&Grading::Bidegree(
                vec!["x0".into(), "x1".into()],
                vec!["y0".into(), "y1".into()],
            ))
            .unwrap();
        assert_eq!(prof, DegreeProfile::Bidegree(2, 2));
    }

    #[test]
    fn degree_profiles() {
        let f = p("x^2+y^2+z^2-2*(x*y+x*z+y*z)");
        assert_eq!(f.degree_profile(&Grading::Total).unwrap(), DegreeProfile::Total(2));
        assert_eq!(p("x+y^2").degree_profile(&Grading::Total).unwrap(), DegreeProfile::Inhomogeneous);
        assert_eq!(p("0").degree_profile(&Grading::Total), Err(PolyError::ZeroPolynomial));
    }

    #[test]
    fn exact_division() {
        let a = p("x^2-y^2");
        assert_eq!(a.div_exact(&p("x-y")).unwrap(), p("x+y"));
        assert!(a.div_exact(&p("x")).is_none());
        assert_eq!(p("x^3*y").multiplicity_of(&p("x")), 3);
    }

    #[test]
    fn normalization_and_display() {
        let q = p("3*y-6*x");
        let (u, n) = q.normalize();
        assert_eq!(u, Rational::from_small(-3));
        assert_eq!(n.to_string(), "2*x-y");
        let half = p("x").scale(&Rational::new(1.into(), 2.into()));
        assert_eq!(half.to_string(), "1/2*x");
        assert_eq!(parse_poly(&half.to_string(), &xyz()).unwrap(), half);
    }

    #[test]
    fn exponent_overflow_is_reported() {
        let big = Poly::monomial(&xyz(), vec![u32::MAX, 0, 0], Rational::from_small(1));
        assert_eq!(big.checked_mul(&p("x")), Err(PolyError::ExponentOverflow));
    }

    #[test]
    fn generic_over_machine_rationals() {
        type P64 = Polynomial<num_rational::Ratio<i64>>;
        let v = xyz();
        let a: P64 = parse_poly("x^2-2*x*y+y^2", &v).unwrap();
        let b: P64 = parse_poly("x-y", &v).unwrap();
        assert_eq!(a.div_exact(&b).unwrap(), b);
        let f = a.factor().unwrap();
        assert_eq!(f.factors, vec![(b, 2)]);
    }
}
