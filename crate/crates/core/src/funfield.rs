//! Function fields of the two base surfaces.
//!
//! Constants are squares throughout: the intended constant field is the
//! complex numbers, and every polynomial that enters has rational
//! coefficients, so computations run over `Q` with nonzero constants
//! ignored in every square-class question.
//!
//! Functions are [`RatFn`]s over the surface's homogeneous coordinates.
//! They may be written in the affine chart (`z = 1` on the plane,
//! `x0 = y0 = 1` on `P1 x P1`) or as degree-zero ratios; both describe the
//! same element once [`SurfaceModel::projectivize`] has balanced them.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::poly::{odd_part, DegreeProfile, Grading, PolyError, Scalar, VarSet};
use crate::{Poly, RatFn, Rational};

/// Height bound for the rational-point search on conics.
pub const POINT_SEARCH_HEIGHT: i64 = 100;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FunFieldError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("the zero function has no square class")]
    ZeroFunction,
    #[error("`{0}` is not (bi)homogeneous")]
    NotHomogeneous(String),
    #[error("`{0}` is not irreducible")]
    Reducible(String),
    #[error("no parametrization available for the curve `{0}`")]
    UnsupportedCurve(String),
    #[error("no rational point of height at most {bound} on `{curve}`")]
    NoRationalPoint { curve: String, bound: i64 },
    #[error("`{f}` has valuation {valuation} along `{curve}`, not a unit")]
    NotAUnit { f: String, curve: String, valuation: i64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SurfaceKind {
    #[serde(rename = "p2")]
    P2,
    #[serde(rename = "p1xp1")]
    P1xP1,
}

/// `P2` with coordinates `x, y, z`, or `P1 x P1` with `x0, x1; y0, y1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SurfaceModel {
    kind: SurfaceKind,
    vars: VarSet,
}

impl SurfaceModel {
    pub fn new(kind: SurfaceKind) -> Self {
        let names: &[&str] = match kind {
            SurfaceKind::P2 => &["x", "y", "z"],
            SurfaceKind::P1xP1 => &["x0", "x1", "y0", "y1"],
        };
        SurfaceModel { kind, vars: VarSet::new(names.iter().copied()).expect("valid names") }
    }

    pub fn p2() -> Self {
        Self::new(SurfaceKind::P2)
    }

    pub fn p1xp1() -> Self {
        Self::new(SurfaceKind::P1xP1)
    }

    pub fn kind(&self) -> SurfaceKind {
        self.kind
    }

    pub fn tag(&self) -> &'static str {
        match self.kind {
            SurfaceKind::P2 => "p2",
            SurfaceKind::P1xP1 => "p1xp1",
        }
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn parse(&self, text: &str) -> Result<Poly, PolyError> {
        crate::poly::parse_poly(text, &self.vars)
    }

    pub fn var(&self, name: &str) -> Poly {
        Poly::var_named(&self.vars, name).expect("surface variable")
    }

    /// Indices of the variables set to one on the affine chart.
    pub fn chart_fixed(&self) -> &'static [usize] {
        match self.kind {
            SurfaceKind::P2 => &[2],
            SurfaceKind::P1xP1 => &[0, 2],
        }
    }

    /// Indices of the two affine chart coordinates.
    pub fn chart_coordinates(&self) -> [usize; 2] {
        match self.kind {
            SurfaceKind::P2 => [0, 1],
            SurfaceKind::P1xP1 => [1, 3],
        }
    }

    pub fn grading(&self) -> Grading {
        match self.kind {
            SurfaceKind::P2 => Grading::Total,
            SurfaceKind::P1xP1 => Grading::Bidegree(vec!["x0".into(), "x1".into()], vec!["y0".into(), "y1".into()]),
        }
    }

    /// Degree (plane) or bidegree of a (bi)homogeneous polynomial.
    pub fn degree_of(&self, p: &Poly) -> Result<(u32, u32), FunFieldError> {
        match p.degree_profile(&self.grading())? {
            DegreeProfile::Total(d) => Ok((d, 0)),
            DegreeProfile::Bidegree(d, e) => Ok((d, e)),
            DegreeProfile::Inhomogeneous => Err(FunFieldError::NotHomogeneous(p.to_string())),
        }
    }

    /// The divisors outside the affine chart, plus on `P1 x P1` the two
    /// coordinate rulings inside it.
    pub fn boundary(&self) -> Vec<PrimeDivisor> {
        let names: &[&str] = match self.kind {
            SurfaceKind::P2 => &["z"],
            SurfaceKind::P1xP1 => &["x0", "x1", "y0", "y1"],
        };
        names
            .iter()
            .map(|n| PrimeDivisor { surface: self.clone(), poly: self.var(n) })
            .collect()
    }

    pub fn dehomogenize_poly(&self, p: &Poly) -> Poly {
        let at: Vec<(usize, Rational)> = self.chart_fixed().iter().map(|&i| (i, Rational::one())).collect();
        p.eval_partial(&at)
    }

    pub fn dehomogenize(&self, f: &RatFn) -> RatFn {
        RatFn::new(self.dehomogenize_poly(f.numer()), self.dehomogenize_poly(f.denom()))
            .expect("a nonzero denominator stays nonzero on the chart")
    }

    /// Smallest (bi)homogeneous polynomial restricting to `p` on the chart.
    pub fn homogenize_poly(&self, p: &Poly) -> Result<Poly, PolyError> {
        let p = self.dehomogenize_poly(p);
        match self.kind {
            SurfaceKind::P2 => p.homogenize_in(&[0, 1, 2], 2),
            SurfaceKind::P1xP1 => p.homogenize_in(&[0, 1], 0)?.homogenize_in(&[2, 3], 2),
        }
    }

    /// Writes `f` as `N / D` with `N`, `D` (bi)homogeneous of equal (bi)degree.
    pub fn projectivize(&self, f: &RatFn) -> Result<(Poly, Poly), FunFieldError> {
        let f = self.dehomogenize(f);
        let mut n = self.homogenize_poly(f.numer())?;
        let mut d = self.homogenize_poly(f.denom())?;
        if n.is_zero() {
            return Err(FunFieldError::ZeroFunction);
        }
        let (dn, en) = self.degree_of(&n)?;
        let (dd, ed) = self.degree_of(&d)?;
        let fixed = self.chart_fixed();
        let pad = |p: Poly, var: usize, k: u32| -> Result<Poly, PolyError> {
            let mut exps = vec![0; p.vars().len()];
            exps[var] = k;
            p.mul_monomial(&exps)
        };
        if dn > dd {
            d = pad(d, fixed[0], dn - dd)?;
        } else {
            n = pad(n, fixed[0], dd - dn)?;
        }
        if self.kind == SurfaceKind::P1xP1 {
            if en > ed {
                d = pad(d, fixed[1], en - ed)?;
            } else {
                n = pad(n, fixed[1], ed - en)?;
            }
        }
        Ok((n, d))
    }
}

/// An irreducible (bi)homogeneous curve on a base surface.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PrimeDivisor {
    surface: SurfaceModel,
    poly: Poly,
}

impl PrimeDivisor {
    pub fn new(surface: &SurfaceModel, poly: &Poly) -> Result<Self, FunFieldError> {
        if poly.vars() != surface.vars() {
            return Err(PolyError::VariableMismatch.into());
        }
        surface.degree_of(poly)?;
        if !poly.is_irreducible()? {
            return Err(FunFieldError::Reducible(poly.to_string()));
        }
        Ok(PrimeDivisor { surface: surface.clone(), poly: poly.normalized() })
    }

    pub fn surface(&self) -> &SurfaceModel {
        &self.surface
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn is_boundary(&self) -> bool {
        self.surface.boundary().contains(self)
    }
}

impl PartialOrd for PrimeDivisor {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for PrimeDivisor {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.surface
            .kind
            .cmp(&other.surface.kind)
            .then_with(|| self.poly.cmp(&other.poly))
    }
}

impl fmt::Display for PrimeDivisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.poly)
    }
}

/// Element of `K* / K*^2`: the irreducible factors of odd multiplicity.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SquareClass {
    support: BTreeSet<Poly>,
}

impl SquareClass {
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn from_support<I: IntoIterator<Item = Poly>>(support: I) -> Self {
        SquareClass { support: support.into_iter().collect() }
    }

    pub fn support(&self) -> &BTreeSet<Poly> {
        &self.support
    }

    pub fn is_trivial(&self) -> bool {
        self.support.is_empty()
    }

    /// Product of the support, a representative of the class.
    pub fn representative(&self, vars: &VarSet) -> Poly {
        self.support.iter().fold(Poly::one(vars), |acc, p| acc * p)
    }
}

impl fmt::Display for SquareClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.support.iter().map(|p| p.to_string()).collect();
        write!(f, "{{{}}}", items.join(", "))
    }
}

pub fn square_class(f: &RatFn) -> Result<SquareClass, FunFieldError> {
    if f.is_zero() {
        return Err(FunFieldError::ZeroFunction);
    }
    let mut support = BTreeSet::new();
    for p in [f.numer(), f.denom()] {
        for g in p.factor()?.odd_factors() {
            if !support.remove(g) {
                support.insert(g.clone());
            }
        }
    }
    Ok(SquareClass { support })
}

pub fn multiply_classes(a: &SquareClass, b: &SquareClass) -> SquareClass {
    SquareClass { support: a.support.symmetric_difference(&b.support).cloned().collect() }
}

/// Square class in the function field of a rational curve, stored as the
/// normalized odd part of a polynomial in the curve parameter `t`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CurveClass(Poly);

impl CurveClass {
    pub fn trivial() -> Self {
        CurveClass(Poly::one(&param_vars()))
    }

    /// Class of a nonzero polynomial in `t`.
    pub fn of(p: &Poly) -> Self {
        CurveClass(odd_part(p))
    }

    pub fn is_trivial(&self) -> bool {
        self.0.is_constant()
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::of(&(&self.0 * &other.0))
    }

    pub fn representative(&self) -> &Poly {
        &self.0
    }
}

impl fmt::Display for CurveClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.0)
    }
}

/// The single-variable ring of curve parameters.
pub fn param_vars() -> VarSet {
    VarSet::new(["t"]).expect("valid name")
}

/// Homogeneous coordinates of a rational curve as polynomials in `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveParam {
    pub curve: PrimeDivisor,
    pub coords: Vec<Poly>,
}

impl CurveParam {
    /// Pulls a (bi)homogeneous polynomial back to the parameter line.
    pub fn pull_back(&self, p: &Poly) -> Result<Poly, PolyError> {
        p.compose(&self.coords, &param_vars())
    }
}

impl fmt::Display for CurveParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.coords.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", items.join(", "))
    }
}

pub fn parametrize(c: &PrimeDivisor) -> Result<CurveParam, FunFieldError> {
    let s = c.surface();
    let pi = c.poly();
    let tv = param_vars();
    let t = Poly::var(&tv, 0);
    let k = |q: &Rational| Poly::constant(&tv, q.clone());
    let unsupported = || FunFieldError::UnsupportedCurve(pi.to_string());
    let coords: Vec<Poly> = match s.kind() {
        SurfaceKind::P2 => match s.degree_of(pi)?.0 {
            1 => {
                let a = pi.coeff(&[1, 0, 0]);
                let b = pi.coeff(&[0, 1, 0]);
                let cz = pi.coeff(&[0, 0, 1]);
                let z = Rational::zero();
                let o = Rational::one();
                let (u, w) = if !cz.is_zero() {
                    ([cz.clone(), z.clone(), -a], [z.clone(), cz, -b])
                } else if !b.is_zero() {
                    ([b, -a, z.clone()], [z.clone(), z, o])
                } else {
                    ([z.clone(), o.clone(), z.clone()], [z.clone(), z, o])
                };
                (0..3).map(|i| &t * &k(&u[i]) + k(&w[i])).collect()
            }
            2 => conic_param(pi, [0, 1, 2])?.to_vec(),
            _ => return Err(unsupported()),
        },
        SurfaceKind::P1xP1 => {
            let (d, e) = s.degree_of(pi)?;
            if d == 1 || e == 1 {
                // Linear in one factor: solve for that factor's point over
                // the other factor's affine line.
                let (lin, other) = if d == 1 { ([0usize, 1], [2usize, 3]) } else { ([2, 3], [0, 1]) };
                let coeffs = pi.coeffs_in(lin[0]);
                let a = coeffs.get(&1).cloned().unwrap_or_else(|| Poly::zero(s.vars()));
                let b = pi.coeffs_in(lin[1]).get(&1).cloned().unwrap_or_else(|| Poly::zero(s.vars()));
                let mut images: Vec<Poly> = vec![Poly::zero(&tv); 4];
                images[other[0]] = Poly::one(&tv);
                images[other[1]] = t.clone();
                let a_t = a.compose(&images, &tv)?;
                let b_t = b.compose(&images, &tv)?;
                let g = a_t.gcd(&b_t)?;
                let mut out = images;
                out[lin[0]] = b_t.div_exact(&g).ok_or_else(unsupported)?;
                out[lin[1]] = -a_t.div_exact(&g).ok_or_else(unsupported)?;
                out
            } else {
                // Otherwise the chart curve must be a conic; homogenize it in
                // the plane with a third coordinate `w`.
                let plane = VarSet::new(["x1", "y1", "w"]).expect("valid names");
                let affine = s.dehomogenize_poly(pi);
                if affine.total_degree() != Some(2) {
                    return Err(unsupported());
                }
                let mut images = vec![Poly::one(&plane); 4];
                images[1] = Poly::var(&plane, 0);
                images[3] = Poly::var(&plane, 1);
                let q = affine.compose(&images, &plane)?.homogenize_in(&[0, 1, 2], 2)?;
                let [x, y, w] = conic_param(&q, [0, 1, 2])?;
                vec![w.clone(), x, w, y]
            }
        }
    };
    let param = CurveParam { curve: c.clone(), coords };
    if !param.pull_back(pi)?.is_zero() || param.coords.iter().all(Poly::is_constant) {
        return Err(unsupported());
    }
    Ok(param)
}

/// Parametrizes a smooth conic in three variables by projection from a
/// rational point.
fn conic_param(q: &Poly, idx: [usize; 3]) -> Result<[Poly; 3], FunFieldError> {
    let two = Rational::from_small(2);
    let mut m = vec![vec![Rational::zero(); 3]; 3];
    for (mono, c) in q.terms() {
        let e: Vec<u32> = idx.iter().map(|&i| mono.exps()[i]).collect();
        let pos: Vec<usize> = (0..3).flat_map(|k| std::iter::repeat_n(k, e[k] as usize)).collect();
        if let [i, j] = pos[..] {
            if i == j {
                m[i][i] = m[i][i].clone() + c.clone();
            } else {
                m[i][j] = m[i][j].clone() + c.clone() / two.clone();
                m[j][i] = m[j][i].clone() + c.clone() / two.clone();
            }
        }
    }
    let p = conic_point(&m).ok_or_else(|| FunFieldError::NoRationalPoint {
        curve: q.to_string(),
        bound: POINT_SEARCH_HEIGHT,
    })?;
    let tv = param_vars();
    let t = Poly::var(&tv, 0);
    let k = |x: &Rational| Poly::constant(&tv, x.clone());
    let pivot = (0..3).find(|&i| !p[i].is_zero()).expect("nonzero point");
    let (i, j) = match pivot {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    };
    let mp: Vec<Rational> = (0..3)
        .map(|r| (0..3).fold(Rational::zero(), |acc, c| acc + m[r][c].clone() * p[c].clone()))
        .collect();
    // w(t) = e_i + t e_j; the second intersection of the line through p.
    let wmw = k(&m[i][i]) + &t * &k(&(m[i][j].clone() * two.clone())) + &(&t * &t) * &k(&m[j][j]);
    let pmw = k(&mp[i]) + &t * &k(&mp[j]);
    let mut w = [Poly::zero(&tv), Poly::zero(&tv), Poly::zero(&tv)];
    w[i] = Poly::one(&tv);
    w[j] = t.clone();
    let coords: Vec<Poly> = (0..3)
        .map(|r| &wmw * &k(&p[r]) - &(&pmw * &w[r]).scale(&two))
        .collect();
    let g = crate::poly::gcd_all(&coords)?;
    let out: Vec<Poly> = coords.iter().map(|c| c.div_exact(&g).expect("gcd divides")).collect();
    Ok([out[0].clone(), out[1].clone(), out[2].clone()])
}

/// First rational point of the conic `v^T m v = 0`, scanning `(a, b)` by
/// height and solving for the last coordinate.
fn conic_point(m: &[Vec<Rational>]) -> Option<[Rational; 3]> {
    let q = |v: &[Rational; 3]| {
        (0..3).fold(Rational::zero(), |acc, i| {
            (0..3).fold(acc, |acc, j| acc + m[i][j].clone() * v[i].clone() * v[j].clone())
        })
    };
    let zero = Rational::zero;
    if q(&[zero(), zero(), Rational::one()]).is_zero() {
        return Some([zero(), zero(), Rational::one()]);
    }
    for h in 1..=POINT_SEARCH_HEIGHT {
        for a in -h..=h {
            for b in -h..=h {
                if a.abs().max(b.abs()) != h {
                    continue;
                }
                let (a, b) = (Rational::from_small(a), Rational::from_small(b));
                // q(a, b, c) = k2 c^2 + k1 c + k0
                let k2 = m[2][2].clone();
                let k1 = (m[0][2].clone() * a.clone() + m[1][2].clone() * b.clone()) * Rational::from_small(2);
                let k0 = q(&[a.clone(), b.clone(), zero()]);
                let c = if k2.is_zero() {
                    if k1.is_zero() {
                        if k0.is_zero() { Some(zero()) } else { None }
                    } else {
                        Some(-k0 / k1)
                    }
                } else {
                    let disc = k1.clone() * k1.clone() - Rational::from_small(4) * k2.clone() * k0;
                    disc.sqrt_exact().map(|r| (-k1 + r) / (Rational::from_small(2) * k2))
                };
                if let Some(c) = c {
                    return Some(primitive_point([a, b, c]));
                }
            }
        }
    }
    None
}

fn primitive_point(v: [Rational; 3]) -> [Rational; 3] {
    use num_integer::Integer;
    let lcm = v.iter().fold(num_bigint::BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<num_bigint::BigInt> = v.iter().map(|c| (c * Rational::from_int(lcm.clone())).to_integer()).collect();
    let g = ints.iter().fold(num_bigint::BigInt::zero(), |acc, c| acc.gcd(c));
    let sign = if ints.iter().find(|c| !c.is_zero()).is_some_and(|c| c.is_negative()) { -1 } else { 1 };
    let g = g * num_bigint::BigInt::from(sign);
    let out: Vec<Rational> = ints.into_iter().map(|c| Rational::from_int(c / g.clone())).collect();
    [out[0].clone(), out[1].clone(), out[2].clone()]
}

/// Valuation of `f` along `c` and the class of `f / pi^v` restricted to
/// the curve. The class is well defined up to squares whenever it enters a
/// combination of total weight zero in `pi`, which is how residues and the
/// Hensel test use it.
pub fn unit_part_class(f: &RatFn, c: &PrimeDivisor) -> Result<(i64, CurveClass), FunFieldError> {
    if f.is_zero() {
        return Err(FunFieldError::ZeroFunction);
    }
    let param = parametrize(c)?;
    let (n, d) = c.surface().projectivize(f)?;
    let (n, kn) = n.strip_factor(c.poly());
    let (d, kd) = d.strip_factor(c.poly());
    let restricted = param.pull_back(&(&n * &d))?;
    debug_assert!(!restricted.is_zero());
    Ok((kn as i64 - kd as i64, CurveClass::of(&restricted)))
}

/// Valuation of `f` along a prime divisor, read off the balanced
/// homogeneous representation.
pub fn valuation_along(f: &RatFn, c: &PrimeDivisor) -> Result<i64, FunFieldError> {
    let (n, d) = c.surface().projectivize(f)?;
    Ok(n.multiplicity_of(c.poly()) as i64 - d.multiplicity_of(c.poly()) as i64)
}

/// `f` composed with the parametrization of `c`, for `f` a unit along `c`.
pub fn restrict_unit(f: &RatFn, c: &PrimeDivisor) -> Result<RatFn, FunFieldError> {
    let v = valuation_along(f, c)?;
    if v != 0 {
        return Err(FunFieldError::NotAUnit { f: f.to_string(), curve: c.to_string(), valuation: v });
    }
    let param = parametrize(c)?;
    let (n, d) = c.surface().projectivize(f)?;
    let (n, _) = n.strip_factor(c.poly());
    let (d, _) = d.strip_factor(c.poly());
    Ok(RatFn::new(param.pull_back(&n)?, param.pull_back(&d)?)?)
}

pub fn is_square_on_curve(f: &RatFn, c: &PrimeDivisor) -> Result<bool, FunFieldError> {
    let r = restrict_unit(f, c)?;
    Ok(odd_part(&(r.numer() * r.denom())).is_constant())
}

/// Whether `d` becomes a square in the completion of `K` along `c`.
pub fn hensel_square_test(d: &RatFn, c: &PrimeDivisor) -> Result<bool, FunFieldError> {
    let (v, class) = unit_part_class(d, c)?;
    Ok(v % 2 == 0 && class.is_trivial())
}

#[cfg(test)]
mod tests {
    use super::*;

    const F: &str = "x^2+y^2+z^2-2*(x*y+x*z+y*z)";
    const F1: &str = "x^2+y^2+1-2*(x*y+x+y)";

    fn p2() -> SurfaceModel {
        SurfaceModel::p2()
    }

    fn f(s: &str) -> RatFn {
        RatFn::from(p2().parse(s).unwrap())
    }

    fn div(s: &str) -> PrimeDivisor {
        PrimeDivisor::new(&p2(), &p2().parse(s).unwrap()).unwrap()
    }

    fn t(s: &str) -> Poly {
        crate::poly::parse_poly(s, &param_vars()).unwrap()
    }

    #[test]
    fn square_class_examples() {
        let c = square_class(&f(&format!("x^2*y^2*({F})"))).unwrap();
        assert_eq!(c, SquareClass::from_support([p2().parse(F).unwrap()]));
        assert!(square_class(&f("7")).unwrap().is_trivial());
        let xy = square_class(&f("x*y")).unwrap();
        assert_eq!(xy.support().len(), 2);
        assert_eq!(square_class(&f("0")), Err(FunFieldError::ZeroFunction));
    }

    #[test]
    fn class_multiplication() {
        let x = square_class(&f("x")).unwrap();
        let y = square_class(&f("y")).unwrap();
        let ff = square_class(&f(F)).unwrap();
        assert_eq!(multiply_classes(&x, &y), square_class(&f("x*y")).unwrap());
        assert!(multiply_classes(&ff, &ff).is_trivial());
        let yf = multiply_classes(&y, &ff);
        assert_eq!(multiply_classes(&multiply_classes(&x, &y), &yf), multiply_classes(&x, &ff));
    }

    #[test]
    fn line_parametrizations() {
        let px = parametrize(&div("x")).unwrap();
        assert_eq!(px.coords, vec![t("0"), t("t"), t("1")]);
        let pz = parametrize(&div("z")).unwrap();
        assert_eq!(pz.coords, vec![t("t"), t("1"), t("0")]);
    }

    #[test]
    fn conic_through_a_rational_point() {
        let m = vec![
            vec![Rational::from_small(1), Rational::from_small(-1), Rational::from_small(-1)],
            vec![Rational::from_small(-1), Rational::from_small(1), Rational::from_small(-1)],
            vec![Rational::from_small(-1), Rational::from_small(-1), Rational::from_small(1)],
        ];
        // F(1, 1, 0) = 1 + 1 + 0 - 2 * (1 + 0 + 0) = 0
        assert_eq!(
            conic_point(&m).unwrap(),
            [Rational::from_small(1), Rational::from_small(1), Rational::from_small(0)]
        );
        let pf = parametrize(&div(F)).unwrap();
        assert_eq!(pf.coords, vec![t("(t-1)^2"), t("(t+1)^2"), t("4*t^2")]);
    }

    #[test]
    fn restriction_examples() {
        let x = div("x");
        assert_eq!(restrict_unit(&f("y"), &x).unwrap(), RatFn::from(t("t")));
        assert_eq!(restrict_unit(&f(F1), &x).unwrap(), RatFn::from(t("(t-1)^2")));
        assert_eq!(restrict_unit(&f("1"), &x).unwrap(), RatFn::from(t("1")));
        assert!(matches!(restrict_unit(&f("x*y"), &x), Err(FunFieldError::NotAUnit { valuation: 1, .. })));
    }

    #[test]
    fn squares_on_curves() {
        assert!(is_square_on_curve(&f(F1), &div("x")).unwrap());
        assert!(!is_square_on_curve(&f("y"), &div("x")).unwrap());
        // On z = 0 the homogeneous F restricts to (x - y)^2.
        let fz0 = RatFn::new(p2().parse(F).unwrap(), p2().parse("x^2").unwrap()).unwrap();
        assert!(is_square_on_curve(&fz0, &div("z")).unwrap());
    }

    #[test]
    fn hensel_examples() {
        assert!(hensel_square_test(&f(F1), &div("x")).unwrap());
        assert!(!hensel_square_test(&f("x"), &div("x")).unwrap());
        assert_eq!(valuation_along(&f(F1), &div("z")).unwrap(), -2);
        assert!(hensel_square_test(&f(F1), &div("z")).unwrap());
    }

    #[test]
    fn p1xp1_curves() {
        let s = SurfaceModel::p1xp1();
        let h = s
            .parse("x1^2*y0^2+x0^2*y1^2+x0^2*y0^2-2*(x1*y1*x0*y0+x1*x0*y0^2+y1*y0*x0^2)")
            .unwrap();
        let ch = PrimeDivisor::new(&s, &h).unwrap();
        let param = parametrize(&ch).unwrap();
        assert!(param.pull_back(&h).unwrap().is_zero());
        for b in s.boundary() {
            let param = parametrize(&b).unwrap();
            assert!(param.pull_back(b.poly()).unwrap().is_zero());
        }
        let diag = PrimeDivisor::new(&s, &s.parse("x0*y1-x1*y0").unwrap()).unwrap();
        assert!(parametrize(&diag).unwrap().pull_back(diag.poly()).unwrap().is_zero());
    }

    #[test]
    fn projectivize_balances_degrees() {
        let s = SurfaceModel::p1xp1();
        let (n, d) = s.projectivize(&RatFn::from(s.parse("x1*y1^2").unwrap())).unwrap();
        assert_eq!(n, s.parse("x1*y1^2").unwrap());
        assert_eq!(d, s.parse("x0*y0^2").unwrap());
    }

    #[test]
    fn rejected_curves() {
        let s = SurfaceModel::p1xp1();
        let quartic = PrimeDivisor::new(&s, &s.parse("x0^2*y1^2+x1^2*y0^2+x1^2*y1^2").unwrap()).unwrap();
        assert!(matches!(parametrize(&quartic), Err(FunFieldError::UnsupportedCurve(_))));
        let pointless = div("x^2+y^2+3*z^2");
        assert!(matches!(parametrize(&pointless), Err(FunFieldError::NoRationalPoint { bound: 100, .. })));
        assert!(matches!(
            PrimeDivisor::new(&p2(), &p2().parse("x*y").unwrap()),
            Err(FunFieldError::Reducible(_))
        ));
    }
}
