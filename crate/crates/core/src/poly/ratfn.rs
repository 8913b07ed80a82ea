//! Reduced quotients of polynomials.

use std::fmt;

use super::{PolyError, Polynomial, Scalar, VarSet};

/// `num / den` with `gcd(num, den) = 1` and `den` normalized, so equal
/// functions have equal representations.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalFunction<C> {
    num: Polynomial<C>,
    den: Polynomial<C>,
}

impl<C: Scalar> RationalFunction<C> {
    pub fn new(num: Polynomial<C>, den: Polynomial<C>) -> Result<Self, PolyError> {
        if den.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        if num.vars() != den.vars() {
            return Err(PolyError::VariableMismatch);
        }
        if num.is_zero() {
            let one = Polynomial::one(den.vars());
            return Ok(RationalFunction { num, den: one });
        }
        let g = num.gcd(&den)?;
        let num = num.div_exact(&g).expect("gcd divides");
        let den = den.div_exact(&g).expect("gcd divides");
        let (u, den) = den.normalize();
        Ok(RationalFunction { num: num.scale(&(C::one() / u)), den })
    }

    pub fn from_poly(p: Polynomial<C>) -> Self {
        let den = Polynomial::one(p.vars());
        RationalFunction { num: p, den }
    }

    pub fn one(vars: &VarSet) -> Self {
        Self::from_poly(Polynomial::one(vars))
    }

    pub fn numer(&self) -> &Polynomial<C> {
        &self.num
    }

    pub fn denom(&self) -> &Polynomial<C> {
        &self.den
    }

    pub fn vars(&self) -> &VarSet {
        self.num.vars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, PolyError> {
        Self::new(self.num.checked_mul(&other.num)?, self.den.checked_mul(&other.den)?)
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, PolyError> {
        Self::new(self.num.checked_mul(&other.den)?, self.den.checked_mul(&other.num)?)
    }

    pub fn inv(&self) -> Result<Self, PolyError> {
        Self::new(self.den.clone(), self.num.clone())
    }

    /// Integer power; negative exponents invert.
    pub fn powi(&self, e: i64) -> Result<Self, PolyError> {
        let k = u32::try_from(e.unsigned_abs()).map_err(|_| PolyError::ExponentOverflow)?;
        let (n, d) = if e >= 0 { (&self.num, &self.den) } else { (&self.den, &self.num) };
        Self::new(n.pow(k)?, d.pow(k)?)
    }

    /// Multiplicity of `pi` in the numerator minus that in the denominator.
    /// `pi` must be irreducible; see [`Self::valuation_at`] for the unchecked form.
    pub fn valuation(&self, pi: &Polynomial<C>) -> Result<i64, PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        if pi.is_constant() {
            return Err(PolyError::Constant(pi.to_string()));
        }
        if !pi.is_irreducible()? {
            return Err(PolyError::NotIrreducible(pi.to_string()));
        }
        Ok(self.valuation_at(pi))
    }

    /// Valuation along a polynomial already known to be irreducible.
    pub fn valuation_at(&self, pi: &Polynomial<C>) -> i64 {
        self.num.multiplicity_of(pi) as i64 - self.den.multiplicity_of(pi) as i64
    }

    /// Applies `compose` to numerator and denominator.
    pub fn compose(&self, images: &[Polynomial<C>], target: &VarSet) -> Result<Self, PolyError> {
        Self::new(self.num.compose(images, target)?, self.den.compose(images, target)?)
    }
}

impl<C: Scalar> PartialOrd for RationalFunction<C> {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl<C: Scalar> Ord for RationalFunction<C> {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.num.cmp(&other.num).then_with(|| self.den.cmp(&other.den))
    }
}

impl<C: Scalar> From<Polynomial<C>> for RationalFunction<C> {
    fn from(p: Polynomial<C>) -> Self {
        Self::from_poly(p)
    }
}

impl<C: Scalar> fmt::Display for RationalFunction<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}
