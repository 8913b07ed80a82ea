//! Exact coefficient fields.
//!
//! The kernel is generic over an exact rational type. Everything it needs
//! beyond field arithmetic (integer content, rational roots, perfect-square
//! tests) goes through the numerator/denominator view exposed here.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_integer::{Integer, Roots};
use num_rational::Ratio;
use num_traits::{FromPrimitive, Num, One, Signed};

/// An exact field of fractions over some integer type.
pub trait Scalar:
    Clone + Ord + Hash + Debug + Display + Num + Signed + Send + Sync + 'static
{
    type Int: Integer + Signed + Roots + Clone + Hash + Debug + Display + FromPrimitive + Send + Sync;

    fn numer(&self) -> &Self::Int;
    fn denom(&self) -> &Self::Int;
    fn from_int(n: Self::Int) -> Self;
    fn from_parts(n: Self::Int, d: Self::Int) -> Self;

    fn from_small(n: i64) -> Self {
        Self::from_int(Self::Int::from_i64(n).expect("i64 fits the integer type"))
    }

    fn is_integer(&self) -> bool {
        self.denom().is_one()
    }

    /// Exact square root if `self` is the square of a rational.
    fn sqrt_exact(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        let n = self.numer().sqrt();
        let d = self.denom().sqrt();
        if n.clone() * n.clone() == *self.numer() && d.clone() * d.clone() == *self.denom() {
            Some(Self::from_parts(n, d))
        } else {
            None
        }
    }
}

impl<I> Scalar for Ratio<I>
where
    I: Integer + Signed + Roots + Clone + Hash + Debug + Display + FromPrimitive + Send + Sync + 'static,
{
    type Int = I;

    fn numer(&self) -> &I {
        Ratio::numer(self)
    }

    fn denom(&self) -> &I {
        Ratio::denom(self)
    }

    fn from_int(n: I) -> Self {
        Ratio::from_integer(n)
    }

    fn from_parts(n: I, d: I) -> Self {
        Ratio::new(n, d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    #[test]
    fn exact_square_roots() {
        let q = BigRational::new(BigInt::from(9), BigInt::from(4));
        assert_eq!(q.sqrt_exact(), Some(BigRational::new(BigInt::from(3), BigInt::from(2))));
        assert_eq!(BigRational::from_small(2).sqrt_exact(), None);
        assert_eq!(BigRational::from_small(-4).sqrt_exact(), None);
        assert_eq!(Ratio::<i64>::from_small(49).sqrt_exact(), Some(Ratio::from_integer(7)));
    }
}
