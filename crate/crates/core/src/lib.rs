//! Exact certification of stable-irrationality verdicts for diagonal quadric
//! surface bundles over the projective plane and over `P1 x P1`.
//!
//! The crate is layered bottom up:
//!
//! * [`poly`]: exact multivariate polynomials and rational functions over `Q`;
//! * [`funfield`]: square classes, prime divisors, curve parametrizations;
//! * [`brauer`]: two-torsion Brauer classes and their tame residues;
//! * [`quadform`]: diagonal forms, discriminant, Clifford invariant, similarity;
//! * [`certify`]: verdicts, degenerations and replayable certificates.
//!
//! Everything is generic over [`poly::Scalar`]; the aliases below fix the
//! coefficient field to arbitrary-precision rationals.

pub mod brauer;
pub mod certify;
pub mod funfield;
pub mod poly;
pub mod quadform;

pub type Rational = num_rational::BigRational;
pub type Poly = poly::Polynomial<Rational>;
pub type RatFn = poly::RationalFunction<Rational>;
