//! Exact computation of the multigraded Hilbert–Poincaré series of the
//! Grassmannian of planes `G(2,n)` under the standard n-torus action.
//!
//! The series is computed four independent ways:
//!
//! * a recursion over caterpillar trees ([`hilbert::series_by_recursion`]),
//! * an inclusion–exclusion numerator over embracing pairs
//!   ([`hilbert::numerator_inclusion_exclusion`]),
//! * a recursion on numerators built from symmetric polynomials
//!   ([`hilbert::numerator_symmetric_recursion`], conjectural),
//! * direct counting of non-embracing decompositions
//!   ([`semigroup::count_gradation`]).
//!
//! [`delpezzo`] checks the five-variable series against Riemann–Roch on the
//! plane blown up at four points.
//!
//! Polynomial code is generic over [`Coefficient`]; the aliases below fix the
//! arbitrary-precision types used by the rest of the crate.

pub mod delpezzo;
pub mod error;
pub mod hilbert;
pub mod linalg;
pub mod polyring;
pub mod report;
pub mod scalar;
pub mod semigroup;
pub mod trees;

pub use error::{Error, Result};
pub use scalar::{Coefficient, Field};

pub use num_bigint::BigInt;

/// Arbitrary-precision rational numbers.
pub type Rational = num_rational::BigRational;
/// Polynomials with arbitrary-precision integer coefficients.
pub type IntPolynomial = polyring::Polynomial<BigInt>;
/// Truncated power series with arbitrary-precision integer coefficients.
pub type TruncatedSeries = polyring::Series<BigInt>;
/// A quadratic form in the five Picard coordinates with rational coefficients.
pub type QuadraticForm21 = delpezzo::QuadraticForm<Rational>;
