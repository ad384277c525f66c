//! Exact polynomial arithmetic over arbitrary-precision rationals.
//!
//! [`UPoly`] is a dense univariate polynomial in `x`; [`BPoly`] is a sparse
//! bivariate polynomial in `x` and `y`. Degrees of the zero polynomial are
//! reported as `None` everywhere.

mod bpoly;
pub(crate) mod linalg;
mod resultant;
mod roots;
mod upoly;

pub use bpoly::{BPoly, Monomial, Var};
pub use resultant::resultant;
pub use roots::rational_roots;
pub use upoly::UPoly;

use num_bigint::BigInt;
use num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("division by zero polynomial")]
    DivisionByZero,
    #[error("no elimination variable: both inputs are constant in {0}")]
    NoEliminationVariable(Var),
    #[error("resultant input is the zero polynomial")]
    ZeroResultantInput,
    #[error("identically zero")]
    IdenticallyZero,
}

/// Arbitrary-precision rational scalar, always kept in lowest terms with a
/// positive denominator.
pub type BigRat = BigRational;

/// `n / d` as a reduced rational. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> BigRat {
    BigRat::new(BigInt::from(n), BigInt::from(d))
}

/// The integer `n` as a rational.
pub fn int(n: i64) -> BigRat {
    BigRat::from_integer(BigInt::from(n))
}
