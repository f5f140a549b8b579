//! Exact cohomological invariants of moduli stacks of vector bundles on
//! curves over finite fields: Poincare series, Frobenius traces,
//! Harder-Narasimhan strata and point counts on the projective line.

pub mod arith;
pub mod curve;
pub mod frobenius;
pub mod p1;
pub mod ring;
pub mod strata;
pub mod verify;

pub use arith::{ArithError, BigInt, BigRational, IntPolynomial, RationalFunction, TruncatedSeries};
pub use curve::{CurveData, CurveError, GroundField};
pub use frobenius::FrobeniusError;
pub use p1::PointCountError;
pub use ring::{Convention, RingError};
pub use strata::StrataError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Frobenius(#[from] FrobeniusError),
    #[error(transparent)]
    Strata(#[from] StrataError),
    #[error(transparent)]
    PointCount(#[from] PointCountError),
    #[error("UnknownSuite: {0:?}")]
    UnknownSuite(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
