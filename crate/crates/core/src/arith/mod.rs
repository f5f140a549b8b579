//! Exact arithmetic substrate: integer polynomials, truncated series and
//! normalized rational functions in one variable `t`.

pub mod json;
mod poly;
mod ratfunc;
mod series;

pub use poly::IntPolynomial;
pub use ratfunc::{expand_rational, rational_normalize, RationalFunction};
pub use series::{series_multiply, TruncatedSeries, DEFAULT_ORDER};

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ArithError {
    #[error("PoleAtZero: denominator vanishes at t = 0")]
    PoleAtZero,
    #[error("ZeroDenominator: denominator is the zero polynomial")]
    ZeroDenominator,
}

/// `n / d` as a [`BigRational`].
pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// `q^e` for a possibly negative exponent.
pub fn qpow(q: u64, e: i64) -> BigRational {
    let base = BigRational::from_integer(BigInt::from(q));
    if e >= 0 {
        num_traits::pow(base, e as usize)
    } else {
        num_traits::pow(base.recip(), e.unsigned_abs() as usize)
    }
}
