//! Harder-Narasimhan stratification of the stacks of bundles on a curve.

mod hn;
mod recursion;

pub use hn::{
    cmp_slope, codim, enumerate_all_types, enumerate_types, enumerate_types_below, polygon_leq, polygon_of,
    HNPolygon, HNType,
};
pub use recursion::{
    coarse_moduli_series, fixed_det_coarse_series, fixed_det_correction, recursion_identity, ss_series,
    strata_json, total_series_unfixed, Stratifier,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum StrataError {
    #[error("InvalidType: {0}")]
    InvalidType(String),
    #[error("RankDegreeMismatch: polygons end at {left:?} and {right:?}")]
    RankDegreeMismatch { left: (i64, i64), right: (i64, i64) },
    #[error("NotCoprime: gcd({n}, {d}) = {gcd} != 1")]
    NotCoprime { n: u32, d: i64, gcd: u64 },
    #[error("NonPolynomialResult: coefficient of t^{degree} is {coeff}, expected a polynomial of degree <= {bound}")]
    NonPolynomialResult { degree: usize, coeff: String, bound: i64 },
    #[error("InvalidRank: rank must be positive")]
    InvalidRank,
}
