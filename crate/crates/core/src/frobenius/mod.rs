//! Frobenius eigenvalue actions and formal Lefschetz traces.

mod eigen;
pub mod oracle;
pub mod trace;
mod weil;

pub use eigen::{EigenMonomial, LambdaPart};
pub use oracle::{brute_trace, BruteTrace};
pub use trace::{formal_trace, generator_eigenvalues, trace_majorant, TraceFactor, TraceResult};
pub use weil::{weil_numbers, WeilNumberSet, WEIL_TOLERANCE};

use crate::curve::CurveError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FrobeniusError {
    #[error("Divergent (requires s > r and s >= 1; got r = {r}, s = {s})")]
    Divergent { r: u32, s: u32 },
    #[error("UnknownGenerator: {0}")]
    UnknownGenerator(String),
    #[error("MissingCurveData: the ring carries no ground field or L-polynomial")]
    MissingCurveData,
    #[error(transparent)]
    Curve(#[from] CurveError),
}
