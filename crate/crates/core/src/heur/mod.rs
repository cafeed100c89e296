//! Constructive lower bounds: randomized greedy growth of witnesses, greedy
//! search for special corners, and the row/column extension that turns a
//! special `(k, ℓ)`-corner into a special triangular matrix of size `k`.

mod corner_search;
mod extend;
mod greedy;

pub use corner_search::{corner_seed_search, corner_seed_search_exec, corner_then_extend, PipelineOptions};
pub use extend::{ll2_extend, ll2_extend_with, ExtendError, ExtendOptions, ExtendOrder, ExtendTrace, Scan, StepKind};
pub use greedy::{greedy_lower_bound, greedy_lower_bound_exec};

use crate::exact::Variant;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HeurError {
    #[error("restarts must be at least 1")]
    NoRestarts,
    #[error("corner-then-extend produces special triangular witnesses; variant {0} is not supported")]
    UnsupportedVariant(Variant),
}
