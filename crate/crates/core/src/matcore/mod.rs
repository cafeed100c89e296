//! Alphabets, matrices, selections and the triangularity predicates.

mod alphabet;
mod corner;
mod matrix;
mod text;

pub use alphabet::{Alphabet, Symbol};
pub use corner::{
    is_corner, is_special_corner, ll0_reduce, ll0_schedule, nu, nu0, nu1, CornerKind, CornerMove,
    CornerShape,
};
pub use matrix::{extract, is_all_zero, is_special_triangular, is_triangular, BoolMatrix, Selection};
pub use text::{format_matrix, format_selection, parse_matrix, parse_selection};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatrixError {
    #[error("invalid alphabet: {0}")]
    Alphabet(String),
    #[error("matrix dimensions must be positive, got {rows}x{cols}")]
    EmptyDimension { rows: usize, cols: usize },
    #[error("expected {expected} entries, found {found}")]
    EntryCount { expected: usize, found: usize },
    #[error("symbol index {0} is outside the alphabet")]
    UnknownSymbol(Symbol),
    #[error("{what} index {index} out of bounds (< {bound})")]
    IndexOutOfBounds { what: &'static str, index: usize, bound: usize },
    #[error("{what} index {index} repeated")]
    RepeatedIndex { what: &'static str, index: usize },
    #[error("invalid corner shape: need 1 <= ell <= k, got k={k}, ell={ell}")]
    CornerShape { k: usize, ell: usize },
    #[error("cannot reduce a special {from}-corner to a {to}-corner")]
    Reduction { from: CornerShape, to: CornerShape },
    #[error("selection is not a special {0}-corner")]
    NotACorner(CornerShape),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}
