//! Exact (budgeted) maximisation of the five triangular-submatrix sizes,
//! with witnesses and an exhaustive oracle for small inputs.

mod oracle;
mod search;

pub use oracle::{brute_force_oracle, OracleError, ORACLE_MAX_MIN_DIM, ORACLE_MAX_DIM};
pub use search::Solver;

use std::fmt;
use std::str::FromStr;

use crate::matcore::{extract, is_all_zero, is_special_triangular, is_triangular, BoolMatrix, Selection};

/// Which extremal quantity to compute.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variant {
    /// `T`: order-preserving triangular submatrix.
    Triangular,
    /// `Tˢ`: order-preserving special triangular submatrix.
    Special,
    /// `Tᵖ`: permuted triangular submatrix.
    Permuted,
    /// `Tᵖˢ`: permuted special triangular submatrix, the superboolean rank.
    PermutedSpecial,
    /// `S`: all-zero square submatrix.
    ZeroSquare,
}

impl Variant {
    pub const ALL: [Variant; 5] = [
        Variant::Triangular,
        Variant::Special,
        Variant::Permuted,
        Variant::PermutedSpecial,
        Variant::ZeroSquare,
    ];

    pub fn token(self) -> &'static str {
        match self {
            Variant::Triangular => "t",
            Variant::Special => "s",
            Variant::Permuted => "p",
            Variant::PermutedSpecial => "ps",
            Variant::ZeroSquare => "zero",
        }
    }

    /// Whether witnesses must use strictly increasing indices.
    pub fn order_preserving(self) -> bool {
        matches!(self, Variant::Triangular | Variant::Special)
    }

    pub fn is_special(self) -> bool {
        matches!(self, Variant::Special | Variant::PermutedSpecial)
    }

    /// Predicate on an extracted square block.
    pub fn accepts(self, block: &BoolMatrix) -> bool {
        match self {
            Variant::Triangular | Variant::Permuted => is_triangular(block),
            Variant::Special | Variant::PermutedSpecial => is_special_triangular(block),
            Variant::ZeroSquare => block.is_square() && is_all_zero(block),
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown variant {0:?} (expected one of t, s, p, ps, zero)")]
pub struct UnknownVariant(pub String);

impl FromStr for Variant {
    type Err = UnknownVariant;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Variant::ALL
            .into_iter()
            .find(|v| v.token() == s)
            .ok_or_else(|| UnknownVariant(s.to_string()))
    }
}

/// Search limits. `None` means unlimited.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SolveBudget {
    pub max_nodes: Option<u64>,
    pub max_millis: Option<u64>,
}

impl SolveBudget {
    pub fn unlimited() -> Self {
        SolveBudget::default()
    }

    pub fn nodes(max_nodes: u64) -> Self {
        SolveBudget { max_nodes: Some(max_nodes), max_millis: None }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveResult {
    pub value: usize,
    /// `value` rows and `value` columns; empty when `value == 0`.
    pub witness: Selection,
    /// The value is proven maximal.
    pub optimal: bool,
    pub nodes_expanded: u64,
    pub elapsed_millis: u64,
}

/// Solves to optimality unless the budget runs out first, in which case the
/// best witness found so far is returned with `optimal == false`.
pub fn solve(m: &BoolMatrix, variant: Variant, budget: SolveBudget) -> SolveResult {
    Solver::new(variant).budget(budget).solve(m)
}

/// Checks that `sel` is square, respects the variant's ordering rule, stays
/// in bounds and selects a block accepted by the variant. The empty
/// selection certifies value 0.
pub fn verify_witness(m: &BoolMatrix, sel: &Selection, variant: Variant) -> bool {
    if !sel.is_square() {
        return false;
    }
    if sel.is_empty() {
        return true;
    }
    if variant.order_preserving() && !sel.is_order_preserving() {
        return false;
    }
    match extract(m, sel) {
        Ok(block) => variant.accepts(&block),
        Err(_) => false,
    }
}
