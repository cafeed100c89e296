use itertools::Itertools;

use super::Variant;
use crate::matcore::{extract, BoolMatrix, Selection};

/// Largest `min(rows, cols)` the oracle accepts.
pub const ORACLE_MAX_MIN_DIM: usize = 8;
/// Largest `max(rows, cols)` the oracle accepts.
pub const ORACLE_MAX_DIM: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{rows}x{cols} is too large for exhaustive enumeration")]
pub struct OracleError {
    pub rows: usize,
    pub cols: usize,
}

/// Exhaustive maximum: every selection of each size is extracted and
/// checked with the plain predicates. Increasing index sets for `T` and `Tˢ`
/// (and `S`, which is order-free), ordered sequences for `Tᵖ` and `Tᵖˢ`.
pub fn brute_force_oracle(m: &BoolMatrix, variant: Variant) -> Result<usize, OracleError> {
    if m.rows().min(m.cols()) > ORACLE_MAX_MIN_DIM || m.rows().max(m.cols()) > ORACLE_MAX_DIM {
        return Err(OracleError { rows: m.rows(), cols: m.cols() });
    }
    for k in (1..=m.rows().min(m.cols())).rev() {
        if exists(m, variant, k) {
            return Ok(k);
        }
    }
    Ok(0)
}

fn sequences(n: usize, k: usize, ordered: bool) -> Vec<Vec<usize>> {
    if ordered {
        (0..n).permutations(k).collect()
    } else {
        (0..n).combinations(k).collect()
    }
}

fn exists(m: &BoolMatrix, variant: Variant, k: usize) -> bool {
    let ordered = matches!(variant, Variant::Permuted | Variant::PermutedSpecial);
    let row_seqs = sequences(m.rows(), k, ordered);
    let col_seqs = sequences(m.cols(), k, ordered);
    row_seqs.iter().any(|r| {
        col_seqs.iter().any(|c| {
            let block = extract(m, &Selection::new(r.clone(), c.clone())).expect("indices in range");
            variant.accepts(&block)
        })
    })
}
