//! Extension of a special `(k, ℓ)`-corner to a special triangular matrix.
//!
//! Place the corner in the upper right of a `k×k` lower triangular matrix
//! `L`. With `e = k − ℓ`, the corner occupies rows `0..ℓ` and columns `e..k`
//! of `L`. Row step `r` (1-based) fills row `k − r` of `L`: it needs a one at
//! corner column `ℓ − r` and zeros at the `r − 1` corner columns after it.
//! Column step `r` fills column `r − 1`: a one at corner row `r − 1` and zeros
//! at the `r − 1` corner rows before it. When `2ℓ ≥ k` the new rows meet the
//! new columns only below the diagonal, so both searches are independent and
//! each step succeeds on a fresh candidate with probability `p₀^{r−1} p₁`.

use rand::seq::SliceRandom;

use crate::gen::Seed;
use crate::matcore::{extract, is_special_corner, BoolMatrix, CornerShape, Selection};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Scan {
    /// Candidates in increasing index order.
    Ascending,
    /// Candidates in a uniformly random order drawn from the seed.
    Random(Seed),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ExtendOrder {
    /// All row steps, then all column steps.
    #[default]
    RowsThenColumns,
    /// Row step 1, column step 1, row step 2, …
    Alternating,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtendOptions {
    pub scan: Scan,
    pub order: ExtendOrder,
}

impl Default for ExtendOptions {
    fn default() -> Self {
        ExtendOptions { scan: Scan::Ascending, order: ExtendOrder::RowsThenColumns }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StepKind {
    Row(usize),
    Column(usize),
}

/// Candidates examined per step, including the accepted one. On failure the
/// last entry counts the whole exhausted pool.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ExtendTrace {
    pub tries_per_step: Vec<usize>,
    pub steps: Vec<StepKind>,
    pub success: bool,
}

impl ExtendTrace {
    /// Tries at row step `r` (1-based), if that step was reached.
    pub fn row_tries(&self, r: usize) -> Option<usize> {
        self.find(StepKind::Row(r))
    }

    pub fn column_tries(&self, r: usize) -> Option<usize> {
        self.find(StepKind::Column(r))
    }

    fn find(&self, kind: StepKind) -> Option<usize> {
        self.steps.iter().position(|&s| s == kind).map(|i| self.tries_per_step[i])
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExtendError {
    #[error("the witness does not select a special {0}-corner")]
    NotACorner(CornerShape),
    #[error("extension needs 2ℓ ≥ k, got {0}")]
    ThinCorner(CornerShape),
    #[error("no candidate left at step {} of the extension", .trace.tries_per_step.len())]
    NoExtension { trace: ExtendTrace },
}

/// [`ll2_extend_with`] using ascending scans, rows then columns.
pub fn ll2_extend(
    m: &BoolMatrix,
    corner_witness: &Selection,
    shape: CornerShape,
) -> Result<(Selection, ExtendTrace), ExtendError> {
    ll2_extend_with(m, corner_witness, shape, &ExtendOptions::default())
}

/// Extends a special `(k, ℓ)`-corner witness to a `k×k` witness for the
/// permuted special triangular variant. The result lists the corner rows
/// followed by the new rows, and the new columns followed by the corner
/// columns, so that the extracted block is lower triangular.
pub fn ll2_extend_with(
    m: &BoolMatrix,
    corner_witness: &Selection,
    shape: CornerShape,
    options: &ExtendOptions,
) -> Result<(Selection, ExtendTrace), ExtendError> {
    let (k, ell) = (shape.k(), shape.ell());
    let is_corner = corner_witness.size() == ell
        && corner_witness.is_square()
        && extract(m, corner_witness).is_ok_and(|b| is_special_corner(&b, k).unwrap_or(false));
    if !is_corner {
        return Err(ExtendError::NotACorner(shape));
    }
    if 2 * ell < k {
        return Err(ExtendError::ThinCorner(shape));
    }
    let e = k - ell;
    let mut trace = ExtendTrace::default();
    if e == 0 {
        trace.success = true;
        return Ok((corner_witness.clone(), trace));
    }

    let (r_seed, c_seed) = match &options.scan {
        Scan::Ascending => (None, None),
        Scan::Random(s) => (Some(s.child(0)), Some(s.child(1))),
    };
    let mut row_pool = Pool::new(m.rows(), &corner_witness.rows, r_seed);
    let mut col_pool = Pool::new(m.cols(), &corner_witness.cols, c_seed);
    let kc = &corner_witness.cols;
    let kr = &corner_witness.rows;

    let schedule: Vec<StepKind> = match options.order {
        ExtendOrder::RowsThenColumns => (1..=e).map(StepKind::Row).chain((1..=e).map(StepKind::Column)).collect(),
        ExtendOrder::Alternating => (1..=e).flat_map(|r| [StepKind::Row(r), StepKind::Column(r)]).collect(),
    };
    let mut new_rows = vec![0usize; e];
    let mut new_cols = vec![0usize; e];
    for step in schedule {
        let found = match step {
            StepKind::Row(r) => row_pool.take(|i| {
                m.is_one(i, kc[ell - r]) && kc[ell - r + 1..].iter().all(|&j| m.is_zero(i, j))
            }),
            StepKind::Column(r) => col_pool.take(|j| {
                m.is_one(kr[r - 1], j) && kr[..r - 1].iter().all(|&i| m.is_zero(i, j))
            }),
        };
        trace.steps.push(step);
        match found {
            (tries, Some(idx)) => {
                trace.tries_per_step.push(tries);
                match step {
                    StepKind::Row(r) => new_rows[e - r] = idx,
                    StepKind::Column(r) => new_cols[r - 1] = idx,
                }
            }
            (tries, None) => {
                trace.tries_per_step.push(tries);
                return Err(ExtendError::NoExtension { trace });
            }
        }
    }
    trace.success = true;
    let rows = kr.iter().copied().chain(new_rows).collect();
    let cols = new_cols.into_iter().chain(kc.iter().copied()).collect();
    Ok((Selection::new(rows, cols), trace))
}

/// Unused candidate indices, consumed in scan order.
struct Pool {
    order: Vec<usize>,
    next: usize,
}

impl Pool {
    fn new(len: usize, exclude: &[usize], seed: Option<Seed>) -> Self {
        let mut order: Vec<usize> = (0..len).filter(|i| !exclude.contains(i)).collect();
        if let Some(s) = seed {
            order.shuffle(&mut s.rng());
        }
        Pool { order, next: 0 }
    }

    /// Scans forward to the first accepted candidate. Rejected candidates
    /// are discarded. Returns the number examined and the accepted index.
    fn take(&mut self, accept: impl Fn(usize) -> bool) -> (usize, Option<usize>) {
        let mut tries = 0;
        while self.next < self.order.len() {
            let i = self.order[self.next];
            self.next += 1;
            tries += 1;
            if accept(i) {
                return (tries, Some(i));
            }
        }
        (tries, None)
    }
}
