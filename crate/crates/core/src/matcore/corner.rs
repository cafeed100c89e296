//! `(k, ℓ)`-corner matrices: the upper-right `ℓ×ℓ` block of a `k×k` lower
//! triangular matrix.
//!
//! In 1-based coordinates an `ℓ×ℓ` matrix `a` is a corner when `a[i][j] = 0`
//! for `i < j + k − ℓ`, and a special corner when additionally
//! `a[i][j] = 1` for `i = j + k − ℓ`. Everything else is unconstrained.

use std::fmt;

use super::{BoolMatrix, MatrixError, Selection};

/// The pair `(k, ℓ)` with `1 ≤ ℓ ≤ k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CornerShape {
    k: usize,
    ell: usize,
}

impl CornerShape {
    pub fn new(k: usize, ell: usize) -> Result<Self, MatrixError> {
        if ell == 0 || ell > k {
            return Err(MatrixError::CornerShape { k, ell });
        }
        Ok(CornerShape { k, ell })
    }

    /// The full `k×k` triangle.
    pub fn triangle(k: usize) -> Result<Self, MatrixError> {
        Self::new(k, k)
    }

    pub fn k(self) -> usize {
        self.k
    }

    pub fn ell(self) -> usize {
        self.ell
    }

    /// `k − ℓ`, the diagonal offset of the corner.
    pub fn offset(self) -> usize {
        self.k - self.ell
    }

    /// Whether the 0-based cell `(i, j)` of the corner is forced to zero.
    #[inline]
    pub fn forces_zero(self, i: usize, j: usize) -> bool {
        i < j + self.offset()
    }

    /// Whether the 0-based cell `(i, j)` of a special corner is forced to one.
    #[inline]
    pub fn forces_one(self, i: usize, j: usize) -> bool {
        i == j + self.offset()
    }

    /// Number of corner columns that carry a forced one, `max(0, 2ℓ − k)`.
    pub fn diagonal_len(self) -> usize {
        (2 * self.ell).saturating_sub(self.k)
    }
}

impl fmt::Display for CornerShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.k, self.ell)
    }
}

/// Entries forced to zero: `ℓ²` when `ℓ ≤ k/2`, otherwise
/// `(4kℓ − k² − 2ℓ² + k − 2ℓ)/2`.
pub fn nu0(shape: CornerShape) -> u64 {
    let (k, l) = (shape.k as i64, shape.ell as i64);
    if 2 * l <= k {
        (l * l) as u64
    } else {
        ((4 * k * l - k * k - 2 * l * l + k - 2 * l) / 2) as u64
    }
}

/// Entries forced to one in a special corner: `0` when `ℓ ≤ k/2`, else `2ℓ − k`.
pub fn nu1(shape: CornerShape) -> u64 {
    shape.diagonal_len() as u64
}

/// All forced entries of a special corner.
pub fn nu(shape: CornerShape) -> u64 {
    nu0(shape) + nu1(shape)
}

/// Plain corners only constrain zeros; special corners also fix the offset diagonal.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CornerKind {
    Plain,
    Special,
}

/// Tests whether the square matrix `m` of side `ℓ` is a (special) `(k, ℓ)`-corner.
/// Non-square input is never a corner.
pub fn is_corner(m: &BoolMatrix, k: usize, kind: CornerKind) -> Result<bool, MatrixError> {
    if !m.is_square() {
        return Ok(false);
    }
    let shape = CornerShape::new(k, m.rows())?;
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            if shape.forces_zero(i, j) {
                if !m.is_zero(i, j) {
                    return Ok(false);
                }
            } else if kind == CornerKind::Special && shape.forces_one(i, j) && !m.is_one(i, j) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

pub fn is_special_corner(m: &BoolMatrix, k: usize) -> Result<bool, MatrixError> {
    is_corner(m, k, CornerKind::Special)
}

/// The three deletions that shrink a special corner while keeping it special.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CornerMove {
    /// First row and last column: `(k, ℓ) → (k − 2, ℓ − 1)`.
    FirstRowLastCol,
    /// Last row and last column: `(k, ℓ) → (k − 1, ℓ − 1)`.
    LastRowLastCol,
    /// Last row and first column: `(k, ℓ) → (k, ℓ − 1)`.
    LastRowFirstCol,
}

impl CornerMove {
    pub fn k_drop(self) -> usize {
        match self {
            CornerMove::FirstRowLastCol => 2,
            CornerMove::LastRowLastCol => 1,
            CornerMove::LastRowFirstCol => 0,
        }
    }

    fn apply(self, sel: &mut Selection) {
        match self {
            CornerMove::FirstRowLastCol => {
                sel.rows.remove(0);
                sel.cols.pop();
            }
            CornerMove::LastRowLastCol => {
                sel.rows.pop();
                sel.cols.pop();
            }
            CornerMove::LastRowFirstCol => {
                sel.rows.pop();
                sel.cols.remove(0);
            }
        }
    }
}

/// Deterministic move schedule from `from` to `to`. Each step removes one
/// from `ℓ`; the `k` decrement is chosen to keep the remainder reachable,
/// preferring the `(k − 1, ℓ − 1)` move.
pub fn ll0_schedule(from: CornerShape, to: CornerShape) -> Result<Vec<CornerMove>, MatrixError> {
    let ell_steps = from.ell.checked_sub(to.ell);
    let k_drop = from.k.checked_sub(to.k);
    let (Some(ell_steps), Some(k_drop)) = (ell_steps, k_drop) else {
        return Err(MatrixError::Reduction { from, to });
    };
    if k_drop > 2 * ell_steps {
        return Err(MatrixError::Reduction { from, to });
    }
    let mut moves = Vec::with_capacity(ell_steps);
    let (mut k, mut ell, mut drop_left) = (from.k, from.ell, k_drop);
    for step in 0..ell_steps {
        let remaining = ell_steps - step - 1;
        let mv = [CornerMove::LastRowLastCol, CornerMove::FirstRowLastCol, CornerMove::LastRowFirstCol]
            .into_iter()
            .find(|mv| {
                let d = mv.k_drop();
                d <= drop_left && drop_left - d <= 2 * remaining && k - d >= ell - 1
            })
            .ok_or(MatrixError::Reduction { from, to })?;
        k -= mv.k_drop();
        ell -= 1;
        drop_left -= mv.k_drop();
        moves.push(mv);
    }
    debug_assert_eq!((k, ell), (to.k, to.ell));
    Ok(moves)
}

/// Shrinks a witness of a special `from`-corner of `m` to a witness of a
/// special `to`-corner by deleting rows and columns. Requires
/// `2(ℓ₁ − ℓ₂) ≥ k₁ − k₂ ≥ 0`.
pub fn ll0_reduce(
    m: &BoolMatrix,
    sel: &Selection,
    from: CornerShape,
    to: CornerShape,
) -> Result<Selection, MatrixError> {
    if sel.rows.len() != from.ell || sel.cols.len() != from.ell {
        return Err(MatrixError::NotACorner(from));
    }
    let block = super::extract(m, sel)?;
    if !is_special_corner(&block, from.k)? {
        return Err(MatrixError::NotACorner(from));
    }
    let mut out = sel.clone();
    for mv in ll0_schedule(from, to)? {
        mv.apply(&mut out);
    }
    Ok(out)
}
