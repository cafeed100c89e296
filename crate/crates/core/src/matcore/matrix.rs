use std::fmt;
use std::sync::Arc;

use super::{Alphabet, MatrixError, Symbol};

/// Dense rectangular matrix over an [`Alphabet`], stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BoolMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Symbol>,
    alphabet: Arc<Alphabet>,
}

impl BoolMatrix {
    pub fn new(
        rows: usize,
        cols: usize,
        entries: Vec<Symbol>,
        alphabet: Arc<Alphabet>,
    ) -> Result<Self, MatrixError> {
        if rows == 0 || cols == 0 {
            return Err(MatrixError::EmptyDimension { rows, cols });
        }
        if entries.len() != rows * cols {
            return Err(MatrixError::EntryCount {
                expected: rows * cols,
                found: entries.len(),
            });
        }
        if let Some(&s) = entries.iter().find(|&&s| s as usize >= alphabet.len()) {
            return Err(MatrixError::UnknownSymbol(s));
        }
        Ok(BoolMatrix {
            rows,
            cols,
            entries,
            alphabet,
        })
    }

    /// Builds a binary matrix from 0/1 rows. Panics on ragged input or values
    /// outside `{0, 1}`; intended for fixtures.
    pub fn from_bits<R: AsRef<[u8]>>(rows: &[R]) -> Self {
        Self::from_symbols(Arc::new(Alphabet::binary()), rows)
    }

    /// Builds a matrix from rows of symbol indices. Panics on invalid input.
    pub fn from_symbols<R: AsRef<[u8]>>(alphabet: Arc<Alphabet>, rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        assert!(rows.iter().all(|r| r.as_ref().len() == cols), "ragged rows");
        let entries = rows.iter().flat_map(|r| r.as_ref().iter().copied()).collect();
        BoolMatrix::new(rows.len(), cols, entries, alphabet).expect("invalid fixture matrix")
    }

    pub fn filled(rows: usize, cols: usize, symbol: Symbol, alphabet: Arc<Alphabet>) -> Self {
        BoolMatrix::new(rows, cols, vec![symbol; rows * cols], alphabet).expect("invalid fill")
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        let a = Alphabet::binary();
        Self::filled(rows, cols, a.zero(), Arc::new(a))
    }

    pub fn ones(rows: usize, cols: usize) -> Self {
        let a = Alphabet::binary();
        Self::filled(rows, cols, a.one(), Arc::new(a))
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, m.alphabet.one());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn alphabet_arc(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Symbol {
        self.entries[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, s: Symbol) {
        assert!((s as usize) < self.alphabet.len(), "symbol outside alphabet");
        self.entries[i * self.cols + j] = s;
    }

    #[inline]
    pub fn is_zero(&self, i: usize, j: usize) -> bool {
        self.get(i, j) == self.alphabet.zero()
    }

    #[inline]
    pub fn is_one(&self, i: usize, j: usize) -> bool {
        self.get(i, j) == self.alphabet.one()
    }

    pub fn row(&self, i: usize) -> &[Symbol] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[Symbol] {
        &self.entries
    }

    pub fn transpose(&self) -> BoolMatrix {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.get(i, j));
            }
        }
        BoolMatrix {
            rows: self.cols,
            cols: self.rows,
            entries,
            alphabet: self.alphabet.clone(),
        }
    }

    /// Returns the matrix `(x[row_perm[r], col_perm[s]])`; both arguments must
    /// be permutations of the respective index ranges.
    pub fn permuted(&self, row_perm: &[usize], col_perm: &[usize]) -> BoolMatrix {
        assert_eq!(row_perm.len(), self.rows);
        assert_eq!(col_perm.len(), self.cols);
        let sel = Selection::new(row_perm.to_vec(), col_perm.to_vec());
        extract(self, &sel).expect("permutation out of range")
    }

    /// Appends a row of symbols at the bottom.
    pub fn with_row(&self, row: &[Symbol]) -> BoolMatrix {
        assert_eq!(row.len(), self.cols);
        let mut entries = self.entries.clone();
        entries.extend_from_slice(row);
        BoolMatrix::new(self.rows + 1, self.cols, entries, self.alphabet.clone())
            .expect("invalid row")
    }

    /// Appends a column of symbols at the right.
    pub fn with_col(&self, col: &[Symbol]) -> BoolMatrix {
        assert_eq!(col.len(), self.rows);
        let mut entries = Vec::with_capacity(self.rows * (self.cols + 1));
        for (i, &c) in col.iter().enumerate() {
            entries.extend_from_slice(self.row(i));
            entries.push(c);
        }
        BoolMatrix::new(self.rows, self.cols + 1, entries, self.alphabet.clone())
            .expect("invalid column")
    }
}

impl fmt::Debug for BoolMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BoolMatrix {}x{} over {}", self.rows, self.cols, self.alphabet)?;
        for i in 0..self.rows {
            let line: Vec<&str> = self.row(i).iter().map(|&s| self.alphabet.token(s)).collect();
            writeln!(f, "  {}", line.join(" "))?;
        }
        Ok(())
    }
}

/// Ordered sequences of distinct row and column indices. Strictly
/// increasing sequences denote an ordinary submatrix; anything else is a
/// permuted submatrix.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Selection {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

impl Selection {
    pub fn new(rows: Vec<usize>, cols: Vec<usize>) -> Self {
        Selection { rows, cols }
    }

    pub fn empty() -> Self {
        Selection::default()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty() && self.cols.is_empty()
    }

    pub fn is_square(&self) -> bool {
        self.rows.len() == self.cols.len()
    }

    /// Side length of a square selection.
    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn is_order_preserving(&self) -> bool {
        self.rows.windows(2).all(|w| w[0] < w[1]) && self.cols.windows(2).all(|w| w[0] < w[1])
    }

    /// Checks distinctness within each sequence and bounds against `m`.
    pub fn check(&self, m: &BoolMatrix) -> Result<(), MatrixError> {
        check_seq(&self.rows, m.rows(), "row")?;
        check_seq(&self.cols, m.cols(), "column")
    }

    /// Maps a witness for `m` onto one for `m.transpose()` (and back). Both
    /// sequences are swapped and reversed, which sends lower triangular to
    /// lower triangular with the diagonal preserved.
    pub fn transposed(&self) -> Selection {
        let mut rows = self.cols.clone();
        let mut cols = self.rows.clone();
        rows.reverse();
        cols.reverse();
        Selection { rows, cols }
    }
}

fn check_seq(seq: &[usize], bound: usize, what: &'static str) -> Result<(), MatrixError> {
    let mut seen = vec![false; bound];
    for &i in seq {
        if i >= bound {
            return Err(MatrixError::IndexOutOfBounds { what, index: i, bound });
        }
        if std::mem::replace(&mut seen[i], true) {
            return Err(MatrixError::RepeatedIndex { what, index: i });
        }
    }
    Ok(())
}

/// The (permuted) submatrix `(x[rows[r], cols[s]])`.
pub fn extract(m: &BoolMatrix, sel: &Selection) -> Result<BoolMatrix, MatrixError> {
    sel.check(m)?;
    let mut entries = Vec::with_capacity(sel.rows.len() * sel.cols.len());
    for &i in &sel.rows {
        for &j in &sel.cols {
            entries.push(m.get(i, j));
        }
    }
    BoolMatrix::new(sel.rows.len(), sel.cols.len(), entries, m.alphabet.clone())
}

/// Square with the zero symbol at every `i < j`. Every 1×1 matrix qualifies.
pub fn is_triangular(m: &BoolMatrix) -> bool {
    m.is_square() && (0..m.rows()).all(|i| (i + 1..m.cols()).all(|j| m.is_zero(i, j)))
}

/// Triangular with the one symbol on the whole diagonal. Extra symbols such
/// as `1^ν` do not count as one.
pub fn is_special_triangular(m: &BoolMatrix) -> bool {
    is_triangular(m) && (0..m.rows()).all(|i| m.is_one(i, i))
}

pub fn is_all_zero(m: &BoolMatrix) -> bool {
    m.entries.iter().all(|&s| s == m.alphabet.zero())
}
