//! Fixed-width column masks stored as `u64` words.

use crate::matcore::BoolMatrix;

#[inline]
pub(crate) fn words_for(bits: usize) -> usize {
    bits.div_ceil(64)
}

/// Per-row masks of zero-symbol and one-symbol columns.
pub(crate) struct RowMasks {
    pub rows: usize,
    pub cols: usize,
    pub words: usize,
    zero: Vec<u64>,
    one: Vec<u64>,
}

impl RowMasks {
    pub fn new(m: &BoolMatrix) -> Self {
        let words = words_for(m.cols());
        let mut zero = vec![0u64; m.rows() * words];
        let mut one = vec![0u64; m.rows() * words];
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                let bit = 1u64 << (j % 64);
                if m.is_zero(i, j) {
                    zero[i * words + j / 64] |= bit;
                } else if m.is_one(i, j) {
                    one[i * words + j / 64] |= bit;
                }
            }
        }
        RowMasks { rows: m.rows(), cols: m.cols(), words, zero, one }
    }

    #[inline]
    pub fn zero(&self, r: usize) -> &[u64] {
        &self.zero[r * self.words..(r + 1) * self.words]
    }

    #[inline]
    pub fn one(&self, r: usize) -> &[u64] {
        &self.one[r * self.words..(r + 1) * self.words]
    }

    pub fn full(&self) -> Vec<u64> {
        full(self.cols)
    }
}

pub(crate) fn full(bits: usize) -> Vec<u64> {
    let mut v = vec![u64::MAX; words_for(bits)];
    if !bits.is_multiple_of(64) {
        *v.last_mut().unwrap() = (1u64 << (bits % 64)) - 1;
    }
    v
}

#[inline]
pub(crate) fn count(a: &[u64]) -> u32 {
    a.iter().map(|w| w.count_ones()).sum()
}

#[inline]
pub(crate) fn and_count(a: &[u64], b: &[u64]) -> u32 {
    a.iter().zip(b).map(|(x, y)| (x & y).count_ones()).sum()
}

#[inline]
pub(crate) fn intersects(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).any(|(x, y)| x & y != 0)
}

#[inline]
pub(crate) fn and_into(dst: &mut [u64], a: &[u64], b: &[u64]) {
    for ((d, x), y) in dst.iter_mut().zip(a).zip(b) {
        *d = x & y;
    }
}

/// Lowest set bit of `a & b`.
#[inline]
pub(crate) fn first_and(a: &[u64], b: &[u64]) -> Option<usize> {
    a.iter()
        .zip(b)
        .enumerate()
        .find_map(|(w, (x, y))| {
            let v = x & y;
            (v != 0).then(|| w * 64 + v.trailing_zeros() as usize)
        })
}

#[inline]
pub(crate) fn first(a: &[u64]) -> Option<usize> {
    a.iter()
        .enumerate()
        .find_map(|(w, &x)| (x != 0).then(|| w * 64 + x.trailing_zeros() as usize))
}

/// Clears every bit at index `<= j`.
#[inline]
pub(crate) fn clear_through(a: &mut [u64], j: usize) {
    let w = j / 64;
    for x in &mut a[..w] {
        *x = 0;
    }
    let keep = if j % 64 == 63 { 0 } else { u64::MAX << (j % 64 + 1) };
    a[w] &= keep;
}

#[inline]
pub(crate) fn contains(a: &[u64], j: usize) -> bool {
    a[j / 64] >> (j % 64) & 1 == 1
}

#[inline]
pub(crate) fn insert(a: &mut [u64], j: usize) {
    a[j / 64] |= 1 << (j % 64);
}

#[inline]
pub(crate) fn remove(a: &mut [u64], j: usize) {
    a[j / 64] &= !(1 << (j % 64));
}

pub(crate) fn iter(a: &[u64]) -> impl Iterator<Item = usize> + '_ {
    a.iter().enumerate().flat_map(|(w, &x)| {
        let mut x = x;
        std::iter::from_fn(move || {
            (x != 0).then(|| {
                let b = x.trailing_zeros() as usize;
                x &= x - 1;
                w * 64 + b
            })
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn masks_and_ops() {
        let f = full(70);
        assert_eq!(count(&f), 70);
        let mut a = f.clone();
        clear_through(&mut a, 63);
        assert_eq!(first(&a), Some(64));
        assert_eq!(count(&a), 6);
        clear_through(&mut a, 69);
        assert_eq!(first(&a), None);

        let mut b = vec![0u64; 2];
        insert(&mut b, 3);
        insert(&mut b, 65);
        assert!(contains(&b, 65));
        assert_eq!(iter(&b).collect::<Vec<_>>(), vec![3, 65]);
        assert_eq!(first_and(&b, &f), Some(3));
        remove(&mut b, 3);
        assert_eq!(and_count(&b, &f), 1);
        assert!(intersects(&b, &f));
    }

    #[test]
    fn row_masks_skip_extra_symbols() {
        let m = BoolMatrix::from_symbols(
            std::sync::Arc::new(crate::matcore::Alphabet::superboolean()),
            &[[0, 1, 2], [2, 2, 0]],
        );
        let g = RowMasks::new(&m);
        assert_eq!(g.zero(0), &[0b001]);
        assert_eq!(g.one(0), &[0b010]);
        assert_eq!(g.zero(1), &[0b100]);
        assert_eq!(g.one(1), &[0]);
    }
}
