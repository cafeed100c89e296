//! Reproducible sampling of i.i.d. random matrices and planted instances.

mod seed;

pub use seed::Seed;

use std::sync::Arc;

use rand::seq::index;
use rand::Rng;
use thiserror::Error;

use crate::matcore::{Alphabet, BoolMatrix, CornerShape, Selection, Symbol};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GenError {
    #[error("invalid distribution: {0}")]
    Distribution(String),
    #[error("{what} = {value} out of range for a {rows}x{cols} matrix")]
    OutOfRange { what: &'static str, value: usize, rows: usize, cols: usize },
}

/// Per-entry symbol probabilities, one per alphabet symbol.
#[derive(Clone, Debug, PartialEq)]
pub struct EntryDistribution {
    alphabet: Arc<Alphabet>,
    probs: Vec<f64>,
    cumulative: Vec<f64>,
}

impl EntryDistribution {
    const SUM_TOL: f64 = 1e-12;

    /// Validated distribution with `p₀ > 0` and `p₁ > 0`.
    pub fn new(alphabet: Arc<Alphabet>, probs: Vec<f64>) -> Result<Self, GenError> {
        let d = Self::degenerate(alphabet, probs)?;
        if d.p0() <= 0.0 || d.p1() <= 0.0 {
            return Err(GenError::Distribution(
                "zero and one must both have positive probability".into(),
            ));
        }
        Ok(d)
    }

    /// Like [`EntryDistribution::new`] but allows `p₀ = 0` or `p₁ = 0`.
    pub fn degenerate(alphabet: Arc<Alphabet>, probs: Vec<f64>) -> Result<Self, GenError> {
        if probs.len() != alphabet.len() {
            return Err(GenError::Distribution(format!(
                "{} probabilities for {} symbols",
                probs.len(),
                alphabet.len()
            )));
        }
        if let Some(p) = probs.iter().find(|p| !p.is_finite() || **p < 0.0) {
            return Err(GenError::Distribution(format!("invalid probability {p}")));
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > Self::SUM_TOL {
            return Err(GenError::Distribution(format!("probabilities sum to {sum}, not 1")));
        }
        let mut acc = 0.0;
        let cumulative = probs
            .iter()
            .map(|p| {
                acc += p;
                acc
            })
            .collect();
        Ok(EntryDistribution { alphabet, probs, cumulative })
    }

    pub fn binary(p0: f64) -> Result<Self, GenError> {
        Self::new(Arc::new(Alphabet::binary()), vec![p0, 1.0 - p0])
    }

    /// `{0, 1, v}` with `P(v) = 1 − p₀ − p₁`.
    pub fn superboolean(p0: f64, p1: f64) -> Result<Self, GenError> {
        Self::new(Arc::new(Alphabet::superboolean()), vec![p0, p1, 1.0 - p0 - p1])
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn p0(&self) -> f64 {
        self.probs[self.alphabet.zero() as usize]
    }

    pub fn p1(&self) -> f64 {
        self.probs[self.alphabet.one() as usize]
    }

    /// Inverse-CDF lookup over the symbol order.
    pub fn symbol_for(&self, u: f64) -> Symbol {
        let i = self.cumulative.partition_point(|&c| c <= u);
        if i < self.probs.len() {
            i as Symbol
        } else {
            // u landed in the rounding gap above the last cumulative value
            self.probs.iter().rposition(|&p| p > 0.0).unwrap_or(0) as Symbol
        }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Symbol {
        self.symbol_for(rng.random::<f64>())
    }
}

/// I.i.d. entries drawn row-major from the generator of `seed`.
pub fn sample_matrix(rows: usize, cols: usize, dist: &EntryDistribution, seed: &Seed) -> Result<BoolMatrix, GenError> {
    if rows == 0 || cols == 0 {
        return Err(GenError::OutOfRange { what: "dimension", value: 0, rows, cols });
    }
    let mut rng = seed.rng();
    let entries = (0..rows * cols).map(|_| dist.sample(&mut rng)).collect();
    Ok(BoolMatrix::new(rows, cols, entries, dist.alphabet.clone()).expect("sampled matrix is well formed"))
}

fn pick(rows: usize, cols: usize, size: usize, seed: &Seed) -> Selection {
    let mut rng = seed.rng();
    let r = index::sample(&mut rng, rows, size).into_vec();
    let c = index::sample(&mut rng, cols, size).into_vec();
    Selection::new(r, c)
}

/// Samples a background matrix and forces a special `(k, ℓ)`-corner onto
/// `ℓ` random rows and columns (in random order). Unforced cells keep their
/// background values.
pub fn plant_special_corner(
    rows: usize,
    cols: usize,
    shape: CornerShape,
    dist: &EntryDistribution,
    seed: &Seed,
) -> Result<(BoolMatrix, Selection), GenError> {
    let ell = shape.ell();
    if ell > rows.min(cols) {
        return Err(GenError::OutOfRange { what: "ell", value: ell, rows, cols });
    }
    let mut m = sample_matrix(rows, cols, dist, &seed.child(0))?;
    let sel = pick(rows, cols, ell, &seed.child(1));
    let (zero, one) = (m.alphabet().zero(), m.alphabet().one());
    for (a, &i) in sel.rows.iter().enumerate() {
        for (b, &j) in sel.cols.iter().enumerate() {
            if shape.forces_zero(a, b) {
                m.set(i, j, zero);
            } else if shape.forces_one(a, b) {
                m.set(i, j, one);
            }
        }
    }
    Ok((m, sel))
}

/// Plants a `k×k` permuted special triangular submatrix.
pub fn plant_special_triangular(
    rows: usize,
    cols: usize,
    k: usize,
    dist: &EntryDistribution,
    seed: &Seed,
) -> Result<(BoolMatrix, Selection), GenError> {
    let shape = CornerShape::triangle(k)
        .map_err(|_| GenError::OutOfRange { what: "k", value: k, rows, cols })?;
    if k > rows.min(cols) {
        return Err(GenError::OutOfRange { what: "k", value: k, rows, cols });
    }
    plant_special_corner(rows, cols, shape, dist, seed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matcore::{extract, is_all_zero, is_special_corner, is_special_triangular};

    fn degenerate(p0: f64) -> EntryDistribution {
        EntryDistribution::degenerate(Arc::new(Alphabet::binary()), vec![p0, 1.0 - p0]).unwrap()
    }

    #[test]
    fn distribution_validation() {
        assert!(EntryDistribution::binary(0.0).is_err());
        assert!(EntryDistribution::binary(1.0).is_err());
        assert!(EntryDistribution::binary(0.3).is_ok());
        assert!(EntryDistribution::superboolean(0.5, 0.6).is_err());
        assert!(EntryDistribution::new(Arc::new(Alphabet::binary()), vec![0.5, 0.4]).is_err());
        assert!(EntryDistribution::new(Arc::new(Alphabet::binary()), vec![0.5]).is_err());
        assert!(degenerate(1.0).p1() == 0.0);
    }

    #[test]
    fn inverse_cdf() {
        let d = EntryDistribution::superboolean(0.25, 0.5).unwrap();
        assert_eq!(d.symbol_for(0.0), 0);
        assert_eq!(d.symbol_for(0.2499), 0);
        assert_eq!(d.symbol_for(0.25), 1);
        assert_eq!(d.symbol_for(0.7499), 1);
        assert_eq!(d.symbol_for(0.75), 2);
        assert_eq!(d.symbol_for(0.999_999), 2);
        assert_eq!(degenerate(1.0).symbol_for(0.999_999_999), 0);
    }

    #[test]
    fn degenerate_fills() {
        let z = sample_matrix(4, 5, &degenerate(1.0), &Seed::new(1)).unwrap();
        assert!(is_all_zero(&z));
        let o = sample_matrix(4, 5, &degenerate(0.0), &Seed::new(1)).unwrap();
        assert_eq!(o, BoolMatrix::ones(4, 5));
    }

    #[test]
    fn zero_frequency_at_half() {
        let d = EntryDistribution::binary(0.5).unwrap();
        let m = sample_matrix(1000, 1000, &d, &Seed::new(2024)).unwrap();
        let zeros = m.entries().iter().filter(|&&s| s == 0).count();
        let freq = zeros as f64 / 1e6;
        assert!((freq - 0.5).abs() < 0.002, "{freq}");
    }

    #[test]
    fn deterministic() {
        let d = EntryDistribution::superboolean(0.4, 0.4).unwrap();
        let a = sample_matrix(7, 9, &d, &Seed::with_stream(3, &[1, 4])).unwrap();
        let b = sample_matrix(7, 9, &d, &Seed::with_stream(3, &[1, 4])).unwrap();
        let c = sample_matrix(7, 9, &d, &Seed::with_stream(3, &[1, 5])).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn planted_triangle_verifies() {
        let d = EntryDistribution::binary(0.5).unwrap();
        for s in 0..100 {
            let (m, sel) = plant_special_triangular(12, 15, 6, &d, &Seed::new(s)).unwrap();
            assert_eq!(sel.size(), 6);
            assert!(is_special_triangular(&extract(&m, &sel).unwrap()));
        }
        let (m, sel) = plant_special_triangular(5, 5, 5, &d, &Seed::new(9)).unwrap();
        let mut rows = sel.rows.clone();
        rows.sort_unstable();
        assert_eq!(rows, vec![0, 1, 2, 3, 4]);
        assert!(is_special_triangular(&extract(&m, &sel).unwrap()));
        assert!(plant_special_triangular(5, 4, 5, &d, &Seed::new(9)).is_err());
        assert!(plant_special_triangular(5, 4, 0, &d, &Seed::new(9)).is_err());
    }

    #[test]
    fn planted_corner_verifies() {
        let d = EntryDistribution::binary(0.5).unwrap();
        let shape = CornerShape::new(9, 6).unwrap();
        for s in 0..50 {
            let (m, sel) = plant_special_corner(20, 20, shape, &d, &Seed::new(s)).unwrap();
            assert!(is_special_corner(&extract(&m, &sel).unwrap(), 9).unwrap());
        }
        let half = CornerShape::new(8, 4).unwrap();
        let (m, sel) = plant_special_corner(10, 10, half, &d, &Seed::new(1)).unwrap();
        assert!(is_all_zero(&extract(&m, &sel).unwrap()));
        // (k, k) plants the same triangle as plant_special_triangular
        let full = CornerShape::triangle(4).unwrap();
        assert_eq!(
            plant_special_corner(8, 8, full, &d, &Seed::new(3)).unwrap(),
            plant_special_triangular(8, 8, 4, &d, &Seed::new(3)).unwrap()
        );
    }
}
