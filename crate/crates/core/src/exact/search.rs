//! Depth-first branch and bound over row sequences.
//!
//! A witness is grown pair by pair. Adding pair `b` with row `i_b` and column
//! `j_b` requires `x[i_a][j_b] = 0` for every earlier row `i_a`, so the set of
//! usable columns is the intersection `C` of the zero masks of the rows
//! chosen so far. Per variant:
//!
//! * `Tᵖˢ`: `j_b` is any column of `C ∩ ones(i_b)`. It can never collide with
//!   a later column because later columns are zeros of `i_b`.
//! * `Tᵖ`: columns are assigned lazily. The masks `C_1 ⊇ C_2 ⊇ …` are nested,
//!   so distinct representatives exist iff `|C_b| ≥ k − b + 1` for all `b`,
//!   and the last row of the witness is unconstrained.
//! * `T`, `Tˢ`: rows strictly increase; the smallest admissible column is
//!   always the best choice for `j_b`, so columns are assigned greedily.
//! * `S`: any row set whose common zero mask is at least as large.
//!
//! For the permuted variants the state after choosing a row set depends only
//! on that set (plus, for `Tᵖ`, on the running minimum of `|C_b| + b − 1`),
//! which is memoised.

use std::borrow::Cow;
use std::collections::{HashMap, HashSet};
use std::time::Instant;

use super::{SolveBudget, SolveResult, Variant};
use crate::bits::{self, RowMasks};
use crate::matcore::{BoolMatrix, Selection};

const MEMO_LIMIT: usize = 1 << 22;

/// Configurable exact solver.
#[derive(Clone, Copy, Debug)]
pub struct Solver {
    variant: Variant,
    budget: SolveBudget,
    stop_at: Option<usize>,
}

impl Solver {
    pub fn new(variant: Variant) -> Self {
        Solver { variant, budget: SolveBudget::unlimited(), stop_at: None }
    }

    pub fn budget(mut self, budget: SolveBudget) -> Self {
        self.budget = budget;
        self
    }

    /// Stop as soon as a witness of this size is found. A natural choice is
    /// a certified size cap, beyond which larger values are improbable.
    /// Stopping early leaves `optimal` unset unless the value is trivially
    /// maximal.
    pub fn stop_at(mut self, target: Option<usize>) -> Self {
        self.stop_at = target;
        self
    }

    pub fn solve(&self, m: &BoolMatrix) -> SolveResult {
        let start = Instant::now();
        let transpose = !self.variant.order_preserving() && m.rows() > m.cols();
        let work: Cow<BoolMatrix> = if transpose { Cow::Owned(m.transpose()) } else { Cow::Borrowed(m) };
        let masks = RowMasks::new(&work);
        let mut s = Search::new(&masks, self, start);
        match self.variant {
            Variant::Triangular => s.triangular(0, 0),
            Variant::Special => s.special(0, 0),
            Variant::Permuted => s.permuted(0, masks.cols),
            Variant::PermutedSpecial => s.permuted_special(0),
            Variant::ZeroSquare => s.zero_square(0, 0),
        }
        let mut witness = s.best_sel;
        if transpose {
            witness = match self.variant {
                Variant::ZeroSquare => Selection::new(witness.cols, witness.rows),
                _ => witness.transposed(),
            };
        }
        let trivially_max = s.best == m.rows().min(m.cols());
        SolveResult {
            value: s.best,
            witness,
            optimal: !s.halted || trivially_max,
            nodes_expanded: s.nodes,
            elapsed_millis: start.elapsed().as_millis() as u64,
        }
    }
}

/// Largest `u ≤ cap` such that `u` further pairs fit, given the zero counts
/// `z` (sorted descending) of candidate rows: the row placed `t`-th needs
/// at least `u − t` surviving columns. With `spare`, the final row comes
/// from outside `z` and has no requirement.
fn chain_bound(z: &[u32], spare: bool, cap: usize) -> usize {
    let mut best = usize::from(spare);
    let mut run_min = usize::MAX;
    for (t, &zt) in z.iter().enumerate() {
        let t = t + 1;
        run_min = run_min.min(zt as usize + t);
        let u = t + usize::from(spare);
        if u > cap || run_min < u {
            break;
        }
        best = u;
    }
    best.min(cap)
}

fn sort_candidates(c: &mut [(u32, usize)]) {
    c.sort_unstable_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
}

struct Search<'a> {
    g: &'a RowMasks,
    max_nodes: Option<u64>,
    deadline: Option<Instant>,
    stop_at: Option<usize>,
    nodes: u64,
    halted: bool,
    best: usize,
    best_sel: Selection,
    rows: Vec<usize>,
    cols: Vec<usize>,
    /// `stack[d]` is the usable column mask after `d` rows.
    stack: Vec<Vec<u64>>,
    rowset: Vec<u64>,
    seen: HashSet<Vec<u64>>,
    seen_min: HashMap<Vec<u64>, usize>,
}

impl<'a> Search<'a> {
    fn new(g: &'a RowMasks, cfg: &Solver, start: Instant) -> Self {
        let mut stack = vec![vec![0u64; g.words]; g.rows + 2];
        stack[0] = g.full();
        Search {
            g,
            max_nodes: cfg.budget.max_nodes,
            deadline: cfg.budget.max_millis.map(|ms| start + std::time::Duration::from_millis(ms)),
            stop_at: cfg.stop_at,
            nodes: 0,
            halted: false,
            best: 0,
            best_sel: Selection::empty(),
            rows: Vec::new(),
            cols: Vec::new(),
            stack,
            rowset: vec![0u64; bits::words_for(g.rows)],
            seen: HashSet::new(),
            seen_min: HashMap::new(),
        }
    }

    fn tick(&mut self) -> bool {
        if self.halted {
            return false;
        }
        if self.max_nodes.is_some_and(|max| self.nodes >= max) {
            self.halted = true;
            return false;
        }
        self.nodes += 1;
        if self.nodes.is_multiple_of(1024) && self.deadline.is_some_and(|d| Instant::now() >= d) {
            self.halted = true;
            return false;
        }
        true
    }

    fn record(&mut self, sel: Selection) {
        debug_assert!(sel.size() > self.best);
        self.best = sel.size();
        self.best_sel = sel;
        if self.stop_at.is_some_and(|t| self.best >= t) {
            self.halted = true;
        }
    }

    fn record_current(&mut self) {
        if self.rows.len() > self.best {
            self.record(Selection::new(self.rows.clone(), self.cols.clone()));
        }
    }

    fn push(&mut self, r: usize, j: Option<usize>) {
        self.rows.push(r);
        if let Some(j) = j {
            self.cols.push(j);
        }
        bits::insert(&mut self.rowset, r);
    }

    fn pop(&mut self, with_col: bool) {
        let r = self.rows.pop().unwrap();
        if with_col {
            self.cols.pop();
        }
        bits::remove(&mut self.rowset, r);
    }

    fn permuted_special(&mut self, d: usize) {
        if !self.tick() {
            return;
        }
        self.record_current();
        if self.halted || (d > 0 && self.seen.len() < MEMO_LIMIT && !self.seen.insert(self.rowset.clone())) {
            return;
        }
        let g = self.g;
        let c = &self.stack[d];
        let mut cands: Vec<(u32, usize)> = (0..g.rows)
            .filter(|&r| !bits::contains(&self.rowset, r) && bits::intersects(c, g.one(r)))
            .map(|r| (bits::and_count(c, g.zero(r)), r))
            .collect();
        sort_candidates(&mut cands);
        let z: Vec<u32> = cands.iter().map(|x| x.0).collect();
        if d + chain_bound(&z, false, bits::count(c) as usize) <= self.best {
            return;
        }
        for (z, r) in cands {
            if d + 1 + z as usize <= self.best || self.halted {
                break;
            }
            let (lo, hi) = self.stack.split_at_mut(d + 1);
            let j = bits::first_and(&lo[d], g.one(r)).unwrap();
            bits::and_into(&mut hi[0], &lo[d], g.zero(r));
            self.push(r, Some(j));
            self.permuted_special(d + 1);
            self.pop(true);
        }
    }

    /// `cm` is `min_b (|C_b| + b − 1)` over the masks so far.
    fn permuted(&mut self, d: usize, cm: usize) {
        if !self.tick() {
            return;
        }
        let g = self.g;
        let k = cm.min(d + 1).min(g.rows);
        if k > self.best {
            let sel = self.permuted_witness(k);
            self.record(sel);
        }
        if self.halted {
            return;
        }
        if d > 0 && self.seen_min.len() < MEMO_LIMIT {
            match self.seen_min.get(&self.rowset) {
                Some(&prev) if prev >= cm => return,
                _ => {
                    self.seen_min.insert(self.rowset.clone(), cm);
                }
            }
        }
        let c = &self.stack[d];
        let mut cands: Vec<(u32, usize)> = (0..g.rows)
            .filter(|&r| !bits::contains(&self.rowset, r))
            .map(|r| (bits::and_count(c, g.zero(r)), r))
            .filter(|x| x.0 > 0)
            .collect();
        sort_candidates(&mut cands);
        let z: Vec<u32> = cands.iter().map(|x| x.0).collect();
        let cap = (bits::count(c) as usize).min(g.rows - d);
        if cm.min(d + chain_bound(&z, true, cap)) <= self.best {
            return;
        }
        for (z, r) in cands {
            let child_cm = cm.min(d + 1 + z as usize);
            if child_cm <= self.best || self.halted {
                break;
            }
            let (lo, hi) = self.stack.split_at_mut(d + 1);
            bits::and_into(&mut hi[0], &lo[d], g.zero(r));
            self.push(r, None);
            self.permuted(d + 1, child_cm);
            self.pop(false);
        }
    }

    /// First `k − 1` chosen rows plus one more, columns by back-substitution
    /// through the nested masks.
    fn permuted_witness(&self, k: usize) -> Selection {
        let d = self.rows.len();
        let mut rows: Vec<usize> = self.rows[..(k - 1).min(d)].to_vec();
        if k <= d {
            rows.push(self.rows[k - 1]);
        } else {
            let spare = (0..self.g.rows).find(|&r| !bits::contains(&self.rowset, r)).unwrap();
            rows.push(spare);
        }
        let mut used = vec![0u64; self.g.words];
        let mut cols = vec![0; k];
        for b in (0..k).rev() {
            let j = bits::iter(&self.stack[b])
                .find(|&j| !bits::contains(&used, j))
                .expect("nested masks admit distinct columns");
            bits::insert(&mut used, j);
            cols[b] = j;
        }
        Selection::new(rows, cols)
    }

    /// `stack[d]` already excludes columns at or left of the last chosen one.
    fn triangular(&mut self, d: usize, next_row: usize) {
        if !self.tick() {
            return;
        }
        self.record_current();
        if self.halted {
            return;
        }
        let g = self.g;
        let Some(j) = bits::first(&self.stack[d]) else {
            return;
        };
        let mut rest = self.stack[d].clone();
        bits::remove(&mut rest, j);
        let mut cands: Vec<(u32, usize)> =
            (next_row..g.rows).map(|r| (bits::and_count(&rest, g.zero(r)), r)).collect();
        sort_candidates(&mut cands);
        let z: Vec<u32> = cands.iter().map(|x| x.0).collect();
        if d + chain_bound(&z, false, bits::count(&self.stack[d]) as usize) <= self.best {
            return;
        }
        for (z, r) in cands {
            if d + 1 + z as usize <= self.best || self.halted {
                break;
            }
            bits::and_into(&mut self.stack[d + 1], &rest, g.zero(r));
            self.push(r, Some(j));
            self.triangular(d + 1, r + 1);
            self.pop(true);
        }
    }

    fn special(&mut self, d: usize, next_row: usize) {
        if !self.tick() {
            return;
        }
        self.record_current();
        if self.halted {
            return;
        }
        let g = self.g;
        let c = &self.stack[d];
        let mut scratch = vec![0u64; g.words];
        let mut cands: Vec<(u32, usize, usize)> = Vec::new();
        for r in next_row..g.rows {
            if let Some(j) = bits::first_and(c, g.one(r)) {
                bits::and_into(&mut scratch, c, g.zero(r));
                bits::clear_through(&mut scratch, j);
                cands.push((bits::count(&scratch), r, j));
            }
        }
        cands.sort_unstable_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        let z: Vec<u32> = cands.iter().map(|x| x.0).collect();
        if d + chain_bound(&z, false, bits::count(c) as usize) <= self.best {
            return;
        }
        for (z, r, j) in cands {
            if d + 1 + z as usize <= self.best || self.halted {
                break;
            }
            let (lo, hi) = self.stack.split_at_mut(d + 1);
            bits::and_into(&mut hi[0], &lo[d], g.zero(r));
            bits::clear_through(&mut hi[0], j);
            self.push(r, Some(j));
            self.special(d + 1, r + 1);
            self.pop(true);
        }
    }

    fn zero_square(&mut self, d: usize, next_row: usize) {
        if !self.tick() {
            return;
        }
        let g = self.g;
        let c = &self.stack[d];
        let width = bits::count(c) as usize;
        let value = d.min(width);
        if value > self.best {
            let sel = Selection::new(self.rows[..value].to_vec(), bits::iter(c).take(value).collect());
            self.record(sel);
        }
        if self.halted {
            return;
        }
        let c = &self.stack[d];
        let best = self.best as u32;
        let mut cands: Vec<(u32, usize)> = (next_row..g.rows)
            .map(|r| (bits::and_count(c, g.zero(r)), r))
            .filter(|x| x.0 > best)
            .collect();
        sort_candidates(&mut cands);
        let bound = cands
            .iter()
            .enumerate()
            .map(|(t, &(z, _))| (z as usize).min(d + t + 1).min(width))
            .max()
            .unwrap_or(0)
            .max(value);
        if bound <= self.best {
            return;
        }
        for (z, r) in cands {
            if z as usize <= self.best || self.halted {
                break;
            }
            let (lo, hi) = self.stack.split_at_mut(d + 1);
            bits::and_into(&mut hi[0], &lo[d], g.zero(r));
            self.push(r, None);
            self.zero_square(d + 1, r + 1);
            self.pop(false);
        }
    }
}
