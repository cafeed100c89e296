use proptest::prelude::*;
use std::sync::Arc;

use trisub::exact::{brute_force_oracle, solve, verify_witness, SolveBudget, Variant};
use trisub::gen::{plant_special_corner, EntryDistribution, Seed};
use trisub::heur::greedy_lower_bound;
use trisub::matcore::{
    extract, format_matrix, is_special_corner, ll0_reduce, ll0_schedule, parse_matrix, Alphabet, BoolMatrix,
    CornerShape, Selection,
};

fn values(m: &BoolMatrix) -> [usize; 5] {
    Variant::ALL.map(|v| {
        let r = solve(m, v, SolveBudget::unlimited());
        assert!(r.optimal);
        assert!(verify_witness(m, &r.witness, v));
        r.value
    })
}

/// Matrices over `{0, 1, v}` with `v` rarer than the others.
fn matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = BoolMatrix> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop_oneof![4 => Just(0u8), 4 => Just(1u8), 1 => Just(2u8)], r * c).prop_map(
            move |cells| {
                let rows: Vec<Vec<u8>> = cells.chunks(c).map(<[u8]>::to_vec).collect();
                BoolMatrix::from_symbols(Arc::new(Alphabet::superboolean()), &rows)
            },
        )
    })
}

fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

fn rotate_half_turn(m: &BoolMatrix) -> BoolMatrix {
    let rows: Vec<usize> = (0..m.rows()).rev().collect();
    let cols: Vec<usize> = (0..m.cols()).rev().collect();
    m.permuted(&rows, &cols)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn sandwich_and_zero_square_chain(m in matrix(9, 9)) {
        let [t, s, p, ps, z] = values(&m);
        prop_assert!(s <= t && t <= p);
        prop_assert!(s <= ps && ps <= p);
        prop_assert!(t >= z && z >= p / 2);
    }

    #[test]
    fn exact_matches_oracle(m in matrix(5, 7)) {
        for (v, value) in Variant::ALL.into_iter().zip(values(&m)) {
            prop_assert_eq!(value, brute_force_oracle(&m, v).unwrap(), "{}", v);
        }
    }

    #[test]
    fn growing_never_decreases(m in matrix(7, 7), extra in prop::collection::vec(0u8..3, 8)) {
        let before = values(&m);
        let taller = values(&m.with_row(&extra[..m.cols()]));
        let wider = values(&m.with_col(&extra[..m.rows()]));
        for i in 0..5 {
            prop_assert!(taller[i] >= before[i] && wider[i] >= before[i]);
        }
    }

    #[test]
    fn permuted_variants_ignore_order(
        (m, rp, cp) in matrix(8, 8).prop_flat_map(|m| {
            let (r, c) = (m.rows(), m.cols());
            (Just(m), permutation(r), permutation(c))
        })
    ) {
        let a = values(&m);
        let b = values(&m.permuted(&rp, &cp));
        prop_assert_eq!(&a[2..], &b[2..]);
    }

    #[test]
    fn transpose_symmetries(m in matrix(8, 8)) {
        let a = values(&m);
        let b = values(&m.transpose());
        prop_assert_eq!(&a[2..], &b[2..]);
        // order-preserving variants are symmetric under the anti-transpose
        let c = values(&rotate_half_turn(&m.transpose()));
        prop_assert_eq!(&a[..2], &c[..2]);
    }

    #[test]
    fn greedy_is_a_lower_bound(m in matrix(8, 8), seed in any::<u64>()) {
        let exact = values(&m);
        for (i, v) in Variant::ALL.into_iter().enumerate() {
            let g = greedy_lower_bound(&m, v, 4, &Seed::new(seed)).unwrap();
            prop_assert!(verify_witness(&m, &g.witness, v));
            prop_assert!(g.value <= exact[i]);
        }
    }

    #[test]
    fn ll0_reduction_keeps_special_corners(
        k in 2usize..14, ell_frac in 0.0f64..1.0, drop_frac in 0.0f64..1.0, steps_frac in 0.0f64..1.0, seed in any::<u64>()
    ) {
        let ell = 1 + ((k - 1) as f64 * ell_frac) as usize;
        let steps = ((ell - 1) as f64 * steps_frac) as usize;
        let k_drop = ((2 * steps).min(k - ell + steps) as f64 * drop_frac) as usize;
        let from = CornerShape::new(k, ell).unwrap();
        let to = CornerShape::new(k - k_drop, ell - steps).unwrap();
        let dist = EntryDistribution::binary(0.5).unwrap();
        let (m, w) = plant_special_corner(16, 16, from, &dist, &Seed::new(seed)).unwrap();
        prop_assert_eq!(ll0_schedule(from, to).unwrap().len(), steps);
        let reduced = ll0_reduce(&m, &w, from, to).unwrap();
        prop_assert_eq!(reduced.size(), to.ell());
        prop_assert!(is_special_corner(&extract(&m, &reduced).unwrap(), to.k()).unwrap());
    }

    #[test]
    fn extraction_is_deletion(m in matrix(8, 8), row_keep in any::<u16>(), col_keep in any::<u16>()) {
        let rows: Vec<usize> = (0..m.rows()).filter(|i| row_keep >> i & 1 == 1).collect();
        let cols: Vec<usize> = (0..m.cols()).filter(|j| col_keep >> j & 1 == 1).collect();
        prop_assume!(!rows.is_empty() && !cols.is_empty());
        let block = extract(&m, &Selection::new(rows.clone(), cols.clone())).unwrap();
        let mut kept = Vec::new();
        for i in 0..m.rows() {
            if rows.contains(&i) {
                let line: Vec<u8> = (0..m.cols()).filter(|j| cols.contains(j)).map(|j| m.get(i, j)).collect();
                kept.push(line);
            }
        }
        prop_assert_eq!(block, BoolMatrix::from_symbols(m.alphabet_arc().clone(), &kept));
    }

    #[test]
    fn text_round_trip(m in matrix(6, 6)) {
        let text = format_matrix(&m);
        let back = parse_matrix(&text).unwrap();
        prop_assert_eq!(format_matrix(&back), text);
        prop_assert_eq!(values(&back), values(&m));
    }
}

#[test]
fn planted_triangles_are_found_exactly() {
    let dist = EntryDistribution::binary(0.6).unwrap();
    for s in 0..20 {
        let (m, w) = trisub::gen::plant_special_triangular(14, 11, 7, &dist, &Seed::new(s)).unwrap();
        assert!(verify_witness(&m, &w, Variant::PermutedSpecial));
        let r = solve(&m, Variant::PermutedSpecial, SolveBudget::unlimited());
        assert!(r.value >= 7);
    }
}
