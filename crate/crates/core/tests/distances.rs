mod common;

use common::{random_doubly_stochastic, random_granular, random_perm};
use mssc_core::distances::{
    decompose_neighboring, footrule_matrix, footrule_perm, fractional_kendall_tau,
    fractional_kendall_tau_granular, kendall_tau, r_index, r_index_units,
};
use mssc_core::lp::{build_transport_lp, simplex_solve, LpStatus};
use mssc_core::rounding::StreamRng;
use mssc_core::{ElementId, GranularMatrix, Permutation, StochasticMatrix};
use proptest::prelude::*;

fn perm_strategy(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_order(v).unwrap())
}

fn perm_pair() -> impl Strategy<Value = (Permutation, Permutation)> {
    (1usize..=10).prop_flat_map(|n| (perm_strategy(n), perm_strategy(n)))
}

fn brute_inversions(a: &Permutation, b: &Permutation) -> u64 {
    let n = a.len();
    let mut count = 0;
    for x in 0..n {
        for y in x + 1..n {
            let (ex, ey) = (ElementId::from(x), ElementId::from(y));
            if (a.position(ex) < a.position(ey)) != (b.position(ex) < b.position(ey)) {
                count += 1;
            }
        }
    }
    count
}

proptest! {
    #[test]
    fn kendall_tau_counts_inverted_pairs((a, b) in perm_pair()) {
        prop_assert_eq!(kendall_tau(&a, &b).unwrap(), brute_inversions(&a, &b));
        prop_assert_eq!(kendall_tau(&a, &b).unwrap(), kendall_tau(&b, &a).unwrap());
    }

    #[test]
    fn footrule_sandwich((a, b) in perm_pair()) {
        let kt = kendall_tau(&a, &b).unwrap();
        let fr = footrule_perm(&a, &b).unwrap();
        prop_assert!(kt <= fr && fr <= 2 * kt);
    }

    #[test]
    fn matrix_footrule_extends_permutation_footrule((a, b) in perm_pair()) {
        let ma = StochasticMatrix::from_permutation(&a);
        let mb = StochasticMatrix::from_permutation(&b);
        prop_assert_eq!(footrule_matrix(&ma, &mb).unwrap(), footrule_perm(&a, &b).unwrap() as f64);
    }

    #[test]
    fn r_index_of_permutation_is_position(a in (1usize..=8).prop_flat_map(perm_strategy), r in 1usize..5) {
        let m = StochasticMatrix::from_permutation(&a);
        let g = GranularMatrix::from_permutation(&a, r);
        for &e in a.order() {
            prop_assert_eq!(r_index(&m, e, r).index, a.position(e));
            prop_assert_eq!(r_index_units(&g, e), a.position(e));
        }
    }

    #[test]
    fn fractional_kt_is_kendall_tau_at_r1((a, b) in perm_pair()) {
        let ma = StochasticMatrix::from_permutation(&a);
        let mb = StochasticMatrix::from_permutation(&b);
        prop_assert_eq!(fractional_kendall_tau(&ma, &mb, 1).unwrap(), kendall_tau(&a, &b).unwrap());
    }
}

#[test]
fn r_index_examples() {
    let m = StochasticMatrix::from_rows(&[
        vec![1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0],
        vec![1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0],
        vec![1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0],
    ])
    .unwrap();
    assert_eq!(r_index(&m, ElementId(0), 2).index, 2);
    assert_eq!(r_index(&m, ElementId(0), 3).index, 1);
    assert_eq!(r_index(&m, ElementId(0), 1).index, 3);
}

#[test]
fn closed_form_matches_transport_program() {
    let mut rng = StreamRng::new(11);
    for _ in 0..60 {
        let n = 2 + rng.below(4);
        let a = random_doubly_stochastic(&mut rng, n);
        let b = random_doubly_stochastic(&mut rng, n);
        let sol = simplex_solve(&build_transport_lp(&a, &b));
        assert_eq!(sol.status, LpStatus::Optimal);
        assert!((sol.objective_value - footrule_matrix(&a, &b).unwrap()).abs() < 1e-6);
    }
}

#[test]
fn granular_fractional_kt_agrees_with_float_version() {
    let mut rng = StreamRng::new(5);
    for _ in 0..200 {
        let n = 1 + rng.below(6);
        let r = 1 + rng.below(4);
        let a = random_granular(&mut rng, n, r);
        let b = random_granular(&mut rng, n, r);
        assert_eq!(
            fractional_kendall_tau_granular(&a, &b).unwrap(),
            fractional_kendall_tau(&a.to_stochastic(), &b.to_stochastic(), r).unwrap()
        );
    }
}

#[test]
fn fractional_kt_triangle_and_granular_bound() {
    let mut rng = StreamRng::new(17);
    for _ in 0..300 {
        let n = 1 + rng.below(6);
        let r = 1 + rng.below(4);
        let a = random_granular(&mut rng, n, r);
        let b = random_granular(&mut rng, n, r);
        let c = random_granular(&mut rng, n, r);
        let ab = fractional_kendall_tau_granular(&a, &b).unwrap();
        let bc = fractional_kendall_tau_granular(&b, &c).unwrap();
        let ac = fractional_kendall_tau_granular(&a, &c).unwrap();
        assert!(ac <= ab + bc);
        assert_eq!(ab, fractional_kendall_tau_granular(&b, &a).unwrap());
        let fr = footrule_matrix(&a.to_stochastic(), &b.to_stochastic()).unwrap();
        assert!(ab as f64 <= 2.0 * (r * r) as f64 * fr + 1e-6);
    }
}

fn check_decomposition(a: &StochasticMatrix, b: &StochasticMatrix) {
    let steps = decompose_neighboring(a, b).unwrap();
    let mut prev = a.clone();
    let mut total = 0.0;
    for s in &steps {
        let diff: Vec<(usize, usize)> = (0..a.n())
            .flat_map(|e| (0..a.n()).map(move |i| (e, i)))
            .filter(|&(e, i)| (prev.row(e)[i] - s.matrix.row(e)[i]).abs() > 1e-12)
            .collect();
        assert_eq!(diff.len(), 2, "neighboring steps change two entries");
        assert_eq!(diff[0].0, diff[1].0);
        assert_eq!(diff[0].1 + 1, diff[1].1);
        assert_eq!(s.from_col.abs_diff(s.to_col), 1);
        assert!(s.matrix.column_sums().iter().all(|&c| c <= 2.0 + 1e-9));
        total += footrule_matrix(&prev, &s.matrix).unwrap();
        prev = s.matrix.clone();
    }
    for e in 0..a.n() {
        for i in 0..a.n() {
            assert!((prev.row(e)[i] - b.row(e)[i]).abs() < 1e-9);
        }
    }
    assert!((total - footrule_matrix(a, b).unwrap()).abs() < 1e-6);
}

#[test]
fn decomposition_of_example_pair() {
    let a = StochasticMatrix::from_permutation(&Permutation::identity(3));
    let b = StochasticMatrix::from_rows(&[
        vec![1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0],
        vec![0.5, 0.5, 0.0],
        vec![1.0 / 6.0, 1.0 / 6.0, 2.0 / 3.0],
    ])
    .unwrap();
    check_decomposition(&a, &b);
    assert!(decompose_neighboring(&a, &a).unwrap().is_empty());
}

#[test]
fn decomposition_of_random_pairs() {
    let mut rng = StreamRng::new(23);
    for _ in 0..100 {
        let n = 1 + rng.below(5);
        let a = random_doubly_stochastic(&mut rng, n);
        let b = random_doubly_stochastic(&mut rng, n);
        check_decomposition(&a, &b);
    }
    let p = random_perm(&mut rng, 6);
    let q = random_perm(&mut rng, 6);
    check_decomposition(&StochasticMatrix::from_permutation(&p), &StochasticMatrix::from_permutation(&q));
}
