use num_complex::Complex64;
use proptest::prelude::*;

use reclab::block_operator::{apply_block, BlockOperator};
use reclab::counterexample::CounterexampleInstance;
use reclab::recurrence::{eigensum_distance, Angle, FiniteEigenSum, RecurrenceReport};
use reclab::seqspace::{block_norm, factorial, BlockLayout, SeqVector};
use reclab::zeta_orbit::zeta_star;

fn complex() -> impl Strategy<Value = Complex64> {
    (-4.0f64..4.0, -4.0f64..4.0).prop_map(|(re, im)| Complex64::new(re, im))
}

fn vector(k_max: usize) -> impl Strategy<Value = SeqVector> {
    let layout = BlockLayout::new(k_max).unwrap();
    let dim = layout.dimension();
    prop::collection::vec(complex(), dim).prop_map(move |flat| {
        let mut x = SeqVector::zeros(&layout);
        let mut it = flat.into_iter();
        for k in 1..=layout.k_max() {
            for c in x.block_mut(k) {
                *c = it.next().unwrap();
            }
        }
        x
    })
}

fn block(k: usize) -> impl Strategy<Value = Vec<Complex64>> {
    prop::collection::vec(complex(), factorial(k))
}

fn rel_dist(a: &[Complex64], b: &[Complex64]) -> f64 {
    let diff: Vec<Complex64> = a.iter().zip(b).map(|(x, y)| x - y).collect();
    block_norm(&diff) / block_norm(b).max(f64::MIN_POSITIVE)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn norm_triangle_and_homogeneity(x in vector(4), y in vector(4), c in complex()) {
        let sum = x.add(&y).unwrap();
        prop_assert!(sum.norm() <= (x.norm() + y.norm()) * (1.0 + 1e-12));
        let scaled = x.scale(c).norm();
        prop_assert!((scaled - c.norm() * x.norm()).abs() <= 1e-12 * (1.0 + scaled));
    }

    #[test]
    fn operator_preserves_blocks(x in vector(4)) {
        let op = BlockOperator::new(x.layout());
        let ux = op.apply(&x).unwrap();
        for k in 1..=4 {
            let expected = apply_block(k, x.block(k)).unwrap();
            prop_assert_eq!(ux.block(k), expected.as_slice());
        }
    }

    #[test]
    fn operator_norm_at_most_two(x in vector(4)) {
        let op = BlockOperator::new(x.layout());
        prop_assert!(op.apply(&x).unwrap().norm() <= 2.0 * x.norm() * (1.0 + 1e-12));
    }

    #[test]
    fn pow_matches_iterated_apply(x in vector(4), power in 0u64..=24) {
        let op = BlockOperator::new(x.layout());
        let mut iterated = x.clone();
        for _ in 0..power {
            iterated = op.apply(&iterated).unwrap();
        }
        let direct = op.apply_pow(power, &x).unwrap();
        for k in 1..=4 {
            prop_assert!(rel_dist(direct.block(k), iterated.block(k)) <= 1e-10);
        }
    }

    #[test]
    fn full_cycle_is_identity(k in 1usize..=5, seed in block(5)) {
        let b: Vec<Complex64> = seed.into_iter().take(factorial(k)).collect();
        let back = reclab::block_operator::apply_block_pow(k, factorial(k) as u64, &b).unwrap();
        prop_assert!(rel_dist(&back, &b) <= 1e-12);
    }

    #[test]
    fn eigensum_distance_bounded(
        nums in prop::collection::btree_set(0u64..97, 1..5),
        weights in prop::collection::vec(0.1f64..3.0, 5),
        n in 0u64..100_000,
    ) {
        let angles: Vec<Angle> = nums.iter().map(|&p| Angle::rational(p, 97).unwrap()).collect();
        let w: Vec<f64> = weights[..angles.len()].to_vec();
        let total: f64 = w.iter().sum();
        let sum = FiniteEigenSum::new(angles, w).unwrap();
        let d = eigensum_distance(&sum, n);
        prop_assert!(d <= 2.0 * total * (1.0 + 1e-15));
        prop_assert_eq!(d, eigensum_distance(&sum, n + 97));
    }

    #[test]
    fn report_consistency(trace in prop::collection::vec(0.0f64..1.0, 1..300), eps in 0.01f64..1.0) {
        let r = RecurrenceReport::from_trace(&trace, eps);
        let n = trace.len() as u64;
        prop_assert_eq!(r.count as usize, r.return_times.len());
        prop_assert!((r.density * n as f64 - r.count as f64).abs() < 1e-9);
        prop_assert!(r.max_gap >= n / (r.count + 1));
        prop_assert!(r.return_times.windows(2).all(|w| w[0] < w[1]));
        prop_assert!(r.uniform_gap() <= n);
    }

    #[test]
    fn zeta_conjugate_symmetry(re in 0.55f64..0.95, im in -40.0f64..40.0) {
        let s = Complex64::new(re, im);
        let a = zeta_star(s.conj(), 1e-12).unwrap();
        let b = zeta_star(s, 1e-12).unwrap().conj();
        prop_assert!((a - b).norm() <= 1e-12);
    }
}

#[test]
fn monotone_refinement() {
    for k_max in 2..7 {
        let small = CounterexampleInstance::new(k_max).unwrap();
        let large = CounterexampleInstance::new(k_max + 1).unwrap();
        for l in 1..k_max as u64 {
            assert!(large.non_recurrence_distance(l).unwrap() >= small.non_recurrence_distance(l).unwrap());
        }
    }
}
