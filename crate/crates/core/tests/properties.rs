use std::collections::BTreeSet;

use dstoch_core::lattice::build_lattice;
use dstoch_core::ratmat::sample_doubly_stochastic;
use dstoch_core::{
    check_membership, conjugate_by_permutation, contains_ideal, contains_matrix,
    enumerate_idempotents, enumerate_set_partitions, ideal_join, ideal_meet,
    idempotent_from_partition, partition_from_matrix, partition_join, partition_meet,
    random_doubly_stochastic, refines, stirling_second_kind, IdealHandle, Matrix, Membership,
    Permutation, SetPartition,
};
use num_bigint::BigUint;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn mul(a: &Matrix, b: &Matrix) -> Matrix {
    a.multiply(b).unwrap()
}

fn partition_strategy(max_n: usize) -> impl Strategy<Value = SetPartition> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(0..n, n)
            .prop_map(|labels| SetPartition::from_labels(&labels).unwrap())
    })
}

fn pair_strategy(max_n: usize) -> impl Strategy<Value = (SetPartition, SetPartition)> {
    (1..=max_n).prop_flat_map(|n| {
        let labels = proptest::collection::vec(0..n, n);
        (labels.clone(), labels).prop_map(|(a, b)| {
            (
                SetPartition::from_labels(&a).unwrap(),
                SetPartition::from_labels(&b).unwrap(),
            )
        })
    })
}

fn shuffled(n: usize, seed: u64) -> Permutation {
    let mut images: Vec<usize> = (0..n).collect();
    images.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    Permutation::new(images).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn products_stay_doubly_stochastic(n in 1usize..=5, seed: u64, terms in 1usize..=4) {
        let a = random_doubly_stochastic(n, seed, terms);
        let b = random_doubly_stochastic(n, seed.wrapping_add(1), terms);
        prop_assert!(a.is_doubly_stochastic());
        prop_assert!(mul(&a, &b).is_doubly_stochastic());
    }

    #[test]
    fn right_and_left_ideals_are_transposes(p in partition_strategy(5), seed: u64) {
        let e = idempotent_from_partition(&p);
        let d = random_doubly_stochastic(p.n(), seed, 3);
        let m = mul(e.matrix(), &d);
        let left = mul(&d, e.matrix());
        prop_assert_eq!(mul(e.matrix(), &m), m.clone());
        prop_assert_eq!(mul(&m.transpose(), e.matrix()), m.transpose());
        prop_assert_eq!(left.transpose(), mul(e.matrix(), &d.transpose()));
        prop_assert!(contains_matrix(&IdealHandle::new(p), &left.transpose()).unwrap());
    }

    #[test]
    fn conjugation_relabels_idempotents(p in partition_strategy(6), seed: u64) {
        let perm = shuffled(p.n(), seed);
        let e = idempotent_from_partition(&p);
        let conj = conjugate_by_permutation(&perm, e.matrix()).unwrap();
        let q = p.relabel(&perm).unwrap();
        let expected = idempotent_from_partition(&q);
        prop_assert_eq!(&conj, expected.matrix());
        prop_assert_eq!(conj.rank(), e.matrix().rank());
        prop_assert_eq!(mul(&conj, &conj), conj);
    }

    #[test]
    fn conjugation_maps_ideal_members(p in partition_strategy(5), seed: u64) {
        let perm = shuffled(p.n(), seed);
        let d = random_doubly_stochastic(p.n(), seed ^ 0xabc, 3);
        let m = mul(idempotent_from_partition(&p).matrix(), &d);
        let q = p.relabel(&perm).unwrap();
        let moved = conjugate_by_permutation(&perm, &m).unwrap();
        prop_assert!(contains_matrix(&IdealHandle::new(q), &moved).unwrap());
    }

    #[test]
    fn membership_matches_sampling_oracle(p in partition_strategy(4), seed: u64) {
        let ideal = IdealHandle::new(p.clone());
        let e = idempotent_from_partition(&p);
        let d = random_doubly_stochastic(p.n(), seed, 2);
        // every E·D is a member
        prop_assert!(contains_matrix(&ideal, &mul(e.matrix(), &d)).unwrap());
        // an arbitrary D is a member exactly when E·D = D
        let verdict = check_membership(&ideal, &d).unwrap();
        prop_assert_eq!(verdict.is_member(), mul(e.matrix(), &d) == d);
        if let Membership::RowsDiffer { first, second, .. } = verdict {
            prop_assert_eq!(p.block_index_of(first), p.block_index_of(second));
            prop_assert_ne!(d.row(first), d.row(second));
        }
    }

    #[test]
    fn intersection_law((p, q) in pair_strategy(4), seed: u64) {
        let (a, b) = (IdealHandle::new(p.clone()), IdealHandle::new(q.clone()));
        let meet = ideal_meet(&a, &b).unwrap();
        let n = p.n();
        // members of the meet are members of both
        let d = random_doubly_stochastic(n, seed, 3);
        let m = mul(meet.idempotent().matrix(), &d);
        prop_assert!(contains_matrix(&a, &m).unwrap() && contains_matrix(&b, &m).unwrap());
        // and a matrix in both lies in the meet
        for candidate in [d.clone(), mul(a.idempotent().matrix(), &d), mul(b.idempotent().matrix(), &mul(a.idempotent().matrix(), &d))] {
            let both = contains_matrix(&a, &candidate).unwrap() && contains_matrix(&b, &candidate).unwrap();
            prop_assert_eq!(both, contains_matrix(&meet, &candidate).unwrap());
        }
        let join = ideal_join(&a, &b).unwrap();
        prop_assert!(contains_ideal(&join, &a).unwrap() && contains_ideal(&join, &b).unwrap());
    }

    #[test]
    fn meet_and_join_of_partitions_are_bounds((p, q) in pair_strategy(6)) {
        let lo = partition_meet(&p, &q).unwrap();
        let hi = partition_join(&p, &q).unwrap();
        prop_assert!(refines(&lo, &p).unwrap() && refines(&lo, &q).unwrap());
        prop_assert!(refines(&p, &hi).unwrap() && refines(&q, &hi).unwrap());
    }

    #[test]
    fn splitting_a_block_enlarges_the_ideal(p in partition_strategy(6)) {
        let outer = IdealHandle::new(p.clone());
        let e = idempotent_from_partition(&p);
        for q in p.block_splits() {
            prop_assert_eq!(q.num_blocks(), p.num_blocks() + 1);
            let f = idempotent_from_partition(&q);
            prop_assert!(contains_ideal(&IdealHandle::new(q), &outer).unwrap());
            prop_assert_eq!(mul(f.matrix(), e.matrix()), e.matrix().clone());
            prop_assert_ne!(mul(e.matrix(), f.matrix()), f.matrix().clone());
        }
    }
}

#[test]
fn doubly_stochastic_with_doubly_stochastic_inverse_is_a_permutation() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let mut invertible = 0;
    for i in 0..1200 {
        let n = 1 + i % 4;
        let terms = 1 + i % 3;
        let m = sample_doubly_stochastic(&mut rng, n, terms);
        if let Some(inv) = m.inverse().unwrap() {
            invertible += 1;
            assert_eq!(
                inv.is_doubly_stochastic(),
                m.is_permutation_matrix(),
                "sample {i}:\n{m}\ninverse:\n{inv}"
            );
        }
    }
    assert!(invertible > 500, "{invertible}");
}

#[test]
fn bijection_round_trip_up_to_eight() {
    for n in 1..=8 {
        let mut seen = BTreeSet::new();
        for p in enumerate_set_partitions(n) {
            let e = idempotent_from_partition(&p);
            assert_eq!(partition_from_matrix(e.matrix()).unwrap(), p);
            assert!(seen.insert(p));
        }
    }
}

#[test]
fn block_counts_follow_stirling_numbers() {
    for n in 1..=8 {
        let mut by_blocks = vec![0u64; n + 1];
        for p in enumerate_set_partitions(n) {
            by_blocks[p.num_blocks()] += 1;
        }
        for (k, &count) in by_blocks.iter().enumerate().skip(1) {
            assert_eq!(
                BigUint::from(count),
                stirling_second_kind(n, k),
                "S({n},{k})"
            );
        }
    }
}

#[test]
fn idempotents_are_idempotent_and_rank_is_block_count() {
    for n in 1..=5 {
        for e in enumerate_idempotents(n) {
            assert_eq!(mul(e.matrix(), e.matrix()), *e.matrix());
            assert_eq!(e.rank(), e.partition().num_blocks());
        }
    }
}

#[test]
fn containment_reverses_refinement() {
    for n in 1..=4 {
        let all: Vec<SetPartition> = enumerate_set_partitions(n).collect();
        for p in &all {
            for q in &all {
                let by_matrix = {
                    let (e, f) = (idempotent_from_partition(p), idempotent_from_partition(q));
                    mul(e.matrix(), f.matrix()) == *f.matrix()
                };
                let contains =
                    contains_ideal(&IdealHandle::new(p.clone()), &IdealHandle::new(q.clone()))
                        .unwrap();
                assert_eq!(contains, by_matrix, "{p} vs {q}");
                assert_eq!(contains, refines(p, q).unwrap(), "{p} vs {q}");
            }
        }
    }
}

#[test]
fn cover_edges_match_brute_force() {
    for n in 1..=5 {
        let l = build_lattice(n).unwrap();
        let nodes = l.nodes();
        let size = nodes.len();
        let below = |a: usize, b: usize| a != b && contains_ideal(&nodes[b], &nodes[a]).unwrap();
        let mut expected = BTreeSet::new();
        for a in 0..size {
            for b in 0..size {
                if below(a, b) && !(0..size).any(|c| below(a, c) && below(c, b)) {
                    expected.insert((a, b));
                }
            }
        }
        let got: BTreeSet<(usize, usize)> = l.cover_edges().iter().copied().collect();
        assert_eq!(got, expected, "n={n}");
    }
}
