use std::sync::Arc;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use svring_core::analysis::{in_sum_of_primes, sample_non_unit, split_non_unit, sv_check, SampleConfig};
use svring_core::hahn::random::random_ring_elt;
use svring_core::svring::{all_specs, parse_ring_spec, write_ring_spec};
use svring_core::{Node, QTuple, Rational, RingSpec};

fn specs() -> Vec<Arc<RingSpec>> {
    all_specs(3, 2).into_iter().map(RingSpec::shared).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn samples_are_closed_under_ring_ops(k: prop::sample::Index, seed: u64) {
        let all = specs();
        let s = &all[k.index(all.len())];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a: QTuple = s.sample(&mut rng, 3);
        let b: QTuple = s.sample(&mut rng, 3);
        for c in [&a + &b, &a - &b, &a * &b] {
            prop_assert!(s.check_components(c.components()).is_ok());
        }
    }

    #[test]
    fn lift_projects_and_is_valid(k: prop::sample::Index, seed: u64) {
        let all = specs();
        let s = &all[k.index(all.len())];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let i = rng.gen_range(0..s.n());
        let w = random_ring_elt::<_, Rational>(&mut rng, s.depth(i), 3);
        let a = s.lift(i, &w).unwrap();
        prop_assert_eq!(a.component(i), &w);
        for node in s.all_nodes() {
            if s.leaves_below(node).contains(&i) {
                prop_assert_eq!(
                    s.residue_at(&a, node),
                    w.residue(s.depth_at(i, node)).unwrap()
                );
            }
        }
    }

    #[test]
    fn residues_agree_below_each_node(k: prop::sample::Index, seed: u64) {
        let all = specs();
        let s = &all[k.index(all.len())];
        let a: QTuple = s.sample_seeded(seed, 3);
        for node in s.all_nodes() {
            let below = s.leaves_below(node);
            let r0 = a.component(below[0]).residue(s.depth_at(below[0], node)).unwrap();
            for &j in &below[1..] {
                prop_assert_eq!(a.component(j).residue(s.depth_at(j, node)).unwrap(), r0.clone());
            }
        }
    }

    #[test]
    fn sums_of_minimal_primes_decompose(k: prop::sample::Index, seed: u64) {
        let all = specs();
        let s = &all[k.index(all.len())];
        let a: QTuple = s.sample_seeded(seed, 3);
        let e = s.canonical_orthogonals::<Rational>();
        for i in 0..s.n() {
            for j in 0..s.n() {
                let q = Node::Tree(s.join_leaves(i, j));
                let inside = i == j && a.component(i).is_zero() || i != j && s.in_prime(&a, q);
                match in_sum_of_primes(s, &a, i, j) {
                    Some((x, y)) => {
                        prop_assert!(inside);
                        prop_assert_eq!(&(&x + &y), &a);
                        prop_assert!((&x * &e[i]).is_zero() && (&y * &e[j]).is_zero());
                    }
                    None => prop_assert!(!inside),
                }
            }
        }
    }

    #[test]
    fn non_units_split_when_maximal_ideal_branches(k: prop::sample::Index, seed: u64) {
        let all = specs();
        let s = &all[k.index(all.len())];
        prop_assume!(s.top_is_max());
        let mut children = s.tree().lower_covers(s.top());
        children.sort_unstable();
        let s1 = s.leaves_below(Node::Tree(children[0]));
        let a: QTuple = sample_non_unit(s, &mut ChaCha8Rng::seed_from_u64(seed), 3);
        let (x, y) = split_non_unit(s, &a, &s1).expect("non-units split");
        prop_assert_eq!(&(&x + &y), &a);
        prop_assert!(!x.is_unit() && !y.is_unit());
        prop_assert!((&x * &y).is_zero());
    }

    #[test]
    fn spec_text_round_trip(k: prop::sample::Index) {
        let all = specs();
        let s = &all[k.index(all.len())];
        let back = parse_ring_spec(&write_ring_spec(s)).unwrap();
        prop_assert_eq!(&*back.spec, &**s);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn sv_holds_on_random_seeds(k: prop::sample::Index, seed: u64) {
        let all = specs();
        let s = &all[k.index(all.len())];
        let cfg = SampleConfig { trials: 40, seed, size: 3 };
        let r = sv_check::<Rational>(s, &cfg);
        prop_assert!(r.check.passed, "{}", r.check.detail);
    }
}
