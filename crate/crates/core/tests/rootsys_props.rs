use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use svring_core::rootsys::{parse_poset, poset_iso, random_root, write_poset};
use svring_core::RootPoset;

fn root(seed: u64, size: usize) -> RootPoset {
    random_root(&mut ChaCha8Rng::seed_from_u64(seed), size)
}

/// The same order with indices reversed and ids renamed.
fn relabel(p: &RootPoset) -> RootPoset {
    let n = p.len();
    let ids = (0..n).map(|k| format!("v{}", n - 1 - k)).collect();
    let pairs: Vec<(usize, usize)> = p.covers().iter().map(|&(a, b)| (n - 1 - a, n - 1 - b)).collect();
    RootPoset::from_indices(ids, &pairs).unwrap()
}

proptest! {
    #[test]
    fn up_sets_are_chains(seed: u64, size in 1usize..=12) {
        let p = root(seed, size);
        prop_assert!(p.is_root());
        for x in 0..p.len() {
            let up = p.up_set(x);
            for (k, &a) in up.iter().enumerate() {
                for &b in &up[k + 1..] {
                    prop_assert!(p.leq(a, b));
                }
            }
        }
    }

    #[test]
    fn branching_root_is_reduced(seed: u64, size in 1usize..=12) {
        let p = root(seed, size);
        let br = p.branching_root();
        prop_assert!(br.is_root() && br.is_reduced());
        prop_assert_eq!(br.minimal().len(), p.minimal().len());
        prop_assert!(br.branching_points().len() <= p.minimal().len() - 1);
    }

    #[test]
    fn joins_are_least_upper_bounds(seed: u64, size in 1usize..=10) {
        let p = root(seed, size);
        for a in 0..p.len() {
            for b in 0..p.len() {
                let j = p.join(a, b).unwrap();
                prop_assert!(p.leq(a, j) && p.leq(b, j));
                for u in 0..p.len() {
                    if p.leq(a, u) && p.leq(b, u) {
                        prop_assert!(p.leq(j, u));
                    }
                }
            }
        }
    }

    #[test]
    fn iso_invariant_under_relabelling(seed: u64, size in 1usize..=10) {
        let p = root(seed, size);
        let q = relabel(&p);
        let w = poset_iso(&p, &q).expect("relabelled copy is isomorphic");
        for a in 0..p.len() {
            for b in 0..p.len() {
                prop_assert_eq!(p.leq(a, b), q.leq(w[a], w[b]));
            }
        }
    }

    #[test]
    fn text_round_trip(seed: u64, size in 1usize..=10) {
        let p = root(seed, size);
        let back = parse_poset(&write_poset(&p)).unwrap();
        prop_assert_eq!(back.ids(), p.ids());
        prop_assert!(poset_iso(&back, &p).is_some());
    }
}
