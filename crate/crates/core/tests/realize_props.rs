use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use svring_core::analysis::{branching_ideals, rank_check, SampleConfig};
use svring_core::realize::{realize, spec_poset};
use svring_core::rootsys::{poset_iso, random_root};
use svring_core::Rational;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn realize_round_trips(seed: u64, size in 2usize..=14) {
        let p = random_root(&mut ChaCha8Rng::seed_from_u64(seed), size);
        let s = realize(&p).unwrap().shared();
        prop_assert!(poset_iso(&spec_poset(&s).poset, &p).is_some());
        prop_assert_eq!(s.n(), p.minimal().len());
        prop_assert_eq!(branching_ideals(&s).len(), p.branching_points().len());
        let cfg = SampleConfig::with_trials(20);
        prop_assert_eq!(rank_check::<Rational>(&s, &cfg).rank, p.minimal().len());
    }

    #[test]
    fn levels_decrease_upward(seed: u64, size in 2usize..=14) {
        let p = random_root(&mut ChaCha8Rng::seed_from_u64(seed), size);
        let s = realize(&p).unwrap();
        for &(lo, hi) in s.tree().covers() {
            prop_assert!(s.tree_level(lo) > s.tree_level(hi));
            // the gap is the length of the chain between them in p
            let (a, b) = (p.index_of(s.tree().id(lo)).unwrap(), p.index_of(s.tree().id(hi)).unwrap());
            let between = (0..p.len()).filter(|&x| p.lt(a, x) && p.lt(x, b)).count();
            prop_assert_eq!(s.tree_level(lo) - s.tree_level(hi), between + 1);
        }
    }

    #[test]
    fn tags_match_containment(seed: u64, size in 2usize..=9) {
        let p = random_root(&mut ChaCha8Rng::seed_from_u64(seed), size);
        let s = realize(&p).unwrap().shared();
        let c = spec_poset(&s).membership_check::<Rational>(&s, &SampleConfig::with_trials(20));
        prop_assert!(c.passed, "{}", c.detail);
    }
}
