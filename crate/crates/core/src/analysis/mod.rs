//! Structural predicates on the rings of [`RingSpec`]s, each checked both
//! from the tree data and on seeded samples.

mod automorphism;
mod checks;
mod embedding;
mod report;

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub use automorphism::{leaf_automorphism, LeafAutomorphism};
pub use checks::{
    annihilator_check, branching_check, branching_ideals, brspec, classify_type, goursat_verify,
    in_sum_of_primes, local_reduced_check, max_ideal_branching_check, one_branching_pair_check,
    rank_check, split_non_unit, sum_ideals_agree, sv_check, MaxIdealBranching, RankReport,
    RingType, SvReport,
};
pub use embedding::{homogenize, saturate_to_type_n1, SpecEmbedding};
pub use report::{analyze, AnalysisReport, CheckEntry};

use crate::hahn::ValElt;
use crate::scalars::{GroupElement, OrderedField};
use crate::svring::{Node, RingSpec, TupleElt};

/// Sampling parameters shared by every check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SampleConfig {
    pub trials: usize,
    pub seed: u64,
    /// Maximum number of terms per sampled component.
    pub size: usize,
}

impl Default for SampleConfig {
    fn default() -> Self {
        SampleConfig {
            trials: 1000,
            seed: 0,
            size: 3,
        }
    }
}

impl SampleConfig {
    pub fn with_trials(trials: usize) -> Self {
        SampleConfig {
            trials,
            ..Self::default()
        }
    }

    /// An independent generator per check, so that results do not depend on
    /// the order in which checks run.
    pub(crate) fn rng(&self, salt: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ salt)
    }
}

/// Pass/fail with a one-line explanation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub passed: bool,
    pub detail: String,
}

impl Check {
    pub fn pass(detail: impl Into<String>) -> Self {
        Check {
            passed: true,
            detail: detail.into(),
        }
    }

    pub fn fail(detail: impl Into<String>) -> Self {
        Check {
            passed: false,
            detail: detail.into(),
        }
    }
}

/// `lift(i, x^{u})` with `u` the unit vector at coordinate `d_i − ℓ`: its
/// residue at level `ℓ` on leaf `i`'s chain is nonzero, and it vanishes at
/// every level above. Together with `1` these separate all primes.
pub fn probe<F: OrderedField>(spec: &Arc<RingSpec>, i: usize, level: usize) -> TupleElt<F> {
    let d = spec.depth(i);
    if level == 0 {
        return spec.one();
    }
    let w = ValElt::x_pow(GroupElement::unit(d, d - level));
    spec.lift(i, &w).expect("probes are valid")
}

/// Boundary elements: `0`, `1`, every `e_i`, and every probe.
pub fn boundary_elements<F: OrderedField>(spec: &Arc<RingSpec>) -> Vec<TupleElt<F>> {
    let mut out = vec![spec.zero(), spec.one()];
    out.extend(spec.canonical_orthogonals());
    for i in 0..spec.n() {
        for level in 1..=spec.depth(i) {
            out.push(probe(spec, i, level));
        }
    }
    out
}

/// Boundary elements followed by `cfg.trials` random samples.
pub fn test_elements<F: OrderedField>(
    spec: &Arc<RingSpec>,
    cfg: &SampleConfig,
    salt: u64,
) -> Vec<TupleElt<F>> {
    let mut rng = cfg.rng(salt);
    let mut out = boundary_elements(spec);
    out.extend((0..cfg.trials).map(|_| spec.sample(&mut rng, cfg.size)));
    out
}

/// A random element of the maximal ideal: a sample minus the constant with
/// the same residue at `𝔪`.
pub fn sample_non_unit<F: OrderedField, R: rand::Rng + ?Sized>(
    spec: &Arc<RingSpec>,
    rng: &mut R,
    size: usize,
) -> TupleElt<F> {
    let a: TupleElt<F> = spec.sample(rng, size);
    let r = spec.residue_at(&a, Node::Max);
    let c = r.as_constant().expect("residue fields at level 0 are constants");
    &a - &spec.constant(c)
}
