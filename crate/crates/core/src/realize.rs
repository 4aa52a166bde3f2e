//! Rings with a prescribed spectrum: the full prime poset of a spec, its
//! inverse on finite roots, and the check that a ring's branching spectrum
//! matches a given reduced root.

use std::collections::HashMap;
use std::sync::Arc;

use crate::analysis::{
    annihilator_check, branching_check, brspec, in_sum_of_primes, max_ideal_branching_check,
    test_elements, Check, SampleConfig,
};
use crate::error::{Error, Result};
use crate::rootsys::{poset_iso, RootPoset};
use crate::scalars::OrderedField;
use crate::svring::{RingSpec, TupleElt};

const SALT_TAGS: u64 = 41;
const SALT_PHI: u64 = 42;

/// The prime spectrum of a spec. Element `k` is the prime
/// `{a : residue of a_i at depth e is 0}` for every `(i, e)` in `tags[k]`;
/// the first tag is the canonical one.
#[derive(Clone, Debug)]
pub struct SpecPoset {
    pub poset: RootPoset,
    pub tags: Vec<Vec<(usize, usize)>>,
}

/// Leaf `i` contributes the chain of levels `d_i, …, 0`; chains `i` and `j`
/// are glued at every level `ℓ ≤ c(join(i, j))`.
///
/// Names: a tree node keeps its id at its own level, the maximal ideal is
/// `max_id`, and any other prime is `r/ℓ` with `r` the highest node of the
/// chain at level `≥ ℓ`.
pub fn spec_poset(spec: &RingSpec) -> SpecPoset {
    let tree = spec.tree();
    let mut index: HashMap<(usize, usize), usize> = HashMap::new();
    let mut ids = Vec::new();
    let mut tags: Vec<Vec<(usize, usize)>> = Vec::new();
    let mut covers = Vec::new();
    for i in 0..spec.n() {
        let d = spec.depth(i);
        let path = tree.up_set(spec.leaf_node(i));
        let mut prev = None;
        for level in (0..=d).rev() {
            let r = *path
                .iter()
                .rev()
                .find(|&&q| spec.tree_level(q) >= level)
                .expect("the leaf itself is deep enough");
            let k = *index.entry((r, level)).or_insert_with(|| {
                ids.push(if spec.tree_level(r) == level {
                    tree.id(r).to_string()
                } else if level == 0 {
                    spec.max_id().to_string()
                } else {
                    format!("{}/{}", tree.id(r), level)
                });
                tags.push(Vec::new());
                ids.len() - 1
            });
            tags[k].push((i, d - level));
            if let Some(p) = prev {
                covers.push((p, k));
            }
            prev = Some(k);
        }
    }
    covers.sort_unstable();
    covers.dedup();
    let poset = RootPoset::from_indices(ids, &covers).expect("glued chains form a root");
    SpecPoset { poset, tags }
}

fn in_tagged_prime<F: OrderedField>(a: &TupleElt<F>, (i, e): (usize, usize)) -> bool {
    a.component(i)
        .residue(e)
        .expect("components lie in their valuation rings")
        .is_zero()
}

impl SpecPoset {
    /// Cross-checks the tags against the order on test elements: aliases of
    /// one prime agree, `p ≤ q` gives containment, and `p ≰ q` has a
    /// separating element.
    pub fn membership_check<F: OrderedField>(&self, spec: &Arc<RingSpec>, cfg: &SampleConfig) -> Check {
        let elements = test_elements::<F>(spec, cfg, SALT_TAGS);
        let mut sets: Vec<Vec<bool>> = Vec::with_capacity(self.tags.len());
        for (k, tags) in self.tags.iter().enumerate() {
            let set: Vec<bool> = elements.iter().map(|a| in_tagged_prime(a, tags[0])).collect();
            for &tag in &tags[1..] {
                if let Some(a) = elements.iter().find(|a| in_tagged_prime(a, tag) != in_tagged_prime(a, tags[0])) {
                    return Check::fail(format!(
                        "aliases of `{}` disagree on {a}",
                        self.poset.id(k)
                    ));
                }
            }
            sets.push(set);
        }
        let p = &self.poset;
        for a in 0..p.len() {
            for b in 0..p.len() {
                if a == b {
                    continue;
                }
                let contained = sets[a].iter().zip(&sets[b]).all(|(&x, &y)| !x || y);
                if p.leq(a, b) != contained {
                    return Check::fail(format!(
                        "`{}` ⊆ `{}` is {} on samples but {} in the poset",
                        p.id(a),
                        p.id(b),
                        contained,
                        p.leq(a, b)
                    ));
                }
            }
        }
        Check::pass(format!("{} primes separated by {} elements", p.len(), elements.len()))
    }
}

/// A spec whose spectrum is `p`: the tree is the induced order on the
/// minimal and branching points, every node `q` has level `|q↑| − 1`.
pub fn realize(p: &RootPoset) -> Result<RingSpec> {
    p.require_root()?;
    if p.len() < 2 {
        return Err(Error::Rejected(
            "a one-point root is the spectrum of a field".into(),
        ));
    }
    let mut keep = p.minimal();
    keep.extend(p.branching_points());
    let tree = p.induced(&keep);
    let level = tree
        .ids()
        .iter()
        .map(|id| p.up_count(p.index_of(id).expect("induced ids come from p")) - 1)
        .collect();
    RingSpec::new(tree, level)
}

/// `spec_poset(realize(p)) ≅ p`.
pub fn round_trip(p: &RootPoset) -> Result<bool> {
    let spec = realize(p)?;
    Ok(poset_iso(&spec_poset(&spec).poset, p).is_some())
}

#[derive(Clone, Debug)]
pub struct PhiReport {
    /// `BrSpec` computed from the tree.
    pub brspec_iso: bool,
    /// The poset of ideals `Ann(e_i)`, `Ann(e_i) + Ann(e_j)` and `𝔪`,
    /// ordered by inclusion on test elements.
    pub ideal_poset: RootPoset,
    pub ideal_iso: bool,
    pub facts: Vec<(&'static str, Check)>,
}

impl PhiReport {
    pub fn holds(&self) -> bool {
        self.brspec_iso && self.ideal_iso && self.facts.iter().all(|(_, c)| c.passed)
    }
}

/// Whether the branching spectrum of `spec` is `p`, both from the tree and
/// from the ideals generated by the canonical orthogonals.
pub fn phi_p_check<F: OrderedField>(
    spec: &Arc<RingSpec>,
    p: &RootPoset,
    cfg: &SampleConfig,
) -> Result<PhiReport> {
    p.require_root()?;
    if !p.is_reduced() || p.minimal().len() < 2 {
        return Err(Error::Rejected(
            "the target must be a reduced root with at least two minimal points".into(),
        ));
    }
    let brspec_iso = poset_iso(&brspec(spec), p).is_some();
    let (ideal_poset, sum_check) = ideal_poset::<F>(spec, cfg);
    let ideal_iso = poset_iso(&ideal_poset, p).is_some();
    let mut facts = vec![("annihilators", annihilator_check::<F>(spec, cfg)), ("sums", sum_check)];
    if spec.n() >= 2 {
        facts.push(("branching", branching_check::<F>(spec, cfg)));
        facts.push(("max-branching", max_ideal_branching_check::<F>(spec, cfg).check));
    }
    Ok(PhiReport {
        brspec_iso,
        ideal_poset,
        ideal_iso,
        facts,
    })
}

fn ideal_poset<F: OrderedField>(spec: &Arc<RingSpec>, cfg: &SampleConfig) -> (RootPoset, Check) {
    let n = spec.n();
    let e = spec.canonical_orthogonals::<F>();
    let elements = test_elements::<F>(spec, cfg, SALT_PHI);
    let mut names: Vec<String> = Vec::new();
    let mut sets: Vec<Vec<bool>> = Vec::new();
    let mut add = |name: String, set: Vec<bool>| {
        if !sets.contains(&set) {
            names.push(name);
            sets.push(set);
        }
    };
    for (i, ei) in e.iter().enumerate() {
        add(
            format!("Ann(e{})", i + 1),
            elements.iter().map(|a| (a * ei).is_zero()).collect(),
        );
    }
    let mut bad = None;
    for i in 0..n {
        for j in (i + 1)..n {
            let set = elements
                .iter()
                .map(|a| match in_sum_of_primes(spec, a, i, j) {
                    Some((x, y)) => {
                        if &(&x + &y) != a || !(&x * &e[i]).is_zero() || !(&y * &e[j]).is_zero() {
                            bad.get_or_insert_with(|| format!("bad decomposition of {a} for e{} e{}", i + 1, j + 1));
                        }
                        true
                    }
                    None => false,
                })
                .collect();
            add(format!("Ann(e{})+Ann(e{})", i + 1, j + 1), set);
        }
    }
    add("m".to_string(), elements.iter().map(|a| !a.is_unit()).collect());
    let mut pairs = Vec::new();
    for a in 0..sets.len() {
        for b in 0..sets.len() {
            if a != b && sets[a].iter().zip(&sets[b]).all(|(&x, &y)| !x || y) {
                pairs.push((a, b));
            }
        }
    }
    let poset = RootPoset::from_indices(names, &pairs).expect("distinct sets ordered by inclusion");
    let check = match bad {
        Some(msg) => Check::fail(msg),
        None => Check::pass(format!("{} ideals on {} elements", poset.len(), elements.len())),
    };
    (poset, check)
}
