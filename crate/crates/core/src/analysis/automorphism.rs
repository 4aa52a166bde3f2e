use std::sync::Arc;

use super::{test_elements, Check, SampleConfig};
use crate::error::{Error, Result};
use crate::scalars::OrderedField;
use crate::svring::{RingSpec, TupleElt};

const SALT: u64 = 21;

/// A ring automorphism permuting components: leaf `i` goes to `σ(i)`.
#[derive(Clone, Debug)]
pub struct LeafAutomorphism {
    spec: Arc<RingSpec>,
    sigma: Vec<usize>,
    node_map: Vec<usize>,
}

/// Accepts `σ` iff it extends to a level-preserving automorphism of the tree.
pub fn leaf_automorphism(spec: &Arc<RingSpec>, sigma: &[usize]) -> Result<LeafAutomorphism> {
    let n = spec.n();
    let mut seen = vec![false; n];
    if sigma.len() != n || sigma.iter().any(|&s| s >= n || std::mem::replace(&mut seen[s], true)) {
        return Err(Error::Rejected(format!("{sigma:?} is not a permutation of {n} leaves")));
    }
    for i in 0..n {
        if spec.depth(i) != spec.depth(sigma[i]) {
            return Err(Error::Rejected(format!(
                "leaf `{}` has depth {} but `{}` has depth {}",
                spec.leaf_id(i),
                spec.depth(i),
                spec.leaf_id(sigma[i]),
                spec.depth(sigma[i])
            )));
        }
    }
    let tree = spec.tree();
    let mut node_map: Vec<Option<usize>> = vec![None; tree.len()];
    for i in 0..n {
        for j in 0..n {
            let q = spec.join_leaves(i, j);
            let image = spec.join_leaves(sigma[i], sigma[j]);
            match node_map[q] {
                Some(prev) if prev != image => {
                    return Err(Error::Rejected(format!(
                        "`{}` would map to both `{}` and `{}`",
                        tree.id(q),
                        tree.id(prev),
                        tree.id(image)
                    )));
                }
                _ => node_map[q] = Some(image),
            }
        }
    }
    let node_map: Vec<usize> = node_map
        .into_iter()
        .map(|m| m.expect("every node of a reduced tree is a join"))
        .collect();
    let mut hit = vec![false; tree.len()];
    for (q, &image) in node_map.iter().enumerate() {
        if std::mem::replace(&mut hit[image], true) {
            return Err(Error::Rejected(format!("two nodes map to `{}`", tree.id(image))));
        }
        if spec.tree_level(q) != spec.tree_level(image) {
            return Err(Error::Rejected(format!(
                "`{}` at level {} would map to `{}` at level {}",
                tree.id(q),
                spec.tree_level(q),
                tree.id(image),
                spec.tree_level(image)
            )));
        }
    }
    for a in 0..tree.len() {
        for b in 0..tree.len() {
            if tree.leq(a, b) != tree.leq(node_map[a], node_map[b]) {
                return Err(Error::Rejected(format!(
                    "order between `{}` and `{}` is not preserved",
                    tree.id(a),
                    tree.id(b)
                )));
            }
        }
    }
    Ok(LeafAutomorphism {
        spec: spec.clone(),
        sigma: sigma.to_vec(),
        node_map,
    })
}

impl LeafAutomorphism {
    pub fn sigma(&self) -> &[usize] {
        &self.sigma
    }

    pub fn node_image(&self, q: usize) -> usize {
        self.node_map[q]
    }

    /// The induced action on branching nodes, as `(node, image)` ids.
    pub fn branching_action(&self) -> Vec<(String, String)> {
        let tree = self.spec.tree();
        self.spec
            .internal_nodes()
            .into_iter()
            .map(|q| (tree.id(q).to_string(), tree.id(self.node_map[q]).to_string()))
            .collect()
    }

    /// Nodes moved by the automorphism, each pair reported once.
    pub fn swapped_nodes(&self) -> Vec<(String, String)> {
        self.branching_action()
            .into_iter()
            .filter(|(a, b)| a < b)
            .collect()
    }

    pub fn apply<F: OrderedField>(&self, a: &TupleElt<F>) -> Result<TupleElt<F>> {
        let mut comps = a.components().to_vec();
        for (i, c) in a.components().iter().enumerate() {
            comps[self.sigma[i]] = c.clone();
        }
        self.spec.make_element(comps)
    }

    /// Ring automorphism on samples: images are valid, `+`, `·` and `1` are
    /// preserved, kernels are trivial, and `e_i ↦ e_{σ(i)}`.
    pub fn verify<F: OrderedField>(&self, cfg: &SampleConfig) -> Check {
        let spec = &self.spec;
        let one = spec.one::<F>();
        if self.apply(&one).ok().as_ref() != Some(&one) {
            return Check::fail("1 is not fixed");
        }
        let e = spec.canonical_orthogonals::<F>();
        for (i, ei) in e.iter().enumerate() {
            if self.apply(ei).ok().as_ref() != Some(&e[self.sigma[i]]) {
                return Check::fail(format!("e_{} does not map to e_{}", i + 1, self.sigma[i] + 1));
            }
        }
        let elements = test_elements::<F>(spec, cfg, SALT);
        for pair in elements.windows(2) {
            let (a, b) = (&pair[0], &pair[1]);
            let (Ok(fa), Ok(fb)) = (self.apply(a), self.apply(b)) else {
                return Check::fail(format!("image of {a} or {b} is not a valid element"));
            };
            if self.apply(&(a + b)).ok() != Some(&fa + &fb) {
                return Check::fail(format!("addition not preserved at {a}, {b}"));
            }
            if self.apply(&(a * b)).ok() != Some(&fa * &fb) {
                return Check::fail(format!("multiplication not preserved at {a}, {b}"));
            }
            if fa.is_zero() != a.is_zero() {
                return Check::fail(format!("{a} maps to zero"));
            }
        }
        Check::pass(format!("ring automorphism on {} samples", cfg.trials))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::Rational;
    use crate::svring::fixtures::*;

    #[test]
    fn pair_swap() {
        let s = pair();
        let auto = leaf_automorphism(&s, &[1, 0]).unwrap();
        assert!(auto.verify::<Rational>(&SampleConfig::with_trials(100)).passed);
        let e = s.canonical_orthogonals::<Rational>();
        assert_eq!(auto.apply(&e[0]).unwrap(), e[1]);
        assert!(auto.swapped_nodes().is_empty());
    }

    #[test]
    fn rank4_half_swap() {
        let s = rank4();
        let auto = leaf_automorphism(&s, &[2, 3, 0, 1]).unwrap();
        assert_eq!(auto.swapped_nodes(), vec![("q1".to_string(), "q2".to_string())]);
        assert!(auto.verify::<Rational>(&SampleConfig::with_trials(200)).passed);
        let err = leaf_automorphism(&s, &[2, 1, 0, 3]).unwrap_err();
        assert!(matches!(err, Error::Rejected(_)));
        assert!(leaf_automorphism(&s, &[1, 0, 2, 3]).is_ok());
        assert!(leaf_automorphism(&s, &[0, 0, 2, 3]).is_err());
    }

    #[test]
    fn depth_mismatch_rejected() {
        let s = RingSpec::build(&[("a", 1), ("b", 2)], &[("m", 0)], &[("a", "m"), ("b", "m")])
            .unwrap()
            .shared();
        assert!(leaf_automorphism(&s, &[1, 0]).is_err());
    }
}
