use std::sync::Arc;

use super::{test_elements, Check, SampleConfig};
use crate::error::{Error, Result};
use crate::hahn::Valuation;
use crate::rootsys::RootPoset;
use crate::scalars::OrderedField;
use crate::svring::{Node, RingSpec, TupleElt};

const SALT: u64 = 31;

/// A ring embedding between specs with the same leaves: leaf `i` is mapped
/// by the section padding `pad[i]` leading zero coordinates.
#[derive(Clone, Debug)]
pub struct SpecEmbedding {
    pub source: Arc<RingSpec>,
    pub target: Arc<RingSpec>,
    pub pad: Vec<usize>,
    /// Whether the embedding is expected to be local.
    pub local: bool,
}

/// Pads every leaf to depth `d_max` and keeps every node level. A shallow
/// leaf embeds by `x^γ ↦ x^{(0, …, 0, γ)}`.
pub fn homogenize(spec: &Arc<RingSpec>) -> Result<SpecEmbedding> {
    let d = spec.max_depth();
    let tree = spec.tree().clone();
    let level = (0..tree.len())
        .map(|q| if spec.is_leaf_node(q) { d } else { spec.tree_level(q) })
        .collect();
    let pad: Vec<usize> = spec.depths().iter().map(|&di| d - di).collect();
    let target = if pad.iter().all(|&p| p == 0) {
        spec.clone()
    } else {
        RingSpec::new(tree, level)?.shared()
    };
    Ok(SpecEmbedding {
        source: spec.clone(),
        target,
        pad,
        local: true,
    })
}

/// Keeps the leaves and glues them all at a single maximal ideal.
pub fn saturate_to_type_n1(spec: &Arc<RingSpec>) -> Result<SpecEmbedding> {
    let n = spec.n();
    if n < 2 {
        return Err(Error::Rejected("saturation needs rank at least 2".into()));
    }
    let mut ids: Vec<String> = (0..n).map(|i| spec.leaf_id(i).to_string()).collect();
    let mut top = "m".to_string();
    while ids.contains(&top) {
        top.push('\'');
    }
    ids.push(top);
    let covers: Vec<(usize, usize)> = (0..n).map(|i| (i, n)).collect();
    let tree = RootPoset::from_indices(ids, &covers)?;
    let mut level = spec.depths();
    level.push(0);
    Ok(SpecEmbedding {
        source: spec.clone(),
        target: RingSpec::new(tree, level)?.shared(),
        pad: vec![0; n],
        local: true,
    })
}

impl SpecEmbedding {
    pub fn is_identity(&self) -> bool {
        Arc::ptr_eq(&self.source, &self.target) && self.pad.iter().all(|&p| p == 0)
    }

    pub fn apply<F: OrderedField>(&self, a: &TupleElt<F>) -> Result<TupleElt<F>> {
        let comps = a
            .components()
            .iter()
            .zip(&self.pad)
            .map(|(c, &p)| c.section(p))
            .collect();
        self.target.make_element(comps)
    }

    /// Injective ring homomorphism on samples, preserving valuations (up to
    /// padding), `1`, and the orthogonality of the `e_i`; when local, units
    /// are exactly the preimages of units and every branching ideal lands in
    /// the maximal ideal of the target.
    pub fn verify<F: OrderedField>(&self, cfg: &SampleConfig) -> Check {
        let src = &self.source;
        if self.apply(&src.one::<F>()).ok() != Some(self.target.one()) {
            return Check::fail("1 does not map to 1");
        }
        let e: Vec<TupleElt<F>> = match src
            .canonical_orthogonals::<F>()
            .iter()
            .map(|ei| self.apply(ei))
            .collect::<Result<_>>()
        {
            Ok(e) => e,
            Err(err) => return Check::fail(format!("image of some e_i is invalid: {err}")),
        };
        for i in 0..e.len() {
            if e[i].is_zero() {
                return Check::fail(format!("e_{} maps to 0", i + 1));
            }
            for j in (i + 1)..e.len() {
                if !(&e[i] * &e[j]).is_zero() {
                    return Check::fail(format!("images of e_{} and e_{} are not orthogonal", i + 1, j + 1));
                }
            }
        }
        let elements = test_elements::<F>(src, cfg, SALT);
        for pair in elements.windows(2) {
            let (a, b) = (&pair[0], &pair[1]);
            let (Ok(fa), Ok(fb)) = (self.apply(a), self.apply(b)) else {
                return Check::fail(format!("image of {a} or {b} is invalid"));
            };
            if self.apply(&(a + b)).ok() != Some(&fa + &fb) || self.apply(&(a * b)).ok() != Some(&fa * &fb) {
                return Check::fail(format!("not a homomorphism at {a}, {b}"));
            }
            if fa.is_zero() != a.is_zero() {
                return Check::fail(format!("{a} is in the kernel"));
            }
            for (i, c) in a.components().iter().enumerate() {
                let expected = match c.val() {
                    Valuation::Finite(g) => Valuation::Finite(g.pad_prefix(self.pad[i])),
                    Valuation::Infinite => Valuation::Infinite,
                };
                if fa.component(i).val() != expected {
                    return Check::fail(format!("valuation not preserved at {a}, leaf {}", i + 1));
                }
            }
            if self.local {
                if fa.is_unit() != a.is_unit() {
                    return Check::fail(format!("{a} breaks locality"));
                }
                for q in src.internal_nodes() {
                    if src.in_prime(a, Node::Tree(q)) && !fa.in_max_ideal() {
                        return Check::fail(format!(
                            "{a} in `{}` maps outside the maximal ideal",
                            src.node_id(Node::Tree(q))
                        ));
                    }
                }
            }
        }
        Check::pass(format!(
            "injective{} homomorphism on {} samples",
            if self.local { " local" } else { "" },
            cfg.trials
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hahn::parse_val_elt;
    use crate::scalars::{GroupElement, Rational};
    use crate::svring::fixtures::*;

    #[test]
    fn homogenize_mixed_depths() {
        let s = RingSpec::build(&[("a", 1), ("b", 2)], &[("m", 0)], &[("a", "m"), ("b", "m")])
            .unwrap()
            .shared();
        let h = homogenize(&s).unwrap();
        assert_eq!(h.target.depths(), vec![2, 2]);
        assert_eq!(h.pad, vec![1, 0]);
        let x = s.lift(0, &parse_val_elt::<Rational>("x", 1).unwrap()).unwrap();
        let image = h.apply(&x).unwrap();
        assert_eq!(image.component(0), &parse_val_elt("x^(0,1)", 2).unwrap());
        // valuation oracle: (1) padded in front is (0,1)
        assert_eq!(
            image.component(0).val(),
            Valuation::Finite(GroupElement::from_ints(&[0, 1]))
        );
        assert!(h.verify::<Rational>(&SampleConfig::with_trials(200)).passed);
    }

    #[test]
    fn homogenize_identity() {
        let s = rank4();
        let h = homogenize(&s).unwrap();
        assert!(h.is_identity());
        let a = s.sample_seeded::<Rational>(3, 3);
        assert_eq!(h.apply(&a).unwrap(), a);
    }

    #[test]
    fn saturate_type_n2() {
        let s = star(3, 2, 1);
        let sat = saturate_to_type_n1(&s).unwrap();
        assert!(sat.target.top_is_max());
        assert_eq!(sat.target.internal_nodes().len(), 1);
        assert!(sat.verify::<Rational>(&SampleConfig::with_trials(200)).passed);
        // an element of the branching ideal: zero residue at q
        let b = s.lift(0, &parse_val_elt::<Rational>("x^(1,0)", 2).unwrap()).unwrap();
        assert!(s.in_prime(&b, s.node("q").unwrap()));
        assert!(sat.apply(&b).unwrap().in_max_ideal());
        let u = s.one::<Rational>();
        assert!(!sat.apply(&u).unwrap().in_max_ideal());
        assert!(saturate_to_type_n1(&single(2)).is_err());
        let r = saturate_to_type_n1(&rank4()).unwrap();
        assert!(r.verify::<Rational>(&SampleConfig::with_trials(200)).passed);
    }
}
