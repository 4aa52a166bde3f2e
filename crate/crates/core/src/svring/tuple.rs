use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Node, RingSpec};
use crate::error::{Error, Result};
use crate::hahn::random::{random_prime_elt, random_ring_elt};
use crate::hahn::ValElt;
use crate::scalars::{GroupElement, OrderedField};

/// An element of the ring presented by a [`RingSpec`]: one component in
/// `V_{d_i}` per leaf, with matching residues at every join.
#[derive(Clone, Debug)]
pub struct TupleElt<F> {
    spec: Arc<RingSpec>,
    comps: Vec<ValElt<F>>,
}

impl<F: OrderedField> TupleElt<F> {
    pub fn spec(&self) -> &Arc<RingSpec> {
        &self.spec
    }

    pub fn components(&self) -> &[ValElt<F>] {
        &self.comps
    }

    pub fn component(&self, i: usize) -> &ValElt<F> {
        &self.comps[i]
    }

    pub fn into_components(self) -> Vec<ValElt<F>> {
        self.comps
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(ValElt::is_zero)
    }

    /// Units of a local ring with `𝔪 = 𝔪_1 × ⋯ × 𝔪_n`: every component has
    /// valuation zero.
    pub fn is_unit(&self) -> bool {
        self.comps.iter().all(ValElt::is_unit)
    }

    pub fn in_max_ideal(&self) -> bool {
        self.comps.iter().all(|c| !c.is_unit())
    }

    fn same_owner(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.spec, &other.spec) || self.spec == other.spec {
            Ok(())
        } else {
            Err(Error::OwnerMismatch)
        }
    }

    fn zip(&self, other: &Self, f: impl Fn(&ValElt<F>, &ValElt<F>) -> ValElt<F>) -> Result<Self> {
        self.same_owner(other)?;
        let out = TupleElt {
            spec: self.spec.clone(),
            comps: self.comps.iter().zip(&other.comps).map(|(a, b)| f(a, b)).collect(),
        };
        debug_assert!(out.spec.check_components(&out.comps).is_ok());
        Ok(out)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a + b)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a - b)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a * b)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = self.spec.one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

}

impl<F: OrderedField> PartialEq for TupleElt<F> {
    fn eq(&self, other: &Self) -> bool {
        self.same_owner(other).is_ok() && self.comps == other.comps
    }
}

impl<F: OrderedField> fmt::Display for TupleElt<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, c) in self.comps.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

macro_rules! tuple_op {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl<F: OrderedField> $tr for &TupleElt<F> {
            type Output = TupleElt<F>;

            fn $m(self, rhs: &TupleElt<F>) -> TupleElt<F> {
                self.$checked(rhs).expect("elements of different rings")
            }
        }

        impl<F: OrderedField> $tr for TupleElt<F> {
            type Output = TupleElt<F>;

            fn $m(self, rhs: TupleElt<F>) -> TupleElt<F> {
                (&self).$m(&rhs)
            }
        }
    };
}

tuple_op!(Add, add, checked_add);
tuple_op!(Sub, sub, checked_sub);
tuple_op!(Mul, mul, checked_mul);

impl<F: OrderedField> Neg for &TupleElt<F> {
    type Output = TupleElt<F>;

    fn neg(self) -> TupleElt<F> {
        TupleElt {
            spec: self.spec.clone(),
            comps: self.comps.iter().map(|c| -c).collect(),
        }
    }
}

impl<F: OrderedField> Neg for TupleElt<F> {
    type Output = TupleElt<F>;

    fn neg(self) -> TupleElt<F> {
        -&self
    }
}

impl RingSpec {
    /// Validates a component list: arity, dimensions, membership in each
    /// `V_{d_i}` and pairwise residue compatibility.
    pub fn check_components<F: OrderedField>(&self, comps: &[ValElt<F>]) -> Result<()> {
        if comps.len() != self.n() {
            return Err(Error::ComponentCount {
                expected: self.n(),
                got: comps.len(),
            });
        }
        for (i, a) in comps.iter().enumerate() {
            if a.dim() != self.depth(i) {
                return Err(Error::DimensionMismatch {
                    left: a.dim(),
                    right: self.depth(i),
                });
            }
            if !a.in_valuation_ring() {
                return Err(Error::NotInValuationRing {
                    leaf: self.leaf_id(i).to_string(),
                });
            }
        }
        for i in 0..self.n() {
            for j in (i + 1)..self.n() {
                let q = Node::Tree(self.join_leaves(i, j));
                let ri = comps[i].residue(self.depth_at(i, q))?;
                let rj = comps[j].residue(self.depth_at(j, q))?;
                if ri != rj {
                    return Err(Error::Incompatible {
                        left: self.leaf_id(i).to_string(),
                        right: self.leaf_id(j).to_string(),
                        node: self.node_id(q).to_string(),
                    });
                }
            }
        }
        Ok(())
    }

    pub fn make_element<F: OrderedField>(
        self: &Arc<Self>,
        comps: Vec<ValElt<F>>,
    ) -> Result<TupleElt<F>> {
        self.check_components(&comps)?;
        Ok(TupleElt {
            spec: self.clone(),
            comps,
        })
    }

    pub fn zero<F: OrderedField>(self: &Arc<Self>) -> TupleElt<F> {
        self.constant(F::zero())
    }

    pub fn one<F: OrderedField>(self: &Arc<Self>) -> TupleElt<F> {
        self.constant(F::one())
    }

    pub fn constant<F: OrderedField>(self: &Arc<Self>, c: F) -> TupleElt<F> {
        TupleElt {
            spec: self.clone(),
            comps: (0..self.n())
                .map(|i| ValElt::constant(c.clone(), self.depth(i)))
                .collect(),
        }
    }

    /// The element with `w` at leaf `i` and `0` elsewhere, if valid.
    pub fn one_hot<F: OrderedField>(self: &Arc<Self>, i: usize, w: ValElt<F>) -> Result<TupleElt<F>> {
        let comps = (0..self.n())
            .map(|j| if j == i { w.clone() } else { ValElt::zero(self.depth(j)) })
            .collect();
        self.make_element(comps)
    }

    /// `e_i`: `x^{(1,0,…,0)}` at leaf `i`, zero elsewhere.
    pub fn canonical_orthogonals<F: OrderedField>(self: &Arc<Self>) -> Vec<TupleElt<F>> {
        (0..self.n())
            .map(|i| {
                let e = ValElt::x_pow(GroupElement::unit(self.depth(i), 0));
                self.one_hot(i, e).expect("canonical orthogonals are valid")
            })
            .collect()
    }

    /// The section lift of `w ∈ V_{d_i}` through leaf `i`: component `i` is
    /// `w`, and every other leaf `j` receives the section of the residue of
    /// `w` at `join(i, j)`. Witnesses surjectivity of the projection to `i`.
    pub fn lift<F: OrderedField>(self: &Arc<Self>, i: usize, w: &ValElt<F>) -> Result<TupleElt<F>> {
        if w.dim() != self.depth(i) {
            return Err(Error::DimensionMismatch {
                left: w.dim(),
                right: self.depth(i),
            });
        }
        let mut comps = Vec::with_capacity(self.n());
        for j in 0..self.n() {
            if j == i {
                comps.push(w.clone());
            } else {
                let q = Node::Tree(self.join_leaves(i, j));
                let r = w.residue(self.depth_at(i, q))?;
                comps.push(r.section(self.depth_at(j, q)));
            }
        }
        self.make_element(comps)
    }

    /// The section lift of `w ∈ V_{c(node)}` to the whole ring: an element
    /// whose residue at `node` is `w`.
    pub fn lift_from<F: OrderedField>(
        self: &Arc<Self>,
        node: Node,
        w: &ValElt<F>,
    ) -> Result<TupleElt<F>> {
        let i = self.first_leaf_below(node);
        self.lift(i, &w.section(self.depth_at(i, node)))
    }

    pub fn project<'a, F: OrderedField>(&self, a: &'a TupleElt<F>, i: usize) -> &'a ValElt<F> {
        &a.comps[i]
    }

    /// The common residue of the components below `node`, in `K_{c(node)}`.
    pub fn residue_at<F: OrderedField>(&self, a: &TupleElt<F>, node: Node) -> ValElt<F> {
        let i = self.first_leaf_below(node);
        a.comps[i]
            .residue(self.depth_at(i, node))
            .expect("components lie in their valuation rings")
    }

    /// Membership in the prime at `node`: a minimal prime `{a_i = 0}`, a
    /// branching ideal `{residue at q = 0}`, or the maximal ideal.
    pub fn in_prime<F: OrderedField>(&self, a: &TupleElt<F>, node: Node) -> bool {
        match node {
            Node::Max => a.in_max_ideal(),
            Node::Tree(_) => self.residue_at(a, node).is_zero(),
        }
    }

    pub fn in_prime_id<F: OrderedField>(&self, a: &TupleElt<F>, id: &str) -> Result<bool> {
        let node = self
            .node(id)
            .ok_or_else(|| Error::UnknownNode(id.to_string()))?;
        Ok(self.in_prime(a, node))
    }

    /// A random element. The value at `⊤` is a random element of
    /// `V_{c(⊤)}`; it is pushed down the tree by sections, and at every node
    /// an independent random element of the kernel of the residue map to the
    /// parent is added. `size = 0` gives a constant tuple.
    pub fn sample<F: OrderedField, R: Rng + ?Sized>(
        self: &Arc<Self>,
        rng: &mut R,
        size: usize,
    ) -> TupleElt<F> {
        let top = self.top();
        let root_value = random_ring_elt::<R, F>(rng, self.tree_level(top), size);
        let mut comps: Vec<Option<ValElt<F>>> = vec![None; self.n()];
        let mut stack = vec![(top, root_value)];
        while let Some((q, w)) = stack.pop() {
            if let Some(i) = self.leaf_of_node(q) {
                comps[i] = Some(w);
                continue;
            }
            let mut children = self.tree().lower_covers(q);
            children.sort_unstable();
            for r in children {
                let gap = self.tree_level(r) - self.tree_level(q);
                let lifted = w.section(gap);
                let kernel = random_prime_elt::<R, F>(rng, self.tree_level(r), gap, size);
                stack.push((r, &lifted + &kernel));
            }
        }
        let comps: Vec<ValElt<F>> = comps.into_iter().map(|c| c.expect("every leaf reached")).collect();
        debug_assert!(self.check_components(&comps).is_ok());
        TupleElt {
            spec: self.clone(),
            comps,
        }
    }

    pub fn sample_seeded<F: OrderedField>(self: &Arc<Self>, seed: u64, size: usize) -> TupleElt<F> {
        self.sample(&mut ChaCha8Rng::seed_from_u64(seed), size)
    }
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;
    use crate::hahn::parse_val_elt;
    use crate::scalars::Rational;

    type Q = ValElt<Rational>;

    fn p(s: &str, d: usize) -> Q {
        parse_val_elt(s, d).unwrap()
    }

    fn tuple(spec: &Arc<RingSpec>, parts: &[&str]) -> Result<TupleElt<Rational>> {
        let comps = parts
            .iter()
            .enumerate()
            .map(|(i, s)| p(s, spec.depth(i)))
            .collect();
        spec.make_element(comps)
    }

    /// Independent compatibility oracle: compare residues along each join
    /// by filtering exponent prefixes directly.
    fn oracle_compatible(spec: &RingSpec, comps: &[Q]) -> bool {
        let res = |a: &Q, e: usize| -> Option<Q> {
            if a.is_zero() {
                return Some(Q::zero(a.dim() - e));
            }
            let v = a.val().finite().unwrap().clone();
            if v.prefix(e).is_positive() {
                Some(Q::zero(a.dim() - e))
            } else if v.prefix(e).is_zero() {
                let keep = |g: &crate::hahn::GenPoly<Rational>| g.prefix_zero_part(e);
                Some(Q::fraction(keep(a.numerator()), keep(a.denominator())).unwrap())
            } else {
                None
            }
        };
        (0..spec.n()).all(|i| {
            (0..spec.n()).all(|j| {
                let q = spec.join_leaves(i, j);
                let c = spec.tree_level(q);
                res(&comps[i], spec.depth(i) - c) == res(&comps[j], spec.depth(j) - c)
            })
        })
    }

    #[test]
    fn make_element_examples() {
        let s = pair();
        assert!(tuple(&s, &["1+x", "1+x^2"]).is_ok());
        assert!(matches!(tuple(&s, &["1+x", "x"]), Err(Error::Incompatible { .. })));
        let r = rank4();
        let comps = vec![p("x^(0,1)", 2), p("x^(0,1)", 2), Q::zero(2), Q::zero(2)];
        assert!(oracle_compatible(&r, &comps));
        assert!(r.make_element(comps).is_ok());
        assert!(matches!(tuple(&s, &["x^-1", "0"]), Err(Error::NotInValuationRing { .. })));
        assert!(matches!(tuple(&s, &["1"]), Err(Error::ComponentCount { .. })));
    }

    #[test]
    fn arithmetic_examples() {
        let s = pair();
        let a = tuple(&s, &["1+x", "1+x^2"]).unwrap();
        assert_eq!(&a + &s.zero(), a);
        let e = s.canonical_orthogonals::<Rational>();
        assert!((&e[0] * &e[1]).is_zero());
        let b = tuple(&s, &["1-x", "1-x^2"]).unwrap();
        assert_eq!(&a * &b, tuple(&s, &["1-x^2", "1-x^4"]).unwrap());
        let foreign = pair().one::<Rational>();
        // a structurally equal spec is the same ring
        assert!(a.checked_add(&foreign).is_ok());
        assert_eq!(a.checked_add(&rank4().one()), Err(Error::OwnerMismatch));
    }

    #[test]
    fn orthogonals() {
        let s = pair();
        let e = s.canonical_orthogonals::<Rational>();
        assert_eq!(e[0], tuple(&s, &["x", "0"]).unwrap());
        assert_eq!(e[1], tuple(&s, &["0", "x"]).unwrap());
        assert_eq!(star(3, 1, 0).canonical_orthogonals::<Rational>().len(), 3);
        let r = rank4();
        for (i, ei) in r.canonical_orthogonals::<Rational>().iter().enumerate() {
            assert!(oracle_compatible(&r, ei.components()));
            assert_eq!(ei.component(i), &p("x^(1,0)", 2));
        }
    }

    #[test]
    fn units_and_max_ideal() {
        let s = pair();
        assert!(tuple(&s, &["1+x", "1-x"]).unwrap().is_unit());
        assert!(tuple(&s, &["x", "x^2"]).unwrap().in_max_ideal());
        let e1 = &s.canonical_orthogonals::<Rational>()[0];
        assert!(e1.in_max_ideal() && !e1.is_unit());
    }

    #[test]
    fn prime_membership() {
        let s = pair();
        assert!(s.in_prime_id(&tuple(&s, &["0", "x"]).unwrap(), "p1").unwrap());
        assert!(s.in_prime_id(&tuple(&s, &["x", "x"]).unwrap(), "m").unwrap());
        let r = rank4();
        let a = r
            .make_element(vec![p("x^(0,1)", 2), p("x^(0,1)", 2), Q::zero(2), Q::zero(2)])
            .unwrap();
        assert!(!r.in_prime_id(&a, "q1").unwrap());
        assert!(r.in_prime_id(&a, "q2").unwrap());
        assert!(r.in_prime_id(&a, "m").unwrap());
        assert!(r.in_prime_id(&a, "nope").is_err());
    }

    #[test]
    fn project_and_residue() {
        let s = pair();
        let a = tuple(&s, &["1+x", "1+x^2"]).unwrap();
        assert_eq!(s.project(&a, 1), &p("1+x^2", 1));
        assert_eq!(s.residue_at(&a, s.max_node()), Q::one(0));
        let r = rank4();
        let e = r.canonical_orthogonals::<Rational>();
        assert!(r.residue_at(&e[0], r.node("q1").unwrap()).is_zero());
    }

    #[test]
    fn lifts_are_valid_and_surjective() {
        let r = rank4();
        let w = p("3 + x^(0,1) - 2*x^(1,-5)", 2);
        let l = r.lift(0, &w).unwrap();
        assert_eq!(l.component(0), &w);
        assert_eq!(l.component(1), &p("3 + x^(0,1)", 2));
        assert_eq!(l.component(2), &p("3", 2));
        let t = r.lift_from(r.node("q2").unwrap(), &p("1 + x", 1)).unwrap();
        assert_eq!(r.residue_at(&t, r.node("q2").unwrap()), p("1 + x", 1));
    }

    #[test]
    fn sampling() {
        let r = rank4();
        let a: TupleElt<Rational> = r.sample_seeded(7, 3);
        let b: TupleElt<Rational> = r.sample_seeded(7, 3);
        assert_eq!(a, b);
        let c: TupleElt<Rational> = r.sample_seeded(3, 0);
        let k = c.component(0).as_constant().unwrap();
        assert_eq!(c, r.constant(k));
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..10_000 {
            let s: TupleElt<Rational> = r.sample(&mut rng, 3);
            assert!(oracle_compatible(&r, s.components()));
            assert!(r.check_components(s.components()).is_ok());
        }
    }
}
