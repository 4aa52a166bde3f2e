use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::scalars::{GroupElement, OrderedField, Rational};

/// A finitely supported series `Σ c_γ x^γ` with `γ ∈ ℚ^d`.
///
/// Terms are kept in a map ordered lexicographically by exponent, so the
/// first term is the one carrying the valuation.
#[derive(Clone, Debug, PartialEq)]
pub struct GenPoly<F> {
    dim: usize,
    terms: BTreeMap<GroupElement, F>,
}

impl<F: OrderedField> GenPoly<F> {
    pub fn zero(dim: usize) -> Self {
        GenPoly {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: F, dim: usize) -> Self {
        Self::monomial(GroupElement::zero(dim), c)
    }

    pub fn one(dim: usize) -> Self {
        Self::constant(F::one(), dim)
    }

    pub fn monomial(exp: GroupElement, c: F) -> Self {
        let dim = exp.dim();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        GenPoly { dim, terms }
    }

    pub fn from_terms(dim: usize, terms: impl IntoIterator<Item = (GroupElement, F)>) -> Self {
        let mut p = Self::zero(dim);
        for (e, c) in terms {
            assert_eq!(e.dim(), dim, "exponent of wrong dimension");
            p.add_term(e, c);
        }
        p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&GroupElement, &F)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exp: &GroupElement) -> F {
        self.terms.get(exp).cloned().unwrap_or_else(F::zero)
    }

    /// Lex-minimal term: `(ν(P), P_ν(P))`.
    pub fn lowest_term(&self) -> Option<(&GroupElement, &F)> {
        self.terms.iter().next()
    }

    pub fn highest_term(&self) -> Option<(&GroupElement, &F)> {
        self.terms.iter().next_back()
    }

    /// `ν(P) = min supp(P)`, `None` for zero.
    pub fn val(&self) -> Option<&GroupElement> {
        self.lowest_term().map(|(e, _)| e)
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    fn add_term(&mut self, exp: GroupElement, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&exp) {
            Some(v) => {
                let s = v.clone() + c;
                if s.is_zero() {
                    self.terms.remove(&exp);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(exp, c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        let (mut big, small) = if self.len() >= other.len() {
            (self.clone(), other)
        } else {
            (other.clone(), self)
        };
        for (e, c) in &small.terms {
            big.add_term(e.clone(), c.clone());
        }
        big
    }

    pub fn neg(&self) -> Self {
        GenPoly {
            dim: self.dim,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Cauchy product.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.dim);
        }
        let mut prods: Vec<(GroupElement, F)> = Vec::with_capacity(self.len() * other.len());
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                prods.push((e1 + e2, c1.clone() * c2.clone()));
            }
        }
        prods.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        let mut merged: Vec<(GroupElement, F)> = Vec::with_capacity(prods.len());
        for (e, c) in prods {
            match merged.last_mut() {
                Some((last, acc)) if *last == e => *acc = acc.clone() + c,
                _ => merged.push((e, c)),
            }
        }
        GenPoly {
            dim: self.dim,
            terms: merged.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn scale(&self, k: &F) -> Self {
        if k.is_zero() {
            return Self::zero(self.dim);
        }
        GenPoly {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), c.clone() * k.clone()))
                .collect(),
        }
    }

    /// Multiplication by the monomial `x^γ`.
    pub fn shift(&self, gamma: &GroupElement) -> Self {
        GenPoly {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e + gamma, c.clone()))
                .collect(),
        }
    }

    /// Applies an exponent map that is injective and order-preserving.
    pub fn map_exponents(&self, dim: usize, f: impl Fn(&GroupElement) -> GroupElement) -> Self {
        GenPoly {
            dim,
            terms: self.terms.iter().map(|(e, c)| (f(e), c.clone())).collect(),
        }
    }

    pub fn map_coeffs<G: OrderedField>(&self, f: impl Fn(&F) -> G) -> GenPoly<G> {
        GenPoly::from_terms(self.dim, self.terms.iter().map(|(e, c)| (e.clone(), f(c))))
    }

    /// Keeps the terms whose first `e` exponent coordinates vanish and drops
    /// those coordinates.
    pub fn prefix_zero_part(&self, e: usize) -> Self {
        GenPoly {
            dim: self.dim - e,
            terms: self
                .terms
                .iter()
                .filter(|(g, _)| g.prefix_is_zero(e))
                .map(|(g, c)| (g.drop_prefix(e), c.clone()))
                .collect(),
        }
    }

    /// Componentwise minimum of all exponents.
    fn exponent_floor(&self) -> Option<GroupElement> {
        let mut it = self.terms.keys();
        let first = it.next()?.clone();
        Some(it.fold(first, |acc, e| acc.meet(e)))
    }

    /// Exact quotient in the group ring, if `other` divides `self`.
    ///
    /// Both sides are shifted into the nonnegative orthant with the divisor
    /// touching every coordinate hyperplane; there the problem is ordinary
    /// polynomial division by a single polynomial under a graded order, which
    /// terminates and leaves a zero remainder exactly when the division is
    /// exact.
    pub fn exact_div(&self, other: &Self) -> Option<Self> {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        if other.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero(self.dim));
        }
        if other.is_monomial() {
            let (e, c) = other.lowest_term().unwrap();
            return Some(self.shift(&-e).scale(&c.inv()));
        }
        let fs = self.exponent_floor().unwrap();
        let fo = other.exponent_floor().unwrap();
        let num = self.shift(&-&fs);
        let den = other.shift(&-&fo);

        // graded order: total degree first, then lex
        let graded = |p: &Self| -> BTreeMap<(Rational, GroupElement), F> {
            p.terms
                .iter()
                .map(|(e, c)| ((e.sum_coords(), e.clone()), c.clone()))
                .collect()
        };
        let den_terms: Vec<(Rational, GroupElement, F)> = den
            .terms
            .iter()
            .map(|(e, c)| (e.sum_coords(), e.clone(), c.clone()))
            .collect();
        let ((lead_key, lead_e), lead_c) = graded(&den).pop_last().unwrap();
        let lead_inv = lead_c.inv();

        let mut rem = graded(&num);
        let mut quot = Self::zero(self.dim);
        while let Some(((rk, re), rc)) = rem.pop_last() {
            if rk < lead_key {
                return None;
            }
            let delta = &re - &lead_e;
            if delta.has_negative_coord() {
                return None;
            }
            let dk = &rk - &lead_key;
            let c = rc * lead_inv.clone();
            for (k, e, dc) in &den_terms {
                if *e == lead_e {
                    continue;
                }
                let key = (k + &dk, e + &delta);
                let sub = c.clone() * dc.clone();
                match rem.get_mut(&key) {
                    Some(v) => {
                        let nv = v.clone() - sub;
                        if nv.is_zero() {
                            rem.remove(&key);
                        } else {
                            *v = nv;
                        }
                    }
                    None => {
                        rem.insert(key, -sub);
                    }
                }
            }
            quot.add_term(delta, c);
        }
        Some(quot.shift(&(&fs - &fo)))
    }
}

impl<F: OrderedField> fmt::Display for GenPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let mono = if e.is_zero() {
                String::new()
            } else {
                format!("x^{e}")
            };
            match c.to_rational() {
                Some(q) => {
                    let neg = q < Rational::zero();
                    let abs = if neg { -q } else { q };
                    match (i, neg) {
                        (0, true) => f.write_str("-")?,
                        (0, false) => {}
                        (_, true) => f.write_str(" - ")?,
                        (_, false) => f.write_str(" + ")?,
                    }
                    let one = abs == Rational::from_integer(1.into());
                    match (mono.is_empty(), one) {
                        (true, _) => write!(f, "{abs}")?,
                        (false, true) => f.write_str(&mono)?,
                        (false, false) => write!(f, "{abs}*{mono}")?,
                    }
                }
                None => {
                    if i > 0 {
                        f.write_str(" + ")?;
                    }
                    if mono.is_empty() {
                        write!(f, "({c})")?;
                    } else {
                        write!(f, "({c})*{mono}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{int, rat};

    fn mono(e: &[i64], c: i64) -> GenPoly<Rational> {
        GenPoly::monomial(GroupElement::from_ints(e), int(c))
    }

    #[test]
    fn cauchy_product_adds_exponents() {
        let p = mono(&[0, 1], 1).mul(&mono(&[1, -3], 1));
        assert_eq!(p, mono(&[1, -2], 1));
    }

    #[test]
    fn exact_division() {
        let one_plus_x = mono(&[0], 1).add(&mono(&[1], 1));
        let one_minus_x2 = mono(&[0], 1).sub(&mono(&[2], 1));
        let q = one_minus_x2.exact_div(&one_plus_x).unwrap();
        assert_eq!(q, mono(&[0], 1).sub(&mono(&[1], 1)));
        assert!(mono(&[0], 1).exact_div(&one_plus_x).is_none());
    }

    #[test]
    fn exact_division_with_negative_and_fractional_exponents() {
        let half = GroupElement::new(vec![rat(1, 2), int(-1)]);
        let a = GenPoly::monomial(GroupElement::from_ints(&[0, 0]), int(1))
            .add(&GenPoly::monomial(half.clone(), int(2)));
        let b = GenPoly::monomial(GroupElement::from_ints(&[-1, 3]), int(3))
            .add(&GenPoly::monomial(GroupElement::new(vec![rat(1, 3), int(0)]), int(-1)));
        let prod = a.mul(&b);
        assert_eq!(prod.exact_div(&a), Some(b.clone()));
        assert_eq!(prod.exact_div(&b), Some(a.clone()));
        let off = prod.add(&mono(&[5, 5], 1));
        assert!(off.exact_div(&a).is_none());
    }

    #[test]
    fn display() {
        let p = mono(&[0], 5).add(&GenPoly::monomial(GroupElement::new(vec![rat(1, 2)]), int(-3)));
        assert_eq!(p.to_string(), "5 - 3*x^(1/2)");
    }
}
