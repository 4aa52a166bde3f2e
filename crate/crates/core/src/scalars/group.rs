use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::Zero;

use super::Rational;
use crate::error::{Error, Result};

/// An element of `ℚ^d`, ordered lexicographically.
///
/// The derived `Ord` is lexicographic on the coordinate vector, which is the
/// group order whenever both sides have the same dimension. Use
/// [`GroupElement::lex_cmp`] when the dimensions are not known to agree.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement(Vec<Rational>);

impl GroupElement {
    pub fn new(coords: Vec<Rational>) -> Self {
        GroupElement(coords)
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        GroupElement(coords.iter().map(|&c| Rational::from(c)).collect())
    }

    pub fn zero(dim: usize) -> Self {
        GroupElement(vec![Rational::zero(); dim])
    }

    /// `(0,…,0,1,0,…,0)` with the one in position `axis`.
    pub fn unit(dim: usize, axis: usize) -> Self {
        let mut v = vec![Rational::zero(); dim];
        v[axis] = Rational::from(1);
        GroupElement(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn lex_cmp(&self, other: &Self) -> Result<Ordering> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                left: self.dim(),
                right: other.dim(),
            });
        }
        Ok(self.0.cmp(&other.0))
    }

    /// Sign of the element in the lexicographic order.
    pub fn signum(&self) -> Ordering {
        self.0
            .iter()
            .map(Rational::signum_ord)
            .find(|s| *s != Ordering::Equal)
            .unwrap_or(Ordering::Equal)
    }

    pub fn is_positive(&self) -> bool {
        self.signum() == Ordering::Greater
    }

    pub fn is_negative(&self) -> bool {
        self.signum() == Ordering::Less
    }

    /// Prepends `e` zero coordinates.
    pub fn pad_prefix(&self, e: usize) -> Self {
        let mut v = vec![Rational::zero(); e];
        v.extend(self.0.iter().cloned());
        GroupElement(v)
    }

    /// Appends `e` zero coordinates.
    pub fn pad_suffix(&self, e: usize) -> Self {
        let mut v = self.0.clone();
        v.extend(std::iter::repeat(Rational::zero()).take(e));
        GroupElement(v)
    }

    /// The first `e` coordinates.
    pub fn prefix(&self, e: usize) -> Self {
        GroupElement(self.0[..e].to_vec())
    }

    /// Drops the first `e` coordinates.
    pub fn drop_prefix(&self, e: usize) -> Self {
        GroupElement(self.0[e..].to_vec())
    }

    pub fn prefix_is_zero(&self, e: usize) -> bool {
        self.0[..e].iter().all(Zero::is_zero)
    }

    pub fn scale(&self, k: &Rational) -> Self {
        GroupElement(self.0.iter().map(|c| c * k).collect())
    }

    /// Division by a nonzero integer; the group is divisible.
    pub fn div_int(&self, n: i64) -> Result<Self> {
        if n == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self.scale(&Rational::new(1.into(), n.into())))
    }

    pub fn sum_coords(&self) -> Rational {
        self.0.iter().fold(Rational::zero(), |acc, c| acc + c)
    }

    /// Componentwise minimum.
    pub fn meet(&self, other: &Self) -> Self {
        GroupElement(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| if a <= b { a.clone() } else { b.clone() })
                .collect(),
        )
    }

    pub fn has_negative_coord(&self) -> bool {
        self.0.iter().any(Rational::is_negative)
    }
}

pub fn lex_cmp(a: &GroupElement, b: &GroupElement) -> Result<Ordering> {
    a.lex_cmp(b)
}

pub fn pad_prefix(a: &GroupElement, e: usize) -> GroupElement {
    a.pad_prefix(e)
}

impl Add for &GroupElement {
    type Output = GroupElement;

    fn add(self, rhs: &GroupElement) -> GroupElement {
        assert_eq!(self.dim(), rhs.dim(), "group elements of different dimension");
        GroupElement(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &GroupElement {
    type Output = GroupElement;

    fn sub(self, rhs: &GroupElement) -> GroupElement {
        assert_eq!(self.dim(), rhs.dim(), "group elements of different dimension");
        GroupElement(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &GroupElement {
    type Output = GroupElement;

    fn neg(self) -> GroupElement {
        GroupElement(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}
