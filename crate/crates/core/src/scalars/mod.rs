//! Ordered value groups and ordered coefficient fields.
//!
//! Value groups are `ℚ^d` under the lexicographic order ([`GroupElement`]).
//! Coefficient fields implement [`OrderedField`]; the two concrete fields are
//! [`Rational`] (plain `ℚ`) and [`Scalar`], the tower `ℚ(t_1,…,t_m)` in which
//! every generator is positive and infinitely large over the previous ones.

mod group;
mod ratfunc;
mod rational;
mod tower;
mod unipoly;

use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

pub use group::{lex_cmp, pad_prefix, GroupElement};
pub use rational::Rational;
pub use ratfunc::RatFunc;
pub use tower::Scalar;
pub use unipoly::UniPoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Neg,
    Zero,
    Pos,
}

impl Sign {
    pub fn from_ordering(ord: std::cmp::Ordering) -> Self {
        match ord {
            std::cmp::Ordering::Less => Sign::Neg,
            std::cmp::Ordering::Equal => Sign::Zero,
            std::cmp::Ordering::Greater => Sign::Pos,
        }
    }

    pub fn is_pos(self) -> bool {
        self == Sign::Pos
    }
}

impl Mul for Sign {
    type Output = Sign;

    fn mul(self, rhs: Sign) -> Sign {
        match (self, rhs) {
            (Sign::Zero, _) | (_, Sign::Zero) => Sign::Zero,
            (a, b) if a == b => Sign::Pos,
            _ => Sign::Neg,
        }
    }
}

impl Neg for Sign {
    type Output = Sign;

    fn neg(self) -> Sign {
        match self {
            Sign::Neg => Sign::Pos,
            Sign::Zero => Sign::Zero,
            Sign::Pos => Sign::Neg,
        }
    }
}

impl Display for Sign {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Sign::Neg => "neg",
            Sign::Zero => "zero",
            Sign::Pos => "pos",
        })
    }
}

/// A totally ordered field with exact arithmetic and decidable sign.
///
/// Equality must be decidable structurally, i.e. implementors keep a
/// canonical form.
pub trait OrderedField:
    Clone
    + Debug
    + Display
    + PartialEq
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Send
    + Sync
    + 'static
{
    fn sign(&self) -> Sign;

    /// The image of a rational under the prime-field embedding.
    fn from_rational(q: Rational) -> Self;

    /// `Some(q)` when the element lies in the prime field.
    fn to_rational(&self) -> Option<Rational>;

    /// The `index`-th transcendental generator (1-based), if the field has one.
    fn generator(_index: usize) -> Option<Self> {
        None
    }

    fn from_i64(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(n.into()))
    }

    fn inv(&self) -> Self {
        Self::one() / self.clone()
    }

    fn abs(&self) -> Self {
        if self.sign() == Sign::Neg {
            -self.clone()
        } else {
            self.clone()
        }
    }
}

impl OrderedField for Rational {
    fn sign(&self) -> Sign {
        if self.is_zero() {
            Sign::Zero
        } else if self.is_positive() {
            Sign::Pos
        } else {
            Sign::Neg
        }
    }

    fn from_rational(q: Rational) -> Self {
        q
    }

    fn to_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }

    fn inv(&self) -> Self {
        self.recip()
    }
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// `-3/7`, `5`, `1/2`
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: num_bigint::BigInt = num.parse().ok()?;
    let den: num_bigint::BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(Rational::new(num, den))
}

/// Scalar sign, matching the name used throughout the docs.
pub fn scalar_sign<F: OrderedField>(a: &F) -> Sign {
    a.sign()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_signs() {
        assert_eq!(scalar_sign(&int(0)), Sign::Zero);
        assert_eq!(scalar_sign(&rat(-3, 7)), Sign::Neg);
        assert_eq!(scalar_sign(&rat(1, 1_000_000)), Sign::Pos);
    }

    #[test]
    fn sign_algebra() {
        assert_eq!(Sign::Neg * Sign::Neg, Sign::Pos);
        assert_eq!(Sign::Neg * Sign::Zero, Sign::Zero);
        assert_eq!(-Sign::Pos, Sign::Neg);
    }

    #[test]
    fn parses_rationals() {
        assert_eq!(parse_rational("-3/7"), Some(rat(-3, 7)));
        assert_eq!(parse_rational("4/2"), Some(int(2)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
    }
}
