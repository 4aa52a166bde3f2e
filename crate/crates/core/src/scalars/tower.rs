use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};

use super::{OrderedField, RatFunc, Rational, Sign, UniPoly};

/// An element of `ℚ(t_1,…,t_m)` for any `m`.
///
/// Stored as a tower: an element that genuinely involves `t_k` (and no later
/// generator) is a rational function in `t_k` whose coefficients involve only
/// `t_1,…,t_{k-1}`. Each `t_k` is positive and infinitely large over
/// `ℚ(t_1,…,t_{k-1})`, so the sign of an element is the sign of the leading
/// coefficient of its numerator, recursively.
///
/// Constants are always collapsed to the lowest level, which makes the
/// representation canonical and structural equality sound.
#[derive(Clone, Debug, PartialEq)]
pub enum Scalar {
    Rat(Rational),
    Func {
        level: usize,
        value: Arc<RatFunc<Scalar>>,
    },
}

impl Scalar {
    pub fn rational(q: Rational) -> Self {
        Scalar::Rat(q)
    }

    /// The generator `t_k`, `k ≥ 1`.
    pub fn t(k: usize) -> Self {
        assert!(k >= 1, "generators are numbered from 1");
        Scalar::Func {
            level: k,
            value: Arc::new(RatFunc::var()),
        }
    }

    /// Index of the last generator the element involves; `0` for rationals.
    pub fn level(&self) -> usize {
        match self {
            Scalar::Rat(_) => 0,
            Scalar::Func { level, .. } => *level,
        }
    }

    fn at_level(&self, k: usize) -> RatFunc<Scalar> {
        match self {
            Scalar::Func { level, value } if *level == k => (**value).clone(),
            _ => RatFunc::constant(self.clone()),
        }
    }

    fn from_func(k: usize, f: RatFunc<Scalar>) -> Self {
        match f.as_constant() {
            Some(c) => c,
            None => Scalar::Func {
                level: k,
                value: Arc::new(f),
            },
        }
    }

    fn combine(
        self,
        rhs: Scalar,
        on_rat: impl FnOnce(Rational, Rational) -> Rational,
        on_func: impl FnOnce(&RatFunc<Scalar>, &RatFunc<Scalar>) -> RatFunc<Scalar>,
    ) -> Scalar {
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(on_rat(a, b)),
            (a, b) => {
                let k = a.level().max(b.level());
                Scalar::from_func(k, on_func(&a.at_level(k), &b.at_level(k)))
            }
        }
    }

    /// Substitutes rationals for every generator, `values[k-1]` for `t_k`.
    /// Returns `None` when a denominator vanishes.
    pub fn evaluate(&self, values: &[Rational]) -> Option<Rational> {
        match self {
            Scalar::Rat(q) => Some(q.clone()),
            Scalar::Func { level, value } => {
                let t = values.get(level - 1)?.clone();
                let eval = |p: &UniPoly<Scalar>| -> Option<Rational> {
                    let mut acc = Rational::zero();
                    for c in p.coeffs().iter().rev() {
                        acc = acc * t.clone() + c.evaluate(values)?;
                    }
                    Some(acc)
                };
                let d = eval(value.den())?;
                if d.is_zero() {
                    return None;
                }
                Some(eval(value.num())? / d)
            }
        }
    }
}

impl From<Rational> for Scalar {
    fn from(q: Rational) -> Self {
        Scalar::Rat(q)
    }
}

impl Zero for Scalar {
    fn zero() -> Self {
        Scalar::Rat(Rational::zero())
    }

    fn is_zero(&self) -> bool {
        matches!(self, Scalar::Rat(q) if q.is_zero())
    }
}

impl One for Scalar {
    fn one() -> Self {
        Scalar::Rat(Rational::one())
    }
}

impl Add for Scalar {
    type Output = Scalar;

    fn add(self, rhs: Scalar) -> Scalar {
        self.combine(rhs, |a, b| a + b, |a, b| a.add(b))
    }
}

impl Sub for Scalar {
    type Output = Scalar;

    fn sub(self, rhs: Scalar) -> Scalar {
        self.combine(rhs, |a, b| a - b, |a, b| a.sub(b))
    }
}

impl Mul for Scalar {
    type Output = Scalar;

    fn mul(self, rhs: Scalar) -> Scalar {
        self.combine(rhs, |a, b| a * b, |a, b| a.mul(b))
    }
}

impl Div for Scalar {
    type Output = Scalar;

    fn div(self, rhs: Scalar) -> Scalar {
        assert!(!rhs.is_zero(), "scalar division by zero");
        self.combine(rhs, |a, b| a / b, |a, b| a.div(b))
    }
}

impl Neg for Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        match self {
            Scalar::Rat(q) => Scalar::Rat(-q),
            Scalar::Func { level, value } => Scalar::Func {
                level,
                value: Arc::new(value.neg()),
            },
        }
    }
}

impl OrderedField for Scalar {
    fn sign(&self) -> Sign {
        match self {
            Scalar::Rat(q) => q.sign(),
            Scalar::Func { value, .. } => value.sign(),
        }
    }

    fn from_rational(q: Rational) -> Self {
        Scalar::Rat(q)
    }

    fn to_rational(&self) -> Option<Rational> {
        match self {
            Scalar::Rat(q) => Some(q.clone()),
            Scalar::Func { .. } => None,
        }
    }

    fn generator(index: usize) -> Option<Self> {
        (index >= 1).then(|| Scalar::t(index))
    }
}

fn fmt_poly(p: &UniPoly<Scalar>, var: &str, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let mut first = true;
    for (deg, c) in p.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let mono = match deg {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{deg}"),
        };
        match c.to_rational() {
            Some(q) => {
                let neg = q < Rational::zero();
                let abs = if neg { -q } else { q };
                if first {
                    if neg {
                        f.write_str("-")?;
                    }
                } else {
                    f.write_str(if neg { " - " } else { " + " })?;
                }
                if mono.is_empty() {
                    write!(f, "{abs}")?;
                } else if abs.is_one() {
                    f.write_str(&mono)?;
                } else {
                    write!(f, "{abs}*{mono}")?;
                }
            }
            None => {
                if !first {
                    f.write_str(" + ")?;
                }
                if mono.is_empty() {
                    write!(f, "({c})")?;
                } else {
                    write!(f, "({c})*{mono}")?;
                }
            }
        }
        first = false;
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(q) => write!(f, "{q}"),
            Scalar::Func { level, value } => {
                let var = format!("t{level}");
                if value.den().is_one() {
                    fmt_poly(value.num(), &var, f)
                } else {
                    f.write_str("(")?;
                    fmt_poly(value.num(), &var, f)?;
                    f.write_str(")/(")?;
                    fmt_poly(value.den(), &var, f)?;
                    f.write_str(")")
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::int;

    fn q(n: i64) -> Scalar {
        Scalar::from_i64(n)
    }

    #[test]
    fn constants_collapse() {
        let t = Scalar::t(1);
        assert_eq!(t.clone() - t.clone(), q(0));
        assert_eq!((t.clone() * q(3)) / t.clone(), q(3));
        assert_eq!((t.clone() + q(1)).level(), 1);
    }

    #[test]
    fn generator_dominates() {
        let a = Scalar::t(1) - q(1_000_000);
        assert_eq!(a.sign(), Sign::Pos);
        let b = Scalar::t(1) - Scalar::t(2);
        assert_eq!(b.sign(), Sign::Neg);
        let c = (Scalar::t(1) * Scalar::t(1) * q(-1)) + Scalar::t(2);
        assert_eq!(c.sign(), Sign::Pos);
        let d = q(1) / (q(-2) * Scalar::t(1) + q(5));
        assert_eq!(d.sign(), Sign::Neg);
    }

    #[test]
    fn mixed_levels() {
        let t1 = Scalar::t(1);
        let t2 = Scalar::t(2);
        let x = (t1.clone() + t2.clone()) * (t1.clone() - t2.clone());
        let y = t1.clone() * t1.clone() - t2.clone() * t2.clone();
        assert_eq!(x, y);
        let r = x / (t1.clone() - t2.clone());
        assert_eq!(r, t1 + t2);
    }

    #[test]
    fn evaluation() {
        let e = (Scalar::t(1) + q(1)) / (Scalar::t(2) - q(2));
        assert_eq!(e.evaluate(&[int(3), int(4)]), Some(int(2)));
        assert_eq!(e.evaluate(&[int(3), int(2)]), None);
    }

    #[test]
    fn display() {
        let e = Scalar::t(1) * Scalar::t(1) - q(3) * Scalar::t(1) + q(2);
        assert_eq!(e.to_string(), "t1^2 - 3*t1 + 2");
        let f = q(1) / (Scalar::t(2) + Scalar::t(1));
        assert_eq!(f.to_string(), "(1)/(t2 + (t1))");
    }
}
