use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::GenPoly;
use crate::error::{Error, Result};
use crate::scalars::{GroupElement, OrderedField, Sign};

/// A value in `ℚ^d ∪ {∞}`. `Infinite` sorts above every finite value.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(GroupElement),
    Infinite,
}

impl Valuation {
    pub fn finite(&self) -> Option<&GroupElement> {
        match self {
            Valuation::Finite(g) => Some(g),
            Valuation::Infinite => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Valuation::Infinite)
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(g) => write!(f, "{g}"),
            Valuation::Infinite => f.write_str("inf"),
        }
    }
}

/// An element of `K_d`, the fraction field of the group algebra `F[x^{ℚ^d}]`,
/// with the valuation `ν(P/Q) = ν(P) − ν(Q)`.
///
/// Normal form: the denominator has valuation `0` and its lowest term is
/// exactly `1`; when the denominator divides the numerator it is `1`. Fractions
/// are not reduced by a gcd, so equality is decided by cross-multiplication.
#[derive(Clone, Debug)]
pub struct ValElt<F> {
    num: GenPoly<F>,
    den: GenPoly<F>,
}

impl<F: OrderedField> ValElt<F> {
    pub fn zero(dim: usize) -> Self {
        ValElt {
            num: GenPoly::zero(dim),
            den: GenPoly::one(dim),
        }
    }

    pub fn one(dim: usize) -> Self {
        Self::constant(F::one(), dim)
    }

    pub fn constant(c: F, dim: usize) -> Self {
        Self::from_poly(GenPoly::constant(c, dim))
    }

    /// The monomial `c·x^γ`.
    pub fn monomial(exp: GroupElement, c: F) -> Self {
        Self::from_poly(GenPoly::monomial(exp, c))
    }

    /// `x^γ`.
    pub fn x_pow(exp: GroupElement) -> Self {
        Self::monomial(exp, F::one())
    }

    pub fn from_poly(p: GenPoly<F>) -> Self {
        let dim = p.dim();
        ValElt {
            num: p,
            den: GenPoly::one(dim),
        }
    }

    /// `num/den`; fails on a zero denominator.
    pub fn fraction(num: GenPoly<F>, den: GenPoly<F>) -> Result<Self> {
        if num.dim() != den.dim() {
            return Err(Error::DimensionMismatch {
                left: num.dim(),
                right: den.dim(),
            });
        }
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: GenPoly<F>, den: GenPoly<F>) -> Self {
        let dim = num.dim();
        if num.is_zero() {
            return Self::zero(dim);
        }
        let (shift, lead) = {
            let (e, c) = den.lowest_term().expect("nonzero denominator");
            (-e, c.inv())
        };
        let mut num = num.shift(&shift).scale(&lead);
        let mut den = den.shift(&shift).scale(&lead);
        if !den.is_monomial() {
            if let Some(q) = num.exact_div(&den) {
                num = q;
                den = GenPoly::one(dim);
            }
        }
        ValElt { num, den }
    }

    pub fn dim(&self) -> usize {
        self.num.dim()
    }

    pub fn numerator(&self) -> &GenPoly<F> {
        &self.num
    }

    pub fn denominator(&self) -> &GenPoly<F> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_monomial()
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                left: self.dim(),
                right: other.dim(),
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        if self.den == other.den {
            return Ok(Self::normalized(self.num.add(&other.num), self.den.clone()));
        }
        Ok(Self::normalized(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        ))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.neg_ref())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.dim()));
        }
        if self.den.is_monomial() && other.den.is_monomial() {
            return Ok(Self::from_poly(self.num.mul(&other.num)));
        }
        Ok(Self::normalized(
            self.num.mul(&other.num),
            self.den.mul(&other.den),
        ))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.checked_mul(&other.inverse()?)
    }

    fn neg_ref(&self) -> Self {
        ValElt {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(self.den.clone(), self.num.clone()))
    }

    pub fn scale(&self, k: &F) -> Self {
        if k.is_zero() {
            return Self::zero(self.dim());
        }
        ValElt {
            num: self.num.scale(k),
            den: self.den.clone(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(self.dim());
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// `ν(a)`; the denominator has valuation zero in normal form.
    pub fn val(&self) -> Valuation {
        match self.num.val() {
            Some(g) => Valuation::Finite(g.clone()),
            None => Valuation::Infinite,
        }
    }

    /// Sign in the order where `a > 0` iff its leading coefficient is positive.
    pub fn sign(&self) -> Sign {
        match self.num.lowest_term() {
            Some((_, c)) => c.sign(),
            None => Sign::Zero,
        }
    }

    /// The leading coefficient `a_{ν(a)}` (numerator over the denominator's
    /// constant term, which is one).
    pub fn leading_coeff(&self) -> F {
        self.num
            .lowest_term()
            .map(|(_, c)| c.clone())
            .unwrap_or_else(F::zero)
    }

    pub fn cmp_order(&self, other: &Self) -> Ordering {
        match (self - other).sign() {
            Sign::Neg => Ordering::Less,
            Sign::Zero => Ordering::Equal,
            Sign::Pos => Ordering::Greater,
        }
    }

    /// Membership in `V_d = {ν ≥ 0}`.
    pub fn in_valuation_ring(&self) -> bool {
        match self.num.val() {
            Some(g) => !g.is_negative(),
            None => true,
        }
    }

    /// Unit of `V_d`: `ν = 0`.
    pub fn is_unit(&self) -> bool {
        self.num.val().is_some_and(GroupElement::is_zero)
    }

    /// Membership in the prime `p_e = {ν_e > 0}` of `V_d`, where `ν_e` is the
    /// first `e` coordinates of `ν`. `p_0 = (0)`.
    pub fn in_prime(&self, e: usize) -> bool {
        match self.num.val() {
            Some(g) => e > 0 && g.prefix(e).is_positive(),
            None => true,
        }
    }

    /// Divisibility in `V_d`: `Some(q)` with `self·q = b` and `q ∈ V_d`.
    pub fn divides(&self, b: &Self) -> Option<Self> {
        if b.is_zero() {
            return Some(Self::zero(self.dim()));
        }
        if self.is_zero() || self.val() > b.val() {
            return None;
        }
        Some(b.checked_div(self).expect("nonzero divisor"))
    }

    /// The residue map `V_d → V_d/p_e ≅ V_{d−e}` (defined on `ν_e ≥ 0`).
    pub fn residue(&self, e: usize) -> Result<Self> {
        let d = self.dim();
        if e > d {
            return Err(Error::DepthOutOfRange { depth: e, dim: d });
        }
        if e == 0 {
            return Ok(self.clone());
        }
        let Some(v) = self.num.val() else {
            return Ok(Self::zero(d - e));
        };
        match v.prefix(e).signum() {
            Ordering::Greater => Ok(Self::zero(d - e)),
            Ordering::Less => Err(Error::OutsideLocalRing { depth: e }),
            Ordering::Equal => Ok(Self::normalized(
                self.num.prefix_zero_part(e),
                self.den.prefix_zero_part(e),
            )),
        }
    }

    /// The canonical splitting `K_{d} → K_{d+e}` of the residue map: pads every
    /// exponent with `e` leading zeros.
    pub fn section(&self, e: usize) -> Self {
        let d = self.dim() + e;
        ValElt {
            num: self.num.map_exponents(d, |g| g.pad_prefix(e)),
            den: self.den.map_exponents(d, |g| g.pad_prefix(e)),
        }
    }

    /// Pads every exponent with `e` trailing zeros (a new infinitesimal axis).
    pub fn extend_trailing(&self, e: usize) -> Self {
        let d = self.dim() + e;
        ValElt {
            num: self.num.map_exponents(d, |g| g.pad_suffix(e)),
            den: self.den.map_exponents(d, |g| g.pad_suffix(e)),
        }
    }

    pub fn map_coeffs<G: OrderedField>(&self, f: impl Fn(&F) -> G) -> ValElt<G> {
        ValElt::normalized(self.num.map_coeffs(&f), self.den.map_coeffs(&f))
    }

    /// The coefficient of `x^0` for a constant element.
    pub fn as_constant(&self) -> Option<F> {
        if self.is_zero() {
            return Some(F::zero());
        }
        let (e, c) = self.num.lowest_term()?;
        (self.num.is_monomial() && self.den.is_monomial() && e.is_zero()).then(|| c.clone())
    }
}

impl<F: OrderedField> PartialEq for ValElt<F> {
    fn eq(&self, other: &Self) -> bool {
        if self.dim() != other.dim() {
            return false;
        }
        if self.den == other.den {
            return self.num == other.num;
        }
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }
}

impl<F: OrderedField> fmt::Display for ValElt<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_monomial() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl<F: OrderedField> Add for &ValElt<F> {
    type Output = ValElt<F>;

    fn add(self, rhs: &ValElt<F>) -> ValElt<F> {
        self.checked_add(rhs).expect("dimension mismatch in addition")
    }
}

impl<F: OrderedField> Sub for &ValElt<F> {
    type Output = ValElt<F>;

    fn sub(self, rhs: &ValElt<F>) -> ValElt<F> {
        self.checked_sub(rhs).expect("dimension mismatch in subtraction")
    }
}

impl<F: OrderedField> Mul for &ValElt<F> {
    type Output = ValElt<F>;

    fn mul(self, rhs: &ValElt<F>) -> ValElt<F> {
        self.checked_mul(rhs).expect("dimension mismatch in multiplication")
    }
}

impl<F: OrderedField> Neg for &ValElt<F> {
    type Output = ValElt<F>;

    fn neg(self) -> ValElt<F> {
        self.neg_ref()
    }
}

impl<F: OrderedField> Add for ValElt<F> {
    type Output = ValElt<F>;

    fn add(self, rhs: ValElt<F>) -> ValElt<F> {
        &self + &rhs
    }
}

impl<F: OrderedField> Sub for ValElt<F> {
    type Output = ValElt<F>;

    fn sub(self, rhs: ValElt<F>) -> ValElt<F> {
        &self - &rhs
    }
}

impl<F: OrderedField> Mul for ValElt<F> {
    type Output = ValElt<F>;

    fn mul(self, rhs: ValElt<F>) -> ValElt<F> {
        &self * &rhs
    }
}

impl<F: OrderedField> Neg for ValElt<F> {
    type Output = ValElt<F>;

    fn neg(self) -> ValElt<F> {
        self.neg_ref()
    }
}
