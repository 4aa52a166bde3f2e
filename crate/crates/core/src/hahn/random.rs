//! Seeded samplers for exponents and elements of `V_d`.

use rand::Rng;

use super::{GenPoly, ValElt};
use crate::scalars::{rat, GroupElement, OrderedField, Rational};

const EXPONENT_POOL: [(i64, i64); 9] = [
    (-2, 1),
    (-1, 1),
    (-1, 2),
    (0, 1),
    (0, 1),
    (1, 3),
    (1, 2),
    (1, 1),
    (2, 1),
];

pub fn random_rational<R: Rng + ?Sized>(rng: &mut R) -> Rational {
    let n = rng.gen_range(-9..=9);
    let d = rng.gen_range(1..=4);
    rat(n, d)
}

pub fn random_nonzero_rational<R: Rng + ?Sized>(rng: &mut R) -> Rational {
    loop {
        let q = random_rational(rng);
        if q != rat(0, 1) {
            return q;
        }
    }
}

pub fn random_exponent<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> GroupElement {
    GroupElement::new(
        (0..dim)
            .map(|_| {
                let (n, d) = EXPONENT_POOL[rng.gen_range(0..EXPONENT_POOL.len())];
                rat(n, d)
            })
            .collect(),
    )
}

/// A random exponent `γ ≥ 0`.
pub fn random_nonneg_exponent<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> GroupElement {
    let g = random_exponent(rng, dim);
    if g.is_negative() {
        -&g
    } else {
        g
    }
}

/// A random exponent whose first `e` coordinates form a positive element.
pub fn random_prefix_positive_exponent<R: Rng + ?Sized>(
    rng: &mut R,
    dim: usize,
    e: usize,
) -> GroupElement {
    assert!(e >= 1 && e <= dim);
    loop {
        let g = random_exponent(rng, dim);
        match g.prefix(e).signum() {
            std::cmp::Ordering::Greater => return g,
            std::cmp::Ordering::Less => return -&g,
            std::cmp::Ordering::Equal => continue,
        }
    }
}

fn random_poly<R: Rng + ?Sized, F: OrderedField>(
    rng: &mut R,
    dim: usize,
    terms: usize,
    exponent: impl Fn(&mut R) -> GroupElement,
) -> GenPoly<F> {
    GenPoly::from_terms(
        dim,
        (0..terms).map(|_| (exponent(rng), F::from_rational(random_nonzero_rational(rng)))),
    )
}

/// A random element of `K_d` with up to `size` numerator terms, possibly
/// with negative valuation.
pub fn random_field_elt<R: Rng + ?Sized, F: OrderedField>(
    rng: &mut R,
    dim: usize,
    size: usize,
) -> ValElt<F> {
    let terms = rng.gen_range(0..=size.max(1));
    let num = random_poly(rng, dim, terms, |r| random_exponent(r, dim));
    let den = if dim > 0 && rng.gen_bool(0.3) {
        let terms = rng.gen_range(1..=2);
        random_poly(rng, dim, terms, |r| random_exponent(r, dim))
    } else {
        GenPoly::one(dim)
    };
    if den.is_zero() {
        return ValElt::from_poly(num);
    }
    ValElt::fraction(num, den).expect("nonzero denominator")
}

/// A random unit-denominator fraction: `1 + (terms of positive valuation)`.
fn random_unit_den<R: Rng + ?Sized, F: OrderedField>(rng: &mut R, dim: usize) -> GenPoly<F> {
    let mut den = GenPoly::one(dim);
    let extra = rng.gen_range(1..=2);
    for _ in 0..extra {
        let e = loop {
            let g = random_nonneg_exponent(rng, dim);
            if !g.is_zero() {
                break g;
            }
        };
        den = den.add(&GenPoly::monomial(e, F::from_rational(random_nonzero_rational(rng))));
    }
    den
}

/// A random element of `V_d`. `size = 0` gives a random rational constant.
pub fn random_ring_elt<R: Rng + ?Sized, F: OrderedField>(
    rng: &mut R,
    dim: usize,
    size: usize,
) -> ValElt<F> {
    if size == 0 || dim == 0 {
        return ValElt::constant(F::from_rational(random_rational(rng)), dim);
    }
    let terms = rng.gen_range(1..=size);
    let num = random_poly(rng, dim, terms, |r| random_nonneg_exponent(r, dim));
    if rng.gen_bool(0.2) {
        let den = random_unit_den(rng, dim);
        ValElt::fraction(num, den).expect("nonzero denominator")
    } else {
        ValElt::from_poly(num)
    }
}

/// A random element of `p_e ⊆ V_d` (`ν_e > 0`), possibly zero.
pub fn random_prime_elt<R: Rng + ?Sized, F: OrderedField>(
    rng: &mut R,
    dim: usize,
    e: usize,
    size: usize,
) -> ValElt<F> {
    if size == 0 || rng.gen_bool(0.1) {
        return ValElt::zero(dim);
    }
    let shift = ValElt::x_pow(random_prefix_positive_exponent(rng, dim, e));
    let base = random_ring_elt(rng, dim, size);
    let base = if base.is_zero() { ValElt::one(dim) } else { base };
    &shift * &base
}
