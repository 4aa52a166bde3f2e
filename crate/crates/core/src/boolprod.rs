//! Products of valuation rings over a finite discrete space and the
//! witness `c` with `(a − cb)(b − ca) = 0`.

use std::fmt;

use rand::Rng;

use crate::analysis::{Check, SampleConfig};
use crate::error::{Error, Result};
use crate::hahn::random::random_ring_elt;
use crate::hahn::ValElt;
use crate::scalars::OrderedField;

const SALT_WITNESS: u64 = 61;

/// Where a point falls: `a | b` only, `b | a` only, or both.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Part {
    U,
    V,
    W,
}

impl fmt::Display for Part {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Part::U => "U",
            Part::V => "V",
            Part::W => "W",
        })
    }
}

/// `c` together with the partition `X = U ∪ V ∪ W` it was built from.
#[derive(Clone, Debug)]
pub struct Witness<F: OrderedField> {
    pub c: Vec<ValElt<F>>,
    pub partition: Vec<Part>,
}

/// Stalk dimensions of a product `∏_{x ∈ X} V_{d(x)}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoolProduct {
    dims: Vec<usize>,
}

impl BoolProduct {
    pub fn new(dims: Vec<usize>) -> Self {
        BoolProduct { dims }
    }

    pub fn points(&self) -> usize {
        self.dims.len()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    fn check_section<F: OrderedField>(&self, name: &str, s: &[ValElt<F>]) -> Result<()> {
        if s.len() != self.points() {
            return Err(Error::ComponentCount {
                expected: self.points(),
                got: s.len(),
            });
        }
        for (x, (v, &d)) in s.iter().zip(&self.dims).enumerate() {
            if v.dim() != d {
                return Err(Error::DimensionMismatch { left: v.dim(), right: d });
            }
            if !v.in_valuation_ring() {
                return Err(Error::NotInValuationRing {
                    leaf: format!("{name}@{}", x + 1),
                });
            }
        }
        Ok(())
    }

    /// Builds `c` point by point: `b/a` on `U`, `a/b` on `V` and `W` (`0`
    /// where both vanish).
    pub fn sv_witness<F: OrderedField>(&self, a: &[ValElt<F>], b: &[ValElt<F>]) -> Result<Witness<F>> {
        self.check_section("a", a)?;
        self.check_section("b", b)?;
        let mut c = Vec::with_capacity(self.points());
        let mut partition = Vec::with_capacity(self.points());
        for (ax, bx) in a.iter().zip(b) {
            let (part, cx) = match (ax.divides(bx), bx.divides(ax)) {
                (Some(q), None) => (Part::U, q),
                (None, Some(q)) => (Part::V, q),
                (Some(_), Some(q)) => (Part::W, q),
                (None, None) => unreachable!("divisibility in a valuation ring is total"),
            };
            partition.push(part);
            c.push(cx);
        }
        Ok(Witness { c, partition })
    }
}

impl<F: OrderedField> Witness<F> {
    /// `(a − cb)(b − ca) = 0` at every point, with `c` integral and the
    /// partition matching the divisibility tests.
    pub fn verify(&self, a: &[ValElt<F>], b: &[ValElt<F>]) -> Check {
        for (x, ((ax, bx), cx)) in a.iter().zip(b).zip(&self.c).enumerate() {
            if !cx.in_valuation_ring() {
                return Check::fail(format!("c is not integral at point {}", x + 1));
            }
            let lhs = ax - &(cx * bx);
            let rhs = bx - &(cx * ax);
            if !(&lhs * &rhs).is_zero() {
                return Check::fail(format!("identity fails at point {}: a = {ax}, b = {bx}, c = {cx}", x + 1));
            }
            let expected = match (ax.divides(bx).is_some(), bx.divides(ax).is_some()) {
                (true, false) => Part::U,
                (false, true) => Part::V,
                _ => Part::W,
            };
            if self.partition[x] != expected {
                return Check::fail(format!("point {} is in {} but should be in {expected}", x + 1, self.partition[x]));
            }
        }
        Check::pass(format!("identity holds at {} points", a.len()))
    }

    pub fn part(&self, p: Part) -> Vec<usize> {
        (0..self.partition.len()).filter(|&x| self.partition[x] == p).collect()
    }
}

fn sample_stalk<F: OrderedField, R: Rng + ?Sized>(rng: &mut R, d: usize, size: usize, other: Option<&ValElt<F>>) -> ValElt<F> {
    let fresh = random_ring_elt(rng, d, size);
    match (other, rng.gen_range(0..10)) {
        (_, 0) => ValElt::zero(d),
        (Some(o), 1) => o.clone(),
        (Some(o), 2) => o * &fresh,
        _ => fresh,
    }
}

/// A random pair of sections, biased towards zeros, equal stalks and
/// multiples.
pub fn sample_pair<F: OrderedField, R: Rng + ?Sized>(
    rng: &mut R,
    prod: &BoolProduct,
    size: usize,
) -> (Vec<ValElt<F>>, Vec<ValElt<F>>) {
    let a: Vec<ValElt<F>> = prod.dims().iter().map(|&d| sample_stalk(rng, d, size, None)).collect();
    let b = prod
        .dims()
        .iter()
        .zip(&a)
        .map(|(&d, ax)| sample_stalk(rng, d, size, Some(ax)))
        .collect();
    (a, b)
}

/// The witness identity on `cfg.trials` random pairs over `points` points
/// (random in `1..=6` when `None`) with stalk dimensions in `1..=3`.
pub fn witness_check<F: OrderedField>(points: Option<usize>, cfg: &SampleConfig) -> Check {
    let mut rng = cfg.rng(SALT_WITNESS);
    let mut seen = [0usize; 3];
    for _ in 0..cfg.trials {
        let k = points.unwrap_or_else(|| rng.gen_range(1..=6));
        let prod = BoolProduct::new((0..k).map(|_| rng.gen_range(1..=3)).collect());
        let (a, b) = sample_pair::<F, _>(&mut rng, &prod, cfg.size);
        let w = match prod.sv_witness(&a, &b) {
            Ok(w) => w,
            Err(e) => return Check::fail(e.to_string()),
        };
        let c = w.verify(&a, &b);
        if !c.passed {
            return c;
        }
        for p in &w.partition {
            seen[*p as usize] += 1;
        }
    }
    Check::pass(format!(
        "{} pairs; points in U/V/W: {}/{}/{}",
        cfg.trials, seen[0], seen[1], seen[2]
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hahn::parse_val_elt;
    use crate::scalars::Rational;

    fn q(s: &str) -> ValElt<Rational> {
        parse_val_elt(s, 1).unwrap()
    }

    #[test]
    fn two_point_example() {
        let prod = BoolProduct::new(vec![1, 1]);
        let (a, b) = (vec![q("x"), q("1")], vec![q("1"), q("x")]);
        let w = prod.sv_witness(&a, &b).unwrap();
        assert_eq!(w.c, vec![q("x"), q("x")]);
        assert_eq!(w.partition, vec![Part::V, Part::U]);
        // direct evaluation of both factors
        let lhs: Vec<_> = (0..2).map(|i| &a[i] - &(&w.c[i] * &b[i])).collect();
        let rhs: Vec<_> = (0..2).map(|i| &b[i] - &(&w.c[i] * &a[i])).collect();
        assert_eq!(lhs, vec![q("0"), q("1 - x^2")]);
        assert_eq!(rhs, vec![q("1 - x^2"), q("0")]);
        assert!(w.verify(&a, &b).passed);
    }

    #[test]
    fn equal_and_zero() {
        let prod = BoolProduct::new(vec![1, 1, 1]);
        let a = vec![q("x"), q("2 + x"), q("x^(1/2)")];
        let w = prod.sv_witness(&a, &a).unwrap();
        assert_eq!(w.part(Part::W), vec![0, 1, 2]);
        assert!(w.c.iter().all(|c| c == &q("1")));

        let zero = vec![q("0"); 3];
        let w = prod.sv_witness(&zero, &a).unwrap();
        assert!(w.c.iter().all(ValElt::is_zero));
        assert_eq!(w.part(Part::V), vec![0, 1, 2]);
        assert!(w.verify(&zero, &a).passed);
        let w = prod.sv_witness(&zero, &zero).unwrap();
        assert_eq!(w.part(Part::W), vec![0, 1, 2]);
        assert!(w.c.iter().all(ValElt::is_zero));
    }

    #[test]
    fn invalid_sections_rejected() {
        let prod = BoolProduct::new(vec![1]);
        assert!(prod.sv_witness(&[q("x^(-1)")], &[q("1")]).is_err());
        assert!(prod.sv_witness(&[q("1"), q("1")], &[q("1")]).is_err());
    }

    #[test]
    fn random_pairs() {
        assert!(witness_check::<Rational>(None, &SampleConfig::with_trials(200)).passed);
    }
}
