//! Exact arithmetic in `K_d = Frac(F[x^{ℚ^d}])`.
//!
//! `K_d` carries the valuation `ν` (lex-minimal exponent) and the order in
//! which an element is positive iff its leading coefficient is. Its valuation
//! ring `V_d = {ν ≥ 0}` has the prime chain `p_1 ⊂ … ⊂ p_d = 𝔪`, with
//! `p_e = {ν_e > 0}` where `ν_e` keeps the first `e` coordinates of `ν`.
//! [`ValElt::residue`] realizes `V_d → V_d/p_e ≅ V_{d−e}` and
//! [`ValElt::section`] is its canonical ring splitting.
//!
//! This is the finitely supported part of a Hahn field `F((ℚ^d))`: it has the
//! same value group and residue field, and its arithmetic is decidable.

mod genpoly;
mod parse;
pub mod random;
mod valelt;

pub use genpoly::GenPoly;
pub use parse::parse_val_elt;
pub use valelt::{ValElt, Valuation};

use crate::scalars::{OrderedField, Sign};

pub fn val<F: OrderedField>(a: &ValElt<F>) -> Valuation {
    a.val()
}

pub fn sign<F: OrderedField>(a: &ValElt<F>) -> Sign {
    a.sign()
}

/// `Some(q)` with `a·q = b`, `q ∈ V_d`, when `a` divides `b` in `V_d`.
pub fn divides<F: OrderedField>(a: &ValElt<F>, b: &ValElt<F>) -> Option<ValElt<F>> {
    a.divides(b)
}

pub fn residue<F: OrderedField>(a: &ValElt<F>, e: usize) -> crate::Result<ValElt<F>> {
    a.residue(e)
}

pub fn section<F: OrderedField>(a: &ValElt<F>, e: usize) -> ValElt<F> {
    a.section(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{int, rat, GroupElement, Rational, Scalar};

    type Q = ValElt<Rational>;

    fn p(s: &str, d: usize) -> Q {
        parse_val_elt(s, d).unwrap()
    }

    fn g(c: &[i64]) -> GroupElement {
        GroupElement::from_ints(c)
    }

    #[test]
    fn field_operation_examples() {
        assert_eq!(&p("1 + x^(1/2)", 1) * &p("1 - x^(1/2)", 1), p("1 - x", 1));
        let a = p("3*x^(1/2) + x^2", 1);
        assert_eq!(&a + &Q::zero(1), a);
        assert_eq!(
            &p("x^(0,1)", 2) * &p("x^(1,-3)", 2),
            Q::x_pow(g(&[1, -2]))
        );
    }

    #[test]
    fn dimension_mismatch() {
        assert!(p("x", 1).checked_add(&p("x^(0,1)", 2)).is_err());
        assert!(Q::zero(1).inverse().is_err());
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(
            val(&p("3*x^(1/2) + x^2", 1)),
            Valuation::Finite(GroupElement::new(vec![rat(1, 2)]))
        );
        assert_eq!(val(&Q::zero(1)), Valuation::Infinite);
        // x/(1+x): ν(num) − ν(den) = 1 − 0
        assert_eq!(val(&p("x/(1+x)", 1)), Valuation::Finite(g(&[1])));
    }

    #[test]
    fn sign_examples() {
        assert_eq!(sign(&p("-2*x^(1/3) + x", 1)), Sign::Neg);
        assert_eq!(sign(&Q::zero(1)), Sign::Zero);
        assert_eq!(sign(&p("(x - x^2)/(1+x)", 1)), Sign::Pos);
    }

    #[test]
    fn divides_examples() {
        let a = p("x + x^2", 1);
        let b = p("x", 1);
        let q = divides(&a, &b).unwrap();
        // cross-multiplied: q = 1/(1+x) means q·(1+x) = 1
        assert_eq!(&q * &p("1 + x", 1), Q::one(1));
        assert_eq!(&a * &q, b);
        assert!(divides(&Q::one(1), &p("5 + x^(1/2)", 1)).is_some());
        assert!(divides(&p("x", 1), &Q::one(1)).is_none());
        assert!(divides(&Q::zero(1), &Q::one(1)).is_none());
        assert_eq!(divides(&Q::zero(1), &Q::zero(1)), Some(Q::zero(1)));
    }

    #[test]
    fn residue_examples() {
        assert_eq!(residue(&p("x^(0,1) + x^(1,-3)", 2), 1).unwrap(), p("x", 1));
        assert_eq!(residue(&p("5 + x^(1/2)", 1), 1).unwrap(), Q::constant(int(5), 0));
        assert_eq!(residue(&p("x^(1,0)", 2), 1).unwrap(), Q::zero(1));
        assert!(residue(&p("x^(-1,5)", 2), 1).is_err());
        assert!(residue(&p("x", 1), 2).is_err());
    }

    #[test]
    fn residue_of_fraction() {
        // (x^(0,1) + x^(1,0)) / (1 + x^(1,1)) ↦ x / 1
        let a = p("(x^(0,1) + x^(1,0)) / (1 + x^(1,1))", 2);
        assert_eq!(residue(&a, 1).unwrap(), p("x", 1));
        let b = p("(1 + x^(0,1)) / (1 + x^(0,2) + x^(1,0))", 2);
        assert_eq!(residue(&b, 1).unwrap(), p("(1 + x)/(1 + x^2)", 1));
    }

    #[test]
    fn section_examples() {
        assert_eq!(section(&p("x", 1), 1), Q::x_pow(g(&[0, 1])));
        assert_eq!(section(&Q::zero(1), 2), Q::zero(3));
        assert_eq!(residue(&section(&p("1 + x", 1), 1), 1).unwrap(), p("1 + x", 1));
    }

    #[test]
    fn scalar_coefficients() {
        let a: ValElt<Scalar> = parse_val_elt("t1 + x", 1).unwrap();
        assert_eq!(a.residue(1).unwrap().as_constant(), Some(Scalar::t(1)));
        let b: ValElt<Scalar> = parse_val_elt("(t1 - 1000000)*x^(1/2) + x", 1).unwrap();
        assert_eq!(b.sign(), Sign::Pos);
    }

    #[test]
    fn display_round_trip() {
        for s in ["3*x^(1/2) + x^(2)", "(1 + x^(1))/(1 + x^(2))", "-x^(-1)", "0", "7/3"] {
            let a = p(s, 1);
            assert_eq!(p(&a.to_string(), 1), a, "{s}");
        }
    }
}
