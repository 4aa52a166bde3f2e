//! Text syntax for elements of `K_d`.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary)*
//! unary   := '-' unary | power
//! power   := atom ('^' exponent)?
//! atom    := integer | 'x' | 't' digits | '(' expr ')'
//! ```
//!
//! After `x` the exponent is a parenthesised list of `d` rationals, e.g.
//! `x^(1/2,-3)`; in dimension one a bare integer is accepted too (`x^2`), and
//! `x` alone means `x^(1)`. Every other exponent is an integer. Rational
//! coefficients are written as quotients: `3/2*x^(1)`.

use num_bigint::BigInt;

use super::ValElt;
use crate::scalars::{GroupElement, OrderedField, Rational};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    X,
    T(usize),
    Sym(char),
}

fn tokenize(s: &str) -> Result<Vec<Tok>, String> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            out.push(Tok::Int(digits.parse().map_err(|_| "bad integer".to_string())?));
        } else if c == 'x' {
            out.push(Tok::X);
            i += 1;
        } else if c == 't' {
            i += 1;
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            if start == i {
                return Err("expected generator index after `t`".into());
            }
            let digits: String = chars[start..i].iter().collect();
            out.push(Tok::T(digits.parse().map_err(|_| "bad generator index".to_string())?));
        } else if "+-*/^(),".contains(c) {
            out.push(Tok::Sym(c));
            i += 1;
        } else {
            return Err(format!("unexpected character `{c}`"));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: &'a [Tok],
    pos: usize,
    dim: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), String> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(format!("expected `{c}`"))
        }
    }

    fn expr<F: OrderedField>(&mut self) -> Result<ValElt<F>, String> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term<F: OrderedField>(&mut self) -> Result<ValElt<F>, String> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.unary()?;
            } else if self.eat('/') {
                let d = self.unary()?;
                acc = acc.checked_div(&d).map_err(|e| e.to_string())?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary<F: OrderedField>(&mut self) -> Result<ValElt<F>, String> {
        if self.eat('-') {
            return Ok(-self.unary::<F>()?);
        }
        self.power()
    }

    fn signed_int(&mut self) -> Result<BigInt, String> {
        let neg = self.eat('-');
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok(if neg { -n } else { n })
            }
            _ => Err("expected integer".into()),
        }
    }

    fn rational(&mut self) -> Result<Rational, String> {
        let n = self.signed_int()?;
        if self.eat('/') {
            let d = self.signed_int()?;
            if d == BigInt::from(0) {
                return Err("zero denominator in exponent".into());
            }
            Ok(Rational::new(n, d))
        } else {
            Ok(Rational::from_integer(n))
        }
    }

    fn small_int(&mut self) -> Result<i64, String> {
        let n = self.signed_int()?;
        i64::try_from(n).map_err(|_| "exponent too large".to_string())
    }

    fn power<F: OrderedField>(&mut self) -> Result<ValElt<F>, String> {
        let d = self.dim;
        match self.peek().cloned() {
            Some(Tok::X) => {
                self.pos += 1;
                if d == 0 {
                    return Err("`x` used in dimension 0".into());
                }
                let exp = if self.eat('^') {
                    if self.eat('(') {
                        let mut coords = vec![self.rational()?];
                        while self.eat(',') {
                            coords.push(self.rational()?);
                        }
                        self.expect(')')?;
                        if coords.len() != d {
                            return Err(format!(
                                "exponent has {} coordinates, expected {d}",
                                coords.len()
                            ));
                        }
                        GroupElement::new(coords)
                    } else if d == 1 {
                        GroupElement::new(vec![Rational::from_integer(self.signed_int()?)])
                    } else {
                        return Err("exponent must be a parenthesised vector".into());
                    }
                } else if d == 1 {
                    GroupElement::from_ints(&[1])
                } else {
                    return Err("bare `x` is only allowed in dimension 1".into());
                };
                Ok(ValElt::x_pow(exp))
            }
            _ => {
                let base = self.atom::<F>()?;
                if self.eat('^') {
                    let n = self.small_int()?;
                    let p = base.pow(n.unsigned_abs() as u32);
                    if n < 0 {
                        return p.inverse().map_err(|e| e.to_string());
                    }
                    return Ok(p);
                }
                Ok(base)
            }
        }
    }

    fn atom<F: OrderedField>(&mut self) -> Result<ValElt<F>, String> {
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok(ValElt::constant(F::from_rational(Rational::from_integer(n)), self.dim))
            }
            Some(Tok::T(k)) => {
                self.pos += 1;
                let g = F::generator(k)
                    .ok_or_else(|| format!("coefficient field has no generator t{k}"))?;
                Ok(ValElt::constant(g, self.dim))
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(t) => Err(format!("unexpected token {t:?}")),
            None => Err("unexpected end of input".into()),
        }
    }
}

/// Parses an element of `K_dim`.
pub fn parse_val_elt<F: OrderedField>(s: &str, dim: usize) -> Result<ValElt<F>, String> {
    let toks = tokenize(s)?;
    if toks.is_empty() {
        return Err("empty expression".into());
    }
    let mut p = Parser {
        toks: &toks,
        pos: 0,
        dim,
    };
    let e = p.expr()?;
    if p.pos != toks.len() {
        return Err(format!("trailing input at token {:?}", toks[p.pos]));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{int, rat, Scalar};

    #[test]
    fn parses_terms() {
        let a: ValElt<Rational> = parse_val_elt("3*x^(1/2) + x^2", 1).unwrap();
        let expect = &ValElt::monomial(GroupElement::new(vec![rat(1, 2)]), int(3))
            + &ValElt::x_pow(GroupElement::from_ints(&[2]));
        assert_eq!(a, expect);
    }

    #[test]
    fn rational_coefficients_and_fractions() {
        let a: ValElt<Rational> = parse_val_elt("3/2*x^(0,1) - x^(1,-3)", 2).unwrap();
        assert_eq!(a.val().finite().unwrap(), &GroupElement::from_ints(&[0, 1]));
        assert_eq!(a.leading_coeff(), rat(3, 2));
        let f: ValElt<Rational> = parse_val_elt("x/(1+x)", 1).unwrap();
        assert_eq!(f.val().finite().unwrap(), &GroupElement::from_ints(&[1]));
    }

    #[test]
    fn generators() {
        let a: ValElt<Scalar> = parse_val_elt("t1 + x", 1).unwrap();
        assert_eq!(a.residue(1).unwrap().as_constant(), Some(Scalar::t(1)));
        assert!(parse_val_elt::<Rational>("t1", 1).is_err());
    }

    #[test]
    fn errors() {
        assert!(parse_val_elt::<Rational>("x^(1,2)", 1).is_err());
        assert!(parse_val_elt::<Rational>("x", 2).is_err());
        assert!(parse_val_elt::<Rational>("1/0", 1).is_err());
        assert!(parse_val_elt::<Rational>("1 +", 1).is_err());
        assert!(parse_val_elt::<Rational>("", 1).is_err());
        assert!(parse_val_elt::<Rational>("y", 1).is_err());
    }
}
