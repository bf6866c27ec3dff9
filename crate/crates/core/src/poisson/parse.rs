//! Text syntax for Poisson expressions and rewriting to the canonical basis.
//!
//! ```text
//! expr    := ['-'] term (('+' | '-') term)*
//! term    := [integer '·'] product
//! product := factor ('*' factor)*
//! factor  := label | 'u' | '[' expr (',' expr)+ ']' | '(' expr ')'
//! ```
//!
//! Labels are 1-based, optionally written `x3`. Brackets with more than two
//! entries are left-normed: `[1,2,3] = [[1,2],3]`.

use std::collections::BTreeSet;

use super::algebra::{self, Coeffs, Poly};
use super::{coeffs_for, PoissonElement};
use crate::error::{GwError, Result};
use crate::page::Ring;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(u64),
    Unit,
    Open,
    Close,
    POpen,
    PClose,
    Comma,
    Star,
    Dot,
    Plus,
    Minus,
}

fn lex(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let mut chars = s.chars().peekable();
    while let Some(c) = chars.next() {
        match c {
            c if c.is_whitespace() => {}
            '[' => out.push(Tok::Open),
            ']' => out.push(Tok::Close),
            '(' => out.push(Tok::POpen),
            ')' => out.push(Tok::PClose),
            ',' => out.push(Tok::Comma),
            '*' => out.push(Tok::Star),
            '·' => out.push(Tok::Dot),
            '+' => out.push(Tok::Plus),
            '-' | '−' => out.push(Tok::Minus),
            'u' => out.push(Tok::Unit),
            'x' => {
                if !chars.peek().is_some_and(|c| c.is_ascii_digit()) {
                    return Err(GwError::Parse("`x` must be followed by a label".into()));
                }
            }
            d if d.is_ascii_digit() => {
                let mut n = d.to_digit(10).unwrap() as u64;
                while let Some(&d) = chars.peek().filter(|c| c.is_ascii_digit()) {
                    n = n
                        .checked_mul(10)
                        .and_then(|n| n.checked_add(d.to_digit(10).unwrap() as u64))
                        .ok_or_else(|| GwError::Parse("number too large".into()))?;
                    chars.next();
                }
                out.push(Tok::Num(n));
            }
            other => return Err(GwError::Parse(format!("unexpected character `{other}`"))),
        }
    }
    Ok(out)
}

/// An evaluated subexpression together with the labels it uses.
struct Val {
    poly: Poly,
    labels: BTreeSet<u8>,
}

struct Parser<'a> {
    toks: &'a [Tok],
    pos: usize,
    e: u32,
    k: Coeffs,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn expect(&mut self, t: Tok) -> Result<()> {
        if self.peek() == Some(&t) {
            self.pos += 1;
            Ok(())
        } else {
            Err(GwError::Parse(format!("expected {t:?} at token {}", self.pos)))
        }
    }

    fn expr(&mut self) -> Result<Val> {
        let mut neg = false;
        if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            neg = true;
        }
        let mut acc = self.term()?;
        if neg {
            acc.poly = scale(&acc.poly, -1, self.k);
        }
        loop {
            let mut s = match self.peek() {
                Some(Tok::Plus) => 1,
                Some(Tok::Minus) => -1,
                _ => break,
            };
            self.pos += 1;
            // tolerate `a + -b` and `a - -b`
            while self.peek() == Some(&Tok::Minus) {
                self.pos += 1;
                s = -s;
            }
            let t = self.term()?;
            if t.labels != acc.labels {
                return Err(GwError::NotMultilinear("summands use different variables".into()));
            }
            algebra::add_poly(&mut acc.poly, &t.poly, s, self.k);
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Val> {
        let coef = match (self.peek(), self.toks.get(self.pos + 1)) {
            (Some(Tok::Num(n)), Some(Tok::Dot)) => {
                let n = i64::try_from(*n).map_err(|_| GwError::Parse("coefficient too large".into()))?;
                self.pos += 2;
                Some(n)
            }
            _ => None,
        };
        let mut v = self.product()?;
        if let Some(c) = coef {
            v.poly = scale(&v.poly, c, self.k);
        }
        Ok(v)
    }

    fn product(&mut self) -> Result<Val> {
        let mut acc = self.factor()?;
        while self.peek() == Some(&Tok::Star) {
            self.pos += 1;
            let f = self.factor()?;
            let labels = disjoint_union(&acc.labels, &f.labels)?;
            acc = Val {
                poly: algebra::mul(&acc.poly, &f.poly, self.e, self.k),
                labels,
            };
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Val> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                if n == 0 || n > 255 {
                    return Err(GwError::Parse(format!("label {n} outside 1..=255")));
                }
                let l = (n - 1) as u8;
                Ok(Val {
                    poly: algebra::generator(l),
                    labels: BTreeSet::from([l]),
                })
            }
            Some(Tok::Unit) => {
                self.pos += 1;
                Ok(Val {
                    poly: algebra::unit(),
                    labels: BTreeSet::new(),
                })
            }
            Some(Tok::POpen) => {
                self.pos += 1;
                let v = self.expr()?;
                self.expect(Tok::PClose)?;
                Ok(v)
            }
            Some(Tok::Open) => {
                self.pos += 1;
                let mut acc = self.expr()?;
                let mut count = 1;
                while self.peek() == Some(&Tok::Comma) {
                    self.pos += 1;
                    let next = self.expr()?;
                    let labels = disjoint_union(&acc.labels, &next.labels)?;
                    acc = Val {
                        poly: algebra::bracket(&acc.poly, &next.poly, self.e, self.k),
                        labels,
                    };
                    count += 1;
                }
                self.expect(Tok::Close)?;
                if count < 2 {
                    return Err(GwError::Parse("a bracket needs at least two entries".into()));
                }
                Ok(acc)
            }
            other => Err(GwError::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

fn scale(p: &Poly, c: i64, k: Coeffs) -> Poly {
    let mut out = Poly::new();
    algebra::add_poly(&mut out, p, c, k);
    out
}

fn disjoint_union(a: &BTreeSet<u8>, b: &BTreeSet<u8>) -> Result<BTreeSet<u8>> {
    if let Some(l) = a.intersection(b).next() {
        return Err(GwError::NotMultilinear(format!("variable {} occurs twice", l + 1)));
    }
    Ok(a.union(b).copied().collect())
}

/// Parses an expression and rewrites it in the canonical basis.
///
/// The variables must be exactly `1..k` for some `k`, each used once per term.
pub fn normalize(text: &str, d: u32, ring: Ring) -> Result<PoissonElement> {
    if d < 3 {
        return Err(GwError::DimensionTooSmall(d));
    }
    let k = coeffs_for(ring)?;
    let toks = lex(text)?;
    let mut p = Parser {
        toks: &toks,
        pos: 0,
        e: d - 1,
        k,
    };
    let v = p.expr()?;
    if p.pos != toks.len() {
        return Err(GwError::Parse(format!("trailing input at token {}", p.pos)));
    }
    let arity = v.labels.len();
    if v.labels.iter().enumerate().any(|(i, &l)| l as usize != i) {
        return Err(GwError::NotMultilinear("variables must be exactly 1..k".into()));
    }
    Ok(PoissonElement::from_poly(ring, d, arity, v.poly))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_input_is_fixed() {
        for s in ["[1,2]*3", "1*[2,3]", "[1,3,2]", "1*2*3*4", "2·[1,2]*3 - [1,3]*2 + 1*[2,3]", "[1,[2,3]]", "[1*2,3]"] {
            let e = normalize(s, 3, Ring::Z).unwrap();
            let again = normalize(&e.to_string(), 3, Ring::Z).unwrap();
            assert_eq!(e, again, "{s}");
        }
    }

    #[test]
    fn antisymmetry_sign() {
        // ε = -(-1)^{e} on generators, e = d-1
        for (d, eps) in [(3, -1), (4, 1)] {
            let a = normalize("[2,1]", d, Ring::Z).unwrap();
            let b = normalize("[1,2]", d, Ring::Z).unwrap();
            assert_eq!(a, b.scale(eps), "d = {d}");
        }
    }

    #[test]
    fn rejects_non_multilinear() {
        assert!(matches!(normalize("[1,1]", 3, Ring::Z), Err(GwError::NotMultilinear(_))));
        assert!(matches!(normalize("1*3", 3, Ring::Z), Err(GwError::NotMultilinear(_))));
        assert!(matches!(normalize("[1,2] + 1", 3, Ring::Z), Err(GwError::NotMultilinear(_))));
        assert!(normalize("[1", 3, Ring::Z).is_err());
        assert!(normalize("0", 3, Ring::Z).is_err());
    }

    #[test]
    fn modular_reduction() {
        let e = normalize("3·[1,2]", 3, Ring::Fp(3)).unwrap();
        assert!(e.is_zero());
    }
}
