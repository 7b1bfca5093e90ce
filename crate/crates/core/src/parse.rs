//! Recursive-descent parser for polynomial expressions.
//!
//! Grammar (whitespace ignored):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' integer)?
//! atom   := integer ('/' integer)? | variable | '(' expr ')'
//! ```
//!
//! Multiplication must be explicit: `2X` and `X Y` are syntax errors.

use num_bigint::BigInt;

use crate::error::{AlgebraError, Result};
use crate::field::FieldSpec;
use crate::poly::{MultiPoly, VarSet};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes: Vec<(usize, char)> = text.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let (pos, c) = bytes[i];
        match c {
            c if c.is_whitespace() => {
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].1.is_ascii_digit() {
                    i += 1;
                }
                let s: String = bytes[start..i].iter().map(|(_, c)| *c).collect();
                out.push((pos, Tok::Int(s.parse().expect("digits parse"))));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < bytes.len() && (bytes[i].1.is_ascii_alphanumeric() || bytes[i].1 == '_') {
                    i += 1;
                }
                let s: String = bytes[start..i].iter().map(|(_, c)| *c).collect();
                out.push((pos, Tok::Ident(s)));
            }
            '+' | '-' | '*' | '^' | '/' | '(' | ')' => {
                let t = match c {
                    '+' => Tok::Plus,
                    '-' => Tok::Minus,
                    '*' => Tok::Star,
                    '^' => Tok::Caret,
                    '/' => Tok::Slash,
                    '(' => Tok::LParen,
                    _ => Tok::RParen,
                };
                out.push((pos, t));
                i += 1;
            }
            other => {
                return Err(AlgebraError::Parse {
                    position: pos,
                    message: format!("unexpected character `{other}`"),
                })
            }
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
    field: FieldSpec,
    vars: &'a VarSet,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(AlgebraError::Parse {
            position: self.pos(),
            message: message.into(),
        })
    }

    fn expr(&mut self) -> Result<MultiPoly> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.at += 1;
                    let t = self.term()?;
                    acc = &acc + &t;
                }
                Some(Tok::Minus) => {
                    self.at += 1;
                    let t = self.term()?;
                    acc = &acc - &t;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MultiPoly> {
        let mut acc = self.unary()?;
        while let Some(Tok::Star) = self.peek() {
            self.at += 1;
            let f = self.unary()?;
            acc = &acc * &f;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<MultiPoly> {
        if let Some(Tok::Minus) = self.peek() {
            self.at += 1;
            let inner = self.unary()?;
            return Ok(-&inner);
        }
        self.power()
    }

    fn power(&mut self) -> Result<MultiPoly> {
        let base = self.atom()?;
        if let Some(Tok::Caret) = self.peek() {
            self.at += 1;
            let k = match self.peek() {
                Some(Tok::Int(n)) => {
                    let k: u32 = match n.try_into() {
                        Ok(k) if k <= 10_000 => k,
                        _ => return self.err("exponent too large"),
                    };
                    self.at += 1;
                    k
                }
                _ => return self.err("expected a non-negative integer exponent"),
            };
            if let Some(Tok::Caret) = self.peek() {
                return self.err("chained exponents need parentheses");
            }
            return Ok(base.pow(k));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<MultiPoly> {
        let tok = match self.peek() {
            Some(t) => t.clone(),
            None => return self.err("unexpected end of input"),
        };
        let start = self.pos();
        match tok {
            Tok::Int(n) => {
                self.at += 1;
                let den = if let Some(Tok::Slash) = self.peek() {
                    self.at += 1;
                    match self.peek() {
                        Some(Tok::Int(d)) => {
                            let d = d.clone();
                            self.at += 1;
                            d
                        }
                        _ => return self.err("expected an integer denominator"),
                    }
                } else {
                    BigInt::from(1)
                };
                let c = self.field.from_ratio(&n, &den)?;
                let lit = MultiPoly::constant(self.field, self.vars, c);
                self.reject_juxtaposition()?;
                Ok(lit)
            }
            Tok::Ident(name) => {
                self.at += 1;
                let v = self
                    .vars
                    .index_of(&name)
                    .ok_or_else(|| AlgebraError::UnknownVariable(name.clone()))?;
                let p = MultiPoly::var(self.field, self.vars, v);
                self.reject_juxtaposition()?;
                Ok(p)
            }
            Tok::LParen => {
                self.at += 1;
                let inner = self.expr()?;
                match self.peek() {
                    Some(Tok::RParen) => self.at += 1,
                    _ => {
                        return Err(AlgebraError::Parse {
                            position: self.pos(),
                            message: format!("unclosed parenthesis opened at {start}"),
                        })
                    }
                }
                self.reject_juxtaposition()?;
                Ok(inner)
            }
            Tok::Slash => self.err("`/` is only allowed inside rational literals"),
            _ => self.err("expected a number, variable, or `(`"),
        }
    }

    fn reject_juxtaposition(&self) -> Result<()> {
        match self.peek() {
            Some(Tok::Int(_)) | Some(Tok::Ident(_)) | Some(Tok::LParen) => {
                self.err("implicit multiplication is not allowed; use `*`")
            }
            Some(Tok::Slash) => self.err("`/` is only allowed inside rational literals"),
            _ => Ok(()),
        }
    }
}

/// Parses an expression over the default universe `X, Y, Z, T`.
pub fn parse_poly(text: &str, field: FieldSpec) -> Result<MultiPoly> {
    parse_poly_in(text, field, &VarSet::xyzt())
}

/// Parses an expression over an explicit variable list.
pub fn parse_poly_in(text: &str, field: FieldSpec, vars: &VarSet) -> Result<MultiPoly> {
    let field = field.checked()?;
    let toks = tokenize(text)?;
    let mut p = Parser {
        toks,
        at: 0,
        end: text.len(),
        field,
        vars,
    };
    let out = p.expr()?;
    if p.at != p.toks.len() {
        return p.err("unexpected trailing input");
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Monomial;

    #[test]
    fn two_term_polynomial() {
        let p = parse_poly("X^2*Y - Z^2", FieldSpec::Rationals).unwrap();
        let mons: Vec<_> = p.terms().map(|(m, _)| m.exponents().to_vec()).collect();
        assert_eq!(mons, vec![vec![0, 0, 2, 0], vec![2, 1, 0, 0]]);
        assert_eq!(p.coefficient(&Monomial::from_exponents(&[0, 0, 2, 0])).to_string(), "-1");
    }

    #[test]
    fn zero_and_cancellation() {
        assert!(parse_poly("0", FieldSpec::Rationals).unwrap().is_zero());
        let f3 = FieldSpec::prime(3).unwrap();
        assert!(parse_poly("2*Z + Z", f3).unwrap().is_zero());
    }

    #[test]
    fn precedence() {
        let q = FieldSpec::Rationals;
        assert_eq!(parse_poly("-X^2", q).unwrap().to_string(), "-X^2");
        assert_eq!(parse_poly("2*X^2", q).unwrap().to_string(), "2*X^2");
        assert_eq!(parse_poly("(X+1)^2", q).unwrap().to_string(), "X^2 + 2*X + 1");
        assert_eq!(parse_poly("1 - X - Y", q).unwrap().to_string(), "-X - Y + 1");
        assert_eq!(parse_poly("X*-Y", q).unwrap().to_string(), "-X*Y");
    }

    #[test]
    fn rational_literals() {
        let q = FieldSpec::Rationals;
        assert_eq!(parse_poly("3/6*Z", q).unwrap().to_string(), "1/2*Z");
        let f5 = FieldSpec::prime(5).unwrap();
        assert_eq!(parse_poly("1/2", f5).unwrap().to_string(), "3");
    }

    #[test]
    fn errors_carry_positions() {
        let q = FieldSpec::Rationals;
        match parse_poly("X + * Y", q) {
            Err(AlgebraError::Parse { position, .. }) => assert_eq!(position, 4),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_poly("2X", q), Err(AlgebraError::Parse { position: 1, .. })));
        assert!(matches!(parse_poly("X Y", q), Err(AlgebraError::Parse { .. })));
        assert!(matches!(parse_poly("(X + 1", q), Err(AlgebraError::Parse { .. })));
        assert!(matches!(parse_poly("W + 1", q), Err(AlgebraError::UnknownVariable(v)) if v == "W"));
        assert!(matches!(parse_poly("1/0", q), Err(AlgebraError::DivisionByZero)));
        assert!(matches!(
            parse_poly("1/3", FieldSpec::Prime { p: 3 }),
            Err(AlgebraError::DivisionByZero)
        ));
        assert!(matches!(
            parse_poly("X", FieldSpec::Prime { p: 9 }),
            Err(AlgebraError::NonPrimeModulus(9))
        ));
        assert!(matches!(parse_poly("X/Y", q), Err(AlgebraError::Parse { .. })));
        assert!(matches!(parse_poly("X^-1", q), Err(AlgebraError::Parse { .. })));
        assert!(matches!(parse_poly("", q), Err(AlgebraError::Parse { .. })));
    }

    #[test]
    fn custom_universe() {
        let vars = VarSet::new(&["X", "Z", "T"]).unwrap();
        let p = parse_poly_in("X^3*T - Z^2", FieldSpec::Rationals, &vars).unwrap();
        assert_eq!(p.to_string(), "X^3*T - Z^2");
        assert!(parse_poly_in("Y", FieldSpec::Rationals, &vars).is_err());
    }
}
