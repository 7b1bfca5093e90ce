//! Laurent polynomials in `x` (any integer exponent) and `z` (non-negative).

use std::collections::BTreeMap;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{AlgebraError, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::poly::{Monomial, MultiPoly, VarSet};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentPoly {
    field: FieldSpec,
    /// `(i, j)` stands for `x^i * z^j`.
    terms: BTreeMap<(i64, u32), FieldElement>,
}

impl LaurentPoly {
    pub fn zero(field: FieldSpec) -> Self {
        LaurentPoly {
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: FieldSpec, c: FieldElement) -> Self {
        Self::monomial(field, c, 0, 0)
    }

    pub fn monomial(field: FieldSpec, c: FieldElement, i: i64, j: u32) -> Self {
        let mut l = Self::zero(field);
        l.add_term(i, j, c);
        l
    }

    pub fn x_pow(field: FieldSpec, i: i64) -> Self {
        Self::monomial(field, field.one(), i, 0)
    }

    pub fn z(field: FieldSpec) -> Self {
        Self::monomial(field, field.one(), 0, 1)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(i64, u32), &FieldElement)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, i: i64, j: u32) -> FieldElement {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(|| self.field.zero())
    }

    fn add_term(&mut self, i: i64, j: u32, c: FieldElement) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry((i, j)).or_insert_with(|| self.field.zero());
        *e = e.add(&c);
        if e.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    /// Converts a polynomial in `X` and `Z` (given by variable index) into the
    /// Laurent ring. Any other variable present is an error.
    pub fn from_poly(p: &MultiPoly, x: usize, z: usize) -> Result<Self> {
        let mut l = Self::zero(p.field());
        for (m, c) in p.terms() {
            for (v, &e) in m.exponents().iter().enumerate() {
                if e > 0 && v != x && v != z {
                    return Err(AlgebraError::ForbiddenVariable(p.vars().name(v).to_string()));
                }
            }
            l.add_term(m.exponents()[x] as i64, m.exponents()[z], c.clone());
        }
        Ok(l)
    }

    /// The polynomial in `k[X, Z]` with this image, when no exponent of `x`
    /// is negative.
    pub fn to_poly(&self, vars: &VarSet, x: usize, z: usize) -> Option<MultiPoly> {
        let mut out = MultiPoly::zero(self.field, vars);
        for (&(i, j), c) in &self.terms {
            let i = u32::try_from(i).ok()?;
            let mut m = Monomial::one(vars.len());
            m.0[x] = i;
            m.0[z] = j;
            out.add_term(m, c.clone());
        }
        Some(out)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut r = self.clone();
        for (&(i, j), c) in &other.terms {
            r.add_term(i, j, c.clone());
        }
        r
    }

    pub fn neg(&self) -> Self {
        LaurentPoly {
            field: self.field,
            terms: self.terms.iter().map(|(k, c)| (*k, c.neg())).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut r = Self::zero(self.field);
        for (&(i, j), a) in &self.terms {
            for (&(k, l), b) in &other.terms {
                r.add_term(i + k, j + l, a.mul(b));
            }
        }
        r
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        let mut r = Self::zero(self.field);
        for (&(i, j), a) in &self.terms {
            r.add_term(i, j, a.mul(c));
        }
        r
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::constant(self.field, self.field.one());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Divides by `x^k`, i.e. shifts every `x`-exponent by `-k`.
    pub fn div_xpow(&self, k: i64) -> Self {
        LaurentPoly {
            field: self.field,
            terms: self.terms.iter().map(|(&(i, j), c)| ((i - k, j), c.clone())).collect(),
        }
    }

    /// Smallest `x`-exponent; `None` for zero.
    pub fn min_x_exponent(&self) -> Option<i64> {
        self.terms.keys().map(|(i, _)| *i).min()
    }

    pub fn to_canonical_string(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (n, (&(i, j), c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if n == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mut factors = Vec::new();
            if j > 0 {
                factors.push(if j == 1 { "z".to_string() } else { format!("z^{j}") });
            }
            if i != 0 {
                factors.push(if i == 1 { "x".to_string() } else { format!("x^{i}") });
            }
            if factors.is_empty() {
                out.push_str(&a.to_string());
            } else if a.is_one() {
                out.push_str(&factors.join("*"));
            } else {
                out.push_str(&format!("{}*{}", a, factors.join("*")));
            }
        }
        out
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_canonical_string())
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_canonical_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;
    use crate::poly::{X, Z};

    #[test]
    fn shift_by_x_power() {
        let q = FieldSpec::Rationals;
        let z2 = LaurentPoly::from_poly(&parse_poly("Z^2", q).unwrap(), X, Z).unwrap();
        let l = z2.div_xpow(2);
        assert_eq!(l.coefficient(-2, 2).to_string(), "1");
        assert_eq!(l.to_string(), "z^2*x^-2");
    }

    #[test]
    fn inverse_and_cancellation() {
        let q = FieldSpec::Rationals;
        let prod = LaurentPoly::x_pow(q, -1).mul(&LaurentPoly::x_pow(q, 1));
        assert_eq!(prod, LaurentPoly::constant(q, q.one()));
        let a = LaurentPoly::monomial(q, q.one(), -2, 2);
        assert!(a.add(&a.neg()).is_zero());
    }

    #[test]
    fn rejects_y_and_t() {
        let q = FieldSpec::Rationals;
        let p = parse_poly("X*Y + Z", q).unwrap();
        assert!(matches!(LaurentPoly::from_poly(&p, X, Z), Err(AlgebraError::ForbiddenVariable(v)) if v == "Y"));
    }
}
