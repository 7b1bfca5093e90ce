//! Exact coefficient fields: the rationals and prime fields `F_p`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::AlgebraError;

/// Largest prime modulus accepted. Products of two residues must fit in `u128`
/// comfortably and enumeration over the field must stay meaningful.
pub const MAX_PRIME: u64 = 1 << 31;

/// The ambient coefficient field.
///
/// Serialized as `{"field":"Q"}` or `{"field":"Fp","p":5}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "field", deny_unknown_fields)]
#[derive(Default)]
pub enum FieldSpec {
    #[serde(rename = "Q")]
    #[default]
    Rationals,
    #[serde(rename = "Fp")]
    Prime { p: u64 },
}


fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut i = 2u64;
    while i * i <= n {
        if n.is_multiple_of(i) {
            return false;
        }
        i += 1;
    }
    true
}

impl FieldSpec {
    /// Builds `F_p`, rejecting composite or out-of-range moduli.
    pub fn prime(p: u64) -> Result<Self, AlgebraError> {
        if !is_prime(p) || p > MAX_PRIME {
            return Err(AlgebraError::NonPrimeModulus(p));
        }
        Ok(FieldSpec::Prime { p })
    }

    pub fn rationals() -> Self {
        FieldSpec::Rationals
    }

    /// Re-checks the modulus of a deserialized descriptor.
    pub fn checked(self) -> Result<Self, AlgebraError> {
        match self {
            FieldSpec::Rationals => Ok(self),
            FieldSpec::Prime { p } => FieldSpec::prime(p),
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::Prime { p } => *p,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, FieldSpec::Prime { .. })
    }

    pub fn zero(&self) -> FieldElement {
        self.from_i64(0)
    }

    pub fn one(&self) -> FieldElement {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> FieldElement {
        match self {
            FieldSpec::Rationals => FieldElement::Rational(BigRational::from_integer(v.into())),
            FieldSpec::Prime { p } => FieldElement::Modular {
                value: v.rem_euclid(*p as i64) as u64,
                p: *p,
            },
        }
    }

    pub fn from_bigint(&self, v: &BigInt) -> FieldElement {
        match self {
            FieldSpec::Rationals => FieldElement::Rational(BigRational::from_integer(v.clone())),
            FieldSpec::Prime { p } => {
                let r = v.mod_floor(&BigInt::from(*p));
                FieldElement::Modular {
                    value: r.to_u64().expect("residue fits in u64"),
                    p: *p,
                }
            }
        }
    }

    /// Maps `num/den` into the field; fails when `den` vanishes in the field.
    pub fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<FieldElement, AlgebraError> {
        let d = self.from_bigint(den);
        if d.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(self.from_bigint(num).mul(&d.inv()))
    }

    /// All elements of a prime field in ascending residue order.
    pub fn elements(&self) -> Option<Vec<FieldElement>> {
        match self {
            FieldSpec::Rationals => None,
            FieldSpec::Prime { p } => Some((0..*p).map(|v| FieldElement::Modular { value: v, p: *p }).collect()),
        }
    }

    /// Nonzero elements of a prime field in ascending residue order.
    pub fn units(&self) -> Option<Vec<FieldElement>> {
        self.elements()
            .map(|els| els.into_iter().filter(|e| !e.is_zero()).collect())
    }

    /// Parses a scalar literal such as `-3`, `2/5`, or `0`.
    pub fn parse_scalar(&self, text: &str) -> Result<FieldElement, AlgebraError> {
        let t = text.trim();
        let (neg, body) = match t.strip_prefix('-') {
            Some(rest) => (true, rest.trim()),
            None => (false, t),
        };
        let (num, den) = match body.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (body, "1"),
        };
        let parse_int = |s: &str| {
            s.parse::<BigInt>().map_err(|_| AlgebraError::Parse {
                position: 0,
                message: format!("invalid scalar literal `{text}`"),
            })
        };
        let mut n = parse_int(num)?;
        let d = parse_int(den)?;
        if neg {
            n = -n;
        }
        self.from_ratio(&n, &d)
    }

    pub fn describe(&self) -> String {
        match self {
            FieldSpec::Rationals => "Q".to_string(),
            FieldSpec::Prime { p } => format!("Fp:{p}"),
        }
    }
}

impl std::str::FromStr for FieldSpec {
    type Err = AlgebraError;

    /// Accepts `Q` or `Fp:<p>` (also `F<p>` and `GF(<p>)`).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "Q" || s == "QQ" {
            return Ok(FieldSpec::Rationals);
        }
        let digits = s
            .strip_prefix("Fp:")
            .or_else(|| s.strip_prefix("GF(").and_then(|r| r.strip_suffix(')')))
            .or_else(|| s.strip_prefix('F'))
            .ok_or_else(|| AlgebraError::Parse {
                position: 0,
                message: format!("unknown field descriptor `{s}`"),
            })?;
        let p: u64 = digits.parse().map_err(|_| AlgebraError::Parse {
            position: 0,
            message: format!("unknown field descriptor `{s}`"),
        })?;
        FieldSpec::prime(p)
    }
}

/// An exact scalar. Rationals are kept in lowest terms with positive
/// denominator; residues are kept in `[0, p)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FieldElement {
    Rational(BigRational),
    Modular { value: u64, p: u64 },
}

impl FieldElement {
    pub fn field(&self) -> FieldSpec {
        match self {
            FieldElement::Rational(_) => FieldSpec::Rationals,
            FieldElement::Modular { p, .. } => FieldSpec::Prime { p: *p },
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElement::Rational(r) => r.is_zero(),
            FieldElement::Modular { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldElement::Rational(r) => r.is_one(),
            FieldElement::Modular { value, .. } => *value == 1,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        match (self, other) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => FieldElement::Rational(a + b),
            (FieldElement::Modular { value: a, p }, FieldElement::Modular { value: b, p: q }) => {
                debug_assert_eq!(p, q);
                FieldElement::Modular { value: (a + b) % p, p: *p }
            }
            _ => panic!("mixed-field scalar arithmetic"),
        }
    }

    pub fn neg(&self) -> Self {
        match self {
            FieldElement::Rational(a) => FieldElement::Rational(-a),
            FieldElement::Modular { value, p } => FieldElement::Modular {
                value: (p - value) % p,
                p: *p,
            },
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        match (self, other) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => FieldElement::Rational(a * b),
            (FieldElement::Modular { value: a, p }, FieldElement::Modular { value: b, p: q }) => {
                debug_assert_eq!(p, q);
                FieldElement::Modular {
                    value: ((*a as u128 * *b as u128) % *p as u128) as u64,
                    p: *p,
                }
            }
            _ => panic!("mixed-field scalar arithmetic"),
        }
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        match self {
            FieldElement::Rational(a) => FieldElement::Rational(a.recip()),
            FieldElement::Modular { value, p } => {
                let (g, x, _) = egcd(*value as i128, *p as i128);
                debug_assert_eq!(g, 1);
                FieldElement::Modular {
                    value: x.rem_euclid(*p as i128) as u64,
                    p: *p,
                }
            }
        }
    }

    pub fn div(&self, other: &Self) -> Self {
        self.mul(&other.inv())
    }

    /// Integer power; negative exponents invert.
    pub fn pow(&self, exp: i64) -> Self {
        let base = if exp < 0 { self.inv() } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = self.field().one();
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b);
            }
            b = b.mul(&b);
            e >>= 1;
        }
        acc
    }

    /// True when the printed form needs a leading minus sign.
    pub fn is_negative(&self) -> bool {
        match self {
            FieldElement::Rational(r) => r.is_negative(),
            FieldElement::Modular { .. } => false,
        }
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            self.neg()
        } else {
            self.clone()
        }
    }

    pub fn as_i64(&self) -> Option<i64> {
        match self {
            FieldElement::Rational(r) if r.is_integer() => r.to_integer().to_i64(),
            FieldElement::Rational(_) => None,
            FieldElement::Modular { value, .. } => Some(*value as i64),
        }
    }
}

impl PartialOrd for FieldElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Residues compare by representative, rationals numerically.
impl Ord for FieldElement {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => a.cmp(b),
            (FieldElement::Modular { value: a, .. }, FieldElement::Modular { value: b, .. }) => a.cmp(b),
            (FieldElement::Rational(_), _) => Ordering::Less,
            _ => Ordering::Greater,
        }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElement::Rational(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            FieldElement::Modular { value, .. } => write!(f, "{value}"),
        }
    }
}

impl Serialize for FieldElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

fn egcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = egcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_moduli() {
        assert!(FieldSpec::prime(2).is_ok());
        assert!(FieldSpec::prime(5).is_ok());
        assert!(matches!(FieldSpec::prime(4), Err(AlgebraError::NonPrimeModulus(4))));
        assert!(FieldSpec::prime(1).is_err());
        assert!(FieldSpec::prime(0).is_err());
    }

    #[test]
    fn modular_inverse_round_trips() {
        let f = FieldSpec::prime(7).unwrap();
        for a in f.units().unwrap() {
            assert!(a.mul(&a.inv()).is_one());
        }
    }

    #[test]
    fn rationals_stay_reduced() {
        let q = FieldSpec::Rationals;
        let a = q.parse_scalar("6/4").unwrap();
        assert_eq!(a.to_string(), "3/2");
        assert_eq!(q.parse_scalar("-1/2").unwrap().to_string(), "-1/2");
    }

    #[test]
    fn ratio_in_prime_field() {
        let f = FieldSpec::prime(5).unwrap();
        assert_eq!(f.parse_scalar("1/2").unwrap().to_string(), "3");
        assert!(matches!(f.parse_scalar("1/5"), Err(AlgebraError::DivisionByZero)));
        assert_eq!(f.parse_scalar("-1").unwrap().to_string(), "4");
    }

    #[test]
    fn negative_powers() {
        let q = FieldSpec::Rationals;
        let two = q.from_i64(2);
        assert_eq!(two.pow(-3).to_string(), "1/8");
        let f = FieldSpec::prime(3).unwrap();
        assert!(f.from_i64(2).pow(-2).is_one());
    }

    #[test]
    fn descriptor_strings() {
        assert_eq!("Q".parse::<FieldSpec>().unwrap(), FieldSpec::Rationals);
        assert_eq!("Fp:5".parse::<FieldSpec>().unwrap(), FieldSpec::Prime { p: 5 });
        assert!("Fp:6".parse::<FieldSpec>().is_err());
        let json: FieldSpec = serde_json::from_str(r#"{"field":"Fp","p":3}"#).unwrap();
        assert_eq!(json, FieldSpec::Prime { p: 3 });
        assert_eq!(serde_json::to_string(&FieldSpec::Rationals).unwrap(), r#"{"field":"Q"}"#);
    }
}
