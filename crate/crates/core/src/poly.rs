//! Sparse multivariate polynomials with exact coefficients.
//!
//! Terms live in a `BTreeMap` keyed by exponent vectors, so iteration order is
//! lexicographic on `(X, Y, Z, T, ...)` and the canonical printed form walks it
//! from the top. Zero coefficients are never stored.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use serde::{Serialize, Serializer};
use smallvec::SmallVec;

use crate::error::{AlgebraError, Result};
use crate::field::{FieldElement, FieldSpec};

pub const X: usize = 0;
pub const Y: usize = 1;
pub const Z: usize = 2;
pub const T: usize = 3;

/// An ordered list of variable names. Two polynomials can only be combined when
/// their variable lists agree.
#[derive(Clone, Debug)]
pub struct VarSet(Arc<[String]>);

impl VarSet {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        for (i, n) in names.iter().enumerate() {
            let valid = n.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && n.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !valid {
                return Err(AlgebraError::Invalid(format!("invalid variable name `{n}`")));
            }
            if names[..i].contains(n) {
                return Err(AlgebraError::Invalid(format!("duplicate variable `{n}`")));
            }
        }
        Ok(VarSet(names.into()))
    }

    /// The default universe `X, Y, Z, T`.
    pub fn xyzt() -> Self {
        thread_local! {
            static XYZT: VarSet = VarSet(["X", "Y", "Z", "T"].iter().map(|s| s.to_string()).collect::<Vec<_>>().into());
        }
        XYZT.with(|v| v.clone())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn name(&self, i: usize) -> &str {
        &self.0[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|n| n == name)
    }
}

impl PartialEq for VarSet {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for VarSet {}

/// Exponent vector, one entry per variable of the ambient [`VarSet`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub SmallVec<[u32; 4]>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(SmallVec::from_elem(0, n))
    }

    pub fn from_exponents(e: &[u32]) -> Self {
        Monomial(SmallVec::from_slice(e))
    }

    pub fn var(n: usize, v: usize, k: u32) -> Self {
        let mut m = Self::one(n);
        m.0[v] = k;
        m
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Self) -> Self {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Self) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Self) -> Self {
        Monomial(other.0.iter().zip(self.0.iter()).map(|(b, a)| b - a).collect())
    }

    pub fn lcm(&self, other: &Self) -> Self {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Self) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|e| *e == 0)
    }

    pub fn format(&self, vars: &VarSet) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, e)| **e > 0)
            .map(|(i, e)| {
                if *e == 1 {
                    vars.name(i).to_string()
                } else {
                    format!("{}^{}", vars.name(i), e)
                }
            })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

/// A polynomial over a [`FieldSpec`] in the variables of a [`VarSet`].
///
/// Arithmetic through the `std::ops` traits panics when the operands live in
/// different rings; the `checked_*` methods report [`AlgebraError::FieldMismatch`].
#[derive(Clone, Debug)]
pub struct MultiPoly {
    field: FieldSpec,
    vars: VarSet,
    terms: BTreeMap<Monomial, FieldElement>,
}

impl PartialEq for MultiPoly {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.vars == other.vars && self.terms == other.terms
    }
}

impl Eq for MultiPoly {}

impl MultiPoly {
    pub fn zero(field: FieldSpec, vars: &VarSet) -> Self {
        MultiPoly {
            field,
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: FieldSpec, vars: &VarSet, c: FieldElement) -> Self {
        let mut p = Self::zero(field, vars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(vars.len()), c);
        }
        p
    }

    pub fn one(field: FieldSpec, vars: &VarSet) -> Self {
        Self::constant(field, vars, field.one())
    }

    pub fn from_i64(field: FieldSpec, vars: &VarSet, c: i64) -> Self {
        Self::constant(field, vars, field.from_i64(c))
    }

    /// The variable `v` to the power `k`.
    pub fn var_pow(field: FieldSpec, vars: &VarSet, v: usize, k: u32) -> Self {
        Self::term(field, vars, field.one(), Monomial::var(vars.len(), v, k))
    }

    pub fn var(field: FieldSpec, vars: &VarSet, v: usize) -> Self {
        Self::var_pow(field, vars, v, 1)
    }

    pub fn term(field: FieldSpec, vars: &VarSet, c: FieldElement, m: Monomial) -> Self {
        debug_assert_eq!(m.0.len(), vars.len());
        let mut p = Self::zero(field, vars);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, FieldElement)>>(field: FieldSpec, vars: &VarSet, terms: I) -> Self {
        let mut p = Self::zero(field, vars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending lexicographic exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &FieldElement)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> FieldElement {
        self.terms.get(m).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn constant_term(&self) -> FieldElement {
        self.coefficient(&Monomial::one(self.nvars()))
    }

    /// The scalar value when the polynomial is constant.
    pub fn as_constant(&self) -> Option<FieldElement> {
        match self.terms.len() {
            0 => Some(self.field.zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    /// Adds `c * m` in place.
    pub fn add_term(&mut self, m: Monomial, c: FieldElement) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().add(&c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    /// `self += c * m * other`.
    pub fn add_scaled(&mut self, c: &FieldElement, m: &Monomial, other: &MultiPoly) {
        if c.is_zero() {
            return;
        }
        for (om, oc) in &other.terms {
            self.add_term(om.mul(m), oc.mul(c));
        }
    }

    fn check_same_ring(&self, other: &Self) -> Result<()> {
        if self.field != other.field || self.vars != other.vars {
            return Err(AlgebraError::FieldMismatch(self.ring_label(), other.ring_label()));
        }
        Ok(())
    }

    fn ring_label(&self) -> String {
        format!("{}[{}]", self.field.describe(), self.vars.names().join(","))
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_same_ring(other)?;
        let mut r = self.clone();
        for (m, c) in &other.terms {
            r.add_term(m.clone(), c.clone());
        }
        Ok(r)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.neg_poly())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_same_ring(other)?;
        let mut r = Self::zero(self.field, &self.vars);
        let (small, large) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        for (m, c) in &small.terms {
            r.add_scaled(c, m, large);
        }
        Ok(r)
    }

    pub fn neg_poly(&self) -> Self {
        MultiPoly {
            field: self.field,
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect(),
        }
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        if c.is_zero() {
            return Self::zero(self.field, &self.vars);
        }
        MultiPoly {
            field: self.field,
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a.mul(c))).collect(),
        }
    }

    /// Multiplies by a monomial.
    pub fn shift(&self, m: &Monomial) -> Self {
        MultiPoly {
            field: self.field,
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(a, c)| (a.mul(m), c.clone())).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.field, &self.vars);
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Maximum exponent of `v`; `None` stands for −∞ (the zero polynomial).
    pub fn degree_in(&self, v: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.0[v]).max()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.total_degree()).max()
    }

    /// Largest `k` with `v^k | self`; `None` stands for +∞ (the zero polynomial).
    pub fn valuation_in(&self, v: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.0[v]).min()
    }

    /// Largest `k` with `X^k | self`, `X` being the first variable.
    pub fn x_adic_valuation(&self) -> Option<u32> {
        self.valuation_in(X)
    }

    pub fn uses_var(&self, v: usize) -> bool {
        self.terms.keys().any(|m| m.0[v] > 0)
    }

    pub fn free_of(&self, v: usize) -> bool {
        !self.uses_var(v)
    }

    /// Coefficient of `v^k`, as a polynomial free of `v`.
    pub fn coeff_in(&self, v: usize, k: u32) -> Self {
        let terms = self.terms.iter().filter(|(m, _)| m.0[v] == k).map(|(m, c)| {
            let mut m = m.clone();
            m.0[v] = 0;
            (m, c.clone())
        });
        Self::from_terms(self.field, &self.vars, terms)
    }

    pub fn leading_coeff_in(&self, v: usize) -> Self {
        match self.degree_in(v) {
            Some(k) => self.coeff_in(v, k),
            None => Self::zero(self.field, &self.vars),
        }
    }

    /// Monic in `v`: positive degree in `v` with leading coefficient exactly 1.
    pub fn is_monic_in(&self, v: usize) -> bool {
        matches!(self.degree_in(v), Some(k) if k >= 1) && self.leading_coeff_in(v).is_one()
    }

    /// Division with remainder by a polynomial monic in `v`.
    ///
    /// Returns `(q, r)` with `self = q*m + r` and `deg_v r < deg_v m`.
    pub fn divide_by_monic(&self, m: &Self, v: usize) -> Result<(Self, Self)> {
        self.check_same_ring(m)?;
        if !m.is_monic_in(v) {
            return Err(AlgebraError::NotMonic(self.vars.name(v).to_string()));
        }
        let dm = m.degree_in(v).unwrap();
        let mut q = Self::zero(self.field, &self.vars);
        let mut r = self.clone();
        while let Some(dr) = r.degree_in(v) {
            if dr < dm {
                break;
            }
            let lead = r.coeff_in(v, dr);
            let shift = Monomial::var(self.nvars(), v, dr - dm);
            let step = lead.shift(&shift);
            r = &r - &(&step * m);
            q = &q + &step;
        }
        Ok((q, r))
    }

    /// Exact division by `v^k`; `None` when `v^k` does not divide.
    pub fn div_var_pow(&self, v: usize, k: u32) -> Option<Self> {
        if self.terms.keys().any(|m| m.0[v] < k) {
            return None;
        }
        let terms = self.terms.iter().map(|(m, c)| {
            let mut m = m.clone();
            m.0[v] -= k;
            (m, c.clone())
        });
        Some(Self::from_terms(self.field, &self.vars, terms))
    }

    /// Splits into the part divisible by `v^k` (returned divided by `v^k`) and
    /// the rest: `self = v^k * high + low`.
    pub fn split_at_var_pow(&self, v: usize, k: u32) -> (Self, Self) {
        let mut high = Self::zero(self.field, &self.vars);
        let mut low = Self::zero(self.field, &self.vars);
        for (m, c) in &self.terms {
            if m.0[v] >= k {
                let mut m = m.clone();
                m.0[v] -= k;
                high.terms.insert(m, c.clone());
            } else {
                low.terms.insert(m.clone(), c.clone());
            }
        }
        (high, low)
    }

    /// Ring homomorphism sending variable `i` to `images[i]`. The images may live
    /// in a different ring (any variable list) but must share the field.
    pub fn compose(&self, images: &[MultiPoly]) -> Result<Self> {
        self.compose_inner(images, None)
    }

    /// [`compose`](Self::compose) followed by [`truncate_var`](Self::truncate_var),
    /// truncating intermediate products as well. `v` indexes the target ring.
    pub fn compose_truncated(&self, images: &[MultiPoly], v: usize, k: u32) -> Result<Self> {
        self.compose_inner(images, Some((v, k)))
    }

    /// Drops every term whose `v`-exponent is at least `k` (reduction mod `v^k`).
    pub fn truncate_var(&self, v: usize, k: u32) -> Self {
        MultiPoly {
            field: self.field,
            vars: self.vars.clone(),
            terms: self.terms.iter().filter(|(m, _)| m.0[v] < k).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    fn compose_inner(&self, images: &[MultiPoly], trunc: Option<(usize, u32)>) -> Result<Self> {
        if images.len() != self.nvars() {
            return Err(AlgebraError::Invalid(format!(
                "expected {} images, got {}",
                self.nvars(),
                images.len()
            )));
        }
        let target = match images.first() {
            Some(p) => p,
            None => return Ok(self.clone()),
        };
        for img in images {
            target.check_same_ring(img)?;
        }
        if target.field != self.field {
            return Err(AlgebraError::FieldMismatch(self.ring_label(), target.ring_label()));
        }
        let cut = |p: MultiPoly| match trunc {
            Some((v, k)) => p.truncate_var(v, k),
            None => p,
        };
        let mut powers: Vec<Vec<MultiPoly>> = images
            .iter()
            .map(|img| vec![MultiPoly::one(self.field, &target.vars), cut(img.clone())])
            .collect();
        let mut out = MultiPoly::zero(self.field, &target.vars);
        for (m, c) in &self.terms {
            let mut acc = MultiPoly::constant(self.field, &target.vars, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = cut(&powers[i][powers[i].len() - 1] * &powers[i][1]);
                    powers[i].push(next);
                }
                acc = cut(&acc * &powers[i][e as usize]);
            }
            out = &out + &acc;
        }
        Ok(out)
    }

    /// Substitution inside the same ring; unmapped variables stay fixed.
    pub fn substitute(&self, images: &BTreeMap<usize, MultiPoly>) -> Result<Self> {
        let full: Vec<MultiPoly> = (0..self.nvars())
            .map(|i| match images.get(&i) {
                Some(p) => p.clone(),
                None => MultiPoly::var(self.field, &self.vars, i),
            })
            .collect();
        for img in images.values() {
            self.check_same_ring(img)?;
        }
        self.compose(&full)
    }

    /// Reinterprets the polynomial in another variable list; `mapping[i]` is the
    /// index in `target` of variable `i`. Variables that occur must be mapped.
    pub fn embed(&self, target: &VarSet, mapping: &[Option<usize>]) -> Result<Self> {
        let mut out = MultiPoly::zero(self.field, target);
        for (m, c) in &self.terms {
            let mut nm = Monomial::one(target.len());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                match mapping.get(i).copied().flatten() {
                    Some(j) => nm.0[j] += e,
                    None => return Err(AlgebraError::ForbiddenVariable(self.vars.name(i).to_string())),
                }
            }
            out.add_term(nm, c.clone());
        }
        Ok(out)
    }

    /// Embeds by matching variable names.
    pub fn rename_into(&self, target: &VarSet) -> Result<Self> {
        let mapping: Vec<Option<usize>> = self.vars.names().iter().map(|n| target.index_of(n)).collect();
        self.embed(target, &mapping)
    }

    /// Leading coefficient with respect to the canonical (lexicographic) order.
    pub fn lex_leading_coeff(&self) -> Option<&FieldElement> {
        self.terms.values().next_back()
    }

    /// Canonical textual form: terms from the lexicographically highest exponent
    /// tuple downwards.
    pub fn to_canonical_string(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if m.is_one() {
                out.push_str(&a.to_string());
            } else if a.is_one() {
                out.push_str(&m.format(&self.vars));
            } else {
                out.push_str(&format!("{}*{}", a, m.format(&self.vars)));
            }
        }
        out
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_canonical_string())
    }
}

impl Serialize for MultiPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_canonical_string())
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: Self) -> MultiPoly {
        self.checked_add(rhs).expect("ring mismatch in add")
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: Self) -> MultiPoly {
        self.checked_sub(rhs).expect("ring mismatch in sub")
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: Self) -> MultiPoly {
        self.checked_mul(rhs).expect("ring mismatch in mul")
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.neg_poly()
    }
}
