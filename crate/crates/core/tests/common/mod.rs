//! Independent oracles shared by the integration tests. Nothing here calls the
//! Groebner engine.

#![allow(dead_code)]

use std::collections::BTreeMap;

use ddsurf::{FieldElement, FieldSpec, Monomial, MultiPoly, VarSet};
use rand::Rng;

type Exps = Vec<u32>;

fn residue(c: &FieldElement) -> u64 {
    match c {
        FieldElement::Modular { value, .. } => *value,
        FieldElement::Rational(_) => panic!("oracle works over F_p only"),
    }
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

/// Dense-free representation: exponent vector to residue.
fn to_map(p: &MultiPoly) -> BTreeMap<Exps, u64> {
    p.terms().map(|(m, c)| (m.exponents().to_vec(), residue(c))).collect()
}

/// All exponent vectors in `n` variables of total degree at most `deg`.
pub fn monomials_up_to(n: usize, deg: u32) -> Vec<Exps> {
    fn rec(n: usize, left: u32, cur: &mut Exps, out: &mut Vec<Exps>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for k in 0..=left {
            cur.push(k);
            rec(n, left - k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, deg, &mut Vec::new(), &mut out);
    out
}

/// Echelon form over F_p keyed by pivot column.
struct Span {
    p: u64,
    rows: BTreeMap<usize, BTreeMap<usize, u64>>,
}

impl Span {
    fn reduce(&self, mut v: BTreeMap<usize, u64>) -> BTreeMap<usize, u64> {
        while let Some((&col, &val)) = v.iter().find(|(c, _)| self.rows.contains_key(c)) {
            let row = &self.rows[&col];
            for (&c, &rv) in row {
                let e = v.entry(c).or_insert(0);
                *e = (*e + self.p - val * rv % self.p) % self.p;
                if *e == 0 {
                    v.remove(&c);
                }
            }
        }
        v
    }

    fn insert(&mut self, v: BTreeMap<usize, u64>) {
        let v = self.reduce(v);
        if let Some((&col, &val)) = v.iter().next() {
            let inv = pow_mod(val, self.p - 2, self.p);
            let v = v.into_iter().map(|(c, x)| (c, x * inv % self.p)).collect();
            self.rows.insert(col, v);
        }
    }
}

/// `true` iff `target = Σ c_j g_j` with every `deg(c_j g_j) ≤ degree_cap`,
/// decided by Gaussian elimination over F_p.
pub fn bounded_member(target: &MultiPoly, gens: &[MultiPoly], degree_cap: u32) -> bool {
    let field = target.field();
    let p = field.characteristic();
    assert!(p > 0);
    let n = target.nvars();
    let mut index: BTreeMap<Exps, usize> = BTreeMap::new();
    fn col(e: Exps, index: &mut BTreeMap<Exps, usize>) -> usize {
        let next = index.len();
        *index.entry(e).or_insert(next)
    }
    let mut span = Span { p, rows: BTreeMap::new() };
    for g in gens {
        let gm = to_map(g);
        let Some(gd) = g.total_degree() else { continue };
        if gd > degree_cap {
            continue;
        }
        for m in monomials_up_to(n, degree_cap - gd) {
            let mut v = BTreeMap::new();
            for (e, c) in &gm {
                let prod: Exps = e.iter().zip(&m).map(|(a, b)| a + b).collect();
                v.insert(col(prod, &mut index), *c);
            }
            span.insert(v);
        }
    }
    let mut t = BTreeMap::new();
    for (e, c) in to_map(target) {
        t.insert(col(e, &mut index), c);
    }
    span.reduce(t).is_empty()
}

/// Random polynomial in `vars.len()` variables with total degree at most `deg`.
pub fn random_poly<R: Rng>(rng: &mut R, field: FieldSpec, vars: &VarSet, deg: u32, density: f64) -> MultiPoly {
    let p = field.characteristic();
    let mut out = MultiPoly::zero(field, vars);
    for e in monomials_up_to(vars.len(), deg) {
        if rng.random_bool(density) {
            let c = rng.random_range(1..p);
            out.add_term(Monomial::from_exponents(&e), field.from_i64(c as i64));
        }
    }
    out
}

/// Evaluates `poly` at a point with residue coordinates.
pub fn eval_mod(poly: &MultiPoly, point: &[u64]) -> u64 {
    let p = poly.field().characteristic();
    poly.terms().fold(0, |acc, (m, c)| {
        let term = m
            .exponents()
            .iter()
            .zip(point)
            .fold(residue(c), |t, (&k, &x)| t * pow_mod(x, k as u64, p) % p);
        (acc + term) % p
    })
}
