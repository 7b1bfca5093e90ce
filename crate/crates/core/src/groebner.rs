//! Buchberger's algorithm with cofactor tracking.
//!
//! Every basis element carries a row of cofactors expressing it in terms of the
//! caller's original generators, so that normal-form computations produce
//! membership certificates against those generators rather than against the
//! (reduced) Gröbner basis.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{AlgebraError, Result};
use crate::field::FieldElement;
use crate::poly::{Monomial, MultiPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OrderKind {
    Lex,
    Grevlex,
}

impl std::str::FromStr for OrderKind {
    type Err = AlgebraError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lex" => Ok(OrderKind::Lex),
            "grevlex" => Ok(OrderKind::Grevlex),
            other => Err(AlgebraError::Invalid(format!("unknown monomial order `{other}`"))),
        }
    }
}

type OrderKey = SmallVec<[i64; 5]>;

/// A monomial order given by its kind and a variable ranking.
///
/// `ranking[0]` is the most significant variable. The default ranking puts the
/// first declared variable last, so for `X, Y, Z, T` it reads `Y > Z > T > X`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialOrder {
    kind: OrderKind,
    ranking: Vec<usize>,
}

impl MonomialOrder {
    pub fn new(kind: OrderKind, ranking: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; ranking.len()];
        for &v in &ranking {
            if v >= ranking.len() || seen[v] {
                return Err(AlgebraError::Invalid("variable ranking is not a permutation".into()));
            }
            seen[v] = true;
        }
        Ok(MonomialOrder { kind, ranking })
    }

    pub fn with_default_ranking(kind: OrderKind, nvars: usize) -> Self {
        let ranking = (1..nvars).chain((nvars > 0).then_some(0)).collect();
        MonomialOrder { kind, ranking }
    }

    pub fn grevlex(nvars: usize) -> Self {
        Self::with_default_ranking(OrderKind::Grevlex, nvars)
    }

    pub fn lex(nvars: usize) -> Self {
        Self::with_default_ranking(OrderKind::Lex, nvars)
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn nvars(&self) -> usize {
        self.ranking.len()
    }

    fn key(&self, m: &Monomial) -> OrderKey {
        let e = m.exponents();
        match self.kind {
            OrderKind::Lex => self.ranking.iter().map(|&v| e[v] as i64).collect(),
            OrderKind::Grevlex => {
                let mut k = OrderKey::new();
                k.push(m.total_degree() as i64);
                k.extend(self.ranking.iter().rev().map(|&v| -(e[v] as i64)));
                k
            }
        }
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.key(a).cmp(&self.key(b))
    }

    /// Leading monomial and coefficient of a nonzero polynomial.
    pub fn leading_term(&self, p: &MultiPoly) -> Option<(Monomial, FieldElement)> {
        p.terms()
            .max_by(|a, b| self.cmp(a.0, b.0))
            .map(|(m, c)| (m.clone(), c.clone()))
    }
}

/// Resource caps for Buchberger's algorithm. Exceeding one yields
/// [`AlgebraError::ResourceExhausted`], never a wrong answer.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GbConfig {
    pub max_basis: usize,
    pub max_degree: u32,
}

impl Default for GbConfig {
    fn default() -> Self {
        GbConfig {
            max_basis: 1000,
            max_degree: 120,
        }
    }
}

/// Generators of an ideal together with the order used to compute with it.
#[derive(Clone, Debug)]
pub struct IdealBasis {
    generators: Vec<MultiPoly>,
    order: MonomialOrder,
}

impl IdealBasis {
    pub fn new(generators: Vec<MultiPoly>, order: MonomialOrder) -> Result<Self> {
        let first = generators
            .first()
            .ok_or_else(|| AlgebraError::Invalid("an ideal basis needs at least one generator".into()))?;
        for g in &generators {
            if g.is_zero() {
                return Err(AlgebraError::Invalid("zero generator in ideal basis".into()));
            }
            if g.field() != first.field() || g.vars() != first.vars() {
                return Err(AlgebraError::FieldMismatch(first.to_string(), g.to_string()));
            }
        }
        if order.nvars() != first.nvars() {
            return Err(AlgebraError::Invalid("monomial order arity differs from the variable count".into()));
        }
        Ok(IdealBasis { generators, order })
    }

    /// Basis under the default grevlex order.
    pub fn grevlex(generators: Vec<MultiPoly>) -> Result<Self> {
        let n = generators.first().map(|g| g.nvars()).unwrap_or(0);
        Self::new(generators, MonomialOrder::grevlex(n))
    }

    pub fn generators(&self) -> &[MultiPoly] {
        &self.generators
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn with_generator(&self, g: MultiPoly) -> Result<Self> {
        let mut gens = self.generators.clone();
        gens.push(g);
        Self::new(gens, self.order.clone())
    }
}

/// Cofactors, one per original generator, whose combination equals the query.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MembershipCertificate {
    pub cofactors: Vec<MultiPoly>,
}

impl MembershipCertificate {
    /// `Σ cofactor_j · generator_j`.
    pub fn combine(&self, generators: &[MultiPoly]) -> Result<MultiPoly> {
        if generators.len() != self.cofactors.len() {
            return Err(AlgebraError::Invalid("certificate length differs from generator count".into()));
        }
        let first = generators
            .first()
            .ok_or_else(|| AlgebraError::Invalid("empty generator list".into()))?;
        let mut acc = MultiPoly::zero(first.field(), first.vars());
        for (c, g) in self.cofactors.iter().zip(generators) {
            acc = acc.checked_add(&c.checked_mul(g)?)?;
        }
        Ok(acc)
    }

    /// Checks the certificate by expansion.
    pub fn verifies(&self, generators: &[MultiPoly], target: &MultiPoly) -> bool {
        matches!(self.combine(generators), Ok(s) if &s == target)
    }
}

#[derive(Clone, Debug)]
struct Elem {
    /// Terms sorted by decreasing order; the first is the (monic) leading term.
    terms: Vec<(Monomial, FieldElement)>,
    row: Vec<MultiPoly>,
}

impl Elem {
    fn lm(&self) -> &Monomial {
        &self.terms[0].0
    }

    fn to_poly(&self, template: &MultiPoly) -> MultiPoly {
        MultiPoly::from_terms(template.field(), template.vars(), self.terms.iter().cloned())
    }
}

/// A Gröbner basis plus the transform back to the original generators.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    order: MonomialOrder,
    generators: Vec<MultiPoly>,
    elems: Vec<Elem>,
    elements: Vec<MultiPoly>,
}

struct Engine<'a> {
    order: &'a MonomialOrder,
    template: MultiPoly,
    ngens: usize,
}

impl<'a> Engine<'a> {
    fn sorted_terms(&self, p: &MultiPoly) -> Vec<(Monomial, FieldElement)> {
        let mut v: Vec<(OrderKey, Monomial, FieldElement)> =
            p.terms().map(|(m, c)| (self.order.key(m), m.clone(), c.clone())).collect();
        v.sort_by(|a, b| b.0.cmp(&a.0));
        v.into_iter().map(|(_, m, c)| (m, c)).collect()
    }

    fn zero(&self) -> MultiPoly {
        MultiPoly::zero(self.template.field(), self.template.vars())
    }

    fn zero_row(&self) -> Vec<MultiPoly> {
        vec![self.zero(); self.ngens]
    }

    /// Full reduction of `p` by `basis[active]`. Returns the remainder and the
    /// quotient attached to each used basis element.
    fn reduce(&self, p: &MultiPoly, basis: &[Elem], active: &[usize]) -> (MultiPoly, BTreeMap<usize, MultiPoly>) {
        let mut work: BTreeMap<OrderKey, (Monomial, FieldElement)> =
            p.terms().map(|(m, c)| (self.order.key(m), (m.clone(), c.clone()))).collect();
        let mut rem = self.zero();
        let mut quots: BTreeMap<usize, MultiPoly> = BTreeMap::new();
        while let Some((_, (m, c))) = work.pop_last() {
            let hit = active.iter().copied().find(|&i| basis[i].lm().divides(&m));
            match hit {
                Some(i) => {
                    let g = &basis[i];
                    let shift = g.lm().quotient_of(&m);
                    let coef = c.div(&g.terms[0].1);
                    quots
                        .entry(i)
                        .or_insert_with(|| self.zero())
                        .add_term(shift.clone(), coef.clone());
                    for (gm, gc) in g.terms.iter().skip(1) {
                        let nm = gm.mul(&shift);
                        let key = self.order.key(&nm);
                        let delta = gc.mul(&coef).neg();
                        match work.entry(key) {
                            std::collections::btree_map::Entry::Vacant(e) => {
                                e.insert((nm, delta));
                            }
                            std::collections::btree_map::Entry::Occupied(mut e) => {
                                let s = e.get().1.add(&delta);
                                if s.is_zero() {
                                    e.remove();
                                } else {
                                    e.get_mut().1 = s;
                                }
                            }
                        }
                    }
                }
                None => rem.add_term(m, c),
            }
        }
        (rem, quots)
    }

    fn row_minus_quotients(&self, mut row: Vec<MultiPoly>, quots: &BTreeMap<usize, MultiPoly>, basis: &[Elem]) -> Vec<MultiPoly> {
        for (&i, q) in quots {
            for (r, b) in row.iter_mut().zip(&basis[i].row) {
                if !b.is_zero() {
                    *r = &*r - &(q * b);
                }
            }
        }
        row
    }

    fn make_elem(&self, p: MultiPoly, row: Vec<MultiPoly>) -> Elem {
        let terms = self.sorted_terms(&p);
        let inv = terms[0].1.inv();
        Elem {
            terms: terms.into_iter().map(|(m, c)| (m, c.mul(&inv))).collect(),
            row: row.iter().map(|r| r.scale(&inv)).collect(),
        }
    }

    fn spoly(&self, a: &Elem, b: &Elem) -> (MultiPoly, Vec<MultiPoly>) {
        let l = a.lm().lcm(b.lm());
        let sa = a.lm().quotient_of(&l);
        let sb = b.lm().quotient_of(&l);
        let pa = a.to_poly(&self.template).shift(&sa);
        let pb = b.to_poly(&self.template).shift(&sb);
        let row = a
            .row
            .iter()
            .zip(&b.row)
            .map(|(ra, rb)| &ra.shift(&sa) - &rb.shift(&sb))
            .collect();
        (&pa - &pb, row)
    }
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

/// Gebauer–Möller installation of the new element `h` into `active` and `pairs`.
fn update(basis: &[Elem], active: &mut Vec<usize>, pairs: &mut Vec<Pair>, h: usize) {
    let lh = basis[h].lm().clone();
    let mut c: Vec<Pair> = active
        .iter()
        .map(|&g| Pair {
            i: g,
            j: h,
            lcm: basis[g].lm().lcm(&lh),
        })
        .collect();
    let mut d: Vec<Pair> = Vec::new();
    while let Some(p) = (!c.is_empty()).then(|| c.remove(0)) {
        let coprime = basis[p.i].lm().is_coprime(&lh);
        let dominated = c.iter().chain(d.iter()).any(|q| q.lcm.divides(&p.lcm));
        if coprime || !dominated {
            d.push(p);
        }
    }
    let e: Vec<Pair> = d.into_iter().filter(|p| !basis[p.i].lm().is_coprime(&lh)).collect();
    pairs.retain(|p| {
        !(lh.divides(&p.lcm)
            && basis[p.i].lm().lcm(&lh) != p.lcm
            && basis[p.j].lm().lcm(&lh) != p.lcm)
    });
    pairs.extend(e);
    active.retain(|&g| !lh.divides(basis[g].lm()));
    active.push(h);
}

/// Computes the reduced Gröbner basis of `basis` with its transform.
pub fn buchberger(basis: &IdealBasis, cfg: &GbConfig) -> Result<GroebnerBasis> {
    let gens = basis.generators();
    let order = basis.order();
    let engine = Engine {
        order,
        template: gens[0].clone(),
        ngens: gens.len(),
    };
    let mut elems: Vec<Elem> = Vec::new();
    let mut active: Vec<usize> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();

    let admit = |p: MultiPoly, row: Vec<MultiPoly>, elems: &mut Vec<Elem>, active: &mut Vec<usize>, pairs: &mut Vec<Pair>| -> Result<()> {
        if p.total_degree().unwrap_or(0) > cfg.max_degree {
            return Err(AlgebraError::ResourceExhausted(format!(
                "basis element of degree above {}",
                cfg.max_degree
            )));
        }
        if elems.len() >= cfg.max_basis {
            return Err(AlgebraError::ResourceExhausted(format!(
                "basis grew beyond {} elements",
                cfg.max_basis
            )));
        }
        elems.push(engine.make_elem(p, row));
        let h = elems.len() - 1;
        update(elems, active, pairs, h);
        Ok(())
    };

    for (j, g) in gens.iter().enumerate() {
        let (r, quots) = engine.reduce(g, &elems, &active);
        if r.is_zero() {
            continue;
        }
        let mut row = engine.zero_row();
        row[j] = MultiPoly::one(g.field(), g.vars());
        let row = engine.row_minus_quotients(row, &quots, &elems);
        admit(r, row, &mut elems, &mut active, &mut pairs)?;
    }

    while !pairs.is_empty() {
        // Normal strategy: smallest lcm first, ties broken deterministically.
        let best = (0..pairs.len())
            .min_by(|&a, &b| {
                let (pa, pb) = (&pairs[a], &pairs[b]);
                pa.lcm
                    .total_degree()
                    .cmp(&pb.lcm.total_degree())
                    .then_with(|| order.cmp(&pa.lcm, &pb.lcm))
                    .then_with(|| (pa.i, pa.j).cmp(&(pb.i, pb.j)))
            })
            .unwrap();
        let pair = pairs.swap_remove(best);
        let (s, row) = engine.spoly(&elems[pair.i], &elems[pair.j]);
        let (r, quots) = engine.reduce(&s, &elems, &active);
        if r.is_zero() {
            continue;
        }
        let row = engine.row_minus_quotients(row, &quots, &elems);
        admit(r, row, &mut elems, &mut active, &mut pairs)?;
    }

    // `active` is a minimal basis; interreduce the tails.
    let mut reduced: Vec<Elem> = Vec::new();
    for &i in &active {
        let others: Vec<usize> = active.iter().copied().filter(|&k| k != i).collect();
        let p = elems[i].to_poly(&engine.template);
        let (r, quots) = engine.reduce(&p, &elems, &others);
        let row = engine.row_minus_quotients(elems[i].row.clone(), &quots, &elems);
        reduced.push(engine.make_elem(r, row));
    }
    reduced.sort_by(|a, b| order.cmp(b.lm(), a.lm()));
    let elements = reduced.iter().map(|e| e.to_poly(&engine.template)).collect();
    Ok(GroebnerBasis {
        order: order.clone(),
        generators: gens.to_vec(),
        elems: reduced,
        elements,
    })
}

impl GroebnerBasis {
    pub fn elements(&self) -> &[MultiPoly] {
        &self.elements
    }

    pub fn generators(&self) -> &[MultiPoly] {
        &self.generators
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    /// `transform()[i][j]` is the cofactor of generator `j` in element `i`.
    pub fn transform(&self) -> Vec<Vec<MultiPoly>> {
        self.elems.iter().map(|e| e.row.clone()).collect()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.elems.iter().map(|e| e.lm().clone()).collect()
    }

    /// True when the ideal is the whole ring.
    pub fn is_unit_ideal(&self) -> bool {
        self.elems.len() == 1 && self.elems[0].lm().is_one()
    }

    fn engine(&self) -> Engine<'_> {
        Engine {
            order: &self.order,
            template: self.generators[0].clone(),
            ngens: self.generators.len(),
        }
    }

    /// Normal form of `p` and the certificate `p - nf = Σ cofactor_j · generator_j`.
    pub fn reduce_full(&self, p: &MultiPoly) -> Result<(MultiPoly, MembershipCertificate)> {
        let engine = self.engine();
        if p.field() != engine.template.field() || p.vars() != engine.template.vars() {
            return Err(AlgebraError::FieldMismatch(p.to_string(), engine.template.to_string()));
        }
        let active: Vec<usize> = (0..self.elems.len()).collect();
        let (nf, quots) = engine.reduce(p, &self.elems, &active);
        let zero_row = engine.zero_row();
        let neg = engine.row_minus_quotients(zero_row, &quots, &self.elems);
        let cofactors = neg.iter().map(|c| -c).collect();
        Ok((nf, MembershipCertificate { cofactors }))
    }

    /// Checks that every S-polynomial reduces to zero and the transform rows
    /// reconstruct their elements.
    pub fn self_check(&self) -> bool {
        let engine = self.engine();
        let active: Vec<usize> = (0..self.elems.len()).collect();
        for i in 0..self.elems.len() {
            let row = MembershipCertificate {
                cofactors: self.elems[i].row.clone(),
            };
            if !row.verifies(&self.generators, &self.elements[i]) {
                return false;
            }
            for j in (i + 1)..self.elems.len() {
                let (s, _) = engine.spoly(&self.elems[i], &self.elems[j]);
                if !engine.reduce(&s, &self.elems, &active).0.is_zero() {
                    return false;
                }
            }
        }
        true
    }
}

/// Normal form of `p` modulo `gb`, with its certificate.
pub fn reduce_full(p: &MultiPoly, gb: &GroebnerBasis) -> Result<(MultiPoly, MembershipCertificate)> {
    gb.reduce_full(p)
}

/// A certificate for `p ∈ (basis)` against the original generators, or `None`
/// when the normal form is nonzero (a proof of non-membership).
pub fn is_member(p: &MultiPoly, basis: &IdealBasis, cfg: &GbConfig) -> Result<Option<MembershipCertificate>> {
    let gb = buchberger(basis, cfg)?;
    member_of(p, &gb)
}

/// Membership against a precomputed basis.
pub fn member_of(p: &MultiPoly, gb: &GroebnerBasis) -> Result<Option<MembershipCertificate>> {
    let (nf, cert) = gb.reduce_full(p)?;
    if !nf.is_zero() {
        return Ok(None);
    }
    if !cert.verifies(gb.generators(), p) {
        return Err(AlgebraError::Invalid("internal error: certificate failed to reconstruct".into()));
    }
    Ok(Some(cert))
}

/// Two-way generator inclusion.
pub fn ideals_equal(a: &IdealBasis, b: &IdealBasis, cfg: &GbConfig) -> Result<bool> {
    Ok(inclusion_certificates(a, b, cfg)?.is_some() && inclusion_certificates(b, a, cfg)?.is_some())
}

/// Certificates for every generator of `a` inside `b`, or `None` if one fails.
pub fn inclusion_certificates(a: &IdealBasis, b: &IdealBasis, cfg: &GbConfig) -> Result<Option<Vec<MembershipCertificate>>> {
    let gb = buchberger(b, cfg)?;
    let mut out = Vec::new();
    for g in a.generators() {
        match member_of(g, &gb)? {
            Some(c) => out.push(c),
            None => return Ok(None),
        }
    }
    Ok(Some(out))
}

/// Rewrites a certificate into a triangular form: the cofactor of generator `i`
/// is replaced by its normal form modulo generators `i+1..`, the difference
/// being pushed onto those later cofactors. The combination is unchanged.
pub fn normalize_certificate(
    cert: &MembershipCertificate,
    generators: &[MultiPoly],
    order: &MonomialOrder,
    cfg: &GbConfig,
) -> Result<MembershipCertificate> {
    let mut cof = cert.cofactors.clone();
    let m = generators.len();
    for i in 0..m.saturating_sub(1) {
        if cof[i].is_zero() {
            continue;
        }
        let rest: Vec<MultiPoly> = generators[i + 1..].iter().filter(|g| !g.is_zero()).cloned().collect();
        if rest.len() != m - i - 1 {
            continue;
        }
        let gb = buchberger(&IdealBasis::new(rest, order.clone())?, cfg)?;
        let (nf, c) = gb.reduce_full(&cof[i])?;
        for (k, ck) in c.cofactors.iter().enumerate() {
            if !ck.is_zero() {
                cof[i + 1 + k] = &cof[i + 1 + k] + &(ck * &generators[i]);
            }
        }
        cof[i] = nf;
    }
    Ok(MembershipCertificate { cofactors: cof })
}

/// An inverse of `p` modulo `basis`, when `1 ∈ (p) + basis`.
pub fn is_unit_modulo(p: &MultiPoly, basis: &IdealBasis, cfg: &GbConfig) -> Result<Option<MultiPoly>> {
    if p.is_zero() {
        return Ok(None);
    }
    let mut gens = vec![p.clone()];
    gens.extend(basis.generators().iter().cloned());
    let aug = IdealBasis::new(gens.clone(), basis.order().clone())?;
    let one = MultiPoly::one(p.field(), p.vars());
    match is_member(&one, &aug, cfg)? {
        Some(cert) => {
            let cert = normalize_certificate(&cert, &gens, basis.order(), cfg)?;
            Ok(Some(cert.cofactors[0].clone()))
        }
        None => Ok(None),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::parse::parse_poly;
    use crate::poly::VarSet;

    fn q(s: &str) -> MultiPoly {
        parse_poly(s, FieldSpec::Rationals).unwrap()
    }

    fn ideal(gens: &[&str]) -> IdealBasis {
        IdealBasis::grevlex(gens.iter().map(|g| q(g)).collect()).unwrap()
    }

    fn cfg() -> GbConfig {
        GbConfig::default()
    }

    #[test]
    fn orders_compare_as_expected() {
        let g = MonomialOrder::grevlex(4);
        let m = |e: &[u32]| Monomial::from_exponents(e);
        // X^2*Y has degree 3 > Z^2.
        assert_eq!(g.cmp(&m(&[2, 1, 0, 0]), &m(&[0, 0, 2, 0])), Ordering::Greater);
        // Equal degree: more X (the last-ranked variable) is smaller.
        assert_eq!(g.cmp(&m(&[1, 1, 0, 0]), &m(&[0, 1, 1, 0])), Ordering::Less);
        let l = MonomialOrder::lex(4);
        assert_eq!(l.cmp(&m(&[0, 1, 0, 0]), &m(&[5, 0, 3, 0])), Ordering::Greater);
        assert!(MonomialOrder::new(OrderKind::Lex, vec![0, 0, 1]).is_err());
    }

    #[test]
    fn single_variable_is_its_own_basis() {
        let gb = buchberger(&ideal(&["X"]), &cfg()).unwrap();
        assert_eq!(gb.elements(), &[q("X")]);
        assert!(gb.self_check());
    }

    #[test]
    fn basis_picks_up_z_squared() {
        let basis = IdealBasis::new(vec![q("X^2*Y - Z^2"), q("X")], MonomialOrder::lex(4)).unwrap();
        let gb = buchberger(&basis, &cfg()).unwrap();
        assert!(gb.elements().contains(&q("Z^2")), "{:?}", gb.elements());
        assert!(gb.self_check());
    }

    #[test]
    fn reduce_against_single_relation() {
        let gb = buchberger(
            &IdealBasis::new(vec![q("X^2*Y - Z^2")], MonomialOrder::lex(4)).unwrap(),
            &cfg(),
        )
        .unwrap();
        let (nf, cert) = gb.reduce_full(&q("X^2*Y")).unwrap();
        // Under lex with Y ranked first, X^2*Y leads.
        assert_eq!(nf, q("Z^2"));
        assert_eq!(cert.cofactors, vec![q("1")]);
    }

    #[test]
    fn reduce_zero() {
        let gb = buchberger(&ideal(&["Y^2", "Z^2 - X^2*Y", "X^4"]), &cfg()).unwrap();
        let (nf, cert) = gb.reduce_full(&q("0")).unwrap();
        assert!(nf.is_zero());
        assert!(cert.cofactors.iter().all(|c| c.is_zero()));
    }

    #[test]
    fn reduce_with_certificate_against_original_generators() {
        let basis = ideal(&["Y^2", "Z^2 - X^2*Y", "X^4"]);
        let gb = buchberger(&basis, &cfg()).unwrap();
        assert!(gb.self_check());
        let target = q("Y^2 - X*Y*Z^2");
        let (nf, cert) = gb.reduce_full(&target).unwrap();
        assert!(nf.is_zero());
        assert!(cert.verifies(basis.generators(), &target));
        let normal = normalize_certificate(&cert, basis.generators(), basis.order(), &cfg()).unwrap();
        assert_eq!(normal.cofactors, vec![q("1 - X^3"), q("-X*Y"), q("0")]);
    }

    #[test]
    fn membership_examples() {
        let basis = ideal(&["X", "X^2*Y - Z^2"]);
        let cert = is_member(&q("Z^2"), &basis, &cfg()).unwrap().unwrap();
        assert_eq!(cert.cofactors, vec![q("X*Y"), q("-1")]);

        let basis = ideal(&["X^4", "X^2*Y - Z^2", "X^4*T - Y^2"]);
        assert!(is_member(&q("X^2*Y"), &basis, &cfg()).unwrap().is_none());

        let cert = is_member(&q("1"), &ideal(&["1"]), &cfg()).unwrap().unwrap();
        assert_eq!(cert.cofactors, vec![q("1")]);
    }

    #[test]
    fn ideal_equality_examples() {
        assert!(ideals_equal(&ideal(&["X", "Z^2"]), &ideal(&["Z^2 - X^2*Y", "X"]), &cfg()).unwrap());
        assert!(!ideals_equal(&ideal(&["X"]), &ideal(&["X^2"]), &cfg()).unwrap());
        let b = ideal(&["X^2*Y - Z^2", "X^4*T - Y^2 + X*Y*Z^2"]);
        assert!(ideals_equal(&b, &b, &cfg()).unwrap());
    }

    #[test]
    fn unit_modulo_examples() {
        let inv = is_unit_modulo(&q("1 - X^3"), &ideal(&["X^4"]), &cfg()).unwrap().unwrap();
        assert_eq!(inv, q("1 + X^3"));
        assert!(is_unit_modulo(&q("X"), &ideal(&["X^4"]), &cfg()).unwrap().is_none());
        let inv = is_unit_modulo(&q("5"), &ideal(&["X^2*Y - Z^2", "X^3"]), &cfg()).unwrap().unwrap();
        assert_eq!(inv, q("1/5"));
    }

    #[test]
    fn resource_cap_is_reported() {
        let tight = GbConfig {
            max_basis: 1,
            max_degree: 100,
        };
        let r = buchberger(&ideal(&["X^2*Y - Z^2", "X"]), &tight);
        assert!(matches!(r, Err(AlgebraError::ResourceExhausted(_))));
    }

    #[test]
    fn rejects_mixed_rings_and_zero_generators() {
        let f3 = FieldSpec::prime(3).unwrap();
        let a = q("X");
        let b = parse_poly("Y", f3).unwrap();
        assert!(IdealBasis::grevlex(vec![a.clone(), b]).is_err());
        assert!(IdealBasis::grevlex(vec![a, q("0")]).is_err());
        assert!(IdealBasis::grevlex(vec![]).is_err());
    }

    #[test]
    fn three_variable_ring() {
        let vars = VarSet::new(&["X", "Y", "Z"]).unwrap();
        let f2 = FieldSpec::prime(2).unwrap();
        let p = |s: &str| crate::parse::parse_poly_in(s, f2, &vars).unwrap();
        let basis = IdealBasis::grevlex(vec![p("X*Y + Z"), p("Y^2 + X")]).unwrap();
        let gb = buchberger(&basis, &cfg()).unwrap();
        assert!(gb.self_check());
        let target = &(&p("X*Y + Z") * &p("Z + 1")) + &(&p("Y^2 + X") * &p("X*Y"));
        let cert = member_of(&target, &gb).unwrap().unwrap();
        assert!(cert.verifies(basis.generators(), &target));
    }
}
