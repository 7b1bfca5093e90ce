//! Isomorphism witnesses `(λ, γ, δ, f)` and the two conditions they must meet.

use serde::Serialize;

use crate::error::{AlgebraError, Result};
use crate::field::FieldElement;
use crate::groebner::{buchberger, member_of, normalize_certificate, GbConfig, GroebnerBasis, IdealBasis, MembershipCertificate};
use crate::poly::{MultiPoly, VarSet, T, X, Y, Z};
use crate::surface::SurfacePresentation;

use super::ring::{Ring, RingMap};

/// `(λ, γ, δ, f)` satisfying the P-condition, before the Q-condition is checked.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PartialWitness {
    pub lambda: FieldElement,
    pub gamma: FieldElement,
    pub delta: MultiPoly,
    pub f: MultiPoly,
}

/// A certificate together with the generators it refers to.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertificateReport {
    pub generators: Vec<MultiPoly>,
    pub cofactors: Vec<MultiPoly>,
}

impl CertificateReport {
    fn new(generators: Vec<MultiPoly>, cert: MembershipCertificate) -> Self {
        CertificateReport {
            generators,
            cofactors: cert.cofactors,
        }
    }

    pub fn certificate(&self) -> MembershipCertificate {
        MembershipCertificate {
            cofactors: self.cofactors.clone(),
        }
    }
}

/// A complete witness: the map `x2 ↦ λX, z2 ↦ γZ + δ, y2 ↦ νY + g` together
/// with certificates for both inclusions of the Q-ideals.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsoWitness {
    pub lambda: FieldElement,
    pub gamma: FieldElement,
    pub delta: MultiPoly,
    pub f: MultiPoly,
    pub nu: FieldElement,
    pub g: MultiPoly,
    /// `Q2(X2, Y2, Z2) = h1·Q1 + h2·G + h3·X^e`.
    pub h_cert: CertificateReport,
    /// `Q1 = f1·Q2(X2, Y2, Z2) + f2·G + f3·X^e`.
    pub h_cert_rev: CertificateReport,
}

impl IsoWitness {
    pub fn partial(&self) -> PartialWitness {
        PartialWitness {
            lambda: self.lambda.clone(),
            gamma: self.gamma.clone(),
            delta: self.delta.clone(),
            f: self.f.clone(),
        }
    }
}

fn precondition<T>(msg: String) -> Result<T> {
    Err(AlgebraError::Precondition(msg))
}

pub(crate) fn check_p_preconditions(s1: &SurfacePresentation, s2: &SurfacePresentation) -> Result<()> {
    if s1.field() != s2.field() {
        return Err(AlgebraError::FieldMismatch(s1.field().describe(), s2.field().describe()));
    }
    if s1.r() != s2.r() || s1.r() < 2 {
        return precondition(format!("need r1 = r2 > 1 (got {}, {})", s1.r(), s2.r()));
    }
    if s1.d() != s2.d() {
        return precondition(format!("need d1 = d2 (got {}, {})", s1.d(), s2.d()));
    }
    Ok(())
}

fn check_q_preconditions(s1: &SurfacePresentation, s2: &SurfacePresentation) -> Result<()> {
    check_p_preconditions(s1, s2)?;
    if s1.e() != s2.e() {
        return precondition(format!("need e1 = e2 (got {}, {})", s1.e(), s2.e()));
    }
    if s1.s() != s2.s() || s1.s() < 2 {
        return precondition(format!("need s1 = s2 > 1 (got {}, {})", s1.s(), s2.s()));
    }
    Ok(())
}

fn check_scalars(lambda: &FieldElement, gamma: &FieldElement, delta: &MultiPoly) -> Result<()> {
    if lambda.is_zero() || gamma.is_zero() {
        return precondition("λ and γ must be nonzero".into());
    }
    if delta.uses_var(Y) || delta.uses_var(Z) || delta.uses_var(T) {
        return precondition(format!("δ must lie in k[X] (got {delta})"));
    }
    Ok(())
}

fn vars() -> VarSet {
    VarSet::xyzt()
}

fn var(s: &SurfacePresentation, v: usize) -> MultiPoly {
    MultiPoly::var(s.field(), &vars(), v)
}

/// Images `(λX, Y, γZ + δ, T)` used to transform `P2`.
fn xz_images(s: &SurfacePresentation, lambda: &FieldElement, gamma: &FieldElement, delta: &MultiPoly) -> Vec<MultiPoly> {
    vec![
        var(s, X).scale(lambda),
        var(s, Y),
        &var(s, Z).scale(gamma) + delta,
        var(s, T),
    ]
}

/// `ν = λ^{-d} γ^r`.
pub fn nu_of(d: u32, r: u32, lambda: &FieldElement, gamma: &FieldElement) -> FieldElement {
    lambda.pow(-(d as i64)).mul(&gamma.pow(r as i64))
}

/// Exact quotient `f = (P2(λX, γZ + δ) - γ^r P1) / X^d`, or `None` when `X^d`
/// does not divide.
pub fn p_condition(
    s1: &SurfacePresentation,
    s2: &SurfacePresentation,
    lambda: &FieldElement,
    gamma: &FieldElement,
    delta: &MultiPoly,
) -> Result<Option<MultiPoly>> {
    check_p_preconditions(s1, s2)?;
    check_scalars(lambda, gamma, delta)?;
    let lhs = s2.p().compose(&xz_images(s1, lambda, gamma, delta))?;
    let diff = &lhs - &s1.p().scale(&gamma.pow(s1.r() as i64));
    Ok(diff.div_var_pow(X, s1.d()))
}

/// The P-condition modulo `X^d` only; it depends on `δ` mod `X^d`.
fn p_condition_holds(s1: &SurfacePresentation, s2: &SurfacePresentation, lambda: &FieldElement, gamma: &FieldElement, delta: &MultiPoly) -> Result<bool> {
    let d = s1.d();
    let lhs = s2.p().compose_truncated(&xz_images(s1, lambda, gamma, delta), X, d)?;
    let rhs = s1.p().scale(&gamma.pow(s1.r() as i64)).truncate_var(X, d);
    Ok(lhs == rhs)
}

/// Scalar and coefficient ranges for a witness search.
#[derive(Clone, Debug)]
pub(crate) struct SearchSpace {
    pub scalars: Vec<FieldElement>,
    pub coefficients: Vec<FieldElement>,
}

impl SearchSpace {
    pub fn new(s: &SurfacePresentation, candidates: Option<&[FieldElement]>) -> Result<Self> {
        let field = s.field();
        if let Some(units) = field.units() {
            return Ok(SearchSpace {
                scalars: units,
                coefficients: field.elements().expect("finite field"),
            });
        }
        let cands = match candidates {
            Some(c) if !c.is_empty() => c,
            _ => return precondition("search over an infinite field needs a candidate set".into()),
        };
        let mut scalars = Vec::new();
        for c in cands {
            if c.field() != field {
                return Err(AlgebraError::FieldMismatch(field.describe(), c.to_string()));
            }
            if !c.is_zero() && !scalars.contains(c) {
                scalars.push(c.clone());
            }
        }
        let mut coefficients = vec![field.zero()];
        for c in &scalars {
            coefficients.push(c.clone());
        }
        Ok(SearchSpace { scalars, coefficients })
    }
}

/// All coefficient tuples of length `n`, lexicographic with the first entry
/// most significant.
fn tuples(coeffs: &[FieldElement], n: usize) -> Vec<Vec<FieldElement>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        let mut next = Vec::with_capacity(out.len() * coeffs.len());
        for t in &out {
            for c in coeffs {
                let mut t = t.clone();
                t.push(c.clone());
                next.push(t);
            }
        }
        out = next;
    }
    out
}

fn x_poly(s: &SurfacePresentation, coeffs: &[FieldElement]) -> MultiPoly {
    let x = var(s, X);
    let mut out = MultiPoly::zero(s.field(), &vars());
    for (i, c) in coeffs.iter().enumerate() {
        out = &out + &x.pow(i as u32).scale(c);
    }
    out
}

/// `(λ, γ, δ)` with `deg δ ≤ bound` passing the P-condition, in search order:
/// `λ`, then `γ`, then the coefficient tuple of `δ` from the constant term up.
pub(crate) fn p_candidates(
    s1: &SurfacePresentation,
    s2: &SurfacePresentation,
    bound: u32,
    space: &SearchSpace,
) -> Result<Vec<(FieldElement, FieldElement, MultiPoly)>> {
    check_p_preconditions(s1, s2)?;
    let n = bound as usize + 1;
    let low_len = n.min(s1.d() as usize);
    let lows = tuples(&space.coefficients, low_len);
    let highs = tuples(&space.coefficients, n - low_len);
    let mut out = Vec::new();
    for lambda in &space.scalars {
        for gamma in &space.scalars {
            for low in &lows {
                let dl = x_poly(s1, low);
                if !p_condition_holds(s1, s2, lambda, gamma, &dl)? {
                    continue;
                }
                for high in &highs {
                    let mut all = low.clone();
                    all.extend(high.iter().cloned());
                    out.push((lambda.clone(), gamma.clone(), x_poly(s1, &all)));
                }
            }
        }
    }
    Ok(out)
}

/// Every partial witness with `deg δ ≤ bound`. Over a finite field all units
/// and all coefficients are tried; over ℚ, `candidates` supplies `λ`, `γ`, and
/// together with 0 the coefficients of `δ`.
pub fn solve_p_condition(
    s1: &SurfacePresentation,
    s2: &SurfacePresentation,
    bound: u32,
    candidates: Option<&[FieldElement]>,
) -> Result<Vec<PartialWitness>> {
    let space = SearchSpace::new(s1, candidates)?;
    p_candidates(s1, s2, bound, &space)?
        .into_iter()
        .map(|(lambda, gamma, delta)| {
            let f = p_condition(s1, s2, &lambda, &gamma, &delta)?.expect("P-condition checked modulo X^d");
            Ok(PartialWitness { lambda, gamma, delta, f })
        })
        .collect()
}

/// The Gröbner basis of `(Q1, G, X^e)`, shared by every candidate tried against `S1`.
pub struct QContext {
    generators: Vec<MultiPoly>,
    gb: GroebnerBasis,
}

impl QContext {
    pub fn new(s1: &SurfacePresentation, cfg: &GbConfig) -> Result<Self> {
        let generators = vec![s1.q().clone(), s1.g_relation(), MultiPoly::var_pow(s1.field(), &vars(), X, s1.e())];
        let gb = buchberger(&IdealBasis::grevlex(generators.clone())?, cfg)?;
        Ok(QContext { generators, gb })
    }
}

/// Outcome of the Q-condition for one partial witness.
#[derive(Clone, Debug)]
pub enum QOutcome {
    Holds(Box<IsoWitness>),
    Fails(String),
}

/// `(λX, νY + g, γZ + δ, T)`.
fn forward_images(s1: &SurfacePresentation, w: &PartialWitness, nu: &FieldElement, g: &MultiPoly) -> Vec<MultiPoly> {
    vec![
        var(s1, X).scale(&w.lambda),
        &var(s1, Y).scale(nu) + g,
        &var(s1, Z).scale(&w.gamma) + &w.delta,
        var(s1, T),
    ]
}

/// Checks `(Q2(X2,Y2,Z2), γ^r G, X^e) = (Q1, G, X^e)` with both certificates.
pub fn check_q_condition_with(
    ctx: &QContext,
    s1: &SurfacePresentation,
    s2: &SurfacePresentation,
    w: &PartialWitness,
    cfg: &GbConfig,
) -> Result<QOutcome> {
    check_q_preconditions(s1, s2)?;
    check_scalars(&w.lambda, &w.gamma, &w.delta)?;
    let (d, e, r) = (s1.d(), s1.e(), s1.r());
    let nu = nu_of(d, r, &w.lambda, &w.gamma);
    let g = w.f.scale(&w.lambda.pow(-(d as i64)));
    let images = forward_images(s1, w, &nu, &g);
    // X^e lies in both ideals, so membership can be decided modulo X^e.
    let f_low = s2.q().compose_truncated(&images, X, e)?;
    let Some(fwd_low) = member_of(&f_low, &ctx.gb)? else {
        return Ok(QOutcome::Fails(format!(
            "Q2(X2, Y2, Z2) ≡ {f_low} (mod X^{e}) is not in (Q1, G, X^{e})"
        )));
    };
    let second = vec![f_low.clone(), s1.g_relation(), ctx.generators[2].clone()];
    let gb2 = buchberger(&IdealBasis::grevlex(second)?, cfg)?;
    let Some(rev_low) = member_of(s1.q(), &gb2)? else {
        return Ok(QOutcome::Fails(format!(
            "Q1 is not in (Q2(X2, Y2, Z2), G, X^{e}); the ideals differ"
        )));
    };
    let full = s2.q().compose(&images)?;
    let excess = (&full - &f_low).div_var_pow(X, e).expect("truncation drops only multiples of X^e");
    let mut fwd = fwd_low.cofactors;
    fwd[2] = &fwd[2] + &excess;
    let mut rev = rev_low.cofactors;
    rev[2] = &rev[2] - &(&rev[0] * &excess);
    let order = ctx.gb.order().clone();
    let fwd_gens = ctx.generators.clone();
    let rev_gens = vec![full.clone(), s1.g_relation(), ctx.generators[2].clone()];
    let fwd = normalize_certificate(&MembershipCertificate { cofactors: fwd }, &fwd_gens, &order, cfg)?;
    let rev = normalize_certificate(&MembershipCertificate { cofactors: rev }, &rev_gens, &order, cfg)?;
    if !fwd.verifies(&fwd_gens, &full) || !rev.verifies(&rev_gens, s1.q()) {
        return Err(AlgebraError::Invalid("internal error: Q-condition certificate failed to expand".into()));
    }
    Ok(QOutcome::Holds(Box::new(IsoWitness {
        lambda: w.lambda.clone(),
        gamma: w.gamma.clone(),
        delta: w.delta.clone(),
        f: w.f.clone(),
        nu,
        g,
        h_cert: CertificateReport::new(fwd_gens, fwd),
        h_cert_rev: CertificateReport::new(rev_gens, rev),
    })))
}

/// The Q-condition for one partial witness; `None` when the ideals differ.
pub fn check_q_condition(
    s1: &SurfacePresentation,
    s2: &SurfacePresentation,
    w: &PartialWitness,
    cfg: &GbConfig,
) -> Result<Option<IsoWitness>> {
    check_q_preconditions(s1, s2)?;
    let ctx = QContext::new(s1, cfg)?;
    Ok(match check_q_condition_with(&ctx, s1, s2, w, cfg)? {
        QOutcome::Holds(w) => Some(*w),
        QOutcome::Fails(_) => None,
    })
}

/// Inverse of `X ↦ λX, Z ↦ γZ + δ(X), Y ↦ νY + g(X, Z)`, fixing `T`.
pub fn inverse_images(
    s: &SurfacePresentation,
    lambda: &FieldElement,
    gamma: &FieldElement,
    delta: &MultiPoly,
    nu: &FieldElement,
    g: &MultiPoly,
) -> Result<Vec<MultiPoly>> {
    let x_pre = var(s, X).scale(&lambda.inv());
    let id_but_x = vec![x_pre.clone(), var(s, Y), var(s, Z), var(s, T)];
    let z_pre = (&var(s, Z) - &delta.compose(&id_but_x)?).scale(&gamma.inv());
    let xz = vec![x_pre.clone(), var(s, Y), z_pre.clone(), var(s, T)];
    let y_pre = (&var(s, Y) - &g.compose(&xz)?).scale(&nu.inv());
    Ok(vec![x_pre, y_pre, z_pre, var(s, T)])
}

/// The isomorphism from the ring of `S2` onto the ring of `S1` defined by a
/// complete witness, with preimages of `S1`'s generators from the reverse
/// certificate.
pub fn build_isomorphism(s1: &SurfacePresentation, s2: &SurfacePresentation, w: &IsoWitness) -> Result<RingMap> {
    check_q_preconditions(s1, s2)?;
    let e = s1.e() as i64;
    if w.h_cert.cofactors.len() != 3 || w.h_cert_rev.cofactors.len() != 3 {
        return Err(AlgebraError::Invalid("witness certificates must have three cofactors".into()));
    }
    let (h1, h3) = (&w.h_cert.cofactors[0], &w.h_cert.cofactors[2]);
    let t_img = (&(h1 * &var(s1, T)) + h3).scale(&w.lambda.pow(-e));
    let mut images = forward_images(s1, &w.partial(), &w.nu, &w.g);
    images[T] = t_img;
    let inv = inverse_images(s1, &w.lambda, &w.gamma, &w.delta, &w.nu, &w.g)?;
    let (f1, f3) = (&w.h_cert_rev.cofactors[0], &w.h_cert_rev.cofactors[2]);
    let t_pre = &(&f1.compose(&inv)?.scale(&w.lambda.pow(e)) * &var(s1, T)) + &f3.compose(&inv)?;
    let mut pre = inv;
    pre[T] = t_pre;
    RingMap::new(
        Ring::Surface(s2.clone()),
        Ring::Surface(s1.clone()),
        images,
        Some(pre.into_iter().map(Some).collect()),
    )
}
