//! Isomorphism classification of double Danielewski surfaces.
//!
//! Witnesses describe maps from the ring of `S2` to the ring of `S1`:
//! `x2 ↦ λ·x1`, `z2 ↦ γ·z1 + δ(x1)`, `y2 ↦ ν·y1 + g(x1, z1)`.

mod automorphism;
mod ring;
mod witness;

use std::sync::atomic::{AtomicBool, Ordering};

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{AlgebraError, Result};
use crate::field::FieldElement;
use crate::groebner::GbConfig;
use crate::poly::MultiPoly;
use crate::surface::SurfacePresentation;

pub use automorphism::{verify_automorphism, AutomorphismReport, CheckResult};
pub use ring::{verify_ring_map, MapStatus, MapVerification, PreimageCheck, RelationCheck, Ring, RingMap, RingPresentation};
pub use witness::{
    build_isomorphism, check_q_condition, check_q_condition_with, inverse_images, nu_of, p_condition, solve_p_condition, CertificateReport, IsoWitness,
    PartialWitness, QContext, QOutcome,
};

use witness::{p_candidates, SearchSpace};

impl Serialize for RingMap {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

/// Result of comparing the discrete invariants `(r, s, d, e)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InvariantOutcome {
    Compatible,
    NotIsomorphic(String),
    OutOfScope { reason: String, advisory: Option<String> },
}

/// Compares `(r, s)` and, when `s > 1`, `(d, e)`.
pub fn invariant_check(s1: &SurfacePresentation, s2: &SurfacePresentation) -> Result<InvariantOutcome> {
    if s1.field() != s2.field() {
        return Err(AlgebraError::FieldMismatch(s1.field().describe(), s2.field().describe()));
    }
    let (r1, s1_, d1, e1) = (s1.r(), s1.s(), s1.d(), s1.e());
    let (r2, s2_, d2, e2) = (s2.r(), s2.s(), s2.d(), s2.e());
    if r1 == 1 || r2 == 1 {
        return Ok(InvariantOutcome::OutOfScope {
            reason: format!(
                "r = 1 (r1 = {r1}, r2 = {r2}): P is linear in Z and (r, d) stop being invariants; \
                 e.g. X^2*Y - Z, X^e*T - Y^4 is isomorphic to k[X,Y,T]/(X^e*T - Y^4) via z2 = x^(d-2) z1"
            ),
            advisory: None,
        });
    }
    if (r1, s1_) != (r2, s2_) {
        return Ok(InvariantOutcome::NotIsomorphic(format!(
            "(r, s) differ: ({r1}, {s1_}) vs ({r2}, {s2_})"
        )));
    }
    if s1_ == 1 {
        let holds = d1 + e1 == d2 + e2;
        return Ok(InvariantOutcome::OutOfScope {
            reason: "s = 1: Q is linear in Y, so only d + e is an invariant and d itself may change".into(),
            advisory: Some(format!(
                "necessary condition d1 + e1 = d2 + e2: {} + {} = {} vs {} + {} = {} ({})",
                d1,
                e1,
                d1 + e1,
                d2,
                e2,
                d2 + e2,
                if holds { "holds" } else { "violated" }
            )),
        });
    }
    if (d1, e1) != (d2, e2) {
        return Ok(InvariantOutcome::NotIsomorphic(format!(
            "(d, e) differ: ({d1}, {e1}) vs ({d2}, {e2})"
        )));
    }
    Ok(InvariantOutcome::Compatible)
}

/// Bounds for [`decide_isomorphic`].
#[derive(Clone, Debug)]
#[derive(Default)]
pub struct SearchParams {
    /// Maximum degree of `δ`; `None` means `d + e - 1`, which is complete.
    pub delta_bound: Option<u32>,
    /// Scalar candidates for infinite fields; empty means `{1, -1}`.
    pub candidates: Vec<FieldElement>,
    pub gb: GbConfig,
}


#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LogEntry {
    pub step: String,
    pub outcome: String,
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "status", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum VerdictStatus {
    Isomorphic {
        witness: Box<IsoWitness>,
        map: Box<RingMap>,
        verification: Box<MapVerification>,
    },
    NotIsomorphic {
        reason: String,
    },
    NoWitnessWithinBounds {
        reason: String,
    },
    OutOfTheoremScope {
        reason: String,
        #[serde(skip_serializing_if = "Option::is_none")]
        advisory: Option<String>,
    },
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassificationVerdict {
    #[serde(flatten)]
    pub status: VerdictStatus,
    pub log: Vec<LogEntry>,
}

impl ClassificationVerdict {
    pub fn status_name(&self) -> &'static str {
        match self.status {
            VerdictStatus::Isomorphic { .. } => "ISOMORPHIC",
            VerdictStatus::NotIsomorphic { .. } => "NOT_ISOMORPHIC",
            VerdictStatus::NoWitnessWithinBounds { .. } => "NO_WITNESS_WITHIN_BOUNDS",
            VerdictStatus::OutOfTheoremScope { .. } => "OUT_OF_THEOREM_SCOPE",
        }
    }

    pub fn is_isomorphic(&self) -> bool {
        matches!(self.status, VerdictStatus::Isomorphic { .. })
    }

    pub fn witness(&self) -> Option<&IsoWitness> {
        match &self.status {
            VerdictStatus::Isomorphic { witness, .. } => Some(witness),
            _ => None,
        }
    }

    pub fn map(&self) -> Option<&RingMap> {
        match &self.status {
            VerdictStatus::Isomorphic { map, .. } => Some(map),
            _ => None,
        }
    }
}

struct Log(Vec<LogEntry>);

impl Log {
    fn push(&mut self, step: &str, outcome: impl Into<String>) {
        self.0.push(LogEntry {
            step: step.to_string(),
            outcome: outcome.into(),
        });
    }

    fn finish(self, status: VerdictStatus) -> ClassificationVerdict {
        ClassificationVerdict { status, log: self.0 }
    }
}

/// Scope and invariant stages shared by search and explicit checks.
fn screen(s1: &SurfacePresentation, s2: &SurfacePresentation, log: &mut Log) -> Result<Option<VerdictStatus>> {
    log.push("surfaces", format!("S1: r = {}, s = {}, d = {}, e = {}; S2: r = {}, s = {}, d = {}, e = {}",
        s1.r(), s1.s(), s1.d(), s1.e(), s2.r(), s2.s(), s2.d(), s2.e()));
    Ok(match invariant_check(s1, s2)? {
        InvariantOutcome::Compatible => {
            log.push("invariant_check", "(r, s, d, e) agree");
            None
        }
        InvariantOutcome::NotIsomorphic(reason) => {
            log.push("invariant_check", reason.clone());
            Some(VerdictStatus::NotIsomorphic { reason })
        }
        InvariantOutcome::OutOfScope { reason, advisory } => {
            log.push("scope", reason.clone());
            Some(VerdictStatus::OutOfTheoremScope { reason, advisory })
        }
    })
}

fn emit(s1: &SurfacePresentation, s2: &SurfacePresentation, w: IsoWitness, cfg: &GbConfig, log: &mut Log) -> Result<VerdictStatus> {
    let map = witness::build_isomorphism(s1, s2, &w)?;
    let verification = verify_ring_map(&map, cfg)?;
    if !verification.is_isomorphism() {
        return Err(AlgebraError::Invalid(format!(
            "internal error: constructed map failed re-verification: {:?}",
            verification.diagnostics
        )));
    }
    log.push("verify_ring_map", "relations vanish and all generators have verified preimages");
    Ok(VerdictStatus::Isomorphic {
        witness: Box::new(w),
        map: Box::new(map),
        verification: Box::new(verification),
    })
}

/// Decides whether the rings of `s1` and `s2` are isomorphic. Over a finite
/// field with the default `δ` bound the answer is definitive; otherwise a
/// failed search yields `NO_WITNESS_WITHIN_BOUNDS`.
pub fn decide_isomorphic(s1: &SurfacePresentation, s2: &SurfacePresentation, params: &SearchParams) -> Result<ClassificationVerdict> {
    let mut log = Log(Vec::new());
    if let Some(status) = screen(s1, s2, &mut log)? {
        return Ok(log.finish(status));
    }
    let field = s1.field();
    let complete_bound = s1.d() + s1.e() - 1;
    let bound = params.delta_bound.unwrap_or(complete_bound);
    let default_cands = [field.one(), field.one().neg()];
    let cands: &[FieldElement] = if params.candidates.is_empty() { &default_cands } else { &params.candidates };
    let space = SearchSpace::new(s1, Some(cands))?;
    let complete = field.is_finite() && bound >= complete_bound;
    log.push(
        "search_space",
        format!(
            "λ, γ over {} scalars, δ of degree ≤ {bound} with coefficients from {} values{}",
            space.scalars.len(),
            space.coefficients.len(),
            if complete { " (complete)" } else { "" }
        ),
    );
    let candidates = p_candidates(s1, s2, bound, &space)?;
    log.push("solve_P_condition", format!("{} candidates satisfy the P-condition", candidates.len()));
    if candidates.is_empty() && complete {
        let reason = "no (λ, γ, δ) satisfies the P-condition; the search is complete".to_string();
        return Ok(log.finish(VerdictStatus::NotIsomorphic { reason }));
    }
    let cfg = params.gb;
    let ctx = match QContext::new(s1, &cfg) {
        Ok(c) => c,
        Err(AlgebraError::ResourceExhausted(m)) => {
            log.push("check_Q_condition", format!("resource limit: {m}"));
            let reason = format!("Gröbner basis of (Q1, G, X^e) exceeded limits: {m}");
            return Ok(log.finish(VerdictStatus::NoWitnessWithinBounds { reason }));
        }
        Err(e) => return Err(e),
    };
    let exhausted = AtomicBool::new(false);
    let found = candidates.par_iter().find_map_first(|(lambda, gamma, delta)| {
        let run = || -> Result<QOutcome> {
            let f = p_condition(s1, s2, lambda, gamma, delta)?.expect("P-condition checked modulo X^d");
            let pw = PartialWitness {
                lambda: lambda.clone(),
                gamma: gamma.clone(),
                delta: delta.clone(),
                f,
            };
            check_q_condition_with(&ctx, s1, s2, &pw, &cfg)
        };
        match run() {
            Ok(QOutcome::Holds(w)) => Some(Ok(w)),
            Ok(QOutcome::Fails(_)) => None,
            Err(AlgebraError::ResourceExhausted(_)) => {
                exhausted.store(true, Ordering::Relaxed);
                None
            }
            Err(e) => Some(Err(e)),
        }
    });
    match found {
        Some(Ok(w)) => {
            log.push(
                "check_Q_condition",
                format!("holds for λ = {}, γ = {}, δ = {}", w.lambda, w.gamma, w.delta),
            );
            let status = emit(s1, s2, *w, &cfg, &mut log)?;
            Ok(log.finish(status))
        }
        Some(Err(e)) => Err(e),
        None => {
            let exhausted = exhausted.load(Ordering::Relaxed);
            log.push(
                "check_Q_condition",
                format!(
                    "fails for all {} candidates{}",
                    candidates.len(),
                    if exhausted { " (some skipped at resource limits)" } else { "" }
                ),
            );
            if complete && !exhausted {
                let reason = "no candidate satisfies the Q-condition; the search is complete".to_string();
                Ok(log.finish(VerdictStatus::NotIsomorphic { reason }))
            } else {
                let reason = if exhausted {
                    "resource limits were hit during the Q-condition checks".to_string()
                } else if !field.is_finite() {
                    "the search over an infinite field covers only the candidate scalars".to_string()
                } else {
                    format!("δ bound {bound} is below the complete bound {complete_bound}")
                };
                Ok(log.finish(VerdictStatus::NoWitnessWithinBounds { reason }))
            }
        }
    }
}

/// Checks one explicit witness. `f`, when supplied, must equal the exact
/// quotient from the P-condition. A rejected witness proves nothing, so it
/// yields `NO_WITNESS_WITHIN_BOUNDS`.
pub fn check_witness(
    s1: &SurfacePresentation,
    s2: &SurfacePresentation,
    lambda: &FieldElement,
    gamma: &FieldElement,
    delta: &MultiPoly,
    f: Option<&MultiPoly>,
    cfg: &GbConfig,
) -> Result<ClassificationVerdict> {
    let mut log = Log(Vec::new());
    if let Some(status) = screen(s1, s2, &mut log)? {
        return Ok(log.finish(status));
    }
    let reject = |mut log: Log, reason: String| {
        log.push("witness", reason.clone());
        Ok(log.finish(VerdictStatus::NoWitnessWithinBounds {
            reason: format!("supplied witness rejected: {reason}"),
        }))
    };
    let Some(quotient) = p_condition(s1, s2, lambda, gamma, delta)? else {
        return reject(log, format!("X^{} does not divide P2(λX, γZ + δ) - γ^r P1", s1.d()));
    };
    if let Some(f) = f {
        if f != &quotient {
            return reject(log, format!("f = {f} but the P-condition forces f = {quotient}"));
        }
    }
    log.push("solve_P_condition", format!("holds with f = {quotient}"));
    let pw = PartialWitness {
        lambda: lambda.clone(),
        gamma: gamma.clone(),
        delta: delta.clone(),
        f: quotient,
    };
    let ctx = QContext::new(s1, cfg)?;
    match check_q_condition_with(&ctx, s1, s2, &pw, cfg)? {
        QOutcome::Fails(reason) => reject(log, reason),
        QOutcome::Holds(w) => {
            log.push("check_Q_condition", "both inclusions certified");
            let status = emit(s1, s2, *w, cfg, &mut log)?;
            Ok(log.finish(status))
        }
    }
}

#[cfg(test)]
mod tests;
