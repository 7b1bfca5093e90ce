//! The six structural checks every automorphism of a surface with `r, s ≥ 2` passes.

use serde::Serialize;

use crate::error::{AlgebraError, Result};
use crate::field::FieldElement;
use crate::groebner::{ideals_equal, is_member, is_unit_modulo, normalize_certificate, GbConfig, IdealBasis};
use crate::laurent::LaurentPoly;
use crate::poly::{MultiPoly, T, X, Y, Z};
use crate::surface::SurfacePresentation;

use super::ring::{verify_ring_map, MapStatus, Ring, RingMap};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub passed: bool,
    pub evidence: String,
}

impl CheckResult {
    fn pass(evidence: impl Into<String>) -> Self {
        CheckResult {
            passed: true,
            evidence: evidence.into(),
        }
    }

    fn fail(evidence: impl Into<String>) -> Self {
        CheckResult {
            passed: false,
            evidence: evidence.into(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AutomorphismReport {
    pub well_defined: bool,
    pub map_status: MapStatus,
    pub diagnostics: Vec<String>,
    pub lambda: Option<FieldElement>,
    pub gamma: Option<FieldElement>,
    pub nu: Option<FieldElement>,
    pub check_i: Option<CheckResult>,
    pub check_ii: Option<CheckResult>,
    pub check_iii: Option<CheckResult>,
    pub check_iv: Option<CheckResult>,
    pub check_v: Option<CheckResult>,
    pub check_vi: Option<CheckResult>,
}

impl AutomorphismReport {
    pub fn checks(&self) -> [(&'static str, Option<&CheckResult>); 6] {
        [
            ("i", self.check_i.as_ref()),
            ("ii", self.check_ii.as_ref()),
            ("iii", self.check_iii.as_ref()),
            ("iv", self.check_iv.as_ref()),
            ("v", self.check_v.as_ref()),
            ("vi", self.check_vi.as_ref()),
        ]
    }

    pub fn all_passed(&self) -> bool {
        self.well_defined && self.checks().iter().all(|(_, c)| c.is_some_and(|c| c.passed))
    }
}

/// Shapes read off the Laurent image, so they do not depend on the
/// representative supplied for each generator image.
fn laurent_shapes(s: &SurfacePresentation, m: &RingMap) -> Result<Shapes> {
    let vars = s.vars();
    let lx = s.laurent_nf(&m.images[X])?;
    let lz = s.laurent_nf(&m.images[Z])?;
    let ly = s.laurent_nf(&m.images[Y])?;
    let lambda = match lx.terms().collect::<Vec<_>>().as_slice() {
        [(&(1, 0), c)] => Some((*c).clone()),
        _ => None,
    };
    let gamma = lz.coefficient(0, 1);
    let z_rest = lz.sub(&LaurentPoly::monomial(s.field(), gamma.clone(), 0, 1));
    let z_shape = if gamma.is_zero() || z_rest.terms().any(|(&(i, j), _)| i < 0 || j > 0) {
        None
    } else {
        z_rest.to_poly(&vars, X, Z).map(|delta| (gamma, delta))
    };
    let y_img = s.laurent_nf(&MultiPoly::var(s.field(), &vars, Y))?;
    let nu = ly.coefficient(-(s.d() as i64), s.r());
    let y_shape = if nu.is_zero() {
        None
    } else {
        ly.sub(&y_img.scale(&nu)).to_poly(&vars, X, Z).map(|g| (nu, g))
    };
    Ok(Shapes { lambda, z_shape, y_shape })
}

struct Shapes {
    lambda: Option<FieldElement>,
    z_shape: Option<(FieldElement, MultiPoly)>,
    y_shape: Option<(FieldElement, MultiPoly)>,
}

/// Image ideals may contain zero generators; they generate nothing.
fn nonzero(gens: Vec<MultiPoly>) -> Vec<MultiPoly> {
    gens.into_iter().filter(|g| !g.is_zero()).collect()
}

/// Runs the six checks on an endomorphism of the ring of `s`. Checks are
/// evaluated only when the map is well defined; shape violations appear as
/// failed checks.
pub fn verify_automorphism(s: &SurfacePresentation, m: &RingMap, cfg: &GbConfig) -> Result<AutomorphismReport> {
    if s.r() < 2 || s.s() < 2 {
        return Err(AlgebraError::Precondition(format!("need r, s ≥ 2 (got r = {}, s = {})", s.r(), s.s())));
    }
    for ring in [&m.source, &m.target] {
        match ring {
            Ring::Surface(t) if t == s => {}
            _ => return Err(AlgebraError::Invalid("source and target must both be the given surface".into())),
        }
    }
    let vm = verify_ring_map(m, cfg)?;
    let mut report = AutomorphismReport {
        well_defined: vm.relations_preserved(),
        map_status: vm.status,
        diagnostics: vm.diagnostics.clone(),
        lambda: None,
        gamma: None,
        nu: None,
        check_i: None,
        check_ii: None,
        check_iii: None,
        check_iv: None,
        check_v: None,
        check_vi: None,
    };
    if !report.well_defined {
        return Ok(report);
    }
    let (d, e) = (s.d(), s.e());
    let field = s.field();
    let vars = s.vars();
    let x = MultiPoly::var(field, &vars, X);
    let (px, py, pz, pt) = (&m.images[X], &m.images[Y], &m.images[Z], &m.images[T]);
    let shapes = laurent_shapes(s, m)?;

    report.lambda = shapes.lambda.clone();
    report.check_ii = Some(match &report.lambda {
        Some(l) => CheckResult::pass(format!("ψ(x) = {px} = {l}·x in B")),
        None => CheckResult::fail(format!("ψ(x) = {px} is not of the form \\psi(x) =\\lambda x")),
    });

    report.gamma = shapes.z_shape.as_ref().map(|(c, _)| c.clone());
    report.check_i = Some(match (&report.lambda, &shapes.z_shape) {
        (Some(l), Some((g, delta))) => CheckResult::pass(format!(
            "ψ(x) = {l}·x, ψ(z) = {g}·z + ({delta}): triangular on k[x, z] with unit diagonal, so ψ(k[x, z]) = k[x, z]"
        )),
        (_, None) => CheckResult::fail(format!("ψ(z) = {pz} is not γ·z + δ(x) with γ a unit")),
        (None, _) => CheckResult::fail(format!("ψ(x) = {px} leaves the required shape")),
    });

    // Canonical representatives in k[X, Z] and k[X, Y, Z].
    let cx = report.lambda.as_ref().map(|l| x.scale(l));
    let cz = shapes.z_shape.as_ref().map(|(g, delta)| &MultiPoly::var(field, &vars, Z).scale(g) + delta);
    let cy = shapes.y_shape.as_ref().map(|(nu, g)| &MultiPoly::var(field, &vars, Y).scale(nu) + g);

    report.check_iii = Some(match (&cx, &cz) {
        (Some(cx), Some(cz)) => {
            let images = vec![cx.clone(), MultiPoly::var(field, &vars, Y), cz.clone(), MultiPoly::var(field, &vars, T)];
            let ppsi = s.p().compose(&images)?;
            let a = IdealBasis::grevlex(vec![x.pow(d), s.p().clone()])?;
            let b = IdealBasis::grevlex(nonzero(vec![cx.pow(d), ppsi.clone()]))?;
            if ideals_equal(&a, &b, cfg)? {
                CheckResult::pass(format!("(X^{d}, P) = (ψ(X)^{d}, ψ(P)) with ψ(P) = {ppsi}"))
            } else {
                CheckResult::fail(format!("(X^{d}, P) ≠ (ψ(X)^{d}, ψ(P)) with ψ(P) = {ppsi}"))
            }
        }
        _ => CheckResult::fail("ψ(x) or ψ(z) leaves k[x, z]"),
    });

    report.nu = shapes.y_shape.as_ref().map(|(c, _)| c.clone());
    report.check_iv = Some(match &shapes.y_shape {
        Some((nu, g)) => CheckResult::pass(format!("ψ(y) = {nu}·y + ({g}) in B")),
        None => CheckResult::fail(format!("ψ(y) = {py} is not ν·y + g(x, z) with ν a unit")),
    });

    let (Some(cx), Some(cy), Some(cz)) = (cx, cy, cz) else {
        let why = "ψ(x), ψ(y) or ψ(z) has the wrong shape";
        report.check_v = Some(CheckResult::fail(why));
        report.check_vi = Some(CheckResult::fail(why));
        return Ok(report);
    };
    let images = vec![cx.clone(), cy, cz, MultiPoly::var(field, &vars, T)];
    let g_rel = s.g_relation();
    let qpsi = s.q().compose(&images)?;
    let gpsi = g_rel.compose(&images)?;
    let a = IdealBasis::grevlex(vec![x.pow(e), s.q().clone(), g_rel.clone()])?;
    let b = IdealBasis::grevlex(nonzero(vec![cx.pow(e), qpsi.clone(), gpsi]))?;
    report.check_v = Some(if ideals_equal(&a, &b, cfg)? {
        CheckResult::pass(format!("(X^{e}, Q, G) = (ψ(X)^{e}, ψ(Q), ψ(G)) with ψ(Q) = {qpsi}"))
    } else {
        CheckResult::fail(format!("(X^{e}, Q, G) ≠ (ψ(X)^{e}, ψ(Q), ψ(G)) with ψ(Q) = {qpsi}"))
    });

    let t_note = if pt.degree_in(T).is_some_and(|k| k > 1) {
        format!("supplied ψ(t) = {pt} is not written as f·t + g")
    } else {
        format!("ψ(t) = {pt}")
    };
    let gens = vec![s.q().clone(), s.first_relation(), x.pow(e)];
    let basis = IdealBasis::grevlex(gens.clone())?;
    report.check_vi = Some(match is_member(&qpsi, &basis, cfg)? {
        None => CheckResult::fail(format!("ψ(Q) = {qpsi} is not in (Q, X^{d}Y - P, X^{e})")),
        Some(cert) => {
            let cert = normalize_certificate(&cert, &gens, basis.order(), cfg)?;
            let f1 = &cert.cofactors[0];
            let modulus = IdealBasis::grevlex(vec![s.first_relation(), x.pow(e)])?;
            match is_unit_modulo(f1, &modulus, cfg)? {
                Some(inv) => CheckResult::pass(format!(
                    "{t_note}; ψ(Q) = ({f1})·Q + ({})·(X^{d}Y - P) + ({})·X^{e}; f = {f1} is a unit mod (X^{d}Y - P, X^{e}) with inverse {inv}",
                    cert.cofactors[1], cert.cofactors[2]
                )),
                None => CheckResult::fail(format!("{t_note}; f = {f1} is not a unit mod (X^{d}Y - P, X^{e})")),
            }
        }
    });
    Ok(report)
}
