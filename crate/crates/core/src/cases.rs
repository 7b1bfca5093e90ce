//! Named worked examples. Each case rebuilds its rings and maps and recomputes
//! every expected fact through the public operations.

use serde::Serialize;
use serde_json::Value;

use crate::classify::{
    decide_isomorphic, invariant_check, verify_ring_map, InvariantOutcome, MapStatus, Ring, RingMap, RingPresentation, SearchParams,
};
use crate::error::{AlgebraError, Result};
use crate::field::FieldSpec;
use crate::groebner::GbConfig;
use crate::parse::parse_poly_in;
use crate::poly::{MultiPoly, VarSet};
use crate::surface::{lemma1_oracle, DegreeBounds, Lemma2Part, SurfacePresentation};

pub const EXAMPLE_NAMES: [&str; 7] = [
    "remark-i",
    "remark-ii",
    "remark-iii",
    "remark-iv",
    "remark-v",
    "lemma-sweeps",
    "theorem-roundtrip",
];

pub const DEFAULT_SEED: u64 = 2024;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum CaseStatus {
    Pass,
    Fail,
    OutOfScope,
}

#[derive(Clone, Debug, Serialize)]
pub struct CaseCheck {
    pub label: String,
    pub expected: String,
    pub computed: String,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CaseReport {
    pub name: String,
    pub status: CaseStatus,
    pub checks: Vec<CaseCheck>,
    pub evidence: Vec<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl CaseReport {
    fn new(name: &str) -> Self {
        CaseReport {
            name: name.to_string(),
            status: CaseStatus::Pass,
            checks: Vec::new(),
            evidence: Vec::new(),
            note: None,
        }
    }

    fn check(&mut self, label: impl Into<String>, expected: impl ToString, computed: impl ToString) {
        let (expected, computed) = (expected.to_string(), computed.to_string());
        let passed = expected == computed;
        self.checks.push(CaseCheck {
            label: label.into(),
            expected,
            computed,
            passed,
        });
    }

    fn finish(mut self) -> Self {
        if self.status != CaseStatus::OutOfScope && self.checks.iter().any(|c| !c.passed) {
            self.status = CaseStatus::Fail;
        }
        self
    }

    pub fn passed(&self) -> bool {
        self.status == CaseStatus::Pass
    }
}

struct Ctx {
    field: FieldSpec,
    cfg: GbConfig,
}

impl Ctx {
    fn presented(&self, vars: &[&str], rels: &[&str]) -> Result<Ring> {
        Ok(Ring::Presented(RingPresentation::parse(self.field, vars, rels)?))
    }

    fn surface(&self, d: u32, e: u32, p: &str, q: &str) -> Result<SurfacePresentation> {
        SurfacePresentation::parse(self.field, d, e, p, q)
    }

    /// Map given by `(variable, image)` pairs; unlisted source variables map to
    /// the target variable of the same name.
    fn map(&self, source: &Ring, target: &Ring, images: &[(&str, &str)], preimages: Option<&[(&str, &str)]>) -> Result<RingMap> {
        let (sv, tv) = (source.vars(), target.vars());
        let parse = |text: &str, vars: &VarSet| parse_poly_in(text, self.field, vars);
        let lookup = |pairs: &[(&str, &str)], name: &str| pairs.iter().find(|(n, _)| *n == name).map(|(_, t)| t.to_string());
        let imgs = sv
            .names()
            .iter()
            .map(|n| parse(&lookup(images, n).unwrap_or_else(|| n.clone()), &tv))
            .collect::<Result<Vec<MultiPoly>>>()?;
        let pre = preimages
            .map(|pairs| {
                tv.names()
                    .iter()
                    .map(|n| parse(&lookup(pairs, n).unwrap_or_else(|| n.clone()), &sv).map(Some))
                    .collect::<Result<Vec<_>>>()
            })
            .transpose()?;
        RingMap::new(source.clone(), target.clone(), imgs, pre)
    }

    fn verify(&self, report: &mut CaseReport, label: &str, m: &RingMap) -> Result<()> {
        let v = verify_ring_map(m, &self.cfg)?;
        report.check(label, status_text(MapStatus::Isomorphism), status_text(v.status));
        report.evidence.push(serde_json::json!({ "label": label, "map": m, "verification": v }));
        Ok(())
    }
}

fn status_text(s: MapStatus) -> String {
    serde_json::to_value(s).expect("serializable").as_str().unwrap_or_default().to_string()
}

fn remark_i(ctx: &Ctx) -> Result<CaseReport> {
    let mut rep = CaseReport::new("remark-i");
    for e in [1u32, 2] {
        let flat = ctx.presented(&["X", "Y", "T"], &[&format!("X^{e}*T - Y^4")])?;
        let d2 = Ring::Surface(ctx.surface(2, e, "Z", "Y^4")?);
        let m = ctx.map(&d2, &flat, &[("Z", "X^2*Y")], Some(&[]))?;
        ctx.verify(&mut rep, &format!("e = {e}: (X^2*Y - Z, X^{e}*T - Y^4) -> k[X,Y,T]/(X^{e}*T - Y^4), Z -> X^2*Y"), &m)?;
        for d in 1..=4u32 {
            if d == 2 {
                continue;
            }
            let dd = Ring::Surface(ctx.surface(d, e, "Z", "Y^4")?);
            let z_img = if d == 1 { "X*Y".to_string() } else { format!("X^{}*Z", d - 2) };
            let m = ctx.map(&dd, &d2, &[("Z", &z_img)], Some(&[("Z", "X^2*Y")]))?;
            ctx.verify(&mut rep, &format!("e = {e}: d = {d} -> d = 2, z -> {z_img}"), &m)?;
        }
        let s1 = ctx.surface(1, e, "Z", "Y^4")?;
        let s3 = ctx.surface(3, e, "Z", "Y^4")?;
        let scope = matches!(invariant_check(&s1, &s3)?, InvariantOutcome::OutOfScope { .. });
        rep.check(format!("e = {e}: classification declines r = 1"), true, scope);
    }
    Ok(rep.finish())
}

fn remark_ii(ctx: &Ctx) -> Result<CaseReport> {
    let mut rep = CaseReport::new("remark-ii");
    let a = ctx.presented(&["X", "Z", "T"], &["X^3*T - Z^2"])?;
    let sb = ctx.surface(1, 2, "Z^2", "Y")?;
    let sc = ctx.surface(2, 1, "Z^2", "Y")?;
    let (b, c) = (Ring::Surface(sb.clone()), Ring::Surface(sc.clone()));
    let ba = ctx.map(&b, &a, &[("Y", "X^2*T")], Some(&[]))?;
    ctx.verify(&mut rep, "(X*Y - Z^2, X^2*T - Y) -> k[X,Z,T]/(X^3*T - Z^2), Y -> X^2*T", &ba)?;
    let ca = ctx.map(&c, &a, &[("Y", "X*T")], Some(&[]))?;
    ctx.verify(&mut rep, "(X^2*Y - Z^2, X*T - Y) -> k[X,Z,T]/(X^3*T - Z^2), Y -> X*T", &ca)?;
    let ac = ctx.map(&a, &c, &[], Some(&[("Y", "X*T")]))?;
    ctx.verify(&mut rep, "k[X,Z,T]/(X^3*T - Z^2) -> (X^2*Y - Z^2, X*T - Y)", &ac)?;
    let bc = ba.then(&ac)?;
    ctx.verify(&mut rep, "composite (d, e) = (1, 2) -> (2, 1)", &bc)?;
    match invariant_check(&sb, &sc)? {
        InvariantOutcome::OutOfScope { advisory: Some(adv), .. } => {
            rep.check("s = 1 advisory", "holds", if adv.contains("(holds)") { "holds" } else { "violated" });
            rep.check("d1 + e1 = d2 + e2", 3, sb.d() + sb.e());
            rep.check("d2 + e2", 3, sc.d() + sc.e());
            rep.evidence.push(serde_json::json!({ "advisory": adv }));
        }
        other => rep.check("s = 1 advisory", "OUT_OF_THEOREM_SCOPE with advisory", format!("{other:?}")),
    }
    Ok(rep.finish())
}

fn remark_iii(ctx: &Ctx) -> Result<CaseReport> {
    let mut rep = CaseReport::new("remark-iii");
    let e_ring = ctx.presented(&["X", "Y", "T"], &["X^4*T - Y^2"])?;
    let d = Ring::Surface(ctx.surface(2, 4, "Z", "Y^2")?);
    let f = Ring::Surface(ctx.surface(2, 2, "Z^2", "Y")?);
    let de = ctx.map(&d, &e_ring, &[("Z", "X^2*Y")], Some(&[]))?;
    ctx.verify(&mut rep, "(X^2*Y - Z, X^4*T - Y^2) -> k[X,Y,T]/(X^4*T - Y^2), Z -> X^2*Y", &de)?;
    let fe = ctx.map(&f, &e_ring, &[("Y", "X^2*T"), ("Z", "Y")], Some(&[("Y", "Z")]))?;
    ctx.verify(&mut rep, "(X^2*Y - Z^2, X^2*T - Y) -> k[X,Y,T]/(X^4*T - Y^2), Z -> Y, Y -> X^2*T", &fe)?;
    let ef = ctx.map(&e_ring, &f, &[("Y", "Z")], Some(&[("Y", "X^2*T"), ("Z", "Y")]))?;
    ctx.verify(&mut rep, "k[X,Y,T]/(X^4*T - Y^2) -> (X^2*Y - Z^2, X^2*T - Y), Y -> Z", &ef)?;
    let df = de.then(&ef)?;
    ctx.verify(&mut rep, "composite (X^2*Y - Z, X^4*T - Y^2) -> (X^2*Y - Z^2, X^2*T - Y)", &df)?;
    Ok(rep.finish())
}

fn remark_iv() -> CaseReport {
    let mut rep = CaseReport::new("remark-iv");
    rep.status = CaseStatus::OutOfScope;
    rep.note = Some(
        "the surfaces in this example are shown to be k^[2]-fibrations through a linear-plane argument; \
         constructing those coordinates is outside what this tool computes"
            .into(),
    );
    rep
}

fn remark_v(ctx: &Ctx) -> Result<CaseReport> {
    let mut rep = CaseReport::new("remark-v");
    let s_a = ctx.surface(2, 4, "Z^2", "Y^2")?;
    let s_b = ctx.surface(2, 4, "Z^2", "Y^2 - X*Y*Z^2")?;
    let (a, b) = (Ring::Surface(s_a.clone()), Ring::Surface(s_b.clone()));
    let phi = ctx.map(&a, &b, &[("T", "(1+X^3)*T + Y*Z^2")], Some(&[("T", "(1-X^3)*T")]))?;
    ctx.verify(&mut rep, "phi: t1 -> (1+x^3) t2 + y2 z2^2 with phi((1-x^3) t1) = t2", &phi)?;
    let pre = phi.apply(&parse_poly_in("(1-X^3)*T", ctx.field, &a.vars())?)?;
    let t = MultiPoly::var(ctx.field, &b.vars(), 3);
    rep.check("phi((1-X^3)*T) = T in B2 (Laurent images)", true, s_b.equal_in_b(&pre, &t)?);
    rep.check(
        "Laurent image of phi((1-X^3)*T)",
        s_b.laurent_nf(&t)?.to_string(),
        s_b.laurent_nf(&pre)?.to_string(),
    );
    let broken = ctx.map(&a, &b, &[], None)?;
    let v = verify_ring_map(&broken, &ctx.cfg)?;
    rep.check("t1 -> t2 is not well defined", status_text(MapStatus::NotWellDefined), status_text(v.status));
    let verdict = decide_isomorphic(&s_b, &s_a, &SearchParams::default())?;
    rep.check("decide_isomorphic over Q with candidates {1, -1}", "ISOMORPHIC", verdict.status_name());
    rep.evidence.push(serde_json::to_value(&verdict).expect("serializable"));
    Ok(rep.finish())
}

/// Instances for the non-membership sweep over `F_2`.
pub fn lemma2_instances() -> Result<Vec<(SurfacePresentation, Lemma2Part, MultiPoly, u32)>> {
    let f2 = FieldSpec::prime(2)?;
    let vars = VarSet::xyzt();
    let mut out = Vec::new();
    for (d, e) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
        for p in ["Z^2", "Z^2 + Z"] {
            for q in ["Y^2", "Y^2 + Z"] {
                let s = SurfacePresentation::parse(f2, d, e, p, q)?;
                let r = s.r();
                let x_z: Vec<MultiPoly> = (0..=1u32)
                    .flat_map(|a| (0..r).map(move |b| (a, b)))
                    .map(|(a, b)| parse_poly_in(&format!("X^{a}*Z^{b}"), f2, &vars))
                    .collect::<Result<_>>()?;
                for low in subset_sums(&x_z) {
                    out.push((s.clone(), Lemma2Part::I, low, d + 1));
                }
                let basis: Vec<MultiPoly> = ["1", "X", "Z", "Y"]
                    .iter()
                    .map(|t| parse_poly_in(t, f2, &vars))
                    .collect::<Result<_>>()?;
                for low in subset_sums(&basis) {
                    out.push((s.clone(), Lemma2Part::II, low, e + 1));
                }
            }
        }
    }
    Ok(out)
}

fn subset_sums(items: &[MultiPoly]) -> Vec<MultiPoly> {
    let mut out = vec![MultiPoly::zero(items[0].field(), items[0].vars())];
    for it in items {
        let more: Vec<MultiPoly> = out.iter().map(|p| p + it).collect();
        out.extend(more);
    }
    out
}

fn lemma_sweeps(ctx: &Ctx) -> Result<CaseReport> {
    let mut rep = CaseReport::new("lemma-sweeps");
    let f2 = FieldSpec::prime(2)?;
    for p in ["Z^2", "Z^2 + Z", "Z^3"] {
        for d in [1u32, 2] {
            let poly = parse_poly_in(p, f2, &VarSet::xyzt())?;
            let report = lemma1_oracle(&poly, d, DegreeBounds::uniform(2))?;
            rep.check(format!("lemma1 P = {p}, d = {d}: counterexamples"), 0, report.counterexamples.len());
            rep.evidence.push(serde_json::json!({
                "lemma1": { "P": p, "d": d, "pairs": report.pairs_enumerated, "instances": report.instances_checked }
            }));
        }
    }
    let inst = lemma2_instances()?;
    let one = f2.one();
    let mut confirmed = 0usize;
    let mut failures = Vec::new();
    for (s, part, low, n) in &inst {
        if s.lemma2_oracle(*part, &one, low, *n, &ctx.cfg)? {
            confirmed += 1;
        } else {
            failures.push(format!("{:?} P = {}, Q = {}, d = {}, e = {}, low = {low}, n = {n}", part, s.p(), s.q(), s.d(), s.e()));
        }
    }
    rep.check("lemma2 instances with non-membership confirmed", inst.len(), confirmed);
    rep.evidence.push(serde_json::json!({ "lemma2": { "instances": inst.len(), "confirmed": confirmed, "failures": failures } }));
    Ok(rep.finish())
}

fn theorem_roundtrip(ctx: &Ctx, seed: u64) -> Result<CaseReport> {
    let mut rep = CaseReport::new("theorem-roundtrip");
    let inst = crate::roundtrip::seeded_instances(seed, 1)?.remove(0);
    let verdict = decide_isomorphic(&inst.s1, &inst.s2, &SearchParams::default())?;
    rep.check("decide_isomorphic", "ISOMORPHIC", verdict.status_name());
    if let Some(m) = verdict.map() {
        let v = verify_ring_map(m, &ctx.cfg)?;
        rep.check("independent re-verification", status_text(MapStatus::Isomorphism), status_text(v.status));
    }
    rep.evidence.push(serde_json::json!({
        "seed": seed,
        "S1": crate::surface::SurfaceSummary::from(&inst.s1),
        "S2": crate::surface::SurfaceSummary::from(&inst.s2),
        "verdict": verdict,
    }));
    Ok(rep.finish())
}

/// Runs one named example. `seed` only affects `theorem-roundtrip`.
pub fn run_example(name: &str, seed: Option<u64>, cfg: &GbConfig) -> Result<CaseReport> {
    let ctx = Ctx {
        field: FieldSpec::Rationals,
        cfg: *cfg,
    };
    match name {
        "remark-i" => remark_i(&ctx),
        "remark-ii" => remark_ii(&ctx),
        "remark-iii" => remark_iii(&ctx),
        "remark-iv" => Ok(remark_iv()),
        "remark-v" => remark_v(&ctx),
        "lemma-sweeps" => lemma_sweeps(&ctx),
        "theorem-roundtrip" => theorem_roundtrip(&ctx, seed.unwrap_or(DEFAULT_SEED)),
        other => Err(AlgebraError::Invalid(format!(
            "unknown example `{other}`; expected one of {}",
            EXAMPLE_NAMES.join(", ")
        ))),
    }
}
