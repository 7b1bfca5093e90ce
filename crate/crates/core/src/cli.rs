//! Command-line front end. Every command prints one JSON report on standard
//! output. Exit codes: 0 affirmative, 1 sound negative, 2 inconclusive,
//! 3 input error.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::cases::{run_example, CaseStatus, EXAMPLE_NAMES};
use crate::classify::{check_witness, decide_isomorphic, verify_automorphism, verify_ring_map, MapStatus, Ring, SearchParams};
use crate::error::{AlgebraError, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::groebner::{buchberger, is_member, GbConfig, IdealBasis, MonomialOrder, OrderKind};
use crate::io::{read_ideal, read_map, read_surface, read_witness, SurfaceFile};
use crate::parse::parse_poly_in;
use crate::poly::{MultiPoly, VarSet};
use crate::surface::{lemma1_oracle, DegreeBounds, Lemma2Part, SurfaceSummary};

pub const EXIT_YES: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_INCONCLUSIVE: i32 = 2;
pub const EXIT_INPUT: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "ddsurf", version, about = "Exact isomorphism classification of double Danielewski surfaces")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalOpts {
    /// Coefficient field for inputs that do not name one: `Q` or `Fp:<p>`.
    #[arg(long, global = true, default_value = "Q")]
    pub field: FieldSpec,
    #[arg(long, global = true, value_parser = parse_order)]
    pub order: Option<OrderKind>,
    /// Maximum degree of the shift δ(X); default `d + e - 1`.
    #[arg(long, global = true)]
    pub delta_bound: Option<u32>,
    /// Comma-separated scalar candidates for searches over Q.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub candidates: Option<String>,
    #[arg(long, global = true)]
    pub max_degree: Option<u32>,
    #[arg(long, global = true)]
    pub max_basis: Option<usize>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Also write the report to this file.
    #[arg(long, global = true)]
    pub json_out: Option<PathBuf>,
}

fn parse_order(s: &str) -> std::result::Result<OrderKind, String> {
    match s {
        "lex" => Ok(OrderKind::Lex),
        "grevlex" => Ok(OrderKind::Grevlex),
        _ => Err(format!("order must be `lex` or `grevlex`, got `{s}`")),
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check that a surface file is well formed and report which invariants apply.
    Validate { surface: PathBuf },
    /// Normal form of a polynomial: Laurent image for a surface, remainder for an ideal.
    Nf {
        input: PathBuf,
        #[arg(long)]
        poly: String,
    },
    /// Reduced Groebner basis of an ideal file.
    Gb { ideal: PathBuf },
    /// Ideal membership with certificate; `--n` adds `X^n` to the ideal.
    Member {
        input: PathBuf,
        #[arg(long)]
        poly: String,
        #[arg(long)]
        n: Option<u32>,
    },
    /// Verify an explicit witness `(λ, γ, δ[, f])` for a map from S2's ring to S1's ring.
    IsoCheck {
        s1: PathBuf,
        s2: PathBuf,
        #[arg(long)]
        witness: PathBuf,
    },
    /// Decide whether two surfaces are isomorphic.
    IsoSearch { s1: PathBuf, s2: PathBuf },
    /// Verify a ring map between presented rings.
    MapVerify { map: PathBuf },
    /// Necessary-condition checks for an automorphism of a surface.
    AutoVerify { surface: PathBuf, map: PathBuf },
    /// Exhaustive divisibility sweep over a finite field.
    Lemma1 {
        #[arg(long = "P")]
        p: String,
        #[arg(long)]
        d: u32,
        #[arg(long, default_value_t = 2)]
        bound: u32,
    },
    /// Non-membership of `u X^a Y + low` (part i) or `u X^a T + low` (part ii) modulo `X^n`.
    Lemma2 {
        surface: PathBuf,
        #[arg(long)]
        part: Lemma2Part,
        #[arg(long, default_value = "1")]
        u: String,
        #[arg(long, default_value = "0")]
        low: String,
        #[arg(long)]
        n: u32,
    },
    /// Run the named worked examples (all when no name is given).
    Examples { name: Option<String> },
}

impl GlobalOpts {
    fn gb(&self) -> GbConfig {
        let d = GbConfig::default();
        GbConfig {
            max_basis: self.max_basis.unwrap_or(d.max_basis),
            max_degree: self.max_degree.unwrap_or(d.max_degree),
        }
    }

    fn search(&self, field: FieldSpec) -> Result<SearchParams> {
        let candidates = match &self.candidates {
            None => Vec::new(),
            Some(list) => list
                .split(',')
                .filter(|s| !s.trim().is_empty())
                .map(|s| field.parse_scalar(s.trim()))
                .collect::<Result<Vec<FieldElement>>>()?,
        };
        Ok(SearchParams {
            delta_bound: self.delta_bound,
            candidates,
            gb: self.gb(),
        })
    }
}

/// Outcome of one command: exit code and JSON report.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub code: i32,
    pub report: Value,
}

fn outcome(code: i32, command: &str, result: Value) -> Outcome {
    Outcome {
        code,
        report: json!({ "command": command, "exit_code": code, "result": result }),
    }
}

fn error_kind(e: &AlgebraError) -> &'static str {
    match e {
        AlgebraError::Parse { .. } => "parse",
        AlgebraError::UnknownVariable(_) => "unknown_variable",
        AlgebraError::DivisionByZero => "division_by_zero",
        AlgebraError::NonPrimeModulus(_) => "non_prime_modulus",
        AlgebraError::FieldMismatch(..) => "field_mismatch",
        AlgebraError::NotMonic(_) => "not_monic",
        AlgebraError::ForbiddenVariable(_) => "forbidden_variable",
        AlgebraError::ResourceExhausted(_) => "resource_exhausted",
        AlgebraError::Precondition(_) => "precondition",
        AlgebraError::Invalid(_) => "invalid",
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Validate { .. } => "validate",
        Command::Nf { .. } => "nf",
        Command::Gb { .. } => "gb",
        Command::Member { .. } => "member",
        Command::IsoCheck { .. } => "iso-check",
        Command::IsoSearch { .. } => "iso-search",
        Command::MapVerify { .. } => "map-verify",
        Command::AutoVerify { .. } => "auto-verify",
        Command::Lemma1 { .. } => "lemma1",
        Command::Lemma2 { .. } => "lemma2",
        Command::Examples { .. } => "examples",
    }
}

/// Either a surface or a generic ideal, decided by the file's keys.
enum AlgebraInput {
    Surface(crate::surface::SurfacePresentation),
    Ideal(FieldSpec, VarSet, IdealBasis),
}

fn read_algebra(path: &Path, g: &GlobalOpts) -> Result<AlgebraInput> {
    let text = std::fs::read_to_string(path).map_err(|e| AlgebraError::Invalid(format!("{}: {e}", path.display())))?;
    let value: Value = serde_json::from_str(&text).map_err(|e| AlgebraError::Invalid(format!("{}: {e}", path.display())))?;
    if value.get("generators").is_some() {
        let (field, vars, basis) = read_ideal(path)?.build(g.field, g.order)?;
        Ok(AlgebraInput::Ideal(field, vars, basis))
    } else {
        let file: SurfaceFile = serde_json::from_value(value).map_err(|e| AlgebraError::Invalid(format!("{}: {e}", path.display())))?;
        Ok(AlgebraInput::Surface(file.build(g.field)?))
    }
}

fn surface_order(g: &GlobalOpts, vars: &VarSet) -> MonomialOrder {
    MonomialOrder::with_default_ranking(g.order.unwrap_or(OrderKind::Grevlex), vars.len())
}

fn verdict_code(status: &str) -> i32 {
    match status {
        "ISOMORPHIC" => EXIT_YES,
        "NOT_ISOMORPHIC" => EXIT_NO,
        _ => EXIT_INCONCLUSIVE,
    }
}

fn dispatch(cli: &Cli) -> Result<Outcome> {
    let g = &cli.global;
    let name = command_name(&cli.command);
    match &cli.command {
        Command::Validate { surface } => {
            let s = read_surface(surface, g.field)?;
            let report = json!({ "surface": SurfaceSummary::from(&s), "applicability": s.validate() });
            Ok(outcome(EXIT_YES, name, report))
        }
        Command::Nf { input, poly } => match read_algebra(input, g)? {
            AlgebraInput::Surface(s) => {
                let p = parse_poly_in(poly, s.field(), &s.vars())?;
                let nf = s.laurent_nf(&p)?;
                let poly_form = nf.to_poly(&s.vars(), crate::poly::X, crate::poly::Z);
                Ok(outcome(
                    EXIT_YES,
                    name,
                    json!({ "input": p, "laurent_image": nf, "polynomial_in_x_z": poly_form }),
                ))
            }
            AlgebraInput::Ideal(field, vars, basis) => {
                let p = parse_poly_in(poly, field, &vars)?;
                let gb = buchberger(&basis, &g.gb())?;
                let (rem, cert) = gb.reduce_full(&p)?;
                Ok(outcome(
                    EXIT_YES,
                    name,
                    json!({ "input": p, "remainder": rem, "certificate": cert, "order": basis.order().kind() }),
                ))
            }
        },
        Command::Gb { ideal } => {
            let (_, vars, basis) = read_ideal(ideal)?.build(g.field, g.order)?;
            let gb = buchberger(&basis, &g.gb())?;
            Ok(outcome(
                EXIT_YES,
                name,
                json!({
                    "vars": vars.names(),
                    "order": basis.order().kind(),
                    "generators": basis.generators(),
                    "basis": gb.elements(),
                    "unit_ideal": gb.is_unit_ideal(),
                }),
            ))
        }
        Command::Member { input, poly, n } => {
            let (field, vars, basis) = match read_algebra(input, g)? {
                AlgebraInput::Surface(s) => {
                    let vars = s.vars();
                    let order = surface_order(g, &vars);
                    (s.field(), vars, IdealBasis::new(s.relations(), order)?)
                }
                AlgebraInput::Ideal(field, vars, basis) => (field, vars, basis),
            };
            let basis = match n {
                None => basis,
                Some(n) => {
                    let x = vars
                        .index_of("X")
                        .ok_or_else(|| AlgebraError::Invalid("`--n` needs a variable named X".into()))?;
                    basis.with_generator(MultiPoly::var(field, &vars, x).pow(*n))?
                }
            };
            let p = parse_poly_in(poly, field, &vars)?;
            let cert = is_member(&p, &basis, &g.gb())?;
            let code = if cert.is_some() { EXIT_YES } else { EXIT_NO };
            Ok(outcome(
                code,
                name,
                json!({
                    "poly": p,
                    "generators": basis.generators(),
                    "member": cert.is_some(),
                    "certificate": cert,
                }),
            ))
        }
        Command::IsoCheck { s1, s2, witness } => {
            let (s1, s2) = (read_surface(s1, g.field)?, read_surface(s2, g.field)?);
            let w = read_witness(witness)?.build(s1.field())?;
            let v = check_witness(&s1, &s2, &w.lambda, &w.gamma, &w.delta, w.f.as_ref(), &g.gb())?;
            Ok(outcome(verdict_code(v.status_name()), name, serde_json::to_value(&v).expect("serializable")))
        }
        Command::IsoSearch { s1, s2 } => {
            let (s1, s2) = (read_surface(s1, g.field)?, read_surface(s2, g.field)?);
            let v = decide_isomorphic(&s1, &s2, &g.search(s1.field())?)?;
            Ok(outcome(verdict_code(v.status_name()), name, serde_json::to_value(&v).expect("serializable")))
        }
        Command::MapVerify { map } => {
            let m = read_map(map)?.build(g.field, None)?;
            let v = verify_ring_map(&m, &g.gb())?;
            let code = match v.status {
                MapStatus::Isomorphism => EXIT_YES,
                MapStatus::NotWellDefined => EXIT_NO,
                MapStatus::PreimageRejected | MapStatus::SurjectivityUnverified => EXIT_INCONCLUSIVE,
            };
            Ok(outcome(code, name, json!({ "map": m, "verification": v })))
        }
        Command::AutoVerify { surface, map } => {
            let s = read_surface(surface, g.field)?;
            let ring = Ring::Surface(s.clone());
            let m = read_map(map)?.build(s.field(), Some(&ring))?;
            let rep = verify_automorphism(&s, &m, &g.gb())?;
            let code = if rep.all_passed() { EXIT_YES } else { EXIT_NO };
            Ok(outcome(code, name, json!({ "map": m, "report": rep })))
        }
        Command::Lemma1 { p, d, bound } => {
            if !g.field.is_finite() {
                return Err(AlgebraError::Precondition("lemma1 enumerates a finite field; pass --field Fp:<p>".into()));
            }
            let poly = parse_poly_in(p, g.field, &VarSet::xyzt())?;
            let rep = lemma1_oracle(&poly, *d, DegreeBounds::uniform(*bound))?;
            let code = if rep.counterexamples.is_empty() { EXIT_YES } else { EXIT_NO };
            Ok(outcome(code, name, serde_json::to_value(&rep).expect("serializable")))
        }
        Command::Lemma2 { surface, part, u, low, n } => {
            let s = read_surface(surface, g.field)?;
            let u = s.field().parse_scalar(u)?;
            let low = parse_poly_in(low, s.field(), &s.vars())?;
            let confirmed = s.lemma2_oracle(*part, &u, &low, *n, &g.gb())?;
            let code = if confirmed { EXIT_YES } else { EXIT_NO };
            Ok(outcome(
                code,
                name,
                json!({
                    "surface": SurfaceSummary::from(&s),
                    "part": part,
                    "u": u,
                    "low": low,
                    "n": n,
                    "non_membership_confirmed": confirmed,
                }),
            ))
        }
        Command::Examples { name: which } => {
            let names: Vec<&str> = match which {
                Some(n) => vec![n.as_str()],
                None => EXAMPLE_NAMES.to_vec(),
            };
            let reports = names
                .iter()
                .map(|n| run_example(n, g.seed, &g.gb()))
                .collect::<Result<Vec<_>>>()?;
            let failed = reports.iter().any(|r| r.status == CaseStatus::Fail);
            let all_scoped_out = reports.iter().all(|r| r.status == CaseStatus::OutOfScope);
            let code = if failed {
                EXIT_NO
            } else if all_scoped_out {
                EXIT_INCONCLUSIVE
            } else {
                EXIT_YES
            };
            Ok(outcome(code, name, json!({ "cases": reports })))
        }
    }
}

fn error_outcome(command: &str, e: &AlgebraError) -> Outcome {
    let code = match e {
        AlgebraError::ResourceExhausted(_) => EXIT_INCONCLUSIVE,
        _ => EXIT_INPUT,
    };
    Outcome {
        code,
        report: json!({
            "command": command,
            "exit_code": code,
            "error": { "kind": error_kind(e), "message": e.to_string() },
        }),
    }
}

/// Runs a parsed command; never panics on bad input.
pub fn run(cli: &Cli) -> Outcome {
    let name = command_name(&cli.command);
    let out = dispatch(cli).unwrap_or_else(|e| error_outcome(name, &e));
    if let Some(path) = &cli.global.json_out {
        if let Err(e) = std::fs::write(path, render(&out.report)) {
            return error_outcome(name, &AlgebraError::Invalid(format!("{}: {e}", path.display())));
        }
    }
    out
}

/// Parses `args` (including the program name) and runs. Usage errors exit 3;
/// `--help` and `--version` exit 0 with their text in `message`.
pub fn run_args<I, T>(args: I) -> (Outcome, Option<String>)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => (run(&cli), None),
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => (
                    Outcome {
                        code: EXIT_YES,
                        report: Value::Null,
                    },
                    Some(text),
                ),
                _ => (
                    Outcome {
                        code: EXIT_INPUT,
                        report: json!({
                            "command": Value::Null,
                            "exit_code": EXIT_INPUT,
                            "error": { "kind": "usage", "message": text },
                        }),
                    },
                    None,
                ),
            }
        }
    }
}

/// Stable pretty rendering (object keys are sorted).
pub fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}
