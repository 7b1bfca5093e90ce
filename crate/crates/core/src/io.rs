//! JSON input documents. Unknown keys are rejected.

use std::collections::BTreeMap;
use std::path::Path;

use serde::Deserialize;

use crate::classify::{Ring, RingMap, RingPresentation};
use crate::error::{AlgebraError, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::groebner::{IdealBasis, MonomialOrder, OrderKind};
use crate::parse::parse_poly_in;
use crate::poly::{MultiPoly, VarSet};
use crate::surface::SurfacePresentation;

/// `"field": "Q" | "Fp:5" | "Fp"` (the last with `"p": 5`).
fn resolve_field(field: Option<&str>, p: Option<u64>, default: FieldSpec) -> Result<FieldSpec> {
    match (field, p) {
        (None, None) => Ok(default),
        (None, Some(p)) | (Some("Fp"), Some(p)) => FieldSpec::prime(p),
        (Some(name), None) => name.parse(),
        (Some(name), Some(_)) => Err(AlgebraError::Invalid(format!("field `{name}` does not take `p`"))),
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurfaceFile {
    pub field: Option<String>,
    pub p: Option<u64>,
    pub d: u32,
    pub e: u32,
    #[serde(rename = "P")]
    pub big_p: String,
    #[serde(rename = "Q")]
    pub big_q: String,
}

impl SurfaceFile {
    pub fn build(&self, default: FieldSpec) -> Result<SurfacePresentation> {
        let field = resolve_field(self.field.as_deref(), self.p, default)?;
        SurfacePresentation::parse(field, self.d, self.e, &self.big_p, &self.big_q)
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresentationFile {
    pub field: Option<String>,
    pub p: Option<u64>,
    pub vars: Vec<String>,
    #[serde(default)]
    pub relations: Vec<String>,
}

impl PresentationFile {
    pub fn build(&self, default: FieldSpec) -> Result<RingPresentation> {
        let field = resolve_field(self.field.as_deref(), self.p, default)?;
        let vars = VarSet::new(&self.vars)?;
        let rels = self
            .relations
            .iter()
            .map(|r| parse_poly_in(r, field, &vars))
            .collect::<Result<Vec<_>>>()?;
        RingPresentation::new(field, vars, rels)
    }
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum RingFile {
    Surface(SurfaceFile),
    Presented(PresentationFile),
}

impl RingFile {
    pub fn build(&self, default: FieldSpec) -> Result<Ring> {
        Ok(match self {
            RingFile::Surface(s) => Ring::Surface(s.build(default)?),
            RingFile::Presented(p) => Ring::Presented(p.build(default)?),
        })
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IdealFile {
    pub field: Option<String>,
    pub p: Option<u64>,
    pub vars: Option<Vec<String>>,
    pub generators: Vec<String>,
    pub order: Option<OrderKind>,
}

impl IdealFile {
    /// `order` overrides the file's order when given.
    pub fn build(&self, default: FieldSpec, order: Option<OrderKind>) -> Result<(FieldSpec, VarSet, IdealBasis)> {
        let field = resolve_field(self.field.as_deref(), self.p, default)?;
        let vars = match &self.vars {
            Some(v) => VarSet::new(v)?,
            None => VarSet::xyzt(),
        };
        let gens = self
            .generators
            .iter()
            .map(|g| parse_poly_in(g, field, &vars))
            .collect::<Result<Vec<_>>>()?;
        let kind = order.or(self.order).unwrap_or(OrderKind::Grevlex);
        let basis = IdealBasis::new(gens, MonomialOrder::with_default_ranking(kind, vars.len()))?;
        Ok((field, vars, basis))
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessFile {
    pub lambda: String,
    pub gamma: String,
    #[serde(default = "zero_text")]
    pub delta: String,
    pub f: Option<String>,
}

fn zero_text() -> String {
    "0".to_string()
}

pub struct ParsedWitness {
    pub lambda: FieldElement,
    pub gamma: FieldElement,
    pub delta: MultiPoly,
    pub f: Option<MultiPoly>,
}

impl WitnessFile {
    pub fn build(&self, field: FieldSpec) -> Result<ParsedWitness> {
        let vars = VarSet::xyzt();
        Ok(ParsedWitness {
            lambda: field.parse_scalar(&self.lambda)?,
            gamma: field.parse_scalar(&self.gamma)?,
            delta: parse_poly_in(&self.delta, field, &vars)?,
            f: self.f.as_ref().map(|f| parse_poly_in(f, field, &vars)).transpose()?,
        })
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingMapFile {
    pub source: Option<RingFile>,
    pub target: Option<RingFile>,
    pub images: BTreeMap<String, String>,
    pub preimages: Option<BTreeMap<String, String>>,
}

impl RingMapFile {
    /// Builds the map; `fallback` supplies a missing source or target.
    pub fn build(&self, default: FieldSpec, fallback: Option<&Ring>) -> Result<RingMap> {
        let pick = |r: &Option<RingFile>, which: &str| -> Result<Ring> {
            match (r, fallback) {
                (Some(r), _) => r.build(default),
                (None, Some(f)) => Ok(f.clone()),
                (None, None) => Err(AlgebraError::Invalid(format!("map file needs a `{which}` ring"))),
            }
        };
        let source = pick(&self.source, "source")?;
        let target = pick(&self.target, "target")?;
        let field = source.field();
        let (sv, tv) = (source.vars(), target.vars());
        for name in self.images.keys() {
            if sv.index_of(name).is_none() {
                return Err(AlgebraError::UnknownVariable(name.clone()));
            }
        }
        let images = sv
            .names()
            .iter()
            .map(|n| match self.images.get(n) {
                Some(text) => parse_poly_in(text, field, &tv),
                None => Err(AlgebraError::Invalid(format!("no image given for source variable {n}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        let preimages = match &self.preimages {
            None => None,
            Some(pre) => {
                for name in pre.keys() {
                    if tv.index_of(name).is_none() {
                        return Err(AlgebraError::UnknownVariable(name.clone()));
                    }
                }
                Some(
                    tv.names()
                        .iter()
                        .map(|n| pre.get(n).map(|text| parse_poly_in(text, field, &sv)).transpose())
                        .collect::<Result<Vec<_>>>()?,
                )
            }
        };
        RingMap::new(source, target, images, preimages)
    }
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path).map_err(|e| AlgebraError::Invalid(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| AlgebraError::Invalid(format!("{}: {e}", path.display())))
}

pub fn read_surface(path: &Path, default: FieldSpec) -> Result<SurfacePresentation> {
    read_json::<SurfaceFile>(path)?.build(default)
}

pub fn read_ideal(path: &Path) -> Result<IdealFile> {
    read_json(path)
}

pub fn read_witness(path: &Path) -> Result<WitnessFile> {
    read_json(path)
}

pub fn read_map(path: &Path) -> Result<RingMapFile> {
    read_json(path)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn surface_documents() {
        let s: SurfaceFile = serde_json::from_str(r#"{"field":"Q","d":2,"e":4,"P":"Z^2","Q":"Y^2 - X*Y*Z^2"}"#).unwrap();
        let s = s.build(FieldSpec::Rationals).unwrap();
        assert_eq!(s.q().to_string(), "-X*Y*Z^2 + Y^2");
        let s: SurfaceFile = serde_json::from_str(r#"{"field":"Fp","p":3,"d":1,"e":1,"P":"Z^2","Q":"Y^2"}"#).unwrap();
        assert_eq!(s.build(FieldSpec::Rationals).unwrap().field(), FieldSpec::Prime { p: 3 });
        assert!(serde_json::from_str::<SurfaceFile>(r#"{"d":1,"e":1,"P":"Z","Q":"Y","extra":1}"#).is_err());
    }

    #[test]
    fn map_documents() {
        let m: RingMapFile = serde_json::from_str(
            r#"{"source":{"vars":["X","Z","T"],"relations":["X^3*T - Z^2"]},
                "target":{"d":1,"e":2,"P":"Z^2","Q":"Y"},
                "images":{"X":"X","Z":"Z","T":"T"}}"#,
        )
        .unwrap();
        let m = m.build(FieldSpec::Rationals, None).unwrap();
        assert!(matches!(m.source, Ring::Presented(_)));
        assert!(matches!(m.target, Ring::Surface(_)));
        let bad: RingMapFile = serde_json::from_str(r#"{"images":{"W":"X"}}"#).unwrap();
        assert!(bad.build(FieldSpec::Rationals, None).is_err());
    }
}
