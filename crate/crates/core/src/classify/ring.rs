//! Finitely presented rings and maps between them.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{AlgebraError, Result};
use crate::field::FieldSpec;
use crate::groebner::{buchberger, member_of, GbConfig, GroebnerBasis, IdealBasis};
use crate::poly::{MultiPoly, VarSet};
use crate::surface::{SurfacePresentation, SurfaceSummary};

/// `k[vars]/(relations)`.
#[derive(Clone, Debug)]
pub struct RingPresentation {
    field: FieldSpec,
    vars: VarSet,
    relations: Vec<MultiPoly>,
    gb: OnceLock<GroebnerBasis>,
}

impl RingPresentation {
    pub fn new(field: FieldSpec, vars: VarSet, relations: Vec<MultiPoly>) -> Result<Self> {
        for r in &relations {
            if r.is_zero() {
                return Err(AlgebraError::Invalid("zero relation in presentation".into()));
            }
            if r.field() != field || r.vars() != &vars {
                return Err(AlgebraError::FieldMismatch(field.describe(), r.to_string()));
            }
        }
        Ok(RingPresentation {
            field,
            vars,
            relations,
            gb: OnceLock::new(),
        })
    }

    pub fn parse(field: FieldSpec, vars: &[&str], relations: &[&str]) -> Result<Self> {
        let vs = VarSet::new(vars)?;
        let rels = relations
            .iter()
            .map(|r| crate::parse::parse_poly_in(r, field, &vs))
            .collect::<Result<Vec<_>>>()?;
        Self::new(field, vs, rels)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn relations(&self) -> &[MultiPoly] {
        &self.relations
    }

    fn basis(&self, cfg: &GbConfig) -> Result<Option<&GroebnerBasis>> {
        if self.relations.is_empty() {
            return Ok(None);
        }
        if let Some(gb) = self.gb.get() {
            return Ok(Some(gb));
        }
        let gb = buchberger(&IdealBasis::grevlex(self.relations.clone())?, cfg)?;
        Ok(Some(self.gb.get_or_init(|| gb)))
    }

    /// Zero test in the quotient ring via Gröbner normal forms.
    pub fn is_zero(&self, p: &MultiPoly, cfg: &GbConfig) -> Result<bool> {
        match self.basis(cfg)? {
            None => Ok(p.is_zero()),
            Some(gb) => Ok(member_of(p, gb)?.is_some()),
        }
    }
}

/// A ring known to the verifier: either a double Danielewski surface (zero
/// test through the Laurent embedding) or a generic presentation (zero test
/// through Gröbner bases).
#[derive(Clone, Debug)]
pub enum Ring {
    Surface(SurfacePresentation),
    Presented(RingPresentation),
}

impl Ring {
    pub fn field(&self) -> FieldSpec {
        match self {
            Ring::Surface(s) => s.field(),
            Ring::Presented(r) => r.field(),
        }
    }

    pub fn vars(&self) -> VarSet {
        match self {
            Ring::Surface(s) => s.vars(),
            Ring::Presented(r) => r.vars().clone(),
        }
    }

    pub fn relations(&self) -> Vec<MultiPoly> {
        match self {
            Ring::Surface(s) => s.relations(),
            Ring::Presented(r) => r.relations().to_vec(),
        }
    }

    pub fn is_zero(&self, p: &MultiPoly, cfg: &GbConfig) -> Result<bool> {
        match self {
            Ring::Surface(s) => s.is_zero_in_b(p),
            Ring::Presented(r) => r.is_zero(p, cfg),
        }
    }

    pub fn backend_name(&self) -> &'static str {
        match self {
            Ring::Surface(_) => "laurent",
            Ring::Presented(_) => "groebner",
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Ring::Surface(s) => serde_json::to_value(SurfaceSummary::from(s)).expect("serializable"),
            Ring::Presented(r) => {
                let mut v = serde_json::to_value(r.field).expect("serializable");
                v["vars"] = json!(r.vars.names());
                v["relations"] = json!(r.relations.iter().map(|p| p.to_string()).collect::<Vec<_>>());
                v
            }
        }
    }
}

/// A homomorphism `source -> target` given by generator images, optionally with
/// preimages of the target generators witnessing surjectivity.
#[derive(Clone, Debug)]
pub struct RingMap {
    pub source: Ring,
    pub target: Ring,
    /// One image per source variable, written in the target variables.
    pub images: Vec<MultiPoly>,
    /// Per target variable, a source polynomial mapping onto it.
    pub preimages: Option<Vec<Option<MultiPoly>>>,
}

impl RingMap {
    pub fn new(source: Ring, target: Ring, images: Vec<MultiPoly>, preimages: Option<Vec<Option<MultiPoly>>>) -> Result<Self> {
        if source.field() != target.field() {
            return Err(AlgebraError::FieldMismatch(source.field().describe(), target.field().describe()));
        }
        let (sv, tv) = (source.vars(), target.vars());
        if images.len() != sv.len() {
            return Err(AlgebraError::Invalid(format!(
                "map needs {} images, got {}",
                sv.len(),
                images.len()
            )));
        }
        for img in &images {
            if img.vars() != &tv || img.field() != target.field() {
                return Err(AlgebraError::FieldMismatch(format!("target {}", tv.names().join(",")), img.to_string()));
            }
        }
        if let Some(pre) = &preimages {
            if pre.len() != tv.len() {
                return Err(AlgebraError::Invalid("one preimage slot per target variable expected".into()));
            }
            for p in pre.iter().flatten() {
                if p.vars() != &sv || p.field() != source.field() {
                    return Err(AlgebraError::FieldMismatch(format!("source {}", sv.names().join(",")), p.to_string()));
                }
            }
        }
        Ok(RingMap {
            source,
            target,
            images,
            preimages,
        })
    }

    /// Image of a source polynomial.
    pub fn apply(&self, p: &MultiPoly) -> Result<MultiPoly> {
        p.compose(&self.images)
    }

    pub fn image_of_var(&self, name: &str) -> Option<&MultiPoly> {
        self.source.vars().index_of(name).map(|i| &self.images[i])
    }

    /// `x ↦ next(self(x))`. Preimages compose when both maps carry full sets.
    pub fn then(&self, next: &RingMap) -> Result<RingMap> {
        if self.target.vars() != next.source.vars() {
            return Err(AlgebraError::Invalid("maps do not compose".into()));
        }
        let images = self
            .images
            .iter()
            .map(|img| img.compose(&next.images))
            .collect::<Result<Vec<_>>>()?;
        let preimages = match (&self.preimages, &next.preimages) {
            (Some(a), Some(b)) if a.iter().all(Option::is_some) => {
                let inner: Vec<MultiPoly> = a.iter().map(|p| p.clone().unwrap()).collect();
                Some(
                    b.iter()
                        .map(|p| p.as_ref().map(|p| p.compose(&inner)).transpose())
                        .collect::<Result<Vec<_>>>()?,
                )
            }
            _ => None,
        };
        RingMap::new(self.source.clone(), next.target.clone(), images, preimages)
    }

    pub fn to_json(&self) -> Value {
        let sv = self.source.vars();
        let tv = self.target.vars();
        let images: BTreeMap<String, String> = self
            .images
            .iter()
            .enumerate()
            .map(|(i, p)| (sv.name(i).to_string(), p.to_string()))
            .collect();
        let mut out = json!({
            "source": self.source.to_json(),
            "target": self.target.to_json(),
            "images": images,
        });
        if let Some(pre) = &self.preimages {
            let pre: BTreeMap<String, String> = pre
                .iter()
                .enumerate()
                .filter_map(|(i, p)| p.as_ref().map(|p| (tv.name(i).to_string(), p.to_string())))
                .collect();
            out["preimages"] = json!(pre);
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum MapStatus {
    /// Relations preserved and every target generator hit.
    Isomorphism,
    /// Relations preserved; no (or incomplete) surjectivity certificates.
    SurjectivityUnverified,
    /// Relations preserved but a supplied preimage does not map onto its generator.
    PreimageRejected,
    /// Some source relation does not vanish in the target.
    NotWellDefined,
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationCheck {
    pub relation: MultiPoly,
    pub image: MultiPoly,
    pub vanishes: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct PreimageCheck {
    pub generator: String,
    pub preimage: MultiPoly,
    pub image: MultiPoly,
    pub hits: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct MapVerification {
    pub status: MapStatus,
    pub backend: &'static str,
    pub relations: Vec<RelationCheck>,
    pub preimages: Vec<PreimageCheck>,
    pub diagnostics: Vec<String>,
}

impl MapVerification {
    pub fn is_isomorphism(&self) -> bool {
        self.status == MapStatus::Isomorphism
    }

    pub fn relations_preserved(&self) -> bool {
        self.relations.iter().all(|r| r.vanishes)
    }
}

/// Checks that `m` is well defined (relations map to zero) and surjective (each
/// supplied preimage maps onto its target generator). For presentations of
/// integral domains of the same dimension, both together prove the map is an
/// isomorphism.
pub fn verify_ring_map(m: &RingMap, cfg: &GbConfig) -> Result<MapVerification> {
    let mut diagnostics = Vec::new();
    let mut relations = Vec::new();
    for rel in m.source.relations() {
        let image = m.apply(&rel)?;
        let vanishes = m.target.is_zero(&image, cfg)?;
        if !vanishes {
            diagnostics.push(format!("relation {rel} maps to {image}, which is nonzero in the target"));
        }
        relations.push(RelationCheck {
            relation: rel,
            image,
            vanishes,
        });
    }
    let tv = m.target.vars();
    let mut preimages = Vec::new();
    let mut complete = m.preimages.is_some();
    if let Some(pre) = &m.preimages {
        for (i, p) in pre.iter().enumerate() {
            let Some(p) = p else {
                complete = false;
                diagnostics.push(format!("no preimage supplied for {}", tv.name(i)));
                continue;
            };
            let image = m.apply(p)?;
            let generator = MultiPoly::var(m.target.field(), &tv, i);
            let hits = m.target.is_zero(&(&image - &generator), cfg)?;
            if !hits {
                diagnostics.push(format!("preimage {p} maps to {image}, not to {}", tv.name(i)));
            }
            preimages.push(PreimageCheck {
                generator: tv.name(i).to_string(),
                preimage: p.clone(),
                image,
                hits,
            });
        }
    } else {
        diagnostics.push("well-defined and relations-preserving, surjectivity unverified".into());
    }
    let status = if !relations.iter().all(|r| r.vanishes) {
        MapStatus::NotWellDefined
    } else if preimages.iter().any(|p| !p.hits) {
        MapStatus::PreimageRejected
    } else if complete {
        MapStatus::Isomorphism
    } else {
        MapStatus::SurjectivityUnverified
    };
    Ok(MapVerification {
        status,
        backend: m.target.backend_name(),
        relations,
        preimages,
        diagnostics,
    })
}
