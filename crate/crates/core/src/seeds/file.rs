//! Seed JSON documents.
//!
//! ```json
//! {"name": "...", "field": {"kind": "prime", "p": 7}, "N": 7,
//!  "lines": [{"basis": [["1","0","0"], ...]}, ...],
//!  "m_lines": [...],
//!  "points": [{"coords": ["x","y"], "provenance": {"kind": "base"}}, ...],
//!  "epsilon": ["1/2", ...]}
//! ```
//! `epsilon` may be omitted, in which case it is recomputed.

use std::path::Path;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::{PlanarSeed, SeedError, SeedParams, SeedPoint, SeedSource};
use crate::records::{decode, encode, BasisRecord};
use crate::scalar::FieldSpec;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum SeedProvenance {
    #[default]
    Base,
    Extra,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SeedPointRecord {
    pub coords: Vec<String>,
    #[serde(default)]
    pub provenance: SeedProvenance,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SeedDoc {
    #[serde(default)]
    pub name: Option<String>,
    pub field: FieldSpec,
    #[serde(rename = "N")]
    pub n: usize,
    pub lines: Vec<BasisRecord>,
    pub m_lines: Vec<BasisRecord>,
    pub points: Vec<SeedPointRecord>,
    #[serde(default)]
    pub epsilon: Vec<String>,
}

impl SeedDoc {
    pub fn from_seed(seed: &PlanarSeed) -> Self {
        SeedDoc {
            name: Some(seed.name.clone()),
            field: seed.field,
            n: seed.n_lines(),
            lines: seed.lines.iter().map(BasisRecord::from_subspace).collect(),
            m_lines: seed
                .m_lines
                .iter()
                .map(BasisRecord::from_subspace)
                .collect(),
            points: seed
                .points
                .iter()
                .map(|p| SeedPointRecord {
                    coords: encode(&p.coords),
                    provenance: if p.extra {
                        SeedProvenance::Extra
                    } else {
                        SeedProvenance::Base
                    },
                })
                .collect(),
            epsilon: seed
                .epsilon
                .iter()
                .map(|e| format!("{}/{}", e.numer(), e.denom()))
                .collect(),
        }
    }

    pub fn into_seed(self) -> Result<PlanarSeed, SeedError> {
        if self.n != self.lines.len() {
            return Err(SeedError::Invalid(format!(
                "N = {} but {} lines given",
                self.n,
                self.lines.len()
            )));
        }
        let field = self.field;
        let lines = self
            .lines
            .iter()
            .map(|l| l.to_subspace(field, 2))
            .collect::<Result<Vec<_>, _>>()?;
        let m_lines = self
            .m_lines
            .iter()
            .map(|l| l.to_subspace(field, 2))
            .collect::<Result<Vec<_>, _>>()?;
        let points = self
            .points
            .iter()
            .map(|p| {
                let coords = decode(field, &p.coords)?;
                if coords.len() != 2 {
                    return Err(SeedError::Invalid(format!(
                        "point {:?} is not planar",
                        p.coords
                    )));
                }
                Ok(SeedPoint {
                    coords,
                    extra: p.provenance == SeedProvenance::Extra,
                })
            })
            .collect::<Result<Vec<_>, SeedError>>()?;
        let epsilon = self
            .epsilon
            .iter()
            .map(|e| {
                e.parse::<BigRational>()
                    .map_err(|_| SeedError::Invalid(format!("bad epsilon {e:?}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(PlanarSeed {
            name: self.name.unwrap_or_else(|| "user-seed".to_string()),
            field,
            lines,
            m_lines,
            points,
            epsilon,
        })
    }
}

pub fn seed_to_json(seed: &PlanarSeed) -> String {
    serde_json::to_string_pretty(&SeedDoc::from_seed(seed)).expect("seed documents serialize")
}

pub fn seed_from_json(text: &str) -> Result<PlanarSeed, SeedError> {
    let doc: SeedDoc = serde_json::from_str(text).map_err(|e| SeedError::Json(e.to_string()))?;
    doc.into_seed()
}

pub fn load_seed(path: &Path) -> Result<PlanarSeed, SeedError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| SeedError::Io(format!("{}: {e}", path.display())))?;
    seed_from_json(&text)
}

/// Registry entry for seeds stored on disk; needs `path`.
pub struct FileSeed;

impl SeedSource for FileSeed {
    fn name(&self) -> &'static str {
        "file"
    }

    fn description(&self) -> &'static str {
        "a planar seed loaded from a JSON document"
    }

    fn build(&self, params: &SeedParams) -> Result<PlanarSeed, SeedError> {
        load_seed(
            params
                .path
                .as_deref()
                .ok_or(SeedError::MissingParameter("path"))?,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seeds::{dual_conic_seed, regular_ngon_seed, seed_report};

    #[test]
    fn conic_seed_survives_json() {
        let seed = dual_conic_seed(7).unwrap();
        let back = seed_from_json(&seed_to_json(&seed)).unwrap();
        assert_eq!(back.lines, seed.lines);
        assert_eq!(back.m_lines, seed.m_lines);
        assert_eq!(back.epsilon, seed.epsilon);
        assert_eq!(seed_report(&back), seed_report(&seed));
    }

    #[test]
    fn real_seed_keeps_tolerance_and_extras() {
        let seed = regular_ngon_seed(7, 1e-8).unwrap();
        let back = seed_from_json(&seed_to_json(&seed)).unwrap();
        assert_eq!(back.field, FieldSpec::Real { tol: 1e-8 });
        assert_eq!(back.points.iter().filter(|p| p.extra).count(), 7);
        assert!(seed_report(&back).pass);
    }

    #[test]
    fn missing_epsilon_is_recomputed() {
        let mut doc = SeedDoc::from_seed(&dual_conic_seed(5).unwrap());
        doc.epsilon.clear();
        let seed = doc.into_seed().unwrap();
        assert!(seed.epsilon.is_empty());
        assert!(seed_report(&seed).pass);
    }

    #[test]
    fn malformed_documents_error() {
        assert!(matches!(seed_from_json("{}"), Err(SeedError::Json(_))));
        let mut doc = SeedDoc::from_seed(&dual_conic_seed(5).unwrap());
        doc.n = 4;
        assert!(matches!(doc.into_seed(), Err(SeedError::Invalid(_))));
    }
}
