//! Serde record types shared by the seed and Kakeya-set documents.
//!
//! Coordinates are always strings so exact values survive the round trip.

use serde::{Deserialize, Serialize};

use crate::projgeom::{GeomError, Subspace};
use crate::scalar::{FieldSpec, Scalar, ScalarError};

pub fn encode(coords: &[Scalar]) -> Vec<String> {
    coords.iter().map(Scalar::to_string).collect()
}

pub fn decode(field: FieldSpec, coords: &[String]) -> Result<Vec<Scalar>, ScalarError> {
    coords.iter().map(|c| field.parse(c)).collect()
}

/// A line (or any flat) as its echelon basis in homogeneous coordinates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BasisRecord {
    pub basis: Vec<Vec<String>>,
}

impl BasisRecord {
    pub fn from_subspace(s: &Subspace) -> Self {
        BasisRecord {
            basis: s.basis().iter().map(|r| encode(r)).collect(),
        }
    }

    pub fn to_subspace(&self, field: FieldSpec, ambient: usize) -> Result<Subspace, RecordError> {
        let rows = self
            .basis
            .iter()
            .map(|r| decode(field, r))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Subspace::from_rows(field, ambient, rows)?)
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum RecordError {
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Geometry(#[from] GeomError),
    #[error("{0}")]
    Invalid(String),
}
