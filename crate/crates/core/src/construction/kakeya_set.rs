//! The assembled line/point set and its JSON document.
//!
//! ```json
//! {"field": {...}, "n": 3, "N": 7,
//!  "grid": [["0","2","4",...], ...],
//!  "lines": [{"basis": [[...],[...]], "direction": [...],
//!             "provenance": {"kind": "lifted", "J": [0,1]}}, ...],
//!  "points": [{"coords": [...], "provenance": {"kind": "seed"}}, ...],
//!  "seed_meta": {"name": "...", "N": 7, "epsilon": [...], "d": "1/2",
//!                "directions": [...]}}
//! ```
//! Points are affine (`n` coordinates); bases and directions are homogeneous.

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::ConstructionError;
use crate::projgeom::{AffineLine, ProjPoint, Subspace};
use crate::records::{decode, encode, BasisRecord, RecordError};
use crate::scalar::{FieldSpec, Scalar};

/// The direction grid `A_1 × … × A_{n−1}` in the `T`-basis.
#[derive(Debug, Clone, PartialEq)]
pub struct GridSpec {
    pub sets: Vec<Vec<Scalar>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LineOrigin {
    Lifted {
        #[serde(rename = "J")]
        j: Vec<usize>,
    },
    /// A grid cell with repeated indices, realised through the affine origin.
    GridCompletion { cell: Vec<usize> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Provenance {
    Seed,
    Lifted {
        #[serde(rename = "J")]
        j: Vec<usize>,
        #[serde(rename = "Jbar")]
        jbar: Vec<usize>,
        m: usize,
    },
    Padding {
        line: usize,
        lambda: u64,
    },
    GridCompletion {
        line: usize,
        lambda: u64,
    },
}

#[derive(Debug, Clone)]
pub struct KakeyaLine {
    /// Homogeneous line of `PG_n`.
    pub basis: Subspace,
    /// Direction as a point of `PG_{n−1}`.
    pub direction: ProjPoint,
    pub origin: LineOrigin,
}

impl KakeyaLine {
    pub fn affine(&self) -> Result<AffineLine, ConstructionError> {
        Ok(AffineLine::from_subspace(&self.basis)?)
    }

    pub fn is_lifted(&self) -> bool {
        matches!(self.origin, LineOrigin::Lifted { .. })
    }
}

#[derive(Debug, Clone)]
pub struct KakeyaPoint {
    /// Affine coordinates in `AG_n`.
    pub coords: Vec<Scalar>,
    pub provenance: Provenance,
}

impl KakeyaPoint {
    pub fn is_lifted(&self) -> bool {
        matches!(self.provenance, Provenance::Lifted { .. })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SeedMeta {
    pub name: String,
    pub n_lines: usize,
    pub epsilon: Vec<BigRational>,
    /// `d = Σε_i / N`.
    pub d: BigRational,
    /// Slopes `d_i` of the seed lines.
    pub directions: Vec<Scalar>,
}

#[derive(Debug, Clone)]
pub struct KakeyaSet {
    pub field: FieldSpec,
    pub n: usize,
    pub big_n: usize,
    pub grid: GridSpec,
    pub lines: Vec<KakeyaLine>,
    pub points: Vec<KakeyaPoint>,
    pub seed_meta: SeedMeta,
}

#[derive(Debug, Serialize, Deserialize)]
struct LineDoc {
    basis: Vec<Vec<String>>,
    direction: Vec<String>,
    provenance: LineOrigin,
}

#[derive(Debug, Serialize, Deserialize)]
struct PointDoc {
    coords: Vec<String>,
    provenance: Provenance,
}

#[derive(Debug, Serialize, Deserialize)]
struct SeedMetaDoc {
    name: String,
    #[serde(rename = "N")]
    n_lines: usize,
    epsilon: Vec<String>,
    d: String,
    directions: Vec<String>,
}

#[derive(Debug, Serialize, Deserialize)]
struct KakeyaDoc {
    field: FieldSpec,
    n: usize,
    #[serde(rename = "N")]
    big_n: usize,
    grid: Vec<Vec<String>>,
    lines: Vec<LineDoc>,
    points: Vec<PointDoc>,
    seed_meta: SeedMetaDoc,
}

fn ratio_string(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn parse_ratio(s: &str) -> Result<BigRational, ConstructionError> {
    s.parse::<BigRational>()
        .map_err(|_| ConstructionError::Record(RecordError::Invalid(format!("bad rational {s:?}"))))
}

impl KakeyaSet {
    pub fn lifted_lines(&self) -> impl Iterator<Item = &KakeyaLine> {
        self.lines.iter().filter(|l| l.is_lifted())
    }

    pub fn lifted_points(&self) -> impl Iterator<Item = &KakeyaPoint> {
        self.points.iter().filter(|p| p.is_lifted())
    }

    pub fn to_json(&self) -> String {
        let doc = KakeyaDoc {
            field: self.field,
            n: self.n,
            big_n: self.big_n,
            grid: self.grid.sets.iter().map(|s| encode(s)).collect(),
            lines: self
                .lines
                .iter()
                .map(|l| LineDoc {
                    basis: BasisRecord::from_subspace(&l.basis).basis,
                    direction: encode(l.direction.coords()),
                    provenance: l.origin.clone(),
                })
                .collect(),
            points: self
                .points
                .iter()
                .map(|p| PointDoc {
                    coords: encode(&p.coords),
                    provenance: p.provenance.clone(),
                })
                .collect(),
            seed_meta: SeedMetaDoc {
                name: self.seed_meta.name.clone(),
                n_lines: self.seed_meta.n_lines,
                epsilon: self.seed_meta.epsilon.iter().map(ratio_string).collect(),
                d: ratio_string(&self.seed_meta.d),
                directions: encode(&self.seed_meta.directions),
            },
        };
        serde_json::to_string_pretty(&doc).expect("Kakeya documents serialize")
    }

    pub fn from_json(text: &str) -> Result<KakeyaSet, ConstructionError> {
        let doc: KakeyaDoc =
            serde_json::from_str(text).map_err(|e| ConstructionError::Json(e.to_string()))?;
        let (field, n) = (doc.field, doc.n);
        if n < 2 {
            return Err(ConstructionError::UnsupportedDimension(n));
        }
        let invalid = |msg: String| ConstructionError::Record(RecordError::Invalid(msg));
        let grid = GridSpec {
            sets: doc
                .grid
                .iter()
                .map(|s| decode(field, s))
                .collect::<Result<_, _>>()
                .map_err(RecordError::from)?,
        };
        let lines = doc
            .lines
            .into_iter()
            .enumerate()
            .map(|(i, l)| {
                let basis = BasisRecord { basis: l.basis }.to_subspace(field, n)?;
                let dir = decode(field, &l.direction).map_err(RecordError::from)?;
                if dir.len() != n {
                    return Err(invalid(format!(
                        "line {i}: direction has {} coordinates, want {n}",
                        dir.len()
                    )));
                }
                Ok(KakeyaLine {
                    basis,
                    direction: ProjPoint::new(dir)?,
                    origin: l.provenance,
                })
            })
            .collect::<Result<Vec<_>, ConstructionError>>()?;
        let points = doc
            .points
            .into_iter()
            .enumerate()
            .map(|(i, p)| {
                let coords = decode(field, &p.coords).map_err(RecordError::from)?;
                if coords.len() != n {
                    return Err(invalid(format!(
                        "point {i} has {} coordinates, want {n}",
                        coords.len()
                    )));
                }
                Ok(KakeyaPoint {
                    coords,
                    provenance: p.provenance,
                })
            })
            .collect::<Result<Vec<_>, ConstructionError>>()?;
        let meta = doc.seed_meta;
        let seed_meta = SeedMeta {
            name: meta.name,
            n_lines: meta.n_lines,
            epsilon: meta
                .epsilon
                .iter()
                .map(|e| parse_ratio(e))
                .collect::<Result<_, _>>()?,
            d: parse_ratio(&meta.d)?,
            directions: decode(field, &meta.directions).map_err(RecordError::from)?,
        };
        Ok(KakeyaSet {
            field,
            n,
            big_n: doc.big_n,
            grid,
            lines,
            points,
            seed_meta,
        })
    }
}
