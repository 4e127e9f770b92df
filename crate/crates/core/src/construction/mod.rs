//! Lifting a planar seed to a line set in `AG_n`.
//!
//! [`build_frame`] fixes the points `x_0..x_n`, `y_3..y_n` of `PG_n`;
//! [`Lifter`] evaluates the recursive lines `ℓ_J`, directions `p_J` and
//! points `z_{J,J̄,m}`; [`assemble`] puts the pieces together into a
//! [`KakeyaSet`].

mod assemble;
mod frame;
mod kakeya_set;
mod lift;

use thiserror::Error;

pub use assemble::assemble;
pub use frame::{build_frame, ConstructionFrame};
pub use kakeya_set::{
    GridSpec, KakeyaLine, KakeyaPoint, KakeyaSet, LineOrigin, Provenance, SeedMeta,
};
pub use lift::{grid_coordinates, grid_direction, Lifter};

use crate::projgeom::GeomError;
use crate::records::RecordError;
use crate::seeds::SeedError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConstructionError {
    #[error("unsupported dimension n = {0} (need n >= 2)")]
    UnsupportedDimension(usize),
    #[error("seed too small: N = {n_lines} but dimension {n} needs N >= 2(n-1) = {}", 2 * (n - 1))]
    SeedTooSmall { n_lines: usize, n: usize },
    #[error("degenerate seed: {0}")]
    DegenerateSeed(String),
    #[error("undefined base point: {0}")]
    UndefinedBasePoint(String),
    #[error("invalid index tuple: {0}")]
    InvalidTuple(String),
    #[error("seed fails validation: {}", .0.join("; "))]
    InvalidSeed(Vec<String>),
    #[error("could not pad line {0} to N points")]
    PaddingExhausted(usize),
    #[error(transparent)]
    Geometry(#[from] GeomError),
    #[error(transparent)]
    Seed(#[from] SeedError),
    #[error(transparent)]
    Record(#[from] RecordError),
    #[error("json error: {0}")]
    Json(String),
}

/// An ordered tuple of distinct seed-line indices (0-based).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndexTuple(Vec<usize>);

impl IndexTuple {
    pub fn new(entries: Vec<usize>) -> Result<Self, ConstructionError> {
        if entries.is_empty() {
            return Err(ConstructionError::InvalidTuple("empty tuple".into()));
        }
        for (i, e) in entries.iter().enumerate() {
            if entries[..i].contains(e) {
                return Err(ConstructionError::InvalidTuple(format!(
                    "repeated entry {e} in {entries:?}"
                )));
            }
        }
        Ok(IndexTuple(entries))
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `J \ {a}` where `a` is the last entry.
    pub fn drop_last(&self) -> IndexTuple {
        IndexTuple(self.0[..self.0.len() - 1].to_vec())
    }

    /// `J \ {b}` where `b` is the second-to-last entry.
    pub fn drop_second_last(&self) -> IndexTuple {
        let k = self.0.len();
        let mut v = self.0[..k - 2].to_vec();
        v.push(self.0[k - 1]);
        IndexTuple(v)
    }
}

/// All ordered `len`-tuples of distinct elements of `0..items`, lexicographically.
pub fn ordered_tuples(items: usize, len: usize) -> Vec<Vec<usize>> {
    fn rec(
        items: usize,
        len: usize,
        cur: &mut Vec<usize>,
        used: &mut [bool],
        out: &mut Vec<Vec<usize>>,
    ) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for i in 0..items {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                rec(items, len, cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    if len <= items {
        rec(
            items,
            len,
            &mut Vec::with_capacity(len),
            &mut vec![false; items],
            &mut out,
        );
    }
    out
}
