//! Planar starting configurations for the lifting construction.
//!
//! A seed lives in `PG_2` with coordinates `(X, Y, Z)`; `Z = 0` is the line
//! at infinity and `⟨(0,1,0)⟩` is the vertical direction, which no seed line
//! may have. Affine points are `(x, y)` pairs. The parallel lines `m_i` all
//! pass through `⟨(0,1,0)⟩`, i.e. they are vertical.

mod conic;
mod file;
mod ngon;
mod registry;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde_json::json;
use thiserror::Error;

pub use conic::{dual_conic_seed, DualConic};
pub use file::{load_seed, seed_from_json, seed_to_json, FileSeed, SeedDoc};
pub use ngon::{bisecant_infinite_point, regular_ngon_seed, RegularNgon};
pub use registry::{SeedParams, SeedRegistry, SeedSource};

use crate::projgeom::{AffineLine, GeomError, PointIndex, ProjPoint, Subspace};
use crate::records::RecordError;
use crate::scalar::{FieldSpec, Scalar, ScalarError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SeedError {
    #[error("unsupported field: {0}")]
    UnsupportedField(String),
    #[error("missing parameter: {0}")]
    MissingParameter(&'static str),
    #[error("unknown seed {0:?} (known: {1})")]
    UnknownSeed(String, String),
    #[error("invalid seed: {0}")]
    Invalid(String),
    #[error("seed line {0} is vertical (its infinite point is (0,1,0))")]
    VerticalLine(usize),
    #[error("i/o error: {0}")]
    Io(String),
    #[error("json error: {0}")]
    Json(String),
    #[error(transparent)]
    Geometry(#[from] GeomError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

impl From<RecordError> for SeedError {
    fn from(e: RecordError) -> Self {
        match e {
            RecordError::Scalar(e) => SeedError::Scalar(e),
            RecordError::Geometry(e) => SeedError::Geometry(e),
            RecordError::Invalid(s) => SeedError::Invalid(s),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SeedPoint {
    /// Affine `(x, y)`.
    pub coords: Vec<Scalar>,
    /// Added only to bring a line up to `N` points; never counted as a double point.
    pub extra: bool,
}

#[derive(Debug, Clone)]
pub struct PlanarSeed {
    pub name: String,
    pub field: FieldSpec,
    /// The `N` seed lines, as flats of `PG_2`.
    pub lines: Vec<Subspace>,
    /// The parallel lines `m_1..m_N`, all through `⟨(0,1,0)⟩`.
    pub m_lines: Vec<Subspace>,
    pub points: Vec<SeedPoint>,
    /// Stated `ε_i`, one per m-line; empty means "recompute".
    pub epsilon: Vec<BigRational>,
}

pub fn vertical_point(field: FieldSpec) -> ProjPoint {
    ProjPoint::from_i64(field, &[0, 1, 0]).expect("nonzero")
}

pub fn half(n: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(2))
}

impl PlanarSeed {
    pub fn n_lines(&self) -> usize {
        self.lines.len()
    }

    pub fn homogeneous(&self, affine: &[Scalar]) -> ProjPoint {
        ProjPoint::from_affine(affine).expect("affine points are nonzero")
    }

    /// `p_i = ℓ_i ∩ π_2` for every seed line.
    pub fn infinite_points(&self) -> Result<Vec<ProjPoint>, SeedError> {
        let inf = Subspace::hyperplane_at_infinity(self.field, 2);
        self.lines
            .iter()
            .enumerate()
            .map(|(i, l)| {
                if l.projdim() != 1 {
                    return Err(SeedError::Geometry(GeomError::NotALine(l.projdim())));
                }
                l.meet(&inf)?.as_point().ok_or_else(|| {
                    SeedError::Invalid(format!("seed line {i} is the line at infinity"))
                })
            })
            .collect()
    }

    /// The slope `d_i` of each line, read from `p_i = ⟨(1, d_i, 0)⟩`.
    pub fn direction_parameters(&self) -> Result<Vec<Scalar>, SeedError> {
        self.infinite_points()?
            .into_iter()
            .enumerate()
            .map(|(i, p)| {
                if p.coords()[0].is_zero() {
                    Err(SeedError::VerticalLine(i))
                } else {
                    Ok(p.coords()[1].clone())
                }
            })
            .collect()
    }

    pub fn affine_lines(&self) -> Result<Vec<AffineLine>, SeedError> {
        self.lines
            .iter()
            .map(|l| Ok(AffineLine::from_subspace(l)?))
            .collect()
    }

    /// Indices of seed lines through each seed point.
    pub fn lines_through_points(&self) -> Result<Vec<Vec<usize>>, SeedError> {
        let lines = self.affine_lines()?;
        Ok(self
            .points
            .iter()
            .map(|p| {
                (0..lines.len())
                    .filter(|&i| lines[i].contains(&p.coords))
                    .collect()
            })
            .collect())
    }

    /// Base points (not extra) on `m_i` that lie on at least two seed lines,
    /// with the lines through each.
    pub fn double_points_on(&self, m_index: usize) -> Result<Vec<(usize, Vec<usize>)>, SeedError> {
        let through = self.lines_through_points()?;
        self.double_points_with(m_index, &through)
    }

    fn double_points_with(
        &self,
        m_index: usize,
        through: &[Vec<usize>],
    ) -> Result<Vec<(usize, Vec<usize>)>, SeedError> {
        let m = &self.m_lines[m_index];
        let mut out = Vec::new();
        for (i, p) in self.points.iter().enumerate() {
            if p.extra || through[i].len() < 2 {
                continue;
            }
            if m.contains(&self.homogeneous(&p.coords))? {
                out.push((i, through[i].clone()));
            }
        }
        Ok(out)
    }

    /// Pairs `(a, ā)`, `a < ā`, of seed lines meeting at a double point of `m_i`.
    pub fn pairs_on(&self, m_index: usize) -> Result<Vec<(usize, usize)>, SeedError> {
        let through = self.lines_through_points()?;
        self.pairs_with(m_index, &through)
    }

    /// [`pairs_on`](Self::pairs_on) for every m-line at once.
    pub fn pairs_by_m(&self) -> Result<Vec<Vec<(usize, usize)>>, SeedError> {
        let through = self.lines_through_points()?;
        (0..self.m_lines.len())
            .map(|i| self.pairs_with(i, &through))
            .collect()
    }

    fn pairs_with(
        &self,
        m_index: usize,
        through: &[Vec<usize>],
    ) -> Result<Vec<(usize, usize)>, SeedError> {
        let mut pairs = Vec::new();
        for (_, lines) in self.double_points_with(m_index, through)? {
            for (k, &a) in lines.iter().enumerate() {
                for &b in &lines[k + 1..] {
                    pairs.push((a, b));
                }
            }
        }
        pairs.sort();
        Ok(pairs)
    }

    /// `ε_i = N/2 − #(double points on m_i)`, from base points only.
    pub fn measured_epsilon(&self) -> Result<Vec<BigRational>, SeedError> {
        let through = self.lines_through_points()?;
        let n = self.n_lines() as i64;
        (0..self.m_lines.len())
            .map(|i| {
                let count = self.double_points_with(i, &through)?.len() as i64;
                Ok(half(n) - BigRational::from_integer(BigInt::from(count)))
            })
            .collect()
    }
}

/// Outcome of re-checking every seed hypothesis from raw coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct SeedReport {
    pub name: String,
    pub n_lines: usize,
    pub epsilon: Vec<BigRational>,
    pub epsilon_stated: Vec<BigRational>,
    pub epsilon_sum: BigRational,
    /// `Σε_i / N`.
    pub d: BigRational,
    pub line_point_counts: Vec<usize>,
    pub distinct_directions: bool,
    pub m_lines_ok: bool,
    pub epsilon_consistent: bool,
    pub failures: Vec<String>,
    pub pass: bool,
}

fn ratio_str(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

impl SeedReport {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "name": self.name,
            "N": self.n_lines,
            "epsilon": self.epsilon.iter().map(ratio_str).collect::<Vec<_>>(),
            "epsilon_stated": self.epsilon_stated.iter().map(ratio_str).collect::<Vec<_>>(),
            "epsilon_sum": ratio_str(&self.epsilon_sum),
            "d": ratio_str(&self.d),
            "line_point_counts": self.line_point_counts,
            "distinct_directions": self.distinct_directions,
            "m_lines_ok": self.m_lines_ok,
            "epsilon_consistent": self.epsilon_consistent,
            "failures": self.failures,
            "verdict": if self.pass { "pass" } else { "fail" },
        })
    }
}

/// Recomputes all seed invariants; failures land in the verdict, never in an error.
pub fn seed_report(seed: &PlanarSeed) -> SeedReport {
    let n = seed.n_lines();
    let mut failures = Vec::new();
    let field = seed.field;

    let mut structural_ok = true;
    for (i, l) in seed.lines.iter().chain(&seed.m_lines).enumerate() {
        if l.ambient() != 2 || l.field() != field || l.projdim() != 1 {
            failures.push(format!("flat {i} is not a line of PG_2 over {field}"));
            structural_ok = false;
        }
    }
    for (i, p) in seed.points.iter().enumerate() {
        if p.coords.len() != 2 || p.coords.iter().any(|c| c.field() != field) {
            failures.push(format!(
                "point {i} is not an affine point of AG_2 over {field}"
            ));
            structural_ok = false;
        }
    }
    if !structural_ok {
        return SeedReport {
            name: seed.name.clone(),
            n_lines: n,
            epsilon: Vec::new(),
            epsilon_stated: seed.epsilon.clone(),
            epsilon_sum: BigRational::zero(),
            d: BigRational::zero(),
            line_point_counts: Vec::new(),
            distinct_directions: false,
            m_lines_ok: false,
            epsilon_consistent: false,
            failures,
            pass: false,
        };
    }

    let vertical = vertical_point(field);
    let mut distinct_directions = true;
    match seed.infinite_points() {
        Ok(pts) => {
            let mut idx = PointIndex::new();
            for (i, p) in pts.iter().enumerate() {
                if *p == vertical {
                    failures.push(format!("seed line {i} passes through (0,1,0)"));
                    distinct_directions = false;
                }
                if let Some(j) = idx.insert(p.coords(), i) {
                    failures.push(format!("seed lines {j} and {i} share an infinite point"));
                    distinct_directions = false;
                }
            }
        }
        Err(e) => {
            failures.push(e.to_string());
            distinct_directions = false;
        }
    }

    let mut idx = PointIndex::new();
    for (i, p) in seed.points.iter().enumerate() {
        if let Some(j) = idx.insert(&p.coords, i) {
            failures.push(format!("points {j} and {i} coincide"));
        }
    }

    let line_point_counts: Vec<usize> = match seed.affine_lines() {
        Ok(lines) => lines
            .iter()
            .map(|l| seed.points.iter().filter(|p| l.contains(&p.coords)).count())
            .collect(),
        Err(e) => {
            failures.push(e.to_string());
            vec![0; n]
        }
    };
    for (i, &c) in line_point_counts.iter().enumerate() {
        if c < n {
            failures.push(format!("seed line {i} carries {c} < {n} points"));
        }
    }

    let mut m_lines_ok = true;
    if seed.m_lines.len() != n {
        failures.push(format!(
            "expected {n} m-lines, found {}",
            seed.m_lines.len()
        ));
        m_lines_ok = false;
    }
    let inf = Subspace::hyperplane_at_infinity(field, 2);
    for (i, m) in seed.m_lines.iter().enumerate() {
        if !m.contains(&vertical).unwrap_or(false) || *m == inf {
            failures.push(format!("m-line {i} is not an affine line through (0,1,0)"));
            m_lines_ok = false;
        }
        if seed.m_lines[..i].iter().any(|o| o == m) {
            failures.push(format!("m-line {i} repeats an earlier m-line"));
            m_lines_ok = false;
        }
    }

    let epsilon = match seed.measured_epsilon() {
        Ok(e) => e,
        Err(e) => {
            failures.push(e.to_string());
            Vec::new()
        }
    };
    // m-line order is free, so compare as multisets
    let epsilon_consistent = seed.epsilon.is_empty() || {
        let mut a = epsilon.clone();
        let mut b = seed.epsilon.clone();
        a.sort();
        b.sort();
        a == b
    };
    if !epsilon_consistent {
        failures.push("stated epsilon does not match measured double-point counts".into());
    }
    let epsilon_sum: BigRational = epsilon.iter().fold(BigRational::zero(), |a, b| a + b);
    let d = if n == 0 {
        BigRational::zero()
    } else {
        &epsilon_sum / BigRational::from_integer(BigInt::from(n))
    };
    let pass = failures.is_empty();
    SeedReport {
        name: seed.name.clone(),
        n_lines: n,
        epsilon,
        epsilon_stated: seed.epsilon.clone(),
        epsilon_sum,
        d,
        line_point_counts,
        distinct_directions,
        m_lines_ok,
        epsilon_consistent,
        failures,
        pass,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conic_report_passes_with_half_epsilon() {
        let seed = dual_conic_seed(7).unwrap();
        let r = seed_report(&seed);
        assert!(r.pass, "{:?}", r.failures);
        assert_eq!(r.d, half(1));
        assert!(r.epsilon.iter().all(|e| *e == half(1)));
    }

    #[test]
    fn shared_infinite_point_fails() {
        let mut seed = dual_conic_seed(5).unwrap();
        let f = seed.field;
        // a second line with slope 0 (t = 0 tangent is y = 0)
        seed.lines[1] = Subspace::from_points(&[
            &ProjPoint::from_i64(f, &[0, 1, 1]).unwrap(),
            &ProjPoint::from_i64(f, &[1, 0, 0]).unwrap(),
        ])
        .unwrap();
        let r = seed_report(&seed);
        assert!(!r.pass);
        assert!(!r.distinct_directions);
    }

    #[test]
    fn vertical_seed_line_rejected() {
        let mut seed = dual_conic_seed(5).unwrap();
        seed.lines[0] = seed.m_lines[0].clone();
        assert_eq!(
            seed.direction_parameters().unwrap_err(),
            SeedError::VerticalLine(0)
        );
        assert!(!seed_report(&seed).distinct_directions);
    }

    #[test]
    fn wrong_stated_epsilon_fails() {
        let mut seed = dual_conic_seed(5).unwrap();
        seed.epsilon[0] = BigRational::zero();
        let r = seed_report(&seed);
        assert!(!r.epsilon_consistent && !r.pass);
    }

    #[test]
    fn deficient_line_fails() {
        let mut seed = dual_conic_seed(5).unwrap();
        seed.points.pop();
        let r = seed_report(&seed);
        assert!(!r.pass);
        assert!(r.line_point_counts.iter().any(|&c| c < 5));
    }
}
