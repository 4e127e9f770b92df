//! Re-verification of a [`KakeyaSet`] from raw coordinates.
//!
//! Nothing here calls into the construction: incidences are recounted with
//! affine line membership, directions are recomputed from each line's basis,
//! and grid membership uses its own change of basis. Provenance tags are only
//! consulted to decide which points and lines count as lifted.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde_json::{json, Value};
use thiserror::Error;

use crate::construction::{KakeyaSet, LineOrigin, Provenance};
use crate::polymethod::{bound_value, PolyError};
use crate::projgeom::{AffineLine, PointIndex, ProjPoint, Subspace};
use crate::records::encode;
use crate::scalar::Scalar;

pub const WITNESS_LIMIT: usize = 10;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum VerifyError {
    #[error("direction set does not contain a full grid: {0}")]
    GridMissing(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub check: String,
    pub pass: bool,
    /// Every violation found; truncated on output unless verbose.
    pub witnesses: Vec<String>,
    pub measured: BTreeMap<String, Value>,
}

impl VerifyReport {
    fn new(check: &str) -> Self {
        VerifyReport {
            check: check.to_string(),
            pass: true,
            witnesses: Vec::new(),
            measured: BTreeMap::new(),
        }
    }

    fn witness(&mut self, w: String) {
        self.witnesses.push(w);
    }

    fn measure(&mut self, key: &str, v: Value) {
        self.measured.insert(key.to_string(), v);
    }

    fn finish(mut self) -> Self {
        self.pass = self.witnesses.is_empty();
        self
    }

    pub fn to_json(&self, verbose: bool) -> Value {
        let shown: Vec<&String> = if verbose {
            self.witnesses.iter().collect()
        } else {
            self.witnesses.iter().take(WITNESS_LIMIT).collect()
        };
        json!({
            "check": self.check,
            "verdict": if self.pass { "pass" } else { "fail" },
            "witnesses": shown,
            "witness_count": self.witnesses.len(),
            "measured": self.measured,
        })
    }
}

fn rational_json(r: &BigRational) -> Value {
    let text = if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    };
    json!({"exact": text, "approx": r.to_f64()})
}

fn int(v: usize) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

fn affine_lines(k: &KakeyaSet, report: &mut VerifyReport) -> Vec<Option<AffineLine>> {
    k.lines
        .iter()
        .enumerate()
        .map(|(i, l)| match AffineLine::from_subspace(&l.basis) {
            Ok(a) => Some(a),
            Err(e) => {
                report.witness(format!("line {i}: not an affine line ({e})"));
                None
            }
        })
        .collect()
}

/// Every line carries at least `N` points; points are distinct; no line
/// carries more than `N` lifted points.
pub fn verify_incidence(k: &KakeyaSet) -> VerifyReport {
    let mut rep = VerifyReport::new("incidence");
    let lines = affine_lines(k, &mut rep);
    let mut index = PointIndex::new();
    for (i, p) in k.points.iter().enumerate() {
        if let Some(prev) = index.insert(&p.coords, i) {
            rep.witness(format!(
                "points {prev} and {i} coincide at {:?}",
                encode(&p.coords)
            ));
        }
    }
    let lifted: Vec<bool> = k
        .points
        .iter()
        .map(|p| matches!(p.provenance, Provenance::Lifted { .. }))
        .collect();
    let (mut total, mut min, mut max, mut max_lifted) = (0usize, usize::MAX, 0usize, 0usize);
    for (i, line) in lines.iter().enumerate() {
        let Some(line) = line else { continue };
        let (mut count, mut lifted_count) = (0, 0);
        for (p, &is_lifted) in k.points.iter().zip(&lifted) {
            if line.contains(&p.coords) {
                count += 1;
                lifted_count += is_lifted as usize;
            }
        }
        total += count;
        min = min.min(count);
        max = max.max(count);
        max_lifted = max_lifted.max(lifted_count);
        if count < k.big_n {
            rep.witness(format!("line {i}: {count} points < N = {}", k.big_n));
        }
        if lifted_count > k.big_n {
            rep.witness(format!(
                "line {i}: {lifted_count} lifted points > N = {}",
                k.big_n
            ));
        }
    }
    rep.measure("lines", json!(k.lines.len()));
    rep.measure("points", json!(k.points.len()));
    rep.measure("incidences", json!(total));
    rep.measure(
        "min_points_per_line",
        json!(if k.lines.is_empty() { 0 } else { min }),
    );
    rep.measure("max_points_per_line", json!(max));
    rep.measure("max_lifted_points_per_line", json!(max_lifted));
    rep.finish()
}

/// Recovers grid coordinates `(1, o_2, …, o_n)` from a direction `c` with
/// `c_1 = 1`: `o_2 = c_2`, `o_i = o_{i−1} + (−1)^i c_i`. The inverse of this
/// unitriangular map sends `(1, e_1, …, e_{n−1})` to
/// `(1, e_1, e_1 − e_2, e_3 − e_2, …)`, the closed form of the lifted directions.
pub fn grid_change_of_basis(c: &[Scalar]) -> Option<Vec<Scalar>> {
    let one = c.first()?;
    if one.is_zero() {
        return None;
    }
    let c: Vec<Scalar> = c.iter().map(|x| x / one).collect();
    let mut o = vec![c[0].clone()];
    if c.len() > 1 {
        o.push(c[1].clone());
    }
    for i in 3..=c.len() {
        let prev = o[i - 2].clone();
        o.push(if i % 2 == 0 {
            &prev + &c[i - 1]
        } else {
            &prev - &c[i - 1]
        });
    }
    Some(o)
}

fn grid_sets(k: &KakeyaSet) -> Vec<Vec<Scalar>> {
    if k.grid.sets.is_empty() {
        vec![k.seed_meta.directions.clone(); k.n - 1]
    } else {
        k.grid.sets.clone()
    }
}

fn position(set: &[Scalar], x: &Scalar) -> Option<usize> {
    set.iter().position(|a| a == x)
}

fn falling(n: usize, k: usize) -> usize {
    (0..k).map(|i| n.saturating_sub(i)).product()
}

struct DirectionScan {
    report: VerifyReport,
    cells_covered: usize,
    cells_total: usize,
}

fn scan_directions(k: &KakeyaSet) -> DirectionScan {
    let mut rep = VerifyReport::new("directions");
    let inf = Subspace::hyperplane_at_infinity(k.field, k.n);
    let sets = grid_sets(k);
    let mut seen = PointIndex::new();
    let mut cells: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut lifted_dirs = PointIndex::new();
    let mut lifted_lines = 0usize;
    for (i, line) in k.lines.iter().enumerate() {
        let dir = match line.basis.meet(&inf).ok().and_then(|s| s.as_point()) {
            Some(p) => p,
            None => {
                rep.witness(format!("line {i}: no unique point at infinity"));
                continue;
            }
        };
        let dir = match ProjPoint::new(dir.coords()[..k.n].to_vec()) {
            Ok(d) => d,
            Err(_) => {
                rep.witness(format!("line {i}: lies in the hyperplane at infinity"));
                continue;
            }
        };
        if dir != line.direction {
            rep.witness(format!(
                "line {i}: stored direction {:?} differs from recomputed {:?}",
                encode(line.direction.coords()),
                encode(dir.coords())
            ));
        }
        if let Some(j) = seen.insert(dir.coords(), i) {
            rep.witness(format!(
                "lines {j} and {i} share direction {:?}",
                encode(dir.coords())
            ));
        }
        if matches!(line.origin, LineOrigin::Lifted { .. }) {
            lifted_lines += 1;
            lifted_dirs.insert(dir.coords(), i);
        }
        match grid_change_of_basis(dir.coords()) {
            None => rep.witness(format!(
                "line {i}: direction {:?} has first coordinate 0",
                encode(dir.coords())
            )),
            Some(o) => {
                let cell: Option<Vec<usize>> = o[1..]
                    .iter()
                    .zip(&sets)
                    .map(|(x, a)| position(a, x))
                    .collect();
                match cell {
                    Some(c) => {
                        cells.insert(c);
                    }
                    None => rep.witness(format!(
                        "line {i}: grid coordinates {:?} outside the grid",
                        encode(&o)
                    )),
                }
            }
        }
    }
    let cells_total: usize = sets.iter().map(Vec::len).product();
    let expected_lifted = falling(k.big_n, k.n - 1);
    if lifted_lines != expected_lifted {
        rep.witness(format!(
            "{lifted_lines} lifted lines, expected N(N-1)...(N-n+2) = {expected_lifted}"
        ));
    }
    if lifted_dirs.len() != lifted_lines {
        rep.witness(format!(
            "lifted lines have only {} distinct directions",
            lifted_dirs.len()
        ));
    }
    if cells.len() != cells_total {
        rep.witness(format!(
            "grid covered at {} of {cells_total} cells",
            cells.len()
        ));
    }
    rep.measure("directions", json!(seen.len()));
    rep.measure("lifted_lines", json!(lifted_lines));
    rep.measure("expected_lifted_lines", json!(expected_lifted));
    rep.measure("grid_cells", json!(cells_total));
    rep.measure("grid_cells_covered", json!(cells.len()));
    DirectionScan {
        report: rep.finish(),
        cells_covered: cells.len(),
        cells_total,
    }
}

/// Directions are recomputed from bases, pairwise distinct, inside the grid
/// after the change of basis, and cover it.
pub fn verify_directions(k: &KakeyaSet) -> VerifyReport {
    scan_directions(k).report
}

/// `|S'|` against `N^n / 2^{n−1}`, the lifted-point count against
/// `Σ_i (N/2 − ε_i)(N/2 − ε_i − 1)⋯(N/2 − ε_i − n + 2)`, and exactly
/// `2^{n−1}` lifted lines through each lifted point.
pub fn verify_size(k: &KakeyaSet) -> VerifyReport {
    let mut rep = VerifyReport::new("size");
    let (n, big_n) = (k.n, k.big_n);
    let mut index = PointIndex::new();
    for (i, p) in k.points.iter().enumerate() {
        index.insert(&p.coords, i);
    }
    let size = index.len();
    let nn = int(big_n);
    let leading = num_traits::pow(nn.clone(), n) / num_traits::pow(int(2), n - 1);
    let c = (int(size) - &leading) / num_traits::pow(nn, n - 1);
    rep.measure("points", json!(size));
    rep.measure("leading_term", rational_json(&leading));
    rep.measure("c", rational_json(&c));

    let half = BigRational::new(BigInt::from(big_n), BigInt::from(2));
    let mut expected = BigRational::zero();
    for e in &k.seed_meta.epsilon {
        let base = &half - e;
        let mut prod = BigRational::one();
        for t in 0..n - 1 {
            prod *= &base - int(t);
        }
        expected += prod;
    }
    let mut lifted_index = PointIndex::new();
    let lifted: Vec<&Vec<Scalar>> = k
        .points
        .iter()
        .filter(|p| matches!(p.provenance, Provenance::Lifted { .. }))
        .map(|p| &p.coords)
        .filter(|c| lifted_index.insert(c, 0).is_none())
        .collect();
    rep.measure("lifted_points", json!(lifted.len()));
    rep.measure("lifted_points_formula", rational_json(&expected));
    if k.seed_meta.epsilon.len() != big_n {
        rep.witness(format!(
            "{} epsilon values for N = {big_n}",
            k.seed_meta.epsilon.len()
        ));
    } else if expected != int(lifted.len()) {
        rep.witness(format!(
            "{} lifted points but the epsilon formula gives {expected}",
            lifted.len()
        ));
    }

    let lifted_lines: Vec<(usize, AffineLine)> = k
        .lines
        .iter()
        .enumerate()
        .filter(|(_, l)| matches!(l.origin, LineOrigin::Lifted { .. }))
        .filter_map(|(i, l)| AffineLine::from_subspace(&l.basis).ok().map(|a| (i, a)))
        .collect();
    let want = 1usize << (n - 1);
    let mut per_point: BTreeMap<usize, usize> = BTreeMap::new();
    for p in &lifted {
        let through = lifted_lines.iter().filter(|(_, l)| l.contains(p)).count();
        *per_point.entry(through).or_default() += 1;
        if through != want {
            rep.witness(format!(
                "lifted point {:?} lies on {through} lifted lines, expected {want}",
                encode(p)
            ));
        }
    }
    rep.measure("lifted_lines_per_lifted_point", json!(per_point));
    rep.finish()
}

/// `binom(2r+n−2, n)|S'| ≥ binom(rN+n−1, n)`, exactly.
pub fn verify_bound_consistency(k: &KakeyaSet, r: u64) -> Result<VerifyReport, VerifyError> {
    let scan = scan_directions(k);
    let full = num_traits::pow(k.big_n, k.n - 1);
    if scan.cells_total != full || scan.cells_covered != full {
        return Err(VerifyError::GridMissing(format!(
            "{} of {full} cells of an N^(n-1) grid covered",
            scan.cells_covered
        )));
    }
    let mut rep = VerifyReport::new(&format!("bound_consistency(r={r})"));
    let mut index = PointIndex::new();
    for (i, p) in k.points.iter().enumerate() {
        index.insert(&p.coords, i);
    }
    let bound = bound_value(k.big_n as u64, k.n as u64, r)?;
    let size = int(index.len());
    if size < bound {
        rep.witness(format!("|S| = {} < bound {bound}", index.len()));
    }
    rep.measure("r", json!(r));
    rep.measure("points", json!(index.len()));
    rep.measure("bound", rational_json(&bound));
    Ok(rep.finish())
}

/// All checks in a fixed order; bound consistency only when `r` is given.
pub fn verify_all(k: &KakeyaSet, r: Option<u64>) -> Vec<VerifyReport> {
    let mut out = vec![verify_incidence(k), verify_directions(k), verify_size(k)];
    if let Some(r) = r {
        out.push(match verify_bound_consistency(k, r) {
            Ok(rep) => rep,
            Err(e) => {
                let mut rep = VerifyReport::new(&format!("bound_consistency(r={r})"));
                rep.witness(e.to_string());
                rep.finish()
            }
        });
    }
    out
}
