use serde_json::json;

use super::{direction_multiplicities, vanishing_system, Poly, PolyError};
use crate::construction::KakeyaSet;
use crate::projgeom::{PointIndex, ProjPoint};
use crate::records::encode;
use crate::scalar::{binomial, FieldSpec, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    /// No nonzero polynomial exists and none is forced by the rank count.
    PassVacuous,
    Fail,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::PassVacuous => "pass-vacuous",
            Verdict::Fail => "fail",
        }
    }

    pub fn passed(&self) -> bool {
        *self != Verdict::Fail
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Attestation {
    pub coords: Vec<Scalar>,
    pub multiplicity: u64,
    pub required: u64,
}

#[derive(Debug, Clone)]
pub struct Certificate {
    pub source: Option<String>,
    pub field: FieldSpec,
    pub n: usize,
    pub big_n: usize,
    pub r: u64,
    pub n_points: usize,
    pub n_directions: usize,
    /// `binom(n+2r−2, n)|S| < binom(n+rN−1, n)`: a nonzero `f` must exist.
    pub forced: bool,
    pub basis_dim: usize,
    /// First basis element; every element is checked.
    pub f: Option<Poly>,
    pub s_attestations: Vec<Attestation>,
    pub d_attestations: Vec<Attestation>,
    pub failures: Vec<String>,
    pub verdict: Verdict,
}

fn attestations_json(a: &[Attestation]) -> serde_json::Value {
    a.iter()
        .map(|x| json!({"coords": encode(&x.coords), "multiplicity": x.multiplicity, "required": x.required}))
        .collect()
}

pub fn poly_json(f: &Poly) -> serde_json::Value {
    let terms: Vec<serde_json::Value> = f
        .terms()
        .map(|(j, c)| json!({"exponents": j.exponents(), "coeff": c.to_string()}))
        .collect();
    json!({"n": f.nvars(), "terms": terms})
}

impl Certificate {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "input": self.source,
            "field": self.field,
            "n": self.n,
            "N": self.big_n,
            "r": self.r,
            "degree_bound": self.r * self.big_n as u64 - 1,
            "point_multiplicity": 2 * self.r - 1,
            "points": self.n_points,
            "directions": self.n_directions,
            "forced": self.forced,
            "basis_dim": self.basis_dim,
            "f": self.f.as_ref().map(poly_json),
            "s_attestations": attestations_json(&self.s_attestations),
            "d_attestations": attestations_json(&self.d_attestations),
            "failures": self.failures,
            "verdict": self.verdict.as_str(),
        })
    }
}

/// Solves for `f ≠ 0` of degree `≤ rN − 1` vanishing to order `2r − 1` on
/// `S`, then checks independently that `f*` vanishes to order `r` on `D`.
///
/// Exact fields only. Every basis element of the solution space is checked;
/// attestations are recorded for the first.
pub fn certify_theorem6(k: &KakeyaSet, r: u64) -> Result<Certificate, PolyError> {
    let field = k.field;
    if !field.is_exact() {
        return Err(PolyError::UnsupportedField(
            "certificates need exact arithmetic".into(),
        ));
    }
    if r == 0 {
        return Err(PolyError::InvalidParameter("r must be >= 1".into()));
    }
    let (n, big_n) = (k.n, k.big_n);
    for (i, line) in k.lines.iter().enumerate() {
        let aff = line
            .affine()
            .map_err(|e| PolyError::HypothesisViolation(format!("line {i}: {e}")))?;
        let count = k.points.iter().filter(|p| aff.contains(&p.coords)).count();
        if count < big_n {
            return Err(PolyError::HypothesisViolation(format!(
                "line {i} carries {count} < N = {big_n} points"
            )));
        }
    }
    let mut index = PointIndex::new();
    let mut s: Vec<Vec<Scalar>> = Vec::new();
    for p in &k.points {
        if index.insert(&p.coords, s.len()).is_none() {
            s.push(p.coords.clone());
        }
    }
    let mut dindex = PointIndex::new();
    let mut d: Vec<ProjPoint> = Vec::new();
    for l in &k.lines {
        if dindex.insert(l.direction.coords(), d.len()).is_none() {
            d.push(l.direction.clone());
        }
    }

    let deg = r * big_n as u64 - 1;
    let mult = 2 * r - 1;
    let nn = n as u64;
    let forced = binomial(nn + 2 * r - 2, nn) * s.len() < binomial(nn + deg, nn);
    let sys = vanishing_system(&s, deg as u32, mult as u32, n, field)?;

    let mut failures = Vec::new();
    let mut s_att = Vec::new();
    let mut d_att = Vec::new();
    for (bi, f) in sys.basis.iter().enumerate() {
        if f.degree().is_some_and(|dg| dg > deg) {
            failures.push(format!("basis element {bi} has degree above {deg}"));
        }
        for u in &s {
            let m = f.multiplicity_at(u)?;
            if m < mult {
                failures.push(format!(
                    "basis element {bi}: multiplicity {m} < {mult} at {:?}",
                    encode(u)
                ));
            }
            if bi == 0 {
                s_att.push(Attestation {
                    coords: u.clone(),
                    multiplicity: m,
                    required: mult,
                });
            }
        }
        let top = f.top_part()?;
        for (v, m) in d.iter().zip(direction_multiplicities(&top, &d)?) {
            if m < r {
                failures.push(format!(
                    "basis element {bi}: top part has multiplicity {m} < {r} at direction {:?}",
                    encode(v.coords())
                ));
            }
            if bi == 0 {
                d_att.push(Attestation {
                    coords: v.coords().to_vec(),
                    multiplicity: m,
                    required: r,
                });
            }
        }
    }
    if sys.basis.is_empty() && forced {
        failures
            .push("the rank count forces a nonzero polynomial but the nullspace is trivial".into());
    }
    let verdict = if !failures.is_empty() {
        Verdict::Fail
    } else if sys.basis.is_empty() {
        Verdict::PassVacuous
    } else {
        Verdict::Pass
    };
    Ok(Certificate {
        source: None,
        field,
        n,
        big_n,
        r,
        n_points: s.len(),
        n_directions: d.len(),
        forced,
        basis_dim: sys.basis.len(),
        f: sys.basis.into_iter().next(),
        s_attestations: s_att,
        d_attestations: d_att,
        failures,
        verdict,
    })
}
