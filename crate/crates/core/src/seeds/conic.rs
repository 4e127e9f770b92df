//! The dual conic over an odd prime field.
//!
//! The conic is `X² = YZ`. Its tangent at `⟨(0,1,0)⟩` is the line at
//! infinity; the remaining `q` tangents are `y = 2tx − t²`, `t ∈ F_q`, with
//! pairwise distinct slopes `2t`. Tangents `t ≠ s` meet at
//! `((t+s)/2, ts)`, so the vertical line `x = c` carries one double point per
//! pair `{t, 2c − t}`: `(q − 1)/2` of them.

use super::{half, PlanarSeed, SeedError, SeedParams, SeedPoint, SeedSource};
use crate::projgeom::{PointIndex, ProjPoint, Subspace};
use crate::scalar::FieldSpec;

pub fn dual_conic_seed(q: u64) -> Result<PlanarSeed, SeedError> {
    let field = FieldSpec::prime(q).map_err(|e| SeedError::UnsupportedField(e.to_string()))?;
    if q.is_multiple_of(2) || q < 5 {
        return Err(SeedError::UnsupportedField(format!(
            "dual conic seeds need an odd prime q >= 5, got {q}"
        )));
    }
    let qi = q as i64;
    let fe = |v: i64| field.from_i64(v);
    let mut lines = Vec::with_capacity(q as usize);
    let mut points = Vec::new();
    let mut index = PointIndex::new();
    for t in 0..qi {
        let on_line = ProjPoint::new(vec![fe(0), fe(-t * t), fe(1)])?;
        let at_inf = ProjPoint::new(vec![fe(1), fe(2 * t), fe(0)])?;
        lines.push(Subspace::from_points(&[&on_line, &at_inf])?);
        for x in 0..qi {
            let coords = vec![fe(x), fe(2 * t * x - t * t)];
            if index.insert(&coords, points.len()).is_none() {
                points.push(SeedPoint {
                    coords,
                    extra: false,
                });
            }
        }
    }
    let vertical = super::vertical_point(field);
    let m_lines = (0..qi)
        .map(|c| {
            Ok(Subspace::from_points(&[
                &ProjPoint::new(vec![fe(c), fe(0), fe(1)])?,
                &vertical,
            ])?)
        })
        .collect::<Result<Vec<_>, SeedError>>()?;
    Ok(PlanarSeed {
        name: format!("dual-conic(q={q})"),
        field,
        lines,
        m_lines,
        points,
        epsilon: vec![half(1); q as usize],
    })
}

/// Registry entry for [`dual_conic_seed`]; needs `q`.
pub struct DualConic;

impl SeedSource for DualConic {
    fn name(&self) -> &'static str {
        "conic"
    }

    fn description(&self) -> &'static str {
        "tangent lines of the conic X^2 = YZ over F_q (q odd prime >= 5)"
    }

    fn build(&self, params: &SeedParams) -> Result<PlanarSeed, SeedError> {
        dual_conic_seed(params.q.ok_or(SeedError::MissingParameter("q"))?)
    }
}
