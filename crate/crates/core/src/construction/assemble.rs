use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::kakeya_set::{
    GridSpec, KakeyaLine, KakeyaPoint, KakeyaSet, LineOrigin, Provenance, SeedMeta,
};
use super::{build_frame, grid_direction, ordered_tuples, ConstructionError, IndexTuple, Lifter};
use crate::projgeom::{AffineLine, PointIndex, ProjPoint, Subspace};
use crate::scalar::{FieldSpec, Scalar};
use crate::seeds::{seed_report, PlanarSeed};

/// Lifts `seed` to `AG_n`.
///
/// Lines: `ℓ_M` for every ordered `M` of `n − 1` distinct seed lines, then one
/// line through the origin for each grid cell with a repeated index. Points:
/// every `z_{J,J̄,m}` (deduplicated), then each line is padded to `N` points
/// along `anchor + λ·dir`, `λ = 0, 1, 2, …`. For `n = 2` the seed's own
/// points are kept instead of padding.
pub fn assemble(seed: &PlanarSeed, n: usize) -> Result<KakeyaSet, ConstructionError> {
    let frame = build_frame(n, seed.field)?;
    let big_n = seed.n_lines();
    if big_n < 2 * (n - 1) {
        return Err(ConstructionError::SeedTooSmall { n_lines: big_n, n });
    }
    let report = seed_report(seed);
    if !report.pass {
        return Err(ConstructionError::InvalidSeed(report.failures));
    }
    let field = seed.field;
    let d = seed.direction_parameters()?;
    let mut lifter = Lifter::new(&frame, seed)?;

    let mut lines = Vec::new();
    for m in ordered_tuples(big_n, n - 1) {
        let j = IndexTuple::new(m)?;
        let basis = lifter.line(&j)?;
        let p = lifter.direction(&j)?;
        let at_inf = basis.meet(&frame.pi(n))?.as_point();
        if at_inf.as_ref() != Some(&p) {
            return Err(ConstructionError::DegenerateSeed(format!(
                "point at infinity of the line for {:?} differs from its lifted direction",
                j.entries()
            )));
        }
        lines.push(KakeyaLine {
            basis,
            direction: drop_last(&p)?,
            origin: LineOrigin::Lifted {
                j: j.entries().to_vec(),
            },
        });
    }

    let mut index = PointIndex::new();
    let mut points: Vec<KakeyaPoint> = Vec::new();
    for (m, pairs) in seed.pairs_by_m()?.iter().enumerate() {
        for seq in ordered_tuples(pairs.len(), n - 1) {
            let (j, jbar): (Vec<usize>, Vec<usize>) = seq.iter().map(|&k| pairs[k]).unzip();
            let mut all: Vec<usize> = j.iter().chain(&jbar).copied().collect();
            all.sort_unstable();
            all.dedup();
            if all.len() != 2 * (n - 1) {
                continue;
            }
            let z = lifter.intersection(
                &IndexTuple::new(j.clone())?,
                &IndexTuple::new(jbar.clone())?,
                m,
            )?;
            let coords = z.affine().ok_or_else(|| {
                ConstructionError::DegenerateSeed(format!(
                    "lifted point for {j:?}, {jbar:?} is at infinity"
                ))
            })?;
            if index.insert(&coords, points.len()).is_none() {
                points.push(KakeyaPoint {
                    coords,
                    provenance: Provenance::Lifted { j, jbar, m },
                });
            }
        }
    }

    if n == 2 {
        let mut seed_points = Vec::with_capacity(seed.points.len());
        let mut seen = PointIndex::new();
        for p in &seed.points {
            let provenance = match index.find(&p.coords) {
                Some(i) => points[i].provenance.clone(),
                None => Provenance::Seed,
            };
            if seen.insert(&p.coords, seed_points.len()).is_none() {
                seed_points.push(KakeyaPoint {
                    coords: p.coords.clone(),
                    provenance,
                });
            }
        }
        for p in &points {
            if seen.find(&p.coords).is_none() {
                return Err(ConstructionError::DegenerateSeed(format!(
                    "double point {:?} is missing from the seed points",
                    p.coords
                )));
            }
        }
        points = seed_points;
        index = seen;
    }

    for (li, line) in lines.iter().enumerate() {
        pad_line(
            field,
            big_n,
            li,
            line,
            &mut points,
            &mut index,
            |line, lambda| Provenance::Padding { line, lambda },
        )?;
    }

    let origin = frame.x(0).clone();
    for cell in grid_cells(big_n, n - 1) {
        if !has_repeat(&cell) {
            continue;
        }
        let values: Vec<Scalar> = cell.iter().map(|&i| d[i].clone()).collect();
        let p = grid_direction(field, n, &values)?;
        let basis = Subspace::from_points(&[&origin, &p])?;
        let line = KakeyaLine {
            basis,
            direction: drop_last(&p)?,
            origin: LineOrigin::GridCompletion { cell },
        };
        let li = lines.len();
        pad_line(
            field,
            big_n,
            li,
            &line,
            &mut points,
            &mut index,
            |line, lambda| Provenance::GridCompletion { line, lambda },
        )?;
        lines.push(line);
    }

    let epsilon = if seed.epsilon.is_empty() {
        seed.measured_epsilon()?
    } else {
        seed.epsilon.clone()
    };
    let sum = epsilon.iter().fold(BigRational::zero(), |acc, e| acc + e);
    let seed_meta = SeedMeta {
        name: seed.name.clone(),
        n_lines: big_n,
        d: sum / BigRational::from_integer(BigInt::from(big_n)),
        epsilon,
        directions: d.clone(),
    };
    Ok(KakeyaSet {
        field,
        n,
        big_n,
        grid: GridSpec {
            sets: vec![d; n - 1],
        },
        lines,
        points,
        seed_meta,
    })
}

/// Direction of a point at infinity of `PG_n` as a point of `PG_{n−1}`.
fn drop_last(p: &ProjPoint) -> Result<ProjPoint, ConstructionError> {
    let c = p.coords();
    Ok(ProjPoint::new(c[..c.len() - 1].to_vec())?)
}

fn pad_line(
    field: FieldSpec,
    big_n: usize,
    li: usize,
    line: &KakeyaLine,
    points: &mut Vec<KakeyaPoint>,
    index: &mut PointIndex,
    tag: impl Fn(usize, u64) -> Provenance,
) -> Result<(), ConstructionError> {
    let aff = AffineLine::from_subspace(&line.basis)?;
    let mut count = points.iter().filter(|p| aff.contains(&p.coords)).count();
    // over F_p the walk revisits points after p steps
    let limit = match field {
        FieldSpec::Prime { p } => p,
        _ => u64::MAX,
    };
    let mut lambda = 0u64;
    while count < big_n {
        if lambda >= limit {
            return Err(ConstructionError::PaddingExhausted(li));
        }
        let coords = aff.point_at(&field.from_i64(lambda as i64));
        if index.insert(&coords, points.len()).is_none() {
            points.push(KakeyaPoint {
                coords,
                provenance: tag(li, lambda),
            });
            count += 1;
        }
        lambda += 1;
    }
    Ok(())
}

/// All of `0..items` to the power `len`, lexicographically.
fn grid_cells(items: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..items).map(move |i| {
                    let mut v = prefix.clone();
                    v.push(i);
                    v
                })
            })
            .collect();
    }
    out
}

fn has_repeat(cell: &[usize]) -> bool {
    cell.iter().enumerate().any(|(i, c)| cell[..i].contains(c))
}
