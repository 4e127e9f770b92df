//! Lines dual to a regular N-gon over the reals.
//!
//! The plain polarity `(a,b,c) ↦ aX + bY + cZ = 0` sends the line at infinity
//! to an affine point and makes opposite vertices of an even N-gon dual to
//! parallel lines. Instead we use the correlation `u ↦ M u` with rows
//!
//! ```text
//! (−sin φ, cos φ, 0), (0, 0, 1), (cos φ, sin φ, 0),    φ = π/2 + π/(2N)
//! ```
//!
//! It maps the line at infinity to the point `⟨(0,1,0)⟩` and the point at
//! infinity of angle `φ` (on no bisecant) to the line at infinity. Vertex `k`
//! becomes `y = −sin(α_k) x − cos(α_k)` with `α_k = 2πk/N − φ`; these slopes
//! are pairwise distinct. The bisecant directions `⟨(−tan(πs/N), 1, 0)⟩`
//! become the vertical lines `x = tan(πs/N − φ)`.

use std::f64::consts::PI;

use super::{half, PlanarSeed, SeedError, SeedParams, SeedPoint, SeedSource};
use crate::projgeom::{AffineLine, PointIndex, ProjPoint, Subspace};
use crate::scalar::{FieldSpec, DEFAULT_TOL};

/// Infinite point of the bisecant through vertices `a` and `b`:
/// `⟨(−tan(π(a+b)/N), 1, 0)⟩`, written with sine and cosine so it stays finite.
pub fn bisecant_infinite_point(
    n: usize,
    a: usize,
    b: usize,
    tol: f64,
) -> Result<ProjPoint, SeedError> {
    let f = FieldSpec::real(tol)?;
    let beta = PI * ((a + b) % n) as f64 / n as f64;
    Ok(ProjPoint::new(vec![
        f.from_f64(-beta.sin())?,
        f.from_f64(beta.cos())?,
        f.zero(),
    ])?)
}

pub fn regular_ngon_seed(n: usize, tol: f64) -> Result<PlanarSeed, SeedError> {
    let field = FieldSpec::real(tol)?;
    if n < 5 {
        return Err(SeedError::Invalid(format!(
            "regular N-gon seeds need N >= 5, got {n}"
        )));
    }
    let r = |v: f64| field.from_f64(v);
    let phi = PI / 2.0 + PI / (2.0 * n as f64);
    let (slopes, intercepts): (Vec<f64>, Vec<f64>) = (0..n)
        .map(|k| {
            let alpha = 2.0 * PI * k as f64 / n as f64 - phi;
            (-alpha.sin(), -alpha.cos())
        })
        .unzip();

    let lines = (0..n)
        .map(|k| {
            let a = ProjPoint::new(vec![r(0.0)?, r(intercepts[k])?, field.one()])?;
            let b = ProjPoint::new(vec![field.one(), r(slopes[k])?, field.zero()])?;
            Ok(Subspace::from_points(&[&a, &b])?)
        })
        .collect::<Result<Vec<_>, SeedError>>()?;

    // duals of the bisecants: all pairwise intersections
    let mut points = Vec::new();
    let mut index = PointIndex::new();
    for a in 0..n {
        for b in a + 1..n {
            let x = (intercepts[b] - intercepts[a]) / (slopes[a] - slopes[b]);
            let y = slopes[a] * x + intercepts[a];
            let coords = vec![r(x)?, r(y)?];
            if index.insert(&coords, points.len()).is_none() {
                points.push(SeedPoint {
                    coords,
                    extra: false,
                });
            }
        }
    }
    // one extra point per line, walking x = 0, 1, 2, … past collisions
    for l in &lines {
        let line = AffineLine::from_subspace(l)?;
        let mut lambda = 0i64;
        loop {
            let coords = line.point_at(&field.from_i64(lambda));
            if index.insert(&coords, points.len()).is_none() {
                points.push(SeedPoint {
                    coords,
                    extra: true,
                });
                break;
            }
            lambda += 1;
        }
    }

    // even N: odd s carry N/2 double points (ε = 0) and come first
    let order: Vec<usize> = if n.is_multiple_of(2) {
        (0..n)
            .filter(|s| s % 2 == 1)
            .chain((0..n).filter(|s| s % 2 == 0))
            .collect()
    } else {
        (0..n).collect()
    };
    let vertical = super::vertical_point(field);
    let m_lines = order
        .iter()
        .map(|&s| {
            let c = (PI * s as f64 / n as f64 - phi).tan();
            let p = ProjPoint::new(vec![r(c)?, field.zero(), field.one()])?;
            Ok(Subspace::from_points(&[&p, &vertical])?)
        })
        .collect::<Result<Vec<_>, SeedError>>()?;
    let epsilon = if n % 2 == 1 {
        vec![half(1); n]
    } else {
        (0..n)
            .map(|i| if i < n / 2 { half(0) } else { half(2) })
            .collect()
    };
    Ok(PlanarSeed {
        name: format!("regular-ngon(N={n})"),
        field,
        lines,
        m_lines,
        points,
        epsilon,
    })
}

/// Registry entry for [`regular_ngon_seed`]; needs `N`.
pub struct RegularNgon;

impl SeedSource for RegularNgon {
    fn name(&self) -> &'static str {
        "ngon"
    }

    fn description(&self) -> &'static str {
        "lines dual to the regular N-gon over the reals (N >= 5)"
    }

    fn build(&self, params: &SeedParams) -> Result<PlanarSeed, SeedError> {
        let n = params.n_lines.ok_or(SeedError::MissingParameter("N"))?;
        regular_ngon_seed(n, params.tol.unwrap_or(DEFAULT_TOL))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Scalar;
    use crate::seeds::seed_report;
    use num_rational::BigRational;
    use num_traits::Zero;

    #[test]
    fn bisecant_direction_for_square() {
        let p = bisecant_infinite_point(4, 0, 1, 1e-9).unwrap();
        let want = ProjPoint::new(vec![
            Scalar::real(-(PI / 4.0).tan(), 1e-9).unwrap(),
            Scalar::real(1.0, 1e-9).unwrap(),
            Scalar::real(0.0, 1e-9).unwrap(),
        ])
        .unwrap();
        assert_eq!(p, want);
        assert_eq!(
            p,
            ProjPoint::new(vec![
                Scalar::real(-1.0, 1e-9).unwrap(),
                Scalar::real(1.0, 1e-9).unwrap(),
                Scalar::real(0.0, 1e-9).unwrap()
            ])
            .unwrap()
        );
    }

    #[test]
    fn exactly_n_bisecant_directions() {
        for n in 5..=12 {
            let mut idx = PointIndex::new();
            for a in 0..n {
                for b in a + 1..n {
                    idx.insert(bisecant_infinite_point(n, a, b, 1e-9).unwrap().coords(), 0);
                }
            }
            assert_eq!(idx.len(), n);
        }
    }

    #[test]
    fn each_line_has_n_minus_one_bisecant_points() {
        let seed = regular_ngon_seed(6, 1e-9).unwrap();
        let lines = seed.affine_lines().unwrap();
        for l in &lines {
            let base = seed
                .points
                .iter()
                .filter(|p| !p.extra && l.contains(&p.coords))
                .count();
            assert_eq!(base, 5);
            let all = seed.points.iter().filter(|p| l.contains(&p.coords)).count();
            assert_eq!(all, 6);
        }
    }

    #[test]
    fn epsilon_patterns() {
        let even = seed_report(&regular_ngon_seed(8, 1e-9).unwrap());
        assert!(even.pass, "{:?}", even.failures);
        assert_eq!(even.epsilon_sum, half(8));
        assert_eq!(even.d, half(1));
        assert_eq!(even.epsilon[..4], vec![BigRational::zero(); 4][..]);
        assert_eq!(even.epsilon[4..], vec![half(2); 4][..]);
        let odd = seed_report(&regular_ngon_seed(9, 1e-9).unwrap());
        assert!(odd.pass, "{:?}", odd.failures);
        assert!(odd.epsilon.iter().all(|e| *e == half(1)));
    }

    #[test]
    fn double_points_sit_on_the_right_m_line() {
        // pair {a, b} is dual to a bisecant with direction s = a + b mod N
        let n = 7;
        let seed = regular_ngon_seed(n, 1e-9).unwrap();
        for (mi, s) in (0..n).enumerate() {
            let pairs = seed.pairs_on(mi).unwrap();
            let want: Vec<(usize, usize)> = (0..n)
                .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
                .filter(|(a, b)| (a + b) % n == s)
                .collect();
            assert_eq!(pairs, want);
        }
    }

    #[test]
    fn small_n_rejected() {
        assert!(regular_ngon_seed(4, 1e-9).is_err());
    }
}
