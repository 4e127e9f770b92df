use std::collections::HashMap;

use super::{ConstructionError, ConstructionFrame, IndexTuple};
use crate::projgeom::{ProjPoint, Subspace};
use crate::scalar::{FieldSpec, Scalar};
use crate::seeds::PlanarSeed;

type PointKey = (IndexTuple, IndexTuple, usize);

/// Evaluates `ℓ_J`, `p_J` and `z_{J,J̄,m}` for one seed and frame.
///
/// With `k = |J|`, `a` the last entry and `b` the second-to-last:
/// `ℓ_J = (x_{k+1} ⊕ ℓ_{J∖a}) ∩ (y_{k+1} ⊕ ℓ_{J∖b})`, and the same for `p_J`
/// and `z`. Memoized values are never invalidated: the seed and frame are
/// borrowed immutably for the lifter's lifetime.
pub struct Lifter<'a> {
    frame: &'a ConstructionFrame,
    seed_lines: Vec<Subspace>,
    seed_dirs: Vec<ProjPoint>,
    m_lines: Vec<Subspace>,
    memoize: bool,
    lines: HashMap<IndexTuple, Subspace>,
    dirs: HashMap<IndexTuple, ProjPoint>,
    points: HashMap<PointKey, ProjPoint>,
}

impl<'a> Lifter<'a> {
    pub fn new(frame: &'a ConstructionFrame, seed: &PlanarSeed) -> Result<Self, ConstructionError> {
        if seed.field != frame.field {
            return Err(ConstructionError::Geometry(
                crate::projgeom::GeomError::FieldMismatch(frame.field, seed.field),
            ));
        }
        let seed_dirs = seed
            .infinite_points()?
            .iter()
            .map(|p| frame.embed_point(p))
            .collect();
        Ok(Lifter {
            frame,
            seed_lines: seed.lines.iter().map(|l| frame.embed(l)).collect(),
            seed_dirs,
            m_lines: seed.m_lines.iter().map(|l| frame.embed(l)).collect(),
            memoize: true,
            lines: HashMap::new(),
            dirs: HashMap::new(),
            points: HashMap::new(),
        })
    }

    /// Turns caching on or off; turning it off also drops the cache.
    pub fn set_memoize(&mut self, on: bool) {
        self.memoize = on;
        if !on {
            self.lines.clear();
            self.dirs.clear();
            self.points.clear();
        }
    }

    pub fn cache_len(&self) -> usize {
        self.lines.len() + self.dirs.len() + self.points.len()
    }

    fn check(&self, j: &IndexTuple) -> Result<(), ConstructionError> {
        if j.len() > self.frame.n - 1 {
            return Err(ConstructionError::InvalidTuple(format!(
                "|J| = {} exceeds n - 1 = {}",
                j.len(),
                self.frame.n - 1
            )));
        }
        if let Some(&e) = j.entries().iter().find(|&&e| e >= self.seed_lines.len()) {
            return Err(ConstructionError::InvalidTuple(format!(
                "index {e} out of range"
            )));
        }
        Ok(())
    }

    /// The flat `(x_{k+1} ⊕ A) ∩ (y_{k+1} ⊕ B)`.
    fn lift_step(
        &self,
        k: usize,
        a: &Subspace,
        b: &Subspace,
    ) -> Result<Subspace, ConstructionError> {
        let left = a.span_point(self.frame.x(k + 1))?;
        let right = b.span_point(self.frame.y(k + 1))?;
        Ok(left.meet(&right)?)
    }

    /// `ℓ_J ⊂ Σ_{|J|+1}`.
    pub fn line(&mut self, j: &IndexTuple) -> Result<Subspace, ConstructionError> {
        self.check(j)?;
        if let Some(l) = self.lines.get(j) {
            return Ok(l.clone());
        }
        let l = if j.len() == 1 {
            self.seed_lines[j.entries()[0]].clone()
        } else {
            let la = self.line(&j.drop_last())?;
            let lb = self.line(&j.drop_second_last())?;
            let l = self.lift_step(j.len(), &la, &lb)?;
            if l.projdim() != 1 {
                return Err(ConstructionError::DegenerateSeed(format!(
                    "lifted line for {:?} has projective dimension {}",
                    j.entries(),
                    l.projdim()
                )));
            }
            l
        };
        if self.memoize {
            self.lines.insert(j.clone(), l.clone());
        }
        Ok(l)
    }

    /// `p_J ∈ π_{|J|+1}`.
    pub fn direction(&mut self, j: &IndexTuple) -> Result<ProjPoint, ConstructionError> {
        self.check(j)?;
        if let Some(p) = self.dirs.get(j) {
            return Ok(p.clone());
        }
        let p = if j.len() == 1 {
            self.seed_dirs[j.entries()[0]].clone()
        } else {
            let pa = Subspace::point(&self.direction(&j.drop_last())?);
            let pb = Subspace::point(&self.direction(&j.drop_second_last())?);
            self.lift_step(j.len(), &pa, &pb)?
                .as_point()
                .ok_or_else(|| {
                    ConstructionError::DegenerateSeed(format!(
                        "direction of {:?} is not a point",
                        j.entries()
                    ))
                })?
        };
        if self.memoize {
            self.dirs.insert(j.clone(), p.clone());
        }
        Ok(p)
    }

    /// `z_{J,J̄,m}`: the lift of the double point `ℓ_a ∩ ℓ_ā ∈ m` through
    /// matched positions of `J` and `J̄`.
    pub fn intersection(
        &mut self,
        j: &IndexTuple,
        jbar: &IndexTuple,
        m: usize,
    ) -> Result<ProjPoint, ConstructionError> {
        self.check(j)?;
        self.check(jbar)?;
        if j.len() != jbar.len() {
            return Err(ConstructionError::InvalidTuple(format!(
                "|J| = {} but |J̄| = {}",
                j.len(),
                jbar.len()
            )));
        }
        if m >= self.m_lines.len() {
            return Err(ConstructionError::InvalidTuple(format!(
                "m-line {m} out of range"
            )));
        }
        let key = (j.clone(), jbar.clone(), m);
        if let Some(p) = self.points.get(&key) {
            return Ok(p.clone());
        }
        let z = if j.len() == 1 {
            let (a, abar) = (j.entries()[0], jbar.entries()[0]);
            let undefined = || {
                ConstructionError::UndefinedBasePoint(format!(
                    "lines {a} and {abar} do not meet in a point of m_{m}"
                ))
            };
            let p = self.seed_lines[a]
                .meet(&self.seed_lines[abar])?
                .as_point()
                .ok_or_else(undefined)?;
            if !self.m_lines[m].contains(&p)? {
                return Err(undefined());
            }
            p
        } else {
            let za = Subspace::point(&self.intersection(&j.drop_last(), &jbar.drop_last(), m)?);
            let zb = Subspace::point(&self.intersection(
                &j.drop_second_last(),
                &jbar.drop_second_last(),
                m,
            )?);
            self.lift_step(j.len(), &za, &zb)?
                .as_point()
                .ok_or_else(|| {
                    ConstructionError::DegenerateSeed(format!(
                        "lifted point for {:?}, {:?} on m_{m} is not a point",
                        j.entries(),
                        jbar.entries()
                    ))
                })?
        };
        if self.memoize {
            self.points.insert(key, z.clone());
        }
        Ok(z)
    }
}

/// The point at infinity `(1, e_1, c_3, …, c_{k+1}, 0, …, 0)` of `PG_n` with
/// `c_i = (−1)^i (e_{i−1} − e_{i−2})`, where `e = values`.
///
/// This is the closed form of `p_J` when `values = (d_j)_{j∈J}`; for
/// `|values| = n − 1` its change of basis `o_i = o_{i−1} + (−1)^i c_i`
/// recovers `(1, e_1, …, e_{n−1})`.
pub fn grid_direction(
    field: FieldSpec,
    n: usize,
    values: &[Scalar],
) -> Result<ProjPoint, ConstructionError> {
    if values.is_empty() || values.len() > n - 1 {
        return Err(ConstructionError::InvalidTuple(format!(
            "need 1..={} grid values, got {}",
            n - 1,
            values.len()
        )));
    }
    let mut c = vec![field.zero(); n + 1];
    c[0] = field.one();
    c[1] = values[0].clone();
    for i in 3..=values.len() + 1 {
        let diff = &values[i - 2] - &values[i - 3];
        c[i - 1] = if i % 2 == 0 { diff } else { -&diff };
    }
    Ok(ProjPoint::new(c)?)
}

/// Closed-form `p_J` from the seed slopes `d`.
pub fn grid_coordinates(
    field: FieldSpec,
    n: usize,
    d: &[Scalar],
    j: &IndexTuple,
) -> Result<ProjPoint, ConstructionError> {
    let values: Vec<Scalar> = j.entries().iter().map(|&i| d[i].clone()).collect();
    grid_direction(field, n, &values)
}

#[cfg(test)]
mod tests {
    use super::super::{build_frame, ordered_tuples};
    use super::*;
    use crate::seeds::dual_conic_seed;

    #[test]
    fn directions_match_closed_form() {
        let seed = dual_conic_seed(7).unwrap();
        let d = seed.direction_parameters().unwrap();
        for n in 2..=4 {
            let frame = build_frame(n, seed.field).unwrap();
            let mut lifter = Lifter::new(&frame, &seed).unwrap();
            for len in 1..n {
                for t in ordered_tuples(7, len) {
                    let j = IndexTuple::new(t).unwrap();
                    let p = lifter.direction(&j).unwrap();
                    assert_eq!(p, grid_coordinates(seed.field, n, &d, &j).unwrap());
                    // p_J is the point at infinity of ℓ_J
                    let l = lifter.line(&j).unwrap();
                    let inf = l.meet(&frame.pi(n)).unwrap().as_point().unwrap();
                    assert_eq!(inf, p);
                    assert!(frame.sigma(len + 1).contains_subspace(&l).unwrap());
                }
            }
        }
    }

    #[test]
    fn lifted_points_lie_on_both_lines() {
        let seed = dual_conic_seed(7).unwrap();
        let frame = build_frame(3, seed.field).unwrap();
        let mut lifter = Lifter::new(&frame, &seed).unwrap();
        let pairs = seed.pairs_on(2).unwrap();
        for &(a, abar) in &pairs {
            for &(b, bbar) in &pairs {
                if (a, abar) == (b, bbar) {
                    continue;
                }
                let j = IndexTuple::new(vec![a, b]).unwrap();
                let jbar = IndexTuple::new(vec![abar, bbar]).unwrap();
                let z = lifter.intersection(&j, &jbar, 2).unwrap();
                assert!(lifter.line(&j).unwrap().contains(&z).unwrap());
                assert!(lifter.line(&jbar).unwrap().contains(&z).unwrap());
                assert!(!z.at_infinity());
            }
        }
    }

    #[test]
    fn base_point_must_lie_on_m() {
        let seed = dual_conic_seed(5).unwrap();
        let frame = build_frame(3, seed.field).unwrap();
        let mut lifter = Lifter::new(&frame, &seed).unwrap();
        let (a, b) = seed.pairs_on(1).unwrap()[0];
        let j = IndexTuple::new(vec![a]).unwrap();
        let jb = IndexTuple::new(vec![b]).unwrap();
        assert!(lifter.intersection(&j, &jb, 1).is_ok());
        assert!(matches!(
            lifter.intersection(&j, &jb, 0),
            Err(ConstructionError::UndefinedBasePoint(_))
        ));
    }

    #[test]
    fn tuple_bounds_are_enforced() {
        let seed = dual_conic_seed(5).unwrap();
        let frame = build_frame(3, seed.field).unwrap();
        let mut lifter = Lifter::new(&frame, &seed).unwrap();
        assert!(lifter
            .line(&IndexTuple::new(vec![0, 1, 2]).unwrap())
            .is_err());
        assert!(lifter.line(&IndexTuple::new(vec![5]).unwrap()).is_err());
    }

    #[test]
    fn memoization_off_gives_same_values() {
        let seed = dual_conic_seed(7).unwrap();
        let frame = build_frame(4, seed.field).unwrap();
        let mut memo = Lifter::new(&frame, &seed).unwrap();
        let mut plain = Lifter::new(&frame, &seed).unwrap();
        plain.set_memoize(false);
        for t in ordered_tuples(7, 3).into_iter().step_by(17) {
            let j = IndexTuple::new(t).unwrap();
            assert_eq!(memo.line(&j).unwrap(), plain.line(&j).unwrap());
            assert_eq!(memo.direction(&j).unwrap(), plain.direction(&j).unwrap());
        }
        assert!(memo.cache_len() > 0);
        assert_eq!(plain.cache_len(), 0);
    }
}
