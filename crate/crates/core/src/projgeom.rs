//! Points and flats of projective space in homogeneous coordinates.
//!
//! A projective space of dimension `d` has `d + 1` homogeneous coordinates.
//! Points are normalized so that their first nonzero coordinate is 1, and
//! subspaces are stored as reduced row echelon bases, which makes both
//! representations canonical: equal flats have equal coordinates.
//!
//! For the affine view of `PG_n`, the last coordinate is the homogenizing
//! one: `X_{n+1} = 0` is the hyperplane at infinity.

use std::collections::HashMap;

use thiserror::Error;

use crate::linalg::{rref_rows, Matrix, Rref};
use crate::scalar::{ExactKey, FieldSpec, Scalar};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeomError {
    #[error("all coordinates are zero")]
    ZeroVector,
    #[error("ambient dimension mismatch: {0} vs {1}")]
    AmbientMismatch(usize, usize),
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(FieldSpec, FieldSpec),
    #[error("empty coordinate list")]
    NoCoordinates,
    #[error("expected a line, got a flat of projective dimension {0}")]
    NotALine(isize),
    #[error("line lies in the hyperplane at infinity")]
    LineAtInfinity,
}

fn field_of(coords: &[Scalar]) -> Result<FieldSpec, GeomError> {
    let field = coords.first().ok_or(GeomError::NoCoordinates)?.field();
    if let Some(other) = coords.iter().map(Scalar::field).find(|f| *f != field) {
        return Err(GeomError::FieldMismatch(field, other));
    }
    Ok(field)
}

/// Divides by the first nonzero entry. Returns `None` for the zero vector.
fn normalize(coords: &[Scalar]) -> Option<Vec<Scalar>> {
    let lead = coords.iter().position(|c| !c.is_zero())?;
    let inv = coords[lead].inv().ok()?;
    let field = coords[lead].field();
    Some(
        coords
            .iter()
            .enumerate()
            .map(|(i, c)| {
                if i < lead {
                    field.zero()
                } else if i == lead {
                    field.one()
                } else {
                    let v = c * &inv;
                    if v.is_zero() {
                        field.zero()
                    } else {
                        v
                    }
                }
            })
            .collect(),
    )
}

/// A point of `PG_d`, stored with leading coordinate 1.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjPoint {
    coords: Vec<Scalar>,
}

impl ProjPoint {
    /// Normalizes `coords`; fails on the zero vector.
    pub fn new(coords: Vec<Scalar>) -> Result<Self, GeomError> {
        field_of(&coords)?;
        let coords = normalize(&coords).ok_or(GeomError::ZeroVector)?;
        Ok(ProjPoint { coords })
    }

    pub fn from_i64(field: FieldSpec, coords: &[i64]) -> Result<Self, GeomError> {
        ProjPoint::new(coords.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<Scalar> {
        self.coords
    }

    /// Projective dimension of the ambient space.
    pub fn ambient(&self) -> usize {
        self.coords.len() - 1
    }

    pub fn field(&self) -> FieldSpec {
        self.coords[0].field()
    }

    pub fn exact_key(&self) -> Option<Vec<ExactKey>> {
        self.coords.iter().map(Scalar::exact_key).collect()
    }

    /// True when the homogenizing (last) coordinate vanishes.
    pub fn at_infinity(&self) -> bool {
        self.coords.last().is_some_and(Scalar::is_zero)
    }

    /// Affine coordinates `X_i / X_{d+1}`, or `None` at infinity.
    pub fn affine(&self) -> Option<Vec<Scalar>> {
        let last = self.coords.last()?;
        let inv = last.inv().ok()?;
        Some(
            self.coords[..self.coords.len() - 1]
                .iter()
                .map(|c| c * &inv)
                .collect(),
        )
    }

    /// The point `⟨(a_1, …, a_d, 1)⟩`.
    pub fn from_affine(affine: &[Scalar]) -> Result<Self, GeomError> {
        let field = field_of(affine)?;
        let mut coords = affine.to_vec();
        coords.push(field.one());
        ProjPoint::new(coords)
    }
}

/// A flat of `PG_ambient`, held as a reduced echelon basis.
#[derive(Debug, Clone)]
pub struct Subspace {
    field: FieldSpec,
    ambient: usize,
    echelon: Rref,
}

impl PartialEq for Subspace {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && self.ambient == other.ambient
            && self.echelon.rows == other.echelon.rows
    }
}

impl Subspace {
    pub fn empty(field: FieldSpec, ambient: usize) -> Self {
        Subspace {
            field,
            ambient,
            echelon: Rref {
                rows: Vec::new(),
                pivots: Vec::new(),
                cols: ambient + 1,
            },
        }
    }

    /// The flat spanned by the given coordinate vectors (zero rows are dropped).
    pub fn from_rows(
        field: FieldSpec,
        ambient: usize,
        rows: Vec<Vec<Scalar>>,
    ) -> Result<Self, GeomError> {
        for r in &rows {
            if r.len() != ambient + 1 {
                return Err(GeomError::AmbientMismatch(
                    ambient,
                    r.len().saturating_sub(1),
                ));
            }
            let f = field_of(r)?;
            if f != field {
                return Err(GeomError::FieldMismatch(field, f));
            }
        }
        Ok(Subspace {
            field,
            ambient,
            echelon: rref_rows(field, ambient + 1, rows),
        })
    }

    pub fn from_points(points: &[&ProjPoint]) -> Result<Self, GeomError> {
        let first = points.first().ok_or(GeomError::NoCoordinates)?;
        Subspace::from_rows(
            first.field(),
            first.ambient(),
            points.iter().map(|p| p.coords().to_vec()).collect(),
        )
    }

    pub fn point(p: &ProjPoint) -> Self {
        Subspace::from_points(&[p]).expect("a single point is consistent")
    }

    /// The hyperplane `X_{d+1} = 0` of `PG_d`.
    pub fn hyperplane_at_infinity(field: FieldSpec, ambient: usize) -> Self {
        let rows = (0..ambient)
            .map(|i| {
                (0..=ambient)
                    .map(|j| field.from_i64((i == j) as i64))
                    .collect()
            })
            .collect();
        Subspace::from_rows(field, ambient, rows).expect("coordinate hyperplane")
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    /// Projective dimension; −1 for the empty flat.
    pub fn projdim(&self) -> isize {
        self.echelon.rows.len() as isize - 1
    }

    pub fn is_empty(&self) -> bool {
        self.echelon.rows.is_empty()
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.echelon.rows
    }

    pub fn basis_points(&self) -> Vec<ProjPoint> {
        self.echelon
            .rows
            .iter()
            .map(|r| ProjPoint::new(r.clone()).expect("echelon rows are nonzero"))
            .collect()
    }

    /// The unique point of a 0-dimensional flat.
    pub fn as_point(&self) -> Option<ProjPoint> {
        (self.projdim() == 0).then(|| self.basis_points().remove(0))
    }

    pub fn exact_key(&self) -> Option<Vec<Vec<ExactKey>>> {
        self.echelon
            .rows
            .iter()
            .map(|r| r.iter().map(Scalar::exact_key).collect())
            .collect()
    }

    fn check(&self, other_field: FieldSpec, other_ambient: usize) -> Result<(), GeomError> {
        if self.ambient != other_ambient {
            return Err(GeomError::AmbientMismatch(self.ambient, other_ambient));
        }
        if self.field != other_field {
            return Err(GeomError::FieldMismatch(self.field, other_field));
        }
        Ok(())
    }

    pub fn span(&self, other: &Subspace) -> Result<Subspace, GeomError> {
        self.check(other.field, other.ambient)?;
        let rows = self
            .echelon
            .rows
            .iter()
            .chain(&other.echelon.rows)
            .cloned()
            .collect();
        Subspace::from_rows(self.field, self.ambient, rows)
    }

    pub fn span_point(&self, p: &ProjPoint) -> Result<Subspace, GeomError> {
        self.span(&Subspace::point(p))
    }

    /// Intersection, computed from the left kernel of the stacked bases:
    /// `Σ α_i a_i = Σ β_j b_j` gives the common vectors.
    pub fn meet(&self, other: &Subspace) -> Result<Subspace, GeomError> {
        self.check(other.field, other.ambient)?;
        if self.is_empty() || other.is_empty() {
            return Ok(Subspace::empty(self.field, self.ambient));
        }
        let a = &self.echelon.rows;
        let b = &other.echelon.rows;
        let k = a.len() + b.len();
        let dim = self.ambient + 1;
        let mut m = Matrix::new(self.field, k);
        for c in 0..dim {
            m.push_row(a.iter().chain(b.iter()).map(|row| row[c].clone()).collect());
        }
        let rows = m
            .nullspace()
            .into_iter()
            .map(|w| {
                let mut v = vec![self.field.zero(); dim];
                for (alpha, row) in w.iter().zip(a) {
                    if alpha.is_zero() {
                        continue;
                    }
                    for (x, r) in v.iter_mut().zip(row) {
                        *x = &*x + &(alpha * r);
                    }
                }
                v
            })
            .collect();
        Subspace::from_rows(self.field, self.ambient, rows)
    }

    /// Membership test by reduction against the echelon basis.
    pub fn contains(&self, p: &ProjPoint) -> Result<bool, GeomError> {
        self.check(p.field(), p.ambient())?;
        let mut v = p.coords().to_vec();
        if !self.field.is_exact() {
            let max = v.iter().map(Scalar::magnitude).fold(0.0, f64::max);
            let tol = match self.field {
                FieldSpec::Real { tol } => tol,
                _ => unreachable!(),
            };
            v = v
                .iter()
                .map(|x| Scalar::Real {
                    value: x.to_f64() / max,
                    tol,
                })
                .collect();
        }
        Ok(self.echelon.reduce(&v).iter().all(Scalar::is_zero))
    }

    pub fn contains_subspace(&self, other: &Subspace) -> Result<bool, GeomError> {
        for p in other.basis_points() {
            if !self.contains(&p)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

pub fn span(a: &Subspace, b: &Subspace) -> Result<Subspace, GeomError> {
    a.span(b)
}

pub fn meet(a: &Subspace, b: &Subspace) -> Result<Subspace, GeomError> {
    a.meet(b)
}

pub fn incident(p: &ProjPoint, a: &Subspace) -> Result<bool, GeomError> {
    a.contains(p)
}

/// True iff every subset of size at most `ambient + 1` is linearly independent.
///
/// Up to `ambient + 1` points this is a single rank check; a larger set (such
/// as a frame of `ambient + 2` points) checks every maximal subset.
pub fn in_general_position(pts: &[ProjPoint]) -> Result<bool, GeomError> {
    let Some(first) = pts.first() else {
        return Ok(true);
    };
    let (field, ambient) = (first.field(), first.ambient());
    for p in pts {
        if p.ambient() != ambient {
            return Err(GeomError::AmbientMismatch(ambient, p.ambient()));
        }
        if p.field() != field {
            return Err(GeomError::FieldMismatch(field, p.field()));
        }
    }
    let rank_is_full = |idx: &[usize]| {
        let rows = idx.iter().map(|&i| pts[i].coords().to_vec()).collect();
        Matrix::from_rows(field, ambient + 1, rows).rank() == idx.len()
    };
    let k = pts.len().min(ambient + 1);
    let mut subset: Vec<usize> = (0..k).collect();
    loop {
        if !rank_is_full(&subset) {
            return Ok(false);
        }
        // next k-combination of 0..pts.len()
        let mut i = k;
        loop {
            if i == 0 {
                return Ok(true);
            }
            i -= 1;
            if subset[i] < pts.len() - k + i {
                break;
            }
        }
        subset[i] += 1;
        for j in i + 1..k {
            subset[j] = subset[j - 1] + 1;
        }
    }
}

/// Affine view of a line of `PG_n` that is not contained in the hyperplane at infinity.
///
/// The line is `anchor + λ·dir`, where `dir` has leading entry 1 at index
/// `pivot` and `anchor[pivot] = 0`. Both are canonical for the line, so two
/// `AffineLine`s of the same line agree exactly.
#[derive(Debug, Clone)]
pub struct AffineLine {
    anchor: Vec<Scalar>,
    dir: Vec<Scalar>,
    pivot: usize,
}

impl AffineLine {
    pub fn from_subspace(line: &Subspace) -> Result<Self, GeomError> {
        if line.projdim() != 1 {
            return Err(GeomError::NotALine(line.projdim()));
        }
        let n = line.ambient();
        let field = line.field();
        let at_inf = line.meet(&Subspace::hyperplane_at_infinity(field, n))?;
        let dir_point = at_inf.as_point().ok_or(GeomError::LineAtInfinity)?;
        let dir: Vec<Scalar> = dir_point.coords()[..n].to_vec();
        let affine_row = line
            .basis()
            .iter()
            .max_by(|a, b| a[n].magnitude().total_cmp(&b[n].magnitude()))
            .filter(|r| !r[n].is_zero())
            .ok_or(GeomError::LineAtInfinity)?;
        let q = ProjPoint::new(affine_row.clone())?
            .affine()
            .ok_or(GeomError::LineAtInfinity)?;
        AffineLine::from_point_direction(&q, &dir)
    }

    pub fn from_point_direction(point: &[Scalar], dir: &[Scalar]) -> Result<Self, GeomError> {
        if point.len() != dir.len() {
            return Err(GeomError::AmbientMismatch(point.len(), dir.len()));
        }
        let dir = normalize(dir).ok_or(GeomError::ZeroVector)?;
        let pivot = dir.iter().position(|c| !c.is_zero()).expect("normalized");
        let t = point[pivot].clone();
        let field = t.field();
        let anchor = point
            .iter()
            .zip(&dir)
            .enumerate()
            .map(|(i, (p, d))| {
                if i == pivot {
                    field.zero()
                } else {
                    p - &(&t * d)
                }
            })
            .collect();
        Ok(AffineLine { anchor, dir, pivot })
    }

    pub fn anchor(&self) -> &[Scalar] {
        &self.anchor
    }

    /// Direction vector with leading entry 1.
    pub fn direction(&self) -> &[Scalar] {
        &self.dir
    }

    pub fn point_at(&self, lambda: &Scalar) -> Vec<Scalar> {
        self.anchor
            .iter()
            .zip(&self.dir)
            .map(|(a, d)| a + &(lambda * d))
            .collect()
    }

    /// Exact membership, or componentwise within tolerance for reals.
    pub fn contains(&self, p: &[Scalar]) -> bool {
        if p.len() != self.anchor.len() {
            return false;
        }
        let lambda = &p[self.pivot];
        p.iter()
            .zip(self.anchor.iter().zip(&self.dir))
            .all(|(x, (a, d))| *x == a + &(lambda * d))
    }

    /// Homogeneous two-point basis of the line.
    pub fn to_subspace(&self) -> Subspace {
        let field = self.dir[0].field();
        let mut a = self.anchor.clone();
        a.push(field.one());
        let mut d = self.dir.clone();
        d.push(field.zero());
        Subspace::from_rows(field, self.anchor.len(), vec![a, d]).expect("consistent rows")
    }
}

/// Deduplicating index of coordinate vectors: hashed for exact fields,
/// tolerance scan for reals.
#[derive(Debug, Clone, Default)]
pub struct PointIndex {
    exact: HashMap<Vec<ExactKey>, usize>,
    approx: Vec<(Vec<Scalar>, usize)>,
}

impl PointIndex {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn find(&self, coords: &[Scalar]) -> Option<usize> {
        match coords
            .iter()
            .map(Scalar::exact_key)
            .collect::<Option<Vec<_>>>()
        {
            Some(key) => self.exact.get(&key).copied(),
            None => self
                .approx
                .iter()
                .find(|(c, _)| c.len() == coords.len() && c.iter().zip(coords).all(|(a, b)| a == b))
                .map(|(_, i)| *i),
        }
    }

    /// Inserts under `id` unless an equal vector exists; returns the existing id if so.
    pub fn insert(&mut self, coords: &[Scalar], id: usize) -> Option<usize> {
        if let Some(existing) = self.find(coords) {
            return Some(existing);
        }
        match coords
            .iter()
            .map(Scalar::exact_key)
            .collect::<Option<Vec<_>>>()
        {
            Some(key) => {
                self.exact.insert(key, id);
            }
            None => self.approx.push((coords.to_vec(), id)),
        }
        None
    }

    pub fn len(&self) -> usize {
        self.exact.len() + self.approx.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f7() -> FieldSpec {
        FieldSpec::prime(7).unwrap()
    }

    fn pt(field: FieldSpec, c: &[i64]) -> ProjPoint {
        ProjPoint::from_i64(field, c).unwrap()
    }

    #[test]
    fn point_normalize_examples() {
        let p = pt(f7(), &[2, 4, 6]);
        assert_eq!(p, pt(f7(), &[1, 2, 3]));
        let q = ProjPoint::new(vec![
            Scalar::rational(0, 1),
            Scalar::rational(5, 1),
            Scalar::rational(0, 1),
        ])
        .unwrap();
        assert_eq!(q.coords()[1], Scalar::rational(1, 1));
        assert_eq!(
            ProjPoint::from_i64(FieldSpec::Rational, &[0, 0, 0]),
            Err(GeomError::ZeroVector)
        );
        // scalar multiples coincide
        assert_eq!(pt(f7(), &[3, 1, 5]), pt(f7(), &[6, 2, 10]));
    }

    #[test]
    fn span_of_coordinate_points() {
        let f = FieldSpec::Rational;
        let e1 = Subspace::point(&pt(f, &[1, 0, 0]));
        let e2 = Subspace::point(&pt(f, &[0, 1, 0]));
        let line = e1.span(&e2).unwrap();
        assert_eq!(line, Subspace::hyperplane_at_infinity(f, 2));
        assert_eq!(line.span(&line).unwrap(), line);
        assert_eq!(e1.span(&e2).unwrap(), e2.span(&e1).unwrap());
    }

    #[test]
    fn meet_examples() {
        let f = f7();
        // X_4 = 0 and X_3 = 0 in PG_3
        let a = Subspace::from_points(&[
            &pt(f, &[1, 0, 0, 0]),
            &pt(f, &[0, 1, 0, 0]),
            &pt(f, &[0, 0, 1, 0]),
        ])
        .unwrap();
        let b = Subspace::from_points(&[
            &pt(f, &[1, 0, 0, 0]),
            &pt(f, &[0, 1, 0, 0]),
            &pt(f, &[0, 0, 0, 1]),
        ])
        .unwrap();
        let l = a.meet(&b).unwrap();
        assert_eq!(l.projdim(), 1);
        assert_eq!(
            l,
            Subspace::from_points(&[&pt(f, &[1, 0, 0, 0]), &pt(f, &[0, 1, 0, 0])]).unwrap()
        );
        // two distinct generic planes of PG_3 meet in a line
        let c = Subspace::from_points(&[
            &pt(f, &[1, 1, 1, 1]),
            &pt(f, &[0, 1, 2, 3]),
            &pt(f, &[5, 0, 0, 1]),
        ])
        .unwrap();
        assert_eq!(a.meet(&c).unwrap().projdim(), 1);
        let p = Subspace::point(&pt(f, &[1, 0, 0, 0]));
        let q = Subspace::point(&pt(f, &[0, 1, 0, 0]));
        assert!(p.meet(&q).unwrap().is_empty());
        assert_eq!(p.meet(&q).unwrap().projdim(), -1);
    }

    #[test]
    fn incidence_examples() {
        let f = FieldSpec::Rational;
        let inf = Subspace::hyperplane_at_infinity(f, 2);
        assert!(incident(&pt(f, &[1, 0, 0]), &inf).unwrap());
        assert!(!incident(&pt(f, &[1, 1, 1]), &inf).unwrap());
        assert!(matches!(
            incident(&pt(f, &[1, 0, 0, 0]), &inf),
            Err(GeomError::AmbientMismatch(..))
        ));
    }

    #[test]
    fn general_position_examples() {
        let f = f7();
        let mut frame: Vec<ProjPoint> = (0..4)
            .map(|i| {
                pt(
                    f,
                    &[
                        (i == 0) as i64,
                        (i == 1) as i64,
                        (i == 2) as i64,
                        (i == 3) as i64,
                    ],
                )
            })
            .collect();
        assert!(in_general_position(&frame).unwrap());
        frame.push(pt(f, &[1, 1, 1, 1]));
        assert!(in_general_position(&frame).unwrap());
        frame.push(pt(f, &[1, 1, 0, 0]));
        assert!(!in_general_position(&frame).unwrap());
        let collinear = [pt(f, &[1, 0, 0]), pt(f, &[0, 1, 0]), pt(f, &[1, 1, 0])];
        assert!(!in_general_position(&collinear).unwrap());
    }

    #[test]
    fn affine_line_round_trip() {
        let f = f7();
        let p: Vec<Scalar> = [2, 3, 4].iter().map(|&v| f.from_i64(v)).collect();
        let d: Vec<Scalar> = [3, 1, 5].iter().map(|&v| f.from_i64(v)).collect();
        let line = AffineLine::from_point_direction(&p, &d).unwrap();
        let sub = line.to_subspace();
        let again = AffineLine::from_subspace(&sub).unwrap();
        assert_eq!(again.anchor(), line.anchor());
        assert_eq!(again.direction(), line.direction());
        for k in 0..7 {
            let q = line.point_at(&f.from_i64(k));
            assert!(line.contains(&q));
            assert!(sub.contains(&ProjPoint::from_affine(&q).unwrap()).unwrap());
        }
        assert!(!line.contains(&[f.zero(), f.zero(), f.one()]));
        let inf = Subspace::hyperplane_at_infinity(f, 3);
        let at_inf = inf
            .meet(
                &Subspace::point(&pt(f, &[1, 2, 3, 0]))
                    .span_point(&pt(f, &[0, 1, 0, 0]))
                    .unwrap(),
            )
            .unwrap();
        assert_eq!(
            AffineLine::from_subspace(&at_inf).unwrap_err(),
            GeomError::LineAtInfinity
        );
    }

    #[test]
    fn point_index_dedupes() {
        let f = f7();
        let mut idx = PointIndex::new();
        assert_eq!(idx.insert(&[f.one(), f.zero()], 0), None);
        assert_eq!(idx.insert(&[f.from_i64(8), f.zero()], 1), Some(0));
        let r = FieldSpec::real(1e-9).unwrap();
        assert_eq!(idx.insert(&[r.from_f64(0.5).unwrap()], 2), None);
        assert_eq!(idx.find(&[r.from_f64(0.5 + 1e-12).unwrap()]), Some(2));
        assert_eq!(idx.len(), 2);
    }
}
