use super::ConstructionError;
use crate::projgeom::{ProjPoint, Subspace};
use crate::scalar::FieldSpec;

/// Fixed points of `PG_n` driving the lift.
///
/// Coordinates are `(X_1, …, X_n, X_{n+1})` with `X_{n+1}` homogenizing;
/// `x_i = e_i` for `1 ≤ i ≤ n`, `x_0 = e_{n+1}` is the affine origin and
/// `y_i = e_{i−1} + e_i` for `3 ≤ i ≤ n`. The seed plane is `Σ_2` with
/// `(X, Y, Z) ↦ (X, Y, 0, …, 0, Z)`.
#[derive(Debug, Clone)]
pub struct ConstructionFrame {
    pub field: FieldSpec,
    pub n: usize,
    /// `x_0, x_1, …, x_n`.
    pub x: Vec<ProjPoint>,
    /// `y_i` at index `i`; entries 0..3 are unused and `None`.
    pub y: Vec<Option<ProjPoint>>,
}

pub fn build_frame(n: usize, field: FieldSpec) -> Result<ConstructionFrame, ConstructionError> {
    if n < 2 {
        return Err(ConstructionError::UnsupportedDimension(n));
    }
    let unit = |i: usize| {
        let mut c = vec![field.zero(); n + 1];
        c[i] = field.one();
        c
    };
    let mut x = vec![ProjPoint::new(unit(n))?];
    for i in 1..=n {
        x.push(ProjPoint::new(unit(i - 1))?);
    }
    let mut y = vec![None; n + 1];
    for (i, slot) in y.iter_mut().enumerate().skip(3) {
        let mut c = unit(i - 1);
        c[i - 2] = field.one();
        *slot = Some(ProjPoint::new(c)?);
    }
    Ok(ConstructionFrame { field, n, x, y })
}

impl ConstructionFrame {
    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn x(&self, i: usize) -> &ProjPoint {
        &self.x[i]
    }

    /// `y_i`, defined for `3 ≤ i ≤ n`.
    pub fn y(&self, i: usize) -> &ProjPoint {
        self.y[i].as_ref().expect("y_i is defined for 3 <= i <= n")
    }

    /// `Σ_i = ⟨x_0, …, x_i⟩`.
    pub fn sigma(&self, i: usize) -> Subspace {
        let pts: Vec<&ProjPoint> = self.x[..=i].iter().collect();
        Subspace::from_points(&pts).expect("frame points are nonzero")
    }

    /// `π_i = ⟨x_1, …, x_i⟩`.
    pub fn pi(&self, i: usize) -> Subspace {
        let pts: Vec<&ProjPoint> = self.x[1..=i].iter().collect();
        Subspace::from_points(&pts).expect("frame points are nonzero")
    }

    /// Embeds a point of the seed plane `PG_2`.
    pub fn embed_point(&self, p: &ProjPoint) -> ProjPoint {
        ProjPoint::new(self.embed_coords(p.coords())).expect("embedding keeps nonzero vectors")
    }

    /// Embeds a flat of the seed plane.
    pub fn embed(&self, s: &Subspace) -> Subspace {
        let rows = s.basis().iter().map(|r| self.embed_coords(r)).collect();
        Subspace::from_rows(self.field, self.n, rows).expect("embedded rows have the right length")
    }

    fn embed_coords(&self, c: &[crate::scalar::Scalar]) -> Vec<crate::scalar::Scalar> {
        let mut v = vec![self.field.zero(); self.n + 1];
        v[0] = c[0].clone();
        v[1] = c[1].clone();
        v[self.n] = c[2].clone();
        v
    }
}
