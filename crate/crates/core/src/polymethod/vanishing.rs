use super::{MultiIndex, Poly, PolyError};
use crate::linalg::Matrix;
use crate::projgeom::ProjPoint;
use crate::scalar::{FieldSpec, Scalar};

/// The Hasse-constraint system and its solution space.
#[derive(Debug, Clone)]
pub struct VanishingSystem {
    /// Monomials of degree `≤ deg_bound`, graded-lex; one per column.
    pub monomials: Vec<MultiIndex>,
    pub equations: usize,
    pub rank: usize,
    pub basis: Vec<Poly>,
}

/// Rows are `(u, j)` with `u ∈ S`, `wt(j) ≤ mult − 1`; the entry at column
/// `X^e` is `(∂^j X^e)(u) = binom(e, j) u^{e−j}`.
pub fn vanishing_system(
    points: &[Vec<Scalar>],
    deg_bound: u32,
    mult: u32,
    n: usize,
    field: FieldSpec,
) -> Result<VanishingSystem, PolyError> {
    if mult == 0 {
        return Err(PolyError::InvalidParameter(
            "multiplicity must be >= 1".into(),
        ));
    }
    let monomials = MultiIndex::up_to_weight(n, deg_bound);
    let derivs = MultiIndex::up_to_weight(n, mult - 1);
    let mut m = Matrix::new(field, monomials.len());
    for u in points {
        if u.len() != n {
            return Err(PolyError::DimensionMismatch {
                expected: n,
                got: u.len(),
            });
        }
        if u.iter().any(|x| x.field() != field) {
            return Err(PolyError::FieldMismatch);
        }
        // powers[i][k] = u_i^k
        let powers: Vec<Vec<Scalar>> = u
            .iter()
            .map(|x| {
                let mut v = vec![field.one()];
                for k in 1..=deg_bound as usize {
                    let next = &v[k - 1] * x;
                    v.push(next);
                }
                v
            })
            .collect();
        for j in &derivs {
            let row = monomials
                .iter()
                .map(|e| match e.checked_sub(j) {
                    Some(rest) => {
                        let mut acc = e.binomial_in(j, field);
                        for (i, &k) in rest.exponents().iter().enumerate() {
                            acc = &acc * &powers[i][k as usize];
                        }
                        acc
                    }
                    None => field.zero(),
                })
                .collect();
            m.push_row(row);
        }
    }
    let rref = m.rref();
    let basis = rref
        .nullspace(field)
        .into_iter()
        .map(|v| {
            Poly::from_terms(field, n, monomials.iter().cloned().zip(v))
                .expect("consistent dimensions")
        })
        .collect();
    Ok(VanishingSystem {
        equations: m.nrows(),
        rank: rref.rank(),
        monomials,
        basis,
    })
}

/// Basis of the polynomials of degree `≤ deg_bound` with multiplicity
/// `≥ mult` at every point of `points`.
pub fn vanishing_space(
    points: &[Vec<Scalar>],
    deg_bound: u32,
    mult: u32,
    n: usize,
    field: FieldSpec,
) -> Result<Vec<Poly>, PolyError> {
    Ok(vanishing_system(points, deg_bound, mult, n, field)?.basis)
}

/// Multiplicity of a homogeneous `f` at each direction's normalized representative.
pub fn direction_multiplicities(f_hom: &Poly, dirs: &[ProjPoint]) -> Result<Vec<u64>, PolyError> {
    if f_hom.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    if !f_hom.is_homogeneous() {
        return Err(PolyError::NotHomogeneous);
    }
    dirs.iter()
        .map(|d| f_hom.multiplicity_at(d.coords()))
        .collect()
}

/// `min_{v ∈ D}` multiplicity of `f_hom` at `v`; `f_hom ∈ I_r(D)` iff this is `≥ r`.
pub fn direction_multiplicity(f_hom: &Poly, dirs: &[ProjPoint]) -> Result<u64, PolyError> {
    direction_multiplicities(f_hom, dirs)?
        .into_iter()
        .min()
        .ok_or(PolyError::EmptyDirections)
}
