//! Row reduction over a [`FieldSpec`].
//!
//! Exact kinds pivot on the first nonzero entry. The real kind scales every
//! row to unit max-norm, then uses partial pivoting with `tol` as the
//! threshold below which a pivot counts as zero.

use crate::scalar::{FieldSpec, Scalar};

#[derive(Debug, Clone)]
pub struct Matrix {
    field: FieldSpec,
    cols: usize,
    rows: Vec<Vec<Scalar>>,
}

/// Reduced row echelon form: nonzero rows only, plus their pivot columns.
#[derive(Debug, Clone)]
pub struct Rref {
    pub rows: Vec<Vec<Scalar>>,
    pub pivots: Vec<usize>,
    pub cols: usize,
}

impl Matrix {
    pub fn new(field: FieldSpec, cols: usize) -> Self {
        Matrix {
            field,
            cols,
            rows: Vec::new(),
        }
    }

    pub fn from_rows(field: FieldSpec, cols: usize, rows: Vec<Vec<Scalar>>) -> Self {
        debug_assert!(rows.iter().all(|r| r.len() == cols));
        Matrix { field, cols, rows }
    }

    pub fn push_row(&mut self, row: Vec<Scalar>) {
        assert_eq!(row.len(), self.cols, "row length");
        self.rows.push(row);
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn rref(&self) -> Rref {
        rref_rows(self.field, self.cols, self.rows.clone())
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Basis of `{x : M x = 0}`, one vector per free column in increasing order.
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        self.rref().nullspace(self.field)
    }
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn nullspace(&self, field: FieldSpec) -> Vec<Vec<Scalar>> {
        let mut is_pivot = vec![false; self.cols];
        for &c in &self.pivots {
            is_pivot[c] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![field.zero(); self.cols];
                v[free] = field.one();
                for (row, &pc) in self.rows.iter().zip(&self.pivots) {
                    v[pc] = -&row[free];
                }
                v
            })
            .collect()
    }

    /// Reduces `v` against the rows; the remainder is zero iff `v` is in the row space.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut out = v.to_vec();
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            if out[pc].is_zero() {
                continue;
            }
            let factor = out[pc].clone();
            for (o, r) in out.iter_mut().zip(row) {
                *o = &*o - &(&factor * r);
            }
        }
        out
    }
}

fn scale_to_unit(row: &mut [Scalar]) {
    let max = row.iter().map(Scalar::magnitude).fold(0.0, f64::max);
    if max > 0.0 {
        if let Some(Scalar::Real { tol, .. }) = row.first() {
            let tol = *tol;
            for x in row.iter_mut() {
                *x = Scalar::Real {
                    value: x.to_f64() / max,
                    tol,
                };
            }
        }
    }
}

pub fn rref_rows(field: FieldSpec, cols: usize, mut rows: Vec<Vec<Scalar>>) -> Rref {
    let exact = field.is_exact();
    if !exact {
        rows.iter_mut().for_each(|r| scale_to_unit(r));
    }
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows.len() {
            break;
        }
        let pivot = if exact {
            (rank..rows.len()).find(|&r| !rows[r][col].is_zero())
        } else {
            (rank..rows.len())
                .filter(|&r| !rows[r][col].is_zero())
                .max_by(|&a, &b| {
                    rows[a][col]
                        .magnitude()
                        .total_cmp(&rows[b][col].magnitude())
                })
        };
        let Some(pr) = pivot else { continue };
        rows.swap(rank, pr);
        let inv = rows[rank][col].inv().expect("pivot is nonzero");
        for x in rows[rank].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == rank || row[col].is_zero() {
                if !exact && r != rank {
                    row[col] = field.zero();
                }
                continue;
            }
            let factor = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                *x = &*x - &(&factor * p);
            }
            row[col] = field.zero();
        }
        pivots.push(col);
        rank += 1;
    }
    rows.truncate(rank);
    if !exact {
        for row in rows.iter_mut() {
            for x in row.iter_mut() {
                if x.is_zero() {
                    *x = field.zero();
                }
            }
        }
    }
    Rref { rows, pivots, cols }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(field: FieldSpec, rows: &[&[i64]]) -> Matrix {
        let cols = rows[0].len();
        Matrix::from_rows(
            field,
            cols,
            rows.iter()
                .map(|r| r.iter().map(|&v| field.from_i64(v)).collect())
                .collect(),
        )
    }

    #[test]
    fn rank_over_different_fields() {
        // det = 6: singular mod 2 and mod 3, regular over Q
        let rows: &[&[i64]] = &[&[2, 0], &[0, 3]];
        assert_eq!(m(FieldSpec::Rational, rows).rank(), 2);
        assert_eq!(m(FieldSpec::prime(2).unwrap(), rows).rank(), 1);
        assert_eq!(m(FieldSpec::prime(3).unwrap(), rows).rank(), 1);
        assert_eq!(m(FieldSpec::prime(5).unwrap(), rows).rank(), 2);
    }

    #[test]
    fn nullspace_vectors_are_annihilated() {
        let f = FieldSpec::prime(7).unwrap();
        let a = m(f, &[&[1, 2, 3, 4], &[2, 4, 6, 1], &[3, 6, 9, 5]]);
        let ns = a.nullspace();
        assert_eq!(ns.len(), 4 - a.rank());
        for v in &ns {
            for row in &a.rows {
                let dot = row.iter().zip(v).fold(f.zero(), |acc, (x, y)| acc + x * y);
                assert!(dot.is_zero());
            }
        }
    }

    #[test]
    fn real_rank_uses_tolerance() {
        let f = FieldSpec::real(1e-9).unwrap();
        let rows = vec![
            vec![f.from_f64(1.0).unwrap(), f.from_f64(2.0).unwrap()],
            vec![f.from_f64(2.0).unwrap(), f.from_f64(4.0 + 1e-13).unwrap()],
        ];
        assert_eq!(Matrix::from_rows(f, 2, rows).rank(), 1);
    }
}
