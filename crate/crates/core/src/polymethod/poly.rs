use std::collections::BTreeMap;
use std::fmt;

use super::PolyError;
use crate::scalar::{binomial, FieldSpec, Scalar};

/// Exponent vector `j ∈ Z_{≥0}^n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(exponents: Vec<u32>) -> Self {
        MultiIndex(exponents)
    }

    pub fn zero(n: usize) -> Self {
        MultiIndex(vec![0; n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        MultiIndex(v)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    /// `wt(j) = Σ j_i`.
    pub fn wt(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    /// Componentwise `self ≤ other`.
    pub fn le(&self, other: &MultiIndex) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn add(&self, other: &MultiIndex) -> MultiIndex {
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self − other` when `other ≤ self`.
    pub fn checked_sub(&self, other: &MultiIndex) -> Option<MultiIndex> {
        if !other.le(self) {
            return None;
        }
        Some(MultiIndex(
            self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect(),
        ))
    }

    /// All indices of weight exactly `w`, lexicographically descending.
    pub fn of_weight(n: usize, w: u32) -> Vec<MultiIndex> {
        fn rec(n: usize, w: u32, cur: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
            if cur.len() + 1 == n {
                cur.push(w);
                out.push(MultiIndex(cur.clone()));
                cur.pop();
                return;
            }
            for e in (0..=w).rev() {
                cur.push(e);
                rec(n, w - e, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if n == 0 {
            if w == 0 {
                out.push(MultiIndex(Vec::new()));
            }
        } else {
            rec(n, w, &mut Vec::with_capacity(n), &mut out);
        }
        out
    }

    /// All indices of weight `≤ w` in graded-lex order.
    pub fn up_to_weight(n: usize, w: u32) -> Vec<MultiIndex> {
        (0..=w).flat_map(|k| Self::of_weight(n, k)).collect()
    }

    /// `Π_i binom(self_i, j_i)` reduced into `field`.
    pub fn binomial_in(&self, j: &MultiIndex, field: FieldSpec) -> Scalar {
        let mut acc = field.one();
        for (&c, &k) in self.0.iter().zip(&j.0) {
            acc = &acc * &field.from_biguint(&binomial(c as u64, k as u64));
        }
        acc
    }
}

/// Sparse polynomial in `n` variables; zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq)]
pub struct Poly {
    field: FieldSpec,
    n: usize,
    terms: BTreeMap<MultiIndex, Scalar>,
}

impl Poly {
    pub fn zero(field: FieldSpec, n: usize) -> Self {
        Poly {
            field,
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: FieldSpec, n: usize, c: Scalar) -> Self {
        Self::monomial(field, MultiIndex::zero(n), c)
    }

    pub fn monomial(field: FieldSpec, j: MultiIndex, c: Scalar) -> Self {
        let mut p = Poly::zero(field, j.n());
        p.add_term(j, c);
        p
    }

    /// The variable `X_{i+1}`.
    pub fn var(field: FieldSpec, n: usize, i: usize) -> Self {
        Self::monomial(field, MultiIndex::unit(n, i), field.one())
    }

    /// Linear form `Σ c_i X_i`.
    pub fn linear(field: FieldSpec, coeffs: &[Scalar]) -> Self {
        let n = coeffs.len();
        let mut p = Poly::zero(field, n);
        for (i, c) in coeffs.iter().enumerate() {
            p.add_term(MultiIndex::unit(n, i), c.clone());
        }
        p
    }

    pub fn from_terms(
        field: FieldSpec,
        n: usize,
        terms: impl IntoIterator<Item = (MultiIndex, Scalar)>,
    ) -> Result<Self, PolyError> {
        let mut p = Poly::zero(field, n);
        for (j, c) in terms {
            if j.n() != n {
                return Err(PolyError::DimensionMismatch {
                    expected: n,
                    got: j.n(),
                });
            }
            if c.field() != field {
                return Err(PolyError::FieldMismatch);
            }
            p.add_term(j, c);
        }
        Ok(p)
    }

    fn add_term(&mut self, j: MultiIndex, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let sum = match self.terms.remove(&j) {
            Some(old) => &old + &c,
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(j, sum);
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Scalar)> {
        self.terms.iter()
    }

    pub fn n_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, j: &MultiIndex) -> Scalar {
        self.terms
            .get(j)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `None` stands for the degree `−∞` of the zero polynomial.
    pub fn degree(&self) -> Option<u64> {
        self.terms.keys().map(MultiIndex::wt).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut w = self.terms.keys().map(MultiIndex::wt);
        match w.next() {
            Some(first) => w.all(|x| x == first),
            None => true,
        }
    }

    fn compatible(&self, other: &Poly) -> Result<(), PolyError> {
        if self.n != other.n {
            return Err(PolyError::DimensionMismatch {
                expected: self.n,
                got: other.n,
            });
        }
        if self.field != other.field {
            return Err(PolyError::FieldMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.compatible(other)?;
        let mut out = self.clone();
        for (j, c) in &other.terms {
            out.add_term(j.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Poly {
        self.scale(&-&self.field.one())
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        let mut out = Poly::zero(self.field, self.n);
        for (j, a) in &self.terms {
            out.add_term(j.clone(), a * c);
        }
        out
    }

    pub fn mul(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.compatible(other)?;
        let mut out = Poly::zero(self.field, self.n);
        for (i, a) in &self.terms {
            for (j, b) in &other.terms {
                out.add_term(i.add(j), a * b);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut out = Poly::constant(self.field, self.n, self.field.one());
        for _ in 0..k {
            out = out.mul(self).expect("same ring");
        }
        out
    }

    fn check_point(&self, u: &[Scalar]) -> Result<(), PolyError> {
        if u.len() != self.n {
            return Err(PolyError::DimensionMismatch {
                expected: self.n,
                got: u.len(),
            });
        }
        if u.iter().any(|x| x.field() != self.field) {
            return Err(PolyError::FieldMismatch);
        }
        Ok(())
    }

    pub fn eval(&self, u: &[Scalar]) -> Result<Scalar, PolyError> {
        self.check_point(u)?;
        let mut acc = self.field.zero();
        for (j, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in u.iter().zip(j.exponents()) {
                t = &t * &x.pow(e);
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    /// `∂^j f`, from `∂^j(X^c) = Π_i binom(c_i, j_i) X^{c−j}`.
    pub fn hasse_derivative(&self, j: &MultiIndex) -> Result<Poly, PolyError> {
        if j.n() != self.n {
            return Err(PolyError::DimensionMismatch {
                expected: self.n,
                got: j.n(),
            });
        }
        let mut out = Poly::zero(self.field, self.n);
        for (c, a) in &self.terms {
            if let Some(rest) = c.checked_sub(j) {
                out.add_term(rest, a * &c.binomial_in(j, self.field));
            }
        }
        Ok(out)
    }

    /// `f(X + u)`; its coefficient at `X^j` is `(∂^j f)(u)`.
    pub fn taylor_shift(&self, u: &[Scalar]) -> Result<Poly, PolyError> {
        self.check_point(u)?;
        let mut cur = self.clone();
        for (i, ui) in u.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            let mut next = Poly::zero(self.field, self.n);
            for (c, a) in &cur.terms {
                let e = c.exponents()[i];
                for k in 0..=e {
                    let mut idx = c.exponents().to_vec();
                    idx[i] = k;
                    let coef = a * &(&self.field.from_biguint(&binomial(e as u64, k as u64))
                        * &ui.pow(e - k));
                    next.add_term(MultiIndex(idx), coef);
                }
            }
            cur = next;
        }
        Ok(cur)
    }

    /// Largest `m` with `(∂^j f)(u) = 0` for every `wt(j) ≤ m − 1`.
    ///
    /// Read off as the lowest weight present in `f(X + u)`, which never
    /// exceeds `deg f`.
    pub fn multiplicity_at(&self, u: &[Scalar]) -> Result<u64, PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        let shifted = self.taylor_shift(u)?;
        Ok(shifted
            .terms
            .keys()
            .map(MultiIndex::wt)
            .min()
            .expect("a shift of a nonzero polynomial is nonzero"))
    }

    /// `f*`: the terms of highest degree.
    pub fn top_part(&self) -> Result<Poly, PolyError> {
        let d = self.degree().ok_or(PolyError::ZeroPolynomial)?;
        Ok(Poly {
            field: self.field,
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|(j, _)| j.wt() == d)
                .map(|(j, c)| (j.clone(), c.clone()))
                .collect(),
        })
    }

    /// Coefficients (ascending powers of `λ`) of `f(u + λv)`.
    pub fn restrict_to_line(&self, u: &[Scalar], v: &[Scalar]) -> Result<Vec<Scalar>, PolyError> {
        self.check_point(u)?;
        self.check_point(v)?;
        let f = self.field;
        let mut total = vec![f.zero()];
        for (j, c) in &self.terms {
            let mut acc = vec![c.clone()];
            for (i, &e) in j.exponents().iter().enumerate() {
                for _ in 0..e {
                    acc = univariate_mul(&acc, &[u[i].clone(), v[i].clone()], f);
                }
            }
            if acc.len() > total.len() {
                total.resize(acc.len(), f.zero());
            }
            for (t, a) in total.iter_mut().zip(&acc) {
                *t = &*t + a;
            }
        }
        while total.len() > 1 && total.last().is_some_and(Scalar::is_zero) {
            total.pop();
        }
        Ok(total)
    }
}

fn univariate_mul(a: &[Scalar], b: &[Scalar], f: FieldSpec) -> Vec<Scalar> {
    let mut out = vec![f.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    out
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (j, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}")?;
            for (i, &e) in j.exponents().iter().enumerate() {
                match e {
                    0 => {}
                    1 => write!(f, "*X{}", i + 1)?,
                    _ => write!(f, "*X{}^{e}", i + 1)?,
                }
            }
        }
        Ok(())
    }
}
