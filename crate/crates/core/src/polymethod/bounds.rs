use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde_json::json;

use super::PolyError;
use crate::scalar::binomial;

pub const DEFAULT_R_MAX: u64 = 64;

#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub big_n: u64,
    pub n: u64,
    /// The single `r` evaluated, or the swept range `1..=r_max`.
    pub r: u64,
    pub r_max: Option<u64>,
    pub bound: BigRational,
    pub best_r: u64,
    /// `(N/2)^n`.
    pub limit: BigRational,
}

fn ratio_string(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl BoundReport {
    pub fn to_json(&self) -> serde_json::Value {
        let mut v = json!({
            "N": self.big_n,
            "n": self.n,
            "bound": ratio_string(&self.bound),
            "bound_approx": self.bound.to_f64(),
            "best_r": self.best_r,
            "limit": ratio_string(&self.limit),
            "limit_approx": self.limit.to_f64(),
        });
        match self.r_max {
            Some(m) => v["r_range"] = json!([1, m]),
            None => v["r"] = json!(self.r),
        }
        v
    }
}

fn check(big_n: u64, n: u64, r: u64) -> Result<(), PolyError> {
    if big_n == 0 || n == 0 || r == 0 {
        return Err(PolyError::InvalidParameter(format!(
            "need N, n, r >= 1 (got N={big_n}, n={n}, r={r})"
        )));
    }
    Ok(())
}

/// `binom(rN + n − 1, n) / binom(2r + n − 2, n)`.
pub fn bound_value(big_n: u64, n: u64, r: u64) -> Result<BigRational, PolyError> {
    check(big_n, n, r)?;
    let num = binomial(r * big_n + n - 1, n);
    let den = binomial(2 * r + n - 2, n);
    if den.is_zero() {
        return Err(PolyError::InvalidParameter(format!(
            "binom({}, {n}) is zero",
            2 * r + n - 2
        )));
    }
    Ok(BigRational::new(BigInt::from(num), BigInt::from(den)))
}

fn limit(big_n: u64, n: u64) -> BigRational {
    let half = BigRational::new(BigInt::from(big_n), BigInt::from(2));
    num_traits::pow(half, n as usize)
}

pub fn bound_grid(big_n: u64, n: u64, r: u64) -> Result<BoundReport, PolyError> {
    Ok(BoundReport {
        big_n,
        n,
        r,
        r_max: None,
        bound: bound_value(big_n, n, r)?,
        best_r: r,
        limit: limit(big_n, n),
    })
}

/// Sweeps `r = 1..=r_max`; ties go to the smaller `r`.
pub fn bound_best(big_n: u64, n: u64, r_max: u64) -> Result<BoundReport, PolyError> {
    check(big_n, n, r_max)?;
    let mut best = (1, bound_value(big_n, n, 1)?);
    for r in 2..=r_max {
        let b = bound_value(big_n, n, r)?;
        if b > best.1 {
            best = (r, b);
        }
    }
    Ok(BoundReport {
        big_n,
        n,
        r: best.0,
        r_max: Some(r_max),
        bound: best.1,
        best_r: best.0,
        limit: limit(big_n, n),
    })
}
