//! Field elements: prime fields, exact rationals and tolerance-compared reals.
//!
//! Every [`Scalar`] knows which field it belongs to. Arithmetic between
//! scalars of different fields is a programming error: the operator impls
//! panic, the `try_*` methods return [`ScalarError::FieldMismatch`].

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Absolute tolerance used by the real kind unless overridden.
pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(FieldSpec, FieldSpec),
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("invalid tolerance {0}")]
    InvalidTolerance(f64),
    #[error("non-finite real value")]
    NonFinite,
    #[error("cannot parse {text:?} as an element of {field}")]
    Parse { text: String, field: FieldSpec },
}

/// The field a scalar lives in.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", try_from = "RawFieldSpec")]
pub enum FieldSpec {
    Prime { p: u64 },
    Rational,
    Real { tol: f64 },
}

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum RawFieldSpec {
    Prime { p: u64 },
    Rational,
    Real { tol: f64 },
}

impl TryFrom<RawFieldSpec> for FieldSpec {
    type Error = ScalarError;

    fn try_from(raw: RawFieldSpec) -> Result<Self, Self::Error> {
        match raw {
            RawFieldSpec::Prime { p } => FieldSpec::prime(p),
            RawFieldSpec::Rational => Ok(FieldSpec::Rational),
            RawFieldSpec::Real { tol } => FieldSpec::real(tol),
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Prime { p } => write!(f, "F_{p}"),
            FieldSpec::Rational => write!(f, "Q"),
            FieldSpec::Real { tol } => write!(f, "R(tol={tol})"),
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self, ScalarError> {
        if !is_prime(p) {
            return Err(ScalarError::NotPrime(p));
        }
        Ok(FieldSpec::Prime { p })
    }

    pub fn real(tol: f64) -> Result<Self, ScalarError> {
        if !tol.is_finite() || tol < 0.0 {
            return Err(ScalarError::InvalidTolerance(tol));
        }
        Ok(FieldSpec::Real { tol })
    }

    pub fn is_exact(&self) -> bool {
        !matches!(self, FieldSpec::Real { .. })
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Prime { p } => *p,
            _ => 0,
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match *self {
            FieldSpec::Prime { p } => Scalar::Residue {
                value: (v as i128).rem_euclid(p as i128) as u64,
                p,
            },
            FieldSpec::Rational => Scalar::Rational(BigRational::from_integer(BigInt::from(v))),
            FieldSpec::Real { tol } => Scalar::Real {
                value: v as f64,
                tol,
            },
        }
    }

    pub fn from_bigint(&self, v: &BigInt) -> Scalar {
        match *self {
            FieldSpec::Prime { p } => {
                let r = v.mod_floor(&BigInt::from(p));
                Scalar::Residue {
                    value: r.to_u64().expect("residue fits"),
                    p,
                }
            }
            FieldSpec::Rational => Scalar::Rational(BigRational::from_integer(v.clone())),
            FieldSpec::Real { tol } => Scalar::Real {
                value: v.to_f64().unwrap_or(f64::NAN),
                tol,
            },
        }
    }

    pub fn from_biguint(&self, v: &BigUint) -> Scalar {
        self.from_bigint(&BigInt::from_biguint(Sign::Plus, v.clone()))
    }

    /// Maps an exact rational into the field; over F_p the denominator must be invertible.
    pub fn from_rational(&self, v: &BigRational) -> Result<Scalar, ScalarError> {
        match self {
            FieldSpec::Rational => Ok(Scalar::Rational(v.clone())),
            _ => {
                let num = self.from_bigint(v.numer());
                let den = self.from_bigint(v.denom());
                num.try_div(&den)
            }
        }
    }

    pub fn from_f64(&self, v: f64) -> Result<Scalar, ScalarError> {
        match *self {
            FieldSpec::Real { tol } => Scalar::real(v, tol),
            FieldSpec::Rational => BigRational::from_float(v)
                .map(Scalar::Rational)
                .ok_or(ScalarError::NonFinite),
            FieldSpec::Prime { .. } => {
                if v.fract() != 0.0 || !v.is_finite() {
                    return Err(ScalarError::Parse {
                        text: v.to_string(),
                        field: *self,
                    });
                }
                Ok(self.from_i64(v as i64))
            }
        }
    }

    /// Parses the serialized form produced by `Scalar`'s `Display`.
    pub fn parse(&self, text: &str) -> Result<Scalar, ScalarError> {
        let err = || ScalarError::Parse {
            text: text.to_string(),
            field: *self,
        };
        let t = text.trim();
        match *self {
            FieldSpec::Prime { .. } | FieldSpec::Rational => {
                let r = match t.split_once('/') {
                    Some((n, d)) => {
                        let n: BigInt = n.trim().parse().map_err(|_| err())?;
                        let d: BigInt = d.trim().parse().map_err(|_| err())?;
                        if d.is_zero() {
                            return Err(err());
                        }
                        BigRational::new(n, d)
                    }
                    None => BigRational::from_integer(t.parse().map_err(|_| err())?),
                };
                self.from_rational(&r).map_err(|_| err())
            }
            FieldSpec::Real { tol } => {
                let v: f64 = t.parse().map_err(|_| err())?;
                Scalar::real(v, tol).map_err(|_| err())
            }
        }
    }
}

/// An element of a [`FieldSpec`], always held in canonical form.
#[derive(Debug, Clone)]
pub enum Scalar {
    /// Residue in `[0, p)`.
    Residue {
        value: u64,
        p: u64,
    },
    /// Lowest terms, positive denominator (maintained by `BigRational`).
    Rational(BigRational),
    Real {
        value: f64,
        tol: f64,
    },
}

/// Hashable canonical key of an exact scalar.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExactKey {
    Residue(u64),
    Rational(BigRational),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Applies `op` with field checking.
pub fn field_op(a: &Scalar, b: &Scalar, op: FieldOp) -> Result<Scalar, ScalarError> {
    match op {
        FieldOp::Add => a.try_add(b),
        FieldOp::Sub => a.try_sub(b),
        FieldOp::Mul => a.try_mul(b),
        FieldOp::Div => a.try_div(b),
    }
}

/// Equality in the field: exact, or within `tol` for reals.
pub fn scalar_eq(a: &Scalar, b: &Scalar) -> Result<bool, ScalarError> {
    a.check_field(b)?;
    Ok(match (a, b) {
        (Scalar::Residue { value: x, .. }, Scalar::Residue { value: y, .. }) => x == y,
        (Scalar::Rational(x), Scalar::Rational(y)) => x == y,
        (Scalar::Real { value: x, tol }, Scalar::Real { value: y, .. }) => (x - y).abs() <= *tol,
        _ => unreachable!("fields checked"),
    })
}

fn mod_inverse(a: u64, p: u64) -> Option<u64> {
    let (mut old_r, mut r) = (a as i128, p as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(p as i128) as u64)
}

impl Scalar {
    pub fn residue(value: u64, p: u64) -> Scalar {
        Scalar::Residue {
            value: value % p,
            p,
        }
    }

    pub fn rational(num: i64, den: i64) -> Scalar {
        Scalar::Rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn real(value: f64, tol: f64) -> Result<Scalar, ScalarError> {
        if !value.is_finite() {
            return Err(ScalarError::NonFinite);
        }
        // -0.0 serializes as "-0"
        let value = if value == 0.0 { 0.0 } else { value };
        Ok(Scalar::Real { value, tol })
    }

    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Residue { p, .. } => FieldSpec::Prime { p: *p },
            Scalar::Rational(_) => FieldSpec::Rational,
            Scalar::Real { tol, .. } => FieldSpec::Real { tol: *tol },
        }
    }

    fn check_field(&self, other: &Scalar) -> Result<(), ScalarError> {
        let (a, b) = (self.field(), other.field());
        if a != b {
            return Err(ScalarError::FieldMismatch(a, b));
        }
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Residue { value, .. } => *value == 0,
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Real { value, tol } => value.abs() <= *tol,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Residue { value, .. } => *value == 1,
            Scalar::Rational(r) => r.is_one(),
            Scalar::Real { value, tol } => (value - 1.0).abs() <= *tol,
        }
    }

    /// Absolute value as a float; used for pivot selection.
    pub fn magnitude(&self) -> f64 {
        match self {
            Scalar::Residue { value, .. } => (*value != 0) as u8 as f64,
            Scalar::Rational(r) => r.abs().to_f64().unwrap_or(f64::INFINITY),
            Scalar::Real { value, .. } => value.abs(),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Residue { value, .. } => *value as f64,
            Scalar::Rational(r) => r.to_f64().unwrap_or(f64::NAN),
            Scalar::Real { value, .. } => *value,
        }
    }

    pub fn exact_key(&self) -> Option<ExactKey> {
        match self {
            Scalar::Residue { value, .. } => Some(ExactKey::Residue(*value)),
            Scalar::Rational(r) => Some(ExactKey::Rational(r.clone())),
            Scalar::Real { .. } => None,
        }
    }

    /// Idempotent: values are canonical at construction.
    pub fn canonical(&self) -> Scalar {
        match self {
            Scalar::Residue { value, p } => Scalar::Residue {
                value: value % p,
                p: *p,
            },
            Scalar::Rational(r) => Scalar::Rational(r.reduced()),
            Scalar::Real { value, tol } => Scalar::Real {
                value: if *value == 0.0 { 0.0 } else { *value },
                tol: *tol,
            },
        }
    }

    pub fn try_add(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.check_field(other)?;
        Ok(match (self, other) {
            (Scalar::Residue { value: a, p }, Scalar::Residue { value: b, .. }) => {
                Scalar::Residue {
                    value: ((*a as u128 + *b as u128) % *p as u128) as u64,
                    p: *p,
                }
            }
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Real { value: a, tol }, Scalar::Real { value: b, .. }) => {
                Scalar::real(a + b, *tol)?
            }
            _ => unreachable!(),
        })
    }

    pub fn try_sub(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.check_field(other)?;
        self.try_add(&other.neg_ref())
    }

    pub fn try_mul(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.check_field(other)?;
        Ok(match (self, other) {
            (Scalar::Residue { value: a, p }, Scalar::Residue { value: b, .. }) => {
                Scalar::Residue {
                    value: ((*a as u128 * *b as u128) % *p as u128) as u64,
                    p: *p,
                }
            }
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Real { value: a, tol }, Scalar::Real { value: b, .. }) => {
                Scalar::real(a * b, *tol)?
            }
            _ => unreachable!(),
        })
    }

    pub fn try_div(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.check_field(other)?;
        self.try_mul(&other.inv()?)
    }

    pub fn inv(&self) -> Result<Scalar, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(match self {
            Scalar::Residue { value, p } => Scalar::Residue {
                value: mod_inverse(*value, *p).ok_or(ScalarError::DivisionByZero)?,
                p: *p,
            },
            Scalar::Rational(r) => Scalar::Rational(r.recip()),
            Scalar::Real { value, tol } => Scalar::real(1.0 / value, *tol)?,
        })
    }

    fn neg_ref(&self) -> Scalar {
        match self {
            Scalar::Residue { value, p } => Scalar::Residue {
                value: (p - value) % p,
                p: *p,
            },
            Scalar::Rational(r) => Scalar::Rational(-r),
            Scalar::Real { value, tol } => Scalar::Real {
                value: if *value == 0.0 { 0.0 } else { -value },
                tol: *tol,
            },
        }
    }

    pub fn pow(&self, mut e: u32) -> Scalar {
        let mut base = self.clone();
        let mut acc = self.field().one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        scalar_eq(self, other).unwrap_or(false)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Residue { value, .. } => write!(f, "{value}"),
            Scalar::Rational(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            Scalar::Real { value, .. } => write!(f, "{value}"),
        }
    }
}

macro_rules! impl_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.$checked(rhs)
                    .unwrap_or_else(|e| panic!("{}: {e}", stringify!($method)))
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
    };
}

impl_binop!(Add, add, try_add);
impl_binop!(Sub, sub, try_sub);
impl_binop!(Mul, mul, try_mul);
impl_binop!(Div, div, try_div);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

/// Exact binomial coefficient; zero when `b > a`.
pub fn binomial(a: u64, b: u64) -> BigUint {
    if b > a {
        return BigUint::zero();
    }
    let b = b.min(a - b);
    let mut acc = BigUint::one();
    for i in 0..b {
        // acc * (a - i) is divisible by (i + 1) at every step
        acc = acc * BigUint::from(a - i) / BigUint::from(i + 1);
    }
    acc
}
