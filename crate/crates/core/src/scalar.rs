//! Numeric backends: exact rationals and binary floating point.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational number.
pub type Rational = BigRational;

/// Absolute tolerance of the float backend, on normalized quantities.
pub const FLOAT_TOLERANCE: f64 = 1e-9;

/// Field arithmetic shared by the exact and float backends.
///
/// Comparisons go through [`Scalar::near`] and [`Scalar::le_tol`], which are
/// exact for [`Rational`] and use [`FLOAT_TOLERANCE`] for `f64`.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + PartialOrd
    + Send
    + Sync
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    const EXACT: bool;

    fn from_rational(q: &Rational) -> Self;

    fn to_f64(&self) -> f64;

    fn near(&self, other: &Self) -> bool;

    /// `self ≤ other`, up to the backend tolerance.
    fn le_tol(&self, other: &Self) -> bool;

    fn is_negligible(&self) -> bool {
        self.near(&Self::zero())
    }

    fn from_i64(v: i64) -> Self {
        Self::from_rational(&Rational::from_integer(BigInt::from(v)))
    }
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }

    fn to_f64(&self) -> f64 {
        rational_to_f64(self)
    }

    fn near(&self, other: &Self) -> bool {
        self == other
    }

    fn le_tol(&self, other: &Self) -> bool {
        self <= other
    }

    fn is_negligible(&self) -> bool {
        self.is_zero()
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_rational(q: &Rational) -> Self {
        rational_to_f64(q)
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn near(&self, other: &Self) -> bool {
        (self - other).abs() <= FLOAT_TOLERANCE
    }

    fn le_tol(&self, other: &Self) -> bool {
        *self <= *other + FLOAT_TOLERANCE
    }
}

pub fn rational_to_f64(q: &Rational) -> f64 {
    if let Some(v) = ToPrimitive::to_f64(q) {
        if v.is_finite() {
            return v;
        }
    }
    // numerator/denominator too large for a direct conversion
    let shift = q.numer().bits().max(q.denom().bits()).saturating_sub(1000);
    let n = (q.numer() >> shift).to_f64().unwrap_or(f64::NAN);
    let d = (q.denom() >> shift).to_f64().unwrap_or(f64::NAN);
    n / d
}

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p/q"` or an integer string into an exact rational.
///
/// The accepted grammar is `^-?[0-9]+/[1-9][0-9]*$` or `^-?[0-9]+$`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::InvalidFraction(s.to_string());
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let digits = num.strip_prefix('-').unwrap_or(num);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    let numer: BigInt = num.parse().map_err(|_| bad())?;
    let denom: BigInt = match den {
        None => BigInt::one(),
        Some(d) => {
            if d.is_empty() || !d.bytes().all(|b| b.is_ascii_digit()) || d.starts_with('0') {
                return Err(bad());
            }
            d.parse().map_err(|_| bad())?
        }
    };
    Ok(Rational::new(numer, denom))
}

/// Renders a rational in lowest terms as `"p/q"`, or `"p"` for integers.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Decimal rendering with `sig` significant digits.
pub fn format_decimal(q: &Rational, sig: usize) -> String {
    if q.is_zero() {
        return "0".to_string();
    }
    let v = rational_to_f64(q);
    let magnitude = v.abs().log10().floor() as i64;
    let decimals = (sig as i64 - 1 - magnitude).max(0) as usize;
    format!("{v:.decimals$}")
}

/// True when `q` has a power-of-two denominator in lowest terms.
pub fn is_dyadic(q: &Rational) -> bool {
    let d = q.denom();
    d.is_positive() && (d & (d - BigInt::one())).is_zero()
}

/// Exponent `d` of the denominator `2^d` of a dyadic rational.
pub fn dyadic_depth(q: &Rational) -> Option<u32> {
    is_dyadic(q).then(|| q.denom().trailing_zeros().unwrap_or(0) as u32)
}

pub fn pow2_recip(depth: u32) -> Rational {
    Rational::new(BigInt::one(), BigInt::one() << depth as usize)
}

/// Integer square root test: returns `Some(r)` with `r*r == q` when exact.
pub fn exact_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    (&n * &n == *q.numer() && &d * &d == *q.denom()).then(|| Rational::new(n, d))
}
