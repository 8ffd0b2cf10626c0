//! Number types shared by every transform.
//!
//! All moment transforms are generic over [`Scalar`], which is implemented
//! for `f64` and for arbitrary-precision rationals. Rational inputs keep every
//! sign decision exact, which matters on the equality boundaries where a
//! sequence is feasible only just.

use std::fmt::Debug;
use std::sync::OnceLock;

use num::bigint::BigInt;
use num::traits::{Num, Signed, ToPrimitive, Zero};
use num::BigRational;

use crate::error::{EosError, Result};

/// Largest sample size supported by the binomial tables.
pub const MAX_N: usize = 64;

pub trait Scalar: Clone + Debug + PartialOrd + Num + Signed + Send + Sync + 'static {
    /// `true` when arithmetic is exact.
    const EXACT: bool;

    fn to_f64(&self) -> f64;

    fn from_i64(v: i64) -> Self;

    fn from_u64(v: u64) -> Self;

    /// Converts a finite double. Exact types take the binary value verbatim.
    fn from_f64(v: f64) -> Self;

    fn to_rational(&self) -> Option<BigRational>;

    fn ratio(num: i64, den: i64) -> Self {
        Self::from_i64(num) / Self::from_i64(den)
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn to_f64(&self) -> f64 {
        *self
    }

    fn from_i64(v: i64) -> Self {
        v as f64
    }

    fn from_u64(v: u64) -> Self {
        v as f64
    }

    fn from_f64(v: f64) -> Self {
        v
    }

    fn to_rational(&self) -> Option<BigRational> {
        None
    }
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn to_f64(&self) -> f64 {
        rational_to_f64(self)
    }

    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn from_u64(v: u64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn from_f64(v: f64) -> Self {
        BigRational::from_float(v).unwrap_or_else(BigRational::zero)
    }

    fn to_rational(&self) -> Option<BigRational> {
        Some(self.clone())
    }
}

/// A value that is either an exact rational or a double.
#[derive(Debug, Clone, PartialEq)]
pub enum Number {
    Exact(BigRational),
    Float(f64),
}

impl Number {
    pub fn of<S: Scalar>(v: &S) -> Self {
        match v.to_rational() {
            Some(r) => Number::Exact(r),
            None => Number::Float(v.to_f64()),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Number::Exact(r) => rational_to_f64(r),
            Number::Float(v) => *v,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Number::Exact(_))
    }
}

impl std::fmt::Display for Number {
    /// Rationals verbatim, doubles with 17 significant digits.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Number::Exact(r) => f.write_str(&format_rational(r)),
            Number::Float(v) => f.write_str(&format_float(*v)),
        }
    }
}

/// Seventeen significant digits in scientific notation.
pub fn format_float(v: f64) -> String {
    if v == 0.0 {
        format!("{:.16e}", 0.0)
    } else if v.is_finite() {
        format!("{v:.16e}")
    } else {
        v.to_string()
    }
}

/// Correctly handles numerators and denominators beyond the `f64` range.
pub fn rational_to_f64(r: &BigRational) -> f64 {
    if let Some(v) = ToPrimitive::to_f64(r) {
        if v.is_finite() {
            return v;
        }
    }
    let num_shift = (r.numer().bits() as i64 - 60).max(0);
    let den_shift = (r.denom().bits() as i64 - 60).max(0);
    let num = r.numer() >> num_shift as usize;
    let den = r.denom() >> den_shift as usize;
    let base = num.to_f64().unwrap_or(0.0) / den.to_f64().unwrap_or(1.0);
    let exp = (num_shift - den_shift).clamp(-4000, 4000) as i32;
    base * 2f64.powi(exp)
}

fn pascal() -> &'static Vec<Vec<u64>> {
    static TABLE: OnceLock<Vec<Vec<u64>>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut rows: Vec<Vec<u64>> = Vec::with_capacity(MAX_N + 1);
        for n in 0..=MAX_N {
            let mut row = vec![1u64; n + 1];
            for k in 1..n {
                row[k] = rows[n - 1][k - 1] + rows[n - 1][k];
            }
            rows.push(row);
        }
        rows
    })
}

pub fn check_size(n: usize) -> Result<()> {
    if n > MAX_N {
        return Err(EosError::UnsupportedSize { n, max: MAX_N });
    }
    Ok(())
}

/// `C(n, k)` from the exact table; zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> Result<u64> {
    check_size(n)?;
    Ok(if k > n { 0 } else { pascal()[n][k] })
}

/// Binomial coefficient as a scalar. Callers must have validated `n <= MAX_N`.
pub(crate) fn binom<S: Scalar>(n: usize, k: usize) -> S {
    debug_assert!(n <= MAX_N);
    if k > n {
        S::zero()
    } else {
        S::from_u64(pascal()[n][k])
    }
}

pub(crate) fn pow<S: Scalar>(base: &S, exp: usize) -> S {
    let mut acc = S::one();
    for _ in 0..exp {
        acc = acc * base.clone();
    }
    acc
}

pub(crate) fn to_f64_vec<S: Scalar>(values: &[S]) -> Vec<f64> {
    values.iter().map(Scalar::to_f64).collect()
}

/// Parses an integer, `num/den`, or an exact decimal (`-1.25`, `3e-2`) as a rational.
pub fn parse_rational(token: &str) -> Option<BigRational> {
    let t = token.trim();
    if t.is_empty() {
        return None;
    }
    if let Some((n, d)) = t.split_once('/') {
        let n = parse_int(n)?;
        let d = parse_int(d)?;
        if d.is_zero() {
            return None;
        }
        return Some(BigRational::new(n, d));
    }
    parse_decimal(t)
}

fn parse_int(s: &str) -> Option<BigInt> {
    let s = s.trim();
    let digits = s.strip_prefix(['+', '-']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    BigInt::from_str_radix(s.strip_prefix('+').unwrap_or(s), 10).ok()
}

fn parse_decimal(s: &str) -> Option<BigRational> {
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(pos) => {
            let e: i32 = s[pos + 1..].parse().ok()?;
            (&s[..pos], e)
        }
        None => (s, 0),
    };
    if exponent.unsigned_abs() > 4096 {
        return None;
    }
    let (negative, body) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.bytes().chain(frac_part.bytes()).all(|b| b.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let mut numer = BigInt::from_str_radix(if digits.is_empty() { "0" } else { &digits }, 10).ok()?;
    if negative {
        numer = -numer;
    }
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let r = if scale >= 0 {
        BigRational::from_integer(numer * num::pow(ten, scale as usize))
    } else {
        BigRational::new(numer, num::pow(ten, (-scale) as usize))
    };
    Some(r)
}

/// Formats a rational as `num` or `num/den`.
pub fn format_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Best rational approximation with denominator at most `max_den`.
pub fn approximate_rational(x: f64, max_den: i64) -> Option<BigRational> {
    if !x.is_finite() || x.abs() > 1e15 {
        return None;
    }
    let (mut h0, mut h1) = (0i128, 1i128);
    let (mut k0, mut k1) = (1i128, 0i128);
    let mut v = x;
    for _ in 0..64 {
        let a = v.floor();
        let ai = a as i128;
        let h2 = ai * h1 + h0;
        let k2 = ai * k1 + k0;
        if k2 > max_den as i128 {
            break;
        }
        h0 = h1;
        h1 = h2;
        k0 = k1;
        k1 = k2;
        let frac = v - a;
        if frac.abs() < 1e-300 || ((h1 as f64) / (k1 as f64) - x).abs() <= f64::EPSILON * x.abs() {
            break;
        }
        v = 1.0 / frac;
    }
    if k1 == 0 {
        return None;
    }
    Some(BigRational::new(BigInt::from(h1), BigInt::from(k1)))
}
