//! Exact rational scalars and a few conversions.

use num::bigint::BigInt;
use num::traits::{Signed, ToPrimitive, Zero};
use num::BigRational;

use crate::error::Error;

/// Exact rational number, always kept in lowest terms with positive denominator.
pub type Scalar = BigRational;

/// `n / d` as a scalar. Panics if `d == 0`.
pub fn q(n: i64, d: i64) -> Scalar {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Integer as a scalar.
pub fn int(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

pub fn to_f64(x: &Scalar) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Parses `"p/q"`, `"p"`, or a finite decimal such as `"-1.25"`.
pub fn parse_scalar(s: &str) -> Result<Scalar, Error> {
    let t = s.trim();
    let bad = || Error::Parse(format!("invalid rational `{s}`"));
    if let Some((n, d)) = t.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in `{s}`")));
        }
        return Ok(BigRational::new(n, d));
    }
    if let Some((whole, frac)) = t.split_once('.') {
        if frac.is_empty() || !frac.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let neg = whole.starts_with('-');
        let w: BigInt = if whole.is_empty() || whole == "-" || whole == "+" {
            BigInt::zero()
        } else {
            whole.parse().map_err(|_| bad())?
        };
        let f: BigInt = frac.parse().map_err(|_| bad())?;
        let den = num::pow(BigInt::from(10), frac.len());
        let f = BigRational::new(f, den);
        let w = BigRational::from_integer(w.abs());
        let v = w + f;
        return Ok(if neg { -v } else { v });
    }
    let n: BigInt = t.parse().map_err(|_| bad())?;
    Ok(BigRational::from_integer(n))
}

/// Normalized text form: `"p"` for integers, `"p/q"` otherwise.
pub fn format_scalar(x: &Scalar) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Exact square root when `x` is the square of a rational.
pub fn sqrt_exact(x: &Scalar) -> Option<Scalar> {
    if x.is_negative() {
        return None;
    }
    let n = x.numer().sqrt();
    let d = x.denom().sqrt();
    if &n * &n == *x.numer() && &d * &d == *x.denom() {
        Some(BigRational::new(n, d))
    } else {
        None
    }
}

/// Exact cube root when `x` is the cube of a rational.
pub fn cbrt_exact(x: &Scalar) -> Option<Scalar> {
    let neg = x.is_negative();
    let a = x.abs();
    let n = a.numer().cbrt();
    let d = a.denom().cbrt();
    if &n * &n * &n == *a.numer() && &d * &d * &d == *a.denom() {
        let r = BigRational::new(n, d);
        Some(if neg { -r } else { r })
    } else {
        None
    }
}

/// Exact `k`-th root of a nonnegative rational when it exists.
pub fn root_exact(x: &Scalar, k: u32) -> Option<Scalar> {
    if x.is_negative() {
        return None;
    }
    let n = x.numer().nth_root(k);
    let d = x.denom().nth_root(k);
    if num::pow(n.clone(), k as usize) == *x.numer() && num::pow(d.clone(), k as usize) == *x.denom() {
        Some(BigRational::new(n, d))
    } else {
        None
    }
}
