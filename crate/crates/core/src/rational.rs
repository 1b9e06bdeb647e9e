//! Exact rational arithmetic and the combinatorial kernels built on it.
//!
//! Values are `num_rational::BigRational`, which normalizes on construction:
//! the denominator is positive, numerator and denominator are coprime, and
//! zero is `0/1`. Equality is therefore structural.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub use num_rational::BigRational as Rational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `p/q` as a normalized rational. Panics on `q == 0`.
pub fn frac(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Parses the rational text format: optional leading minus, a decimal
/// integer, and optionally `/` followed by a positive decimal integer.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    let (negative, body) = if let Some(rest) = s.strip_prefix('-') {
        (true, rest)
    } else if let Some(rest) = s.strip_prefix('\u{2212}') {
        (true, rest)
    } else {
        (false, s)
    };
    let (num_text, den_text) = match body.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (body, None),
    };
    let digits = |t: &str| -> Result<BigInt> {
        if t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::Parse(format!("invalid rational `{text}`")));
        }
        Ok(t.parse::<BigInt>().expect("validated digits"))
    };
    let mut numer = digits(num_text)?;
    if negative {
        numer = -numer;
    }
    let denom = match den_text {
        Some(d) => digits(d)?,
        None => BigInt::one(),
    };
    if denom.is_zero() {
        return Err(Error::Parse(format!("zero denominator in `{text}`")));
    }
    Ok(Rational::new(numer, denom))
}

/// True when `r` lies in {0, -1, -2, ...}.
pub fn is_nonpositive_integer(r: &Rational) -> bool {
    r.is_integer() && !r.is_positive()
}

/// `|r|` as a `u64` when `r` is a non-positive integer small enough to index with.
pub fn nonpositive_integer_magnitude(r: &Rational) -> Option<u64> {
    if !is_nonpositive_integer(r) {
        return None;
    }
    u64::try_from(-r.to_integer()).ok()
}

/// Rising factorial `a (a+1) ... (a+n-1)`, with `(a)_0 = 1`.
pub fn pochhammer(a: &Rational, n: u64) -> Rational {
    let mut acc = Rational::one();
    let mut factor = a.clone();
    for _ in 0..n {
        if factor.is_zero() {
            return Rational::zero();
        }
        acc *= &factor;
        factor += Rational::one();
    }
    acc
}

pub fn factorial(n: u64) -> Rational {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= i;
    }
    Rational::from_integer(acc)
}

/// Exact integer power. Zero raised to a negative exponent is a domain error.
pub fn rational_pow(x: &Rational, k: i64) -> Result<Rational> {
    if k < 0 && x.is_zero() {
        return Err(Error::domain("zero base with negative exponent"));
    }
    let magnitude = i32::try_from(k.unsigned_abs()).map_err(|_| Error::domain(format!("exponent {k} out of range")))?;
    let p = num_traits::pow::Pow::pow(x, magnitude);
    Ok(if k < 0 { p.recip() } else { p })
}
