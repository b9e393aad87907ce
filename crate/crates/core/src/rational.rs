//! Exact rationals and their canonical text form.
//!
//! Every exact value that leaves the library is written as `p/q` with
//! `q > 0` and `gcd(p, q) = 1`; integers drop the `/1`.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Shorthand for an integer-valued rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for `num/den`; panics on a zero denominator.
pub fn frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn is_integer(x: &Rational) -> bool {
    x.denom().is_one()
}

/// Parses `p`, `-p`, `p/q` (optionally surrounded by whitespace).
///
/// Non-canonical input such as `2/4` or `3/-6` is accepted and reduced;
/// a zero denominator is rejected.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let bad = || Error::Parse(format!("invalid rational `{text}`"));
    if text.is_empty() {
        return Err(bad());
    }
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (text, None),
    };
    let parse_int = |s: &str| -> Result<BigInt> {
        let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        BigInt::from_str(s).map_err(|_| bad())
    };
    let num = parse_int(num)?;
    let den = match den {
        Some(d) => parse_int(d)?,
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in `{text}`")));
    }
    Ok(Rational::new(num, den))
}

/// Canonical text form (`BigRational` already keeps `q > 0` and lowest terms).
pub fn format_rational(x: &Rational) -> String {
    if is_integer(x) {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Best-effort conversion for numeric diagnostics only.
pub fn to_f64(x: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    match (x.numer().to_f64(), x.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => {
            // Huge operands: scale both down by the same power of two.
            let shift = x.numer().bits().max(x.denom().bits()).saturating_sub(1000);
            let n = (x.numer() >> shift).to_f64().unwrap_or(f64::NAN);
            let d = (x.denom() >> shift).to_f64().unwrap_or(f64::NAN);
            n / d
        }
    }
}

/// Sign as -1, 0 or 1.
pub fn sign(x: &Rational) -> i32 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}
