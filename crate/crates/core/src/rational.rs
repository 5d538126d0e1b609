//! Exact rational helpers on top of `num_rational::BigRational`.
//!
//! Every value this crate reports is a `Rational` kept in lowest terms with a
//! positive denominator. Decimal output exists for display only.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

/// `num / den` as an exact rational. Panics on a zero denominator.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn from_usize(n: usize) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Renders as `p/q` in lowest terms, always with an explicit denominator.
pub fn to_fraction_string(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `p/q` or a bare integer `p`. Accepts signs; reduces to lowest terms.
pub fn parse_fraction(text: &str) -> Result<Rational> {
    let bad = || Error::MalformedFraction(text.to_string());
    let t = text.trim();
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

/// Decimal rendering rounded half-up (away from zero) to `sig` significant digits.
pub fn to_decimal(r: &Rational, sig: usize) -> String {
    assert!(sig >= 1, "need at least one significant digit");
    if r.is_zero() {
        return "0".to_string();
    }
    let negative = r.is_negative();
    let a = r.abs();
    let ten = BigInt::from(10);

    // exponent e with 10^e <= a < 10^(e+1)
    let mut e: i64 = a.numer().to_string().len() as i64 - a.denom().to_string().len() as i64;
    let pow10 = |k: i64| -> Rational {
        if k >= 0 {
            Rational::from_integer(num_traits::pow(ten.clone(), k as usize))
        } else {
            Rational::new(BigInt::one(), num_traits::pow(ten.clone(), (-k) as usize))
        }
    };
    while a >= pow10(e + 1) {
        e += 1;
    }
    while a < pow10(e) {
        e -= 1;
    }

    let round = |e: i64| -> BigInt {
        let scaled = &a * pow10(sig as i64 - 1 - e);
        let (q, rem) = scaled.numer().div_rem(scaled.denom());
        if rem * 2 >= *scaled.denom() {
            q + 1
        } else {
            q
        }
    };
    let mut digits = round(e);
    if digits.to_string().len() > sig {
        e += 1;
        digits = round(e);
    }

    let digits = digits.to_string();
    let point = e + 1; // digits before the decimal point
    let mut out = String::new();
    if negative {
        out.push('-');
    }
    if point <= 0 {
        out.push_str("0.");
        out.extend(std::iter::repeat_n('0', (-point) as usize));
        out.push_str(&digits);
    } else if point as usize >= digits.len() {
        out.push_str(&digits);
        out.extend(std::iter::repeat_n('0', point as usize - digits.len()));
    } else {
        out.push_str(&digits[..point as usize]);
        out.push('.');
        out.push_str(&digits[point as usize..]);
    }
    out
}

/// Smallest integer not below `r`.
pub fn ceil(r: &Rational) -> BigInt {
    r.ceil().to_integer()
}
