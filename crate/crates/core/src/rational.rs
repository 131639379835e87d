//! Exact rationals and their text form.
//!
//! All Weingarten values, evaluation points `N` and bound ratios are carried
//! as [`ExactRational`] (an arbitrary-precision, always-reduced fraction with
//! positive denominator). The text form is `"p"` or `"p/q"`.

use alloc::format;
use alloc::string::String;

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::ParseError;

pub type ExactRational = BigRational;

/// Parses `"p"` or `"p/q"` (optional leading sign on `p`, surrounding
/// whitespace ignored). Floats are rejected.
pub fn parse_rational(text: &str) -> Result<ExactRational, ParseError> {
    let offset = text.len() - text.trim_start().len();
    let s = text.trim();
    if s.is_empty() {
        return Err(ParseError::new(offset, "expected a rational \"p\" or \"p/q\""));
    }
    let (num_text, den_text, den_pos) = match s.find('/') {
        Some(slash) => (&s[..slash], Some(&s[slash + 1..]), offset + slash + 1),
        None => (s, None, 0),
    };
    let numer = parse_int(num_text, offset)?;
    let denom = match den_text {
        Some(d) => {
            if d.starts_with('-') || d.starts_with('+') {
                return Err(ParseError::new(den_pos, "denominator must be unsigned"));
            }
            let d = parse_int(d, den_pos)?;
            if d.is_zero() {
                return Err(ParseError::new(den_pos, "zero denominator"));
            }
            d
        }
        None => BigInt::one(),
    };
    Ok(BigRational::new(numer, denom))
}

fn parse_int(s: &str, offset: usize) -> Result<BigInt, ParseError> {
    let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
    if digits.is_empty() {
        return Err(ParseError::new(offset, "missing digits"));
    }
    if let Some((i, c)) = digits.char_indices().find(|(_, c)| !c.is_ascii_digit()) {
        let sign_len = s.len() - digits.len();
        return Err(ParseError::new(
            offset + sign_len + i,
            format!("unexpected character {c:?} in integer"),
        ));
    }
    s.parse::<BigInt>()
        .map_err(|_| ParseError::new(offset, "invalid integer"))
}

/// Always `"p/q"`, including `q = 1`. Used by the machine-readable formats.
pub fn to_pq_string(r: &ExactRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn from_int(v: i64) -> ExactRational {
    BigRational::from_integer(BigInt::from(v))
}

pub fn from_biguint(v: &BigUint) -> ExactRational {
    BigRational::from_integer(BigInt::from_biguint(Sign::Plus, v.clone()))
}

pub fn from_bigint(v: BigInt) -> ExactRational {
    BigRational::from_integer(v)
}

pub fn ratio(p: i64, q: i64) -> ExactRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// `r^e` for any integer exponent; `r` must be nonzero when `e < 0`.
pub fn powi(r: &ExactRational, e: i64) -> ExactRational {
    if e >= 0 {
        num_traits::pow(r.clone(), e as usize)
    } else {
        num_traits::pow(r.recip(), e.unsigned_abs() as usize)
    }
}

/// Nearest `f64`; very large or small magnitudes saturate to ±inf / 0.
pub fn to_f64(r: &ExactRational) -> f64 {
    if let Some(v) = r.to_f64() {
        return v;
    }
    // Fall back to a scaled quotient for magnitudes outside the direct path.
    let n_bits = r.numer().bits() as i64;
    let d_bits = r.denom().bits() as i64;
    let shift = n_bits - d_bits;
    let scaled = if shift > 0 {
        BigRational::new(r.numer().clone(), r.denom() << (shift as usize))
    } else {
        BigRational::new(r.numer() << ((-shift) as usize), r.denom().clone())
    };
    let mant = scaled.to_f64().unwrap_or(0.0);
    mant * libm::pow(2.0, shift as f64)
}

pub fn is_integer_in_open_range(r: &ExactRational, bound: i64) -> bool {
    r.is_integer() && r.numer().abs() < BigInt::from(bound)
}

pub fn abs(r: &ExactRational) -> ExactRational {
    r.abs()
}

pub fn zero() -> ExactRational {
    BigRational::zero()
}

pub fn one() -> ExactRational {
    BigRational::one()
}
