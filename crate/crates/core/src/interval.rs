//! Rational enclosures of irrational constants and an outward-rounded
//! logarithm.
//!
//! Bounds are certified: every `*_lower` is ≤ the true value and every
//! `*_upper` is ≥ it.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::WgError;
use crate::rational::ExactRational;

/// Digits carried by the default enclosures.
pub const DEFAULT_DIGITS: u32 = 50;

/// A closed interval `[lo, hi]` with rational endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalInterval {
    pub lo: ExactRational,
    pub hi: ExactRational,
}

impl RationalInterval {
    pub fn point(x: ExactRational) -> Self {
        Self { lo: x.clone(), hi: x }
    }

    pub fn width(&self) -> ExactRational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &ExactRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            lo: &self.lo + &other.lo,
            hi: &self.hi + &other.hi,
        }
    }

    /// Multiplication by a nonnegative rational.
    pub fn scale(&self, c: &ExactRational) -> Self {
        debug_assert!(!c.is_negative());
        Self {
            lo: &self.lo * c,
            hi: &self.hi * c,
        }
    }
}

fn pow10(d: u32) -> BigInt {
    num_traits::pow(BigInt::from(10u32), d as usize)
}

/// Largest `k / 10^d` that is ≤ `x`.
pub fn floor_to(x: &ExactRational, d: u32) -> ExactRational {
    let s = pow10(d);
    let k = (x.numer() * &s).div_floor(x.denom());
    ExactRational::new(k, s)
}

/// Smallest `k / 10^d` that is ≥ `x`.
pub fn ceil_to(x: &ExactRational, d: u32) -> ExactRational {
    let s = pow10(d);
    let k = (x.numer() * &s).div_ceil(x.denom());
    ExactRational::new(k, s)
}

/// Enclosure of Euler's number from `Σ 1/k!`; the tail after `K` terms is
/// below `2/(K+1)!`.
pub fn e_interval(digits: u32) -> RationalInterval {
    let target = ExactRational::new(BigInt::one(), pow10(digits + 2));
    let mut sum = ExactRational::zero();
    let mut term = ExactRational::one();
    let mut k = 0u32;
    loop {
        sum += &term;
        k += 1;
        term /= ExactRational::from_integer(BigInt::from(k));
        // remaining tail < 2·term
        if term < target {
            break;
        }
    }
    let hi = &sum + &term * ExactRational::from_integer(BigInt::from(2));
    RationalInterval {
        lo: floor_to(&sum, digits),
        hi: ceil_to(&hi, digits),
    }
}

/// `√x` enclosed to `digits` decimals. Needs `x ≥ 0`.
pub fn sqrt_interval(x: &ExactRational, digits: u32) -> Result<RationalInterval, WgError> {
    if x.is_negative() {
        return Err(WgError::InvalidArgument(alloc::format!("sqrt of negative {x}")));
    }
    // √(p/q) = √(p q)/q; scale by 10^{2d} before taking the integer root.
    let s = pow10(digits);
    let pq = (x.numer() * x.denom() * &s * &s).to_biguint().unwrap_or_default();
    let root = BigInt::from(pq.sqrt());
    let exact = &root * &root == BigInt::from(pq);
    let den = x.denom() * &s;
    let lo = ExactRational::new(root.clone(), den.clone());
    let hi = if exact { lo.clone() } else { ExactRational::new(root + 1, den) };
    Ok(RationalInterval { lo, hi })
}

/// Enclosure of `n^{k/2}` for a nonnegative integer `n`.
pub fn half_power_interval(n: u64, k: u32, digits: u32) -> RationalInterval {
    let v = ExactRational::from_integer(BigInt::from(num_traits::pow(BigUint::from(n), k as usize)));
    sqrt_interval(&v, digits).expect("nonnegative")
}

/// `atanh(z) = Σ z^{2j+1}/(2j+1)` for `|z| ≤ 1/2`, enclosed.
fn atanh_interval(z: &ExactRational, digits: u32) -> RationalInterval {
    let target = ExactRational::new(BigInt::one(), pow10(digits + 2));
    let z2 = z * z;
    let mut power = z.clone();
    let mut sum = ExactRational::zero();
    let mut j = 0u64;
    loop {
        sum += &power / ExactRational::from_integer(BigInt::from(2 * j + 1));
        power *= &z2;
        j += 1;
        // tail ≤ |z|^{2j+1} / ((2j+1)(1 − z²))
        let tail = power.abs()
            / (ExactRational::from_integer(BigInt::from(2 * j + 1)) * (ExactRational::one() - &z2));
        if tail < target {
            let lo = &sum - &tail;
            let hi = &sum + &tail;
            return RationalInterval {
                lo: floor_to(&lo, digits),
                hi: ceil_to(&hi, digits),
            };
        }
    }
}

/// Natural logarithm of a positive rational, enclosed with outward rounding
/// to `digits` decimals.
pub fn ln_interval(x: &ExactRational, digits: u32) -> Result<RationalInterval, WgError> {
    if !x.is_positive() {
        return Err(WgError::InvalidArgument(alloc::format!("log of nonpositive {x}")));
    }
    // x = 2^k · y with y ∈ [2/3, 4/3)
    let two = ExactRational::from_integer(BigInt::from(2));
    let lower = ExactRational::new(BigInt::from(2), BigInt::from(3));
    let upper = ExactRational::new(BigInt::from(4), BigInt::from(3));
    let mut y = x.clone();
    let mut k: i64 = 0;
    // coarse power of two from the bit lengths
    let shift = x.numer().bits() as i64 - x.denom().bits() as i64;
    if !(-1..=1).contains(&shift) {
        k = shift;
        y = if shift > 0 {
            y / ExactRational::from_integer(BigInt::one() << shift as usize)
        } else {
            y * ExactRational::from_integer(BigInt::one() << (-shift) as usize)
        };
    }
    while y >= upper {
        y /= &two;
        k += 1;
    }
    while y < lower {
        y *= &two;
        k -= 1;
    }
    let one = ExactRational::one();
    let z = (&y - &one) / (&y + &one); // |z| ≤ 1/7
    let ln_y = atanh_interval(&z, digits + 5).scale(&two);
    let ln2 = atanh_interval(&ExactRational::new(BigInt::one(), BigInt::from(3)), digits + 5).scale(&two);
    let k_abs = ExactRational::from_integer(BigInt::from(k.unsigned_abs()));
    let k_ln2 = if k >= 0 {
        ln2.scale(&k_abs)
    } else {
        RationalInterval {
            lo: -(&ln2.hi * &k_abs),
            hi: -(&ln2.lo * &k_abs),
        }
    };
    let total = k_ln2.add(&ln_y);
    Ok(RationalInterval {
        lo: floor_to(&total.lo, digits),
        hi: ceil_to(&total.hi, digits),
    })
}
