//! Catalan numbers and Moebius values.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::error::WgError;
use crate::partition::Partition;
use crate::rational::ExactRational;

/// Default number of memoized entries in a [`CatalanTable`].
pub const DEFAULT_CATALAN_CAP: usize = 10_000;

/// `Cat(k) = (2k)! / (k! (k+1)!)`, exactly.
pub fn catalan(k: usize) -> BigUint {
    let mut c = BigUint::one();
    for m in 0..k {
        c = c * (2 * (2 * m as u64 + 1)) / (m as u64 + 2);
    }
    c
}

/// Memoized Catalan numbers `Cat(0..cap)`, grown on demand.
#[derive(Clone, Debug)]
pub struct CatalanTable {
    values: Vec<BigUint>,
    cap: usize,
}

impl Default for CatalanTable {
    fn default() -> Self {
        Self::with_cap(DEFAULT_CATALAN_CAP)
    }
}

impl CatalanTable {
    pub fn with_cap(cap: usize) -> Self {
        Self {
            values: vec![BigUint::one()],
            cap,
        }
    }

    pub fn get(&mut self, k: usize) -> Result<&BigUint, WgError> {
        if k >= self.cap {
            return Err(WgError::CapExceeded {
                what: "Catalan index",
                value: k,
                cap: self.cap - 1,
            });
        }
        while self.values.len() <= k {
            let m = self.values.len() as u64 - 1;
            let next = self.values.last().unwrap() * (2 * (2 * m + 1)) / (m + 2);
            self.values.push(next);
        }
        Ok(&self.values[k])
    }
}

/// `|Moeb(λ)| = ∏ Cat(λ_i − 1)`.
pub fn moebius_abs(lambda: &Partition) -> BigUint {
    lambda.parts().iter().map(|&p| catalan(p - 1)).product()
}

/// `Moeb(λ) = (−1)^{|λ|} ∏ Cat(λ_i − 1)` with `|λ| = size − ℓ(λ)`.
pub fn moebius(lambda: &Partition) -> BigInt {
    let m = BigInt::from(moebius_abs(lambda));
    if lambda.norm() % 2 == 1 {
        -m
    } else {
        m
    }
}

/// `max_{1≤j≤k−1} Cat(k−1) / (Cat(j−1) Cat(k−j−1))`.
pub fn catalan_quotient_max(k: usize) -> Result<ExactRational, WgError> {
    if k < 2 {
        return Err(WgError::InvalidArgument(alloc::format!(
            "catalan_quotient_max needs k ≥ 2, got {k}"
        )));
    }
    let cats: Vec<BigUint> = {
        let mut t = CatalanTable::with_cap(k + 1);
        (0..k).map(|i| t.get(i).unwrap().clone()).collect()
    };
    let top = &cats[k - 1];
    let den = (1..k)
        .map(|j| &cats[j - 1] * &cats[k - j - 1])
        .min()
        .expect("k ≥ 2");
    let best = Some(ExactRational::new(BigInt::from(top.clone()), BigInt::from(den)));
    Ok(best.unwrap_or_else(ExactRational::zero))
}
