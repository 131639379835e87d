//! Deterministic random streams.
//!
//! Every trajectory draws from its own ChaCha20 stream derived from
//! `(seed, run index)`, and every integer draw goes through fixed-width
//! `u64` rejection sampling, so a given seed reproduces the same traces
//! bit-for-bit on every platform.

use alloc::vec::Vec;

use num_bigint::BigUint;
use rand_chacha::ChaCha20Rng;
use rand_core::{RngCore, SeedableRng};

/// The independent stream used for run `run_index` of an experiment seeded
/// with `seed`.
pub fn stream_rng(seed: u64, run_index: u64) -> ChaCha20Rng {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(run_index);
    rng
}

/// Uniform integer in `[0, bound)`. Panics if `bound == 0`.
pub fn uniform_u64_below<R: RngCore + ?Sized>(rng: &mut R, bound: u64) -> u64 {
    assert!(bound > 0, "empty range");
    if bound == 1 {
        return 0;
    }
    let bits = 64 - (bound - 1).leading_zeros();
    let mask = if bits == 64 { u64::MAX } else { (1u64 << bits) - 1 };
    loop {
        let v = rng.next_u64() & mask;
        if v < bound {
            return v;
        }
    }
}

/// Uniform integer in `[0, bound)` for an arbitrary-precision bound.
pub fn uniform_biguint_below<R: RngCore + ?Sized>(rng: &mut R, bound: &BigUint) -> BigUint {
    assert!(bound.bits() > 0, "empty range");
    let bits = (bound - 1u32).bits();
    if bits == 0 {
        return BigUint::default();
    }
    let words = bits.div_ceil(64) as usize;
    let top_bits = bits - 64 * (words as u64 - 1);
    let top_mask = if top_bits == 64 { u64::MAX } else { (1u64 << top_bits) - 1 };
    let mut digits: Vec<u32> = Vec::with_capacity(2 * words);
    loop {
        digits.clear();
        for w in 0..words {
            let mut v = rng.next_u64();
            if w + 1 == words {
                v &= top_mask;
            }
            digits.push(v as u32);
            digits.push((v >> 32) as u32);
        }
        let candidate = BigUint::from_slice(&digits);
        if &candidate < bound {
            return candidate;
        }
    }
}

/// Uniform shuffle (Fisher–Yates) on top of [`uniform_u64_below`].
pub fn shuffle<T, R: RngCore + ?Sized>(rng: &mut R, items: &mut [T]) {
    for i in (1..items.len()).rev() {
        let j = uniform_u64_below(rng, i as u64 + 1) as usize;
        items.swap(i, j);
    }
}
