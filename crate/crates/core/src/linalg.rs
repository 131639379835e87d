//! Exact dense linear solves.
//!
//! Rows are scaled to integers and eliminated with Bareiss' fraction-free
//! scheme, so intermediate entries stay integral and no gcd work is done
//! until the final back substitution.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::WgError;
use crate::rational::ExactRational;

/// Solves `A x = b` exactly. `A` is square, given row by row.
pub fn solve(
    a: &[Vec<ExactRational>],
    b: &[ExactRational],
    context: &'static str,
) -> Result<Vec<ExactRational>, WgError> {
    let n = a.len();
    if b.len() != n || a.iter().any(|row| row.len() != n) {
        return Err(WgError::InvalidArgument(alloc::format!(
            "solve needs a square system, got {} rows and {} right-hand sides",
            n,
            b.len()
        )));
    }
    // integer augmented matrix, one row at a time
    let m: Vec<Vec<BigInt>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let lcm = row
                .iter()
                .chain(core::iter::once(rhs))
                .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            row.iter()
                .chain(core::iter::once(rhs))
                .map(|x| x.numer() * (&lcm / x.denom()))
                .collect()
        })
        .collect();
    solve_integer(m, context)
}

/// Solves an integer system given as augmented rows `[A | b]`.
pub fn solve_integer(mut m: Vec<Vec<BigInt>>, context: &'static str) -> Result<Vec<ExactRational>, WgError> {
    let n = m.len();
    if m.iter().any(|row| row.len() != n + 1) {
        return Err(WgError::InvalidArgument(alloc::format!(
            "augmented rows must have {} entries",
            n + 1
        )));
    }
    let mut prev = BigInt::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| !m[r][k].is_zero()) else {
            return Err(WgError::Singular { context });
        };
        m.swap(k, p);
        let (top, rest) = m.split_at_mut(k + 1);
        let pivot_row = &top[k];
        let pivot = &pivot_row[k];
        for row in rest.iter_mut() {
            let factor = core::mem::take(&mut row[k]);
            for j in k + 1..=n {
                let mut v = &row[j] * pivot;
                if !factor.is_zero() {
                    v -= &factor * &pivot_row[j];
                }
                row[j] = v / &prev;
            }
        }
        prev = pivot.clone();
    }

    let mut x: Vec<ExactRational> = alloc::vec![ExactRational::zero(); n];
    for i in (0..n).rev() {
        let mut acc = ExactRational::from_integer(m[i][n].clone());
        for j in i + 1..n {
            if !m[i][j].is_zero() {
                acc -= ExactRational::from_integer(m[i][j].clone()) * &x[j];
            }
        }
        x[i] = acc / ExactRational::from_integer(m[i][i].clone());
    }
    Ok(x)
}

/// 62-bit primes, largest first, found by a deterministic Miller–Rabin
/// search below `2^62`.
fn modular_primes() -> impl Iterator<Item = u64> {
    let mut c = (1u64 << 62) - 1;
    core::iter::from_fn(move || {
        while !is_prime_u64(c) {
            c -= 2;
        }
        let p = c;
        c -= 2;
        Some(p)
    })
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u64;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, m);
        }
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    r
}

/// Deterministic for all `u64` with these bases.
fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for b in BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn reduce(v: &BigInt, m: u64) -> u64 {
    let r = v.mod_floor(&BigInt::from(m));
    r.iter_u64_digits().next().unwrap_or(0)
}

/// Gaussian elimination mod `m`. Rows are dense `[A | b]`; `None` if a
/// pivot vanishes.
fn solve_mod(mut rows: Vec<Vec<u64>>, m: u64) -> Option<Vec<u64>> {
    let n = rows.len();
    for k in 0..n {
        let p = (k..n).find(|&r| rows[r][k] != 0)?;
        rows.swap(k, p);
        let inv = pow_mod(rows[k][k], m - 2, m);
        for v in rows[k][k..].iter_mut() {
            *v = mul_mod(*v, inv, m);
        }
        let (top, rest) = rows.split_at_mut(k + 1);
        let pivot_row = &top[k];
        for row in rest.iter_mut() {
            let f = row[k];
            if f == 0 {
                continue;
            }
            for j in k..=n {
                if pivot_row[j] != 0 {
                    row[j] = (row[j] + m - mul_mod(f, pivot_row[j], m)) % m;
                }
            }
        }
    }
    let mut x = alloc::vec![0u64; n];
    for i in (0..n).rev() {
        let mut acc = rows[i][n];
        for j in i + 1..n {
            if rows[i][j] != 0 {
                acc = (acc + m - mul_mod(rows[i][j], x[j], m)) % m;
            }
        }
        x[i] = acc;
    }
    Some(x)
}

/// `a/b ≡ u (mod m)` with `|a|, b ≤ √(m/2)`, if such a fraction exists.
fn rational_reconstruction(u: &BigInt, m: &BigInt) -> Option<ExactRational> {
    let bound = num_integer::Roots::sqrt(&(m / 2));
    let (mut r0, mut r1) = (m.clone(), u.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        r0 = core::mem::replace(&mut r1, r2);
        let t2 = &t0 - &q * &t1;
        t0 = core::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound {
        return None;
    }
    Some(ExactRational::new(r1, t1))
}

/// Solves a sparse integer system `A x = b`. `rows[i]` lists the nonzero
/// `(column, value)` entries of row `i`.
///
/// The system is solved modulo a growing set of 62-bit primes, lifted by
/// Chinese remaindering and rational reconstruction, and every candidate is
/// checked by exact substitution. A candidate that satisfies `A x = b`
/// while `A` is invertible modulo some prime is the exact solution, so the
/// result is certified rather than probabilistic. If the matrix keeps
/// failing to invert modulo the first primes, the dense fraction-free
/// solver decides singularity exactly.
pub fn solve_sparse_integer(
    rows: Vec<Vec<(usize, BigInt)>>,
    rhs: Vec<BigInt>,
    context: &'static str,
) -> Result<Vec<ExactRational>, WgError> {
    let n = rows.len();
    if rhs.len() != n || rows.iter().flatten().any(|(c, _)| *c >= n) {
        return Err(WgError::InvalidArgument(alloc::format!(
            "malformed sparse system: {} rows, {} right-hand sides",
            n,
            rhs.len()
        )));
    }
    let dense_fallback = |rows: &[Vec<(usize, BigInt)>], rhs: &[BigInt]| {
        let m: Vec<Vec<BigInt>> = rows
            .iter()
            .zip(rhs)
            .map(|(row, b)| {
                let mut d = alloc::vec![BigInt::zero(); n + 1];
                for (c, v) in row {
                    d[*c] += v;
                }
                d[n] = b.clone();
                d
            })
            .collect();
        solve_integer(m, context)
    };
    let verify = |x: &[ExactRational]| {
        rows.iter().zip(&rhs).all(|(row, b)| {
            let mut acc = ExactRational::zero();
            for (c, v) in row {
                acc += ExactRational::from_integer(v.clone()) * &x[*c];
            }
            acc == ExactRational::from_integer(b.clone())
        })
    };

    let mut modulus = BigInt::one();
    let mut residues: Vec<BigInt> = alloc::vec![BigInt::zero(); n];
    let mut failures = 0;
    let mut used = 0;
    for p in modular_primes() {
        let dense: Vec<Vec<u64>> = rows
            .iter()
            .zip(&rhs)
            .map(|(row, b)| {
                let mut d = alloc::vec![0u64; n + 1];
                for (c, v) in row {
                    d[*c] = (d[*c] + reduce(v, p)) % p;
                }
                d[n] = reduce(b, p);
                d
            })
            .collect();
        let Some(xp) = solve_mod(dense, p) else {
            failures += 1;
            if failures >= 3 && used == 0 {
                return dense_fallback(&rows, &rhs);
            }
            continue;
        };
        // CRT: r ← r + M·((x − r)·M⁻¹ mod p)
        let big_p = BigInt::from(p);
        let m_inv = pow_mod(reduce(&modulus, p), p - 2, p);
        for (r, &x) in residues.iter_mut().zip(&xp) {
            let diff = (x + p - reduce(r, p)) % p;
            let t = mul_mod(diff, m_inv, p);
            *r += &modulus * BigInt::from(t);
        }
        modulus *= &big_p;
        used += 1;
        // try to lift once the modulus has grown a little, then every other prime
        if used >= 2 && used % 2 == 0 {
            let lifted: Option<Vec<ExactRational>> =
                residues.iter().map(|r| rational_reconstruction(r, &modulus)).collect();
            if let Some(x) = lifted {
                if verify(&x) {
                    return Ok(x);
                }
            }
        }
        if used > 4096 {
            break;
        }
    }
    dense_fallback(&rows, &rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;
    use alloc::vec;

    #[test]
    fn two_by_two_gram() {
        // [[N², N], [N, N²]] x = e₁ at N = 3
        let a = vec![vec![ratio(9, 1), ratio(3, 1)], vec![ratio(3, 1), ratio(9, 1)]];
        let x = solve(&a, &[ratio(1, 1), ratio(0, 1)], "test").unwrap();
        assert_eq!(x, vec![ratio(1, 8), ratio(-1, 24)]);
    }

    #[test]
    fn needs_pivoting_and_fractions() {
        let a = vec![
            vec![ratio(0, 1), ratio(1, 2), ratio(1, 1)],
            vec![ratio(2, 3), ratio(0, 1), ratio(1, 1)],
            vec![ratio(1, 1), ratio(1, 1), ratio(0, 1)],
        ];
        let x_true = vec![ratio(1, 7), ratio(-2, 5), ratio(3, 1)];
        let b: Vec<ExactRational> = a
            .iter()
            .map(|row| row.iter().zip(&x_true).map(|(r, x)| r * x).sum())
            .collect();
        assert_eq!(solve(&a, &b, "test").unwrap(), x_true);
    }

    #[test]
    fn sparse_matches_dense() {
        let a = vec![
            vec![ratio(0, 1), ratio(3, 1), ratio(1, 1), ratio(0, 1)],
            vec![ratio(2, 1), ratio(0, 1), ratio(1, 1), ratio(0, 1)],
            vec![ratio(1, 1), ratio(1, 1), ratio(0, 1), ratio(5, 1)],
            vec![ratio(0, 1), ratio(0, 1), ratio(4, 1), ratio(-1, 1)],
        ];
        let b = vec![ratio(1, 1), ratio(-2, 1), ratio(0, 1), ratio(7, 1)];
        let dense = solve(&a, &b, "test").unwrap();
        let rows = a
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(c, v)| (c, v.numer().clone()))
                    .collect()
            })
            .collect();
        let rhs = b.iter().map(|v| v.numer().clone()).collect();
        assert_eq!(solve_sparse_integer(rows, rhs, "test").unwrap(), dense);
        let singular = vec![vec![(0, BigInt::from(1)), (1, BigInt::from(2))], vec![(0, BigInt::from(2)), (1, BigInt::from(4))]];
        assert!(solve_sparse_integer(singular, vec![BigInt::one(), BigInt::zero()], "test").is_err());
    }

    #[test]
    fn detects_singularity() {
        let a = vec![vec![ratio(1, 1), ratio(2, 1)], vec![ratio(2, 1), ratio(4, 1)]];
        assert!(matches!(
            solve(&a, &[ratio(1, 1), ratio(1, 1)], "test"),
            Err(WgError::Singular { .. })
        ));
    }
}
