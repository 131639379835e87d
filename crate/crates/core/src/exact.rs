//! Exact Weingarten values.
//!
//! Two independent engines produce the unitary table: the Gram oracle
//! (inverting `N^{#cycles(σ⁻¹τ)}` on class functions) and the loop-equation
//! recursion `w = T̃w`, solved level by level. The orthogonal table comes
//! from the pairing Gram matrix `N^{ℓ(π,ρ)}`. Path series with trivial-cap
//! tails, the full-cycle closed form, the γ-norm and the operator `T̃`
//! round the module out.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use crate::catalan::{catalan, moebius_abs};
use crate::error::WgError;
use crate::graph::{OrthogonalPathCounter, UnitaryPathCounter};
use crate::linalg::{solve, solve_sparse_integer};
use crate::pairing::Pairing;
use crate::partition::Partition;
use crate::perm::Permutation;
use crate::rational::{from_biguint, powi, ExactRational};

/// Largest degree for the unitary Gram oracle.
pub const UNITARY_GRAM_CAP: usize = 7;
/// Largest degree for the literal `k! × k!` Gram solve.
pub const UNITARY_FULL_GRAM_CAP: usize = 4;
/// Largest `2n` for the orthogonal Gram oracle.
pub const ORTHOGONAL_GRAM_POINTS_CAP: usize = 8;
/// Largest degree for the loop-equation recursion.
pub const RECURSION_CAP: usize = 24;

/// Which group a table belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Group {
    Unitary,
    Orthogonal,
    /// Magnitudes only; the sign is left unresolved.
    Symplectic,
}

impl Group {
    pub fn code(self) -> &'static str {
        match self {
            Group::Unitary => "U",
            Group::Orthogonal => "O",
            Group::Symplectic => "SP",
        }
    }

    pub fn from_code(code: &str) -> Option<Group> {
        match code {
            "U" => Some(Group::Unitary),
            "O" => Some(Group::Orthogonal),
            "SP" => Some(Group::Symplectic),
            _ => None,
        }
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

/// Class values `Wg_N(λ)` for every `λ ⊢ k`, `k ≤ max_level`. Level 0 holds
/// `∅ ↦ 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WgTable {
    pub group: Group,
    pub n_eval: ExactRational,
    pub max_level: usize,
    values: BTreeMap<Partition, ExactRational>,
}

/// Unitary table: keyed by cycle type.
pub type WgTableU = WgTable;
/// Orthogonal (or symplectic) table: keyed by coset type.
pub type WgTableO = WgTable;

/// Class-indexed vector over all partitions of `r ≤ n`.
pub type ClassVector = BTreeMap<Partition, ExactRational>;

impl WgTable {
    pub fn new(group: Group, n_eval: ExactRational, max_level: usize) -> Self {
        let mut values = BTreeMap::new();
        values.insert(Partition::empty(), ExactRational::one());
        Self {
            group,
            n_eval,
            max_level,
            values,
        }
    }

    pub fn insert(&mut self, lambda: Partition, value: ExactRational) {
        self.max_level = self.max_level.max(lambda.size());
        self.values.insert(lambda, value);
    }

    pub fn get(&self, lambda: &Partition) -> Option<&ExactRational> {
        self.values.get(lambda)
    }

    pub fn value(&self, lambda: &Partition) -> Result<&ExactRational, WgError> {
        self.values.get(lambda).ok_or_else(|| {
            WgError::InvalidArgument(format!("class {lambda} is not in the table"))
        })
    }

    /// `Wg(id_k)`.
    pub fn identity(&self, k: usize) -> Result<&ExactRational, WgError> {
        self.value(&Partition::ones(k))
    }

    /// Rows in output order: by level, then `(k), (k−1,1), …, (1^k)`.
    pub fn rows(&self) -> Vec<(&Partition, &ExactRational)> {
        let mut rows: Vec<_> = self.values.iter().collect();
        rows.sort_by(|a, b| a.0.size().cmp(&b.0.size()).then(b.0.cmp(a.0)));
        rows
    }

    /// Entries at levels `1..=max_level` as a class vector, plus ∅.
    pub fn as_vector(&self) -> ClassVector {
        self.values.clone()
    }
}

fn check_cap(what: &'static str, value: usize, cap: usize) -> Result<(), WgError> {
    if value > cap {
        return Err(WgError::CapExceeded { what, value, cap });
    }
    Ok(())
}

fn n_powers(n_eval: &ExactRational, max: usize) -> Vec<ExactRational> {
    let mut out = Vec::with_capacity(max + 1);
    let mut p = ExactRational::one();
    for _ in 0..=max {
        out.push(p.clone());
        p *= n_eval;
    }
    out
}

/// `[class_index, exponent] → count` Gram polynomial rows for `S_k`:
/// `K(μ, λ) = Σ_{τ ∈ S_λ} N^{#cycles(σ_μ⁻¹ τ)}`.
fn unitary_class_gram_counts(k: usize) -> (Vec<Partition>, Vec<Vec<Vec<u64>>>) {
    let classes = Partition::all_of(k);
    let index: BTreeMap<&Partition, usize> = classes.iter().enumerate().map(|(i, l)| (l, i)).collect();
    let all = Permutation::all(k);
    let mut counts = vec![vec![vec![0u64; k + 1]; classes.len()]; classes.len()];
    for (mi, mu) in classes.iter().enumerate() {
        let rep_inv = mu.representative().inverse();
        for tau in &all {
            let c = rep_inv.compose(tau).expect("same degree").num_cycles();
            counts[mi][index[tau.cycle_type()]][c] += 1;
        }
    }
    (classes, counts)
}

fn unitary_gram_level(k: usize, powers: &[ExactRational]) -> Result<Vec<(Partition, ExactRational)>, WgError> {
    let (classes, counts) = unitary_class_gram_counts(k);
    let rows: Vec<Vec<ExactRational>> = counts
        .iter()
        .map(|row| {
            row.iter()
                .map(|poly| {
                    poly.iter()
                        .enumerate()
                        .filter(|(_, &c)| c > 0)
                        .map(|(e, &c)| &powers[e] * ExactRational::from_integer(BigInt::from(c)))
                        .sum()
                })
                .collect()
        })
        .collect();
    let rhs: Vec<ExactRational> = classes
        .iter()
        .map(|l| if l.is_all_ones() { ExactRational::one() } else { ExactRational::zero() })
        .collect();
    let x = solve(&rows, &rhs, "unitary Gram matrix")?;
    Ok(classes.into_iter().zip(x).collect())
}

/// Unitary Weingarten table from the Gram oracle, `n ≤ 7`.
///
/// The `k! × k!` system `Σ_τ N^{#cycles(σ⁻¹τ)} Wg(τ) = [σ = id]` has a
/// class-function solution, so it is solved on class functions: one row per
/// class representative, one unknown per class.
pub fn wg_unitary_gram(n: usize, n_eval: &ExactRational) -> Result<WgTableU, WgError> {
    check_cap("unitary Gram degree n", n, UNITARY_GRAM_CAP)?;
    if n_eval.is_zero() {
        return Err(WgError::Singular { context: "unitary Gram matrix at N = 0" });
    }
    let powers = n_powers(n_eval, n);
    let mut table = WgTable::new(Group::Unitary, n_eval.clone(), n);
    for k in 1..=n {
        for (lambda, v) in unitary_gram_level(k, &powers)? {
            table.insert(lambda, v);
        }
    }
    Ok(table)
}

/// The literal `k! × k!` Gram solve for `n ≤ 4`, tabulated by class after
/// checking the solution is constant on classes.
pub fn wg_unitary_gram_full(n: usize, n_eval: &ExactRational) -> Result<WgTableU, WgError> {
    check_cap("full unitary Gram degree n", n, UNITARY_FULL_GRAM_CAP)?;
    let powers = n_powers(n_eval, n);
    let mut table = WgTable::new(Group::Unitary, n_eval.clone(), n);
    for k in 1..=n {
        let all = Permutation::all(k);
        let rows: Vec<Vec<ExactRational>> = all
            .iter()
            .map(|s| {
                let inv = s.inverse();
                all.iter()
                    .map(|t| powers[inv.compose(t).expect("same degree").num_cycles()].clone())
                    .collect()
            })
            .collect();
        let rhs: Vec<ExactRational> = all
            .iter()
            .map(|s| if s.is_identity() { ExactRational::one() } else { ExactRational::zero() })
            .collect();
        let x = solve(&rows, &rhs, "full unitary Gram matrix")?;
        for (s, v) in all.iter().zip(x) {
            match table.get(s.cycle_type()) {
                Some(prev) if *prev != v => {
                    return Err(WgError::InvalidArgument(format!(
                        "Gram solution is not a class function at {s}"
                    )))
                }
                _ => table.insert(s.cycle_type().clone(), v),
            }
        }
    }
    Ok(table)
}

/// For each `λ ⊢ k`, the classes of `(i k) ∘ σ_λ`, `i < k`, with
/// multiplicities. `σ_λ` has `k` in its largest cycle.
#[derive(Clone, Debug)]
pub struct ClassTransitions {
    pub classes: Vec<Partition>,
    pub index: BTreeMap<Partition, usize>,
    /// `rows[λ] = [(μ, multiplicity)]`.
    pub rows: Vec<Vec<(usize, u64)>>,
}

pub fn class_transitions(k: usize) -> ClassTransitions {
    let classes = Partition::all_of(k);
    let index: BTreeMap<Partition, usize> =
        classes.iter().cloned().enumerate().map(|(i, l)| (l, i)).collect();
    let rows = classes
        .iter()
        .map(|lambda| {
            let rep = lambda.representative();
            let mut acc: BTreeMap<usize, u64> = BTreeMap::new();
            for i in 1..k {
                let next = rep.left_transpose(i).expect("i < k");
                *acc.entry(index[next.cycle_type()]).or_insert(0) += 1;
            }
            acc.into_iter().collect()
        })
        .collect();
    ClassTransitions { classes, index, rows }
}

/// Unitary table from the loop equations `w = T̃w`.
///
/// Level `k` solves, for every `λ ⊢ k`,
/// `N x_λ + Σ_{i<k} x_{(i k)σ_λ} = Wg(id_{k−1}) [λ = 1^k]`,
/// after scaling by the denominator of `N` so the matrix is integral.
pub fn wg_unitary_recursion(n: usize, n_eval: &ExactRational) -> Result<WgTableU, WgError> {
    check_cap("recursion degree n", n, RECURSION_CAP)?;
    let mut table = WgTable::new(Group::Unitary, n_eval.clone(), n);
    let p = n_eval.numer().clone();
    let q = n_eval.denom().clone();
    for k in 1..=n {
        let trans = class_transitions(k);
        let m = trans.classes.len();
        // Unknowns numbered by decreasing norm: the system is block
        // tridiagonal in the norm, so eliminating from the top keeps fill-in
        // inside neighbouring blocks.
        let mut order: Vec<usize> = (0..m).collect();
        order.sort_by_key(|&c| core::cmp::Reverse(trans.classes[c].norm()));
        let mut slot = vec![0; m];
        for (s, &c) in order.iter().enumerate() {
            slot[c] = s;
        }
        // p x_λ + q Σ x_μ = q · Wg(id_{k−1}) δ; solve with rhs δ, then scale.
        let rows: Vec<Vec<(usize, BigInt)>> = order
            .iter()
            .map(|&r| {
                let mut row = vec![(slot[r], p.clone())];
                for &(c, mult) in &trans.rows[r] {
                    row.push((slot[c], &q * BigInt::from(mult)));
                }
                row
            })
            .collect();
        let rhs: Vec<BigInt> = order
            .iter()
            .map(|&r| if trans.classes[r].is_all_ones() { BigInt::one() } else { BigInt::zero() })
            .collect();
        let solved = solve_sparse_integer(rows, rhs, "loop-equation level system")?;
        let y: Vec<ExactRational> = (0..m).map(|c| solved[slot[c]].clone()).collect();
        let scale = ExactRational::from_integer(q.clone()) * table.identity(k - 1)?;
        for (lambda, v) in trans.classes.into_iter().zip(y) {
            table.insert(lambda, v * &scale);
        }
    }
    Ok(table)
}

/// `(−1)^{n−1} Cat(n−1) / ∏_{j=−(n−1)}^{n−1} (N + j)`.
pub fn wg_full_cycle(n: usize, n_eval: &ExactRational) -> Result<ExactRational, WgError> {
    if n == 0 {
        return Err(WgError::InvalidArgument(alloc::string::String::from("full cycle needs n ≥ 1")));
    }
    let mut den = ExactRational::one();
    for j in -(n as i64 - 1)..=(n as i64 - 1) {
        let f = n_eval + ExactRational::from_integer(BigInt::from(j));
        if f.is_zero() {
            return Err(WgError::Pole(format!("N = {n_eval} is a pole of the {n}-cycle formula")));
        }
        den *= f;
    }
    let num = from_biguint(&catalan(n - 1));
    let v = num / den;
    Ok(if n.is_multiple_of(2) { -v } else { v })
}

/// A truncated path series and a rigorous bound on what was left out.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesEvaluation {
    pub partial: ExactRational,
    pub tail: ExactRational,
    /// Path counts per order `g = 0..=g_max`.
    pub counts: Vec<BigUint>,
}

impl SeriesEvaluation {
    /// Whether `|value − partial| ≤ tail`.
    pub fn brackets(&self, value: &ExactRational) -> bool {
        (value - &self.partial).abs() <= self.tail
    }
}

fn geometric_tail(lead: &ExactRational, r: &ExactRational, g_max: usize) -> ExactRational {
    // Σ_{g > g_max} lead·r^g
    lead * powi(r, g_max as i64 + 1) / (ExactRational::one() - r)
}

/// Partial sum of `(−1)^{|σ|} N^{n+|σ|} Wg(σ) = Σ_g |P(σ,|σ|+2g)| N^{−2g}`
/// through `g_max`, with the tail bounded by `|P| ≤ (2n)^{n+|σ|+2g}`.
pub fn wg_unitary_series(
    sigma: &Permutation,
    n_eval: &ExactRational,
    g_max: usize,
) -> Result<SeriesEvaluation, WgError> {
    let n = sigma.degree();
    let r = ExactRational::from_integer(BigInt::from(4 * n * n)) / (n_eval * n_eval);
    if r >= ExactRational::one() {
        return Err(WgError::TailNotGeometric(format!(
            "4n²/N² = {r} ≥ 1 for n = {n}, N = {n_eval}"
        )));
    }
    let mut counter = UnitaryPathCounter::new();
    let inv_n2 = ExactRational::one() / (n_eval * n_eval);
    let mut partial = ExactRational::zero();
    let mut weight = ExactRational::one();
    let mut counts = Vec::with_capacity(g_max + 1);
    for g in 0..=g_max {
        let c = counter.count(sigma, g)?;
        partial += from_biguint(&c) * &weight;
        weight *= &inv_n2;
        counts.push(c);
    }
    let lead = from_biguint(&num_traits::pow(BigUint::from(2 * n), n + sigma.norm()));
    Ok(SeriesEvaluation {
        partial,
        tail: geometric_tail(&lead, &r, g_max),
        counts,
    })
}

/// Partial sum of `(−1)^{|π|} N^{n+|π|} Wg^O(π) = Σ_g c_g (−1/N)^g`, where
/// `c_g = Σ_{g₁+2g₂=g} |P(π, g₁, g₂)|`, through `g_max`. The tail uses
/// `c_g ≤ (2n)^{n+|π|+g}`.
pub fn wg_orthogonal_series(
    pi: &Pairing,
    n_eval: &ExactRational,
    g_max: usize,
) -> Result<SeriesEvaluation, WgError> {
    let n = pi.half_size();
    let r = ExactRational::from_integer(BigInt::from(2 * n)) / n_eval.abs();
    if r >= ExactRational::one() {
        return Err(WgError::TailNotGeometric(format!(
            "2n/N = {r} ≥ 1 for n = {n}, N = {n_eval}"
        )));
    }
    let mut counter = OrthogonalPathCounter::new();
    let step = -(ExactRational::one() / n_eval);
    let mut partial = ExactRational::zero();
    let mut weight = ExactRational::one();
    let mut counts = Vec::with_capacity(g_max + 1);
    for g in 0..=g_max {
        let mut c = BigUint::zero();
        for g2 in 0..=g / 2 {
            c += counter.count(pi, g - 2 * g2, g2)?;
        }
        partial += from_biguint(&c) * &weight;
        weight *= &step;
        counts.push(c);
    }
    let lead = from_biguint(&num_traits::pow(BigUint::from(2 * n), n + pi.norm()));
    Ok(SeriesEvaluation {
        partial,
        tail: geometric_tail(&lead, &r, g_max),
        counts,
    })
}

/// Orthogonal Weingarten table from the pairing Gram matrix, `2n ≤ 8`.
///
/// `Σ_ρ N^{ℓ(π,ρ)} Wg^O(ρ) = [π = 𝔢]`, solved on coset-type class
/// functions (the solution is invariant under the hyperoctahedral group).
pub fn wg_orthogonal_gram(n: usize, n_eval: &ExactRational) -> Result<WgTableO, WgError> {
    check_cap("orthogonal Gram size 2n", 2 * n, ORTHOGONAL_GRAM_POINTS_CAP)?;
    if n_eval.is_zero() {
        return Err(WgError::Singular { context: "orthogonal Gram matrix at N = 0" });
    }
    let powers = n_powers(n_eval, n);
    let mut table = WgTable::new(Group::Orthogonal, n_eval.clone(), n);
    for k in 1..=n {
        let classes = Partition::all_of(k);
        let index: BTreeMap<&Partition, usize> = classes.iter().enumerate().map(|(i, l)| (l, i)).collect();
        let all: Vec<(Pairing, usize)> = Pairing::all(k)
            .into_iter()
            .map(|p| {
                let c = index[&p.coset_type()];
                (p, c)
            })
            .collect();
        let rows: Vec<Vec<ExactRational>> = classes
            .iter()
            .map(|mu| {
                let rep = Pairing::coset_representative(mu);
                let mut row = vec![ExactRational::zero(); classes.len()];
                for (rho, c) in &all {
                    row[*c] += &powers[rep.loops_with(rho).expect("same size")];
                }
                row
            })
            .collect();
        let rhs: Vec<ExactRational> = classes
            .iter()
            .map(|l| if l.is_all_ones() { ExactRational::one() } else { ExactRational::zero() })
            .collect();
        let x = solve(&rows, &rhs, "orthogonal Gram matrix")?;
        for (mu, v) in classes.into_iter().zip(x) {
            table.insert(mu, v);
        }
    }
    Ok(table)
}

/// Literal Gram solve over all `(2k−1)!!` pairings for `2n ≤ 6`, by class.
pub fn wg_orthogonal_gram_full(n: usize, n_eval: &ExactRational) -> Result<WgTableO, WgError> {
    check_cap("full orthogonal Gram size 2n", 2 * n, 6)?;
    let powers = n_powers(n_eval, n);
    let mut table = WgTable::new(Group::Orthogonal, n_eval.clone(), n);
    for k in 1..=n {
        let all = Pairing::all(k);
        let e = Pairing::canonical(k);
        let rows: Vec<Vec<ExactRational>> = all
            .iter()
            .map(|p| all.iter().map(|r| powers[p.loops_with(r).expect("same size")].clone()).collect())
            .collect();
        let rhs: Vec<ExactRational> = all
            .iter()
            .map(|p| if *p == e { ExactRational::one() } else { ExactRational::zero() })
            .collect();
        let x = solve(&rows, &rhs, "full orthogonal Gram matrix")?;
        for (p, v) in all.iter().zip(x) {
            let mu = p.coset_type();
            match table.get(&mu) {
                Some(prev) if *prev != v => {
                    return Err(WgError::InvalidArgument(format!(
                        "Gram solution is not a coset-type function at {p}"
                    )))
                }
                _ => table.insert(mu, v),
            }
        }
    }
    Ok(table)
}

/// Symplectic magnitudes `|Wg^{SP}_N| = |Wg^O_{2N}|` by coset type. The
/// sign is not resolved.
///
/// The classical identity evaluates the orthogonal function at `−2N`; the
/// two magnitudes agree to leading order in `1/N` but not exactly.
pub fn wg_symplectic(n: usize, n_eval: &ExactRational) -> Result<WgTableO, WgError> {
    let two_n = n_eval * ExactRational::from_integer(BigInt::from(2));
    let orth = wg_orthogonal_gram(n, &two_n)?;
    let mut table = WgTable::new(Group::Symplectic, n_eval.clone(), n);
    for (mu, v) in orth.values {
        table.insert(mu, v.abs());
    }
    Ok(table)
}

/// `‖x‖_γ = |x_∅| + sup_{λ ⊢ r, 1≤r≤n} N^{r+|λ|} γ^{|λ|} |Moeb(λ)|⁻¹ |x_λ|`.
/// Missing entries count as 0.
pub fn gamma_norm(x: &ClassVector, gamma: &ExactRational, n_eval: &ExactRational, n: usize) -> ExactRational {
    let empty = x.get(&Partition::empty()).map(|v| v.abs()).unwrap_or_else(ExactRational::zero);
    empty + gamma_seminorm(x, gamma, n_eval, n)
}

/// The sup part of [`gamma_norm`], without `|x_∅|`.
pub fn gamma_seminorm(x: &ClassVector, gamma: &ExactRational, n_eval: &ExactRational, n: usize) -> ExactRational {
    let mut best = ExactRational::zero();
    for (lambda, v) in x {
        let r = lambda.size();
        if r == 0 || r > n || v.is_zero() {
            continue;
        }
        let norm = lambda.norm();
        let w = powi(n_eval, (r + norm) as i64) * powi(gamma, norm as i64) * v.abs()
            / from_biguint(&moebius_abs(lambda));
        if w > best {
            best = w;
        }
    }
    best
}

/// One application of `T̃` on class vectors over `𝔓_n`:
/// `(T̃x)_∅ = x_∅` and, for `λ ⊢ k ≥ 1`,
/// `(T̃x)_λ = N⁻¹ Wg(id_{k−1}) [λ = 1^k] − N⁻¹ Σ_{i<k} x_{(i k)σ_λ}`.
/// The forcing uses the true values from `wg` (levels `0..n−1`).
pub fn apply_t_tilde(x: &ClassVector, wg: &WgTableU, n: usize) -> Result<ClassVector, WgError> {
    let n_eval = &wg.n_eval;
    let inv_n = ExactRational::one() / n_eval;
    let mut out = ClassVector::new();
    out.insert(
        Partition::empty(),
        x.get(&Partition::empty()).cloned().unwrap_or_else(ExactRational::zero),
    );
    for k in 1..=n {
        let trans = class_transitions(k);
        for (r, lambda) in trans.classes.iter().enumerate() {
            let mut acc = ExactRational::zero();
            for &(c, mult) in &trans.rows[r] {
                if let Some(v) = x.get(&trans.classes[c]) {
                    acc += v * ExactRational::from_integer(BigInt::from(mult));
                }
            }
            let mut value = -(acc * &inv_n);
            if lambda.is_all_ones() {
                value += wg.identity(k - 1)? * &inv_n;
            }
            out.insert(lambda.clone(), value);
        }
    }
    Ok(out)
}
