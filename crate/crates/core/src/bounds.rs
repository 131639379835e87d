//! Finite-instance certification of the quantitative Weingarten bounds.
//!
//! Every check produces [`BoundCheckResult`] rows of the form `lhs ≤ rhs`.
//! Exact sides are compared exactly. Irrational constants enter through
//! rational enclosures chosen so that a row is only marked satisfied when the
//! true inequality holds: the `rhs` is always a certified lower bound of the
//! true right-hand side. Hypothesis gates are exact integer comparisons.
//!
//! Monte Carlo backed rows carry `estimate ± 5 SE` on the side that makes
//! the check conservative; their seeds are explicit parameters.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use crate::catalan::{catalan_quotient_max, moebius, moebius_abs};
use crate::error::WgError;
use crate::exact::{
    apply_t_tilde, gamma_norm, gamma_seminorm, wg_orthogonal_gram, wg_symplectic, wg_unitary_recursion,
    ClassVector, WgTableU,
};
use crate::graph::{OrthogonalPathCounter, UnitaryPathCounter};
use crate::interval::{e_interval, half_power_interval, ln_interval, sqrt_interval, DEFAULT_DIGITS};
use crate::pairing::Pairing;
use crate::partition::Partition;
use crate::process::{
    estimate_l_power_sum, estimate_l_power_sum_orthogonal, estimate_ti_tail, estimate_time_to_halve, is_large,
    LExponent,
};
use crate::rational::{from_bigint, from_biguint, from_int, powi, to_f64, ExactRational};
use crate::rng::{stream_rng, uniform_u64_below};

/// Largest degree for the exact path-ratio checks.
pub const PATH_CHECK_DEGREE_CAP: usize = 6;
/// Largest half-size for the orthogonal path-ratio checks (`2n ≤ 8`).
pub const PATH_CHECK_ORTHOGONAL_CAP: usize = 4;
/// Standard errors added to Monte Carlo estimates.
pub const MC_SIGMAS: f64 = 5.0;

/// One side of a bound check.
#[derive(Clone, Debug, PartialEq)]
pub enum BoundValue {
    Exact(ExactRational),
    Float(f64),
    /// A vacuous side (`+∞`), e.g. a geometric bound outside its range.
    Infinite,
}

impl BoundValue {
    /// The exact rational value; floats convert exactly. `None` for `+∞`
    /// and NaN.
    pub fn to_exact(&self) -> Option<ExactRational> {
        match self {
            BoundValue::Exact(r) => Some(r.clone()),
            BoundValue::Float(f) => ExactRational::from_float(*f),
            BoundValue::Infinite => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            BoundValue::Exact(r) => to_f64(r),
            BoundValue::Float(f) => *f,
            BoundValue::Infinite => f64::INFINITY,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, BoundValue::Exact(_))
    }
}

/// `lhs ≤ rhs`, exactly. NaN never compares.
pub fn value_le(lhs: &BoundValue, rhs: &BoundValue) -> bool {
    if let BoundValue::Float(f) = lhs {
        if f.is_nan() {
            return false;
        }
    }
    if let BoundValue::Float(f) = rhs {
        if f.is_nan() {
            return false;
        }
    }
    match (lhs, rhs) {
        (_, BoundValue::Infinite) => true,
        (BoundValue::Infinite, _) => false,
        _ => match (lhs.to_exact(), rhs.to_exact()) {
            (Some(a), Some(b)) => a.cmp(&b) != Ordering::Greater,
            _ => false,
        },
    }
}

/// A single certified inequality `lhs ≤ rhs`.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundCheckResult {
    /// Stable identifier of the inequality family.
    pub claim: String,
    pub n: usize,
    /// Evaluation point, when the claim has one.
    pub n_eval: Option<ExactRational>,
    /// The class (cycle type or coset type), or empty.
    pub class: String,
    pub lhs: BoundValue,
    pub rhs: BoundValue,
    pub satisfied: bool,
    pub hypotheses_met: bool,
    /// `rhs / lhs`, when both are finite and `lhs > 0`.
    pub slack: Option<f64>,
    /// Extra parameters and diagnostics, `key=value` separated by `;`.
    pub detail: String,
}

impl BoundCheckResult {
    pub fn new(
        claim: &str,
        n: usize,
        n_eval: Option<&ExactRational>,
        class: String,
        lhs: BoundValue,
        rhs: BoundValue,
        hypotheses_met: bool,
        detail: String,
    ) -> Self {
        let satisfied = value_le(&lhs, &rhs);
        let slack = slack_of(&lhs, &rhs);
        Self {
            claim: claim.into(),
            n,
            n_eval: n_eval.cloned(),
            class,
            lhs,
            rhs,
            satisfied,
            hypotheses_met,
            slack,
            detail,
        }
    }

    /// A row fails the build only when its hypotheses hold.
    pub fn is_failure(&self) -> bool {
        self.hypotheses_met && !self.satisfied
    }
}

fn slack_of(lhs: &BoundValue, rhs: &BoundValue) -> Option<f64> {
    let l = lhs.to_exact()?;
    let r = rhs.to_exact()?;
    if !l.is_positive() {
        return None;
    }
    Some(to_f64(&(r / l)))
}

/// Whether every hypothesis-met row is satisfied.
pub fn all_pass(results: &[BoundCheckResult]) -> bool {
    results.iter().all(|r| !r.is_failure())
}

// ---------------------------------------------------------------------------
// constants

fn int(v: u64) -> ExactRational {
    from_bigint(BigInt::from(v))
}

fn pow10(k: u32) -> ExactRational {
    from_bigint(num_traits::pow(BigInt::from(10u32), k as usize))
}

/// Lower enclosure of `6√8 · 10⁶`.
fn main_constant_lo() -> ExactRational {
    let sqrt8 = sqrt_interval(&int(8), DEFAULT_DIGITS).expect("positive").lo;
    int(6) * sqrt8 * pow10(6)
}

fn six_sqrt8_lo() -> ExactRational {
    int(6) * sqrt_interval(&int(8), DEFAULT_DIGITS).expect("positive").lo
}

/// `n^{k/2}` enclosed.
fn half_pow_lo(n: u64, k: u32) -> ExactRational {
    half_power_interval(n, k, DEFAULT_DIGITS).lo
}

fn half_pow_hi(n: u64, k: u32) -> ExactRational {
    half_power_interval(n, k, DEFAULT_DIGITS).hi
}

fn factorial(k: usize) -> ExactRational {
    from_biguint(&(1..=k as u64).fold(BigUint::one(), |acc, v| acc * v))
}

/// Lower enclosure of the path-count constant `C_s = e^{s²} (16e)^s s!`.
pub fn small_constant_lo(s: usize) -> ExactRational {
    let e = e_interval(DEFAULT_DIGITS).lo;
    powi(&e, (s * s + s) as i64) * powi(&int(16), s as i64) * factorial(s)
}

/// `x/(1 − c)` style geometric bound, `+∞` once `c ≥ 1`.
fn inverse_or_infinite(denominator: ExactRational) -> BoundValue {
    if denominator.is_positive() {
        BoundValue::Exact(denominator.recip())
    } else {
        BoundValue::Infinite
    }
}

fn require_positive(n_eval: &ExactRational) -> Result<(), WgError> {
    if !n_eval.is_positive() {
        return Err(WgError::InvalidArgument(format!("N must be positive, got {n_eval}")));
    }
    Ok(())
}

/// `N^{n+|λ|} Wg(λ) / Moeb(λ)`.
fn normalized_ratio(table: &WgTableU, lambda: &Partition) -> Result<ExactRational, WgError> {
    let wg = table.value(lambda)?;
    let scale = powi(&table.n_eval, (lambda.size() + lambda.norm()) as i64);
    Ok(wg * scale / from_bigint(moebius(lambda)))
}

// ---------------------------------------------------------------------------
// unitary value bounds

/// Uniform large-`N` bounds for every class of `S_n`:
///
/// * `main-upper`: `N^{n+|σ|}Wg/Moeb ≤ 1/(1 − C n³/N²)`, `C = 6√8·10⁶`,
///   gated by `N⁴ ≥ C² n⁶ = 288·10¹² n⁶`;
/// * `cm-lower`: `1/(1 − (n−1)/N²) ≤ N^{n+|σ|}Wg/Moeb`,
/// * `cm-upper`: `N^{n+|σ|}Wg/Moeb ≤ 1/(1 − 6n^{7/2}/N²)`, both gated by
///   `N⁴ ≥ 36 n⁷`.
pub fn check_theorem_main(n: usize, n_eval: &ExactRational) -> Result<Vec<BoundCheckResult>, WgError> {
    require_positive(n_eval)?;
    let table = wg_unitary_recursion(n, n_eval)?;
    let nn = n as u64;
    let n2 = n_eval * n_eval;
    let n4 = &n2 * &n2;
    let gate_main = n4 >= int(288) * pow10(12) * powi(&int(nn), 6);
    let gate_cm = n4 >= int(36) * powi(&int(nn), 7);
    let upper = inverse_or_infinite(ExactRational::one() - main_constant_lo() * powi(&int(nn), 3) / &n2);
    let cm_lower = inverse_or_infinite(ExactRational::one() - int(nn.saturating_sub(1)) / &n2);
    let cm_upper = inverse_or_infinite(ExactRational::one() - int(6) * half_pow_lo(nn, 7) / &n2);
    let mut out = Vec::new();
    for lambda in Partition::all_of(n) {
        let ratio = BoundValue::Exact(normalized_ratio(&table, &lambda)?);
        let class = lambda.to_text();
        out.push(BoundCheckResult::new(
            "main-upper",
            n,
            Some(n_eval),
            class.clone(),
            ratio.clone(),
            upper.clone(),
            gate_main,
            String::new(),
        ));
        out.push(BoundCheckResult::new(
            "cm-lower",
            n,
            Some(n_eval),
            class.clone(),
            cm_lower.clone(),
            ratio.clone(),
            gate_cm,
            String::new(),
        ));
        out.push(BoundCheckResult::new(
            "cm-upper",
            n,
            Some(n_eval),
            class,
            ratio,
            cm_upper.clone(),
            gate_cm,
            String::new(),
        ));
    }
    Ok(out)
}

/// Orthogonal and symplectic uniform bounds for every coset type of
/// `P₂(2n)`: `N^{n+|π|}|Wg(π)|/|Moeb(π)| ≤ 1/(1 − 10⁶ n^{3/2}/N)²`, gated
/// by `N² ≥ 4·10¹² n³`. The orthogonal rows use the signed ratio
/// (`Wg^O / Moeb`); the symplectic rows use magnitudes, their sign being
/// unresolved.
pub fn check_theorem_orthogonal(n: usize, n_eval: &ExactRational) -> Result<Vec<BoundCheckResult>, WgError> {
    require_positive(n_eval)?;
    let orth = wg_orthogonal_gram(n, n_eval)?;
    let symp = wg_symplectic(n, n_eval)?;
    let nn = n as u64;
    let gate = n_eval * n_eval >= int(4) * pow10(12) * powi(&int(nn), 3);
    let c = pow10(6) * half_pow_lo(nn, 3) / n_eval;
    let one_minus = ExactRational::one() - c;
    let rhs = inverse_or_infinite(&one_minus * &one_minus);
    let rhs = if one_minus.is_positive() { rhs } else { BoundValue::Infinite };
    let mut out = Vec::new();
    for mu in Partition::all_of(n) {
        let scale = powi(n_eval, (mu.size() + mu.norm()) as i64);
        let o = orth.value(&mu)? * &scale / from_bigint(moebius(&mu));
        out.push(BoundCheckResult::new(
            "orth",
            n,
            Some(n_eval),
            mu.to_text(),
            BoundValue::Exact(o),
            rhs.clone(),
            gate,
            String::new(),
        ));
        let s = symp.value(&mu)? * &scale / from_biguint(&moebius_abs(&mu));
        out.push(BoundCheckResult::new(
            "orth-sp",
            n,
            Some(n_eval),
            mu.to_text(),
            BoundValue::Exact(s),
            rhs.clone(),
            gate,
            String::from("sign=±"),
        ));
    }
    Ok(out)
}

/// Small-permutation bound for every class `λ ⊢ k`, `k ≤ n_max`, with
/// `|λ| ≤ norm_cap`, at each `N` of the schedule:
/// `|N^{k+|σ|}Wg(σ) − Moeb(σ)| ≤ 48e² C_s k²/(N² − 48e k²)` with
/// `C_s = e^{s²}(16e)^s s!`, gated by `N > √48 e k`. The detail column
/// records the empirical constant `lhs·(N² − 48e k²)/k²`.
pub fn check_small_perm(
    n_max: usize,
    norm_cap: usize,
    schedule: &[ExactRational],
) -> Result<Vec<BoundCheckResult>, WgError> {
    let e = e_interval(DEFAULT_DIGITS);
    let e_mid = to_f64(&e.lo);
    let mut out = Vec::new();
    for n_eval in schedule {
        require_positive(n_eval)?;
        let table = wg_unitary_recursion(n_max, n_eval)?;
        let n2 = n_eval * n_eval;
        for k in 1..=n_max {
            let kk = int(k as u64);
            let k2 = &kk * &kk;
            let gate = n2 > int(48) * &e.hi * &e.hi * &k2;
            let denominator = &n2 - int(48) * &e.lo * &k2;
            for lambda in Partition::all_of(k) {
                let s = lambda.norm();
                if s > norm_cap {
                    continue;
                }
                let wg = table.value(&lambda)?;
                let scaled = wg * powi(n_eval, (k + s) as i64);
                let lhs = (scaled - from_bigint(moebius(&lambda))).abs();
                let rhs = if denominator.is_positive() {
                    let constant = int(48) * &e.lo * &e.lo * small_constant_lo(s);
                    BoundValue::Exact(constant * &k2 / &denominator)
                } else {
                    BoundValue::Infinite
                };
                let empirical = to_f64(&lhs) * (to_f64(&n2) - 48.0 * e_mid * (k * k) as f64) / (k * k) as f64;
                out.push(BoundCheckResult::new(
                    "small",
                    k,
                    Some(n_eval),
                    lambda.to_text(),
                    BoundValue::Exact(lhs),
                    rhs,
                    gate,
                    format!("norm={s};c_emp={empirical:e}"),
                ));
            }
        }
    }
    Ok(out)
}

/// Logarithmic bound for classes `λ ⊢ n` with `|λ| ≥ 4`:
/// `ln(N^{n+|σ|}|Wg|/|Moeb|) ≤ 25 n^{5/2}|σ|/N² + ln|σ| + 2`, gated by
/// `N⁴ ≥ 10²⁰ n⁵`. The lhs column holds the upper end of an outward-rounded
/// enclosure of the logarithm and the rhs column the lower end of the
/// enclosure of the bound, so `satisfied` is rigorous. A nonpositive signed
/// ratio is reported as a failing row.
pub fn check_log_bound(n: usize, n_eval: &ExactRational) -> Result<Vec<BoundCheckResult>, WgError> {
    require_positive(n_eval)?;
    let table = wg_unitary_recursion(n, n_eval)?;
    let nn = n as u64;
    let n2 = n_eval * n_eval;
    let gate = &n2 * &n2 >= pow10(20) * powi(&int(nn), 5);
    let mut out = Vec::new();
    for lambda in Partition::all_of(n) {
        let s = lambda.norm();
        if s < 4 {
            continue;
        }
        let ratio = normalized_ratio(&table, &lambda)?;
        let rhs = int(25) * half_pow_lo(nn, 5) * int(s as u64) / &n2
            + ln_interval(&int(s as u64), DEFAULT_DIGITS)?.lo
            + int(2);
        let (lhs, detail) = if ratio.is_positive() {
            let ln = ln_interval(&ratio, DEFAULT_DIGITS)?;
            let mid = to_f64(&ln.lo);
            (BoundValue::Exact(ln.hi), format!("ln_ratio={mid:e}"))
        } else {
            (BoundValue::Infinite, format!("sign anomaly: ratio={ratio}"))
        };
        out.push(BoundCheckResult::new(
            "log",
            n,
            Some(n_eval),
            lambda.to_text(),
            lhs,
            BoundValue::Exact(rhs),
            gate,
            detail,
        ));
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// path-count bounds

/// Exact path-count ratios against their bounds, for every class of `S_n`
/// (`n ≤ 6`) and every coset type of `P₂(2n)` (`n ≤ 4`):
///
/// * `path-ratio-mc`: `|P(σ,|σ|+2)|/|P(σ,|σ|)| ≤ 6√8 n (Σ_j E[L_j^{3/2}] + 5 SE)`;
/// * `path-ratio`: the same ratio `≤ 6√8·10⁶ n³`;
/// * `path-genus`: `|P(σ,|σ|+4)|/|P(σ,|σ|)| ≤ (6√8·10⁶ n³)²`;
/// * `path-small`: `|P(σ,|σ|+2g)| ≤ C_{|σ|} (√48 e n)^{2g}`, `g = 1, 2`;
/// * `orth-minor-mc`, `orth-major-mc`: the one-defect orthogonal ratios
///   against `Σ_{j≥1} E[L_j] + 5 SE` and `6√8 n (Σ_{j≥1} E[L_j^{3/2}] + 5 SE)`
///   under the orthogonal process;
/// * `orth-minor`, `orth-major`: against `10⁶ n^{3/2}` and `6√8·10⁶ n³`;
/// * `orth-genus`: `|P(π,g₁,g₂)|/|P(π,0,0)| ≤ (10⁶ n)^{3g₁/2+3g₂}`,
///   `g₁ + g₂ = 2`.
pub fn check_path_ratio_bounds(n: usize, samples: u64, seed: u64) -> Result<Vec<BoundCheckResult>, WgError> {
    if n > PATH_CHECK_DEGREE_CAP {
        return Err(WgError::CapExceeded {
            what: "path check degree n",
            value: n,
            cap: PATH_CHECK_DEGREE_CAP,
        });
    }
    let nn = n as u64;
    let c_main = main_constant_lo();
    let c_n3 = &c_main * powi(&int(nn), 3);
    let six_sqrt8_n = six_sqrt8_lo() * int(nn);
    let e_lo = e_interval(DEFAULT_DIGITS).lo;
    let small_base = int(48) * &e_lo * &e_lo * int(nn * nn);
    let mut counter = UnitaryPathCounter::new();
    let mut out = Vec::new();
    for lambda in Partition::all_of(n) {
        let sigma = lambda.representative();
        let s = lambda.norm();
        let c0 = from_biguint(&counter.count(&sigma, 0)?);
        let c1 = from_biguint(&counter.count(&sigma, 1)?);
        let c2 = from_biguint(&counter.count(&sigma, 2)?);
        let ratio = BoundValue::Exact(&c1 / &c0);
        let class = lambda.to_text();
        let mc = estimate_l_power_sum(&lambda, LExponent::ThreeHalves, samples, seed)?;
        let mc_rhs = &six_sqrt8_n * ExactRational::from_float(mc.upper(MC_SIGMAS)).unwrap_or_else(ExactRational::zero);
        out.push(BoundCheckResult::new(
            "path-ratio-mc",
            n,
            None,
            class.clone(),
            ratio.clone(),
            BoundValue::Exact(mc_rhs),
            true,
            format!("seed={seed};samples={samples};l32_sum={};se={}", mc.estimate, mc.standard_error),
        ));
        out.push(BoundCheckResult::new(
            "path-ratio",
            n,
            None,
            class.clone(),
            ratio,
            BoundValue::Exact(c_n3.clone()),
            true,
            String::new(),
        ));
        out.push(BoundCheckResult::new(
            "path-genus",
            n,
            None,
            class.clone(),
            BoundValue::Exact(&c2 / &c0),
            BoundValue::Exact(&c_n3 * &c_n3),
            true,
            String::from("g=2"),
        ));
        for (g, count) in [(1usize, &c1), (2, &c2)] {
            out.push(BoundCheckResult::new(
                "path-small",
                n,
                None,
                class.clone(),
                BoundValue::Exact(count.clone()),
                BoundValue::Exact(small_constant_lo(s) * powi(&small_base, g as i64)),
                true,
                format!("g={g}"),
            ));
        }
    }
    if n <= PATH_CHECK_ORTHOGONAL_CAP {
        out.extend(orthogonal_path_rows(n, samples, seed)?);
    }
    Ok(out)
}

fn orthogonal_path_rows(n: usize, samples: u64, seed: u64) -> Result<Vec<BoundCheckResult>, WgError> {
    let nn = n as u64;
    let six_sqrt8_n = six_sqrt8_lo() * int(nn);
    let c_n3 = main_constant_lo() * powi(&int(nn), 3);
    let minor_bound = pow10(6) * half_pow_lo(nn, 3);
    let mut counter = OrthogonalPathCounter::new();
    let mut out = Vec::new();
    for mu in Partition::all_of(n) {
        let pi = Pairing::coset_representative(&mu);
        let class = mu.to_text();
        let d00 = from_biguint(&counter.count(&pi, 0, 0)?);
        let minor = BoundValue::Exact(from_biguint(&counter.count(&pi, 1, 0)?) / &d00);
        let major = BoundValue::Exact(from_biguint(&counter.count(&pi, 0, 1)?) / &d00);
        let l1 = estimate_l_power_sum_orthogonal(&mu, LExponent::One, 1, samples, seed)?;
        let l32 = estimate_l_power_sum_orthogonal(&mu, LExponent::ThreeHalves, 1, samples, seed)?;
        let mc_detail = format!("seed={seed};samples={samples}");
        out.push(BoundCheckResult::new(
            "orth-minor-mc",
            n,
            None,
            class.clone(),
            minor.clone(),
            BoundValue::Float(l1.upper(MC_SIGMAS)),
            true,
            format!("{mc_detail};l_sum={};se={}", l1.estimate, l1.standard_error),
        ));
        let major_mc = &six_sqrt8_n * ExactRational::from_float(l32.upper(MC_SIGMAS)).unwrap_or_else(ExactRational::zero);
        out.push(BoundCheckResult::new(
            "orth-major-mc",
            n,
            None,
            class.clone(),
            major.clone(),
            BoundValue::Exact(major_mc),
            true,
            format!("{mc_detail};l32_sum={};se={}", l32.estimate, l32.standard_error),
        ));
        out.push(BoundCheckResult::new(
            "orth-minor",
            n,
            None,
            class.clone(),
            minor,
            BoundValue::Exact(minor_bound.clone()),
            true,
            String::new(),
        ));
        out.push(BoundCheckResult::new(
            "orth-major",
            n,
            None,
            class.clone(),
            major,
            BoundValue::Exact(c_n3.clone()),
            true,
            String::new(),
        ));
        for (g1, g2) in [(2usize, 0usize), (1, 1), (0, 2)] {
            let lhs = from_biguint(&counter.count(&pi, g1, g2)?) / &d00;
            let rhs = half_pow_lo(1_000_000 * nn, (3 * g1 + 6 * g2) as u32);
            out.push(BoundCheckResult::new(
                "orth-genus",
                n,
                None,
                class.clone(),
                BoundValue::Exact(lhs),
                BoundValue::Exact(rhs),
                true,
                format!("g1={g1};g2={g2}"),
            ));
        }
    }
    Ok(out)
}

/// `max_j Cat(k−1)/(Cat(j−1)Cat(k−j−1)) ≤ 6 k^{3/2}` for `2 ≤ k ≤ k_max`.
pub fn check_catalan_quotient(k_max: usize) -> Result<Vec<BoundCheckResult>, WgError> {
    let mut out = Vec::new();
    for k in 2..=k_max {
        out.push(BoundCheckResult::new(
            "catalan-quotient",
            k,
            None,
            String::new(),
            BoundValue::Exact(catalan_quotient_max(k)?),
            BoundValue::Exact(int(6) * half_pow_lo(k as u64, 3)),
            true,
            String::new(),
        ));
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// process statistics

/// Monte Carlo checks of the process statistics under `WP(λ)`:
///
/// * `l-power-sum`: `Σ_j E[L_j^{3/2}] + 5 SE ≤ 10⁶ L₀^{1/2} n^{3/2}`;
/// * `time-to-halve`: `E[T] + 5 SE ≤ 10⁴ (n/√L₀)(1 + ln(3n/2L₀))²`, with
///   hypotheses `n > 6`, `L₀ ≥ 6`;
/// * `ti-tail`: `P(T_{i+1} − T_i > 5t) − 5 SE ≤ (1 − 10⁻³(k−i)√L₀/n)^t`
///   for every `i < k` and every `t` in `tail_times`, hypothesis `L₀ ≥ 6`.
pub fn check_process_bounds(
    lambda: &Partition,
    samples: u64,
    seed: u64,
    tail_times: &[u64],
) -> Result<Vec<BoundCheckResult>, WgError> {
    let n = lambda.size();
    let l0 = lambda.largest();
    let (nn, ll) = (n as u64, l0 as u64);
    let class = lambda.to_text();
    let mut out = Vec::new();

    let l32 = estimate_l_power_sum(lambda, LExponent::ThreeHalves, samples, seed)?;
    out.push(BoundCheckResult::new(
        "l-power-sum",
        n,
        None,
        class.clone(),
        BoundValue::Float(l32.upper(MC_SIGMAS)),
        BoundValue::Exact(pow10(6) * half_pow_lo(ll, 1) * half_pow_lo(nn, 3)),
        true,
        format!("seed={seed};samples={samples};estimate={};se={}", l32.estimate, l32.standard_error),
    ));

    let t = estimate_time_to_halve(lambda, samples, seed)?;
    let log_arg = int(3 * nn) / int(2 * ll);
    let one_plus_log = ExactRational::one() + ln_interval(&log_arg, DEFAULT_DIGITS)?.lo;
    let halve_rhs = pow10(4) * int(nn) / half_pow_hi(ll, 1) * &one_plus_log * &one_plus_log;
    out.push(BoundCheckResult::new(
        "time-to-halve",
        n,
        None,
        class.clone(),
        BoundValue::Float(t.upper(MC_SIGMAS)),
        BoundValue::Exact(halve_rhs),
        t.hypotheses_met,
        format!("seed={seed};samples={samples};estimate={};se={}", t.estimate, t.standard_error),
    ));

    let k = lambda.parts().iter().filter(|&&p| is_large(p, l0)).count();
    for i in 0..k {
        let base = ExactRational::one()
            - int((k - i) as u64) * half_pow_hi(ll, 1) / (pow10(3) * int(nn));
        let base = if base.is_negative() { ExactRational::zero() } else { base };
        for &tt in tail_times {
            let r = estimate_ti_tail(lambda, i, tt, samples, seed)?;
            out.push(BoundCheckResult::new(
                "ti-tail",
                n,
                None,
                class.clone(),
                BoundValue::Float(r.lower(MC_SIGMAS)),
                BoundValue::Exact(powi(&base, tt as i64)),
                r.hypotheses_met,
                format!("i={i};t={tt};seed={seed};samples={samples};estimate={};se={}", r.estimate, r.standard_error),
            ));
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// energy estimate

fn random_unit<R: rand_core::RngCore>(rng: &mut R, lo: i64, hi: i64, steps: u64) -> ExactRational {
    // uniform on the grid lo + (hi − lo)·j/steps, j = 0..=steps
    let j = uniform_u64_below(rng, steps + 1);
    from_int(lo) + from_int(hi - lo) * ExactRational::new(BigInt::from(j), BigInt::from(steps))
}

/// A class vector at the natural scale `x_λ = u_λ |Moeb(λ)| N^{−(r+|λ|)}`.
fn natural_vector<R: rand_core::RngCore>(
    rng: &mut R,
    n: usize,
    n_eval: &ExactRational,
    empty: ExactRational,
    mut draw: impl FnMut(&mut R) -> ExactRational,
) -> ClassVector {
    let mut x = ClassVector::new();
    x.insert(Partition::empty(), empty);
    for r in 1..=n {
        for lambda in Partition::all_of(r) {
            let u = draw(rng);
            let v = u * from_biguint(&moebius_abs(&lambda)) / powi(n_eval, (r + lambda.norm()) as i64);
            x.insert(lambda, v);
        }
    }
    x
}

/// One step of the energy estimate
/// `‖T̃x‖_γ ≤ (γ + 12 n^{5/2}/N²)‖x‖_γ + 1 + n²/(50N²)`, exactly.
///
/// Rows `energy` use the Weingarten vector and `random_count` seeded random
/// vectors with `x_∅ = 1` and sup part at least 1, the regime of the fixed
/// point (for `x = e_∅` the literal inequality is false). Rows
/// `energy-seminorm` check the same inequality for the sup part alone on
/// random vectors of either sign and any size up to twice the natural scale.
/// Hypotheses: `γ ∈ (1/2, 1)` and `100√48 e n < N`.
pub fn check_energy_estimate(
    n: usize,
    n_eval: &ExactRational,
    gammas: &[ExactRational],
    random_count: u64,
    seed: u64,
) -> Result<Vec<BoundCheckResult>, WgError> {
    require_positive(n_eval)?;
    let table = wg_unitary_recursion(n, n_eval)?;
    let e_hi = e_interval(DEFAULT_DIGITS).hi;
    let nn = n as u64;
    let n2 = n_eval * n_eval;
    let gate_n = n2 > int(480_000) * &e_hi * &e_hi * int(nn * nn);
    let growth = int(12) * half_pow_lo(nn, 5) / &n2;
    let forcing = ExactRational::one() + int(nn * nn) / (int(50) * &n2);
    let half = ExactRational::new(BigInt::one(), BigInt::from(2));

    let mut vectors: Vec<(String, ClassVector)> = Vec::new();
    let w: ClassVector = table.as_vector().into_iter().filter(|(k, _)| k.size() <= n).collect();
    vectors.push((String::from("vector=wg"), w));
    for run in 0..random_count {
        let mut rng = stream_rng(seed, run);
        let x = natural_vector(&mut rng, n, n_eval, ExactRational::one(), |rng| {
            let sign = if uniform_u64_below(rng, 2) == 0 { 1 } else { -1 };
            random_unit(rng, 1, 2, 1000) * from_int(sign)
        });
        vectors.push((format!("vector=random;seed={seed};run={run}"), x));
    }
    let mut seminorm_vectors: Vec<(String, ClassVector)> = Vec::new();
    for run in 0..random_count {
        let mut rng = stream_rng(seed ^ 0x5eed, run);
        let empty = random_unit(&mut rng, -2, 2, 1000);
        let x = natural_vector(&mut rng, n, n_eval, empty, |rng| random_unit(rng, -2, 2, 1000));
        seminorm_vectors.push((format!("vector=random;seed={};run={run}", seed ^ 0x5eed), x));
    }

    let mut out = Vec::new();
    for gamma in gammas {
        let gate = gate_n && gamma > &half && gamma < &ExactRational::one();
        let factor = gamma + &growth;
        for (label, x) in &vectors {
            let tx = apply_t_tilde(x, &table, n)?;
            let lhs = gamma_norm(&tx, gamma, n_eval, n);
            let rhs = &factor * gamma_norm(x, gamma, n_eval, n) + &forcing;
            out.push(BoundCheckResult::new(
                "energy",
                n,
                Some(n_eval),
                String::new(),
                BoundValue::Exact(lhs),
                BoundValue::Exact(rhs),
                gate,
                format!("gamma={gamma};{label}"),
            ));
        }
        for (label, x) in &seminorm_vectors {
            let tx = apply_t_tilde(x, &table, n)?;
            let lhs = gamma_seminorm(&tx, gamma, n_eval, n);
            let rhs = &factor * gamma_seminorm(x, gamma, n_eval, n) + &forcing;
            out.push(BoundCheckResult::new(
                "energy-seminorm",
                n,
                Some(n_eval),
                String::new(),
                BoundValue::Exact(lhs),
                BoundValue::Exact(rhs),
                gate,
                format!("gamma={gamma};{label}"),
            ));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn comparisons_are_exact() {
        let a = BoundValue::Exact(ratio(1, 3));
        let b = BoundValue::Float(0.3333333333333333);
        assert!(!value_le(&a, &b));
        assert!(value_le(&b, &a));
        assert!(value_le(&a, &BoundValue::Infinite));
        assert!(!value_le(&BoundValue::Infinite, &a));
        assert!(!value_le(&BoundValue::Float(f64::NAN), &a));
    }

    #[test]
    fn main_bound_at_n_one_is_tight() {
        let rows = check_theorem_main(1, &from_int(100_000)).unwrap();
        assert_eq!(rows.len(), 3);
        assert_eq!(rows[0].lhs, BoundValue::Exact(ratio(1, 1)));
        assert!(rows.iter().all(|r| r.satisfied && r.hypotheses_met));
    }

    #[test]
    fn main_bound_small_n() {
        for n in 2..=4 {
            let rows = check_theorem_main(n, &from_int(100_000)).unwrap();
            assert_eq!(rows.len(), 3 * Partition::all_of(n).len());
            assert!(rows.iter().all(|r| r.hypotheses_met && r.satisfied), "n = {n}");
        }
        // gate at n = 4 needs N ≥ √C·8 ≈ 32960
        let rows = check_theorem_main(4, &from_int(32_000)).unwrap();
        assert!(rows.iter().filter(|r| r.claim == "main-upper").all(|r| !r.hypotheses_met));
        let rows = check_theorem_main(4, &from_int(40_000)).unwrap();
        assert!(rows.iter().all(|r| r.hypotheses_met && r.satisfied));
    }

    #[test]
    fn vacuous_bounds_are_infinite() {
        let rows = check_theorem_main(3, &from_int(10)).unwrap();
        let up = rows.iter().find(|r| r.claim == "main-upper").unwrap();
        assert_eq!(up.rhs, BoundValue::Infinite);
        assert!(up.satisfied && !up.hypotheses_met);
        assert!(up.slack.is_none());
    }

    #[test]
    fn orthogonal_bound() {
        let rows = check_theorem_orthogonal(1, &from_int(10_000_000)).unwrap();
        assert_eq!(rows[0].lhs, BoundValue::Exact(ratio(1, 1)));
        let rows = check_theorem_orthogonal(2, &from_int(10_000_000)).unwrap();
        assert_eq!(rows.len(), 4);
        assert!(rows.iter().all(|r| r.hypotheses_met && r.satisfied));
        let rows = check_theorem_orthogonal(2, &from_int(5_000_000)).unwrap();
        assert!(rows.iter().all(|r| !r.hypotheses_met && r.satisfied));
    }

    #[test]
    fn small_perm_rows() {
        let rows = check_small_perm(6, 2, &[from_int(1000)]).unwrap();
        assert!(rows.iter().all(|r| r.hypotheses_met && r.satisfied));
        let one = rows.iter().find(|r| r.n == 1).unwrap();
        assert_eq!(one.lhs, BoundValue::Exact(ratio(0, 1)));
        assert!(rows.iter().all(|r| r.detail.contains("c_emp=")));
        let rows = check_small_perm(10, 1, &[from_int(500)]).unwrap();
        assert!(rows.iter().any(|r| r.n == 10 && r.class == "2,1,1,1,1,1,1,1,1"));
        assert!(all_pass(&rows) && rows.iter().all(|r| r.satisfied));
        // below √48·e·n the gate is off
        let rows = check_small_perm(3, 0, &[from_int(40)]).unwrap();
        assert!(rows.iter().any(|r| !r.hypotheses_met));
    }

    #[test]
    fn small_constant_is_one_at_zero() {
        assert_eq!(small_constant_lo(0), ratio(1, 1));
        assert!(small_constant_lo(1) > int(118));
    }

    #[test]
    fn log_bound_rows() {
        let rows = check_log_bound(5, &from_int(10_000)).unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].class, "5");
        assert!(rows[0].satisfied);
        assert!(!rows[0].hypotheses_met);
        let rows = check_log_bound(6, &from_int(10_000)).unwrap();
        assert!(rows.iter().any(|r| r.class == "3,3"));
        assert!(rows.iter().all(|r| r.satisfied));
        // no class of S_4 has norm 4
        assert!(check_log_bound(4, &from_int(10_000)).unwrap().is_empty());
    }

    #[test]
    fn path_rows_for_tiny_n() {
        let rows = check_path_ratio_bounds(1, 100, 1).unwrap();
        let r = rows.iter().find(|r| r.claim == "path-ratio").unwrap();
        assert_eq!(r.lhs, BoundValue::Exact(ratio(0, 1)));
        assert!(all_pass(&rows));
        let rows = check_path_ratio_bounds(2, 100, 1).unwrap();
        let r = rows.iter().find(|r| r.claim == "path-ratio" && r.class == "1,1").unwrap();
        assert_eq!(r.lhs, BoundValue::Exact(ratio(1, 1)));
        assert!(rows.iter().all(|r| r.satisfied));
        assert!(check_path_ratio_bounds(7, 10, 1).is_err());
    }

    #[test]
    fn catalan_rows() {
        let rows = check_catalan_quotient(40).unwrap();
        assert_eq!(rows.len(), 39);
        assert_eq!(rows[0].lhs, BoundValue::Exact(ratio(1, 1)));
        assert!(rows.iter().all(|r| r.satisfied));
    }

    #[test]
    fn process_rows() {
        let rows = check_process_bounds(&p(&[12, 10]), 200, 3, &[0, 1, 4]).unwrap();
        assert!(rows.iter().all(|r| r.satisfied), "{rows:?}");
        assert_eq!(rows.iter().filter(|r| r.claim == "ti-tail").count(), 6);
    }

    #[test]
    fn energy_rows() {
        let gammas = [ratio(3, 5), ratio(9, 10)];
        let rows = check_energy_estimate(3, &from_int(10_000), &gammas, 5, 11).unwrap();
        assert_eq!(rows.len(), 2 * (1 + 5 + 5));
        assert!(rows.iter().all(|r| r.hypotheses_met && r.satisfied));
    }
}
