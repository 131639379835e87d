//! The Weingarten processes: Markov samplers on the unitary and orthogonal
//! Weingarten graphs whose trajectories are uniform minimal paths.
//!
//! Unitary step from `σ ∈ S_n`: if `σ(n) = n` take the dashed edge.
//! Otherwise the cycle of `n`, `(n a₁ … a_{ℓ−1})`, is split by
//! `(a_j n) ∘ σ` into pieces of lengths `j` (holding `n`) and `ℓ − j`, with
//! probability `Cat(j−1) Cat(ℓ−j−1) / Cat(ℓ−1)`.
//!
//! Orthogonal step from `π`: if `{2n−1, 2n}` is a pair take the dashed
//! edge. Otherwise the component of `2n−1` (half-size `m`) is split by one
//! of its `m − 1` split targets into halves `a` and `m − a`, with
//! probability `Cat(a−1) Cat(m−a−1) / Cat(m−1)`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use rand_core::RngCore;

use crate::catalan::CatalanTable;
use crate::error::WgError;
use crate::pairing::Pairing;
use crate::partition::Partition;
use crate::perm::Permutation;
use crate::rational::ExactRational;
use crate::rng::{stream_rng, uniform_biguint_below};

/// A complete trajectory, one entry per time `t = 0, …, n + |start|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProcessTrace<S> {
    pub states: Vec<S>,
    /// Cycle type (or coset type) of each state.
    pub types: Vec<Partition>,
    /// Pivot `n_t`: the level of the state.
    pub pivots: Vec<usize>,
    /// `L_t`: longest cycle (largest coset part); 0 at ∅.
    pub longest: Vec<usize>,
    /// `C_t`: length of the cycle (coset part) holding the pivot; 0 at ∅.
    pub pivotal_cycle: Vec<usize>,
    /// `t` is pivotal iff `t = 0` or `n_t < n_{t−1}`.
    pub pivotal: Vec<bool>,
    /// Per transition `t → t+1`: whether the edge was solid.
    pub solid: Vec<bool>,
}

impl<S> ProcessTrace<S> {
    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn solid_steps(&self) -> usize {
        self.solid.iter().filter(|&&s| s).count()
    }

    /// Partition sequence at pivotal times, the law shared by the two
    /// processes.
    pub fn pivotal_types(&self) -> Vec<Partition> {
        self.types
            .iter()
            .zip(&self.pivotal)
            .filter(|(_, &p)| p)
            .map(|(t, _)| t.clone())
            .collect()
    }
}

/// Samples split positions `j ∈ 1..ℓ` with weights `Cat(j−1) Cat(ℓ−j−1)`,
/// exactly, from cached cumulative integer weights.
#[derive(Clone, Debug, Default)]
pub struct SplitSampler {
    catalan: CatalanTable,
    cumulative: BTreeMap<usize, Vec<BigUint>>,
}

impl SplitSampler {
    pub fn new() -> Self {
        Self::default()
    }

    fn cumulative(&mut self, len: usize) -> &Vec<BigUint> {
        if !self.cumulative.contains_key(&len) {
            let mut acc = BigUint::zero();
            let mut cum = Vec::with_capacity(len - 1);
            for j in 1..len {
                let w = self.catalan.get(j - 1).expect("within cap").clone()
                    * self.catalan.get(len - j - 1).expect("within cap");
                acc += w;
                cum.push(acc.clone());
            }
            self.cumulative.insert(len, cum);
        }
        &self.cumulative[&len]
    }

    /// A split position `j ∈ 1..len` for a cycle of length `len ≥ 2`.
    pub fn sample<R: RngCore + ?Sized>(&mut self, len: usize, rng: &mut R) -> usize {
        let cum = self.cumulative(len);
        let total = cum.last().expect("len ≥ 2");
        let u = uniform_biguint_below(rng, total);
        cum.partition_point(|c| *c <= u) + 1
    }

    /// `Cat(a−1) Cat(b−1) / Cat(a+b−1)` as an exact rational.
    pub fn split_probability(&mut self, a: usize, b: usize) -> ExactRational {
        let num = self.catalan.get(a - 1).expect("within cap").clone()
            * self.catalan.get(b - 1).expect("within cap");
        let den = self.catalan.get(a + b - 1).expect("within cap").clone();
        ExactRational::new(BigInt::from(num), BigInt::from(den))
    }
}

fn perm_stats(s: &Permutation) -> (usize, usize) {
    let n = s.degree();
    if n == 0 {
        return (0, 0);
    }
    (s.cycle_type().largest(), s.cycle_of(n).len())
}

fn pairing_stats(p: &Pairing, ty: &Partition) -> (usize, usize) {
    if p.half_size() == 0 {
        return (0, 0);
    }
    (ty.largest(), p.coset_walk().m())
}

fn finish<S>(states: Vec<S>, types: Vec<Partition>, stats: Vec<(usize, usize)>, pivots: Vec<usize>, solid: Vec<bool>) -> ProcessTrace<S> {
    let pivotal = (0..pivots.len()).map(|t| t == 0 || pivots[t] < pivots[t - 1]).collect();
    ProcessTrace {
        states,
        types,
        pivots,
        longest: stats.iter().map(|s| s.0).collect(),
        pivotal_cycle: stats.iter().map(|s| s.1).collect(),
        pivotal,
        solid,
    }
}

/// One step of the unitary process from a nonempty state. Returns the next
/// state and whether the edge was solid.
pub fn unitary_step<R: RngCore + ?Sized>(
    sigma: &Permutation,
    sampler: &mut SplitSampler,
    rng: &mut R,
) -> (Permutation, bool) {
    if sigma.fixes_top() {
        return (sigma.restrict().expect("fixes n"), false);
    }
    let cycle = sigma.cycle_of(sigma.degree());
    let j = sampler.sample(cycle.len(), rng);
    (sigma.left_transpose(cycle[j]).expect("cycle entry below n"), true)
}

/// One step of the orthogonal process from a nonempty state.
pub fn orthogonal_step<R: RngCore + ?Sized>(
    pi: &Pairing,
    sampler: &mut SplitSampler,
    rng: &mut R,
) -> (Pairing, bool) {
    if pi.contains_top_pair() {
        return (pi.remove_top_pair().expect("top pair"), false);
    }
    let targets = pi.split_targets();
    let m = targets.len() + 1;
    let a = sampler.sample(m, rng);
    let target = targets
        .iter()
        .find(|t| t.top_size == a)
        .expect("one split target per size");
    (pi.act(target.index).expect("walk vertex"), true)
}

/// `WP(σ)` from a given start.
pub fn run_wp_unitary<R: RngCore + ?Sized>(
    start: &Permutation,
    sampler: &mut SplitSampler,
    rng: &mut R,
) -> ProcessTrace<Permutation> {
    let mut states = Vec::new();
    let mut types = Vec::new();
    let mut stats = Vec::new();
    let mut pivots = Vec::new();
    let mut solid = Vec::new();
    let mut cur = start.clone();
    loop {
        stats.push(perm_stats(&cur));
        types.push(cur.cycle_type().clone());
        pivots.push(cur.degree());
        if cur.degree() == 0 {
            states.push(cur);
            break;
        }
        let (next, was_solid) = unitary_step(&cur, sampler, rng);
        solid.push(was_solid);
        states.push(core::mem::replace(&mut cur, next));
    }
    finish(states, types, stats, pivots, solid)
}

/// `WP(λ)`: a uniform draw from `S_λ`, then `WP(σ)`.
pub fn run_wp_unitary_class<R: RngCore + ?Sized>(
    lambda: &Partition,
    sampler: &mut SplitSampler,
    rng: &mut R,
) -> ProcessTrace<Permutation> {
    let start = Permutation::uniform_class_sample(lambda, rng);
    run_wp_unitary(&start, sampler, rng)
}

/// The orthogonal process from a given pairing.
pub fn run_wp_orthogonal<R: RngCore + ?Sized>(
    start: &Pairing,
    sampler: &mut SplitSampler,
    rng: &mut R,
) -> ProcessTrace<Pairing> {
    let mut states = Vec::new();
    let mut types = Vec::new();
    let mut stats = Vec::new();
    let mut pivots = Vec::new();
    let mut solid = Vec::new();
    let mut cur = start.clone();
    loop {
        let ty = cur.coset_type();
        stats.push(pairing_stats(&cur, &ty));
        types.push(ty);
        pivots.push(cur.half_size());
        if cur.half_size() == 0 {
            states.push(cur);
            break;
        }
        let (next, was_solid) = orthogonal_step(&cur, sampler, rng);
        solid.push(was_solid);
        states.push(core::mem::replace(&mut cur, next));
    }
    finish(states, types, stats, pivots, solid)
}

/// The orthogonal process from a uniform pairing of coset type `μ`.
pub fn run_wp_orthogonal_class<R: RngCore + ?Sized>(
    mu: &Partition,
    sampler: &mut SplitSampler,
    rng: &mut R,
) -> ProcessTrace<Pairing> {
    let start = Pairing::uniform_coset_sample(mu, rng);
    run_wp_orthogonal(&start, sampler, rng)
}

/// Exact probability that the unitary process steps from `from` to `to`.
pub fn unitary_transition_probability(
    from: &Permutation,
    to: &Permutation,
    sampler: &mut SplitSampler,
) -> ExactRational {
    let n = from.degree();
    if n == 0 {
        return ExactRational::zero();
    }
    if from.fixes_top() {
        let dashed = from.restrict().expect("fixes n");
        return if *to == dashed { ExactRational::from_integer(1.into()) } else { ExactRational::zero() };
    }
    let cycle = from.cycle_of(n);
    for j in 1..cycle.len() {
        if from.left_transpose(cycle[j]).expect("below n") == *to {
            // weights read off the cycle lengths actually produced
            let a = to.cycle_of(n).len();
            return sampler.split_probability(a, cycle.len() - a);
        }
    }
    ExactRational::zero()
}

/// Exact probability that the orthogonal process steps from `from` to `to`.
pub fn orthogonal_transition_probability(
    from: &Pairing,
    to: &Pairing,
    sampler: &mut SplitSampler,
) -> ExactRational {
    if from.half_size() == 0 {
        return ExactRational::zero();
    }
    if from.contains_top_pair() {
        let dashed = from.remove_top_pair().expect("top pair");
        return if *to == dashed { ExactRational::from_integer(1.into()) } else { ExactRational::zero() };
    }
    for t in from.split_targets() {
        if from.act(t.index).expect("walk vertex") == *to {
            return sampler.split_probability(t.top_size, t.other_size);
        }
    }
    ExactRational::zero()
}

/// Product of unitary transition probabilities along a state sequence.
pub fn unitary_path_probability(path: &[Permutation], sampler: &mut SplitSampler) -> ExactRational {
    path.windows(2)
        .map(|w| unitary_transition_probability(&w[0], &w[1], sampler))
        .product()
}

/// Product of orthogonal transition probabilities along a state sequence.
pub fn orthogonal_path_probability(path: &[Pairing], sampler: &mut SplitSampler) -> ExactRational {
    path.windows(2)
        .map(|w| orthogonal_transition_probability(&w[0], &w[1], sampler))
        .product()
}

/// A Monte Carlo estimate.
#[derive(Clone, Debug, PartialEq)]
pub struct EstimatorReport {
    pub seed: u64,
    pub count: u64,
    pub estimate: f64,
    /// Sample standard deviation over `√count`.
    pub standard_error: f64,
    /// Whether the hypotheses of the bound this estimate feeds are met.
    pub hypotheses_met: bool,
}

impl EstimatorReport {
    fn from_samples(seed: u64, values: &[f64], hypotheses_met: bool) -> Self {
        let count = values.len() as u64;
        let mean = values.iter().sum::<f64>() / values.len() as f64;
        let se = if values.len() > 1 {
            let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (values.len() - 1) as f64;
            libm::sqrt(var / values.len() as f64)
        } else {
            0.0
        };
        Self {
            seed,
            count,
            estimate: mean,
            standard_error: se,
            hypotheses_met,
        }
    }

    /// `estimate + k · SE`.
    pub fn upper(&self, k: f64) -> f64 {
        self.estimate + k * self.standard_error
    }

    /// `estimate − k · SE`.
    pub fn lower(&self, k: f64) -> f64 {
        self.estimate - k * self.standard_error
    }
}

impl fmt::Display for EstimatorReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} ± {} (count {}, seed {})",
            self.estimate, self.standard_error, self.count, self.seed
        )
    }
}

/// The power `p` in `Σ_j L_j^p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LExponent {
    One,
    ThreeHalves,
}

impl LExponent {
    fn apply(self, l: usize) -> f64 {
        match self {
            LExponent::One => l as f64,
            LExponent::ThreeHalves => libm::pow(l as f64, 1.5),
        }
    }
}

fn check_samples(samples: u64) -> Result<(), WgError> {
    if samples == 0 {
        return Err(WgError::InvalidArgument(alloc::string::String::from("at least one sample is needed")));
    }
    Ok(())
}

fn check_nonempty(lambda: &Partition) -> Result<(), WgError> {
    if lambda.is_empty() {
        return Err(WgError::InvalidArgument(alloc::string::String::from("the start class must be nonempty")));
    }
    Ok(())
}

/// Runs `samples` independent `WP(λ)` trajectories, run `r` on stream `r`.
fn each_run<F: FnMut(&ProcessTrace<Permutation>) -> f64>(
    lambda: &Partition,
    samples: u64,
    seed: u64,
    mut f: F,
) -> Vec<f64> {
    let mut sampler = SplitSampler::new();
    (0..samples)
        .map(|run| {
            let mut rng = stream_rng(seed, run);
            let trace = run_wp_unitary_class(lambda, &mut sampler, &mut rng);
            f(&trace)
        })
        .collect()
}

/// MC estimate of `E_{WP(λ)}[Σ_{j=0}^{n+|σ|} L_j^p]`.
pub fn estimate_l_power_sum(
    lambda: &Partition,
    exponent: LExponent,
    samples: u64,
    seed: u64,
) -> Result<EstimatorReport, WgError> {
    check_samples(samples)?;
    check_nonempty(lambda)?;
    let values = each_run(lambda, samples, seed, |t| t.longest.iter().map(|&l| exponent.apply(l)).sum());
    Ok(EstimatorReport::from_samples(seed, &values, true))
}

/// MC estimate of `E[Σ_{j ≥ first} L_j^p]` under the orthogonal process
/// started from a uniform pairing of coset type `μ`.
pub fn estimate_l_power_sum_orthogonal(
    mu: &Partition,
    exponent: LExponent,
    first: usize,
    samples: u64,
    seed: u64,
) -> Result<EstimatorReport, WgError> {
    check_samples(samples)?;
    check_nonempty(mu)?;
    let mut sampler = SplitSampler::new();
    let values: Vec<f64> = (0..samples)
        .map(|run| {
            let mut rng = stream_rng(seed, run);
            let trace = run_wp_orthogonal_class(mu, &mut sampler, &mut rng);
            trace.longest.iter().skip(first).map(|&l| exponent.apply(l)).sum()
        })
        .collect();
    Ok(EstimatorReport::from_samples(seed, &values, true))
}

/// Whether a cycle of length `len` counts as large against `L_0`:
/// `len ≥ (2/3) L_0`.
pub fn is_large(len: usize, l0: usize) -> bool {
    3 * len >= 2 * l0
}

/// Coupon times of a trace: `T_i` for `i = 0..=k`, where `k` is the number
/// of large cycles at time 0 and `T_i` is the first pivotal time at or after
/// the first time exactly `k − i` large cycles remain.
pub fn coupon_times<S>(trace: &ProcessTrace<S>) -> Vec<usize> {
    let l0 = trace.longest[0];
    let large: Vec<usize> = trace
        .types
        .iter()
        .map(|ty| ty.parts().iter().filter(|&&p| is_large(p, l0)).count())
        .collect();
    let k = large[0];
    (0..=k)
        .map(|i| {
            let t_i = large.iter().position(|&c| c == k - i).expect("counts drop one at a time to 0");
            (t_i..trace.len()).find(|&t| trace.pivotal[t]).expect("the last state is pivotal")
        })
        .collect()
}

/// Time to halve: the first pivotal time `τ_i`, `i > 0`, with
/// `L_{τ_i} < (2/3) L_0`.
pub fn time_to_halve<S>(trace: &ProcessTrace<S>) -> usize {
    let l0 = trace.longest[0];
    (1..trace.len())
        .find(|&t| trace.pivotal[t] && !is_large(trace.longest[t], l0))
        .expect("the last state is pivotal with L = 0")
}

/// MC estimate of `E[T]` under `WP(λ)`. The hypotheses flag records
/// `n > 6` and `L_0 ≥ 6`.
pub fn estimate_time_to_halve(lambda: &Partition, samples: u64, seed: u64) -> Result<EstimatorReport, WgError> {
    check_samples(samples)?;
    check_nonempty(lambda)?;
    let values = each_run(lambda, samples, seed, |t| time_to_halve(t) as f64);
    let ok = lambda.size() > 6 && lambda.largest() >= 6;
    Ok(EstimatorReport::from_samples(seed, &values, ok))
}

/// MC estimate of `P(T_{i+1} − T_i > 5t)` under `WP(λ)`. Runs depend only on
/// `(seed, run)`, so estimates for different `t` share their random numbers
/// and are monotone in `t`. The hypotheses flag records `L_0 ≥ 6`.
pub fn estimate_ti_tail(
    lambda: &Partition,
    i: usize,
    t: u64,
    samples: u64,
    seed: u64,
) -> Result<EstimatorReport, WgError> {
    check_samples(samples)?;
    check_nonempty(lambda)?;
    let l0 = lambda.largest();
    let k = lambda.parts().iter().filter(|&&p| is_large(p, l0)).count();
    if i + 1 > k {
        return Err(WgError::InvalidArgument(format!(
            "λ = {lambda} has {k} parts ≥ (2/3)L₀, so T_{} is undefined",
            i + 1
        )));
    }
    let values = each_run(lambda, samples, seed, |trace| {
        let times = coupon_times(trace);
        f64::from(u8::from((times[i + 1] - times[i]) as u64 > 5 * t))
    });
    Ok(EstimatorReport::from_samples(seed, &values, l0 >= 6))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalan::moebius_abs;
    use crate::graph::{minimal_paths_orthogonal, minimal_paths_unitary};
    use crate::rational::ratio;

    fn cyc(s: &str, n: usize) -> Permutation {
        Permutation::parse_cycles(s, Some(n)).unwrap()
    }

    #[test]
    fn identity_start_is_all_dashed() {
        let mut s = SplitSampler::new();
        let mut rng = stream_rng(1, 0);
        let t = run_wp_unitary(&Permutation::identity(4), &mut s, &mut rng);
        assert_eq!(t.len(), 5);
        assert_eq!(t.solid_steps(), 0);
        assert_eq!(t.pivots, vec![4, 3, 2, 1, 0]);
        assert!(t.pivotal.iter().all(|&p| p));
        assert_eq!(t.longest, vec![1, 1, 1, 1, 0]);

        let o = run_wp_orthogonal(&Pairing::canonical(3), &mut s, &mut rng);
        assert_eq!(o.solid_steps(), 0);
        assert_eq!(o.len(), 4);
    }

    #[test]
    fn traces_have_the_right_shape() {
        let mut s = SplitSampler::new();
        for run in 0..200 {
            let mut rng = stream_rng(5, run);
            let lambda = Partition::new(vec![4, 3, 1]).unwrap();
            let t = run_wp_unitary_class(&lambda, &mut s, &mut rng);
            assert_eq!(t.len(), 8 + 5 + 1);
            assert_eq!(t.solid_steps(), 5);
            assert_eq!(t.states.last().unwrap(), &Permutation::empty());
            for w in t.pivots.windows(2) {
                assert!(w[1] <= w[0]);
            }
            for (l, n) in t.longest.iter().zip(&t.pivots) {
                assert!(l <= n);
            }
            for k in 1..t.len() {
                assert_eq!(t.pivotal[k], t.pivots[k] < t.pivots[k - 1]);
            }
            let times = coupon_times(&t);
            assert!(times.windows(2).all(|w| w[0] < w[1]));
            assert_eq!(times[0], 0);
            assert_eq!(*times.last().unwrap(), time_to_halve(&t));
        }
    }

    #[test]
    fn first_split_of_a_three_cycle_is_fair() {
        let mut s = SplitSampler::new();
        let c = cyc("(1 2 3)", 3);
        let cycle = c.cycle_of(3);
        for j in 1..3 {
            let next = c.left_transpose(cycle[j]).unwrap();
            assert_eq!(unitary_transition_probability(&c, &next, &mut s), ratio(1, 2));
        }
    }

    #[test]
    fn split_weights_sum_to_one() {
        let mut s = SplitSampler::new();
        for len in 2..40 {
            let total: ExactRational = (1..len).map(|j| s.split_probability(j, len - j)).sum();
            assert_eq!(total, ratio(1, 1));
        }
    }

    #[test]
    fn every_minimal_path_has_probability_one_over_moebius() {
        let mut s = SplitSampler::new();
        for n in 1..=5 {
            for sigma in Permutation::all(n) {
                let paths = minimal_paths_unitary(&sigma).unwrap();
                let m = moebius_abs(sigma.cycle_type());
                let expected = ExactRational::new(1.into(), BigInt::from(m));
                for p in &paths {
                    assert_eq!(unitary_path_probability(p, &mut s), expected);
                }
            }
        }
        for n in 1..=4 {
            for pi in Pairing::all(n) {
                let expected = ExactRational::new(1.into(), BigInt::from(moebius_abs(&pi.coset_type())));
                for p in minimal_paths_orthogonal(&pi).unwrap() {
                    assert_eq!(orthogonal_path_probability(&p, &mut s), expected);
                }
            }
        }
    }

    #[test]
    fn state_at_pivotal_times_is_uniform_on_its_class() {
        // Full tree expansion at n = 4 from a class start: condition on the
        // pivotal type history and check the state law is uniform.
        let mut s = SplitSampler::new();
        for lambda in Partition::all_of(4) {
            let class: Vec<Permutation> =
                Permutation::all(4).into_iter().filter(|p| p.cycle_type() == &lambda).collect();
            let start_p = ExactRational::new(1.into(), BigInt::from(class.len()));
            // (history of pivotal types, state) → probability
            let mut law: BTreeMap<(Vec<Partition>, Permutation), ExactRational> = BTreeMap::new();
            let mut frontier: Vec<(Permutation, Vec<Partition>, ExactRational)> =
                class.iter().map(|c| (c.clone(), vec![lambda.clone()], start_p.clone())).collect();
            while let Some((state, hist, p)) = frontier.pop() {
                if state.degree() == 0 {
                    continue;
                }
                let mut nexts: Vec<Permutation> = Vec::new();
                if state.fixes_top() {
                    nexts.push(state.restrict().unwrap());
                } else {
                    let cycle = state.cycle_of(state.degree());
                    for j in 1..cycle.len() {
                        nexts.push(state.left_transpose(cycle[j]).unwrap());
                    }
                }
                for next in nexts {
                    let q = &p * unitary_transition_probability(&state, &next, &mut s);
                    let mut h = hist.clone();
                    if next.degree() < state.degree() {
                        h.push(next.cycle_type().clone());
                        *law.entry((h.clone(), next.clone())).or_insert_with(ExactRational::zero) += &q;
                    }
                    frontier.push((next, h, q));
                }
            }
            let mut by_hist: BTreeMap<Vec<Partition>, Vec<ExactRational>> = BTreeMap::new();
            for ((h, state), p) in &law {
                let _ = state;
                by_hist.entry(h.clone()).or_default().push(p.clone());
            }
            for (h, probs) in by_hist {
                let ty = h.last().unwrap();
                let size: BigUint = ty.class_size();
                assert_eq!(BigUint::from(probs.len()), size, "history {h:?}");
                assert!(probs.windows(2).all(|w| w[0] == w[1]));
            }
        }
    }

    #[test]
    fn l_sum_for_identity_is_n() {
        let r = estimate_l_power_sum(&Partition::ones(7), LExponent::ThreeHalves, 20, 3).unwrap();
        assert_eq!(r.estimate, 7.0);
        assert_eq!(r.standard_error, 0.0);
    }

    #[test]
    fn l_sum_for_two_one_matches_exact_expectation() {
        // WP((2,1)) from σ uniform on the three transpositions of S_3:
        // σ = (1 2) fixes 3: L = 2, 2, 1, 1, 0 → Σ L^{3/2} = 2·2^{3/2} + 2.
        // σ = (1 3) or (2 3): split at once: L = 2, 1, 1, 1, 0 → 2^{3/2} + 3.
        let a = 2.0 * 2f64.powf(1.5) + 2.0;
        let b = 2f64.powf(1.5) + 3.0;
        let exact = (a + 2.0 * b) / 3.0;
        let r = estimate_l_power_sum(&Partition::new(vec![2, 1]).unwrap(), LExponent::ThreeHalves, 20_000, 9).unwrap();
        assert!((r.estimate - exact).abs() <= 5.0 * r.standard_error, "{r}");
    }

    #[test]
    fn halving_and_tail_estimators() {
        let small = estimate_time_to_halve(&Partition::new(vec![3, 2]).unwrap(), 50, 1).unwrap();
        assert!(!small.hypotheses_met);
        assert!(small.estimate >= 1.0);
        let big = estimate_time_to_halve(&Partition::single(12), 50, 1).unwrap();
        assert!(big.hypotheses_met);

        let lambda = Partition::new(vec![9, 9]).unwrap();
        let zero = estimate_ti_tail(&lambda, 0, 0, 100, 4).unwrap();
        assert_eq!(zero.estimate, 1.0);
        let mut last = 1.0;
        for t in 0..8 {
            let r = estimate_ti_tail(&lambda, 0, t, 100, 4).unwrap();
            assert!(r.estimate <= last);
            last = r.estimate;
        }
        assert!(estimate_ti_tail(&lambda, 2, 1, 10, 4).is_err());
        assert!(estimate_l_power_sum(&lambda, LExponent::One, 0, 1).is_err());
    }

    #[test]
    fn seeded_runs_are_reproducible() {
        let lambda = Partition::new(vec![5, 3]).unwrap();
        let mut s1 = SplitSampler::new();
        let mut s2 = SplitSampler::new();
        let a = run_wp_unitary_class(&lambda, &mut s1, &mut stream_rng(77, 3));
        let b = run_wp_unitary_class(&lambda, &mut s2, &mut stream_rng(77, 3));
        assert_eq!(a, b);
        let c = run_wp_orthogonal_class(&lambda, &mut s1, &mut stream_rng(77, 3));
        let d = run_wp_orthogonal_class(&lambda, &mut s2, &mut stream_rng(77, 3));
        assert_eq!(c, d);
    }
}
