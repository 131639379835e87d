//! Distributional checks of the samplers against exact enumeration.

use std::collections::BTreeMap;
use std::hash::Hash;

use statrs::distribution::{ChiSquared, ContinuousCDF};
use weingarten_core::graph::minimal_paths_orthogonal;
use weingarten_core::process::{orthogonal_path_probability, run_wp_orthogonal, run_wp_orthogonal_class, run_wp_unitary_class, SplitSampler};
use weingarten_core::rational::ratio;
use weingarten_core::rng::stream_rng;
use weingarten_core::{moebius_abs, ExactRational, Pairing, Partition, Permutation};

const ALPHA: f64 = 1e-3;

fn p_value(stat: f64, df: usize) -> f64 {
    1.0 - ChiSquared::new(df as f64).unwrap().cdf(stat)
}

/// Goodness of fit of `counts` to the uniform law on `cells` outcomes.
fn uniform_p<K>(counts: &BTreeMap<K, u64>, cells: usize) -> f64 {
    if cells == 1 {
        return 1.0;
    }
    let total: u64 = counts.values().sum();
    let expected = total as f64 / cells as f64;
    let seen: f64 = counts.values().map(|&c| (c as f64 - expected).powi(2) / expected).sum();
    // unseen cells contribute `expected` each
    let stat = seen + (cells - counts.len()) as f64 * expected;
    p_value(stat, cells - 1)
}

/// Two-sample test for equal sample sizes; sparse cells are pooled.
fn two_sample_p<K: Ord + Clone>(a: &BTreeMap<K, u64>, b: &BTreeMap<K, u64>) -> f64 {
    let keys: std::collections::BTreeSet<K> = a.keys().chain(b.keys()).cloned().collect();
    let (mut stat, mut cells) = (0.0, 0usize);
    let (mut pool_a, mut pool_b) = (0u64, 0u64);
    for k in keys {
        let (x, y) = (a.get(&k).copied().unwrap_or(0), b.get(&k).copied().unwrap_or(0));
        if x + y < 10 {
            pool_a += x;
            pool_b += y;
            continue;
        }
        stat += (x as f64 - y as f64).powi(2) / (x + y) as f64;
        cells += 1;
    }
    if pool_a + pool_b > 0 {
        stat += (pool_a as f64 - pool_b as f64).powi(2) / (pool_a + pool_b) as f64;
        cells += 1;
    }
    p_value(stat, cells - 1)
}

fn tally<K: Ord + Hash>(items: impl Iterator<Item = K>) -> BTreeMap<K, u64> {
    let mut m = BTreeMap::new();
    for k in items {
        *m.entry(k).or_insert(0) += 1;
    }
    m
}

#[test]
fn orthogonal_types_follow_the_unitary_law() {
    let runs = 10_000u64;
    let mut sampler = SplitSampler::new();
    for mu in ["5", "3,2", "2,2,1"] {
        let mu: Partition = mu.parse().unwrap();
        let unitary = tally((0..runs).map(|r| run_wp_unitary_class(&mu, &mut sampler, &mut stream_rng(11, r)).types));
        let orth = tally((0..runs).map(|r| run_wp_orthogonal_class(&mu, &mut sampler, &mut stream_rng(12, r)).types));
        let p = two_sample_p(&unitary, &orth);
        assert!(p > ALPHA, "{mu}: p = {p}");
    }
}

#[test]
fn orthogonal_minimal_paths_are_uniform() {
    let mut sampler = SplitSampler::new();
    for text in ["{1-2, 3-7, 4-6, 5-8}", "{1-4, 2-7, 3-6, 5-8}"] {
        let pi: Pairing = text.parse().unwrap();
        let paths = minimal_paths_orthogonal(&pi).unwrap();
        let m = moebius_abs(&pi.coset_type());
        assert_eq!(paths.len().to_string(), m.to_string(), "{pi}");
        let exact = ExactRational::new(1.into(), num_bigint::BigInt::from(m));
        for p in &paths {
            assert_eq!(orthogonal_path_probability(p, &mut sampler), exact);
        }
        let runs = 20_000u64;
        let index: BTreeMap<_, _> = paths.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
        let freq = tally((0..runs).map(|r| {
            let t = run_wp_orthogonal(&pi, &mut sampler, &mut stream_rng(5, r));
            *index.get(&t.states).expect("sampled path is minimal")
        }));
        if paths.len() > 1 {
            let p = uniform_p(&freq, paths.len());
            assert!(p > ALPHA, "{pi}: p = {p}, {freq:?}");
        }
    }
}

#[test]
fn class_samples_are_uniform() {
    let mut rng = stream_rng(3, 0);
    for lambda in ["2,1,1", "3,1", "2,2"] {
        let lambda: Partition = lambda.parse().unwrap();
        let cells = Permutation::all(4).into_iter().filter(|s| s.cycle_type() == &lambda).count();
        let freq = tally((0..6000).map(|_| Permutation::uniform_class_sample(&lambda, &mut rng)));
        assert!(freq.keys().all(|s| s.cycle_type() == &lambda));
        let p = uniform_p(&freq, cells);
        assert!(p > ALPHA, "{lambda}: p = {p}");
    }
    for mu in ["2,1", "3", "1,1,1"] {
        let mu: Partition = mu.parse().unwrap();
        let cells = Pairing::all(3).into_iter().filter(|p| p.coset_type() == mu).count();
        let freq = tally((0..6000).map(|_| Pairing::uniform_coset_sample(&mu, &mut rng)));
        assert!(freq.keys().all(|p| p.coset_type() == mu));
        let p = uniform_p(&freq, cells);
        assert!(p > ALPHA, "{mu}: p = {p}");
    }
}

#[test]
fn split_law_is_catalan() {
    // a 6-cycle splits as (j, 6−j) with weight Cat(j−1)Cat(5−j): 14, 5, 4, 5, 14 over 42
    let mut sampler = SplitSampler::new();
    let mut rng = stream_rng(9, 0);
    let runs = 42_000u64;
    let freq = tally((0..runs).map(|_| sampler.sample(6, &mut rng)));
    let weights = [14.0, 5.0, 4.0, 5.0, 14.0];
    let stat: f64 = (1..=5)
        .map(|j| {
            let e = runs as f64 * weights[j - 1] / 42.0;
            (freq.get(&j).copied().unwrap_or(0) as f64 - e).powi(2) / e
        })
        .sum();
    assert!(p_value(stat, 4) > ALPHA, "stat {stat}");
    assert_eq!(sampler.split_probability(1, 5) + sampler.split_probability(5, 1), ratio(2, 3));
}
