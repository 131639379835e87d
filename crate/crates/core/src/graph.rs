//! The unitary and orthogonal Weingarten graphs and exact path counts.
//!
//! Unitary graph: level `n` is `S_n`. A solid edge goes from `σ` to
//! `(i n) ∘ σ` for every `i < n`; a dashed edge goes to `σ|_{[n−1]}` when
//! `σ(n) = n`. Every path ends at ∅ and the last dashed edge out of `S_1`
//! is part of the path.
//!
//! Orthogonal graph: level `n` is the set of pairings of `[2n]`. Solid edges
//! go to `(i 2n−1).π` for `i < 2n−1` (self-loops included); a dashed edge
//! removes the pair `{2n−1, 2n}`.
//!
//! Counting is single-threaded: each counter owns its memo table and takes
//! `&mut self`. Use one counter per thread if counting in parallel.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::WgError;
use crate::pairing::Pairing;
use crate::partition::Partition;
use crate::perm::Permutation;
use crate::rational::ExactRational;

/// Largest permutation degree the unitary counter accepts.
pub const UNITARY_DEGREE_CAP: usize = 8;
/// Largest number of points `2n` the orthogonal counter accepts.
pub const ORTHOGONAL_POINTS_CAP: usize = 10;
/// Default cap on the number of solid edges in a counted path.
pub const DEFAULT_SOLID_BUDGET_CAP: usize = 24;
/// Largest degree for which whole path lists are materialised.
pub const PATH_LIST_CAP: usize = 7;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EdgeKind {
    Solid,
    Dashed,
}

/// How a solid orthogonal edge changes the norm.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Defect {
    /// Norm drops by one.
    None,
    /// Coset type preserved.
    Minor,
    /// Norm grows by one.
    Major,
}

/// Out-edges of `σ` in the unitary graph: the `n − 1` solid edges in order of
/// `i`, then the dashed edge if `σ(n) = n`.
pub fn unitary_successors(sigma: &Permutation) -> Vec<(EdgeKind, Permutation)> {
    let n = sigma.degree();
    let mut out: Vec<(EdgeKind, Permutation)> = (1..n)
        .map(|i| (EdgeKind::Solid, sigma.left_transpose(i).expect("i < n")))
        .collect();
    if sigma.fixes_top() {
        out.push((EdgeKind::Dashed, sigma.restrict().expect("fixes n")));
    }
    out
}

/// Out-edges of `π` in the orthogonal graph: the `2n − 2` solid edges in
/// order of `i`, then the dashed edge if `{2n−1, 2n}` is a pair.
pub fn orthogonal_successors(pi: &Pairing) -> Vec<(EdgeKind, Pairing)> {
    let len = 2 * pi.half_size();
    let mut out: Vec<(EdgeKind, Pairing)> = (1..len.saturating_sub(1))
        .map(|i| (EdgeKind::Solid, pi.act(i).expect("i < 2n−1")))
        .collect();
    if pi.contains_top_pair() {
        out.push((EdgeKind::Dashed, pi.remove_top_pair().expect("top pair")));
    }
    out
}

/// Classifies a solid orthogonal edge `π → ρ` by the change of norm.
pub fn classify_defect(from: &Pairing, to: &Pairing) -> Defect {
    let (a, b) = (from.norm(), to.norm());
    if b < a {
        Defect::None
    } else if b == a {
        Defect::Minor
    } else {
        Defect::Major
    }
}

/// Memoized counter of unitary paths `|P(σ, l)|`.
#[derive(Clone, Debug)]
pub struct UnitaryPathCounter {
    memo: BTreeMap<(Permutation, usize), BigUint>,
    budget_cap: usize,
}

impl Default for UnitaryPathCounter {
    fn default() -> Self {
        Self::new()
    }
}

impl UnitaryPathCounter {
    pub fn new() -> Self {
        Self::with_budget_cap(DEFAULT_SOLID_BUDGET_CAP)
    }

    pub fn with_budget_cap(budget_cap: usize) -> Self {
        Self {
            memo: BTreeMap::new(),
            budget_cap,
        }
    }

    /// `|P(σ, |σ| + 2g)|`.
    pub fn count(&mut self, sigma: &Permutation, g: usize) -> Result<BigUint, WgError> {
        self.count_with_solid(sigma, sigma.norm() + 2 * g)
    }

    /// Number of `σ → ∅` paths with exactly `solid` solid edges.
    pub fn count_with_solid(&mut self, sigma: &Permutation, solid: usize) -> Result<BigUint, WgError> {
        if sigma.degree() > UNITARY_DEGREE_CAP {
            return Err(WgError::CapExceeded {
                what: "unitary path-count degree n",
                value: sigma.degree(),
                cap: UNITARY_DEGREE_CAP,
            });
        }
        if solid > self.budget_cap {
            return Err(WgError::CapExceeded {
                what: "solid-edge budget |σ|+2g",
                value: solid,
                cap: self.budget_cap,
            });
        }
        Ok(self.rec(sigma, solid))
    }

    fn rec(&mut self, sigma: &Permutation, solid: usize) -> BigUint {
        let norm = sigma.norm();
        if solid < norm || (solid - norm) % 2 == 1 {
            return BigUint::zero();
        }
        if sigma.degree() == 0 {
            return if solid == 0 { BigUint::one() } else { BigUint::zero() };
        }
        let key = (sigma.clone(), solid);
        if let Some(v) = self.memo.get(&key) {
            return v.clone();
        }
        let mut total = BigUint::zero();
        for (kind, next) in unitary_successors(sigma) {
            total += match kind {
                EdgeKind::Solid if solid > 0 => self.rec(&next, solid - 1),
                EdgeKind::Solid => BigUint::zero(),
                EdgeKind::Dashed => self.rec(&next, solid),
            };
        }
        self.memo.insert(key, total.clone());
        total
    }

    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }
}

/// Memoized counter of orthogonal paths `|P(π, g₁, g₂)|`.
#[derive(Clone, Debug)]
pub struct OrthogonalPathCounter {
    memo: BTreeMap<(Pairing, usize, usize), BigUint>,
    budget_cap: usize,
}

impl Default for OrthogonalPathCounter {
    fn default() -> Self {
        Self::new()
    }
}

impl OrthogonalPathCounter {
    pub fn new() -> Self {
        Self::with_budget_cap(DEFAULT_SOLID_BUDGET_CAP)
    }

    pub fn with_budget_cap(budget_cap: usize) -> Self {
        Self {
            memo: BTreeMap::new(),
            budget_cap,
        }
    }

    /// Paths `π → ∅` with exactly `g1` minor and `g2` major defects.
    pub fn count(&mut self, pi: &Pairing, g1: usize, g2: usize) -> Result<BigUint, WgError> {
        let points = 2 * pi.half_size();
        if points > ORTHOGONAL_POINTS_CAP {
            return Err(WgError::CapExceeded {
                what: "orthogonal path-count size 2n",
                value: points,
                cap: ORTHOGONAL_POINTS_CAP,
            });
        }
        // total solid edges: |π| + g₁ + 2g₂
        let solid = pi.norm() + g1 + 2 * g2;
        if solid > self.budget_cap {
            return Err(WgError::CapExceeded {
                what: "solid-edge budget |π|+g₁+2g₂",
                value: solid,
                cap: self.budget_cap,
            });
        }
        Ok(self.rec(pi, g1, g2))
    }

    fn rec(&mut self, pi: &Pairing, g1: usize, g2: usize) -> BigUint {
        if pi.half_size() == 0 {
            return if g1 == 0 && g2 == 0 { BigUint::one() } else { BigUint::zero() };
        }
        let key = (pi.clone(), g1, g2);
        if let Some(v) = self.memo.get(&key) {
            return v.clone();
        }
        let norm = pi.norm();
        let mut total = BigUint::zero();
        for (kind, next) in orthogonal_successors(pi) {
            total += match kind {
                EdgeKind::Dashed => self.rec(&next, g1, g2),
                EdgeKind::Solid => {
                    let after = next.norm();
                    if after < norm {
                        self.rec(&next, g1, g2)
                    } else if after == norm {
                        if g1 == 0 {
                            continue;
                        }
                        self.rec(&next, g1 - 1, g2)
                    } else {
                        if g2 == 0 {
                            continue;
                        }
                        self.rec(&next, g1, g2 - 1)
                    }
                }
            };
        }
        self.memo.insert(key, total.clone());
        total
    }
}

/// `|P(σ, |σ| + 2g)|` with a fresh counter.
pub fn count_paths_unitary(sigma: &Permutation, g: usize) -> Result<BigUint, WgError> {
    UnitaryPathCounter::new().count(sigma, g)
}

/// `|P(π, g₁, g₂)|` with a fresh counter.
pub fn count_paths_orthogonal(pi: &Pairing, g1: usize, g2: usize) -> Result<BigUint, WgError> {
    OrthogonalPathCounter::new().count(pi, g1, g2)
}

/// `|P(σ,|σ|+2)| / |P(σ,|σ|)|` on the class `λ`, for `|λ| ≤ 7`.
pub fn single_defect_ratio(lambda: &Partition) -> Result<ExactRational, WgError> {
    if lambda.size() > PATH_LIST_CAP {
        return Err(WgError::CapExceeded {
            what: "single-defect ratio degree n",
            value: lambda.size(),
            cap: PATH_LIST_CAP,
        });
    }
    let sigma = lambda.representative();
    let mut counter = UnitaryPathCounter::new();
    let one = counter.count(&sigma, 1)?;
    let zero = counter.count(&sigma, 0)?;
    Ok(ExactRational::new(one.into(), zero.into()))
}

/// `|P(π, g₁, g₂)| / |P(π, 0, 0)|` for the coset class `μ`.
pub fn orthogonal_defect_ratio(mu: &Partition, g1: usize, g2: usize) -> Result<ExactRational, WgError> {
    let pi = Pairing::coset_representative(mu);
    let mut counter = OrthogonalPathCounter::new();
    let num = counter.count(&pi, g1, g2)?;
    let den = counter.count(&pi, 0, 0)?;
    Ok(ExactRational::new(num.into(), den.into()))
}

fn list_cap_check(what: &'static str, value: usize, cap: usize) -> Result<(), WgError> {
    if value > cap {
        return Err(WgError::CapExceeded { what, value, cap });
    }
    Ok(())
}

/// Every path in `P(σ, |σ|)`, as the sequence of visited states from `σ` to
/// ∅ inclusive. Only norm-decreasing solid edges and dashed edges occur.
pub fn minimal_paths_unitary(sigma: &Permutation) -> Result<Vec<Vec<Permutation>>, WgError> {
    list_cap_check("minimal path list degree n", sigma.degree(), PATH_LIST_CAP)?;
    fn rec(state: &Permutation, prefix: &mut Vec<Permutation>, out: &mut Vec<Vec<Permutation>>) {
        prefix.push(state.clone());
        if state.degree() == 0 {
            out.push(prefix.clone());
        } else {
            for (kind, next) in unitary_successors(state) {
                if kind == EdgeKind::Dashed || next.norm() < state.norm() {
                    rec(&next, prefix, out);
                }
            }
        }
        prefix.pop();
    }
    let mut out = Vec::new();
    rec(sigma, &mut vec![], &mut out);
    Ok(out)
}

/// Every path in `P(π, 0, 0)`, as visited states from `π` to ∅ inclusive.
pub fn minimal_paths_orthogonal(pi: &Pairing) -> Result<Vec<Vec<Pairing>>, WgError> {
    list_cap_check("minimal path list size 2n", 2 * pi.half_size(), ORTHOGONAL_POINTS_CAP)?;
    fn rec(state: &Pairing, prefix: &mut Vec<Pairing>, out: &mut Vec<Vec<Pairing>>) {
        prefix.push(state.clone());
        if state.half_size() == 0 {
            out.push(prefix.clone());
        } else {
            let norm = state.norm();
            for (kind, next) in orthogonal_successors(state) {
                if kind == EdgeKind::Dashed || next.norm() < norm {
                    rec(&next, prefix, out);
                }
            }
        }
        prefix.pop();
    }
    let mut out = Vec::new();
    rec(pi, &mut vec![], &mut out);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalan::moebius_abs;
    use crate::rational::ratio;

    fn cyc(s: &str, n: usize) -> Permutation {
        Permutation::parse_cycles(s, Some(n)).unwrap()
    }

    #[test]
    fn successors_match_small_levels() {
        let id3 = Permutation::identity(3);
        let succ = unitary_successors(&id3);
        assert_eq!(succ.len(), 3);
        assert_eq!(succ[0], (EdgeKind::Solid, cyc("(1 3)", 3)));
        assert_eq!(succ[1], (EdgeKind::Solid, cyc("(2 3)", 3)));
        assert_eq!(succ[2], (EdgeKind::Dashed, Permutation::identity(2)));

        let one = unitary_successors(&Permutation::identity(1));
        assert_eq!(one, vec![(EdgeKind::Dashed, Permutation::empty())]);

        let t = unitary_successors(&cyc("(1 2)", 3));
        assert_eq!(t.iter().filter(|(k, _)| *k == EdgeKind::Solid).count(), 2);
        assert_eq!(t.last().unwrap(), &(EdgeKind::Dashed, cyc("(1 2)", 2)));
    }

    #[test]
    fn small_counts() {
        assert_eq!(count_paths_unitary(&cyc("(1 2 3)", 3), 0).unwrap(), BigUint::from(2u32));
        for g in 0..6 {
            assert_eq!(count_paths_unitary(&Permutation::identity(2), g).unwrap(), BigUint::one());
        }
        let mut c = UnitaryPathCounter::new();
        assert!(c.count_with_solid(&cyc("(1 2 3)", 3), 3).unwrap().is_zero());
        assert!(c.count_with_solid(&cyc("(1 2 3)", 3), 1).unwrap().is_zero());
        assert!(matches!(
            count_paths_unitary(&Permutation::identity(9), 0),
            Err(WgError::CapExceeded { .. })
        ));
        assert!(matches!(c.count(&Permutation::identity(2), 13), Err(WgError::CapExceeded { .. })));
    }

    #[test]
    fn minimal_counts_are_moebius() {
        let mut c = UnitaryPathCounter::new();
        for n in 1..=6 {
            for sigma in Permutation::all(n) {
                assert_eq!(c.count(&sigma, 0).unwrap(), moebius_abs(sigma.cycle_type()));
            }
        }
    }

    #[test]
    fn counts_are_class_functions() {
        let mut c = UnitaryPathCounter::new();
        for n in 1..=5 {
            let mut by_class: BTreeMap<(Partition, usize), BigUint> = BTreeMap::new();
            for sigma in Permutation::all(n) {
                for g in 0..=2 {
                    let v = c.count(&sigma, g).unwrap();
                    let prev = by_class.entry((sigma.cycle_type().clone(), g)).or_insert(v.clone());
                    assert_eq!(*prev, v, "{sigma} g={g}");
                }
            }
        }
    }

    #[test]
    fn trivial_cap() {
        let mut c = UnitaryPathCounter::new();
        for n in 1..=5 {
            for lambda in Partition::all_of(n) {
                let sigma = lambda.representative();
                for g in 0..=2 {
                    let cap = num_traits::pow(BigUint::from(2 * n), n + sigma.norm() + 2 * g);
                    assert!(c.count(&sigma, g).unwrap() <= cap);
                }
            }
        }
    }

    #[test]
    fn single_defect_ratios() {
        assert_eq!(single_defect_ratio(&Partition::ones(1)).unwrap(), ratio(0, 1));
        assert_eq!(single_defect_ratio(&Partition::ones(2)).unwrap(), ratio(1, 1));
        assert!(single_defect_ratio(&Partition::ones(8)).is_err());
    }

    #[test]
    fn orthogonal_counts() {
        let mut c = OrthogonalPathCounter::new();
        for n in 1..=4 {
            for pi in Pairing::all(n) {
                assert_eq!(c.count(&pi, 0, 0).unwrap(), moebius_abs(&pi.coset_type()));
            }
        }
        assert_eq!(count_paths_orthogonal(&Pairing::canonical(2), 0, 0).unwrap(), BigUint::one());
        // Both solid edges out of 𝔢 ∈ P₂(4) merge, and nothing of norm 0 at
        // level 2 can come back to 𝔢 without a major defect.
        assert!(count_paths_orthogonal(&Pairing::canonical(2), 1, 0).unwrap().is_zero());
        // x² coefficient of N²Wg(𝔢) = (1 + 1/N) / ((1 − 1/N)(1 + 2/N)) is 2
        let e = Pairing::canonical(2);
        let two = count_paths_orthogonal(&e, 2, 0).unwrap() + count_paths_orthogonal(&e, 0, 1).unwrap();
        assert_eq!(two, BigUint::from(2u32));
        assert!(matches!(
            count_paths_orthogonal(&Pairing::canonical(6), 0, 0),
            Err(WgError::CapExceeded { .. })
        ));
    }

    #[test]
    fn orthogonal_counts_brute_force() {
        // Independent check: walk all edge sequences of bounded length.
        fn brute(pi: &Pairing, g1: usize, g2: usize, steps: usize) -> u64 {
            if pi.half_size() == 0 {
                return u64::from(g1 == 0 && g2 == 0);
            }
            if steps == 0 {
                return 0;
            }
            let mut total = 0;
            for (kind, next) in orthogonal_successors(pi) {
                total += match kind {
                    EdgeKind::Dashed => brute(&next, g1, g2, steps - 1),
                    EdgeKind::Solid => match classify_defect(pi, &next) {
                        Defect::None => brute(&next, g1, g2, steps - 1),
                        Defect::Minor if g1 > 0 => brute(&next, g1 - 1, g2, steps - 1),
                        Defect::Major if g2 > 0 => brute(&next, g1, g2 - 1, steps - 1),
                        _ => 0,
                    },
                };
            }
            total
        }
        let mut c = OrthogonalPathCounter::new();
        for n in 1..=3 {
            for pi in Pairing::all(n) {
                for (g1, g2) in [(0, 0), (1, 0), (2, 0), (0, 1), (1, 1)] {
                    let steps = n + pi.norm() + g1 + 2 * g2;
                    assert_eq!(
                        c.count(&pi, g1, g2).unwrap(),
                        BigUint::from(brute(&pi, g1, g2, steps)),
                        "{pi} {g1} {g2}"
                    );
                }
            }
        }
    }

    #[test]
    fn path_lists() {
        let paths = minimal_paths_unitary(&cyc("(1 2 3 4)", 4)).unwrap();
        assert_eq!(paths.len(), 5);
        for p in &paths {
            assert_eq!(p.len(), 4 + 3 + 1);
            assert_eq!(p.last().unwrap(), &Permutation::empty());
        }
        let pi: Pairing = "{1-2, 3-7, 4-6, 5-8}".parse().unwrap();
        let opaths = minimal_paths_orthogonal(&pi).unwrap();
        assert_eq!(BigUint::from(opaths.len()), moebius_abs(&pi.coset_type()));
    }
}
