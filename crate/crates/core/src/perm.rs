//! Permutations of `[n]`.
//!
//! Composition is `(a ∘ b)(i) = a(b(i))` throughout the crate. Points are
//! 1-based in every public method and in the text formats; storage is
//! 0-based.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use rand_core::RngCore;

use crate::error::{ParseError, WgError};
use crate::partition::Partition;
use crate::rng::shuffle;

/// A bijection of `{1, …, n}`. Degree 0 is allowed and stands for the empty
/// permutation ∅ at the bottom of the Weingarten graph.
///
/// The cycle type is computed once at construction.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
    cycle_type: Partition,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Self::build((0..n).collect())
    }

    /// The empty permutation ∅.
    pub fn empty() -> Self {
        Self::identity(0)
    }

    fn build(images: Vec<usize>) -> Self {
        let cycle_type = cycle_type_of(&images);
        Self { images, cycle_type }
    }

    /// From 0-based images; rejects non-bijections.
    pub fn from_zero_based(images: Vec<usize>) -> Result<Self, WgError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in &images {
            if v >= n {
                return Err(WgError::IndexOutOfRange {
                    index: v + 1,
                    context: "permutation image",
                });
            }
            if seen[v] {
                return Err(WgError::InvalidArgument(format!(
                    "{} appears twice among the images",
                    v + 1
                )));
            }
            seen[v] = true;
        }
        Ok(Self::build(images))
    }

    /// From 1-based one-line images `σ(1) … σ(n)`.
    pub fn from_one_line(images: &[usize]) -> Result<Self, WgError> {
        if let Some(&bad) = images.iter().find(|&&v| v == 0 || v > images.len()) {
            return Err(WgError::IndexOutOfRange {
                index: bad,
                context: "permutation image",
            });
        }
        Self::from_zero_based(images.iter().map(|v| v - 1).collect())
    }

    /// The transposition `(i j)` in `S_n` (1-based, `i ≠ j`).
    pub fn transposition(n: usize, i: usize, j: usize) -> Result<Self, WgError> {
        for k in [i, j] {
            if k == 0 || k > n {
                return Err(WgError::IndexOutOfRange {
                    index: k,
                    context: "transposition",
                });
            }
        }
        if i == j {
            return Err(WgError::InvalidArgument(format!("({i} {j}) is not a transposition")));
        }
        let mut images: Vec<usize> = (0..n).collect();
        images.swap(i - 1, j - 1);
        Ok(Self::build(images))
    }

    /// From disjoint 1-based cycles in `S_n`. Points not mentioned are fixed.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self, WgError> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut seen = vec![false; n];
        for cycle in cycles {
            for (k, &a) in cycle.iter().enumerate() {
                if a == 0 || a > n {
                    return Err(WgError::IndexOutOfRange {
                        index: a,
                        context: "cycle entry",
                    });
                }
                if seen[a - 1] {
                    return Err(WgError::InvalidArgument(format!("{a} appears in two places")));
                }
                seen[a - 1] = true;
                let b = cycle[(k + 1) % cycle.len()];
                images[a - 1] = b - 1;
            }
        }
        Ok(Self::build(images))
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// `σ(i)`, 1-based.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1] + 1
    }

    /// 0-based images.
    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// 1-based one-line form.
    pub fn one_line(&self) -> Vec<usize> {
        self.images.iter().map(|v| v + 1).collect()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation, WgError> {
        if self.degree() != other.degree() {
            return Err(WgError::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(Self::build(other.images.iter().map(|&b| self.images[b]).collect()))
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.degree()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v] = i;
        }
        Self::build(inv)
    }

    /// `η⁻¹ ∘ σ ∘ η`.
    pub fn conjugate_by(&self, eta: &Permutation) -> Result<Permutation, WgError> {
        eta.inverse().compose(&self.compose(eta)?)
    }

    /// Disjoint cycles (fixed points included), each starting at its least
    /// element, ordered by that element. 1-based.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut k = start;
            while !seen[k] {
                seen[k] = true;
                cycle.push(k + 1);
                k = self.images[k];
            }
            out.push(cycle);
        }
        out
    }

    /// The cycle through `i` read forward from `i`: `(i, σ(i), σ²(i), …)`.
    pub fn cycle_of(&self, i: usize) -> Vec<usize> {
        let mut cycle = vec![i];
        let mut k = self.images[i - 1] + 1;
        while k != i {
            cycle.push(k);
            k = self.images[k - 1] + 1;
        }
        cycle
    }

    pub fn cycle_type(&self) -> &Partition {
        &self.cycle_type
    }

    pub fn num_cycles(&self) -> usize {
        self.cycle_type.len()
    }

    /// `|σ| = n − #cycles`.
    pub fn norm(&self) -> usize {
        self.degree() - self.num_cycles()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// Whether `σ(n) = n`. False for ∅.
    pub fn fixes_top(&self) -> bool {
        self.images.last().is_some_and(|&v| v + 1 == self.degree())
    }

    /// `σ|_{[n−1]}`, defined when `σ(n) = n`.
    pub fn restrict(&self) -> Result<Permutation, WgError> {
        if !self.fixes_top() {
            return Err(WgError::InvalidArgument(String::from(
                "restriction needs σ(n) = n",
            )));
        }
        Ok(Self::build(self.images[..self.degree() - 1].to_vec()))
    }

    /// `(i n) ∘ σ` for `1 ≤ i < n`: the solid edge of the unitary graph.
    pub fn left_transpose(&self, i: usize) -> Result<Permutation, WgError> {
        let n = self.degree();
        if i == 0 || i >= n {
            return Err(WgError::IndexOutOfRange {
                index: i,
                context: "solid edge (i n) needs 1 ≤ i < n",
            });
        }
        let (a, b) = (i - 1, n - 1);
        let images = self
            .images
            .iter()
            .map(|&v| if v == a { b } else if v == b { a } else { v })
            .collect();
        Ok(Self::build(images))
    }

    /// Every permutation of `[k]` in lexicographic one-line order.
    pub fn all(k: usize) -> Vec<Permutation> {
        let mut cur: Vec<usize> = (0..k).collect();
        let mut out = vec![Self::build(cur.clone())];
        // next lexicographic permutation
        loop {
            let Some(i) = (1..k).rev().find(|&i| cur[i - 1] < cur[i]) else {
                return out;
            };
            let j = (i..k).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
            cur.swap(i - 1, j);
            cur[i..].reverse();
            out.push(Self::build(cur.clone()));
        }
    }

    /// A uniform element of the conjugacy class `S_λ`: a uniformly shuffled
    /// arrangement of `[n]` poured into the cycle template of `λ`.
    pub fn uniform_class_sample<R: RngCore + ?Sized>(lambda: &Partition, rng: &mut R) -> Permutation {
        let n = lambda.size();
        let mut order: Vec<usize> = (0..n).collect();
        shuffle(rng, &mut order);
        let mut images = vec![0; n];
        let mut at = 0;
        for &part in lambda.parts() {
            let block = &order[at..at + part];
            for k in 0..part {
                images[block[k]] = block[(k + 1) % part];
            }
            at += part;
        }
        Self::build(images)
    }

    /// Parses cycle notation such as `"(1 2 3)(4 5)"` in `S_n`. Entries may
    /// be separated by spaces or commas; `"()"` and `""` give the identity.
    /// With `n = None` the degree is the largest entry.
    pub fn parse_cycles(text: &str, n: Option<usize>) -> Result<Permutation, ParseError> {
        let mut cycles: Vec<(usize, Vec<(usize, usize)>)> = Vec::new();
        let mut current: Option<Vec<(usize, usize)>> = None;
        let mut open_at = 0;
        let bytes = text.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            let c = bytes[i];
            match c {
                b'(' => {
                    if current.is_some() {
                        return Err(ParseError::new(i, "nested '('"));
                    }
                    current = Some(Vec::new());
                    open_at = i;
                    i += 1;
                }
                b')' => {
                    let Some(cycle) = current.take() else {
                        return Err(ParseError::new(i, "unmatched ')'"));
                    };
                    cycles.push((open_at, cycle));
                    i += 1;
                }
                b' ' | b'\t' | b',' => i += 1,
                b'0'..=b'9' => {
                    let start = i;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    let Some(cycle) = current.as_mut() else {
                        return Err(ParseError::new(start, "number outside a cycle"));
                    };
                    let v: usize = text[start..i]
                        .parse()
                        .map_err(|_| ParseError::new(start, "entry out of range"))?;
                    if v == 0 {
                        return Err(ParseError::new(start, "points are numbered from 1"));
                    }
                    cycle.push((start, v));
                }
                _ => {
                    let ch = text[i..].chars().next().unwrap_or('?');
                    return Err(ParseError::new(i, format!("unexpected character {ch:?}")));
                }
            }
        }
        if current.is_some() {
            return Err(ParseError::new(open_at, "unclosed '('"));
        }
        let max = cycles
            .iter()
            .flat_map(|(_, c)| c.iter().map(|&(_, v)| v))
            .max()
            .unwrap_or(0);
        let n = n.unwrap_or(max);
        let mut images: Vec<usize> = (0..n).collect();
        let mut seen = vec![false; n];
        for (_, cycle) in &cycles {
            for (k, &(pos, v)) in cycle.iter().enumerate() {
                if v > n {
                    return Err(ParseError::new(pos, format!("{v} exceeds the degree {n}")));
                }
                if seen[v - 1] {
                    return Err(ParseError::new(pos, format!("{v} repeated: not a bijection")));
                }
                seen[v - 1] = true;
                images[v - 1] = cycle[(k + 1) % cycle.len()].1 - 1;
            }
        }
        Ok(Self::build(images))
    }

    /// Parses one-line notation `"3 1 2"` (space or comma separated).
    pub fn parse_one_line(text: &str) -> Result<Permutation, ParseError> {
        let bytes = text.as_bytes();
        let mut entries = Vec::new();
        let mut i = 0;
        while i < bytes.len() {
            match bytes[i] {
                b' ' | b'\t' | b',' => i += 1,
                b'0'..=b'9' => {
                    let start = i;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    let v: usize = text[start..i]
                        .parse()
                        .map_err(|_| ParseError::new(start, "entry out of range"))?;
                    entries.push((start, v));
                }
                _ => {
                    let ch = text[i..].chars().next().unwrap_or('?');
                    return Err(ParseError::new(i, format!("unexpected character {ch:?}")));
                }
            }
        }
        let n = entries.len();
        let mut seen = vec![false; n];
        let mut images = Vec::with_capacity(n);
        for &(pos, v) in &entries {
            if v == 0 || v > n {
                return Err(ParseError::new(pos, format!("{v} is not in 1..={n}")));
            }
            if seen[v - 1] {
                return Err(ParseError::new(pos, format!("{v} repeated: not a bijection")));
            }
            seen[v - 1] = true;
            images.push(v - 1);
        }
        Ok(Self::build(images))
    }

    /// One-line text form, `"3 1 2"`.
    pub fn to_one_line_string(&self) -> String {
        let mut s = String::new();
        for (k, v) in self.images.iter().enumerate() {
            if k > 0 {
                s.push(' ');
            }
            s.push_str(&format!("{}", v + 1));
        }
        s
    }
}

fn cycle_type_of(images: &[usize]) -> Partition {
    let mut seen = vec![false; images.len()];
    let mut lengths = Vec::new();
    for start in 0..images.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut k = start;
        while !seen[k] {
            seen[k] = true;
            len += 1;
            k = images[k];
        }
        lengths.push(len);
    }
    Partition::from_unsorted(lengths)
}

/// Cycle notation without fixed points; the identity prints as `"()"` and ∅
/// as `"∅"`.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree() == 0 {
            return f.write_str("∅");
        }
        let mut any = false;
        for cycle in self.cycles() {
            if cycle.len() < 2 {
                continue;
            }
            any = true;
            f.write_str("(")?;
            for (k, v) in cycle.iter().enumerate() {
                if k > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{v}")?;
            }
            f.write_str(")")?;
        }
        if !any {
            f.write_str("()")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::stream_rng;
    use proptest::prelude::*;

    fn cyc(s: &str, n: usize) -> Permutation {
        Permutation::parse_cycles(s, Some(n)).unwrap()
    }

    #[test]
    fn composition_convention() {
        let t = cyc("(1 2)", 2);
        assert!(t.compose(&t).unwrap().is_identity());
        let a = cyc("(1 2)", 3);
        let b = cyc("(2 3)", 3);
        let ab = a.compose(&b).unwrap();
        for i in 1..=3 {
            assert_eq!(ab.apply(i), a.apply(b.apply(i)));
        }
        assert_eq!(ab, cyc("(1 2 3)", 3));
        let s = cyc("(1 3)(2 4)", 4);
        assert_eq!(Permutation::identity(4).compose(&s).unwrap(), s);
        assert!(matches!(
            a.compose(&Permutation::identity(2)),
            Err(WgError::DegreeMismatch { left: 3, right: 2 })
        ));
    }

    #[test]
    fn cycle_types_and_norms() {
        assert_eq!(Permutation::identity(4).cycle_type().parts(), &[1, 1, 1, 1]);
        assert_eq!(cyc("(1 2)(3 4)", 4).cycle_type().parts(), &[2, 2]);
        assert_eq!(cyc("(1 2 3)", 5).cycle_type().parts(), &[3, 1, 1]);
        assert_eq!(Permutation::identity(5).norm(), 0);
        assert_eq!(cyc("(1 2 3)", 3).norm(), 2);
        assert_eq!(cyc("(1 2)(3 4)", 4).norm(), 2);
    }

    #[test]
    fn text_forms() {
        let s = cyc("(1 2 3)(4 5)", 5);
        assert_eq!(s.to_string(), "(1 2 3)(4 5)");
        assert_eq!(s.to_one_line_string(), "2 3 1 5 4");
        assert_eq!(Permutation::parse_one_line("3 1 2").unwrap().to_string(), "(1 3 2)");
        assert_eq!(Permutation::identity(3).to_string(), "()");
        assert_eq!(Permutation::empty().to_string(), "∅");
        assert_eq!(Permutation::parse_cycles("(2,3)", None).unwrap().degree(), 3);

        let e = Permutation::parse_cycles("(1 2)(2 3)", Some(3)).unwrap_err();
        assert_eq!(e.position, 6);
        let e = Permutation::parse_cycles("(1 4)", Some(3)).unwrap_err();
        assert_eq!(e.position, 3);
        let e = Permutation::parse_cycles("(1 2", Some(3)).unwrap_err();
        assert_eq!(e.position, 0);
        let e = Permutation::parse_one_line("1 1 2").unwrap_err();
        assert_eq!(e.position, 2);
        let e = Permutation::parse_one_line("1 x").unwrap_err();
        assert_eq!(e.position, 2);
    }

    #[test]
    fn graph_moves() {
        let s = cyc("(1 2)", 3);
        assert!(s.fixes_top());
        assert_eq!(s.restrict().unwrap(), cyc("(1 2)", 2));
        // (1 3)∘(1 2 3): 1→2, 2→3→1, 3→1→3
        let c = cyc("(1 2 3)", 3);
        assert_eq!(c.left_transpose(1).unwrap(), cyc("(1 2)", 3));
        assert!(c.left_transpose(3).is_err());
        assert!(c.restrict().is_err());
    }

    #[test]
    fn enumerates_symmetric_group() {
        let all = Permutation::all(4);
        assert_eq!(all.len(), 24);
        let mut sorted = all.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), 24);
        assert_eq!(Permutation::all(0).len(), 1);
    }

    #[test]
    fn transposition_changes_norm_by_one() {
        for n in 2..=6 {
            for s in Permutation::all(n) {
                for i in 1..=n {
                    for j in i + 1..=n {
                        let t = Permutation::transposition(n, i, j).unwrap();
                        let ts = t.compose(&s).unwrap();
                        let same = s.cycle_of(i).contains(&j);
                        let expect = if same { s.norm() - 1 } else { s.norm() + 1 };
                        assert_eq!(ts.norm(), expect);
                    }
                }
            }
        }
    }

    #[test]
    fn conjugation_preserves_cycle_type() {
        for n in 1..=5 {
            let all = Permutation::all(n);
            for s in &all {
                for eta in &all {
                    assert_eq!(s.conjugate_by(eta).unwrap().cycle_type(), s.cycle_type());
                }
            }
        }
    }

    #[test]
    fn class_sample_support_and_frequencies() {
        let mut rng = stream_rng(3, 0);
        let full = Partition::single(6);
        for _ in 0..50 {
            let s = Permutation::uniform_class_sample(&full, &mut rng);
            assert_eq!(s.cycle_type(), &full);
        }
        let ones = Partition::ones(4);
        assert!(Permutation::uniform_class_sample(&ones, &mut rng).is_identity());

        let lambda = Partition::new(vec![2, 1]).unwrap();
        let runs = 100_000u32;
        let mut counts = [0u32; 3];
        for _ in 0..runs {
            let s = Permutation::uniform_class_sample(&lambda, &mut rng);
            let fixed = (1..=3).find(|&i| s.apply(i) == i).unwrap();
            counts[fixed - 1] += 1;
        }
        let p = 1.0 / 3.0;
        let se = (p * (1.0 - p) / runs as f64).sqrt();
        for c in counts {
            let f = c as f64 / runs as f64;
            assert!((f - p).abs() <= 5.0 * se, "frequency {f}");
        }
    }

    proptest! {
        #[test]
        fn inverse_and_associativity(
            a in Just((0..7usize).collect::<Vec<_>>()).prop_shuffle(),
            b in Just((0..7usize).collect::<Vec<_>>()).prop_shuffle(),
            c in Just((0..7usize).collect::<Vec<_>>()).prop_shuffle(),
        ) {
            let a = Permutation::from_zero_based(a).unwrap();
            let b = Permutation::from_zero_based(b).unwrap();
            let c = Permutation::from_zero_based(c).unwrap();
            let left = a.compose(&b).unwrap().compose(&c).unwrap();
            let right = a.compose(&b.compose(&c).unwrap()).unwrap();
            prop_assert_eq!(left, right);
            prop_assert!(a.compose(&a.inverse()).unwrap().is_identity());
            prop_assert_eq!(a.cycle_type().size(), 7);
            prop_assert_eq!(Permutation::parse_cycles(&a.to_string(), Some(7)).unwrap(), a.clone());
            prop_assert_eq!(Permutation::parse_one_line(&a.to_one_line_string()).unwrap(), a);
        }
    }
}
