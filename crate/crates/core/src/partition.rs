//! Integer partitions: cycle types of permutations and coset types of
//! pairings.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::ParseError;
use crate::perm::Permutation;

/// A weakly decreasing sequence of positive integers. The empty partition is
/// the partition of 0 (the level-0 vertex ∅ of the Weingarten graphs).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Validates that `parts` is weakly decreasing and positive.
    pub fn new(parts: Vec<usize>) -> Result<Self, ParseError> {
        for (i, w) in parts.windows(2).enumerate() {
            if w[1] > w[0] {
                return Err(ParseError::new(
                    i + 1,
                    format!("parts must be weakly decreasing ({} < {})", w[0], w[1]),
                ));
            }
        }
        if let Some(i) = parts.iter().position(|&p| p == 0) {
            return Err(ParseError::new(i, "parts must be positive"));
        }
        Ok(Self { parts })
    }

    /// Sorts the (positive) parts decreasingly; zeros are dropped.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self { parts }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    /// `(1, …, 1)` with `n` ones.
    pub fn ones(n: usize) -> Self {
        Self { parts: alloc::vec![1; n] }
    }

    /// The one-part partition `(n)`; empty for `n = 0`.
    pub fn single(n: usize) -> Self {
        Self::from_unsorted(alloc::vec![n])
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Number of parts, ℓ(λ).
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// `size − ℓ(λ)`: the norm of any permutation of this cycle type.
    pub fn norm(&self) -> usize {
        self.size() - self.len()
    }

    /// Largest part, 0 for the empty partition.
    pub fn largest(&self) -> usize {
        self.parts.first().copied().unwrap_or(0)
    }

    pub fn is_all_ones(&self) -> bool {
        self.parts.iter().all(|&p| p == 1)
    }

    /// All partitions of `n` in reverse lexicographic order, starting at `(n)`.
    pub fn all_of(n: usize) -> Vec<Partition> {
        fn rec(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if rest == 0 {
                out.push(Partition { parts: cur.clone() });
                return;
            }
            for p in (1..=rest.min(max)).rev() {
                cur.push(p);
                rec(rest - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, n, &mut Vec::new(), &mut out);
        out
    }

    /// `|S_λ| = n! / ∏ i^{m_i} m_i!`.
    pub fn class_size(&self) -> BigUint {
        let n = self.size();
        let mut num = BigUint::one();
        for k in 2..=n {
            num *= k as u64;
        }
        let mut z = BigUint::one();
        let mut i = 0;
        while i < self.parts.len() {
            let part = self.parts[i];
            let mut mult = 0u64;
            while i < self.parts.len() && self.parts[i] == part {
                mult += 1;
                i += 1;
            }
            for k in 1..=mult {
                z *= part as u64;
                z *= k;
            }
        }
        num / z
    }

    /// The class representative σ_λ ∈ S_n whose largest cycle contains `n`.
    ///
    /// Parts are laid out from the top: the largest part occupies
    /// `n−λ₁+1..=n` as the cycle `(n−λ₁+1 … n)`, the next part the block
    /// below it, and so on.
    pub fn representative(&self) -> Permutation {
        let n = self.size();
        let mut images = alloc::vec![0usize; n];
        let mut top = n;
        for &part in &self.parts {
            let lo = top - part;
            for k in lo..top {
                images[k] = if k + 1 < top { k + 1 } else { lo };
            }
            top = lo;
        }
        Permutation::from_zero_based(images).expect("cycle template is a bijection")
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return f.write_str("∅");
        }
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl FromStr for Partition {
    type Err = ParseError;

    /// Comma list `"3,1,1"`; whitespace around parts is allowed. `""` and
    /// `"∅"` give the empty partition.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let trimmed = s.trim();
        if trimmed.is_empty() || trimmed == "∅" {
            return Ok(Self::empty());
        }
        let mut parts = Vec::new();
        let mut pos = 0;
        for field in s.split(',') {
            let lead = field.len() - field.trim_start().len();
            let t = field.trim();
            let start = pos + lead;
            if t.is_empty() {
                return Err(ParseError::new(start, "empty part"));
            }
            if let Some((i, c)) = t.char_indices().find(|(_, c)| !c.is_ascii_digit()) {
                return Err(ParseError::new(start + i, format!("unexpected character {c:?}")));
            }
            let v: usize = t
                .parse()
                .map_err(|_| ParseError::new(start, "part out of range"))?;
            if v == 0 {
                return Err(ParseError::new(start, "parts must be positive"));
            }
            if let Some(&prev) = parts.last() {
                if v > prev {
                    return Err(ParseError::new(
                        start,
                        format!("parts must be weakly decreasing ({prev} < {v})"),
                    ));
                }
            }
            parts.push(v);
            pos += field.len() + 1;
        }
        Ok(Self { parts })
    }
}

impl Partition {
    /// Text form used in the machine-readable formats (same as `Display`).
    pub fn to_text(&self) -> String {
        format!("{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn counts_partitions() {
        let counts: Vec<usize> = (0..=10).map(|n| Partition::all_of(n).len()).collect();
        assert_eq!(counts, [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]);
        assert_eq!(Partition::all_of(3), [p(&[3]), p(&[2, 1]), p(&[1, 1, 1])]);
    }

    #[test]
    fn class_sizes_sum_to_factorial() {
        for n in 1..=8 {
            let total: BigUint = Partition::all_of(n).iter().map(|l| l.class_size()).sum();
            let fact: BigUint = (1..=n as u64).product();
            assert_eq!(total, fact, "n = {n}");
        }
        assert_eq!(p(&[2, 1]).class_size(), BigUint::from(3u32));
        assert_eq!(p(&[2, 2]).class_size(), BigUint::from(3u32));
        assert_eq!(p(&[3, 3]).class_size(), BigUint::from(40u32));
    }

    #[test]
    fn representative_has_top_in_largest_cycle() {
        for n in 1..=7 {
            for lambda in Partition::all_of(n) {
                let rep = lambda.representative();
                assert_eq!(rep.cycle_type(), &lambda);
                let top_cycle = rep.cycle_of(n);
                assert_eq!(top_cycle.len(), lambda.largest());
            }
        }
    }

    #[test]
    fn parse_and_print() {
        assert_eq!("3,1,1".parse::<Partition>().unwrap(), p(&[3, 1, 1]));
        assert_eq!(" 2 , 2 ".parse::<Partition>().unwrap(), p(&[2, 2]));
        assert_eq!("".parse::<Partition>().unwrap(), Partition::empty());
        assert_eq!(p(&[3, 1, 1]).to_string(), "3,1,1");
        assert_eq!(Partition::empty().to_string(), "∅");
        let err = "1,3".parse::<Partition>().unwrap_err();
        assert_eq!(err.position, 2);
        let err = "2,x".parse::<Partition>().unwrap_err();
        assert_eq!(err.position, 2);
        assert!("2,,1".parse::<Partition>().is_err());
        assert!("2,0".parse::<Partition>().is_err());
        assert!(Partition::new(alloc::vec![1, 2]).is_err());
    }
}
