//! Pair partitions of `[2n]`, the transposition action `τ.π` and coset types.
//!
//! The coset graph of `π` joins `2i−1` and `2i` by a blue edge for every
//! `i ≤ n` and `k`, `π(k)` by a red edge. Every vertex has one edge of each
//! colour, so components are even alternating cycles; halving their sizes
//! gives the coset type.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use rand_core::RngCore;

use crate::error::{ParseError, WgError};
use crate::partition::Partition;
use crate::perm::Permutation;
use crate::rng::{shuffle, uniform_u64_below};

/// A perfect matching of `[2n]`, stored as a fixed-point-free involution.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pairing {
    partner: Vec<usize>,
}

/// The alternating cycle through `2n−1`, red edge first. Vertices are
/// 1-based; the first is `2n−1` and the last is `2n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetWalk {
    pub vertices: Vec<usize>,
}

impl CosetWalk {
    /// Half the component size.
    pub fn m(&self) -> usize {
        self.vertices.len() / 2
    }

    /// `i_k` in the usual indexing, with `i_0 = 2n−1`.
    pub fn index(&self, k: usize) -> usize {
        self.vertices[k]
    }
}

/// A transposition `(i 2n−1)` that splits the component of `2n−1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SplitTarget {
    /// The point `i = i_{2j}` of the walk.
    pub index: usize,
    /// `j`, the position along the walk.
    pub j: usize,
    /// Halved size of the new component containing `2n−1`.
    pub top_size: usize,
    /// Halved size of the other new component.
    pub other_size: usize,
}

struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        let (big, small) = if self.size[ra] >= self.size[rb] { (ra, rb) } else { (rb, ra) };
        self.parent[small] = big;
        self.size[big] += self.size[small];
    }
}

impl Pairing {
    /// `𝔢 = {{1,2}, …, {2n−1,2n}}`.
    pub fn canonical(n: usize) -> Self {
        Self {
            partner: (0..2 * n).map(|k| k ^ 1).collect(),
        }
    }

    /// The empty pairing ∅ (n = 0).
    pub fn empty() -> Self {
        Self::canonical(0)
    }

    /// From 0-based partners; rejects anything that is not a fixed-point-free
    /// involution of even length.
    pub fn from_partner(partner: Vec<usize>) -> Result<Self, WgError> {
        let len = partner.len();
        if len % 2 == 1 {
            return Err(WgError::InvalidArgument(String::from("odd number of points")));
        }
        for (k, &p) in partner.iter().enumerate() {
            if p >= len {
                return Err(WgError::IndexOutOfRange {
                    index: p + 1,
                    context: "pairing partner",
                });
            }
            if p == k || partner[p] != k {
                return Err(WgError::InvalidArgument(format!("point {} is not properly paired", k + 1)));
            }
        }
        Ok(Self { partner })
    }

    /// From 1-based pairs.
    pub fn from_pairs(pairs: &[(usize, usize)]) -> Result<Self, WgError> {
        let len = 2 * pairs.len();
        let mut partner = vec![usize::MAX; len];
        for &(a, b) in pairs {
            for x in [a, b] {
                if x == 0 || x > len {
                    return Err(WgError::IndexOutOfRange {
                        index: x,
                        context: "pairing point",
                    });
                }
                if partner[x - 1] != usize::MAX {
                    return Err(WgError::InvalidArgument(format!("point {x} paired twice")));
                }
            }
            if a == b {
                return Err(WgError::InvalidArgument(format!("point {a} paired with itself")));
            }
            partner[a - 1] = b - 1;
            partner[b - 1] = a - 1;
        }
        Ok(Self { partner })
    }

    /// Every pairing of `[2n]`: `(2n−1)!!` of them.
    pub fn all(n: usize) -> Vec<Pairing> {
        fn rec(partner: &mut Vec<usize>, out: &mut Vec<Pairing>) {
            let Some(a) = partner.iter().position(|&p| p == usize::MAX) else {
                out.push(Pairing { partner: partner.clone() });
                return;
            };
            for b in a + 1..partner.len() {
                if partner[b] == usize::MAX {
                    partner[a] = b;
                    partner[b] = a;
                    rec(partner, out);
                    partner[a] = usize::MAX;
                    partner[b] = usize::MAX;
                }
            }
        }
        let mut out = Vec::new();
        rec(&mut vec![usize::MAX; 2 * n], &mut out);
        out
    }

    /// `n` for a pairing of `[2n]`.
    pub fn half_size(&self) -> usize {
        self.partner.len() / 2
    }

    /// `π(k)`, 1-based.
    pub fn partner_of(&self, k: usize) -> usize {
        self.partner[k - 1] + 1
    }

    /// 0-based partner array.
    pub fn partners(&self) -> &[usize] {
        &self.partner
    }

    /// Pairs `(a, b)` with `a < b`, sorted by `a`. 1-based.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.partner
            .iter()
            .enumerate()
            .filter(|(k, &p)| *k < p)
            .map(|(k, &p)| (k + 1, p + 1))
            .collect()
    }

    /// `σ.π`: both members of every pair relabelled through `σ ∈ S_{2n}`.
    pub fn relabel(&self, sigma: &Permutation) -> Result<Pairing, WgError> {
        if sigma.degree() != self.partner.len() {
            return Err(WgError::DegreeMismatch {
                left: sigma.degree(),
                right: self.partner.len(),
            });
        }
        let s = sigma.images();
        let mut partner = vec![0; self.partner.len()];
        for (k, &p) in self.partner.iter().enumerate() {
            partner[s[k]] = s[p];
        }
        Ok(Pairing { partner })
    }

    /// `(i j).π` for 1-based `i ≠ j`.
    pub fn act_transposition(&self, i: usize, j: usize) -> Result<Pairing, WgError> {
        let len = self.partner.len();
        for x in [i, j] {
            if x == 0 || x > len {
                return Err(WgError::IndexOutOfRange {
                    index: x,
                    context: "transposition on [2n]",
                });
            }
        }
        let (a, b) = (i - 1, j - 1);
        let swap = |x: usize| if x == a { b } else if x == b { a } else { x };
        let mut partner = vec![0; len];
        for (k, &p) in self.partner.iter().enumerate() {
            partner[swap(k)] = swap(p);
        }
        Ok(Pairing { partner })
    }

    /// `(i 2n−1).π` for `1 ≤ i < 2n−1`: the solid edge of the orthogonal graph.
    pub fn act(&self, i: usize) -> Result<Pairing, WgError> {
        let top = self.partner.len().saturating_sub(1);
        if i == 0 || i >= top {
            return Err(WgError::IndexOutOfRange {
                index: i,
                context: "solid edge (i 2n−1) needs 1 ≤ i < 2n−1",
            });
        }
        self.act_transposition(i, top)
    }

    fn components(&self) -> UnionFind {
        let len = self.partner.len();
        let mut uf = UnionFind::new(len);
        for k in 0..len {
            uf.union(k, k ^ 1);
            uf.union(k, self.partner[k]);
        }
        uf
    }

    /// Number of components of the graph joining the pairs of `self` and of
    /// `other`: the loop count `ℓ(π, ρ)` in the orthogonal Gram kernel.
    pub fn loops_with(&self, other: &Pairing) -> Result<usize, WgError> {
        if self.partner.len() != other.partner.len() {
            return Err(WgError::DegreeMismatch {
                left: self.partner.len(),
                right: other.partner.len(),
            });
        }
        let len = self.partner.len();
        let mut uf = UnionFind::new(len);
        for k in 0..len {
            uf.union(k, self.partner[k]);
            uf.union(k, other.partner[k]);
        }
        Ok((0..len).filter(|&k| uf.find(k) == k).count())
    }

    /// Halved component sizes of the coset graph, sorted decreasingly.
    pub fn coset_type(&self) -> Partition {
        let mut uf = self.components();
        let mut sizes = Vec::new();
        for k in 0..self.partner.len() {
            if uf.find(k) == k {
                sizes.push(uf.size[k] / 2);
            }
        }
        Partition::from_unsorted(sizes)
    }

    /// `|π| = n − ℓ(coset type)`.
    pub fn norm(&self) -> usize {
        self.coset_type().norm()
    }

    /// Whether `{2n−1, 2n}` is a pair. False for ∅.
    pub fn contains_top_pair(&self) -> bool {
        let len = self.partner.len();
        len >= 2 && self.partner[len - 2] == len - 1
    }

    /// Drops the pair `{2n−1, 2n}`: the dashed edge of the orthogonal graph.
    pub fn remove_top_pair(&self) -> Result<Pairing, WgError> {
        if !self.contains_top_pair() {
            return Err(WgError::InvalidArgument(String::from(
                "removal needs the pair {2n−1, 2n}",
            )));
        }
        let len = self.partner.len();
        Ok(Pairing {
            partner: self.partner[..len - 2].to_vec(),
        })
    }

    /// The alternating walk around the component of `2n−1`, red edge first.
    /// Needs `n ≥ 1`.
    pub fn coset_walk(&self) -> CosetWalk {
        let len = self.partner.len();
        let start = len - 2;
        let mut vertices = vec![start + 1];
        let mut v = start;
        loop {
            v = self.partner[v];
            vertices.push(v + 1);
            let blue = v ^ 1;
            if blue == start {
                break;
            }
            v = blue;
            vertices.push(v + 1);
        }
        CosetWalk { vertices }
    }

    /// The `m − 1` transpositions `(i_{2j} 2n−1)` that split the component
    /// of `2n−1`, with the sizes of the two pieces recomputed from `τ.π`.
    pub fn split_targets(&self) -> Vec<SplitTarget> {
        let walk = self.coset_walk();
        let m = walk.m();
        let top = self.partner.len() - 1;
        (1..m)
            .map(|j| {
                let index = walk.index(2 * j);
                let child = self.act(index).expect("walk vertex below 2n−1");
                let mut uf = child.components();
                let root = uf.find(top - 1);
                let top_size = uf.size[root] / 2;
                SplitTarget {
                    index,
                    j,
                    top_size,
                    other_size: m - top_size,
                }
            })
            .collect()
    }

    /// The pairing as an involution of `[2n]`.
    pub fn as_involution(&self) -> Permutation {
        Permutation::from_zero_based(self.partner.clone()).expect("partner array is a bijection")
    }

    /// A fixed pairing of coset type `μ`. Parts are laid out from the top as
    /// consecutive blue blocks `b_1 < … < b_m`, joined by the red pairs
    /// `{2b_j, 2b_{j+1}−1}` cyclically.
    pub fn coset_representative(mu: &Partition) -> Pairing {
        let n = mu.size();
        let mut partner = vec![0; 2 * n];
        let mut top = n;
        for &part in mu.parts() {
            let lo = top - part;
            for b in lo..top {
                let next = if b + 1 < top { b + 1 } else { lo };
                // 0-based: 2b+1 is the upper point of block b, 2·next its lower point.
                partner[2 * b + 1] = 2 * next;
                partner[2 * next] = 2 * b + 1;
            }
            top = lo;
        }
        Pairing { partner }
    }

    /// A uniform pairing of coset type `μ`: a uniform hyperoctahedral element
    /// (block permutation plus independent flips) applied to the
    /// representative. The class is a single orbit, so this is exact.
    pub fn uniform_coset_sample<R: RngCore + ?Sized>(mu: &Partition, rng: &mut R) -> Pairing {
        let n = mu.size();
        let mut blocks: Vec<usize> = (0..n).collect();
        shuffle(rng, &mut blocks);
        let mut h = vec![0; 2 * n];
        for (b, &target) in blocks.iter().enumerate() {
            let flip = uniform_u64_below(rng, 2) as usize;
            h[2 * b] = 2 * target + flip;
            h[2 * b + 1] = 2 * target + (1 - flip);
        }
        let h = Permutation::from_zero_based(h).expect("hyperoctahedral element");
        Self::coset_representative(mu).relabel(&h).expect("matching degree")
    }
}

impl fmt::Display for Pairing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, (a, b)) in self.pairs().into_iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{a}-{b}")?;
        }
        f.write_str("}")
    }
}

impl FromStr for Pairing {
    type Err = ParseError;

    /// `"{1-2, 3-7, 4-6, 5-8}"`; whitespace is ignored and the braces are
    /// optional.
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let bytes = text.as_bytes();
        let mut i = 0;
        let skip_ws = |i: &mut usize| {
            while *i < bytes.len() && bytes[*i].is_ascii_whitespace() {
                *i += 1;
            }
        };
        let number = |i: &mut usize| -> Result<(usize, usize), ParseError> {
            let start = *i;
            while *i < bytes.len() && bytes[*i].is_ascii_digit() {
                *i += 1;
            }
            if start == *i {
                let found = text[start..].chars().next();
                return Err(ParseError::new(
                    start,
                    match found {
                        Some(c) => format!("expected a number, found {c:?}"),
                        None => String::from("expected a number, found end of input"),
                    },
                ));
            }
            let v = text[start..*i]
                .parse()
                .map_err(|_| ParseError::new(start, "number out of range"))?;
            Ok((start, v))
        };

        skip_ws(&mut i);
        let braced = i < bytes.len() && bytes[i] == b'{';
        if braced {
            i += 1;
        }
        let mut pairs: Vec<((usize, usize), (usize, usize))> = Vec::new();
        skip_ws(&mut i);
        let empty = i < bytes.len() && bytes[i] == b'}' || i == bytes.len();
        if !empty {
            loop {
                skip_ws(&mut i);
                let a = number(&mut i)?;
                skip_ws(&mut i);
                if i >= bytes.len() || bytes[i] != b'-' {
                    return Err(ParseError::new(i, "expected '-' between paired points"));
                }
                i += 1;
                skip_ws(&mut i);
                let b = number(&mut i)?;
                pairs.push((a, b));
                skip_ws(&mut i);
                if i < bytes.len() && bytes[i] == b',' {
                    i += 1;
                    continue;
                }
                break;
            }
        }
        skip_ws(&mut i);
        if braced {
            if i >= bytes.len() || bytes[i] != b'}' {
                return Err(ParseError::new(i, "expected ',' or '}'"));
            }
            i += 1;
            skip_ws(&mut i);
        }
        if i != bytes.len() {
            return Err(ParseError::new(i, "trailing characters"));
        }

        let len = 2 * pairs.len();
        let mut partner = vec![usize::MAX; len];
        for &((pa, a), (pb, b)) in &pairs {
            for (pos, x) in [(pa, a), (pb, b)] {
                if x == 0 || x > len {
                    return Err(ParseError::new(pos, format!("{x} is not in 1..={len}")));
                }
                if partner[x - 1] != usize::MAX {
                    return Err(ParseError::new(pos, format!("{x} is paired twice")));
                }
            }
            if a == b {
                return Err(ParseError::new(pb, format!("{a} is paired with itself")));
            }
            partner[a - 1] = b - 1;
            partner[b - 1] = a - 1;
        }
        Ok(Pairing { partner })
    }
}
