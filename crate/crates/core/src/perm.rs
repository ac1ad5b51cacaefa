//! Permutations of `[n]` in one-line notation.
//!
//! Images are stored 0-based; every text or JSON boundary uses the
//! conventional 1-based labels.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Result, SpectraError};
use crate::partition::Partition;

/// Largest `n` for which lexicographic ranks fit comfortably in `usize`.
pub const MAX_RANKED_N: usize = 20;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u8>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        assert!(n < 256, "permutations are limited to n < 256");
        Self {
            images: (0..n as u8).collect(),
        }
    }

    /// Builds a permutation from 0-based images, checking bijectivity.
    pub fn from_images(images: Vec<u8>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            let x = x as usize;
            if x >= n || seen[x] {
                return Err(SpectraError::InvalidPermutation(format!(
                    "{images:?} is not a bijection on 0..{n}"
                )));
            }
            seen[x] = true;
        }
        Ok(Self { images })
    }

    /// Builds a permutation from 1-based one-line notation, e.g. `[3, 1, 2]`.
    pub fn from_one_line(images: &[usize]) -> Result<Self> {
        let mut zero_based = Vec::with_capacity(images.len());
        for &x in images {
            if x == 0 || x > images.len() || x > 255 {
                return Err(SpectraError::InvalidPermutation(format!(
                    "{images:?}: entries must lie in 1..={}",
                    images.len()
                )));
            }
            zero_based.push((x - 1) as u8);
        }
        Self::from_images(zero_based)
    }

    /// Builds a permutation of `[n]` from disjoint cycles given with 1-based labels.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<u8> = (0..n as u8).collect();
        let mut touched = vec![false; n];
        for cycle in cycles {
            for (k, &a) in cycle.iter().enumerate() {
                if a == 0 || a > n {
                    return Err(SpectraError::InvalidPermutation(format!(
                        "cycle entry {a} outside 1..={n}"
                    )));
                }
                if touched[a - 1] {
                    return Err(SpectraError::InvalidPermutation(format!(
                        "point {a} appears in two cycles"
                    )));
                }
                touched[a - 1] = true;
                let b = cycle[(k + 1) % cycle.len()];
                if b == 0 || b > n {
                    return Err(SpectraError::InvalidPermutation(format!(
                        "cycle entry {b} outside 1..={n}"
                    )));
                }
                images[a - 1] = (b - 1) as u8;
            }
        }
        Self::from_images(images)
    }

    /// Parses cycle notation such as `(1 2 3)(4 5)`; `()` or `e` is the identity.
    pub fn parse_cycles(n: usize, text: &str) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() || text == "e" || text == "()" {
            return Ok(Self::identity(n));
        }
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        for chunk in text.split(')') {
            let chunk = chunk.trim();
            if chunk.is_empty() {
                continue;
            }
            let body = chunk.strip_prefix('(').ok_or_else(|| {
                SpectraError::InvalidPermutation(format!("malformed cycle notation {text:?}"))
            })?;
            let cycle = body
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|s| !s.is_empty())
                .map(|s| {
                    s.parse::<usize>().map_err(|_| {
                        SpectraError::InvalidPermutation(format!("bad label {s:?} in {text:?}"))
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            cycles.push(cycle);
        }
        let refs: Vec<&[usize]> = cycles.iter().map(Vec::as_slice).collect();
        Self::from_cycles(n, &refs)
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    /// 0-based image of the 0-based point `i`.
    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    pub fn images(&self) -> &[u8] {
        &self.images
    }

    pub fn one_line(&self) -> Vec<usize> {
        self.images.iter().map(|&x| x as usize + 1).collect()
    }

    /// `p ∘ q`, i.e. `i ↦ p(q(i))`.
    pub fn compose(&self, q: &Permutation) -> Result<Permutation> {
        if self.n() != q.n() {
            return Err(SpectraError::SizeMismatch {
                expected: self.n(),
                found: q.n(),
            });
        }
        Ok(self.compose_unchecked(q))
    }

    #[inline]
    pub(crate) fn compose_unchecked(&self, q: &Permutation) -> Permutation {
        Permutation {
            images: q.images.iter().map(|&x| self.images[x as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u8; self.n()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u8;
        }
        Permutation { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    /// Disjoint cycles as 0-based point lists, each starting at its least element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x);
                x = self.apply(x);
            }
            out.push(cycle);
        }
        out
    }

    pub fn cycle_lengths(&self) -> Vec<usize> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut lengths = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                len += 1;
                x = self.apply(x);
            }
            lengths.push(len);
        }
        lengths
    }

    pub fn cycle_type(&self) -> Partition {
        Partition::from_unsorted(self.cycle_lengths())
    }

    pub fn cycle_count(&self) -> usize {
        self.cycle_lengths().len()
    }

    pub fn fixed_points(&self) -> usize {
        self.images
            .iter()
            .enumerate()
            .filter(|&(i, &x)| i == x as usize)
            .count()
    }

    pub fn is_derangement(&self) -> bool {
        self.fixed_points() == 0
    }

    /// +1 for even permutations, -1 for odd ones.
    pub fn sign(&self) -> i32 {
        if (self.n() - self.cycle_count()).is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// Whether the two permutations agree at some point.
    #[inline]
    pub fn intersects(&self, other: &Permutation) -> bool {
        self.images.iter().zip(&other.images).any(|(a, b)| a == b)
    }

    pub fn agreements(&self, other: &Permutation) -> usize {
        self.images
            .iter()
            .zip(&other.images)
            .filter(|(a, b)| a == b)
            .count()
    }

    /// The `i`-fix: fixes `i`, sends `p⁻¹(i)` to `p(i)`, agrees with `p`
    /// elsewhere. Equals `p ∘ (p⁻¹(i) i)`. `i` is 0-based.
    pub fn i_fix(&self, i: usize) -> Result<Permutation> {
        let n = self.n();
        if i >= n {
            return Err(SpectraError::Domain(format!("point {i} outside 0..{n}")));
        }
        let pre = self.images.iter().position(|&x| x as usize == i).unwrap();
        let mut images = self.images.clone();
        images[pre] = self.images[i];
        images[i] = i as u8;
        Ok(Permutation { images })
    }

    /// Iterated fix `p_{i1,…,il}`, applied left to right.
    pub fn i_fix_all(&self, points: &[usize]) -> Result<Permutation> {
        points.iter().try_fold(self.clone(), |p, &i| p.i_fix(i))
    }

    /// Lexicographic rank of the image array among all permutations of `[n]`.
    pub fn lex_rank(&self) -> usize {
        let n = self.n();
        assert!(n <= MAX_RANKED_N, "ranking supports n <= {MAX_RANKED_N}");
        let mut used: u32 = 0;
        let mut rank = 0usize;
        for (pos, &x) in self.images.iter().enumerate() {
            let smaller_unused = (x as u32 - (used & ((1u32 << x) - 1)).count_ones()) as usize;
            rank = rank * (n - pos) + smaller_unused;
            used |= 1 << x;
        }
        rank
    }

    /// Inverse of [`Permutation::lex_rank`].
    pub fn from_lex_rank(n: usize, mut rank: usize) -> Permutation {
        assert!(n <= MAX_RANKED_N, "ranking supports n <= {MAX_RANKED_N}");
        let mut radices = vec![0usize; n];
        for pos in (0..n).rev() {
            let base = n - pos;
            radices[pos] = rank % base;
            rank /= base;
        }
        let mut pool: Vec<u8> = (0..n as u8).collect();
        let images = radices.into_iter().map(|r| pool.remove(r)).collect();
        Permutation { images }
    }

    /// All permutations of `[n]` in lexicographic order.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut cur: Vec<u8> = (0..n as u8).collect();
        loop {
            out.push(Permutation {
                images: cur.clone(),
            });
            if !next_permutation(&mut cur) {
                break;
            }
        }
        out
    }

    /// Cycle notation with 1-based labels, fixed points omitted.
    pub fn to_cycle_string(&self) -> String {
        let cycles: Vec<String> = self
            .cycles()
            .into_iter()
            .filter(|c| c.len() > 1)
            .map(|c| {
                let labels: Vec<String> = c.iter().map(|x| (x + 1).to_string()).collect();
                format!("({})", labels.join(" "))
            })
            .collect();
        if cycles.is_empty() {
            "()".to_string()
        } else {
            cycles.concat()
        }
    }
}

fn next_permutation(v: &mut [u8]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.one_line())
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_cycle_string())
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.one_line().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<usize>::deserialize(deserializer)?;
        Permutation::from_one_line(&v).map_err(serde::de::Error::custom)
    }
}
