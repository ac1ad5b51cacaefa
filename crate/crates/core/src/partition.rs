//! Integer partitions: cycle types and irreducible labels of `S_n`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Result, SpectraError};

/// Non-increasing sequence of positive parts. The empty partition is the unique
/// partition of 0.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(SpectraError::InvalidPartition(format!(
                "{parts:?} has a zero part"
            )));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(SpectraError::InvalidPartition(format!(
                "{parts:?} is not non-increasing"
            )));
        }
        Ok(Self { parts })
    }

    /// Sorts the parts and drops zeros.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self { parts }
    }

    /// `(n)`.
    pub fn row(n: usize) -> Self {
        Self::from_unsorted(vec![n])
    }

    /// `(1^n)`.
    pub fn column(n: usize) -> Self {
        Self { parts: vec![1; n] }
    }

    /// `(head, 1^k)`.
    pub fn hook(head: usize, k: usize) -> Self {
        let mut parts = vec![head];
        parts.extend(std::iter::repeat_n(1, k));
        Self::from_unsorted(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Multiplicity of the part `k`.
    pub fn multiplicity(&self, k: usize) -> usize {
        self.parts.iter().filter(|&&p| p == k).count()
    }

    /// Sign of any permutation with this cycle type: `(-1)^(n - #parts)`.
    pub fn class_sign(&self) -> i32 {
        if (self.n() - self.len()).is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// Conjugate partition (rows and columns interchanged).
    pub fn transpose(&self) -> Partition {
        let width = self.parts.first().copied().unwrap_or(0);
        let parts = (0..width)
            .map(|j| self.parts.iter().take_while(|&&p| p > j).count())
            .collect();
        Partition { parts }
    }

    /// Comma-separated parts, used as a JSON object key.
    pub fn key(&self) -> String {
        self.parts
            .iter()
            .map(|p| p.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// All partitions of `n` in reverse lexicographic order, `(n)` first and `(1^n)` last.
pub fn partitions_of(n: usize) -> Vec<Partition> {
    fn rec(remaining: usize, max_part: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition {
                parts: prefix.clone(),
            });
            return;
        }
        for p in (1..=remaining.min(max_part)).rev() {
            prefix.push(p);
            rec(remaining - p, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic order on the parts; [`partitions_of`] lists in descending order.
impl Ord for Partition {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.parts.cmp(&other.parts)
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.key())
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.key())
    }
}

impl FromStr for Partition {
    type Err = SpectraError;

    /// Accepts `3,2,2`, `(3,2,2)` or `3 2 2`.
    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim().trim_start_matches(['(', '[']).trim_end_matches([')', ']']);
        let parts = body
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| SpectraError::InvalidPartition(format!("bad part {t:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.parts.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<usize>::deserialize(deserializer)?;
        Partition::new(v).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    /// Euler's pentagonal recurrence, independent of the enumerator.
    fn partition_count(n: usize) -> u64 {
        let mut table = vec![0i64; n + 1];
        table[0] = 1;
        for m in 1..=n {
            let mut k = 1i64;
            let mut acc = 0i64;
            loop {
                let g1 = (k * (3 * k - 1) / 2) as usize;
                if g1 > m {
                    break;
                }
                let sign = if k % 2 == 1 { 1 } else { -1 };
                acc += sign * table[m - g1];
                let g2 = (k * (3 * k + 1) / 2) as usize;
                if g2 <= m {
                    acc += sign * table[m - g2];
                }
                k += 1;
            }
            table[m] = acc;
        }
        table[n] as u64
    }

    #[test]
    fn enumeration_examples() {
        let three = partitions_of(3);
        assert_eq!(three, vec![p(&[3]), p(&[2, 1]), p(&[1, 1, 1])]);
        assert_eq!(partitions_of(5).len(), 7);
        assert_eq!(partitions_of(9).len(), 30);
        for n in 0..=15 {
            let all = partitions_of(n);
            assert_eq!(all.len() as u64, partition_count(n), "p({n})");
            assert!(all.windows(2).all(|w| w[0] > w[1]), "reverse lex at n={n}");
            assert!(all.iter().all(|a| a.n() == n));
        }
    }

    #[test]
    fn transpose_examples() {
        assert_eq!(p(&[3, 2, 2]).transpose(), p(&[3, 3, 1]));
        assert_eq!(p(&[5]).transpose(), Partition::column(5));
        assert_eq!(p(&[2, 1]).transpose(), p(&[2, 1]));
        for a in partitions_of(8) {
            assert_eq!(a.transpose().transpose(), a);
        }
    }

    #[test]
    fn validation_and_parsing() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
        assert_eq!("(3,2,2)".parse::<Partition>().unwrap(), p(&[3, 2, 2]));
        assert_eq!("4 1".parse::<Partition>().unwrap(), p(&[4, 1]));
        assert!("3,x".parse::<Partition>().is_err());
        assert_eq!(Partition::hook(2, 3), p(&[2, 1, 1, 1]));
        assert_eq!(p(&[3, 2]).class_sign(), -1);
        assert_eq!(p(&[3, 1]).class_sign(), 1);
        assert_eq!(p(&[2, 1, 1]).class_sign(), -1);
    }
}
