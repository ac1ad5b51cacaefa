//! Character-level representation theory of `S_n`.

mod character;
mod kostka;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::counting::{binomial, factorial};
use crate::partition::{partitions_of, Partition};

pub use character::{character, CharacterTable};
pub use kostka::{
    kostka, permutation_character, permutation_character_by_kostka,
    permutation_character_by_tabloids, youngs_rule,
};

/// Hook length of every cell, row by row.
pub fn hook_lengths(alpha: &Partition) -> Vec<Vec<usize>> {
    let cols = alpha.transpose();
    alpha
        .parts()
        .iter()
        .enumerate()
        .map(|(i, &row)| {
            (0..row)
                .map(|j| (row - j - 1) + (cols.parts()[j] - i - 1) + 1)
                .collect()
        })
        .collect()
}

/// `f^α = n! / Π hooks`.
pub fn dimension(alpha: &Partition) -> BigInt {
    let hooks: BigInt = hook_lengths(alpha)
        .iter()
        .flatten()
        .fold(BigInt::one(), |acc, &h| acc * h);
    let (q, r) = factorial(alpha.n()).div_rem(&hooks);
    assert!(r.is_zero(), "hook product does not divide n! for {alpha}");
    q
}

/// Multiset of partitions with positive multiplicities.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DecompositionMultiset {
    terms: BTreeMap<Partition, BigInt>,
}

impl DecompositionMultiset {
    pub fn add(&mut self, alpha: Partition, multiplicity: BigInt) {
        if multiplicity > BigInt::zero() {
            *self.terms.entry(alpha).or_insert_with(BigInt::zero) += multiplicity;
        }
    }

    pub fn multiplicity(&self, alpha: &Partition) -> BigInt {
        self.terms.get(alpha).cloned().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in reverse lexicographic order of the partition.
    pub fn iter(&self) -> impl Iterator<Item = (&Partition, &BigInt)> {
        self.terms.iter().rev()
    }

    /// `Σ multiplicity · f^α`.
    pub fn total_dimension(&self) -> BigInt {
        self.iter().map(|(a, m)| m * dimension(a)).sum()
    }
}

impl Serialize for DecompositionMultiset {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Term<'a> {
            alpha: &'a Partition,
            multiplicity: String,
        }
        let terms: Vec<Term> = self
            .iter()
            .map(|(alpha, m)| Term {
                alpha,
                multiplicity: m.to_string(),
            })
            .collect();
        terms.serialize(s)
    }
}

/// Restriction to `S_{n-1}`: one term per removable corner.
pub fn branching_restriction(alpha: &Partition) -> DecompositionMultiset {
    let parts = alpha.parts();
    let mut out = DecompositionMultiset::default();
    for i in 0..parts.len() {
        let next = parts.get(i + 1).copied().unwrap_or(0);
        if parts[i] > next {
            let mut smaller = parts.to_vec();
            smaller[i] -= 1;
            out.add(Partition::from_unsorted(smaller), BigInt::one());
        }
    }
    out
}

/// `C(n-1, 2) - 1`.
pub fn default_low_dim_threshold(n: usize) -> BigInt {
    binomial(n.saturating_sub(1), 2) - 1
}

/// Every `α ⊢ n` with `f^α < threshold`, by exhaustive scan.
pub fn low_dim_classification(n: usize, threshold: Option<&BigInt>) -> Vec<Partition> {
    let threshold = threshold
        .cloned()
        .unwrap_or_else(|| default_low_dim_threshold(n));
    partitions_of(n)
        .into_iter()
        .filter(|a| dimension(a) < threshold)
        .collect()
}
