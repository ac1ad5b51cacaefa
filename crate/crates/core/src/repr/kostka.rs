//! Kostka numbers, Young's rule and permutation characters.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{character, DecompositionMultiset};
use crate::error::{Result, SpectraError};
use crate::partition::{partitions_of, Partition};

type MemoKey = (Vec<usize>, Vec<usize>);

fn memo() -> &'static RwLock<HashMap<MemoKey, BigInt>> {
    static MEMO: OnceLock<RwLock<HashMap<MemoKey, BigInt>>> = OnceLock::new();
    MEMO.get_or_init(Default::default)
}

/// Semistandard fillings of `shape` with content `content`: the cells holding
/// the largest label form a horizontal strip, so peel it off and recurse.
fn count_ssyt(shape: &[usize], content: &[usize]) -> BigInt {
    let Some((&m, rest)) = content.split_last() else {
        return if shape.is_empty() {
            BigInt::one()
        } else {
            BigInt::zero()
        };
    };
    if shape.len() > content.len() {
        // column strictness needs at least as many labels as rows
        return BigInt::zero();
    }
    let key = (shape.to_vec(), content.to_vec());
    if let Some(v) = memo().read().unwrap().get(&key) {
        return v.clone();
    }

    let mut total = BigInt::zero();
    let mut inner = vec![0usize; shape.len()];
    strips(shape, 0, m, &mut inner, &mut |mu| {
        let trimmed: Vec<usize> = mu.iter().copied().filter(|&x| x > 0).collect();
        total += count_ssyt(&trimmed, rest);
    });
    memo().write().unwrap().insert(key, total.clone());
    total
}

/// Calls `f` on every `μ ⊆ shape` such that `shape/μ` is a horizontal strip of
/// `remaining` cells: `shape[i+1] <= μ[i] <= shape[i]`.
fn strips(
    shape: &[usize],
    row: usize,
    remaining: usize,
    inner: &mut Vec<usize>,
    f: &mut dyn FnMut(&[usize]),
) {
    if row == shape.len() {
        if remaining == 0 {
            f(inner);
        }
        return;
    }
    let floor = shape.get(row + 1).copied().unwrap_or(0);
    let max_take = (shape[row] - floor).min(remaining);
    for take in 0..=max_take {
        inner[row] = shape[row] - take;
        strips(shape, row + 1, remaining - take, inner, f);
    }
}

/// `K_{α,β}`: number of semistandard `α`-tableaux of content `β`.
pub fn kostka(alpha: &Partition, beta: &Partition) -> Result<BigInt> {
    if alpha.n() != beta.n() {
        return Err(SpectraError::SizeMismatch {
            expected: alpha.n(),
            found: beta.n(),
        });
    }
    Ok(count_ssyt(alpha.parts(), beta.parts()))
}

/// Decomposition of the permutation module `M^β` into irreducibles.
pub fn youngs_rule(beta: &Partition) -> DecompositionMultiset {
    let mut out = DecompositionMultiset::default();
    for alpha in partitions_of(beta.n()) {
        let k = count_ssyt(alpha.parts(), beta.parts());
        out.add(alpha, k);
    }
    out
}

/// `ξ_β(γ)` as the number of `β`-tabloids fixed by a permutation of cycle type
/// `γ`: each cycle must lie inside one row, so count assignments of the
/// (distinguishable) cycles to rows that fill every row exactly.
pub fn permutation_character_by_tabloids(beta: &Partition, gamma: &Partition) -> Result<BigInt> {
    if beta.n() != gamma.n() {
        return Err(SpectraError::SizeMismatch {
            expected: beta.n(),
            found: gamma.n(),
        });
    }
    fn rec(
        cycles: &[usize],
        capacity: &mut Vec<usize>,
        memo: &mut HashMap<(usize, Vec<usize>), BigInt>,
    ) -> BigInt {
        let Some((&c, rest)) = cycles.split_first() else {
            return BigInt::one();
        };
        let key = (cycles.len(), capacity.clone());
        if let Some(v) = memo.get(&key) {
            return v.clone();
        }
        let mut total = BigInt::zero();
        for row in 0..capacity.len() {
            if capacity[row] >= c {
                capacity[row] -= c;
                total += rec(rest, capacity, memo);
                capacity[row] += c;
            }
        }
        memo.insert(key, total.clone());
        total
    }
    Ok(rec(
        gamma.parts(),
        &mut beta.parts().to_vec(),
        &mut HashMap::new(),
    ))
}

/// `ξ_β(γ) = Σ_α K_{α,β} χ_α(γ)`.
pub fn permutation_character_by_kostka(beta: &Partition, gamma: &Partition) -> Result<BigInt> {
    if beta.n() != gamma.n() {
        return Err(SpectraError::SizeMismatch {
            expected: beta.n(),
            found: gamma.n(),
        });
    }
    let mut total = BigInt::zero();
    for (alpha, k) in youngs_rule(beta).iter() {
        total += k * character(alpha, gamma)?;
    }
    Ok(total)
}

/// `ξ_β(γ)`, computed by both routes; disagreement is an internal error.
pub fn permutation_character(beta: &Partition, gamma: &Partition) -> Result<BigInt> {
    let by_tabloids = permutation_character_by_tabloids(beta, gamma)?;
    let by_kostka = permutation_character_by_kostka(beta, gamma)?;
    if by_tabloids != by_kostka {
        return Err(SpectraError::Inconsistent(format!(
            "ξ_{beta}({gamma}): tabloid count {by_tabloids} != Kostka sum {by_kostka}"
        )));
    }
    Ok(by_tabloids)
}
