//! Irreducible characters via the Murnaghan–Nakayama rule on beta-sets.

use std::collections::{BTreeMap, HashMap};
use std::path::Path;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::counting::{centralizer_order, conjugacy_class_size, factorial};
use crate::error::{Result, SpectraError};
use crate::partition::{partitions_of, Partition};

/// Full tables are built (and cached) for `n` up to this bound; larger `n`
/// evaluate single characters through the memoized recursion directly.
const TABLE_MAX_N: usize = 14;

type MemoKey = (Vec<usize>, Vec<usize>);

fn memo() -> &'static RwLock<HashMap<MemoKey, BigInt>> {
    static MEMO: OnceLock<RwLock<HashMap<MemoKey, BigInt>>> = OnceLock::new();
    MEMO.get_or_init(Default::default)
}

/// χ^shape evaluated on a permutation whose cycle lengths are `cycles`
/// (non-increasing). Removes the longest cycle first.
fn murnaghan_nakayama(shape: &[usize], cycles: &[usize]) -> BigInt {
    let Some((&r, rest)) = cycles.split_first() else {
        return if shape.is_empty() {
            BigInt::one()
        } else {
            BigInt::zero()
        };
    };
    let key = (shape.to_vec(), cycles.to_vec());
    if let Some(v) = memo().read().unwrap().get(&key) {
        return v.clone();
    }

    let len = shape.len();
    let beta: Vec<usize> = shape
        .iter()
        .enumerate()
        .map(|(i, &p)| p + (len - 1 - i))
        .collect();
    let mut total = BigInt::zero();
    for (idx, &b) in beta.iter().enumerate() {
        if b < r || beta.contains(&(b - r)) {
            continue;
        }
        let target = b - r;
        // beads strictly between the new and old positions = height of the rim hook
        let crossed = beta.iter().filter(|&&c| target < c && c < b).count();
        let mut moved = beta.clone();
        moved[idx] = target;
        moved.sort_unstable_by(|x, y| y.cmp(x));
        let smaller: Vec<usize> = moved
            .iter()
            .enumerate()
            .map(|(i, &c)| c - (len - 1 - i))
            .filter(|&p| p > 0)
            .collect();
        let value = murnaghan_nakayama(&smaller, rest);
        if crossed % 2 == 0 {
            total += value;
        } else {
            total -= value;
        }
    }
    memo().write().unwrap().insert(key, total.clone());
    total
}

/// `χ_α(β)`: the irreducible character `α` on the class of cycle type `β`.
pub fn character(alpha: &Partition, beta: &Partition) -> Result<BigInt> {
    if alpha.n() != beta.n() {
        return Err(SpectraError::SizeMismatch {
            expected: alpha.n(),
            found: beta.n(),
        });
    }
    let n = alpha.n();
    if (1..=TABLE_MAX_N).contains(&n) {
        let table = CharacterTable::get(n);
        if let Some(v) = table.value(alpha, beta) {
            return Ok(v.clone());
        }
    }
    Ok(murnaghan_nakayama(alpha.parts(), beta.parts()))
}

/// `χ_α(β)` for all `α, β ⊢ n`, rows and columns in [`partitions_of`] order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterTable {
    n: usize,
    partitions: Vec<Partition>,
    index: HashMap<Partition, usize>,
    values: Vec<Vec<BigInt>>,
}

fn table_cache() -> &'static RwLock<HashMap<usize, Arc<CharacterTable>>> {
    static CACHE: OnceLock<RwLock<HashMap<usize, Arc<CharacterTable>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

#[derive(Serialize, Deserialize)]
struct CacheRow {
    alpha: Partition,
    values: BTreeMap<String, String>,
}

#[derive(Serialize, Deserialize)]
struct CacheSet {
    tables: Vec<CacheFile>,
}

#[derive(Serialize, Deserialize)]
struct CacheFile {
    n: usize,
    rows: Vec<CacheRow>,
}

impl CharacterTable {
    /// Cached table for `n`, computed on first use.
    pub fn get(n: usize) -> Arc<CharacterTable> {
        if let Some(t) = table_cache().read().unwrap().get(&n) {
            return Arc::clone(t);
        }
        let table = Arc::new(Self::compute(n));
        let mut cache = table_cache().write().unwrap();
        Arc::clone(cache.entry(n).or_insert(table))
    }

    /// Computes the table from scratch, bypassing the cache.
    pub fn compute(n: usize) -> CharacterTable {
        let partitions = partitions_of(n);
        let values: Vec<Vec<BigInt>> = partitions
            .par_iter()
            .map(|a| {
                partitions
                    .iter()
                    .map(|b| murnaghan_nakayama(a.parts(), b.parts()))
                    .collect()
            })
            .collect();
        Self::from_parts(n, partitions, values)
    }

    fn from_parts(n: usize, partitions: Vec<Partition>, values: Vec<Vec<BigInt>>) -> Self {
        let index = partitions
            .iter()
            .enumerate()
            .map(|(k, p)| (p.clone(), k))
            .collect();
        Self {
            n,
            partitions,
            index,
            values,
        }
    }

    /// Replaces the cached table for `table.n()` after validating it.
    pub fn install(table: CharacterTable) -> Result<()> {
        table
            .check_column_orthogonality()
            .map_err(SpectraError::CacheValidation)?;
        table_cache()
            .write()
            .unwrap()
            .insert(table.n, Arc::new(table));
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn partitions(&self) -> &[Partition] {
        &self.partitions
    }

    pub fn value(&self, alpha: &Partition, beta: &Partition) -> Option<&BigInt> {
        let a = *self.index.get(alpha)?;
        let b = *self.index.get(beta)?;
        Some(&self.values[a][b])
    }

    pub fn row(&self, alpha: &Partition) -> Option<&[BigInt]> {
        self.index.get(alpha).map(|&a| self.values[a].as_slice())
    }

    /// `Σ_α χ_α(β) χ_α(γ) = δ_{βγ} · n!/|class(β)|`, checked exactly for every pair.
    pub fn check_column_orthogonality(&self) -> std::result::Result<(), String> {
        let expected_parts = partitions_of(self.n);
        if self.partitions != expected_parts {
            return Err(format!("row labels are not the partitions of {}", self.n));
        }
        let k = self.partitions.len();
        if self.values.len() != k || self.values.iter().any(|r| r.len() != k) {
            return Err("table is not square".into());
        }
        let nf = factorial(self.n);
        for b in 0..k {
            for c in b..k {
                let sum: BigInt = (0..k)
                    .map(|a| &self.values[a][b] * &self.values[a][c])
                    .sum();
                let expected = if b == c {
                    debug_assert_eq!(
                        &nf / conjugacy_class_size(&self.partitions[b]),
                        centralizer_order(&self.partitions[b])
                    );
                    centralizer_order(&self.partitions[b])
                } else {
                    BigInt::zero()
                };
                if sum != expected {
                    return Err(format!(
                        "columns {} and {} give {sum}, expected {expected}",
                        self.partitions[b], self.partitions[c]
                    ));
                }
            }
        }
        Ok(())
    }

    fn to_cache_file(&self) -> CacheFile {
        let rows = self
            .partitions
            .iter()
            .zip(&self.values)
            .map(|(alpha, row)| CacheRow {
                alpha: alpha.clone(),
                values: self
                    .partitions
                    .iter()
                    .zip(row)
                    .map(|(beta, v)| (beta.key(), v.to_string()))
                    .collect(),
            })
            .collect();
        CacheFile { n: self.n, rows }
    }

    /// Serializes as `{n, rows: [{alpha, values: {beta: "int"}}]}`.
    pub fn to_cache_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&self.to_cache_file())?)
    }

    /// Parses a cache document and validates it by column orthogonality.
    pub fn from_cache_json(text: &str) -> Result<CharacterTable> {
        Self::from_cache_file(serde_json::from_str(text)?)
    }

    fn from_cache_file(file: CacheFile) -> Result<CharacterTable> {
        let partitions = partitions_of(file.n);
        let mut by_alpha: HashMap<Partition, BTreeMap<String, String>> = file
            .rows
            .into_iter()
            .map(|r| (r.alpha, r.values))
            .collect();
        let mut values = Vec::with_capacity(partitions.len());
        for alpha in &partitions {
            let row = by_alpha.remove(alpha).ok_or_else(|| {
                SpectraError::CacheValidation(format!("missing row {alpha}"))
            })?;
            let parsed = partitions
                .iter()
                .map(|beta| {
                    row.get(&beta.key())
                        .and_then(|s| s.parse::<BigInt>().ok())
                        .ok_or_else(|| {
                            SpectraError::CacheValidation(format!(
                                "missing or malformed entry ({alpha}, {beta})"
                            ))
                        })
                })
                .collect::<Result<Vec<_>>>()?;
            values.push(parsed);
        }
        if !by_alpha.is_empty() {
            return Err(SpectraError::CacheValidation("unexpected extra rows".into()));
        }
        let table = Self::from_parts(file.n, partitions, values);
        table
            .check_column_orthogonality()
            .map_err(|e| SpectraError::CacheValidation(format!("n={}: {e}", file.n)))?;
        Ok(table)
    }

    /// Loads, validates and installs a cache file.
    pub fn load_cache_file(path: &Path) -> Result<Arc<CharacterTable>> {
        let table = Self::from_cache_json(&std::fs::read_to_string(path)?)?;
        let n = table.n;
        Self::install(table)?;
        Ok(Self::get(n))
    }

    pub fn write_cache_file(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_cache_json()?)?;
        Ok(())
    }

    /// Writes several tables to one file: `{tables: [...]}`.
    pub fn write_cache_set(path: &Path, tables: &[Arc<CharacterTable>]) -> Result<()> {
        let set = CacheSet {
            tables: tables.iter().map(|t| t.to_cache_file()).collect(),
        };
        std::fs::write(path, serde_json::to_string(&set)?)?;
        Ok(())
    }

    /// Validates every table in a cache set and installs them all; returns the
    /// `n` values loaded. Nothing is installed if any table fails.
    pub fn load_cache_set(path: &Path) -> Result<Vec<usize>> {
        let text = std::fs::read_to_string(path)?;
        let set: CacheSet = serde_json::from_str(&text)
            .map_err(|e| SpectraError::CacheValidation(format!("unreadable cache: {e}")))?;
        let tables = set
            .tables
            .into_iter()
            .map(Self::from_cache_file)
            .collect::<Result<Vec<_>>>()?;
        let ns = tables.iter().map(|t| t.n).collect();
        for t in tables {
            Self::install(t)?;
        }
        Ok(ns)
    }

    #[cfg(test)]
    pub(crate) fn values_mut(&mut self) -> &mut Vec<Vec<BigInt>> {
        &mut self.values
    }
}
