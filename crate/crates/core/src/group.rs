//! Shared per-`n` tables for `S_n`: elements in lexicographic rank order,
//! class labels, and lazily built derangement-graph and 1-coset masks.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::bitset::BitSet;
use crate::error::{Result, SpectraError};
use crate::partition::{partitions_of, Partition};
use crate::perm::Permutation;

/// Element tables are materialised up to this `n` (8! = 40320 elements).
pub const MAX_GROUP_N: usize = 8;

/// Derangement adjacency rows are materialised up to this `n`.
pub const MAX_ADJACENCY_N: usize = 7;

pub struct SymmetricGroup {
    n: usize,
    elements: Vec<Permutation>,
    classes: Vec<Partition>,
    class_of: Vec<u16>,
    inverse_of: Vec<u32>,
    derangement_rows: OnceLock<Vec<BitSet>>,
    coset_masks: OnceLock<Vec<BitSet>>,
}

impl SymmetricGroup {
    /// Cached group tables for `n`.
    pub fn get(n: usize) -> Result<Arc<SymmetricGroup>> {
        static CACHE: OnceLock<Mutex<HashMap<usize, Arc<SymmetricGroup>>>> = OnceLock::new();
        if n > MAX_GROUP_N {
            return Err(SpectraError::Domain(format!(
                "element tables are limited to n <= {MAX_GROUP_N} (got {n})"
            )));
        }
        let cache = CACHE.get_or_init(Default::default);
        if let Some(g) = cache.lock().unwrap().get(&n) {
            return Ok(Arc::clone(g));
        }
        let built = Arc::new(Self::build(n));
        let mut guard = cache.lock().unwrap();
        Ok(Arc::clone(guard.entry(n).or_insert(built)))
    }

    fn build(n: usize) -> Self {
        let elements = Permutation::all(n);
        let classes = partitions_of(n);
        let index: HashMap<&Partition, u16> = classes
            .iter()
            .enumerate()
            .map(|(k, c)| (c, k as u16))
            .collect();
        let class_of = elements.iter().map(|p| index[&p.cycle_type()]).collect();
        let inverse_of = elements
            .iter()
            .map(|p| p.inverse().lex_rank() as u32)
            .collect();
        Self {
            n,
            elements,
            classes,
            class_of,
            inverse_of,
            derangement_rows: OnceLock::new(),
            coset_masks: OnceLock::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn element(&self, rank: usize) -> &Permutation {
        &self.elements[rank]
    }

    pub fn rank(&self, p: &Permutation) -> usize {
        debug_assert_eq!(p.n(), self.n);
        p.lex_rank()
    }

    /// Conjugacy classes in [`partitions_of`] order.
    pub fn classes(&self) -> &[Partition] {
        &self.classes
    }

    pub fn class_index(&self, rank: usize) -> usize {
        self.class_of[rank] as usize
    }

    pub fn class_index_of(&self, class: &Partition) -> Option<usize> {
        self.classes.iter().position(|c| c == class)
    }

    pub fn inverse_rank(&self, rank: usize) -> usize {
        self.inverse_of[rank] as usize
    }

    /// Rank of `elements[a] ∘ elements[b]`.
    #[inline]
    pub fn mul_rank(&self, a: usize, b: usize) -> usize {
        self.elements[a].compose_unchecked(&self.elements[b]).lex_rank()
    }

    /// Ranks of all elements whose cycle type lies in `classes`.
    pub fn ranks_in_classes(&self, classes: &[Partition]) -> Vec<usize> {
        let wanted: Vec<usize> = classes
            .iter()
            .filter_map(|c| self.class_index_of(c))
            .collect();
        (0..self.order())
            .filter(|&r| wanted.contains(&self.class_index(r)))
            .collect()
    }

    /// Neighbour masks of the derangement graph (σ ~ τ iff they disagree everywhere).
    pub fn derangement_rows(&self) -> Result<&[BitSet]> {
        if self.n > MAX_ADJACENCY_N {
            return Err(SpectraError::Domain(format!(
                "derangement adjacency is limited to n <= {MAX_ADJACENCY_N}"
            )));
        }
        Ok(self.derangement_rows.get_or_init(|| {
            let order = self.order();
            let derangements: Vec<&Permutation> =
                self.elements.iter().filter(|p| p.is_derangement()).collect();
            self.elements
                .iter()
                .map(|s| {
                    BitSet::from_indices(
                        order,
                        derangements.iter().map(|g| g.compose_unchecked(s).lex_rank()),
                    )
                })
                .collect()
        }))
    }

    /// Mask of the 1-coset `{σ : σ(i) = j}` (0-based `i`, `j`).
    pub fn coset_mask(&self, i: usize, j: usize) -> &BitSet {
        let masks = self.coset_masks.get_or_init(|| {
            let n = self.n;
            let mut masks = vec![BitSet::new(self.order()); n * n];
            for (r, p) in self.elements.iter().enumerate() {
                for i in 0..n {
                    masks[i * n + p.apply(i)].insert(r);
                }
            }
            masks
        });
        &masks[i * self.n + j]
    }
}
