//! Families of permutations as bit sets over the lexicographic ranking of `S_n`.

pub mod maurey;
pub mod search;

use std::collections::VecDeque;
use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::bitset::BitSet;
use crate::counting::{derangement_count, factorial};
use crate::error::{Result, SpectraError};
use crate::group::SymmetricGroup;
use crate::perm::Permutation;
use crate::report::bigint_string;
use crate::spectral::{cross_bound, derangement_spectrum};

pub use maurey::{maurey_check, transposition_neighborhood, MaureyReport};
pub use search::{
    max_cross_product_search, max_intersecting_search, SearchConfig, SearchResult, SearchStatus,
    SearchWitness,
};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PermFamily {
    n: usize,
    members: BitSet,
}

impl PermFamily {
    pub fn empty(n: usize) -> Result<Self> {
        let g = SymmetricGroup::get(n)?;
        Ok(Self {
            n,
            members: BitSet::new(g.order()),
        })
    }

    pub fn full(n: usize) -> Result<Self> {
        let g = SymmetricGroup::get(n)?;
        Ok(Self {
            n,
            members: BitSet::full(g.order()),
        })
    }

    pub fn from_mask(n: usize, members: BitSet) -> Result<Self> {
        let g = SymmetricGroup::get(n)?;
        if members.capacity() != g.order() {
            return Err(SpectraError::SizeMismatch {
                expected: g.order(),
                found: members.capacity(),
            });
        }
        Ok(Self { n, members })
    }

    pub fn from_ranks(n: usize, ranks: impl IntoIterator<Item = usize>) -> Result<Self> {
        let g = SymmetricGroup::get(n)?;
        Ok(Self {
            n,
            members: BitSet::from_indices(g.order(), ranks),
        })
    }

    pub fn from_perms<'a>(n: usize, perms: impl IntoIterator<Item = &'a Permutation>) -> Result<Self> {
        let mut f = Self::empty(n)?;
        for p in perms {
            f.insert(p)?;
        }
        Ok(f)
    }

    /// `{σ : σ(i) = j}` for 0-based `i`, `j`.
    pub fn coset(n: usize, i: usize, j: usize) -> Result<Self> {
        if i >= n || j >= n {
            return Err(SpectraError::Domain(format!("coset ({i},{j}) outside [{n}]")));
        }
        let g = SymmetricGroup::get(n)?;
        Ok(Self {
            n,
            members: g.coset_mask(i, j).clone(),
        })
    }

    /// All `n²` 1-cosets, ordered by `(i, j)`.
    pub fn all_cosets(n: usize) -> Result<Vec<Self>> {
        let mut out = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                out.push(Self::coset(n, i, j)?);
            }
        }
        Ok(out)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.members.count()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn mask(&self) -> &BitSet {
        &self.members
    }

    pub fn group(&self) -> Arc<SymmetricGroup> {
        SymmetricGroup::get(self.n).expect("family exists only for supported n")
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        p.n() == self.n && self.members.contains(p.lex_rank())
    }

    pub fn insert(&mut self, p: &Permutation) -> Result<()> {
        if p.n() != self.n {
            return Err(SpectraError::SizeMismatch {
                expected: self.n,
                found: p.n(),
            });
        }
        self.members.insert(p.lex_rank());
        Ok(())
    }

    pub fn remove(&mut self, p: &Permutation) {
        if p.n() == self.n {
            self.members.remove(p.lex_rank());
        }
    }

    pub fn ranks(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter()
    }

    /// Members in lexicographic order.
    pub fn perms(&self) -> Vec<Permutation> {
        let g = self.group();
        self.members.iter().map(|r| g.element(r).clone()).collect()
    }

    fn check_same_n(&self, other: &PermFamily) -> Result<()> {
        if self.n != other.n {
            return Err(SpectraError::SizeMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        Ok(())
    }

    /// Every pair of members agrees somewhere (independent in the derangement graph).
    pub fn is_intersecting(&self) -> bool {
        self.is_cross_intersecting(self)
            .expect("same n")
    }

    /// No derangement-graph edge between the two families.
    pub fn is_cross_intersecting(&self, other: &PermFamily) -> Result<bool> {
        self.check_same_n(other)?;
        let g = self.group();
        if let Ok(rows) = g.derangement_rows() {
            return Ok(self
                .members
                .iter()
                .all(|r| !rows[r].intersects(&other.members)));
        }
        let mine = self.perms();
        let theirs = other.perms();
        Ok(mine
            .iter()
            .all(|s| theirs.iter().all(|t| s.intersects(t))))
    }

    /// `(i, j)` (0-based) with every member mapping `i` to `j`, if any. The
    /// empty family is centred at `(0, 0)` by convention.
    pub fn centre(&self) -> Option<(usize, usize)> {
        let g = self.group();
        (0..self.n)
            .flat_map(|i| (0..self.n).map(move |j| (i, j)))
            .find(|&(i, j)| self.members.is_subset(g.coset_mask(i, j)))
    }

    pub fn is_centred(&self) -> bool {
        self.centre().is_some()
    }

    /// `A_{i↦j} = {σ ∈ A : σ(i) = j}`.
    pub fn slice(&self, i: usize, j: usize) -> Result<PermFamily> {
        if i >= self.n || j >= self.n {
            return Err(SpectraError::Domain(format!("slice ({i},{j}) outside [{}]", self.n)));
        }
        let g = self.group();
        Ok(PermFamily {
            n: self.n,
            members: self.members.intersection(g.coset_mask(i, j)),
        })
    }

    pub fn slice_size(&self, i: usize, j: usize) -> usize {
        self.members.intersection_count(self.group().coset_mask(i, j))
    }

    /// `|A| - max_{i,j} |A_{i↦j}|`.
    pub fn min_removals_to_centred(&self) -> BigInt {
        let best = (0..self.n)
            .flat_map(|i| (0..self.n).map(move |j| (i, j)))
            .map(|(i, j)| self.slice_size(i, j))
            .max()
            .unwrap_or(0);
        BigInt::from(self.len() - best)
    }

    /// `πAτ`.
    pub fn double_translate(&self, pi: &Permutation, tau: &Permutation) -> Result<PermFamily> {
        if pi.n() != self.n || tau.n() != self.n {
            return Err(SpectraError::SizeMismatch {
                expected: self.n,
                found: if pi.n() != self.n { pi.n() } else { tau.n() },
            });
        }
        let g = self.group();
        let members = BitSet::from_indices(
            g.order(),
            self.members
                .iter()
                .map(|r| pi.compose_unchecked(&g.element(r).compose_unchecked(tau)).lex_rank()),
        );
        Ok(PermFamily { n: self.n, members })
    }

    /// Searches for `(π, τ)` with `self = π F τ`. Exhaustive over `π`; `τ` is
    /// pinned by matching the least member of `self` against each member of `F`.
    pub fn is_double_translate_of(&self, f: &PermFamily) -> Result<Option<(Permutation, Permutation)>> {
        self.check_same_n(f)?;
        if self.n > 6 {
            return Err(SpectraError::Domain("double-translate search is limited to n <= 6".into()));
        }
        if self.len() != f.len() {
            return Ok(None);
        }
        let Some(a0) = self.members.first() else {
            let e = Permutation::identity(self.n);
            return Ok(Some((e.clone(), e)));
        };
        let g = self.group();
        let a0 = g.element(a0);
        let f_members: Vec<&Permutation> = f.members.iter().map(|r| g.element(r)).collect();
        for pi in g.elements() {
            let pi_inv = pi.inverse();
            for member in &f_members {
                // a0 = π·member·τ  =>  τ = member⁻¹ π⁻¹ a0
                let tau = member.inverse().compose_unchecked(&pi_inv.compose_unchecked(a0));
                let all_in = f_members
                    .iter()
                    .all(|s| self.members.contains(pi.compose_unchecked(&s.compose_unchecked(&tau)).lex_rank()));
                if all_in {
                    return Ok(Some((pi.clone(), tau)));
                }
            }
        }
        Ok(None)
    }

    /// Smallest pairwise agreement count (`None` for fewer than two members).
    pub fn min_pairwise_agreement(&self) -> Option<usize> {
        let perms = self.perms();
        let mut best: Option<usize> = None;
        for (k, a) in perms.iter().enumerate() {
            for b in &perms[k + 1..] {
                let m = a.agreements(b);
                best = Some(best.map_or(m, |x| x.min(m)));
            }
        }
        best
    }

    /// Trivial bound `|A| <= n!/t!` for `t`-intersecting families.
    pub fn t_intersecting_bound_check(&self, t: usize) -> TIntersectingReport {
        let is_t_intersecting = self.min_pairwise_agreement().is_none_or(|m| m >= t);
        let bound = factorial(self.n) / factorial(t);
        let size = BigInt::from(self.len());
        TIntersectingReport {
            t,
            is_t_intersecting,
            holds: !is_t_intersecting || size <= bound,
            size,
            bound,
        }
    }

    /// `|A_{i↦j}| |A_{i↦k}| <= ((n-2)!)²`, checked directly and via the
    /// reduction to a cross-intersecting pair in `S_{n-1}`.
    pub fn slice_product_check(&self, i: usize, j: usize, k: usize) -> Result<SliceProductReport> {
        let n = self.n;
        if i >= n || j >= n || k >= n || j == k {
            return Err(SpectraError::Domain(format!(
                "slice indices ({i},{j},{k}) need distinct j, k in [{n}]"
            )));
        }
        if n < 3 {
            return Err(SpectraError::Domain("slice products need n >= 3".into()));
        }
        let e = self.slice(i, j)?;
        let f = self.slice(i, k)?;
        let product = BigInt::from(e.len() * f.len());
        let bound = factorial(n - 2).pow(2);
        let direct_holds = product <= bound;

        let (e_red, f_red) = reduce_slice_pair(&e, &f, i, j, k)?;
        let reduced_cross_intersecting = e_red.is_cross_intersecting(&f_red)?;
        let reduced_product = BigInt::from(e_red.len() * f_red.len());
        // cross-independence bound of the derangement graph on S_{n-1}, squared
        let spec = derangement_spectrum(n - 1)?;
        let summary = spec.summary();
        let root_bound = cross_bound(&summary.d, &summary.nu, &factorial(n - 1))?;
        let spectral_bound = &root_bound * &root_bound;
        let reduced_holds = reduced_cross_intersecting
            && crate::Rational::from_integer(reduced_product.clone()) <= spectral_bound;
        Ok(SliceProductReport {
            product,
            bound,
            direct_holds,
            reduced_product,
            reduced_cross_intersecting,
            spectral_bound: crate::report::rational_to_string(&spectral_bound),
            reduced_holds,
        })
    }
}

use std::sync::Arc;

/// Maps `A_{i↦j}` and `A_{i↦k}` to families on `S_{n-1}`: translate so that
/// the slices become `1↦1` and `1↦2`, swap `1,2` on the second, delete the
/// common fixed point.
fn reduce_slice_pair(
    e: &PermFamily,
    f: &PermFamily,
    i: usize,
    j: usize,
    k: usize,
) -> Result<(PermFamily, PermFamily)> {
    let n = e.n;
    // right factor: transposition (0 i)
    let mut right: Vec<u8> = (0..n as u8).collect();
    right.swap(0, i);
    let right = Permutation::from_images(right)?;
    // left factor: j ↦ 0, k ↦ 1, the rest increasing
    let mut left = vec![0u8; n];
    let mut next = 2u8;
    for x in 0..n {
        left[x] = if x == j {
            0
        } else if x == k {
            1
        } else {
            let v = next;
            next += 1;
            v
        };
    }
    let left = Permutation::from_images(left)?;
    let swap01 = {
        let mut s: Vec<u8> = (0..n as u8).collect();
        s.swap(0, 1);
        Permutation::from_images(s)?
    };
    let delete_zero = |p: &Permutation| -> Result<Permutation> {
        debug_assert_eq!(p.apply(0), 0);
        Permutation::from_images(p.images()[1..].iter().map(|&x| x - 1).collect())
    };
    let e_red: Vec<Permutation> = e
        .perms()
        .iter()
        .map(|s| delete_zero(&left.compose_unchecked(&s.compose_unchecked(&right))))
        .collect::<Result<_>>()?;
    let f_red: Vec<Permutation> = f
        .perms()
        .iter()
        .map(|s| {
            delete_zero(&swap01.compose_unchecked(&left.compose_unchecked(&s.compose_unchecked(&right))))
        })
        .collect::<Result<_>>()?;
    Ok((
        PermFamily::from_perms(n - 1, &e_red)?,
        PermFamily::from_perms(n - 1, &f_red)?,
    ))
}

#[derive(Clone, Debug, Serialize)]
pub struct TIntersectingReport {
    pub t: usize,
    pub is_t_intersecting: bool,
    #[serde(with = "bigint_string")]
    pub size: BigInt,
    #[serde(with = "bigint_string")]
    pub bound: BigInt,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SliceProductReport {
    #[serde(with = "bigint_string")]
    pub product: BigInt,
    #[serde(with = "bigint_string")]
    pub bound: BigInt,
    pub direct_holds: bool,
    #[serde(with = "bigint_string")]
    pub reduced_product: BigInt,
    pub reduced_cross_intersecting: bool,
    pub spectral_bound: String,
    pub reduced_holds: bool,
}

impl SliceProductReport {
    pub fn verdicts_agree(&self) -> bool {
        self.direct_holds == self.reduced_holds
    }
}

/// `B = {σ : σ fixes at least two points of {1,2,3}}`.
pub fn construct_b(n: usize) -> Result<PermFamily> {
    if n < 3 {
        return Err(SpectraError::Domain("B needs n >= 3".into()));
    }
    let g = SymmetricGroup::get(n)?;
    PermFamily::from_ranks(
        n,
        (0..g.order()).filter(|&r| {
            let p = g.element(r);
            (0..3).filter(|&x| p.apply(x) == x).count() >= 2
        }),
    )
}

/// `C = {σ : σ(1)=1, σ fixes some point > 2} ∪ {(1 2)}`.
pub fn construct_c(n: usize) -> Result<PermFamily> {
    if n < 3 {
        return Err(SpectraError::Domain("C needs n >= 3".into()));
    }
    let g = SymmetricGroup::get(n)?;
    let mut c = PermFamily::from_ranks(
        n,
        (0..g.order()).filter(|&r| {
            let p = g.element(r);
            p.apply(0) == 0 && (2..n).any(|x| p.apply(x) == x)
        }),
    )?;
    c.insert(&Permutation::from_cycles(n, &[&[1, 2]])?)?;
    Ok(c)
}

/// `3(n-2)! - 2(n-3)!`.
pub fn b_size_formula(n: usize) -> BigInt {
    3 * factorial(n - 2) - 2 * factorial(n - 3)
}

/// `(n-1)! - d_{n-1} - d_{n-2} + 1`.
pub fn c_size_formula(n: usize) -> BigInt {
    factorial(n - 1) - derangement_count(n - 1) - derangement_count(n - 2) + 1
}

/// `#{σ : ∃ i ≠ j, σ(i) = ρ(i), σ(j) = τ(j)}` by enumeration.
pub fn count_agreeing_at_two_separate_points(rho: &Permutation, tau: &Permutation) -> Result<BigInt> {
    let n = rho.n();
    if tau.n() != n {
        return Err(SpectraError::SizeMismatch {
            expected: n,
            found: tau.n(),
        });
    }
    let g = SymmetricGroup::get(n)?;
    let count = g
        .elements()
        .iter()
        .filter(|s| {
            (0..n).any(|i| {
                s.apply(i) == rho.apply(i) && (0..n).any(|j| j != i && s.apply(j) == tau.apply(j))
            })
        })
        .count();
    Ok(count.into())
}

/// `#{σ : σ(i) = j, σ agrees with τ somewhere}` by enumeration; requires `τ(i) ≠ j`.
pub fn intersecting_with_fixed_tau_count(i: usize, j: usize, tau: &Permutation) -> Result<BigInt> {
    let n = tau.n();
    if i >= n || j >= n || tau.apply(i) == j {
        return Err(SpectraError::Domain(format!(
            "need τ({i}) != {j} with i, j in [{n}]"
        )));
    }
    let g = SymmetricGroup::get(n)?;
    let count = g
        .elements()
        .iter()
        .filter(|s| s.apply(i) == j && s.intersects(tau))
        .count();
    Ok(count.into())
}

/// Left cosets of `⟨ρ⟩` for an `n`-cycle `ρ`, each a clique of the derangement graph.
#[derive(Clone, Debug, Serialize)]
pub struct CliquePartitionReport {
    pub cosets: usize,
    pub partitions_group: bool,
    pub all_cliques: bool,
}

impl CliquePartitionReport {
    pub fn passed(&self) -> bool {
        self.partitions_group && self.all_cliques
    }
}

pub fn deza_frankl_partition(rho: &Permutation) -> Result<Vec<PermFamily>> {
    let n = rho.n();
    if rho.cycle_lengths() != vec![n] {
        return Err(SpectraError::Domain(format!("{rho} is not an n-cycle")));
    }
    let g = SymmetricGroup::get(n)?;
    let powers: Vec<Permutation> = std::iter::successors(Some(Permutation::identity(n)), |p| {
        let q = rho.compose_unchecked(p);
        (!q.is_identity()).then_some(q)
    })
    .collect();
    let mut seen = BitSet::new(g.order());
    let mut cosets = Vec::new();
    for r in 0..g.order() {
        if seen.contains(r) {
            continue;
        }
        let sigma = g.element(r);
        let coset = PermFamily::from_ranks(
            n,
            powers.iter().map(|h| sigma.compose_unchecked(h).lex_rank()),
        )?;
        seen.union_with(coset.mask());
        cosets.push(coset);
    }
    Ok(cosets)
}

pub fn deza_frankl_partition_check(rho: &Permutation) -> Result<CliquePartitionReport> {
    let n = rho.n();
    let cosets = deza_frankl_partition(rho)?;
    let g = SymmetricGroup::get(n)?;
    let mut cover = BitSet::new(g.order());
    let mut disjoint = true;
    for c in &cosets {
        disjoint &= !cover.intersects(c.mask());
        cover.union_with(c.mask());
    }
    let partitions_group = disjoint && cover.count() == g.order() && cosets.len() * n == g.order();
    let all_cliques = cosets.iter().all(|c| {
        let perms = c.perms();
        perms
            .iter()
            .enumerate()
            .all(|(a, p)| perms[a + 1..].iter().all(|q| !p.intersects(q)))
    });
    Ok(CliquePartitionReport {
        cosets: cosets.len(),
        partitions_group,
        all_cliques,
    })
}

/// Multi-source breadth-first search in the transposition Cayley graph.
pub(crate) fn transposition_distances(family: &PermFamily) -> Vec<Option<usize>> {
    let g = family.group();
    let n = family.n;
    let mut dist = vec![None; g.order()];
    let mut queue = VecDeque::new();
    for r in family.ranks() {
        dist[r] = Some(0);
        queue.push_back(r);
    }
    while let Some(r) = queue.pop_front() {
        let d = dist[r].unwrap();
        let p = g.element(r);
        for a in 0..n {
            for b in a + 1..n {
                let mut images = p.images().to_vec();
                images.swap(a, b);
                let q = Permutation::from_images(images).expect("swap keeps bijection");
                let qr = q.lex_rank();
                if dist[qr].is_none() {
                    dist[qr] = Some(d + 1);
                    queue.push_back(qr);
                }
            }
        }
    }
    dist
}

impl fmt::Debug for PermFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PermFamily(n={}, {:?})", self.n, self.perms())
    }
}

impl Serialize for PermFamily {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.perms().serialize(s)
    }
}

impl<'de> Deserialize<'de> for PermFamily {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let perms = Vec::<Permutation>::deserialize(d)?;
        let n = perms
            .first()
            .map(Permutation::n)
            .ok_or_else(|| serde::de::Error::custom("empty family carries no n"))?;
        PermFamily::from_perms(n, &perms).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(n: usize, s: &str) -> Permutation {
        Permutation::parse_cycles(n, s).unwrap()
    }

    #[test]
    fn intersecting_predicates() {
        let single = PermFamily::from_perms(4, &[cyc(4, "(1 2 3)")]).unwrap();
        assert!(single.is_intersecting());
        assert!(PermFamily::coset(5, 1, 3).unwrap().is_intersecting());
        let bad = PermFamily::from_perms(4, &[Permutation::identity(4), cyc(4, "(1 2)(3 4)")]).unwrap();
        assert!(!bad.is_intersecting());

        let a = PermFamily::from_perms(3, &[Permutation::identity(3), cyc(3, "(1 2 3)"), cyc(3, "(1 3 2)")]).unwrap();
        let b = PermFamily::from_perms(3, &[cyc(3, "(1 2)"), cyc(3, "(2 3)"), cyc(3, "(1 3)")]).unwrap();
        assert!(a.is_cross_intersecting(&b).unwrap());
        assert_eq!(a.len() * b.len(), 9);
        let e = PermFamily::from_perms(4, &[Permutation::identity(4)]).unwrap();
        let d = PermFamily::from_perms(4, &[cyc(4, "(1 2 3 4)")]).unwrap();
        assert!(!e.is_cross_intersecting(&d).unwrap());
        assert!(e.is_cross_intersecting(&PermFamily::empty(3).unwrap()).is_err());
    }

    #[test]
    fn centred_and_slices() {
        let coset = PermFamily::coset(5, 2, 4).unwrap();
        assert_eq!(coset.centre(), Some((2, 4)));
        assert!(PermFamily::empty(4).unwrap().is_centred());
        let c = construct_c(5).unwrap();
        assert!(!c.is_centred());
        let mut c_minus = c.clone();
        c_minus.remove(&cyc(5, "(1 2)"));
        assert_eq!(c_minus.centre(), Some((0, 0)));
        assert_eq!(c.slice(0, 0).unwrap(), c_minus);
        let full = PermFamily::full(4).unwrap();
        assert_eq!(full.slice(1, 2).unwrap(), PermFamily::coset(4, 1, 2).unwrap());
        assert!(PermFamily::empty(4).unwrap().slice(0, 1).unwrap().is_empty());
        for i in 0..5 {
            let total: usize = (0..5).map(|j| c.slice_size(i, j)).sum();
            assert_eq!(total, c.len());
        }
    }

    #[test]
    fn constructions() {
        assert_eq!(construct_b(5).unwrap().len(), 14);
        assert_eq!(construct_b(6).unwrap().len(), 60);
        assert_eq!(construct_c(4).unwrap().len(), 4);
        assert_eq!(construct_c(5).unwrap().len(), 14);
        assert_eq!(construct_c(6).unwrap().len(), 68);
        assert_eq!(construct_c(6).unwrap().min_removals_to_centred(), 1.into());
        assert_eq!(construct_b(6).unwrap().min_removals_to_centred(), 18.into());
        assert_eq!(PermFamily::coset(5, 0, 0).unwrap().min_removals_to_centred(), 0.into());
        for n in 4..=7 {
            let b = construct_b(n).unwrap();
            assert!(b.is_intersecting() && !b.is_centred());
            assert_eq!(BigInt::from(b.len()), b_size_formula(n));
            assert_eq!(b.min_removals_to_centred(), factorial(n - 2) - factorial(n - 3));
        }
    }

    #[test]
    fn translates() {
        let c = construct_c(5).unwrap();
        let e = Permutation::identity(5);
        assert_eq!(c.double_translate(&e, &e).unwrap(), c);
        let pi = cyc(5, "(1 3 5)(2 4)");
        let tau = cyc(5, "(1 4)");
        let t = c.double_translate(&pi, &tau).unwrap();
        assert_eq!(t.len(), c.len());
        let (p2, t2) = t.is_double_translate_of(&c).unwrap().expect("translate found");
        assert_eq!(c.double_translate(&p2, &t2).unwrap(), t);
        assert_eq!(c.is_double_translate_of(&c).unwrap().map(|_| ()), Some(()));
        let coset = PermFamily::coset(5, 0, 0).unwrap().double_translate(&pi, &tau).unwrap();
        assert!(coset.is_centred() && coset.len() == 24);
        assert!(construct_b(6).unwrap().is_double_translate_of(&construct_c(6).unwrap()).unwrap().is_none());
    }

    #[test]
    fn counting_helpers() {
        let e4 = Permutation::identity(4);
        assert_eq!(count_agreeing_at_two_separate_points(&e4, &e4).unwrap(), 7.into());
        let e2 = Permutation::identity(2);
        assert_eq!(count_agreeing_at_two_separate_points(&e2, &e2).unwrap(), 1.into());
        let r = cyc(4, "(1 3 4 2)");
        assert_eq!(count_agreeing_at_two_separate_points(&r, &r).unwrap(), 7.into());

        assert_eq!(intersecting_with_fixed_tau_count(0, 0, &cyc(5, "(1 2)")).unwrap(), 13.into());
        assert_eq!(intersecting_with_fixed_tau_count(0, 0, &cyc(4, "(1 2)")).unwrap(), 3.into());
        assert_eq!(intersecting_with_fixed_tau_count(0, 0, &cyc(6, "(1 2)")).unwrap(), 67.into());
        assert!(intersecting_with_fixed_tau_count(0, 0, &Permutation::identity(4)).is_err());
    }

    #[test]
    fn t_intersecting() {
        let fix12 = PermFamily::coset(5, 0, 0).unwrap().slice(1, 1).unwrap();
        let r = fix12.t_intersecting_bound_check(2);
        assert!(r.is_t_intersecting && r.holds && r.size == 6.into());
        let single = PermFamily::from_perms(5, &[cyc(5, "(1 2)")]).unwrap();
        assert!(single.t_intersecting_bound_check(4).holds);
    }

    #[test]
    fn slice_products() {
        let c = construct_c(5).unwrap();
        let r = c.slice_product_check(0, 0, 1).unwrap();
        assert_eq!(r.product, 13.into());
        assert!(r.direct_holds && r.reduced_holds && r.reduced_cross_intersecting);
        let coset = PermFamily::coset(5, 2, 2).unwrap();
        let r = coset.slice_product_check(2, 2, 0).unwrap();
        assert_eq!(r.product, 0.into());
        assert!(r.verdicts_agree());
    }

    #[test]
    fn clique_partition() {
        let r = deza_frankl_partition_check(&cyc(4, "(1 2 3 4)")).unwrap();
        assert_eq!(r.cosets, 6);
        assert!(r.passed());
        let r = deza_frankl_partition_check(&cyc(3, "(1 2 3)")).unwrap();
        assert_eq!(r.cosets, 2);
        assert!(r.passed());
        assert!(deza_frankl_partition_check(&cyc(4, "(1 2)(3 4)")).is_err());
        for n in [4, 5] {
            let rho = Permutation::from_cycles(n, &[&(1..=n).collect::<Vec<_>>()]).unwrap();
            let parts = deza_frankl_partition(&rho).unwrap();
            for fam in [construct_b(n).unwrap(), construct_c(n).unwrap()] {
                assert!(parts.iter().all(|c| c.mask().intersection_count(fam.mask()) <= 1));
            }
        }
    }

    #[test]
    fn serde_roundtrip() {
        let c = construct_c(4).unwrap();
        let json = serde_json::to_string(&c).unwrap();
        assert!(json.starts_with("[[1,2,3,4]"));
        let back: PermFamily = serde_json::from_str(&json).unwrap();
        assert_eq!(back, c);
    }
}
