//! Exact extremal searches: maximum intersecting families by branch and bound,
//! and maximum cross-intersecting products by exhaustive scan.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use super::{construct_b, construct_c, deza_frankl_partition, PermFamily};
use crate::bitset::BitSet;
use crate::error::{Result, SpectraError};
use crate::group::SymmetricGroup;
use crate::perm::Permutation;
use crate::report::{bigint_string, opt_bigint_string};
use crate::spectral::{derangement_spectrum, hoffman_independent_bound};

#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub non_centred: bool,
    pub budget: Option<Duration>,
    /// Maximum number of optima reported.
    pub witness_cap: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            non_centred: false,
            budget: Some(Duration::from_secs(60)),
            witness_cap: 10_000,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SearchStatus {
    Complete,
    Incomplete,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchWitness {
    pub a: PermFamily,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b: Option<PermFamily>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchResult {
    pub kind: String,
    pub n: usize,
    /// Best value found; exact only when `status` is complete.
    #[serde(with = "bigint_string")]
    pub optimum: BigInt,
    pub status: SearchStatus,
    pub witness_count: usize,
    pub witnesses_truncated: bool,
    pub witnesses: Vec<SearchWitness>,
    /// Hoffman bound on the optimum, when the graph has one.
    #[serde(with = "opt_bigint_string")]
    pub upper_bound: Option<BigInt>,
    pub nodes: u64,
    pub prune_counts: BTreeMap<String, u64>,
}

impl SearchResult {
    pub fn is_complete(&self) -> bool {
        self.status == SearchStatus::Complete
    }
}

const RULES: [&str; 4] = ["size", "clique-partition", "coloring", "centred"];

struct Searcher<'a> {
    g: &'a SymmetricGroup,
    /// `compat[v]`: permutations agreeing with `v` somewhere, `v` excluded.
    compat: Vec<BitSet>,
    partitions: Vec<Vec<BitSet>>,
    non_centred: bool,
    best: AtomicUsize,
    found: Mutex<Vec<BitSet>>,
    nodes: AtomicU64,
    prunes: [AtomicU64; 4],
    deadline: Option<Instant>,
    aborted: AtomicBool,
}

impl Searcher<'_> {
    fn prune(&self, rule: usize) {
        self.prunes[rule].fetch_add(1, Ordering::Relaxed);
    }

    fn tick(&self) -> bool {
        let count = self.nodes.fetch_add(1, Ordering::Relaxed);
        if count.is_multiple_of(1024) {
            if let Some(deadline) = self.deadline {
                if Instant::now() > deadline {
                    self.aborted.store(true, Ordering::Relaxed);
                }
            }
        }
        !self.aborted.load(Ordering::Relaxed)
    }

    fn record(&self, clique: &[usize]) {
        let size = clique.len();
        let prev = self.best.fetch_max(size, Ordering::SeqCst);
        if size >= prev {
            let set = BitSet::from_indices(self.g.order(), clique.iter().copied());
            self.found.lock().expect("poisoned").push(set);
        }
    }

    /// Greedy colouring of `p` into sets of pairwise disagreeing permutations.
    /// Returns vertices in colour order with their colour numbers.
    fn color_sort(&self, p: &BitSet) -> (Vec<usize>, Vec<usize>) {
        let mut order = Vec::with_capacity(p.count());
        let mut colors = Vec::with_capacity(p.count());
        let mut uncolored = p.clone();
        let mut color = 0;
        while !uncolored.is_empty() {
            color += 1;
            let mut q = uncolored.clone();
            while let Some(v) = q.first() {
                uncolored.remove(v);
                q.remove(v);
                q.difference_with(&self.compat[v]);
                order.push(v);
                colors.push(color);
            }
        }
        (order, colors)
    }

    fn clique_partition_bound(&self, p: &BitSet) -> usize {
        self.partitions
            .iter()
            .map(|cosets| cosets.iter().filter(|c| c.intersects(p)).count())
            .min()
            .unwrap_or(usize::MAX)
    }

    /// First `i` with the clique inside the `(i, i)` coset.
    fn still_centred(&self, members: &BitSet) -> Option<usize> {
        (0..self.g.n()).find(|&i| members.is_subset(self.g.coset_mask(i, i)))
    }

    fn bounded_out(&self, size: usize, p: &BitSet) -> bool {
        let best = self.best.load(Ordering::Relaxed);
        if size + p.count() < best {
            self.prune(0);
            return true;
        }
        if size + self.clique_partition_bound(p) < best {
            self.prune(1);
            return true;
        }
        false
    }

    fn expand(&self, clique: &mut Vec<usize>, members: &mut BitSet, p: BitSet) {
        if !self.tick() {
            return;
        }
        let size = clique.len();
        if p.is_empty() {
            if size >= self.best.load(Ordering::Relaxed) && !(self.non_centred && self.still_centred(members).is_some()) {
                self.record(clique);
            }
            return;
        }
        if self.bounded_out(size, &p) {
            return;
        }
        if self.non_centred {
            if let Some(i) = self.still_centred(members) {
                self.witness_branch(clique, members, p, i);
                return;
            }
        }
        let (order, colors) = self.color_sort(&p);
        let mut p = p;
        for k in (0..order.len()).rev() {
            if size + colors[k] < self.best.load(Ordering::Relaxed) {
                self.prune(2);
                return;
            }
            let v = order[k];
            let next = p.intersection(&self.compat[v]);
            clique.push(v);
            members.insert(v);
            self.expand(clique, members, next);
            members.remove(v);
            clique.pop();
            p.remove(v);
        }
    }

    /// The final family must contain some `w` with `w(i) != i`: branch on
    /// the first such member, excluding earlier choices.
    fn witness_branch(&self, clique: &mut Vec<usize>, members: &mut BitSet, p: BitSet, i: usize) {
        let outside = p.difference(self.g.coset_mask(i, i));
        if outside.is_empty() {
            self.prune(3);
            return;
        }
        let (_, colors) = self.color_sort(&p);
        if clique.len() + colors.last().copied().unwrap_or(0) < self.best.load(Ordering::Relaxed) {
            self.prune(2);
            return;
        }
        let mut p = p;
        for w in outside.iter() {
            let next = p.intersection(&self.compat[w]);
            clique.push(w);
            members.insert(w);
            self.expand(clique, members, next);
            members.remove(w);
            clique.pop();
            p.remove(w);
            if self.bounded_out(clique.len(), &p) {
                return;
            }
        }
    }

    /// Root: the identity is in the family (right translation is an
    /// automorphism preserving the constraint), branches run in parallel.
    fn run(&self) {
        let identity = 0;
        let root = self.compat[identity].clone();
        let mut root_members = BitSet::new(self.g.order());
        root_members.insert(identity);
        if root.is_empty() {
            self.expand(&mut vec![identity], &mut root_members, root);
            return;
        }
        // (vertex, candidates, colour bound)
        let mut branches: Vec<(usize, BitSet, Option<usize>)> = Vec::new();
        let mut allowed = root.clone();
        if self.non_centred {
            for w in root.difference(self.g.coset_mask(0, 0)).iter() {
                branches.push((w, allowed.intersection(&self.compat[w]), None));
                allowed.remove(w);
            }
        } else {
            let (order, colors) = self.color_sort(&root);
            for k in (0..order.len()).rev() {
                let v = order[k];
                branches.push((v, allowed.intersection(&self.compat[v]), Some(colors[k])));
                allowed.remove(v);
            }
        }
        branches.into_par_iter().for_each(|(v, p, color)| {
            if color.is_some_and(|c| 1 + c < self.best.load(Ordering::Relaxed)) {
                self.prune(2);
                return;
            }
            let mut clique = vec![identity, v];
            let mut members = root_members.clone();
            members.insert(v);
            self.expand(&mut clique, &mut members, p);
        });
    }
}

fn clique_partitions(g: &SymmetricGroup) -> Result<Vec<Vec<BitSet>>> {
    let n = g.n();
    if n < 2 {
        return Ok(vec![]);
    }
    let mut out = Vec::new();
    let mut seen = BTreeSet::new();
    for rho in g.elements().iter().filter(|p| p.cycle_lengths() == vec![n]) {
        let left: Vec<BitSet> = deza_frankl_partition(rho)?.into_iter().map(|f| f.mask().clone()).collect();
        // right cosets ⟨ρ⟩σ are images of left cosets under inversion
        let right: Vec<BitSet> = left
            .iter()
            .map(|c| BitSet::from_indices(g.order(), c.iter().map(|r| g.inverse_rank(r))))
            .collect();
        for part in [left, right] {
            let mut key: Vec<BitSet> = part.clone();
            key.sort();
            if seen.insert(key) {
                out.push(part);
            }
        }
        if out.len() >= 16 {
            break;
        }
    }
    Ok(out)
}

/// All right translates `Fτ` of the given families, deduplicated and sorted.
fn translate_closure(g: &SymmetricGroup, seeds: &[BitSet], cap: usize) -> (Vec<BitSet>, bool) {
    let mut all = BTreeSet::new();
    for s in seeds {
        for t in 0..g.order() {
            all.insert(BitSet::from_indices(g.order(), s.iter().map(|r| g.mul_rank(r, t))));
        }
    }
    let total = all.len();
    let list: Vec<BitSet> = all.into_iter().take(cap).collect();
    (list, total > cap)
}

fn prune_map(counts: &[AtomicU64; 4]) -> BTreeMap<String, u64> {
    RULES
        .iter()
        .zip(counts)
        .map(|(name, c)| (name.to_string(), c.load(Ordering::Relaxed)))
        .collect()
}

/// Pairwise check on permutations, independent of the adjacency masks.
fn pairwise_intersecting(a: &[Permutation], b: &[Permutation]) -> bool {
    a.iter().all(|x| b.iter().all(|y| x.intersects(y)))
}

/// Maximum intersecting family in `S_n` (`n <= 7`), optionally restricted to
/// non-centred families, with every optimum when the search completes.
pub fn max_intersecting_search(n: usize, config: &SearchConfig) -> Result<SearchResult> {
    if n == 0 {
        return Err(SpectraError::Domain("search needs n >= 1".into()));
    }
    let g = SymmetricGroup::get(n)?;
    let rows = g.derangement_rows()?;
    let compat: Vec<BitSet> = rows
        .iter()
        .enumerate()
        .map(|(v, row)| {
            let mut c = row.complement();
            c.remove(v);
            c
        })
        .collect();
    let upper_bound = if n >= 3 {
        let t = derangement_spectrum(n)?;
        let s = t.summary();
        Some(hoffman_independent_bound(&s.d, &s.lambda_min, &t.order())?.floor().to_integer())
    } else {
        None
    };
    // incumbent from a verified construction
    let seed = if config.non_centred {
        if n >= 4 {
            let b = construct_b(n)?;
            let c = construct_c(n)?;
            [b, c]
                .into_iter()
                .filter(|f| f.is_intersecting() && !f.is_centred())
                .map(|f| f.len())
                .max()
                .unwrap_or(0)
        } else {
            0
        }
    } else {
        let coset = PermFamily::coset(n, 0, 0)?;
        if coset.is_intersecting() {
            coset.len()
        } else {
            0
        }
    };
    let searcher = Searcher {
        g: &g,
        compat,
        partitions: clique_partitions(&g)?,
        non_centred: config.non_centred,
        best: AtomicUsize::new(seed),
        found: Mutex::new(Vec::new()),
        nodes: AtomicU64::new(0),
        prunes: Default::default(),
        deadline: config.budget.map(|b| Instant::now() + b),
        aborted: AtomicBool::new(false),
    };
    if config.non_centred {
        // n <= 2: every non-empty intersecting family is centred
        if n >= 3 {
            searcher.run();
        }
    } else {
        searcher.run();
    }
    let status = if searcher.aborted.load(Ordering::SeqCst) {
        SearchStatus::Incomplete
    } else {
        SearchStatus::Complete
    };
    let best = searcher.best.load(Ordering::SeqCst);
    let found: Vec<BitSet> = searcher
        .found
        .into_inner()
        .expect("poisoned")
        .into_iter()
        .filter(|f| f.count() == best)
        .collect();
    let (optima, truncated) = translate_closure(&g, &found, config.witness_cap);
    let mut witnesses = Vec::with_capacity(optima.len());
    for mask in optima {
        let fam = PermFamily::from_mask(n, mask)?;
        let perms = fam.perms();
        if !pairwise_intersecting(&perms, &perms) || (config.non_centred && fam.is_centred()) {
            return Err(SpectraError::Inconsistent("search produced an invalid witness".into()));
        }
        witnesses.push(SearchWitness { a: fam, b: None });
    }
    let witness_count = if truncated { config.witness_cap } else { witnesses.len() };
    Ok(SearchResult {
        kind: if config.non_centred { "max-intersecting-non-centred" } else { "max-intersecting" }.into(),
        n,
        optimum: BigInt::from(best),
        status,
        witness_count,
        witnesses_truncated: truncated,
        witnesses,
        upper_bound,
        nodes: searcher.nodes.load(Ordering::SeqCst),
        prune_counts: prune_map(&searcher.prunes),
    })
}

/// Maximum `|A||B|` over cross-intersecting pairs in `S_n`, `n <= 4`, by
/// scanning every `A` with `B` the set of permutations agreeing with all of `A`.
pub fn max_cross_product_search(n: usize, config: &SearchConfig) -> Result<SearchResult> {
    if n == 0 || n > 4 {
        return Err(SpectraError::Domain("cross-product scan needs 1 <= n <= 4".into()));
    }
    let g = SymmetricGroup::get(n)?;
    let order = g.order();
    let agree: Vec<u64> = (0..order)
        .map(|v| {
            (0..order)
                .filter(|&u| g.element(u).intersects(g.element(v)))
                .fold(0u64, |m, u| m | (1 << u))
        })
        .collect();
    let full: u64 = if order == 64 { u64::MAX } else { (1u64 << order) - 1 };
    let split = order.min(8);
    let nodes = AtomicU64::new(0);
    let deadline = config.budget.map(|b| Instant::now() + b);
    let aborted = AtomicBool::new(false);

    // depth-first over membership of vertices split.., with running intersection
    fn scan(
        v: usize,
        order: usize,
        a: u64,
        b: u64,
        agree: &[u64],
        best: &mut (u64, Vec<(u64, u64)>),
        nodes: &AtomicU64,
    ) {
        if v == order {
            nodes.fetch_add(1, Ordering::Relaxed);
            let product = u64::from(a.count_ones()) * u64::from(b.count_ones());
            if product > best.0 {
                *best = (product, vec![(a, b)]);
            } else if product == best.0 {
                best.1.push((a, b));
            }
            return;
        }
        scan(v + 1, order, a, b, agree, best, nodes);
        scan(v + 1, order, a | (1 << v), b & agree[v], agree, best, nodes);
    }

    let partials: Vec<(u64, Vec<(u64, u64)>)> = (0..1u64 << split)
        .into_par_iter()
        .map(|prefix| {
            if aborted.load(Ordering::Relaxed) {
                return (0, vec![]);
            }
            if let Some(d) = deadline {
                if Instant::now() > d {
                    aborted.store(true, Ordering::Relaxed);
                    return (0, vec![]);
                }
            }
            let mut b = full;
            for v in 0..split {
                if prefix & (1 << v) != 0 {
                    b &= agree[v];
                }
            }
            let mut best = (0u64, vec![]);
            scan(split, order, prefix, b, &agree, &mut best, &nodes);
            best
        })
        .collect();
    let optimum = partials.iter().map(|p| p.0).max().unwrap_or(0);
    let mut pairs: Vec<(u64, u64)> = partials
        .into_iter()
        .filter(|p| p.0 == optimum)
        .flat_map(|p| p.1)
        .collect();
    pairs.sort_unstable();
    let truncated = pairs.len() > config.witness_cap;
    let witness_count = pairs.len();
    let to_family = |mask: u64| PermFamily::from_ranks(n, (0..order).filter(|&r| mask & (1 << r) != 0));
    let mut witnesses = Vec::new();
    for &(a, b) in pairs.iter().take(config.witness_cap) {
        let (fa, fb) = (to_family(a)?, to_family(b)?);
        if !pairwise_intersecting(&fa.perms(), &fb.perms()) || (fa.len() * fb.len()) as u64 != optimum {
            return Err(SpectraError::Inconsistent("scan produced an invalid pair".into()));
        }
        witnesses.push(SearchWitness { a: fa, b: Some(fb) });
    }
    let status = if aborted.load(Ordering::SeqCst) {
        SearchStatus::Incomplete
    } else {
        SearchStatus::Complete
    };
    Ok(SearchResult {
        kind: "max-cross-product".into(),
        n,
        optimum: optimum.into(),
        status,
        witness_count,
        witnesses_truncated: truncated,
        witnesses,
        upper_bound: None,
        nodes: nodes.load(Ordering::SeqCst),
        prune_counts: BTreeMap::new(),
    })
}
