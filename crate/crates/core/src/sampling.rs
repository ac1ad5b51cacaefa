//! Seeded random inputs for property checks. Every generator draws from a
//! caller-supplied [`ChaCha8Rng`], so a fixed seed reproduces the same inputs.

use num_traits::ToPrimitive;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bitset::BitSet;
use crate::counting::factorial;
use crate::error::{Result, SpectraError};
use crate::families::PermFamily;
use crate::group::SymmetricGroup;
use crate::group_algebra::GroupAlgebraVector;
use crate::partition::Partition;
use crate::perm::Permutation;
use crate::spectral::derangement_classes;
use crate::Rational;

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_permutation(n: usize, rng: &mut ChaCha8Rng) -> Permutation {
    let mut images: Vec<u8> = (0..n as u8).collect();
    images.shuffle(rng);
    Permutation::from_images(images).expect("shuffle keeps a bijection")
}

/// Each permutation independently with probability `density`.
pub fn random_family(n: usize, density: f64, rng: &mut ChaCha8Rng) -> Result<PermFamily> {
    let order = SymmetricGroup::get(n)?.order();
    PermFamily::from_ranks(n, (0..order).filter(|_| rng.gen_bool(density)))
}

/// Greedy maximal intersecting family over a random vertex order.
pub fn random_maximal_intersecting(n: usize, rng: &mut ChaCha8Rng) -> Result<PermFamily> {
    let g = SymmetricGroup::get(n)?;
    let rows = g.derangement_rows()?;
    let mut order: Vec<usize> = (0..g.order()).collect();
    order.shuffle(rng);
    let mut allowed = BitSet::full(g.order());
    let mut chosen = Vec::new();
    for r in order {
        if allowed.contains(r) {
            chosen.push(r);
            allowed.difference_with(&rows[r]);
            allowed.remove(r);
        }
    }
    PermFamily::from_ranks(n, chosen)
}

/// Non-empty random subfamily of a random maximal intersecting family.
pub fn random_intersecting(n: usize, rng: &mut ChaCha8Rng) -> Result<PermFamily> {
    let maximal = random_maximal_intersecting(n, rng)?;
    let ranks: Vec<usize> = maximal.ranks().collect();
    let keep = rng.gen_range(1..=ranks.len());
    PermFamily::from_ranks(n, ranks.choose_multiple(rng, keep).copied())
}

/// Greedy random family in which every pair agrees in at least `t` points.
pub fn random_t_intersecting(n: usize, t: usize, rng: &mut ChaCha8Rng) -> Result<PermFamily> {
    let g = SymmetricGroup::get(n)?;
    let mut order: Vec<&Permutation> = g.elements().iter().collect();
    order.shuffle(rng);
    let target = rng.gen_range(1..=order.len());
    let mut chosen: Vec<Permutation> = Vec::new();
    for p in order {
        if chosen.len() == target {
            break;
        }
        if chosen.iter().all(|q| q.agreements(p) >= t) {
            chosen.push(p.clone());
        }
    }
    PermFamily::from_perms(n, &chosen)
}

/// `A` a random intersecting family, `B` a random non-empty subset of the
/// permutations agreeing with every member of `A`.
pub fn random_cross_intersecting_pair(n: usize, rng: &mut ChaCha8Rng) -> Result<(PermFamily, PermFamily)> {
    let g = SymmetricGroup::get(n)?;
    let rows = g.derangement_rows()?;
    let a = random_intersecting(n, rng)?;
    let mut common = BitSet::full(g.order());
    for r in a.ranks() {
        common.difference_with(&rows[r]);
    }
    let pool: Vec<usize> = common.iter().collect();
    if pool.is_empty() {
        return Err(SpectraError::Inconsistent("intersecting family with empty common neighbourhood".into()));
    }
    let keep = rng.gen_range(1..=pool.len());
    let b = PermFamily::from_ranks(n, pool.choose_multiple(rng, keep).copied())?;
    Ok((a, b))
}

/// Non-empty random subset of the fixed-point-free classes.
pub fn random_class_union(n: usize, rng: &mut ChaCha8Rng) -> Vec<Partition> {
    let classes = derangement_classes(n);
    if classes.is_empty() {
        return classes;
    }
    loop {
        let pick: Vec<Partition> = classes.iter().filter(|_| rng.gen_bool(0.5)).cloned().collect();
        if !pick.is_empty() {
            return pick;
        }
    }
}

/// Coordinates `p/q` with `|p| <= 5`, `1 <= q <= 4`.
pub fn random_rational_vector(n: usize, rng: &mut ChaCha8Rng) -> Result<GroupAlgebraVector<Rational>> {
    let order = factorial(n).to_usize().unwrap_or(usize::MAX);
    let coords = (0..order)
        .map(|_| Rational::new(rng.gen_range(-5i64..=5).into(), rng.gen_range(1i64..=4).into()))
        .collect();
    GroupAlgebraVector::from_coords(n, coords)
}
