//! Functions on `S_n` as vectors indexed by lexicographic rank, with the
//! normalised inner product `<x, y> = (1/N) Σ x_g y_g`.

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use crate::counting::factorial;
use crate::error::{Result, SpectraError};
use crate::families::PermFamily;
use crate::group::SymmetricGroup;
use crate::linalg;
use crate::partition::{partitions_of, Partition};
use crate::perm::Permutation;
use crate::report::rational_string;
use crate::repr::{dimension, CharacterTable};
use crate::scalar::Scalar;
use crate::Rational;

#[derive(Clone, Debug, PartialEq)]
pub struct GroupAlgebraVector<S> {
    n: usize,
    coords: Vec<S>,
}

impl<S: Scalar> GroupAlgebraVector<S> {
    pub fn zeros(n: usize) -> Result<Self> {
        let g = SymmetricGroup::get(n)?;
        Ok(Self {
            n,
            coords: vec![S::zero(); g.order()],
        })
    }

    /// The all-ones vector `f`.
    pub fn ones(n: usize) -> Result<Self> {
        let g = SymmetricGroup::get(n)?;
        Ok(Self {
            n,
            coords: vec![S::one(); g.order()],
        })
    }

    pub fn from_coords(n: usize, coords: Vec<S>) -> Result<Self> {
        let g = SymmetricGroup::get(n)?;
        if coords.len() != g.order() {
            return Err(SpectraError::SizeMismatch {
                expected: g.order(),
                found: coords.len(),
            });
        }
        Ok(Self { n, coords })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coords(&self) -> &[S] {
        &self.coords
    }

    pub fn get(&self, p: &Permutation) -> &S {
        &self.coords[p.lex_rank()]
    }

    pub fn map(&self, f: impl Fn(&S) -> S) -> Self {
        Self {
            n: self.n,
            coords: self.coords.iter().map(f).collect(),
        }
    }

    fn zip(&self, other: &Self, f: impl Fn(&S, &S) -> S) -> Self {
        assert_eq!(self.n, other.n, "vectors over different groups");
        Self {
            n: self.n,
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| f(a, b)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a.clone() + b.clone())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a.clone() - b.clone())
    }

    pub fn scale(&self, c: &S) -> Self {
        self.map(|a| a.clone() * c.clone())
    }

    pub fn inner(&self, other: &Self) -> S {
        assert_eq!(self.n, other.n, "vectors over different groups");
        let sum = self
            .coords
            .iter()
            .zip(&other.coords)
            .filter(|(a, b)| !a.is_zero() && !b.is_zero())
            .fold(S::zero(), |acc, (a, b)| acc + a.clone() * b.clone());
        sum / S::from_bigint(&BigInt::from(self.coords.len()))
    }

    pub fn norm_sq(&self) -> S {
        self.inner(self)
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Scalar::is_negligible)
    }
}

/// 0/1 indicator of a family.
pub fn characteristic_vector<S: Scalar>(family: &PermFamily) -> GroupAlgebraVector<S> {
    let mut coords = vec![S::zero(); family.mask().capacity()];
    for r in family.ranks() {
        coords[r] = S::one();
    }
    GroupAlgebraVector {
        n: family.n(),
        coords,
    }
}

fn check_real_classes(g: &SymmetricGroup) -> Result<()> {
    for r in 0..g.order() {
        if g.class_index(g.inverse_rank(r)) != g.class_index(r) {
            return Err(SpectraError::Inconsistent(format!(
                "{} and its inverse lie in different classes",
                g.element(r)
            )));
        }
    }
    Ok(())
}

/// `sums[σ][c] = Σ { v(h) : h σ⁻¹ in class c }`.
fn class_sums<S: Scalar>(v: &GroupAlgebraVector<S>, g: &SymmetricGroup) -> Vec<Vec<S>> {
    let support: Vec<(usize, &S)> = v
        .coords
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .collect();
    let k = g.classes().len();
    (0..g.order())
        .into_par_iter()
        .map(|s| {
            let s_inv = g.inverse_rank(s);
            let mut row = vec![S::zero(); k];
            for &(h, c) in &support {
                let cls = g.class_index(g.mul_rank(h, s_inv));
                row[cls] = row[cls].clone() + c.clone();
            }
            row
        })
        .collect()
}

fn project_from_sums<S: Scalar>(
    n: usize,
    sums: &[Vec<S>],
    alpha: &Partition,
    g: &SymmetricGroup,
) -> Result<GroupAlgebraVector<S>> {
    let table = CharacterTable::get(n);
    let chi = table
        .row(alpha)
        .ok_or_else(|| SpectraError::InvalidPartition(format!("{alpha} is not a partition of {n}")))?;
    // the table is indexed by partitions_of(n), the same order as the classes
    debug_assert_eq!(table.partitions(), g.classes());
    let chi: Vec<S> = chi.iter().map(S::from_bigint).collect();
    let weight = S::from_ratio(&dimension(alpha), &factorial(n));
    let coords = sums
        .par_iter()
        .map(|row| {
            let total = row
                .iter()
                .zip(&chi)
                .filter(|(s, c)| !s.is_zero() && !c.is_zero())
                .fold(S::zero(), |acc, (s, c)| acc + s.clone() * c.clone());
            total * weight.clone()
        })
        .collect();
    Ok(GroupAlgebraVector { n, coords })
}

/// `e_α v` with `e_α(g) = (f^α/n!) χ_α(g⁻¹)`, computed through class sums.
pub fn project_isotypic<S: Scalar>(v: &GroupAlgebraVector<S>, alpha: &Partition) -> Result<GroupAlgebraVector<S>> {
    if alpha.n() != v.n {
        return Err(SpectraError::InvalidPartition(format!("{alpha} is not a partition of {}", v.n)));
    }
    let g = SymmetricGroup::get(v.n)?;
    check_real_classes(&g)?;
    let sums = class_sums(v, &g);
    project_from_sums(v.n, &sums, alpha, &g)
}

/// Projections onto every isotypic component, in `partitions_of` order.
pub fn project_all<S: Scalar>(v: &GroupAlgebraVector<S>) -> Result<Vec<(Partition, GroupAlgebraVector<S>)>> {
    let g = SymmetricGroup::get(v.n)?;
    check_real_classes(&g)?;
    let sums = class_sums(v, &g);
    partitions_of(v.n)
        .into_iter()
        .map(|a| {
            let p = project_from_sums(v.n, &sums, &a, &g)?;
            Ok((a, p))
        })
        .collect()
}

/// Projection onto `⊕_{α ∈ S} U_α`.
pub fn project_onto<S: Scalar>(v: &GroupAlgebraVector<S>, set: &[Partition]) -> Result<GroupAlgebraVector<S>> {
    let g = SymmetricGroup::get(v.n)?;
    check_real_classes(&g)?;
    let sums = class_sums(v, &g);
    let mut out = GroupAlgebraVector::zeros(v.n)?;
    for a in set {
        if a.n() != v.n {
            return Err(SpectraError::InvalidPartition(format!("{a} is not a partition of {}", v.n)));
        }
        out = out.add(&project_from_sums(v.n, &sums, a, &g)?);
    }
    Ok(out)
}

/// Quadratic-time reference: builds `e_α` element by element and convolves.
pub fn project_isotypic_naive<S: Scalar>(
    v: &GroupAlgebraVector<S>,
    alpha: &Partition,
) -> Result<GroupAlgebraVector<S>> {
    let n = v.n;
    let g = SymmetricGroup::get(n)?;
    let weight = S::from_ratio(&dimension(alpha), &factorial(n));
    let idempotent: Vec<S> = (0..g.order())
        .map(|r| {
            let inv = g.element(g.inverse_rank(r)).cycle_type();
            Ok(S::from_bigint(&crate::repr::character(alpha, &inv)?) * weight.clone())
        })
        .collect::<Result<_>>()?;
    // (e x)(σ) = Σ_g e(g) x(g⁻¹ σ)
    let coords = (0..g.order())
        .map(|s| {
            (0..g.order()).fold(S::zero(), |acc, r| {
                let x = &v.coords[g.mul_rank(g.inverse_rank(r), s)];
                acc + idempotent[r].clone() * x.clone()
            })
        })
        .collect();
    Ok(GroupAlgebraVector { n, coords })
}

/// `σ`-coordinate of the projection of `v_A` onto `U_(n) ⊕ U_(n-1,1)`, from
/// slice sizes: `((n-1)/n!) Σ_i |A_{i↦σ(i)}| - ((n-2)/n!) |A|`.
pub fn projection_coordinate_closed_form(family: &PermFamily, sigma: &Permutation) -> Result<Rational> {
    let n = family.n();
    if sigma.n() != n {
        return Err(SpectraError::SizeMismatch {
            expected: n,
            found: sigma.n(),
        });
    }
    let slices: usize = (0..n).map(|i| family.slice_size(i, sigma.apply(i))).sum();
    let nf = factorial(n);
    let a = Rational::new(BigInt::from((n - 1) * slices), nf.clone());
    let b = Rational::new(BigInt::from(n as i64 - 2) * BigInt::from(family.len()), nf);
    Ok(a - b)
}

/// `(n)` and `(n-1,1)`.
pub fn coset_span_partitions(n: usize) -> Vec<Partition> {
    let mut out = vec![Partition::new(vec![n]).expect("valid")];
    if n >= 2 {
        out.push(Partition::new(vec![n - 1, 1]).expect("valid"));
    }
    out
}

/// `D² = ||v||² - Σ_{α∈S} ||P_α v||²`.
pub fn distance_to_u<S: Scalar>(v: &GroupAlgebraVector<S>, set: &[Partition]) -> Result<S> {
    let p = project_onto(v, set)?;
    Ok(v.norm_sq() - p.norm_sq())
}

#[derive(Clone, Debug, Serialize)]
pub struct ComponentNorm {
    pub alpha: Partition,
    #[serde(with = "rational_string")]
    pub norm_sq: Rational,
}

#[derive(Clone, Debug, Serialize)]
pub struct ProjectionReport {
    pub components: Vec<ComponentNorm>,
    #[serde(with = "rational_string")]
    pub total: Rational,
    pub designated: Vec<Partition>,
    /// `D²` to the span of the designated components.
    #[serde(with = "rational_string")]
    pub residual: Rational,
}

impl ProjectionReport {
    pub fn parseval_holds(&self) -> bool {
        self.components.iter().map(|c| &c.norm_sq).sum::<Rational>() == self.total
    }
}

pub fn projection_report(v: &GroupAlgebraVector<Rational>, designated: &[Partition]) -> Result<ProjectionReport> {
    let components: Vec<ComponentNorm> = project_all(v)?
        .into_iter()
        .map(|(alpha, p)| ComponentNorm {
            norm_sq: p.norm_sq(),
            alpha,
        })
        .collect();
    let inside: Rational = components
        .iter()
        .filter(|c| designated.contains(&c.alpha))
        .map(|c| &c.norm_sq)
        .sum();
    let total = v.norm_sq();
    Ok(ProjectionReport {
        residual: &total - inside,
        components,
        total,
        designated: designated.to_vec(),
    })
}

/// `(A v)(σ) = Σ_{s} v(s σ)` over the generator ranks.
pub fn apply_cayley_adjacency<S: Scalar>(v: &GroupAlgebraVector<S>, generators: &[usize]) -> GroupAlgebraVector<S> {
    let g = SymmetricGroup::get(v.n).expect("vector exists only for supported n");
    let coords = (0..g.order())
        .into_par_iter()
        .map(|s| {
            generators
                .iter()
                .fold(S::zero(), |acc, &t| acc + v.coords[g.mul_rank(t, s)].clone())
        })
        .collect();
    GroupAlgebraVector { n: v.n, coords }
}

pub fn apply_derangement_adjacency<S: Scalar>(v: &GroupAlgebraVector<S>) -> GroupAlgebraVector<S> {
    let g = SymmetricGroup::get(v.n).expect("vector exists only for supported n");
    let gens: Vec<usize> = (0..g.order()).filter(|&r| g.element(r).is_derangement()).collect();
    apply_cayley_adjacency(v, &gens)
}

/// Rank of the `n²` 1-coset indicators over `S`.
pub fn coset_span_rank_in<S: Scalar>(n: usize) -> Result<usize> {
    let rows = PermFamily::all_cosets(n)?
        .iter()
        .map(|c| characteristic_vector::<S>(c).coords)
        .collect();
    Ok(linalg::rank(rows))
}

pub fn coset_span_rank(n: usize) -> Result<usize> {
    coset_span_rank_in::<Rational>(n)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CosetUnionReport {
    pub is_union: bool,
    /// 1-based `(i, j)` of the cosets used.
    pub witness: Vec<(usize, usize)>,
}

/// Exact cover of the family by disjoint 1-cosets.
pub fn is_disjoint_union_of_1_cosets(family: &PermFamily) -> CosetUnionReport {
    let n = family.n();
    let g = family.group();
    let block = g.order().checked_div(n).unwrap_or(1);
    if !family.len().is_multiple_of(block) {
        return CosetUnionReport {
            is_union: false,
            witness: vec![],
        };
    }
    fn cover(
        remaining: &crate::bitset::BitSet,
        g: &SymmetricGroup,
        chosen: &mut Vec<(usize, usize)>,
    ) -> bool {
        let Some(r) = remaining.first() else {
            return true;
        };
        let sigma = g.element(r);
        for i in 0..g.n() {
            let mask = g.coset_mask(i, sigma.apply(i));
            if mask.is_subset(remaining) {
                chosen.push((i, sigma.apply(i)));
                if cover(&remaining.difference(mask), g, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    let mut chosen = Vec::new();
    let is_union = cover(family.mask(), &g, &mut chosen);
    CosetUnionReport {
        is_union,
        witness: if is_union {
            chosen.into_iter().map(|(i, j)| (i + 1, j + 1)).collect()
        } else {
            vec![]
        },
    }
}
