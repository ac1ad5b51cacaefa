//! Eigenvalues of normal Cayley graphs on `S_n` from class sums of characters,
//! and the Hoffman-type bounds built on them.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::counting::{conjugacy_class_size, factorial};
use crate::error::{Result, SpectraError};
use crate::families::PermFamily;
use crate::group::SymmetricGroup;
use crate::group_algebra::{apply_cayley_adjacency, characteristic_vector, GroupAlgebraVector};
use crate::partition::{partitions_of, Partition};
use crate::report::{bigint_string, opt_bigint_string, rational_to_string};
use crate::repr::{character, dimension};
use crate::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpectrumEntry {
    pub alpha: Partition,
    #[serde(with = "bigint_string")]
    pub lambda: BigInt,
    #[serde(with = "bigint_string")]
    pub multiplicity: BigInt,
    #[serde(skip)]
    pub dimension: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpectrumTable {
    pub n: usize,
    #[serde(skip)]
    pub generating_classes: Vec<Partition>,
    #[serde(with = "bigint_string")]
    pub degree: BigInt,
    pub entries: Vec<SpectrumEntry>,
}

impl SpectrumTable {
    pub fn eigenvalue(&self, alpha: &Partition) -> Option<&BigInt> {
        self.entries.iter().find(|e| &e.alpha == alpha).map(|e| &e.lambda)
    }

    pub fn order(&self) -> BigInt {
        factorial(self.n)
    }

    /// Eigenvalue values with total multiplicity.
    pub fn value_multiplicities(&self) -> BTreeMap<BigInt, BigInt> {
        let mut out: BTreeMap<BigInt, BigInt> = BTreeMap::new();
        for e in &self.entries {
            *out.entry(e.lambda.clone()).or_insert_with(BigInt::zero) += &e.multiplicity;
        }
        out
    }

    pub fn summary(&self) -> SpectrumSummary {
        SpectrumSummary::from_table(self)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("spectrum serializes")
    }
}

/// `λ_α = (1/f^α) Σ_β |β| χ_α(β)` over the generating classes.
pub fn normal_cayley_spectrum(n: usize, generating_classes: &[Partition]) -> Result<SpectrumTable> {
    if n == 0 {
        return Err(SpectraError::Domain("spectra need n >= 1".into()));
    }
    let mut classes = generating_classes.to_vec();
    classes.sort_by(|a, b| b.cmp(a));
    classes.dedup();
    if let Some(bad) = classes.iter().find(|c| c.n() != n) {
        return Err(SpectraError::InvalidPartition(format!("{bad} is not a partition of {n}")));
    }
    let sizes: Vec<BigInt> = classes.iter().map(conjugacy_class_size).collect();
    let degree: BigInt = sizes.iter().sum();
    let entries = partitions_of(n)
        .into_par_iter()
        .map(|alpha| {
            let f = dimension(&alpha);
            let mut total = BigInt::zero();
            for (beta, size) in classes.iter().zip(&sizes) {
                total += size * character(&alpha, beta)?;
            }
            let (lambda, rem) = total.div_rem(&f);
            if !rem.is_zero() {
                return Err(SpectraError::Inconsistent(format!(
                    "eigenvalue for {alpha} is not integral ({total}/{f})"
                )));
            }
            Ok(SpectrumEntry {
                alpha,
                lambda,
                multiplicity: &f * &f,
                dimension: f,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SpectrumTable {
        n,
        generating_classes: classes,
        degree,
        entries,
    })
}

/// Cycle types without fixed points.
pub fn derangement_classes(n: usize) -> Vec<Partition> {
    partitions_of(n)
        .into_iter()
        .filter(|p| p.multiplicity(1) == 0)
        .collect()
}

pub fn derangement_spectrum(n: usize) -> Result<SpectrumTable> {
    normal_cayley_spectrum(n, &derangement_classes(n))
}

/// Eigenvalue data entering the Hoffman-type bounds.
///
/// `lambda2` is the second entry of the spectrum sorted in decreasing order,
/// so it equals `d` when the degree eigenvalue is repeated (a disconnected
/// graph). `mu` is the largest modulus after dropping one copy of `d` and
/// every copy of `lambda_min`. `lambda_m` is the least eigenvalue other than
/// `lambda_min`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpectrumSummary {
    #[serde(with = "bigint_string")]
    pub order: BigInt,
    #[serde(with = "bigint_string")]
    pub d: BigInt,
    #[serde(with = "bigint_string")]
    pub lambda_min: BigInt,
    #[serde(with = "opt_bigint_string")]
    pub lambda2: Option<BigInt>,
    #[serde(with = "opt_bigint_string")]
    pub lambda_m: Option<BigInt>,
    #[serde(with = "bigint_string")]
    pub nu: BigInt,
    #[serde(with = "bigint_string")]
    pub mu: BigInt,
    pub tie_flag: bool,
}

impl SpectrumSummary {
    pub fn from_table(t: &SpectrumTable) -> Self {
        let values = t.value_multiplicities();
        let d = t.degree.clone();
        let lambda_min = values.keys().next().cloned().unwrap_or_else(BigInt::zero);
        let d_mult = values.get(&d).cloned().unwrap_or_else(BigInt::zero);
        let lambda2 = if d_mult > BigInt::one() {
            Some(d.clone())
        } else {
            values.keys().rev().find(|v| **v < d).cloned()
        };
        let lambda_m = values.keys().find(|v| **v != lambda_min).cloned().filter(|v| *v != d || d_mult > BigInt::one());
        let nu = lambda2
            .as_ref()
            .map_or(lambda_min.abs(), |l2| l2.abs().max(lambda_min.abs()));
        let mu = values
            .iter()
            .filter(|(v, m)| **v != lambda_min && (**v != d || **m > BigInt::one()))
            .map(|(v, _)| v.abs())
            .max()
            .unwrap_or_else(BigInt::zero);
        let tie_flag = lambda2.as_ref().is_some_and(|l2| l2.abs() == lambda_min.abs());
        SpectrumSummary {
            order: t.order(),
            d,
            lambda_min,
            lambda2,
            lambda_m,
            nu,
            mu,
            tie_flag,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceCheck {
    #[serde(with = "bigint_string")]
    pub lhs: BigInt,
    #[serde(with = "bigint_string")]
    pub rhs: BigInt,
    #[serde(with = "bigint_string")]
    pub residual: BigInt,
    pub passed: bool,
}

/// `Σ_α (f^α λ_α)² = n!·d`.
pub fn trace_identity_check(t: &SpectrumTable) -> TraceCheck {
    let lhs: BigInt = t
        .entries
        .iter()
        .map(|e| {
            let x = &e.dimension * &e.lambda;
            &x * &x
        })
        .sum();
    let rhs = t.order() * &t.degree;
    let residual = &lhs - &rhs;
    TraceCheck {
        passed: residual.is_zero(),
        lhs,
        rhs,
        residual,
    }
}

/// `|λ_N| N / (d + |λ_N|)`.
pub fn hoffman_independent_bound(d: &BigInt, lambda_min: &BigInt, order: &BigInt) -> Result<Rational> {
    if !d.is_positive() || !lambda_min.is_negative() {
        return Err(SpectraError::Domain(format!(
            "Hoffman bound needs d > 0 > lambda_min, got d={d}, lambda_min={lambda_min}"
        )));
    }
    let m = lambda_min.abs();
    Ok(Rational::new(&m * order, d + &m))
}

/// `ν N / (d + ν)`, the bound on `sqrt(|X||Y|)`.
pub fn cross_bound(d: &BigInt, nu: &BigInt, order: &BigInt) -> Result<Rational> {
    let den = d + nu;
    if den.is_zero() {
        return Err(SpectraError::Domain("cross bound with d + nu = 0".into()));
    }
    Ok(Rational::new(nu * order, den))
}

#[derive(Clone, Debug, Serialize)]
pub struct NuReport {
    pub n: usize,
    #[serde(with = "bigint_string")]
    pub nu: BigInt,
    pub expected: String,
    pub nu_matches: bool,
    pub tie_flag: bool,
    /// Largest `|λ_α|` over `α ∉ {(n), (n-1,1)}`.
    #[serde(with = "bigint_string")]
    pub max_other_modulus: BigInt,
    pub strict_dominance: bool,
}

impl NuReport {
    /// The claim for this `n`: `ν` matches, plus strict dominance from `n = 5`.
    pub fn passed(&self) -> bool {
        self.nu_matches && (self.n < 5 || self.strict_dominance)
    }
}

pub fn nu_formula_check(n: usize) -> Result<NuReport> {
    if n < 2 {
        return Err(SpectraError::Domain("nu check needs n >= 2".into()));
    }
    let t = derangement_spectrum(n)?;
    let s = t.summary();
    let expected = Rational::new(t.degree.clone(), BigInt::from(n - 1));
    let top = Partition::new(vec![n])?;
    let standard = Partition::new(vec![n - 1, 1])?;
    let max_other_modulus = t
        .entries
        .iter()
        .filter(|e| e.alpha != top && e.alpha != standard)
        .map(|e| e.lambda.abs())
        .max()
        .unwrap_or_else(BigInt::zero);
    Ok(NuReport {
        n,
        nu_matches: Rational::from_integer(s.nu.clone()) == expected,
        expected: rational_to_string(&expected),
        nu: s.nu,
        tie_flag: s.tie_flag,
        strict_dominance: Rational::from_integer(max_other_modulus.clone()) < expected,
        max_other_modulus,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CertificateStatus {
    /// Both shifted vectors are exact eigenvectors for `lambda_prime`.
    Certified,
    /// `|λ₂| = |λ_N|`; the equality characterisation does not apply.
    TieNotApplicable,
    /// The pair does not attain the bound; nothing is claimed.
    NotAtBound,
    /// No generators: every vector is a 0-eigenvector.
    Degenerate,
    /// The pair attains the bound but an eigenvector test failed.
    Failed,
}

#[derive(Clone, Debug, Serialize)]
pub struct EqualityCertificate {
    pub status: CertificateStatus,
    pub size_x: usize,
    pub size_y: usize,
    pub bound: String,
    pub sizes_equal: bool,
    #[serde(with = "opt_bigint_string")]
    pub lambda_prime: Option<BigInt>,
    pub x_eigenvector: bool,
    pub y_eigenvector: bool,
}

/// If `|X||Y|` meets the cross bound, tests that `v_X - (|X|/N) f` and
/// `v_Y - (|Y|/N) f` are eigenvectors of the adjacency operator.
pub fn equality_certificate(x: &PermFamily, y: &PermFamily, t: &SpectrumTable) -> Result<EqualityCertificate> {
    if x.n() != t.n || y.n() != t.n {
        return Err(SpectraError::SizeMismatch {
            expected: t.n,
            found: if x.n() != t.n { x.n() } else { y.n() },
        });
    }
    let g = SymmetricGroup::get(t.n)?;
    let generators = g.ranks_in_classes(&t.generating_classes);
    for a in x.ranks() {
        for &s in &generators {
            if y.mask().contains(g.mul_rank(s, a)) {
                return Err(SpectraError::Domain("X and Y are joined by an edge".into()));
            }
        }
    }
    let s = t.summary();
    let order = t.order();
    let mut cert = EqualityCertificate {
        status: CertificateStatus::NotAtBound,
        size_x: x.len(),
        size_y: y.len(),
        bound: String::new(),
        sizes_equal: x.len() == y.len(),
        lambda_prime: None,
        x_eigenvector: false,
        y_eigenvector: false,
    };
    if t.degree.is_zero() {
        cert.bound = rational_to_string(&Rational::from_integer(order));
        cert.status = CertificateStatus::Degenerate;
        return Ok(cert);
    }
    let bound = cross_bound(&s.d, &s.nu, &order)?;
    cert.bound = rational_to_string(&bound);
    if s.tie_flag {
        cert.status = CertificateStatus::TieNotApplicable;
        return Ok(cert);
    }
    let product = Rational::from_integer(BigInt::from(x.len() * y.len()));
    if product != &bound * &bound {
        return Ok(cert);
    }
    let shifted = |fam: &PermFamily| -> GroupAlgebraVector<Rational> {
        let v = characteristic_vector::<Rational>(fam);
        let shift = Rational::new(BigInt::from(fam.len()), order.clone());
        v.map(|c| c - &shift)
    };
    let eigen = |fam: &PermFamily| -> Option<BigInt> {
        let u = shifted(fam);
        let au = apply_cayley_adjacency(&u, &generators);
        let (k, c) = u.coords().iter().enumerate().find(|(_, c)| !c.is_zero())?;
        let ratio = &au.coords()[k] / c;
        if !ratio.is_integer() {
            return None;
        }
        let scaled = u.map(|c| c * &ratio);
        (scaled == au).then(|| ratio.to_integer())
    };
    let ex = eigen(x);
    let ey = eigen(y);
    cert.x_eigenvector = ex.is_some();
    cert.y_eigenvector = ey.is_some();
    cert.status = match (ex, ey) {
        (Some(a), Some(b)) if a == b && cert.sizes_equal => {
            cert.lambda_prime = Some(a);
            CertificateStatus::Certified
        }
        _ => CertificateStatus::Failed,
    };
    Ok(cert)
}

/// Upper bound on `D²` for an independent set of density `α`:
/// `α((1-α)|λ_N| - dα) / (λ_M - λ_N)`.
pub fn distance_bound_independent(
    alpha: &Rational,
    d: &BigInt,
    lambda_min: &BigInt,
    lambda_m: &BigInt,
) -> Result<Rational> {
    if lambda_m <= lambda_min {
        return Err(SpectraError::Domain(format!(
            "need lambda_M > lambda_min, got {lambda_m} <= {lambda_min}"
        )));
    }
    if !lambda_min.is_negative() {
        return Err(SpectraError::Domain("lambda_min must be negative".into()));
    }
    let m = Rational::from_integer(lambda_min.abs());
    let d = Rational::from_integer(d.clone());
    let hoffman = &m / (&d + &m);
    if alpha.is_negative() || *alpha > hoffman {
        return Err(SpectraError::Domain(format!(
            "density {} outside [0, {}]",
            rational_to_string(alpha),
            rational_to_string(&hoffman)
        )));
    }
    let one = Rational::one();
    let num = alpha * ((&one - alpha) * &m - &d * alpha);
    Ok(num / Rational::from_integer(lambda_m - lambda_min))
}

/// `a <= sqrt(p) + sqrt(q)` for `p, q >= 0`, decided exactly.
pub(crate) fn le_sum_of_sqrts(a: &Rational, p: &Rational, q: &Rational) -> bool {
    if !a.is_positive() {
        return true;
    }
    // a² <= p + q + 2 sqrt(pq)  ⇔  a² - p - q <= 2 sqrt(pq)
    let r = a * a - p - q;
    if !r.is_positive() {
        return true;
    }
    r.clone() * r <= Rational::from_integer(4.into()) * p * q
}

#[derive(Clone, Debug, Serialize)]
pub struct CrossInequalityReport {
    pub lhs: String,
    pub holds: bool,
    /// Right-hand side as a float, for reading only.
    pub display_rhs: f64,
}

/// `d α β <= μ D E + |λ_N| sqrt((α-α²-D²)(β-β²-E²))` from the squared
/// distances `D²`, `E²`.
pub fn cross_distance_inequality_check(
    x: &PermFamily,
    y: &PermFamily,
    summary: &SpectrumSummary,
    d_sq: &Rational,
    e_sq: &Rational,
) -> Result<CrossInequalityReport> {
    let order = Rational::from_integer(summary.order.clone());
    let alpha = Rational::from_integer(x.len().into()) / &order;
    let beta = Rational::from_integer(y.len().into()) / &order;
    let rx = &alpha - &alpha * &alpha - d_sq;
    let ry = &beta - &beta * &beta - e_sq;
    if d_sq.is_negative() || e_sq.is_negative() || rx.is_negative() || ry.is_negative() {
        return Err(SpectraError::Domain("distance exceeds the norm of the shifted vector".into()));
    }
    let lhs = Rational::from_integer(summary.d.clone()) * &alpha * &beta;
    let mu = Rational::from_integer(summary.mu.clone());
    let lam = Rational::from_integer(summary.lambda_min.abs());
    // μ D E = sqrt(μ² D² E²) and |λ_N| sqrt(rx ry) = sqrt(λ² rx ry)
    let p = &mu * &mu * d_sq * e_sq;
    let q = &lam * &lam * &rx * &ry;
    let display_rhs = crate::report::display_f64(&p).sqrt() + crate::report::display_f64(&q).sqrt();
    Ok(CrossInequalityReport {
        holds: le_sum_of_sqrts(&lhs, &p, &q),
        lhs: rational_to_string(&lhs),
        display_rhs,
    })
}
