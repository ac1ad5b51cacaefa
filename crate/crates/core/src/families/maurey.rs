//! Transposition-graph neighbourhoods and the concentration inequality
//! `|N_h(X)| >= (1 - exp(-2(h-h₀)²/(n-1))) n!`, `h₀ = sqrt((n-1)/2 · ln(1/a))`.

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::Serialize;

use super::{transposition_distances, PermFamily};
use crate::certified::{exp_upper, ln};
use crate::counting::factorial;
use crate::error::{Result, SpectraError};
use crate::report::{rational_to_string, rational_string};
use crate::Rational;

/// `{σ : dist(σ, X) <= h}` in the transposition Cayley graph.
pub fn transposition_neighborhood(family: &PermFamily, h: usize) -> PermFamily {
    let dist = transposition_distances(family);
    PermFamily::from_ranks(
        family.n(),
        dist.iter()
            .enumerate()
            .filter(|(_, d)| d.is_some_and(|d| d <= h))
            .map(|(r, _)| r),
    )
    .expect("same n as the input family")
}

#[derive(Clone, Debug, Serialize)]
pub struct MaureyReport {
    pub n: usize,
    pub size: usize,
    #[serde(with = "rational_string")]
    pub a: Rational,
    #[serde(with = "rational_string")]
    pub multiplier: Rational,
    /// Integer radius `floor(h)`.
    pub radius: usize,
    pub neighborhood: usize,
    /// Certified upper bound on the required size `(1 - e^{-x}) n!`.
    pub required_upper: String,
    pub size_condition: bool,
    pub holds: bool,
}

/// Checks the inequality for `h = c·h₀` (`c >= 1`). The exponent is
/// `2(h-h₀)²/(n-1) = (c-1)² ln(1/a)`.
pub fn maurey_check(family: &PermFamily, a: &Rational, multiplier: &Rational) -> Result<MaureyReport> {
    let n = family.n();
    if n < 2 {
        return Err(SpectraError::Domain("needs n >= 2".into()));
    }
    if !a.is_positive() || a > &Rational::one() {
        return Err(SpectraError::Domain("a must lie in (0, 1]".into()));
    }
    if multiplier < &Rational::one() {
        return Err(SpectraError::Domain("multiplier must be at least 1".into()));
    }
    let order = factorial(n);
    let size_condition = Rational::from_integer(family.len().into()) >= a * Rational::from_integer(order.clone());
    let l = ln(&a.recip())?;
    // h² = c² (n-1)/2 · L; the radius is the largest k with k² <= h²
    let half = Rational::new(BigInt::from(n - 1), 2.into());
    let c2 = multiplier * multiplier;
    let h2_lo = &c2 * &half * &l.lo;
    let h2_hi = &c2 * &half * &l.hi;
    let mut radius = 0usize;
    loop {
        let k2 = Rational::from_integer(BigInt::from((radius + 1) * (radius + 1)));
        if k2 <= h2_lo {
            radius += 1;
        } else if k2 > h2_hi {
            break;
        } else {
            return Err(SpectraError::Domain("radius undecided at working precision".into()));
        }
    }
    let neighborhood = transposition_neighborhood(family, radius).len();
    // e^{-x} >= 1/exp_upper(x_hi), so (1 - e^{-x}) n! <= (1 - 1/exp_upper(x_hi)) n!
    let cm1 = multiplier - Rational::one();
    let x_hi = &cm1 * &cm1 * &l.hi;
    let required_upper = (Rational::one() - exp_upper(&x_hi)?.recip()) * Rational::from_integer(order);
    let holds = !size_condition || Rational::from_integer(neighborhood.into()) >= required_upper;
    Ok(MaureyReport {
        n,
        size: family.len(),
        a: a.clone(),
        multiplier: multiplier.clone(),
        radius,
        neighborhood,
        required_upper: rational_to_string(&required_upper),
        size_condition,
        holds,
    })
}
