//! Rational enclosures of `ln` and `exp`, for deciding inequalities that
//! involve transcendental quantities without floating point.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Result, SpectraError};
use crate::Rational;

/// Closed interval `[lo, hi]` with rational endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Enclosure {
    pub lo: Rational,
    pub hi: Rational,
}

impl Enclosure {
    pub fn exact(q: Rational) -> Self {
        Self { lo: q.clone(), hi: q }
    }

    pub fn contains(&self, q: &Rational) -> bool {
        &self.lo <= q && q <= &self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    /// Outward rounding onto the grid `2^-bits`.
    pub fn rounded(&self, bits: u32) -> Self {
        Self {
            lo: round_down(&self.lo, bits),
            hi: round_up(&self.hi, bits),
        }
    }

    fn add(&self, other: &Self) -> Self {
        Self {
            lo: &self.lo + &other.lo,
            hi: &self.hi + &other.hi,
        }
    }

    fn scale(&self, k: &Rational) -> Self {
        if k.is_negative() {
            Self {
                lo: &self.hi * k,
                hi: &self.lo * k,
            }
        } else {
            Self {
                lo: &self.lo * k,
                hi: &self.hi * k,
            }
        }
    }
}

fn round_down(q: &Rational, bits: u32) -> Rational {
    let scale = BigInt::one() << bits;
    let num = (q.numer() * &scale).div_floor(q.denom());
    Rational::new(num, scale)
}

fn round_up(q: &Rational, bits: u32) -> Rational {
    let scale = BigInt::one() << bits;
    let num = (q.numer() * &scale).div_ceil(q.denom());
    Rational::new(num, scale)
}

const GRID_BITS: u32 = 96;

/// `2 atanh(z) = ln((1+z)/(1-z))` for `0 <= z < 1`, from `terms` series terms
/// plus a geometric tail bound.
fn two_atanh(z: &Rational, terms: usize) -> Enclosure {
    let z2 = z * z;
    let mut power = z.clone();
    let mut sum = Rational::zero();
    for j in 0..terms {
        sum += &power / Rational::from_integer(BigInt::from(2 * j + 1));
        power = &power * &z2;
    }
    // remaining terms are at most z^{2m+1}/(2m+1) · 1/(1-z²)
    let tail = &power / Rational::from_integer(BigInt::from(2 * terms + 1)) / (Rational::one() - &z2);
    let two = Rational::from_integer(2.into());
    Enclosure {
        lo: &sum * &two,
        hi: (sum + tail) * two,
    }
    .rounded(GRID_BITS)
}

pub fn ln2() -> Enclosure {
    two_atanh(&Rational::new(1.into(), 3.into()), 60)
}

/// Enclosure of `ln x` for rational `x > 0`.
pub fn ln(x: &Rational) -> Result<Enclosure> {
    if !x.is_positive() {
        return Err(SpectraError::Domain("ln of a non-positive number".into()));
    }
    if x < &Rational::one() {
        let e = ln(&x.recip())?;
        return Ok(Enclosure { lo: -e.hi, hi: -e.lo });
    }
    // x = 2^k y with 1 <= y < 2
    let mut k = (x.numer().bits() as i64) - (x.denom().bits() as i64);
    let two = Rational::from_integer(2.into());
    let pow = |k: i64| -> Rational {
        if k >= 0 {
            Rational::from_integer(BigInt::one() << k as u32)
        } else {
            Rational::new(BigInt::one(), BigInt::one() << (-k) as u32)
        }
    };
    let mut y = x / pow(k);
    while y >= two {
        y /= &two;
        k += 1;
    }
    while y < Rational::one() {
        y *= &two;
        k -= 1;
    }
    let z = (&y - Rational::one()) / (&y + Rational::one());
    let frac = two_atanh(&z, 60);
    Ok(ln2().scale(&Rational::from_integer(k.into())).add(&frac).rounded(GRID_BITS))
}

/// Certified upper bound on `e^y` for `y >= 0`: `S_m / (1 - t)` where `S_m`
/// is the Taylor sum to degree `m` and `t = y^{m+1}/(m+1)! < 1`.
pub fn exp_upper(y: &Rational) -> Result<Rational> {
    if y.is_negative() {
        return Err(SpectraError::Domain("exp_upper expects y >= 0".into()));
    }
    let y = round_up(y, GRID_BITS);
    let stop = Rational::new(1.into(), BigInt::from(1u64 << 40));
    let mut sum = Rational::one();
    let mut term = Rational::one();
    let mut m = 0usize;
    loop {
        let next = &term * &y / Rational::from_integer(BigInt::from(m + 1));
        // next is y^{m+1}/(m+1)!, the remainder factor
        if next < stop && next < Rational::one() {
            return Ok(round_up(&(sum / (Rational::one() - next)), GRID_BITS));
        }
        sum += &next;
        term = next;
        m += 1;
        if m > 10_000 {
            return Err(SpectraError::Domain("exp argument too large".into()));
        }
    }
}

/// Certified lower bound on `e^{-y}` for `y >= 0`.
pub fn exp_neg_lower(y: &Rational) -> Result<Rational> {
    Ok(round_down(&exp_upper(y)?.recip(), GRID_BITS))
}

/// Certified lower bound on `e^y` for `y >= 0` (the Taylor partial sum).
pub fn exp_lower(y: &Rational) -> Result<Rational> {
    if y.is_negative() {
        return Err(SpectraError::Domain("exp_lower expects y >= 0".into()));
    }
    let y = round_down(y, GRID_BITS);
    let mut sum = Rational::one();
    let mut term = Rational::one();
    for m in 1..=200 {
        term = &term * &y / Rational::from_integer(BigInt::from(m));
        sum += &term;
    }
    Ok(round_down(&sum, GRID_BITS))
}
