//! Exact counts: factorials, derangements and conjugacy-class sizes.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::partition::Partition;
use crate::report::bigint_string;

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// `d_n = Σ_i (-1)^i C(n,i) (n-i)!`.
pub fn derangement_count(n: usize) -> BigInt {
    (0..=n)
        .map(|i| {
            let term = binomial(n, i) * factorial(n - i);
            if i % 2 == 0 {
                term
            } else {
                -term
            }
        })
        .sum()
}

/// Even and odd derangement counts `(e_n, o_n)` from the paired recurrences
/// `o_n = (n-1)(e_{n-1} + e_{n-2})`, `e_n = (n-1)(o_{n-1} + o_{n-2})`, seeded
/// with the enumerated values at `n = 1, 2`.
pub fn even_odd_derangements(n: usize) -> (BigInt, BigInt) {
    match n {
        0 => (BigInt::one(), BigInt::zero()),
        1 => (BigInt::zero(), BigInt::zero()),
        2 => (BigInt::zero(), BigInt::one()),
        _ => {
            let (mut e2, mut o2) = (BigInt::zero(), BigInt::zero()); // n = 1
            let (mut e1, mut o1) = (BigInt::zero(), BigInt::one()); // n = 2
            for m in 3..=n {
                let e = (m - 1) * (&o1 + &o2);
                let o = (m - 1) * (&e1 + &e2);
                e2 = std::mem::replace(&mut e1, e);
                o2 = std::mem::replace(&mut o1, o);
            }
            (e1, o1)
        }
    }
}

/// `e_n - o_n`.
pub fn signed_derangement_difference(n: usize) -> BigInt {
    let (e, o) = even_odd_derangements(n);
    e - o
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DerangementStats {
    pub n: usize,
    #[serde(with = "bigint_string")]
    pub d: BigInt,
    #[serde(with = "bigint_string")]
    pub e_minus_o: BigInt,
}

impl DerangementStats {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            d: derangement_count(n),
            e_minus_o: signed_derangement_difference(n),
        }
    }

    /// `e_n - o_n == (-1)^(n-1)(n-1)`, for `n >= 1`.
    pub fn matches_closed_form(&self) -> bool {
        if self.n == 0 {
            return false;
        }
        let magnitude = BigInt::from(self.n - 1);
        let expected = if self.n % 2 == 1 {
            magnitude
        } else {
            -magnitude
        };
        !self.d.is_negative() && self.e_minus_o == expected
    }
}

/// Centralizer order `z_β = Π_i i^{m_i} m_i!`.
pub fn centralizer_order(beta: &Partition) -> BigInt {
    let mut z = BigInt::one();
    let parts = beta.parts();
    let mut idx = 0;
    while idx < parts.len() {
        let part = parts[idx];
        let m = parts[idx..].iter().take_while(|&&q| q == part).count();
        z *= BigInt::from(part).pow(m as u32) * factorial(m);
        idx += m;
    }
    z
}

/// `n! / z_β`, the number of permutations with cycle type `β`.
pub fn conjugacy_class_size(beta: &Partition) -> BigInt {
    factorial(beta.n()) / centralizer_order(beta)
}
