//! Arithmetic in the cyclic vertex groups `Z` and `Z/n`.
//!
//! Exponents are `i64`. For `Z/n` they are kept as residues in `0..n`, and a
//! syllable never carries the residue `0`.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VertexGroup {
    /// `Z`
    Infinite,
    /// `Z/n` with `n ≥ 2`.
    Finite(u64),
}

/// Order of a group element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Order {
    Finite(u64),
    Infinite,
}

impl VertexGroup {
    pub fn finite(n: u64) -> Result<Self> {
        if n < 2 {
            return Err(Error::TrivialVertexGroup(n));
        }
        Ok(VertexGroup::Finite(n))
    }

    pub fn is_finite(self) -> bool {
        matches!(self, VertexGroup::Finite(_))
    }

    pub fn has_two_torsion(self) -> bool {
        matches!(self, VertexGroup::Finite(n) if n % 2 == 0)
    }

    /// Canonical representative of `exp`, or `None` for the identity.
    pub fn normalize(self, exp: i64) -> Option<i64> {
        let e = match self {
            VertexGroup::Infinite => exp,
            VertexGroup::Finite(n) => exp.rem_euclid(n as i64),
        };
        (e != 0).then_some(e)
    }

    /// Group product `a · b`; `None` when it is the identity.
    pub fn compose(self, a: i64, b: i64) -> Option<i64> {
        let sum = match self {
            VertexGroup::Infinite => a
                .checked_add(b)
                .unwrap_or_else(|| panic!("exponent overflow composing {a} and {b}")),
            VertexGroup::Finite(n) => (a.rem_euclid(n as i64) + b.rem_euclid(n as i64)) % n as i64,
        };
        self.normalize(sum)
    }

    pub fn inverse(self, a: i64) -> i64 {
        match self {
            VertexGroup::Infinite => a
                .checked_neg()
                .unwrap_or_else(|| panic!("exponent overflow negating {a}")),
            VertexGroup::Finite(n) => (-a).rem_euclid(n as i64),
        }
    }

    /// `a^k`, or `None` for the identity.
    pub fn pow(self, a: i64, k: i64) -> Option<i64> {
        match self {
            VertexGroup::Infinite => self.normalize(
                a.checked_mul(k)
                    .unwrap_or_else(|| panic!("exponent overflow computing {a}·{k}")),
            ),
            VertexGroup::Finite(n) => {
                let n = n as i128;
                self.normalize(((a as i128 * k as i128).rem_euclid(n)) as i64)
            }
        }
    }

    pub fn order(self, a: i64) -> Result<Order> {
        let a = self.normalize(a).ok_or(Error::IdentityHasNoOrder)?;
        Ok(match self {
            VertexGroup::Infinite => Order::Infinite,
            VertexGroup::Finite(n) => Order::Finite(n / gcd(n, a as u64)),
        })
    }
}

impl fmt::Display for VertexGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexGroup::Infinite => write!(f, "Z"),
            VertexGroup::Finite(n) => write!(f, "Z/{n}"),
        }
    }
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}
