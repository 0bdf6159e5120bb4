//! Finite and cofinite sets of primes.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

/// A set of primes that is either finite or cofinite.
///
/// `listed` holds the members of a finite set and the non-members of a
/// cofinite one; `Cofinite` with an empty list is the set of all primes.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum PrimeSet {
    Finite(BTreeSet<u64>),
    Cofinite(BTreeSet<u64>),
}

impl PrimeSet {
    pub fn none() -> Self {
        PrimeSet::Finite(BTreeSet::new())
    }

    pub fn all() -> Self {
        PrimeSet::Cofinite(BTreeSet::new())
    }

    pub fn finite<I: IntoIterator<Item = u64>>(primes: I) -> Self {
        PrimeSet::Finite(Self::checked(primes))
    }

    pub fn all_except<I: IntoIterator<Item = u64>>(primes: I) -> Self {
        PrimeSet::Cofinite(Self::checked(primes))
    }

    fn checked<I: IntoIterator<Item = u64>>(primes: I) -> BTreeSet<u64> {
        primes
            .into_iter()
            .inspect(|&p| assert!(is_prime(p), "{p} is not prime"))
            .collect()
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, PrimeSet::Finite(_))
    }

    pub fn listed(&self) -> &BTreeSet<u64> {
        match self {
            PrimeSet::Finite(s) | PrimeSet::Cofinite(s) => s,
        }
    }

    pub fn contains(&self, p: u64) -> bool {
        match self {
            PrimeSet::Finite(s) => s.contains(&p),
            PrimeSet::Cofinite(s) => is_prime(p) && !s.contains(&p),
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, PrimeSet::Finite(s) if s.is_empty())
    }

    pub fn is_all(&self) -> bool {
        matches!(self, PrimeSet::Cofinite(s) if s.is_empty())
    }

    pub fn complement(&self) -> Self {
        match self {
            PrimeSet::Finite(s) => PrimeSet::Cofinite(s.clone()),
            PrimeSet::Cofinite(s) => PrimeSet::Finite(s.clone()),
        }
    }

    pub fn intersect(&self, other: &Self) -> Self {
        use PrimeSet::*;
        match (self, other) {
            (Finite(a), Finite(b)) => Finite(a.intersection(b).copied().collect()),
            (Finite(a), Cofinite(b)) | (Cofinite(b), Finite(a)) => Finite(a.difference(b).copied().collect()),
            (Cofinite(a), Cofinite(b)) => Cofinite(a.union(b).copied().collect()),
        }
    }

    pub fn union(&self, other: &Self) -> Self {
        self.complement().intersect(&other.complement()).complement()
    }
}

impl fmt::Display for PrimeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |s: &BTreeSet<u64>| s.iter().map(u64::to_string).collect::<Vec<_>>().join(", ");
        match self {
            PrimeSet::Finite(s) => write!(f, "{{{}}}", list(s)),
            PrimeSet::Cofinite(s) if s.is_empty() => write!(f, "all primes"),
            PrimeSet::Cofinite(s) => write!(f, "all primes except {{{}}}", list(s)),
        }
    }
}

#[derive(Serialize)]
struct PrimeSetJson<'a> {
    kind: &'static str,
    listed: &'a BTreeSet<u64>,
}

impl Serialize for PrimeSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let kind = if self.is_finite() { "finite" } else { "cofinite" };
        PrimeSetJson { kind, listed: self.listed() }.serialize(s)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime divisors of `n > 0`, by trial division.
pub fn prime_divisors(n: &BigUint) -> BTreeSet<u64> {
    let mut out = BTreeSet::new();
    if n.is_zero() {
        return out;
    }
    let mut n = n.clone();
    let mut d = 2u64;
    while !n.is_one() {
        let dd = BigUint::from(d);
        if &dd * &dd > n {
            out.insert(n.to_u64().expect("remaining prime factor fits in u64"));
            break;
        }
        if n.is_multiple_of(&dd) {
            out.insert(d);
            while n.is_multiple_of(&dd) {
                n /= &dd;
            }
        }
        d += 1;
    }
    out
}
