//! The pro-nilpotent pseudonorm `|g| = 2^(-r(g))`, bounded by a catalog.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Limits, Result};
use crate::freegroup::{Alphabet, ReducedWord};
use crate::oracle::{enum_homs, Catalog, Homomorphism};

/// `0` or `2^(-r)` with `r ≥ 1`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize)]
pub enum DyadicNorm {
    Zero,
    Power(u32),
}

impl DyadicNorm {
    pub fn value(self) -> f64 {
        match self {
            DyadicNorm::Zero => 0.0,
            DyadicNorm::Power(r) => 0.5f64.powi(r as i32),
        }
    }
}

impl fmt::Display for DyadicNorm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DyadicNorm::Zero => write!(f, "0"),
            DyadicNorm::Power(r) => write!(f, "2^-{r}"),
        }
    }
}

/// A norm value and the homomorphism realizing it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pseudonorm {
    pub norm: DyadicNorm,
    /// Catalog index of the target group and the homomorphism.
    pub witness: Option<(usize, Homomorphism)>,
}

/// Smallest image order of a catalog homomorphism not killing `g`, as
/// `2^(-order)`; `0` if every catalog homomorphism kills `g`. This is a lower
/// bound for the pseudonorm over all finite nilpotent groups.
pub fn pseudonorm(alphabet: &Alphabet, g: &ReducedWord, catalog: &Catalog, limits: &Limits) -> Result<Pseudonorm> {
    if catalog.is_empty() {
        return Err(Error::Precondition("empty catalog".into()));
    }
    alphabet.check(g.letters())?;
    let mut best: Option<(usize, usize, Homomorphism)> = None;
    for (gi, group) in catalog.groups.iter().enumerate() {
        if best.as_ref().is_some_and(|b| b.0 <= 2) {
            break;
        }
        for phi in enum_homs(alphabet, group, limits)? {
            if phi.apply(group, g.letters()) == group.identity() {
                continue;
            }
            let order = phi.image_order(group);
            if best.as_ref().is_none_or(|b| order < b.0) {
                best = Some((order, gi, phi));
            }
        }
    }
    Ok(match best {
        None => Pseudonorm { norm: DyadicNorm::Zero, witness: None },
        Some((order, gi, phi)) => Pseudonorm { norm: DyadicNorm::Power(order as u32), witness: Some((gi, phi)) },
    })
}

/// `d(g₁, g₂) = |g₁ g₂⁻¹|`.
pub fn distance(alphabet: &Alphabet, g1: &ReducedWord, g2: &ReducedWord, catalog: &Catalog, limits: &Limits) -> Result<Pseudonorm> {
    pseudonorm(alphabet, &g1.mul(&g2.inverse()), catalog, limits)
}
