//! Ordered and integer-indexed decompositions of a dimension vector, and the
//! pairing of a weight with the one-parameter subgroup a decomposition encodes.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quiver::{DimensionVector, Quiver, Weight};

/// A sequence `(beta_1, ..., beta_s)` of nonzero dimension vectors.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct OrderedDecomposition(Vec<DimensionVector>);

impl OrderedDecomposition {
    /// Checks that the parts are nonzero, of equal length, and that there is at least one.
    pub fn new(parts: Vec<DimensionVector>) -> Result<Self> {
        let Some(first) = parts.first() else {
            return Err(Error::InvalidDecomposition("no parts".into()));
        };
        let n = first.len();
        for p in &parts {
            if p.len() != n {
                return Err(Error::MismatchedQuiver {
                    expected: n,
                    got: p.len(),
                });
            }
            if p.is_zero() {
                return Err(Error::InvalidDecomposition("zero part".into()));
            }
        }
        Ok(OrderedDecomposition(parts))
    }

    /// Like [`OrderedDecomposition::new`] and additionally requires the parts to sum to `beta`.
    pub fn of(beta: &DimensionVector, parts: Vec<DimensionVector>) -> Result<Self> {
        let d = Self::new(parts)?;
        if &d.total() != beta {
            return Err(Error::InvalidDecomposition(format!(
                "parts sum to {}, expected {beta}",
                d.total()
            )));
        }
        Ok(d)
    }

    pub fn parts(&self) -> &[DimensionVector] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> DimensionVector {
        let n = self.0[0].len();
        self.0
            .iter()
            .fold(DimensionVector::zero(n), |acc, p| acc.add(p))
    }

    /// The parts as a sorted multiset.
    pub fn sorted_parts(&self) -> Vec<DimensionVector> {
        let mut v = self.0.clone();
        v.sort();
        v
    }
}

impl fmt::Display for OrderedDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" +~ ")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str(")")
    }
}

/// Finitely supported family of dimension vectors indexed by integers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZDecomposition {
    parts: BTreeMap<i64, DimensionVector>,
}

impl ZDecomposition {
    /// Nonzero parts keyed by weight index.
    pub fn parts(&self) -> &BTreeMap<i64, DimensionVector> {
        &self.parts
    }

    pub fn get(&self, i: i64) -> Option<&DimensionVector> {
        self.parts.get(&i)
    }

    /// The ordered decomposition read off by decreasing index.
    pub fn to_ordered(&self) -> Result<OrderedDecomposition> {
        OrderedDecomposition::new(self.parts.values().rev().cloned().collect())
    }
}

/// Places `beta_k` at index `s + 1 - k`: the first part carries the highest weight.
pub fn z_from_ordered(d: &OrderedDecomposition) -> ZDecomposition {
    let s = d.len() as i64;
    ZDecomposition {
        parts: d
            .parts()
            .iter()
            .enumerate()
            .map(|(k, p)| (s - k as i64, p.clone()))
            .collect(),
    }
}

/// `sum_k (s + 1 - k) sigma(beta_k)`.
///
/// This is the weight of the one-parameter subgroup of `d` acting on the fiber
/// of `L(n, sigma)` over the origin; the twist `n` does not enter.
pub fn mu(q: &Quiver, _n: i64, sigma: &Weight, d: &OrderedDecomposition) -> Result<i64> {
    q.check_len(sigma.len())?;
    let s = d.len() as i64;
    d.parts()
        .iter()
        .enumerate()
        .map(|(k, p)| {
            q.check_len(p.len())?;
            Ok((s - k as i64) * sigma.apply(p))
        })
        .sum()
}
