//! Brute-force ground truth over finite fields: explicit representations,
//! subrepresentation counts, King semistability and semi-invariant weights.

mod circ;
mod rep;
mod semi_invariants;
mod subreps;

use serde::Serialize;

use crate::quiver::DimensionVector;

pub use circ::{alpha_circ_beta, CountPolicy};
pub use rep::{hom_dim, random_rep, FiniteFieldRep, RepProvenance};
pub use semi_invariants::{si_weights_by_degree, SiWeight, DEFAULT_MONOMIAL_BUDGET};
pub use subreps::{
    count_subreps, count_subreps_over, for_each_subspace, has_subrep_over, is_semistable,
    DEFAULT_BUDGET,
};

/// One sampled count: raw counts over `F_p, F_{p^2}, ...` for a single
/// representation, and the number of points of degree at most the largest
/// extension examined.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountEvidence {
    pub prime: u64,
    pub seed: Option<u64>,
    pub counts_by_degree: Vec<u64>,
    pub estimate: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CountReason {
    /// Raw count on one representation.
    RawSample,
    /// Generic ext is nonzero, so a general representation has no such subrepresentation.
    ExtNonzero,
    /// Generic ext vanishes but the Euler form does not: positive-dimensional family.
    Infinite,
    /// Stable count across all samples.
    Counted,
}

/// `alpha o beta` with the evidence behind it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubrepCount {
    pub alpha: DimensionVector,
    pub beta: DimensionVector,
    pub count: u64,
    pub infinite: bool,
    pub reason: CountReason,
    pub evidence: Vec<CountEvidence>,
}

/// SplitMix64 finalizer folded over `tags`; derives independent sample seeds
/// from a master seed.
pub fn derive_seed(master: u64, tags: &[u64]) -> u64 {
    let mut x = master;
    for &t in tags {
        x ^= t.wrapping_add(0x9e37_79b9_7f4a_7c15).wrapping_add(x << 6).wrapping_add(x >> 2);
        x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = x;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        x = z ^ (z >> 31);
    }
    x
}
