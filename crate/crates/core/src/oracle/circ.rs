use serde::Serialize;

use crate::error::{Error, Result};
use crate::homext::HomExt;
use crate::quiver::DimensionVector;

use super::rep::random_rep;
use super::subreps::{count_subreps_over, DEFAULT_BUDGET};
use super::{derive_seed, CountEvidence, CountReason, SubrepCount};

/// Sampling plan for `alpha o beta`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountPolicy {
    pub primes: Vec<u64>,
    pub samples_per_prime: usize,
    /// Counts are taken over `F_{p^k}` for every `k` up to this degree.
    pub extension_degree: usize,
    pub budget: u64,
    pub seed: u64,
}

impl CountPolicy {
    pub fn with_seed(seed: u64) -> Self {
        CountPolicy {
            seed,
            ..Self::default()
        }
    }
}

impl Default for CountPolicy {
    fn default() -> Self {
        CountPolicy {
            primes: vec![251, 257],
            samples_per_prime: 3,
            extension_degree: 2,
            budget: DEFAULT_BUDGET,
            seed: 0,
        }
    }
}

/// Number of closed points of degree `<= counts.len()` from point counts
/// over `F_{p^k}`, `k = 1, 2, ...` (Moebius inversion; only degrees up to 3).
fn points_up_to_degree(counts: &[u64]) -> u64 {
    let n = |k: usize| counts[k - 1] as i64;
    let exact = |d: usize| -> i64 {
        match d {
            1 => n(1),
            2 => n(2) - n(1),
            3 => n(3) - n(1),
            _ => unreachable!("degree bounded by the field module"),
        }
    };
    (1..=counts.len()).map(exact).sum::<i64>().max(0) as u64
}

/// The number of `alpha`-dimensional subrepresentations of a general
/// representation of dimension `alpha + beta` when finite, else 0.
///
/// Nonzero generic ext means the count is 0; vanishing ext with nonzero
/// Euler form means a positive-dimensional family (0, flagged infinite).
/// Otherwise random representations are counted over every prime and seed of
/// the policy and the answer is accepted only if all samples agree.
pub fn alpha_circ_beta(
    homext: &HomExt<'_>,
    alpha: &DimensionVector,
    beta: &DimensionVector,
    policy: &CountPolicy,
) -> Result<SubrepCount> {
    let q = homext.quiver();
    let result = |count, infinite, reason, evidence| SubrepCount {
        alpha: alpha.clone(),
        beta: beta.clone(),
        count,
        infinite,
        reason,
        evidence,
    };
    if homext.ext_recursive(alpha, beta)? != 0 {
        return Ok(result(0, false, CountReason::ExtNonzero, vec![]));
    }
    if q.euler_form(alpha, beta)? != 0 {
        return Ok(result(0, true, CountReason::Infinite, vec![]));
    }
    if policy.primes.len() < 2 || policy.samples_per_prime < 3 {
        return Err(Error::Budget(
            "alpha o beta needs at least 2 primes and 3 samples per prime".into(),
        ));
    }
    let total = alpha.add(beta);
    let mut evidence = Vec::new();
    for &p in &policy.primes {
        for t in 0..policy.samples_per_prime {
            let seed = derive_seed(policy.seed, &[0xc1c, p, t as u64]);
            let rep = random_rep(q, &total, p, seed)?;
            let counts = (1..=policy.extension_degree)
                .map(|k| count_subreps_over(q, &rep, alpha, k, policy.budget))
                .collect::<Result<Vec<_>>>()?;
            evidence.push(CountEvidence {
                prime: p,
                seed: Some(seed),
                estimate: points_up_to_degree(&counts),
                counts_by_degree: counts,
            });
        }
    }
    let first = evidence[0].estimate;
    if evidence.iter().any(|e| e.estimate != first) {
        return Err(Error::Inconclusive {
            what: format!("{alpha} o {beta}"),
            evidence,
        });
    }
    Ok(result(first, false, CountReason::Counted, evidence))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn moebius_point_counts() {
        // two conjugate points of degree 2
        assert_eq!(points_up_to_degree(&[0, 2]), 2);
        // one rational point and a conjugate pair
        assert_eq!(points_up_to_degree(&[1, 3]), 3);
        // a degree-3 orbit plus a rational point
        assert_eq!(points_up_to_degree(&[1, 1, 4]), 4);
        assert_eq!(points_up_to_degree(&[1]), 1);
    }
}
