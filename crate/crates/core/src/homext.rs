//! Generic hom and ext between dimension vectors, generic subdimensions,
//! Schur roots and the canonical decomposition.
//!
//! The deterministic route is Schofield's recursion:
//!
//! * `alpha` is a generic subdimension of `beta` iff `<alpha', beta - alpha> >= 0`
//!   for every generic subdimension `alpha'` of `alpha`;
//! * `ext(alpha, beta) = max { -<alpha', beta> : alpha' generic subdimension of alpha }`;
//! * `beta` is a Schur root iff `<alpha, beta> - <beta, alpha> > 0` for every
//!   generic subdimension `0 != alpha != beta`.
//!
//! The sampled route draws random representations over prime fields and
//! computes `dim Hom` exactly; it is the oracle the recursion is tested against.

use std::collections::HashMap;
use std::sync::Mutex;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::oracle::{derive_seed, hom_dim, random_rep};
use crate::quiver::{DimensionVector, Quiver};

/// Random sampling plan for generic hom.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SamplingPolicy {
    pub trials: usize,
    pub primes: Vec<u64>,
    pub seed: u64,
}

impl Default for SamplingPolicy {
    fn default() -> Self {
        SamplingPolicy {
            trials: 8,
            primes: vec![32003, 65537],
            seed: 0,
        }
    }
}

impl SamplingPolicy {
    pub fn with_seed(seed: u64) -> Self {
        SamplingPolicy {
            seed,
            ..Self::default()
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Recursive,
    Sampled,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomSample {
    pub prime: u64,
    pub trial: usize,
    pub hom: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GenericHomExt {
    pub alpha: DimensionVector,
    pub beta: DimensionVector,
    pub hom: u64,
    pub ext: u64,
    pub method: Method,
    pub samples: Vec<HomSample>,
}

/// Memoizing engine for one quiver. Safe to share between threads.
pub struct HomExt<'q> {
    quiver: &'q Quiver,
    subdim: Mutex<HashMap<(DimensionVector, DimensionVector), bool>>,
    ext: Mutex<HashMap<(DimensionVector, DimensionVector), u64>>,
    schur: Mutex<HashMap<DimensionVector, bool>>,
}

impl<'q> HomExt<'q> {
    pub fn new(quiver: &'q Quiver) -> Self {
        HomExt {
            quiver,
            subdim: Mutex::default(),
            ext: Mutex::default(),
            schur: Mutex::default(),
        }
    }

    pub fn quiver(&self) -> &'q Quiver {
        self.quiver
    }

    fn check(&self, v: &DimensionVector) -> Result<()> {
        self.quiver.check_len(v.len())
    }

    fn euler(&self, a: &DimensionVector, b: &DimensionVector) -> i64 {
        self.quiver.euler_form(a, b).expect("lengths checked")
    }

    /// Whether a general representation of dimension `beta` has a
    /// subrepresentation of dimension `alpha`.
    pub fn is_generic_subdim(&self, alpha: &DimensionVector, beta: &DimensionVector) -> Result<bool> {
        self.check(alpha)?;
        self.check(beta)?;
        if !alpha.le(beta) {
            return Err(Error::NotBelow {
                alpha: alpha.to_string(),
                beta: beta.to_string(),
            });
        }
        Ok(self.subdim_rec(alpha, beta))
    }

    fn subdim_rec(&self, alpha: &DimensionVector, beta: &DimensionVector) -> bool {
        if alpha.is_zero() || alpha == beta {
            return true;
        }
        let key = (alpha.clone(), beta.clone());
        if let Some(&v) = self.subdim.lock().unwrap().get(&key) {
            return v;
        }
        let rest = beta.checked_sub(alpha).expect("alpha <= beta");
        let ans = alpha
            .sub_vectors()
            .all(|a2| !self.subdim_rec(&a2, alpha) || self.euler(&a2, &rest) >= 0);
        self.subdim.lock().unwrap().insert(key, ans);
        ans
    }

    /// Generic subdimensions of `beta`, including `0` and `beta`, in lexicographic order.
    pub fn generic_subdims(&self, beta: &DimensionVector) -> Result<Vec<DimensionVector>> {
        self.check(beta)?;
        Ok(beta
            .sub_vectors()
            .filter(|a| self.subdim_rec(a, beta))
            .collect())
    }

    /// Generic ext by the recursion.
    pub fn ext_recursive(&self, alpha: &DimensionVector, beta: &DimensionVector) -> Result<u64> {
        self.check(alpha)?;
        self.check(beta)?;
        let key = (alpha.clone(), beta.clone());
        if let Some(&v) = self.ext.lock().unwrap().get(&key) {
            return Ok(v);
        }
        let ans = alpha
            .sub_vectors()
            .filter(|a2| self.subdim_rec(a2, alpha))
            .map(|a2| -self.euler(&a2, beta))
            .max()
            .unwrap_or(0)
            .max(0) as u64;
        self.ext.lock().unwrap().insert(key, ans);
        Ok(ans)
    }

    /// Generic hom and ext by the recursion.
    pub fn recursive(&self, alpha: &DimensionVector, beta: &DimensionVector) -> Result<GenericHomExt> {
        let ext = self.ext_recursive(alpha, beta)?;
        let hom = ext as i64 + self.euler(alpha, beta);
        debug_assert!(hom >= 0);
        Ok(GenericHomExt {
            alpha: alpha.clone(),
            beta: beta.clone(),
            hom: hom as u64,
            ext,
            method: Method::Recursive,
            samples: vec![],
        })
    }

    /// Minimum of `dim Hom(R, S)` over sampled pairs of random representations.
    ///
    /// This is an upper bound for the generic value. Sample `(prime, trial)`
    /// depends only on the policy seed, the prime and the trial index, so
    /// raising `trials` only adds samples.
    pub fn generic_hom(
        &self,
        alpha: &DimensionVector,
        beta: &DimensionVector,
        policy: &SamplingPolicy,
    ) -> Result<GenericHomExt> {
        self.check(alpha)?;
        self.check(beta)?;
        let mut samples = Vec::with_capacity(policy.trials * policy.primes.len());
        for &p in &policy.primes {
            for t in 0..policy.trials {
                let r = random_rep(self.quiver, alpha, p, derive_seed(policy.seed, &[0x40a, p, t as u64, 0]))?;
                let s = random_rep(self.quiver, beta, p, derive_seed(policy.seed, &[0x40a, p, t as u64, 1]))?;
                samples.push(HomSample {
                    prime: p,
                    trial: t,
                    hom: hom_dim(self.quiver, &r, &s)?,
                });
            }
        }
        let Some(hom) = samples.iter().map(|s| s.hom).min() else {
            return Err(Error::Budget("sampling policy has no samples".into()));
        };
        let euler = self.euler(alpha, beta);
        if (hom as i64) < euler {
            return Err(Error::NegativeExt {
                alpha: alpha.to_string(),
                beta: beta.to_string(),
                hom,
                euler,
            });
        }
        Ok(GenericHomExt {
            alpha: alpha.clone(),
            beta: beta.clone(),
            hom,
            ext: (hom as i64 - euler) as u64,
            method: Method::Sampled,
            samples,
        })
    }

    /// Sampled generic ext, `hom - <alpha, beta>`.
    pub fn generic_ext(
        &self,
        alpha: &DimensionVector,
        beta: &DimensionVector,
        policy: &SamplingPolicy,
    ) -> Result<GenericHomExt> {
        self.generic_hom(alpha, beta, policy)
    }

    /// Schur roots by the stability criterion; the zero vector is rejected.
    pub fn is_schur_root(&self, beta: &DimensionVector) -> Result<bool> {
        self.check(beta)?;
        if beta.is_zero() {
            return Err(Error::ZeroVector);
        }
        if let Some(&v) = self.schur.lock().unwrap().get(beta) {
            return Ok(v);
        }
        let ans = beta.sub_vectors().all(|a| {
            a.is_zero()
                || &a == beta
                || !self.subdim_rec(&a, beta)
                || self.euler(&a, beta) - self.euler(beta, &a) > 0
        });
        self.schur.lock().unwrap().insert(beta.clone(), ans);
        Ok(ans)
    }

    /// Positively proportional to a Schur root.
    pub fn is_rational_schur_root(&self, beta: &DimensionVector) -> Result<bool> {
        self.check(beta)?;
        let prim = beta.primitive().ok_or(Error::ZeroVector)?;
        self.is_schur_root(&prim)
    }

    fn ext_free(&self, a: &DimensionVector, b: &DimensionVector) -> bool {
        self.ext_recursive(a, b).expect("checked") == 0
            && self.ext_recursive(b, a).expect("checked") == 0
    }

    /// Canonical decomposition: the multiset of Schur roots summing to `beta`
    /// with vanishing generic ext in both directions between any two members
    /// (repeated members included). Parts are returned in decreasing
    /// lexicographic order.
    pub fn canonical_decomposition(&self, beta: &DimensionVector) -> Result<Vec<DimensionVector>> {
        let mut found = self.canonical_decomposition_candidates(beta, 1)?;
        found.pop().ok_or_else(|| {
            Error::InvalidDecomposition(format!("no canonical decomposition found for {beta}"))
        })
    }

    /// Up to `limit` multisets satisfying the defining conditions of the
    /// canonical decomposition. There is exactly one; this exposes the search
    /// so that uniqueness can be checked.
    pub fn canonical_decomposition_candidates(
        &self,
        beta: &DimensionVector,
        limit: usize,
    ) -> Result<Vec<Vec<DimensionVector>>> {
        self.check(beta)?;
        if beta.is_zero() {
            return Err(Error::ZeroVector);
        }
        let mut roots: Vec<DimensionVector> = beta
            .sub_vectors()
            .filter(|g| !g.is_zero())
            .filter(|g| self.is_schur_root(g).expect("checked"))
            .collect();
        roots.reverse();
        let mut out = Vec::new();
        let mut chosen = Vec::new();
        self.search(&roots, 0, beta.clone(), &mut chosen, &mut out, limit);
        Ok(out)
    }

    fn search(
        &self,
        roots: &[DimensionVector],
        start: usize,
        remaining: DimensionVector,
        chosen: &mut Vec<DimensionVector>,
        out: &mut Vec<Vec<DimensionVector>>,
        limit: usize,
    ) {
        if out.len() >= limit {
            return;
        }
        if remaining.is_zero() {
            out.push(chosen.clone());
            return;
        }
        for (i, g) in roots.iter().enumerate().skip(start) {
            let Some(rest) = remaining.checked_sub(g) else {
                continue;
            };
            if !chosen.iter().all(|c| self.ext_free(c, g)) {
                continue;
            }
            chosen.push(g.clone());
            self.search(roots, i, rest, chosen, out, limit);
            chosen.pop();
            if out.len() >= limit {
                return;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dv(v: &[u32]) -> DimensionVector {
        DimensionVector::new(v.to_vec())
    }

    #[test]
    fn generic_subdim_examples() {
        let a2 = Quiver::linear(2);
        let h = HomExt::new(&a2);
        assert!(h.is_generic_subdim(&dv(&[0, 1]), &dv(&[1, 1])).unwrap());
        assert!(!h.is_generic_subdim(&dv(&[1, 0]), &dv(&[1, 1])).unwrap());
        assert!(h.is_generic_subdim(&dv(&[0, 0]), &dv(&[1, 1])).unwrap());
        assert!(h.is_generic_subdim(&dv(&[1, 1]), &dv(&[1, 1])).unwrap());
        assert!(matches!(
            h.is_generic_subdim(&dv(&[2, 0]), &dv(&[1, 1])),
            Err(Error::NotBelow { .. })
        ));
        // kernel of a general map C^2 -> C
        assert!(h.is_generic_subdim(&dv(&[1, 0]), &dv(&[2, 1])).unwrap());
    }

    #[test]
    fn recursive_ext_examples() {
        let a2 = Quiver::linear(2);
        let h = HomExt::new(&a2);
        assert_eq!(h.ext_recursive(&dv(&[1, 0]), &dv(&[0, 1])).unwrap(), 1);
        assert_eq!(h.ext_recursive(&dv(&[0, 1]), &dv(&[1, 0])).unwrap(), 0);
        let k2 = Quiver::kronecker(2);
        let h = HomExt::new(&k2);
        assert_eq!(h.ext_recursive(&dv(&[0, 2]), &dv(&[2, 0])).unwrap(), 0);
        let r = h.recursive(&dv(&[1, 1]), &dv(&[1, 1])).unwrap();
        assert_eq!((r.hom, r.ext), (0, 0));
    }

    #[test]
    fn sampled_hom_examples() {
        let a2 = Quiver::linear(2);
        let h = HomExt::new(&a2);
        let pol = SamplingPolicy::with_seed(3);
        assert_eq!(h.generic_hom(&dv(&[1, 0]), &dv(&[0, 1]), &pol).unwrap().hom, 0);
        assert_eq!(h.generic_hom(&dv(&[0, 1]), &dv(&[1, 0]), &pol).unwrap().hom, 0);
        let e = h.generic_ext(&dv(&[1, 0]), &dv(&[0, 1]), &pol).unwrap();
        assert_eq!(e.ext, 1);
        assert_eq!(e.samples.len(), 16);
        let k2 = Quiver::kronecker(2);
        let h = HomExt::new(&k2);
        assert_eq!(h.generic_hom(&dv(&[1, 1]), &dv(&[1, 1]), &pol).unwrap().hom, 0);
        assert_eq!(h.generic_ext(&dv(&[0, 2]), &dv(&[2, 0]), &pol).unwrap().ext, 0);
    }

    #[test]
    fn schur_examples() {
        let a2 = Quiver::linear(2);
        let h = HomExt::new(&a2);
        assert!(h.is_schur_root(&dv(&[1, 1])).unwrap());
        assert!(!h.is_schur_root(&dv(&[2, 1])).unwrap());
        assert!(h.is_schur_root(&dv(&[1, 0])).unwrap());
        assert!(!h.is_rational_schur_root(&dv(&[2, 1])).unwrap());
        assert!(matches!(h.is_schur_root(&dv(&[0, 0])), Err(Error::ZeroVector)));
        let k2 = Quiver::kronecker(2);
        let h = HomExt::new(&k2);
        assert!(!h.is_schur_root(&dv(&[2, 2])).unwrap());
        assert!(h.is_rational_schur_root(&dv(&[2, 2])).unwrap());
        assert!(h.is_schur_root(&dv(&[1, 2])).unwrap());
    }

    #[test]
    fn canonical_decomposition_examples() {
        let a2 = Quiver::linear(2);
        let h = HomExt::new(&a2);
        assert_eq!(
            h.canonical_decomposition(&dv(&[2, 1])).unwrap(),
            vec![dv(&[1, 1]), dv(&[1, 0])]
        );
        let k2 = Quiver::kronecker(2);
        let h = HomExt::new(&k2);
        assert_eq!(
            h.canonical_decomposition(&dv(&[2, 2])).unwrap(),
            vec![dv(&[1, 1]), dv(&[1, 1])]
        );
        assert_eq!(h.canonical_decomposition(&dv(&[0, 1])).unwrap(), vec![dv(&[0, 1])]);
        // K_3: (2,2) is an imaginary non-isotropic root, hence Schur
        let k3 = Quiver::kronecker(3);
        let h = HomExt::new(&k3);
        assert_eq!(h.canonical_decomposition(&dv(&[2, 2])).unwrap(), vec![dv(&[2, 2])]);
    }
}
