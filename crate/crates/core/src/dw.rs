//! Well-covering decompositions by rational Schur roots and their faces.
//!
//! An ordered decomposition `(beta_1, ..., beta_s)` is well covering when
//! `beta_i o beta_j = 1` for all `i < j`. The set `W_s(beta)` collects the
//! part multisets of such decompositions whose parts are rational Schur
//! roots; `theta` sends one to the face of `Sigma(Q, beta)` cut out by the
//! hyperplanes `sigma(beta_i) = 0`. [`verify_dw`] checks that `theta` is a
//! bijection from `W_s(beta)` onto the faces of codimension `s`.

use std::collections::{BTreeMap, HashMap};
use std::sync::Mutex;

use serde::Serialize;

use crate::cone::{build_sigma_hrep, to_i64, Face, HCone};
use crate::decomposition::OrderedDecomposition;
use crate::error::{Error, Result};
use crate::homext::HomExt;
use crate::linalg::{int_vec, rank};
use crate::oracle::{alpha_circ_beta, CountPolicy, SubrepCount};
use crate::quiver::DimensionVector;

pub const MAX_VERTICES: usize = 4;
pub const MAX_ENTRY: u32 = 4;
pub const DEFAULT_ENUMERATION_BUDGET: usize = 1_000_000;

/// All sequences of `s` nonzero dimension vectors summing to `beta`, in
/// lexicographic order.
pub fn enumerate_ordered_decompositions(
    beta: &DimensionVector,
    s: usize,
    budget: usize,
) -> Result<Vec<OrderedDecomposition>> {
    if s == 0 {
        return Err(Error::InvalidDecomposition("s must be at least 1".into()));
    }
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(s);
    compositions(beta, s, &mut cur, &mut out, budget)?;
    out.into_iter().map(OrderedDecomposition::new).collect()
}

fn compositions(
    rest: &DimensionVector,
    s: usize,
    cur: &mut Vec<DimensionVector>,
    out: &mut Vec<Vec<DimensionVector>>,
    budget: usize,
) -> Result<()> {
    if s == 1 {
        if !rest.is_zero() {
            if out.len() >= budget {
                return Err(Error::Budget(format!("more than {budget} ordered decompositions")));
            }
            cur.push(rest.clone());
            out.push(cur.clone());
            cur.pop();
        }
        return Ok(());
    }
    for part in rest.sub_vectors() {
        if part.is_zero() || &part == rest {
            continue;
        }
        let next = rest.checked_sub(&part).expect("sub-vector");
        cur.push(part);
        compositions(&next, s - 1, cur, out, budget)?;
        cur.pop();
    }
    Ok(())
}

/// `alpha o beta` with memoization, shared across a verification run.
pub struct Circ<'h, 'q> {
    homext: &'h HomExt<'q>,
    policy: CountPolicy,
    cache: Mutex<HashMap<(DimensionVector, DimensionVector), SubrepCount>>,
}

impl<'h, 'q> Circ<'h, 'q> {
    pub fn new(homext: &'h HomExt<'q>, policy: CountPolicy) -> Self {
        Circ {
            homext,
            policy,
            cache: Mutex::default(),
        }
    }

    pub fn homext(&self) -> &'h HomExt<'q> {
        self.homext
    }

    pub fn policy(&self) -> &CountPolicy {
        &self.policy
    }

    pub fn get(&self, alpha: &DimensionVector, beta: &DimensionVector) -> Result<SubrepCount> {
        let key = (alpha.clone(), beta.clone());
        if let Some(c) = self.cache.lock().unwrap().get(&key) {
            return Ok(c.clone());
        }
        let c = alpha_circ_beta(self.homext, alpha, beta, &self.policy)?;
        self.cache.lock().unwrap().insert(key, c.clone());
        Ok(c)
    }
}

/// Outcome of the well-covering test with the counts examined, in order.
/// Stops at the first pair whose count is not 1.
#[derive(Clone, Debug, Serialize)]
pub struct WellCoveringCheck {
    pub holds: bool,
    pub counts: Vec<SubrepCount>,
}

pub fn check_well_covering(circ: &Circ<'_, '_>, d: &OrderedDecomposition) -> Result<WellCoveringCheck> {
    let p = d.parts();
    let mut counts = Vec::new();
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            let c = circ.get(&p[i], &p[j])?;
            let ok = c.count == 1;
            counts.push(c);
            if !ok {
                return Ok(WellCoveringCheck { holds: false, counts });
            }
        }
    }
    Ok(WellCoveringCheck { holds: true, counts })
}

pub fn is_well_covering(circ: &Circ<'_, '_>, d: &OrderedDecomposition) -> Result<bool> {
    Ok(check_well_covering(circ, d)?.holds)
}

/// A multiset of parts, with a well-covering ordering when one is known.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecompositionSet {
    pub parts: Vec<DimensionVector>,
    pub certificate: Option<OrderedDecomposition>,
}

impl DecompositionSet {
    pub fn has_repeats(&self) -> bool {
        self.parts.windows(2).any(|w| w[0] == w[1])
    }

    pub fn is_linearly_independent(&self) -> bool {
        let rows: Vec<_> = self.parts.iter().map(|p| int_vec(&p.to_i64())).collect();
        let n = self.parts.first().map_or(0, |p| p.len());
        rank(&rows, n) == self.parts.len()
    }
}

/// A multiset of rational Schur roots summing to `beta` none of whose
/// orderings is well covering, with the failing count of each ordering.
#[derive(Clone, Debug, Serialize)]
pub struct Rejected {
    pub parts: Vec<DimensionVector>,
    pub failures: Vec<(OrderedDecomposition, SubrepCount)>,
}

/// `W_s(beta)` together with the rejected candidates.
#[derive(Clone, Debug, Serialize)]
pub struct Wcal {
    pub sets: Vec<DecompositionSet>,
    pub rejected: Vec<Rejected>,
}

pub fn wcal_s(circ: &Circ<'_, '_>, beta: &DimensionVector, s: usize, budget: usize) -> Result<Wcal> {
    let he = circ.homext();
    let mut groups: BTreeMap<Vec<DimensionVector>, Vec<OrderedDecomposition>> = BTreeMap::new();
    for d in enumerate_ordered_decompositions(beta, s, budget)? {
        let mut all_rational = true;
        for p in d.parts() {
            if !he.is_rational_schur_root(p)? {
                all_rational = false;
                break;
            }
        }
        if all_rational {
            groups.entry(d.sorted_parts()).or_default().push(d);
        }
    }
    let mut sets = Vec::new();
    let mut rejected = Vec::new();
    for (parts, orders) in groups {
        let mut certificate = None;
        let mut failures = Vec::new();
        let mut pending = None;
        for d in orders {
            match check_well_covering(circ, &d) {
                Ok(c) if c.holds => {
                    certificate = Some(d);
                    break;
                }
                Ok(c) => failures.push((d, c.counts.last().cloned().expect("s >= 2 here"))),
                Err(e @ Error::Inconclusive { .. }) => {
                    pending.get_or_insert(e);
                }
                Err(e) => return Err(e),
            }
        }
        match (certificate, pending) {
            (Some(c), _) => sets.push(DecompositionSet {
                parts,
                certificate: Some(c),
            }),
            (None, Some(e)) => return Err(e),
            (None, None) => rejected.push(Rejected { parts, failures }),
        }
    }
    Ok(Wcal { sets, rejected })
}

fn part_equalities(parts: &[DimensionVector]) -> Vec<crate::linalg::IntVec> {
    parts.iter().map(|p| int_vec(&p.to_i64())).collect()
}

/// The face of `sigma` on the hyperplanes of the parts, with whether the
/// intersection is exactly a face.
pub fn theta(parts: &[DimensionVector], sigma: &HCone) -> Result<(Face, bool)> {
    sigma.face_cut_by(&part_equalities(parts))
}

/// [`theta`] on the parts of a well-covering decomposition.
pub fn face_of_decomposition(
    circ: &Circ<'_, '_>,
    d: &OrderedDecomposition,
    sigma: &HCone,
) -> Result<Face> {
    if !is_well_covering(circ, d)? {
        return Err(Error::NotWellCovering(d.to_string()));
    }
    Ok(theta(d.parts(), sigma)?.0)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum Verdict {
    Holds,
    Fails { witness: String },
    Inconclusive { reason: String },
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    fn from_witnesses(w: Vec<String>) -> Self {
        if w.is_empty() {
            Verdict::Holds
        } else {
            Verdict::Fails {
                witness: w.join("; "),
            }
        }
    }
}

/// A face as it appears in reports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FaceSummary {
    pub codim: usize,
    pub dim: usize,
    pub active: Vec<usize>,
    pub labels: Vec<DimensionVector>,
    pub rays: Vec<Vec<i64>>,
}

impl From<&Face> for FaceSummary {
    fn from(f: &Face) -> Self {
        FaceSummary {
            codim: f.codim,
            dim: f.dim,
            active: f.active.clone(),
            labels: f.labels.clone(),
            rays: f.rays.iter().map(|r| to_i64(r)).collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SetImage {
    pub parts: Vec<DimensionVector>,
    pub certificate: Option<OrderedDecomposition>,
    pub face: FaceSummary,
    /// Index into the codimension-`s` faces, when the image is one of them.
    pub face_index: Option<usize>,
    /// The hyperplanes cut out exactly a face.
    pub exact: bool,
    pub linearly_independent: bool,
    pub distinct_parts: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct StepReport {
    pub s: usize,
    pub faces: Vec<FaceSummary>,
    pub sets: Vec<SetImage>,
    pub rejected: Vec<Rejected>,
    pub well_defined: Verdict,
    pub injective: Verdict,
    pub surjective: Verdict,
    pub linear_independence: Verdict,
    pub distinct_parts: Verdict,
}

impl StepReport {
    pub fn bijective(&self) -> bool {
        [
            &self.well_defined,
            &self.injective,
            &self.surjective,
            &self.linear_independence,
            &self.distinct_parts,
        ]
        .iter()
        .all(|v| v.holds())
    }

    fn inconclusive(s: usize, faces: Vec<FaceSummary>, reason: String) -> Self {
        let v = Verdict::Inconclusive { reason };
        StepReport {
            s,
            faces,
            sets: vec![],
            rejected: vec![],
            well_defined: v.clone(),
            injective: v.clone(),
            surjective: v.clone(),
            linear_independence: v.clone(),
            distinct_parts: v,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DwReport {
    pub beta: DimensionVector,
    pub s_max: usize,
    pub steps: Vec<StepReport>,
    /// Every `alpha o beta` computed along the way.
    pub evidence: Vec<SubrepCount>,
}

impl DwReport {
    pub fn bijective(&self) -> bool {
        self.steps.iter().all(StepReport::bijective)
    }

    pub fn any_failure(&self) -> bool {
        self.steps.iter().any(|s| {
            [&s.well_defined, &s.injective, &s.surjective, &s.linear_independence, &s.distinct_parts]
                .iter()
                .any(|v| matches!(v, Verdict::Fails { .. }))
        })
    }

    pub fn any_inconclusive(&self) -> bool {
        self.steps.iter().any(|s| matches!(s.well_defined, Verdict::Inconclusive { .. }))
    }
}

fn check_envelope(n: usize, beta: &DimensionVector) -> Result<()> {
    if n > MAX_VERTICES || beta.entries().iter().any(|&b| b > MAX_ENTRY) {
        return Err(Error::OutsideEnvelope(format!(
            "supported: at most {MAX_VERTICES} vertices and entries at most {MAX_ENTRY}, got {beta}"
        )));
    }
    Ok(())
}

/// Checks that `theta` maps `W_s(beta)` bijectively onto the faces of
/// ambient codimension `s` of `Sigma(Q, beta)` for `s = 1..=s_max`.
pub fn verify_dw(
    circ: &Circ<'_, '_>,
    beta: &DimensionVector,
    s_max: usize,
    budget: usize,
) -> Result<DwReport> {
    let he = circ.homext();
    let q = he.quiver();
    q.check_len(beta.len())?;
    check_envelope(q.num_vertices(), beta)?;
    let sigma = build_sigma_hrep(he, beta)?;
    let all_faces = sigma.faces_up_to_codim(s_max);
    let mut steps = Vec::new();
    for s in 1..=s_max {
        let faces: Vec<&Face> = all_faces.iter().filter(|f| f.codim == s).collect();
        let summaries: Vec<FaceSummary> = faces.iter().map(|f| FaceSummary::from(*f)).collect();
        let w = match wcal_s(circ, beta, s, budget) {
            Ok(w) => w,
            Err(e @ Error::Inconclusive { .. }) => {
                steps.push(StepReport::inconclusive(s, summaries, e.to_string()));
                continue;
            }
            Err(e) => return Err(e),
        };
        let mut sets = Vec::new();
        let (mut wd, mut indep, mut distinct) = (vec![], vec![], vec![]);
        let mut hit: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (k, set) in w.sets.iter().enumerate() {
            let (face, exact) = theta(&set.parts, &sigma)?;
            let face_index = faces.iter().position(|f| f.ray_indices == face.ray_indices);
            let name = format!("{{{}}}", join(&set.parts));
            if !exact || face.codim != s {
                wd.push(format!(
                    "{name} cuts {} of codimension {}",
                    if exact { "a face" } else { "a non-face" },
                    face.codim
                ));
            }
            if let Some(i) = face_index {
                hit.entry(i).or_default().push(k);
            }
            let li = set.is_linearly_independent();
            if !li {
                indep.push(format!("{name} has rank below {s}"));
            }
            let dp = !set.has_repeats();
            if !dp {
                distinct.push(format!("{name} repeats a part"));
            }
            sets.push(SetImage {
                parts: set.parts.clone(),
                certificate: set.certificate.clone(),
                face: FaceSummary::from(&face),
                face_index,
                exact,
                linearly_independent: li,
                distinct_parts: dp,
            });
        }
        let injective: Vec<String> = hit
            .iter()
            .filter(|(_, ks)| ks.len() > 1)
            .map(|(i, ks)| {
                let names: Vec<String> =
                    ks.iter().map(|&k| format!("{{{}}}", join(&sets[k].parts))).collect();
                format!("face {i} is the image of {}", names.join(" and "))
            })
            .collect();
        let surjective: Vec<String> = (0..faces.len())
            .filter(|i| !hit.contains_key(i))
            .map(|i| format!("face {i} with rays {:?} has no preimage", summaries[i].rays))
            .collect();
        steps.push(StepReport {
            s,
            faces: summaries,
            sets,
            rejected: w.rejected,
            well_defined: Verdict::from_witnesses(wd),
            injective: Verdict::from_witnesses(injective),
            surjective: Verdict::from_witnesses(surjective),
            linear_independence: Verdict::from_witnesses(indep),
            distinct_parts: Verdict::from_witnesses(distinct),
        });
    }
    let mut evidence: Vec<SubrepCount> = circ.cache.lock().unwrap().values().cloned().collect();
    evidence.sort_by(|a, b| (&a.alpha, &a.beta).cmp(&(&b.alpha, &b.beta)));
    Ok(DwReport {
        beta: beta.clone(),
        s_max,
        steps,
        evidence,
    })
}

fn join(parts: &[DimensionVector]) -> String {
    parts.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::Quiver;

    fn dv(v: &[u32]) -> DimensionVector {
        DimensionVector::new(v.to_vec())
    }

    fn od(parts: &[&[u32]]) -> OrderedDecomposition {
        OrderedDecomposition::new(parts.iter().map(|p| dv(p)).collect()).unwrap()
    }

    #[test]
    fn ordered_decompositions() {
        let got = enumerate_ordered_decompositions(&dv(&[1, 1]), 2, 100).unwrap();
        assert_eq!(got, vec![od(&[&[0, 1], &[1, 0]]), od(&[&[1, 0], &[0, 1]])]);
        assert_eq!(
            enumerate_ordered_decompositions(&dv(&[1, 1]), 1, 100).unwrap(),
            vec![od(&[&[1, 1]])]
        );
        assert!(enumerate_ordered_decompositions(&dv(&[1, 0]), 2, 100).unwrap().is_empty());
        assert!(matches!(
            enumerate_ordered_decompositions(&dv(&[2, 2]), 2, 3),
            Err(Error::Budget(_))
        ));
    }

    #[test]
    fn well_covering_a2() {
        let q = Quiver::linear(2);
        let he = HomExt::new(&q);
        let circ = Circ::new(&he, CountPolicy::with_seed(1));
        assert!(is_well_covering(&circ, &od(&[&[0, 1], &[1, 0]])).unwrap());
        assert!(!is_well_covering(&circ, &od(&[&[1, 0], &[0, 1]])).unwrap());
        assert!(is_well_covering(&circ, &od(&[&[1, 1]])).unwrap());
    }

    #[test]
    fn theta_a2() {
        let q = Quiver::linear(2);
        let he = HomExt::new(&q);
        let sigma = build_sigma_hrep(&he, &dv(&[1, 1])).unwrap();
        let (f, exact) = theta(&[dv(&[1, 1])], &sigma).unwrap();
        assert!(exact);
        assert_eq!(f.codim, 1);
        let (f, exact) = theta(&[dv(&[0, 1]), dv(&[1, 0])], &sigma).unwrap();
        assert!(exact);
        assert_eq!((f.codim, f.dim), (2, 0));
        let circ = Circ::new(&he, CountPolicy::with_seed(1));
        assert!(matches!(
            face_of_decomposition(&circ, &od(&[&[1, 0], &[0, 1]]), &sigma),
            Err(Error::NotWellCovering(_))
        ));
    }

    #[test]
    fn verify_a2() {
        let q = Quiver::linear(2);
        let he = HomExt::new(&q);
        let circ = Circ::new(&he, CountPolicy::with_seed(1));
        let r = verify_dw(&circ, &dv(&[1, 1]), 2, DEFAULT_ENUMERATION_BUDGET).unwrap();
        assert!(r.bijective(), "{r:#?}");
        assert_eq!(r.steps[1].sets.len(), 1);
        assert_eq!(r.steps[1].sets[0].parts, vec![dv(&[0, 1]), dv(&[1, 0])]);
    }

    #[test]
    fn envelope() {
        let q = Quiver::linear(2);
        let he = HomExt::new(&q);
        let circ = Circ::new(&he, CountPolicy::with_seed(1));
        assert!(matches!(
            verify_dw(&circ, &dv(&[5, 1]), 1, 10),
            Err(Error::OutsideEnvelope(_))
        ));
    }
}
