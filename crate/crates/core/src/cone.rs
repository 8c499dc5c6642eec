//! Exact polyhedral cones in H- and V-representation and their faces.
//!
//! An [`HCone`] is `{ x : e . x = 0 for all equalities, a . x <= 0 for all
//! inequalities }`. Extreme rays are computed with the double description
//! method over arbitrary-precision integers; faces are identified by the set
//! of extreme rays they contain and reported by their active sets.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::homext::HomExt;
use crate::linalg::{canonical_span_basis, combine, dot, int_vec, is_zero_vec, kernel, primitive, rank, IntVec};
use crate::quiver::{DimensionVector, Quiver};

/// One inequality `normal . x <= 0`, with the dimension vectors it came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Inequality {
    pub normal: IntVec,
    pub labels: Vec<DimensionVector>,
}

#[derive(Clone, Debug, Default)]
struct BitSet(Vec<u64>);

impl BitSet {
    fn with_len(n: usize) -> Self {
        BitSet(vec![0; n.div_ceil(64)])
    }

    fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn contains(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    fn and(&self, other: &Self) -> Self {
        BitSet(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn is_superset(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| b & !a == 0)
    }
}

/// Extreme rays and lineality space of a cone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VCone {
    pub dim: usize,
    pub rays: Vec<IntVec>,
    pub lineality: Vec<IntVec>,
}

impl VCone {
    pub fn is_pointed(&self) -> bool {
        self.lineality.is_empty()
    }

    /// Dimension of the linear span.
    pub fn span_dim(&self) -> usize {
        let all: Vec<IntVec> = self.rays.iter().chain(&self.lineality).cloned().collect();
        rank(&all, self.dim)
    }

    pub fn rays_i64(&self) -> Vec<Vec<i64>> {
        self.rays.iter().map(|r| to_i64(r)).collect()
    }
}

pub(crate) fn to_i64(v: &[BigInt]) -> Vec<i64> {
    v.iter()
        .map(|x| i64::try_from(x).expect("entry fits in i64"))
        .collect()
}

struct Dual {
    vcone: VCone,
    /// For each ray, the inequalities it satisfies with equality.
    tight: Vec<BitSet>,
}

/// A cone given by equalities `e . x = 0` and inequalities `a . x <= 0`.
#[derive(Clone, Debug)]
pub struct HCone {
    dim: usize,
    equalities: Vec<IntVec>,
    inequalities: Vec<Inequality>,
    dual: OnceLock<std::sync::Arc<Dual>>,
}

impl std::fmt::Debug for Dual {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.vcone.fmt(f)
    }
}

impl HCone {
    /// The whole space of dimension `dim`.
    pub fn new(dim: usize) -> Self {
        HCone {
            dim,
            equalities: Vec::new(),
            inequalities: Vec::new(),
            dual: OnceLock::new(),
        }
    }

    pub fn from_i64(dim: usize, equalities: &[Vec<i64>], inequalities: &[Vec<i64>]) -> Result<Self> {
        let mut c = HCone::new(dim);
        for e in equalities {
            c.add_equality(int_vec(e))?;
        }
        for a in inequalities {
            c.add_inequality(int_vec(a), None)?;
        }
        Ok(c)
    }

    fn check(&self, v: &[BigInt]) -> Result<()> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} in a cone of dimension {}",
                v.len(),
                self.dim
            )));
        }
        Ok(())
    }

    pub fn add_equality(&mut self, v: IntVec) -> Result<()> {
        self.check(&v)?;
        let v = primitive(v);
        if !is_zero_vec(&v) && !self.equalities.contains(&v) {
            self.equalities.push(v);
            self.dual = OnceLock::new();
        }
        Ok(())
    }

    /// Adds `v . x <= 0`. Proportional duplicates are merged, keeping the
    /// first position and collecting labels.
    pub fn add_inequality(&mut self, v: IntVec, label: Option<DimensionVector>) -> Result<()> {
        self.check(&v)?;
        let v = primitive(v);
        if is_zero_vec(&v) {
            return Ok(());
        }
        self.dual = OnceLock::new();
        if let Some(ineq) = self.inequalities.iter_mut().find(|i| i.normal == v) {
            ineq.labels.extend(label);
            return Ok(());
        }
        self.inequalities.push(Inequality {
            normal: v,
            labels: label.into_iter().collect(),
        });
        Ok(())
    }

    /// This cone intersected with the hyperplanes `v . x = 0`.
    pub fn with_equalities(&self, extra: &[IntVec]) -> Result<HCone> {
        let mut c = self.clone();
        for v in extra {
            c.add_equality(v.clone())?;
        }
        Ok(c)
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn equalities(&self) -> &[IntVec] {
        &self.equalities
    }

    pub fn inequalities(&self) -> &[Inequality] {
        &self.inequalities
    }

    pub fn contains(&self, x: &[BigInt]) -> bool {
        x.len() == self.dim
            && self.equalities.iter().all(|e| dot(e, x).is_zero())
            && self
                .inequalities
                .iter()
                .all(|a| !dot(&a.normal, x).is_positive())
    }

    fn dual(&self) -> &Dual {
        self.dual.get_or_init(|| std::sync::Arc::new(double_description(self)))
    }

    /// Extreme rays and lineality space.
    pub fn rays(&self) -> VCone {
        self.dual().vcone.clone()
    }

    /// Dimension of the linear span of the cone.
    pub fn cone_dim(&self) -> usize {
        self.dual().vcone.span_dim()
    }

    /// Every generator of `other` lies in `self`.
    pub fn contains_cone(&self, other: &HCone) -> bool {
        let v = &other.dual().vcone;
        v.rays.iter().all(|r| self.contains(r))
            && v.lineality.iter().all(|l| {
                self.contains(l) && self.contains(&l.iter().map(|x| -x).collect::<Vec<_>>())
            })
    }

    pub fn same_cone(&self, other: &HCone) -> bool {
        self.dim == other.dim && self.contains_cone(other) && other.contains_cone(self)
    }

    /// Inequalities that hold with equality on the whole cone.
    pub fn implicit_equalities(&self) -> Vec<usize> {
        let d = self.dual();
        (0..self.inequalities.len())
            .filter(|&i| d.tight.iter().all(|t| t.contains(i)))
            .collect()
    }

    /// A minimal set of inequalities that, with the equalities and the
    /// implicit equalities, defines the cone. Among inequalities defining the
    /// same facet the first is kept.
    pub fn facets(&self) -> Vec<usize> {
        let d = self.dual();
        let full = self.cone_dim();
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut out = Vec::new();
        for i in 0..self.inequalities.len() {
            let on: Vec<usize> = (0..d.tight.len()).filter(|&r| d.tight[r].contains(i)).collect();
            if on.len() == d.tight.len() {
                continue;
            }
            if self.span_of(&on) + 1 != full {
                continue;
            }
            if seen.insert(on) {
                out.push(i);
            }
        }
        out
    }

    fn span_of(&self, rays: &[usize]) -> usize {
        let v = &self.dual().vcone;
        let all: Vec<IntVec> = rays
            .iter()
            .map(|&r| v.rays[r].clone())
            .chain(v.lineality.iter().cloned())
            .collect();
        rank(&all, self.dim)
    }

    fn face_of_rays(&self, rays: Vec<usize>) -> Face {
        let d = self.dual();
        let active: Vec<usize> = (0..self.inequalities.len())
            .filter(|&i| rays.iter().all(|&r| d.tight[r].contains(i)))
            .collect();
        let dim = self.span_of(&rays);
        let labels = active
            .iter()
            .flat_map(|&i| self.inequalities[i].labels.iter().cloned())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        Face {
            active,
            rays: rays.iter().map(|&r| d.vcone.rays[r].clone()).collect(),
            ray_indices: rays,
            dim,
            codim: self.dim - dim,
            labels,
        }
    }

    /// The whole cone as a face.
    pub fn whole(&self) -> Face {
        self.face_of_rays((0..self.dual().tight.len()).collect())
    }

    /// All faces of ambient codimension at most `k`, ordered by codimension
    /// and then by active set.
    pub fn faces_up_to_codim(&self, k: usize) -> Vec<Face> {
        let d = self.dual();
        let top = self.whole();
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut out = Vec::new();
        let mut queue = VecDeque::new();
        if top.codim <= k {
            seen.insert(top.ray_indices.clone());
            queue.push_back(top);
        }
        while let Some(face) = queue.pop_front() {
            for i in 0..self.inequalities.len() {
                if face.active.binary_search(&i).is_ok() {
                    continue;
                }
                let sub: Vec<usize> = face
                    .ray_indices
                    .iter()
                    .copied()
                    .filter(|&r| d.tight[r].contains(i))
                    .collect();
                if seen.contains(&sub) {
                    continue;
                }
                let child = self.face_of_rays(sub.clone());
                seen.insert(sub);
                if child.codim <= k {
                    queue.push_back(child);
                }
            }
            out.push(face);
        }
        out.sort_by(|a, b| (a.codim, &a.active).cmp(&(b.codim, &b.active)));
        out
    }

    /// The smallest face containing the cone cut out by the extra
    /// equalities. `exact` tells whether the cut is itself that face.
    pub fn face_cut_by(&self, extra: &[IntVec]) -> Result<(Face, bool)> {
        let cut = self.with_equalities(extra)?;
        let d = self.dual();
        let gens = cut.rays();
        let active: Vec<usize> = (0..self.inequalities.len())
            .filter(|&i| {
                let a = &self.inequalities[i].normal;
                gens.rays.iter().all(|r| dot(a, r).is_zero())
            })
            .collect();
        let rays: Vec<usize> = (0..d.tight.len())
            .filter(|&r| active.iter().all(|&i| d.tight[r].contains(i)))
            .collect();
        let face = self.face_of_rays(rays);
        let exact = face.rays.iter().all(|r| cut.contains(r));
        Ok((face, exact))
    }

    /// The cone generated by `gens` (each vector a generator), as an H-cone.
    pub fn generated_by(dim: usize, gens: &[IntVec]) -> Result<HCone> {
        let mut polar = HCone::new(dim);
        for g in gens {
            polar.add_inequality(g.clone(), None)?;
        }
        let pv = polar.rays();
        let mut c = HCone::new(dim);
        for l in &pv.lineality {
            c.add_equality(l.clone())?;
        }
        for r in &pv.rays {
            c.add_inequality(r.clone(), None)?;
        }
        Ok(c)
    }
}

/// A face, identified by the extreme rays it contains.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    /// Indices of inequalities tight on the face (maximal).
    pub active: Vec<usize>,
    pub rays: Vec<IntVec>,
    pub ray_indices: Vec<usize>,
    pub dim: usize,
    pub codim: usize,
    /// Every dimension vector labelling an active inequality.
    pub labels: Vec<DimensionVector>,
}

fn double_description(c: &HCone) -> Dual {
    let n = c.dim;
    let m = c.inequalities.len();
    let mut lin: Vec<IntVec> = kernel(&c.equalities, n);
    let mut rays: Vec<(IntVec, BitSet)> = Vec::new();
    let mut processed = BitSet::with_len(m);
    for (k, ineq) in c.inequalities.iter().enumerate() {
        let a = &ineq.normal;
        if let Some(pos) = lin.iter().position(|l| !dot(a, l).is_zero()) {
            let mut l = lin.remove(pos);
            if dot(a, &l).is_positive() {
                l = l.iter().map(|x| -x).collect();
            }
            let al = dot(a, &l);
            let w = -al.clone();
            lin = lin
                .into_iter()
                .map(|x| primitive(combine(&w, &x, &dot(a, &x), &l)))
                .collect();
            for (r, z) in rays.iter_mut() {
                *r = primitive(combine(&w, r, &dot(a, r), &l));
                z.insert(k);
            }
            rays.push((l, processed.clone()));
        } else {
            let vals: Vec<BigInt> = rays.iter().map(|(r, _)| dot(a, r)).collect();
            let pos: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_positive()).collect();
            let neg: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_negative()).collect();
            let mut next: Vec<(IntVec, BitSet)> = Vec::new();
            for &p in &pos {
                for &q in &neg {
                    let z = rays[p].1.and(&rays[q].1);
                    let adjacent = (0..rays.len())
                        .all(|r| r == p || r == q || !rays[r].1.is_superset(&z));
                    if !adjacent {
                        continue;
                    }
                    let v = primitive(combine(&vals[p], &rays[q].0, &-vals[q].clone(), &rays[p].0));
                    let mut z = z;
                    z.insert(k);
                    next.push((v, z));
                }
            }
            let mut kept: Vec<(IntVec, BitSet)> = Vec::new();
            for (i, (r, mut z)) in rays.into_iter().enumerate() {
                if vals[i].is_zero() {
                    z.insert(k);
                    kept.push((r, z));
                } else if vals[i].is_negative() {
                    kept.push((r, z));
                }
            }
            kept.extend(next);
            rays = kept;
        }
        processed.insert(k);
    }
    let lineality = canonical_span_basis(&lin, n);
    // canonical ray order; rays are primitive so proportional duplicates coincide
    let mut sorted: BTreeMap<IntVec, BitSet> = BTreeMap::new();
    for (r, z) in rays {
        if !is_zero_vec(&r) {
            sorted.entry(r).or_insert(z);
        }
    }
    let (rays, tight): (Vec<_>, Vec<_>) = sorted.into_iter().unzip();
    Dual {
        vcone: VCone {
            dim: n,
            rays,
            lineality,
        },
        tight,
    }
}

/// `{ sigma : sigma(beta) = 0, sigma(alpha) <= 0 for every generic
/// subdimension 0 < alpha < beta }`, inequalities inserted in lexicographic
/// order of `alpha`.
pub fn build_sigma_hrep(homext: &HomExt<'_>, beta: &DimensionVector) -> Result<HCone> {
    let q = homext.quiver();
    q.check_len(beta.len())?;
    if beta.is_zero() {
        return Err(Error::ZeroVector);
    }
    let n = q.num_vertices();
    let mut c = HCone::new(n);
    c.add_equality(int_vec(&beta.to_i64()))?;
    for alpha in homext.generic_subdims(beta)? {
        if alpha.is_zero() || &alpha == beta {
            continue;
        }
        c.add_inequality(int_vec(&alpha.to_i64()), Some(alpha))?;
    }
    Ok(c)
}

/// Convenience wrapper around [`build_sigma_hrep`] with a fresh engine.
pub fn sigma_cone(q: &Quiver, beta: &DimensionVector) -> Result<HCone> {
    build_sigma_hrep(&HomExt::new(q), beta)
}
