//! Acyclic quivers, dimension vectors, weights and the Euler form.
//!
//! Vectors are stored aligned with the declared vertex order of their quiver.
//! The topological order certified at validation is kept separately and is
//! used by the algorithms that need to walk arrows tail-first.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Quiver description as it appears in input files.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawQuiver {
    pub vertices: Vec<String>,
    #[serde(default)]
    pub arrows: Vec<RawArrow>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawArrow {
    pub id: String,
    pub tail: String,
    pub head: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub id: String,
    pub tail: usize,
    pub head: usize,
}

/// A finite directed multigraph without oriented cycles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    topo: Vec<usize>,
}

impl Quiver {
    /// Validates a raw description: unique ids, known endpoints, no oriented cycle.
    pub fn validate(raw: &RawQuiver) -> Result<Self> {
        let mut index = HashMap::new();
        for (i, v) in raw.vertices.iter().enumerate() {
            if index.insert(v.clone(), i).is_some() {
                return Err(Error::DuplicateId {
                    kind: "vertex",
                    id: v.clone(),
                });
            }
        }
        let mut seen = BTreeSet::new();
        let mut arrows = Vec::with_capacity(raw.arrows.len());
        for a in &raw.arrows {
            if !seen.insert(a.id.clone()) {
                return Err(Error::DuplicateId {
                    kind: "arrow",
                    id: a.id.clone(),
                });
            }
            let lookup = |v: &String| {
                index.get(v).copied().ok_or_else(|| Error::UnknownVertex {
                    arrow: a.id.clone(),
                    vertex: v.clone(),
                })
            };
            arrows.push(Arrow {
                id: a.id.clone(),
                tail: lookup(&a.tail)?,
                head: lookup(&a.head)?,
            });
        }
        let topo = topological_order(raw.vertices.len(), &arrows)
            .map_err(|v| Error::CyclicQuiver(raw.vertices[v].clone()))?;
        Ok(Quiver {
            vertices: raw.vertices.clone(),
            arrows,
            topo,
        })
    }

    /// Builds a quiver from vertex names and `(tail, head)` index pairs;
    /// arrows are named `a1, a2, ...`.
    pub fn from_edges(vertices: &[&str], edges: &[(usize, usize)]) -> Result<Self> {
        let raw = RawQuiver {
            vertices: vertices.iter().map(|s| s.to_string()).collect(),
            arrows: edges
                .iter()
                .enumerate()
                .map(|(i, &(t, h))| RawArrow {
                    id: format!("a{}", i + 1),
                    tail: vertices.get(t).map(|s| s.to_string()).unwrap_or_default(),
                    head: vertices.get(h).map(|s| s.to_string()).unwrap_or_default(),
                })
                .collect(),
        };
        Quiver::validate(&raw)
    }

    /// Equioriented type A quiver `1 -> 2 -> ... -> n`.
    pub fn linear(n: usize) -> Self {
        let names: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let edges: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
        Quiver::from_edges(&refs, &edges).expect("linear quiver is acyclic")
    }

    /// Generalized Kronecker quiver with `m` parallel arrows `1 -> 2`.
    pub fn kronecker(m: usize) -> Self {
        Quiver::from_edges(&["1", "2"], &vec![(0, 1); m]).expect("kronecker quiver is acyclic")
    }

    /// Looks up a small library of named quivers: `A<n>` and `K<m>`.
    pub fn named(name: &str) -> Option<Self> {
        let (kind, rest) = name.split_at(name.char_indices().nth(1).map(|(i, _)| i)?);
        let n: usize = rest.trim_start_matches('_').parse().ok()?;
        match kind {
            "A" | "a" if n >= 1 => Some(Quiver::linear(n)),
            "K" | "k" => Some(Quiver::kronecker(n)),
            _ => None,
        }
    }

    pub fn to_raw(&self) -> RawQuiver {
        RawQuiver {
            vertices: self.vertices.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|a| RawArrow {
                    id: a.id.clone(),
                    tail: self.vertices[a.tail].clone(),
                    head: self.vertices[a.head].clone(),
                })
                .collect(),
        }
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    /// Vertex indices with every arrow's tail before its head; ties keep
    /// the declared order.
    pub fn topological_order(&self) -> &[usize] {
        &self.topo
    }

    pub fn check_len(&self, len: usize) -> Result<()> {
        if len == self.vertices.len() {
            Ok(())
        } else {
            Err(Error::MismatchedQuiver {
                expected: self.vertices.len(),
                got: len,
            })
        }
    }

    /// `<a, b> = sum_s a(s) b(s) - sum_arrows a(tail) b(head)` on arbitrary
    /// integer vectors.
    pub fn euler_form_z(&self, a: &[i64], b: &[i64]) -> Result<i64> {
        self.check_len(a.len())?;
        self.check_len(b.len())?;
        let diag: i64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
        let off: i64 = self.arrows.iter().map(|ar| a[ar.tail] * b[ar.head]).sum();
        Ok(diag - off)
    }

    pub fn euler_form(&self, alpha: &DimensionVector, beta: &DimensionVector) -> Result<i64> {
        self.euler_form_z(&alpha.to_i64(), &beta.to_i64())
    }

    pub fn weight_apply(&self, sigma: &Weight, alpha: &DimensionVector) -> Result<i64> {
        self.check_len(sigma.len())?;
        self.check_len(alpha.len())?;
        Ok(sigma.apply(alpha))
    }

    /// The weight `x -> <beta, x> - <x, beta>` as a coefficient vector.
    pub fn canonical_weight(&self, beta: &DimensionVector) -> Result<Weight> {
        self.check_len(beta.len())?;
        let b = beta.to_i64();
        let n = self.num_vertices();
        let coeffs = (0..n)
            .map(|s| {
                let e = unit_i64(n, s);
                Ok(self.euler_form_z(&b, &e)? - self.euler_form_z(&e, &b)?)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Weight(coeffs))
    }

    /// Number of coordinates of `Rep(Q, beta)`.
    pub fn rep_dimension(&self, beta: &DimensionVector) -> u64 {
        self.arrows
            .iter()
            .map(|a| beta[a.tail] as u64 * beta[a.head] as u64)
            .sum()
    }
}

fn unit_i64(n: usize, i: usize) -> Vec<i64> {
    let mut e = vec![0; n];
    e[i] = 1;
    e
}

/// Kahn's algorithm, always releasing the smallest ready index first.
/// On failure returns a vertex lying on a cycle.
fn topological_order(n: usize, arrows: &[Arrow]) -> std::result::Result<Vec<usize>, usize> {
    let mut indeg = vec![0usize; n];
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); n];
    for a in arrows {
        indeg[a.head] += 1;
        out[a.tail].push(a.head);
    }
    let mut ready: BTreeSet<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(v) = ready.pop_first() {
        order.push(v);
        for &w in &out[v] {
            indeg[w] -= 1;
            if indeg[w] == 0 {
                ready.insert(w);
            }
        }
    }
    if order.len() == n {
        Ok(order)
    } else {
        Err((0..n).find(|&v| indeg[v] > 0).unwrap_or(0))
    }
}

/// Nonnegative integer vector indexed by the vertices of a quiver.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DimensionVector(Vec<u32>);

impl DimensionVector {
    pub fn new(entries: Vec<u32>) -> Self {
        DimensionVector(entries)
    }

    pub fn zero(n: usize) -> Self {
        DimensionVector(vec![0; n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        DimensionVector(v)
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn total(&self) -> u64 {
        self.0.iter().map(|&x| x as u64).sum()
    }

    pub fn to_i64(&self) -> Vec<i64> {
        self.0.iter().map(|&x| x as i64).collect()
    }

    /// Componentwise `self <= other`.
    pub fn le(&self, other: &Self) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn add(&self, other: &Self) -> Self {
        DimensionVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self - other`, or `None` when some entry would go negative.
    pub fn checked_sub(&self, other: &Self) -> Option<Self> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(DimensionVector)
    }

    pub fn scale(&self, k: u32) -> Self {
        DimensionVector(self.0.iter().map(|a| a * k).collect())
    }

    /// gcd of the entries; `None` for the zero vector.
    pub fn gcd(&self) -> Option<u32> {
        let g = self.0.iter().fold(0u32, |g, &x| g.gcd(&x));
        (g != 0).then_some(g)
    }

    /// `self / gcd(self)`; `None` for the zero vector.
    pub fn primitive(&self) -> Option<Self> {
        let g = self.gcd()?;
        Some(DimensionVector(self.0.iter().map(|a| a / g).collect()))
    }

    /// Every `alpha` with `0 <= alpha <= self`, in lexicographic order.
    pub fn sub_vectors(&self) -> SubVectors {
        SubVectors {
            bound: self.0.clone(),
            next: Some(vec![0; self.0.len()]),
        }
    }

    /// Number of vectors in the box below `self`.
    pub fn box_size(&self) -> u64 {
        self.0.iter().map(|&x| x as u64 + 1).product()
    }
}

impl std::ops::Index<usize> for DimensionVector {
    type Output = u32;
    fn index(&self, i: usize) -> &u32 {
        &self.0[i]
    }
}

impl fmt::Display for DimensionVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, self.0.iter())
    }
}

impl From<Vec<u32>> for DimensionVector {
    fn from(v: Vec<u32>) -> Self {
        DimensionVector(v)
    }
}

pub struct SubVectors {
    bound: Vec<u32>,
    next: Option<Vec<u32>>,
}

impl Iterator for SubVectors {
    type Item = DimensionVector;

    fn next(&mut self) -> Option<DimensionVector> {
        let cur = self.next.take()?;
        let mut succ = cur.clone();
        let mut i = succ.len();
        loop {
            if i == 0 {
                break;
            }
            i -= 1;
            if succ[i] < self.bound[i] {
                succ[i] += 1;
                self.next = Some(succ);
                break;
            }
            succ[i] = 0;
        }
        Some(DimensionVector(cur))
    }
}

/// Integer vector indexed by vertices; the character `prod det(g_s)^sigma(s)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(Vec<i64>);

impl Weight {
    pub fn new(entries: Vec<i64>) -> Self {
        Weight(entries)
    }

    pub fn zero(n: usize) -> Self {
        Weight(vec![0; n])
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    /// `sigma(alpha) = sum_s sigma(s) alpha(s)`; lengths must agree.
    pub fn apply(&self, alpha: &DimensionVector) -> i64 {
        debug_assert_eq!(self.0.len(), alpha.len());
        self.0
            .iter()
            .zip(alpha.entries())
            .map(|(s, &a)| s * a as i64)
            .sum()
    }

    pub fn scale(&self, k: i64) -> Self {
        Weight(self.0.iter().map(|x| x * k).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn neg(&self) -> Self {
        Weight(self.0.iter().map(|x| -x).collect())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, self.0.iter())
    }
}

impl From<Vec<i64>> for Weight {
    fn from(v: Vec<i64>) -> Self {
        Weight(v)
    }
}

fn write_tuple<T: fmt::Display>(
    f: &mut fmt::Formatter<'_>,
    items: impl Iterator<Item = T>,
) -> fmt::Result {
    f.write_str("(")?;
    for (i, x) in items.enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{x}")?;
    }
    f.write_str(")")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dv(v: &[u32]) -> DimensionVector {
        DimensionVector::new(v.to_vec())
    }

    #[test]
    fn validates_small_quivers() {
        let a2 = Quiver::from_edges(&["1", "2"], &[(0, 1)]).unwrap();
        assert_eq!(a2.topological_order(), &[0, 1]);
        let k2 = Quiver::from_edges(&["1", "2"], &[(0, 1), (0, 1)]).unwrap();
        assert_eq!(k2.arrows().len(), 2);
    }

    #[test]
    fn rejects_loop_and_cycle() {
        let err = Quiver::from_edges(&["1"], &[(0, 0)]).unwrap_err();
        assert!(matches!(err, Error::CyclicQuiver(v) if v == "1"));
        let err = Quiver::from_edges(&["1", "2", "3"], &[(0, 1), (1, 2), (2, 0)]).unwrap_err();
        assert!(matches!(err, Error::CyclicQuiver(_)));
    }

    #[test]
    fn rejects_duplicates_and_unknowns() {
        let raw = RawQuiver {
            vertices: vec!["x".into(), "x".into()],
            arrows: vec![],
        };
        assert!(matches!(
            Quiver::validate(&raw),
            Err(Error::DuplicateId { kind: "vertex", .. })
        ));
        let raw = RawQuiver {
            vertices: vec!["x".into(), "y".into()],
            arrows: vec![
                RawArrow { id: "a".into(), tail: "x".into(), head: "y".into() },
                RawArrow { id: "a".into(), tail: "x".into(), head: "y".into() },
            ],
        };
        assert!(matches!(
            Quiver::validate(&raw),
            Err(Error::DuplicateId { kind: "arrow", .. })
        ));
        let raw = RawQuiver {
            vertices: vec!["x".into()],
            arrows: vec![RawArrow { id: "a".into(), tail: "x".into(), head: "z".into() }],
        };
        assert!(matches!(Quiver::validate(&raw), Err(Error::UnknownVertex { .. })));
    }

    #[test]
    fn topological_order_breaks_ties_by_declaration() {
        // declared order c, b, a with arrows a->b, c->b
        let q = Quiver::from_edges(&["c", "b", "a"], &[(2, 1), (0, 1)]).unwrap();
        assert_eq!(q.topological_order(), &[0, 2, 1]);
    }

    #[test]
    fn euler_form_examples() {
        let one = dv(&[1, 1]);
        assert_eq!(Quiver::linear(2).euler_form(&one, &one).unwrap(), 1);
        assert_eq!(Quiver::kronecker(2).euler_form(&one, &one).unwrap(), 0);
        assert_eq!(Quiver::kronecker(3).euler_form(&one, &one).unwrap(), -1);
        assert!(matches!(
            Quiver::linear(2).euler_form(&dv(&[1, 1, 1]), &one),
            Err(Error::MismatchedQuiver { expected: 2, got: 3 })
        ));
    }

    #[test]
    fn weight_apply_examples() {
        let q = Quiver::linear(2);
        let s = Weight::new(vec![1, -1]);
        assert_eq!(q.weight_apply(&s, &dv(&[2, 2])).unwrap(), 0);
        assert_eq!(q.weight_apply(&s, &dv(&[0, 1])).unwrap(), -1);
        assert_eq!(q.weight_apply(&Weight::zero(2), &dv(&[3, 1])).unwrap(), 0);
    }

    #[test]
    fn canonical_weight_examples() {
        let a2 = Quiver::linear(2);
        assert_eq!(a2.canonical_weight(&dv(&[1, 1])).unwrap(), Weight::new(vec![1, -1]));
        let k2 = Quiver::kronecker(2);
        assert_eq!(k2.canonical_weight(&dv(&[2, 2])).unwrap(), Weight::new(vec![4, -4]));
        let a3 = Quiver::linear(3);
        let b = dv(&[1, 2, 1]);
        let w = a3.canonical_weight(&b).unwrap();
        assert_eq!(a3.weight_apply(&w, &b).unwrap(), 0);
    }

    #[test]
    fn sub_vectors_are_lexicographic() {
        let all: Vec<_> = dv(&[1, 2]).sub_vectors().collect();
        assert_eq!(all.len(), 6);
        assert_eq!(all.first().unwrap(), &dv(&[0, 0]));
        assert_eq!(all[1], dv(&[0, 1]));
        assert_eq!(all.last().unwrap(), &dv(&[1, 2]));
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(dv(&[]).sub_vectors().count(), 1);
    }

    #[test]
    fn gcd_and_primitive() {
        assert_eq!(dv(&[0, 0]).gcd(), None);
        assert_eq!(dv(&[0, 4, 6]).gcd(), Some(2));
        assert_eq!(dv(&[2, 2]).primitive().unwrap(), dv(&[1, 1]));
    }

    #[test]
    fn named_quivers() {
        assert_eq!(Quiver::named("A3").unwrap().arrows().len(), 2);
        assert_eq!(Quiver::named("K_3").unwrap().arrows().len(), 3);
        assert!(Quiver::named("Z2").is_none());
    }
}
