//! Weights of semi-invariant polynomials on `Rep(Q, beta)`, by degree.
//!
//! Coordinates are the matrix entries `u(a)_{ij}` (row `i` in the head space,
//! column `j` in the tail space). Under the torus of `GL(beta)` such a
//! coordinate has weight `+1` on head index `i` and `-1` on tail index `j`, so
//! monomials are torus eigenvectors. A polynomial is a semi-invariant of
//! weight `tau` exactly when it is a torus eigenvector with weight `tau(s)` on
//! every basis index of `V(s)` and is killed by the vector fields of all root
//! vectors `E_ij` of every `gl(V(s))` (the group is connected and generated by
//! its torus and root subgroups, on which characters are trivial). Both
//! conditions are linear on the space of monomials of fixed degree and are
//! solved exactly over the integers.
//!
//! Convention: `f` has weight `tau` when `f(g . R) = chi_tau(g) f(R)`, with
//! `(g . R)(a) = g(head) u(a) g(tail)^{-1}`; the reported weight is
//! `sigma = -tau`.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::SparseEchelon;
use crate::quiver::{DimensionVector, Quiver, Weight};

pub const DEFAULT_MONOMIAL_BUDGET: u64 = 2_000_000;

/// A weight `sigma` for which semi-invariants of weight `-sigma` exist in a
/// given polynomial degree, with the dimension of that space.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct SiWeight {
    pub degree: u32,
    pub sigma: Weight,
    pub dim: u64,
}

struct Coord {
    head: (usize, usize),
    tail: (usize, usize),
}

struct Coords {
    list: Vec<Coord>,
    /// (arrow, row, col) -> coordinate index
    index: HashMap<(usize, usize, usize), usize>,
    /// arrow of each coordinate, with its row and column
    place: Vec<(usize, usize, usize)>,
}

fn coordinates(q: &Quiver, beta: &DimensionVector) -> Coords {
    let mut list = Vec::new();
    let mut index = HashMap::new();
    let mut place = Vec::new();
    for (ai, a) in q.arrows().iter().enumerate() {
        for i in 0..beta[a.head] as usize {
            for j in 0..beta[a.tail] as usize {
                index.insert((ai, i, j), list.len());
                place.push((ai, i, j));
                list.push(Coord {
                    head: (a.head, i),
                    tail: (a.tail, j),
                });
            }
        }
    }
    Coords { list, index, place }
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1u64, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// All exponent vectors of total degree `d` over `n` variables.
fn monomials(n: usize, d: u32) -> Vec<Vec<u32>> {
    fn rec(n: usize, d: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() + 1 == n {
            cur.push(d);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for e in (0..=d).rev() {
            cur.push(e);
            rec(n, d - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if d == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(n, d, &mut Vec::with_capacity(n), &mut out);
    out
}

/// Torus weight `tau` of a monomial if it is constant on each vertex space.
fn vertex_weight(
    beta: &DimensionVector,
    coords: &Coords,
    exps: &[u32],
) -> Option<Vec<i64>> {
    let mut w: Vec<Vec<i64>> = beta.entries().iter().map(|&b| vec![0; b as usize]).collect();
    for (c, &e) in coords.list.iter().zip(exps) {
        if e > 0 {
            w[c.head.0][c.head.1] += e as i64;
            w[c.tail.0][c.tail.1] -= e as i64;
        }
    }
    w.iter()
        .map(|idx| match idx.first() {
            None => Some(0),
            Some(&x) => idx.iter().all(|&y| y == x).then_some(x),
        })
        .collect()
}

/// Images of a monomial under the root-vector fields, as (operator, monomial) -> coefficient.
fn root_field_images(
    q: &Quiver,
    beta: &DimensionVector,
    coords: &Coords,
    exps: &[u32],
    out: &mut BTreeMap<(usize, Vec<u32>), BigInt>,
) {
    let mut op = 0;
    for (v, &b) in beta.entries().iter().enumerate() {
        for i in 0..b as usize {
            for j in 0..b as usize {
                if i == j {
                    continue;
                }
                for (c, &e) in exps.iter().enumerate() {
                    if e == 0 {
                        continue;
                    }
                    let (ai, r, col) = coords.place[c];
                    let a = &q.arrows()[ai];
                    // head side: d u_{i,k} = u_{j,k}
                    if a.head == v && r == i {
                        let src = coords.index[&(ai, j, col)];
                        push_term(out, op, exps, c, src, e as i64);
                    }
                    // tail side: d u_{k,j} = -u_{k,i}
                    if a.tail == v && col == j {
                        let src = coords.index[&(ai, r, i)];
                        push_term(out, op, exps, c, src, -(e as i64));
                    }
                }
                op += 1;
            }
        }
    }
}

fn push_term(
    out: &mut BTreeMap<(usize, Vec<u32>), BigInt>,
    op: usize,
    exps: &[u32],
    removed: usize,
    added: usize,
    coeff: i64,
) {
    let mut m = exps.to_vec();
    m[removed] -= 1;
    m[added] += 1;
    *out.entry((op, m)).or_default() += coeff;
}

/// All `(degree, sigma, dim)` with `dim > 0` for degrees `0..=dmax`, sorted.
pub fn si_weights_by_degree(
    q: &Quiver,
    beta: &DimensionVector,
    dmax: u32,
    budget: u64,
) -> Result<Vec<SiWeight>> {
    q.check_len(beta.len())?;
    let coords = coordinates(q, beta);
    let n = coords.list.len();
    let total = binomial(n as u64 + dmax as u64, dmax as u64);
    if total > budget {
        return Err(Error::Budget(format!(
            "{total} monomials of degree <= {dmax} in {n} variables exceed {budget}"
        )));
    }
    let mut out = Vec::new();
    for d in 0..=dmax {
        let mut by_weight: BTreeMap<Vec<i64>, Vec<Vec<u32>>> = BTreeMap::new();
        for m in monomials(n, d) {
            if let Some(tau) = vertex_weight(beta, &coords, &m) {
                by_weight.entry(tau).or_default().push(m);
            }
        }
        for (tau, monos) in by_weight {
            let mut column: HashMap<(usize, Vec<u32>), usize> = HashMap::new();
            let mut ech = SparseEchelon::new();
            for m in &monos {
                let mut images = BTreeMap::new();
                root_field_images(q, beta, &coords, m, &mut images);
                let mut row = BTreeMap::new();
                for (key, c) in images {
                    let next = column.len();
                    let col = *column.entry(key).or_insert(next);
                    row.insert(col, c);
                }
                ech.insert(row);
            }
            let dim = (monos.len() - ech.rank()) as u64;
            if dim > 0 {
                let sigma = Weight::new(
                    tau.iter()
                        .zip(beta.entries())
                        .map(|(&t, &b)| if b == 0 { 0 } else { -t })
                        .collect(),
                );
                out.push(SiWeight { degree: d, sigma, dim });
            }
        }
    }
    out.sort();
    Ok(out)
}
