//! Exact linear algebra over the integers and rationals.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type IntVec = Vec<BigInt>;

pub fn int_vec(v: &[i64]) -> IntVec {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn is_zero_vec(v: &[BigInt]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// Divides by the gcd of the entries. The zero vector is returned unchanged.
pub fn primitive(mut v: IntVec) -> IntVec {
    let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in v.iter_mut() {
            *x = &*x / &g;
        }
    }
    v
}

/// `a * x + b * y`, entrywise.
pub fn combine(a: &BigInt, x: &[BigInt], b: &BigInt, y: &[BigInt]) -> IntVec {
    x.iter().zip(y).map(|(u, v)| a * u + b * v).collect()
}

/// Reduced row echelon form; returns the nonzero rows and their pivot columns.
pub fn rref(rows: &[IntVec], ncols: usize) -> (Vec<Vec<BigRational>>, Vec<usize>) {
    let mut m: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| r.iter().map(|x| BigRational::from_integer(x.clone())).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..ncols {
                    let d = &f * &m[r][j];
                    m[i][j] -= d;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    m.truncate(r);
    (m, pivots)
}

pub fn rank(rows: &[IntVec], ncols: usize) -> usize {
    rref(rows, ncols).1.len()
}

/// Integer basis of `{x : row . x = 0 for every row}`, one primitive vector per free column.
pub fn kernel(rows: &[IntVec], ncols: usize) -> Vec<IntVec> {
    let (m, pivots) = rref(rows, ncols);
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![BigRational::zero(); ncols];
        v[free] = BigRational::one();
        for (row, &pc) in m.iter().zip(&pivots) {
            v[pc] = -row[free].clone();
        }
        basis.push(clear_denominators(&v));
    }
    basis
}

/// Scales a rational vector to a primitive integer vector with the same direction.
pub fn clear_denominators(v: &[BigRational]) -> IntVec {
    let l = v
        .iter()
        .fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    primitive(v.iter().map(|x| (x * &l).to_integer()).collect())
}

/// Canonical integer basis of the row span: the rref rows, each made primitive.
pub fn canonical_span_basis(rows: &[IntVec], ncols: usize) -> Vec<IntVec> {
    rref(rows, ncols)
        .0
        .iter()
        .map(|r| clear_denominators(r))
        .collect()
}

/// Incremental integer echelon basis over sparse rows; rows are kept primitive
/// with positive leading coefficient.
#[derive(Default)]
pub struct SparseEchelon {
    pivots: BTreeMap<usize, BTreeMap<usize, BigInt>>,
}

impl SparseEchelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Adds a row; returns whether it was independent of the rows already present.
    pub fn insert(&mut self, mut row: BTreeMap<usize, BigInt>) -> bool {
        row.retain(|_, v| !v.is_zero());
        loop {
            let Some((&lead, lead_val)) = row.iter().next() else {
                return false;
            };
            let Some(prow) = self.pivots.get(&lead) else {
                break;
            };
            let lead_val = lead_val.clone();
            let pv = prow[&lead].clone();
            let g = lead_val.gcd(&pv);
            let (a, b) = (&pv / &g, &lead_val / &g);
            let mut next = BTreeMap::new();
            for (&c, v) in &row {
                next.insert(c, v * &a);
            }
            for (&c, v) in prow {
                let e = next.entry(c).or_insert_with(BigInt::zero);
                *e -= v * &b;
            }
            next.retain(|_, v| !v.is_zero());
            row = next;
        }
        let g = row.values().fold(BigInt::zero(), |g, x| g.gcd(x));
        let sign_neg = row.values().next().is_some_and(|v| v.is_negative());
        for v in row.values_mut() {
            *v = &*v / &g;
            if sign_neg {
                *v = -&*v;
            }
        }
        let lead = *row.keys().next().expect("nonzero row");
        self.pivots.insert(lead, row);
        true
    }
}
