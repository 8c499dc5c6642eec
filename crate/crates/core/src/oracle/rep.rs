use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{self, Fe, FeMatrix, Gf};
use crate::quiver::{DimensionVector, Quiver};

/// A point of `Rep(Q, beta)` over a prime field: one matrix per arrow with
/// `beta(head)` rows and `beta(tail)` columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteFieldRep {
    dims: DimensionVector,
    field: Gf,
    seed: Option<u64>,
    maps: Vec<FeMatrix>,
}

/// Provenance of a sampled representation, for reports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RepProvenance {
    pub prime: u64,
    pub seed: Option<u64>,
    pub dims: DimensionVector,
}

impl FiniteFieldRep {
    /// Builds a representation from explicit integer matrices (reduced mod `p`).
    pub fn from_matrices(
        q: &Quiver,
        dims: DimensionVector,
        p: u64,
        maps: &[Vec<Vec<u64>>],
    ) -> Result<Self> {
        q.check_len(dims.len())?;
        let field = Gf::prime(p)?;
        if maps.len() != q.arrows().len() {
            return Err(Error::DimensionMismatch(format!(
                "{} matrices for {} arrows",
                maps.len(),
                q.arrows().len()
            )));
        }
        let mut out = Vec::with_capacity(maps.len());
        for (a, m) in q.arrows().iter().zip(maps) {
            let (rows, cols) = (dims[a.head] as usize, dims[a.tail] as usize);
            if m.len() != rows || m.iter().any(|r| r.len() != cols) {
                return Err(Error::DimensionMismatch(format!(
                    "arrow {} needs a {rows}x{cols} matrix",
                    a.id
                )));
            }
            let mut fm = FeMatrix::zeros(rows, cols);
            for (i, row) in m.iter().enumerate() {
                for (j, &x) in row.iter().enumerate() {
                    fm.set(i, j, field.from_base(x));
                }
            }
            out.push(fm);
        }
        Ok(FiniteFieldRep {
            dims,
            field,
            seed: None,
            maps: out,
        })
    }

    pub fn zero(q: &Quiver, dims: DimensionVector, p: u64) -> Result<Self> {
        q.check_len(dims.len())?;
        let field = Gf::prime(p)?;
        let maps = q
            .arrows()
            .iter()
            .map(|a| FeMatrix::zeros(dims[a.head] as usize, dims[a.tail] as usize))
            .collect();
        Ok(FiniteFieldRep {
            dims,
            field,
            seed: None,
            maps,
        })
    }

    pub fn dims(&self) -> &DimensionVector {
        &self.dims
    }

    pub fn prime(&self) -> u64 {
        self.field.characteristic()
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    pub fn field(&self) -> &Gf {
        &self.field
    }

    pub fn maps(&self) -> &[FeMatrix] {
        &self.maps
    }

    pub fn provenance(&self) -> RepProvenance {
        RepProvenance {
            prime: self.prime(),
            seed: self.seed,
            dims: self.dims.clone(),
        }
    }
}

/// Uniform random representation; entries are drawn arrow by arrow, row-major.
pub fn random_rep(q: &Quiver, beta: &DimensionVector, p: u64, seed: u64) -> Result<FiniteFieldRep> {
    q.check_len(beta.len())?;
    let field = Gf::prime(p)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let maps = q
        .arrows()
        .iter()
        .map(|a| {
            let (rows, cols) = (beta[a.head] as usize, beta[a.tail] as usize);
            let mut m = FeMatrix::zeros(rows, cols);
            for i in 0..rows {
                for j in 0..cols {
                    m.set(i, j, field.from_base(rng.gen_range(0..p)));
                }
            }
            m
        })
        .collect();
    Ok(FiniteFieldRep {
        dims: beta.clone(),
        field,
        seed: Some(seed),
        maps,
    })
}

/// Dimension of the space of morphisms `R -> S`: families `f(s)` with
/// `f(head) u_R(a) = u_S(a) f(tail)` for every arrow.
pub fn hom_dim(q: &Quiver, r: &FiniteFieldRep, s: &FiniteFieldRep) -> Result<u64> {
    if r.prime() != s.prime() {
        return Err(Error::FieldMismatch(r.prime(), s.prime()));
    }
    q.check_len(r.dims.len())?;
    q.check_len(s.dims.len())?;
    let f = &r.field;
    let n = q.num_vertices();
    // f(v) is dim_S(v) x dim_R(v); variable (v, i, j) at offset[v] + i * dim_R(v) + j
    let mut offset = vec![0usize; n + 1];
    for v in 0..n {
        offset[v + 1] = offset[v] + (s.dims[v] * r.dims[v]) as usize;
    }
    let nvars = offset[n];
    let var = |v: usize, i: usize, j: usize| offset[v] + i * r.dims[v] as usize + j;
    let mut rows: Vec<Vec<Fe>> = Vec::new();
    for (a, (ur, us)) in q.arrows().iter().zip(r.maps.iter().zip(&s.maps)) {
        let (h, t) = (a.head, a.tail);
        for i in 0..s.dims[h] as usize {
            for j in 0..r.dims[t] as usize {
                let mut row = vec![f.zero(); nvars];
                for k in 0..r.dims[h] as usize {
                    let c = var(h, i, k);
                    row[c] = f.add(&row[c], ur.get(k, j));
                }
                for k in 0..s.dims[t] as usize {
                    let c = var(t, k, j);
                    row[c] = f.sub(&row[c], us.get(i, k));
                }
                rows.push(row);
            }
        }
    }
    Ok(nvars as u64 - field::rank(f, &rows, nvars) as u64)
}
