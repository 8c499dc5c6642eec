//! Arithmetic in `F_q`, `q = p^k` with `k <= 3`, and the small amount of
//! linear algebra the oracles need over it.

use crate::error::{Error, Result};

pub const MAX_DEGREE: usize = 3;

/// Element of `F_{p^k}` as coefficients of `1, x, x^2` modulo a fixed
/// irreducible polynomial. Unused high coefficients are zero.
pub type Fe = [u64; MAX_DEGREE];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gf {
    p: u64,
    degree: usize,
    /// `x^k = -(m_0 + m_1 x + ... + m_{k-1} x^{k-1})`
    modulus: [u64; MAX_DEGREE],
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl Gf {
    /// The field with `p^degree` elements. Primes must stay below `2^31` so
    /// that products fit in 64 bits.
    pub fn new(p: u64, degree: usize) -> Result<Self> {
        if !is_prime(p) || p >= 1 << 31 {
            return Err(Error::BadPrime(p));
        }
        if degree == 0 || degree > MAX_DEGREE {
            return Err(Error::Budget(format!(
                "extension degree {degree} outside 1..={MAX_DEGREE}"
            )));
        }
        let modulus = match degree {
            1 => [0; MAX_DEGREE],
            _ => find_irreducible(p, degree),
        };
        Ok(Gf { p, degree, modulus })
    }

    pub fn prime(p: u64) -> Result<Self> {
        Gf::new(p, 1)
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> u64 {
        self.p.pow(self.degree as u32)
    }

    pub fn zero(&self) -> Fe {
        [0; MAX_DEGREE]
    }

    pub fn one(&self) -> Fe {
        self.from_base(1)
    }

    /// Embeds an element of the prime field.
    pub fn from_base(&self, c: u64) -> Fe {
        let mut e = [0; MAX_DEGREE];
        e[0] = c % self.p;
        e
    }

    pub fn is_zero(&self, a: &Fe) -> bool {
        a.iter().all(|&c| c == 0)
    }

    pub fn add(&self, a: &Fe, b: &Fe) -> Fe {
        let mut r = [0; MAX_DEGREE];
        for i in 0..self.degree {
            r[i] = (a[i] + b[i]) % self.p;
        }
        r
    }

    pub fn sub(&self, a: &Fe, b: &Fe) -> Fe {
        let mut r = [0; MAX_DEGREE];
        for i in 0..self.degree {
            r[i] = (a[i] + self.p - b[i]) % self.p;
        }
        r
    }

    pub fn neg(&self, a: &Fe) -> Fe {
        self.sub(&self.zero(), a)
    }

    pub fn mul(&self, a: &Fe, b: &Fe) -> Fe {
        let p = self.p;
        if self.degree == 1 {
            return [a[0] * b[0] % p, 0, 0];
        }
        let k = self.degree;
        let mut prod = [0u64; 2 * MAX_DEGREE - 1];
        for i in 0..k {
            if a[i] == 0 {
                continue;
            }
            for j in 0..k {
                prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
            }
        }
        for d in (k..2 * k - 1).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            prod[d] = 0;
            for i in 0..k {
                let sub = c * self.modulus[i] % p;
                prod[d - k + i] = (prod[d - k + i] + p - sub) % p;
            }
        }
        let mut r = [0; MAX_DEGREE];
        r[..k].copy_from_slice(&prod[..k]);
        r
    }

    pub fn pow(&self, a: &Fe, mut e: u64) -> Fe {
        let mut base = *a;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self, a: &Fe) -> Fe {
        assert!(!self.is_zero(a), "inverse of zero");
        self.pow(a, self.order() - 2)
    }

    /// All `q` elements, in base-`p` counting order.
    pub fn elements(&self) -> impl Iterator<Item = Fe> + '_ {
        (0..self.order()).map(move |mut n| {
            let mut e = [0; MAX_DEGREE];
            for c in e.iter_mut().take(self.degree) {
                *c = n % self.p;
                n /= self.p;
            }
            e
        })
    }
}

/// Smallest monic irreducible polynomial of degree 2 or 3 in counting order;
/// at these degrees irreducible means rootless.
fn find_irreducible(p: u64, degree: usize) -> [u64; MAX_DEGREE] {
    let total = p.pow(degree as u32);
    for n in 0..total {
        let mut m = [0; MAX_DEGREE];
        let mut t = n;
        for c in m.iter_mut().take(degree) {
            *c = t % p;
            t /= p;
        }
        if m[0] == 0 {
            continue;
        }
        let has_root = (0..p).any(|x| {
            // x^k + m_{k-1} x^{k-1} + ... + m_0
            let mut v = 1u64;
            for i in (0..degree).rev() {
                v = (v * x + m[i]) % p;
            }
            v == 0
        });
        if !has_root {
            return m;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

/// Row echelon basis of a subspace of `F_q^n`.
#[derive(Clone, Debug)]
pub struct Span {
    pub rows: Vec<Vec<Fe>>,
    pub pivots: Vec<usize>,
}

impl Span {
    pub fn dim(&self) -> usize {
        self.rows.len()
    }
}

/// Reduced row echelon form of the span of `vectors` (each of length `n`).
pub fn span(f: &Gf, vectors: &[Vec<Fe>], n: usize) -> Span {
    let mut m: Vec<Vec<Fe>> = vectors.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !f.is_zero(&m[i][c])) else {
            continue;
        };
        m.swap(r, p);
        let inv = f.inv(&m[r][c]);
        for x in m[r].iter_mut() {
            *x = f.mul(x, &inv);
        }
        for i in 0..m.len() {
            if i != r && !f.is_zero(&m[i][c]) {
                let fac = m[i][c];
                for j in 0..n {
                    let d = f.mul(&fac, &m[r][j]);
                    m[i][j] = f.sub(&m[i][j], &d);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    Span { rows: m, pivots }
}

/// Rank of a `rows x cols` matrix given row-major.
pub fn rank(f: &Gf, rows: &[Vec<Fe>], cols: usize) -> usize {
    span(f, rows, cols).dim()
}

/// Matrix over a field, row-major, `rows x cols`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FeMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Fe>,
}

impl FeMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        FeMatrix {
            rows,
            cols,
            data: vec![[0; MAX_DEGREE]; rows * cols],
        }
    }

    pub fn get(&self, r: usize, c: usize) -> &Fe {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Fe) {
        self.data[r * self.cols + c] = v;
    }

    pub fn apply(&self, f: &Gf, x: &[Fe]) -> Vec<Fe> {
        (0..self.rows)
            .map(|r| {
                (0..self.cols).fold(f.zero(), |acc, c| {
                    f.add(&acc, &f.mul(self.get(r, c), &x[c]))
                })
            })
            .collect()
    }
}
