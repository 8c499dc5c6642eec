//! Exhaustive search over subrepresentations of a representation over a
//! finite field.
//!
//! Vertices are visited in topological order. At each vertex the images of
//! the already chosen subspaces under incoming arrows span a space `W`, and
//! only subspaces containing `W` are enumerated, as reduced echelon forms of
//! subspaces of the quotient by `W`. Every enumerated subspace counts as one
//! node against the budget.

use std::ops::ControlFlow;

use crate::error::{Error, Result};
use crate::field::{span, Fe, FeMatrix, Gf};
use crate::quiver::{DimensionVector, Quiver, Weight};

use super::rep::FiniteFieldRep;
use super::{CountEvidence, CountReason, SubrepCount};

pub const DEFAULT_BUDGET: u64 = 10_000_000;

struct Search<'a> {
    quiver: &'a Quiver,
    field: Gf,
    maps: Vec<FeMatrix>,
    dims: &'a DimensionVector,
    alpha: &'a DimensionVector,
    budget: u64,
    nodes: u64,
    chosen: Vec<Vec<Vec<Fe>>>,
}

impl<'a> Search<'a> {
    fn new(
        quiver: &'a Quiver,
        rep: &'a FiniteFieldRep,
        alpha: &'a DimensionVector,
        degree: usize,
        budget: u64,
    ) -> Result<Self> {
        quiver.check_len(alpha.len())?;
        if !alpha.le(rep.dims()) {
            return Err(Error::NotBelow {
                alpha: alpha.to_string(),
                beta: rep.dims().to_string(),
            });
        }
        let field = Gf::new(rep.prime(), degree)?;
        // entries of a prime-field matrix embed coefficientwise
        let maps = rep.maps().to_vec();
        Ok(Search {
            quiver,
            field,
            maps,
            dims: rep.dims(),
            alpha,
            budget,
            nodes: 0,
            chosen: vec![Vec::new(); quiver.num_vertices()],
        })
    }

    fn run(&mut self, visit: &mut dyn FnMut() -> ControlFlow<()>) -> Result<ControlFlow<()>> {
        self.descend(0, visit)
    }

    fn descend(
        &mut self,
        pos: usize,
        visit: &mut dyn FnMut() -> ControlFlow<()>,
    ) -> Result<ControlFlow<()>> {
        let order = self.quiver.topological_order();
        if pos == order.len() {
            return Ok(visit());
        }
        let v = order[pos];
        let n = self.dims[v] as usize;
        let want = self.alpha[v] as usize;
        let mut images = Vec::new();
        for (a, m) in self.quiver.arrows().iter().zip(&self.maps) {
            if a.head == v {
                for x in &self.chosen[a.tail] {
                    images.push(m.apply(&self.field, x));
                }
            }
        }
        let w = span(&self.field, &images, n);
        if w.dim() > want {
            return Ok(ControlFlow::Continue(()));
        }
        let free_cols: Vec<usize> = (0..n).filter(|c| !w.pivots.contains(c)).collect();
        let extra = want - w.dim();
        let field = self.field.clone();
        let mut flow = ControlFlow::Continue(());
        let mut err = None;
        let _ = for_each_subspace(&field, free_cols.len(), extra, &mut |basis| {
            self.nodes += 1;
            if self.nodes > self.budget {
                err = Some(Error::TooLarge {
                    what: format!("subrepresentation search for {}", self.alpha),
                    budget: self.budget,
                });
                return ControlFlow::Break(());
            }
            let mut full = w.rows.clone();
            for b in basis {
                let mut lifted = vec![field.zero(); n];
                for (c, x) in free_cols.iter().zip(b) {
                    lifted[*c] = *x;
                }
                full.push(lifted);
            }
            self.chosen[v] = full;
            match self.descend(pos + 1, visit) {
                Ok(ControlFlow::Continue(())) => ControlFlow::Continue(()),
                Ok(ControlFlow::Break(())) => {
                    flow = ControlFlow::Break(());
                    ControlFlow::Break(())
                }
                Err(e) => {
                    err = Some(e);
                    ControlFlow::Break(())
                }
            }
        });
        self.chosen[v].clear();
        match err {
            Some(e) => Err(e),
            None => Ok(flow),
        }
    }
}

/// Calls `visit` with a basis of every `d`-dimensional subspace of `F_q^m`,
/// each given once by its reduced echelon form.
pub fn for_each_subspace(
    f: &Gf,
    m: usize,
    d: usize,
    visit: &mut dyn FnMut(&[Vec<Fe>]) -> ControlFlow<()>,
) -> ControlFlow<()> {
    if d > m {
        return ControlFlow::Continue(());
    }
    let mut pivots = Vec::with_capacity(d);
    choose_pivots(f, m, d, 0, &mut pivots, visit)
}

fn choose_pivots(
    f: &Gf,
    m: usize,
    d: usize,
    from: usize,
    pivots: &mut Vec<usize>,
    visit: &mut dyn FnMut(&[Vec<Fe>]) -> ControlFlow<()>,
) -> ControlFlow<()> {
    if pivots.len() == d {
        return fill_free(f, m, pivots, visit);
    }
    let remaining = d - pivots.len();
    for c in from..=(m - remaining) {
        pivots.push(c);
        let flow = choose_pivots(f, m, d, c + 1, pivots, visit);
        pivots.pop();
        flow?;
    }
    ControlFlow::Continue(())
}

fn fill_free(
    f: &Gf,
    m: usize,
    pivots: &[usize],
    visit: &mut dyn FnMut(&[Vec<Fe>]) -> ControlFlow<()>,
) -> ControlFlow<()> {
    // free slot: (row, col) with col > pivot of row and col not a pivot
    let slots: Vec<(usize, usize)> = pivots
        .iter()
        .enumerate()
        .flat_map(|(r, &p)| ((p + 1)..m).filter(|c| !pivots.contains(c)).map(move |c| (r, c)))
        .collect();
    let mut basis: Vec<Vec<Fe>> = pivots
        .iter()
        .map(|&p| {
            let mut row = vec![f.zero(); m];
            row[p] = f.one();
            row
        })
        .collect();
    let q = f.order();
    let mut counter = vec![0u64; slots.len()];
    loop {
        visit(&basis)?;
        // odometer over q^slots
        let mut i = 0;
        loop {
            if i == slots.len() {
                return ControlFlow::Continue(());
            }
            counter[i] += 1;
            if counter[i] < q {
                let (r, c) = slots[i];
                basis[r][c] = element(f, counter[i]);
                break;
            }
            counter[i] = 0;
            let (r, c) = slots[i];
            basis[r][c] = f.zero();
            i += 1;
        }
    }
}

fn element(f: &Gf, mut n: u64) -> Fe {
    let p = f.characteristic();
    let mut e = f.zero();
    for c in e.iter_mut().take(f.degree()) {
        *c = n % p;
        n /= p;
    }
    e
}

/// Number of `alpha`-dimensional subrepresentations of `rep` over `F_{p^degree}`.
pub fn count_subreps_over(
    q: &Quiver,
    rep: &FiniteFieldRep,
    alpha: &DimensionVector,
    degree: usize,
    budget: u64,
) -> Result<u64> {
    let mut search = Search::new(q, rep, alpha, degree, budget)?;
    let mut count = 0u64;
    let _ = search.run(&mut || {
        count += 1;
        ControlFlow::Continue(())
    })?;
    Ok(count)
}

/// Single-sample raw count over the field of definition of `rep`.
pub fn count_subreps(
    q: &Quiver,
    rep: &FiniteFieldRep,
    alpha: &DimensionVector,
    budget: u64,
) -> Result<SubrepCount> {
    let raw = count_subreps_over(q, rep, alpha, 1, budget)?;
    let beta = rep
        .dims()
        .checked_sub(alpha)
        .expect("checked by the search");
    Ok(SubrepCount {
        alpha: alpha.clone(),
        beta,
        count: raw,
        infinite: false,
        reason: CountReason::RawSample,
        evidence: vec![CountEvidence {
            prime: rep.prime(),
            seed: rep.seed(),
            counts_by_degree: vec![raw],
            estimate: raw,
        }],
    })
}

/// Whether `rep` has some `alpha`-dimensional subrepresentation over `F_{p^degree}`.
pub fn has_subrep_over(
    q: &Quiver,
    rep: &FiniteFieldRep,
    alpha: &DimensionVector,
    degree: usize,
    budget: u64,
) -> Result<bool> {
    let mut search = Search::new(q, rep, alpha, degree, budget)?;
    let flow = search.run(&mut || ControlFlow::Break(()))?;
    Ok(flow.is_break())
}

/// King's criterion: `sigma(dim R) = 0` and `sigma(alpha) <= 0` for the
/// dimension vector of every subrepresentation of `R` over its field.
pub fn is_semistable(q: &Quiver, rep: &FiniteFieldRep, sigma: &Weight, budget: u64) -> Result<bool> {
    q.check_len(sigma.len())?;
    if sigma.apply(rep.dims()) != 0 {
        return Ok(false);
    }
    for alpha in rep.dims().sub_vectors() {
        if sigma.apply(&alpha) > 0 && has_subrep_over(q, rep, &alpha, 1, budget)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::rep::random_rep;

    fn dv(v: &[u32]) -> DimensionVector {
        DimensionVector::new(v.to_vec())
    }

    /// Gaussian binomial coefficient, computed independently of the search.
    fn gaussian_binomial(q: u64, m: u32, d: u32) -> u64 {
        let mut num = 1u64;
        let mut den = 1u64;
        for i in 0..d {
            num *= q.pow(m - i) - 1;
            den *= q.pow(i + 1) - 1;
        }
        num / den
    }

    #[test]
    fn subspace_counts_match_gaussian_binomials() {
        for (p, k) in [(2, 1), (3, 1), (2, 2), (5, 1)] {
            let f = Gf::new(p, k).unwrap();
            for m in 0..=4u32 {
                for d in 0..=m {
                    let mut n = 0;
                    let _ = for_each_subspace(&f, m as usize, d as usize, &mut |_| {
                        n += 1;
                        ControlFlow::Continue(())
                    });
                    assert_eq!(n, gaussian_binomial(f.order(), m, d), "q={} m={m} d={d}", f.order());
                }
            }
        }
    }

    #[test]
    fn count_examples_on_a2() {
        let a2 = Quiver::linear(2);
        let one = FiniteFieldRep::from_matrices(&a2, dv(&[1, 1]), 101, &[vec![vec![1]]]).unwrap();
        let zero = FiniteFieldRep::zero(&a2, dv(&[1, 1]), 101).unwrap();
        let c = |r, a: &[u32]| count_subreps(&a2, r, &dv(a), DEFAULT_BUDGET).unwrap().count;
        assert_eq!(c(&one, &[0, 1]), 1);
        assert_eq!(c(&one, &[1, 0]), 0);
        assert_eq!(c(&zero, &[1, 0]), 1);
        assert_eq!(c(&one, &[0, 0]), 1);
        assert_eq!(c(&one, &[1, 1]), 1);
    }

    #[test]
    fn zero_rep_counts_are_grassmannians() {
        let k2 = Quiver::kronecker(2);
        let zero = FiniteFieldRep::zero(&k2, dv(&[2, 2]), 3).unwrap();
        // P^1(F_3) x P^1(F_3)
        let n = count_subreps(&k2, &zero, &dv(&[1, 1]), DEFAULT_BUDGET).unwrap().count;
        assert_eq!(n, 16);
    }

    #[test]
    fn trivial_subreps_always_counted_once() {
        let q = Quiver::kronecker(3);
        let r = random_rep(&q, &dv(&[2, 3]), 101, 4).unwrap();
        assert_eq!(count_subreps(&q, &r, &dv(&[0, 0]), DEFAULT_BUDGET).unwrap().count, 1);
        assert_eq!(count_subreps(&q, &r, &dv(&[2, 3]), DEFAULT_BUDGET).unwrap().count, 1);
    }

    #[test]
    fn count_rejects_large_alpha_and_budget() {
        let a2 = Quiver::linear(2);
        let zero = FiniteFieldRep::zero(&a2, dv(&[1, 1]), 101).unwrap();
        assert!(matches!(
            count_subreps(&a2, &zero, &dv(&[2, 0]), DEFAULT_BUDGET),
            Err(Error::NotBelow { .. })
        ));
        let k2 = Quiver::kronecker(2);
        let zero = FiniteFieldRep::zero(&k2, dv(&[3, 3]), 101).unwrap();
        assert!(matches!(
            count_subreps(&k2, &zero, &dv(&[1, 1]), 1000),
            Err(Error::TooLarge { budget: 1000, .. })
        ));
    }

    #[test]
    fn semistability_examples() {
        let a2 = Quiver::linear(2);
        let one = FiniteFieldRep::from_matrices(&a2, dv(&[1, 1]), 101, &[vec![vec![1]]]).unwrap();
        let zero = FiniteFieldRep::zero(&a2, dv(&[1, 1]), 101).unwrap();
        let s = Weight::new(vec![1, -1]);
        assert!(is_semistable(&a2, &one, &s, DEFAULT_BUDGET).unwrap());
        assert!(!is_semistable(&a2, &zero, &s, DEFAULT_BUDGET).unwrap());
        assert!(is_semistable(&a2, &zero, &Weight::zero(2), DEFAULT_BUDGET).unwrap());
        assert!(!is_semistable(&a2, &one, &Weight::new(vec![1, 0]), DEFAULT_BUDGET).unwrap());
    }
}
