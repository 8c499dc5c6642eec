//! The deterministic recursions checked against brute force over finite fields.

use quiver_cones::oracle::{
    count_subreps, count_subreps_over, has_subrep_over, hom_dim, random_rep, DEFAULT_BUDGET,
};
use quiver_cones::{sigma_cone, DimensionVector, HomExt, Quiver, SamplingPolicy};

fn dv(v: &[u32]) -> DimensionVector {
    DimensionVector::new(v.to_vec())
}

fn small_cases() -> Vec<(Quiver, DimensionVector)> {
    vec![
        (Quiver::kronecker(2), dv(&[2, 2])),
        (Quiver::kronecker(3), dv(&[2, 2])),
        (Quiver::linear(3), dv(&[2, 2, 2])),
        (Quiver::from_edges(&["x", "y", "z"], &[(1, 0), (1, 2)]).unwrap(), dv(&[1, 2, 1])),
    ]
}

#[test]
fn generic_subdimensions_match_subrepresentations_of_random_representations() {
    let p = 101;
    for (q, top) in small_cases() {
        let he = HomExt::new(&q);
        for beta in top.sub_vectors() {
            let reps: Vec<_> = (0..3)
                .map(|t| random_rep(&q, &beta, p, 900 + t).unwrap())
                .collect();
            for alpha in beta.sub_vectors() {
                let generic = he.is_generic_subdim(&alpha, &beta).unwrap();
                let found: Vec<bool> = reps
                    .iter()
                    .map(|r| {
                        has_subrep_over(&q, r, &alpha, 1, DEFAULT_BUDGET).unwrap()
                            || has_subrep_over(&q, r, &alpha, 2, DEFAULT_BUDGET).unwrap()
                    })
                    .collect();
                if generic {
                    assert!(found.iter().all(|&f| f), "{alpha} in {beta}: {found:?}");
                } else {
                    let rational: usize = reps
                        .iter()
                        .filter(|r| has_subrep_over(&q, r, &alpha, 1, DEFAULT_BUDGET).unwrap())
                        .count();
                    assert!(rational <= 1, "{alpha} in {beta}: {rational} of 3 samples have one");
                }
            }
        }
    }
}

#[test]
fn schur_roots_have_trivial_endomorphisms() {
    for (q, top) in small_cases() {
        let he = HomExt::new(&q);
        for beta in top.sub_vectors().filter(|b| !b.is_zero()) {
            let schur = he.is_schur_root(&beta).unwrap();
            for t in 0..2 {
                let r = random_rep(&q, &beta, 32003, 77 + t).unwrap();
                let end = hom_dim(&q, &r, &r).unwrap();
                assert_eq!(end == 1, schur, "{beta}: dim End = {end}");
            }
        }
    }
}

#[test]
fn canonical_decomposition_predicts_endomorphism_dimension() {
    let mut cases = small_cases();
    cases.push((Quiver::kronecker(2), dv(&[3, 3])));
    cases.push((Quiver::kronecker(3), dv(&[3, 3])));
    for (q, top) in cases {
        let he = HomExt::new(&q);
        for beta in top.sub_vectors().filter(|b| !b.is_zero()) {
            let parts = he.canonical_decomposition(&beta).unwrap();
            // a general representation is a direct sum of independent general
            // representations of the parts, each with scalar endomorphisms
            let mut predicted = parts.len() as u64;
            for (i, a) in parts.iter().enumerate() {
                for (j, b) in parts.iter().enumerate() {
                    if i != j {
                        predicted += he.recursive(a, b).unwrap().hom;
                    }
                }
            }
            let r = random_rep(&q, &beta, 32003, 5).unwrap();
            assert_eq!(hom_dim(&q, &r, &r).unwrap(), predicted, "{beta} = {parts:?}");
        }
    }
}

#[test]
fn canonical_decomposition_is_unique() {
    for (q, top) in small_cases() {
        let he = HomExt::new(&q);
        for beta in top.sub_vectors().filter(|b| !b.is_zero()) {
            let found = he.canonical_decomposition_candidates(&beta, 2).unwrap();
            assert_eq!(found.len(), 1, "{beta}: {found:?}");
        }
    }
}

#[test]
fn sampled_hom_bounds_and_monotonicity() {
    let q = Quiver::kronecker(3);
    let he = HomExt::new(&q);
    for a in dv(&[2, 2]).sub_vectors() {
        for b in dv(&[2, 2]).sub_vectors() {
            let few = he
                .generic_hom(&a, &b, &SamplingPolicy { trials: 1, primes: vec![101], seed: 3 })
                .unwrap();
            let many = he
                .generic_hom(&a, &b, &SamplingPolicy { trials: 4, primes: vec![101], seed: 3 })
                .unwrap();
            assert!(many.hom <= few.hom);
            let euler = q.euler_form(&a, &b).unwrap();
            assert!(many.samples.iter().all(|s| s.hom as i64 >= euler));
        }
    }
}

#[test]
fn trivial_subrepresentations_are_unique() {
    for (q, beta) in small_cases() {
        let r = random_rep(&q, &beta, 101, 1).unwrap();
        let n = q.num_vertices();
        assert_eq!(count_subreps(&q, &r, &DimensionVector::zero(n), DEFAULT_BUDGET).unwrap().count, 1);
        assert_eq!(count_subreps(&q, &r, &beta, DEFAULT_BUDGET).unwrap().count, 1);
    }
}

#[test]
fn infinite_families_grow_with_the_field() {
    // K3: alpha = (0,1), beta = (1,1): ext vanishes, Euler form is 1
    let q = Quiver::kronecker(3);
    let he = HomExt::new(&q);
    let (alpha, beta) = (dv(&[0, 1]), dv(&[1, 1]));
    assert_eq!(he.ext_recursive(&alpha, &beta).unwrap(), 0);
    assert_eq!(q.euler_form(&alpha, &beta).unwrap(), 1);
    let r = random_rep(&q, &alpha.add(&beta), 101, 2).unwrap();
    let c1 = count_subreps_over(&q, &r, &alpha, 1, DEFAULT_BUDGET).unwrap();
    let c2 = count_subreps_over(&q, &r, &alpha, 2, DEFAULT_BUDGET).unwrap();
    assert_eq!((c1, c2), (102, 101 * 101 + 1));
}

#[test]
fn rational_schur_roots_have_full_dimensional_cones() {
    for (q, top) in small_cases() {
        let he = HomExt::new(&q);
        let n = q.num_vertices();
        for beta in top.sub_vectors() {
            if beta.entries().contains(&0) {
                continue;
            }
            let rs = he.is_rational_schur_root(&beta).unwrap();
            let dim = sigma_cone(&q, &beta).unwrap().cone_dim();
            assert_eq!(rs, dim == n - 1, "{beta}: cone dim {dim}");
            for k in [2, 3] {
                assert_eq!(he.is_rational_schur_root(&beta.scale(k)).unwrap(), rs);
            }
        }
    }
}
