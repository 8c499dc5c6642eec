//! Counting subrepresentations of random representations over finite fields.

use quiver_cones::oracle::{alpha_circ_beta, count_subreps_over, random_rep, CountPolicy, DEFAULT_BUDGET};
use quiver_cones::{DimensionVector, HomExt, Quiver};

fn main() -> quiver_cones::Result<()> {
    let dv = |v: &[u32]| DimensionVector::new(v.to_vec());
    for (name, q, alpha, beta) in [
        ("A2", Quiver::linear(2), dv(&[0, 1]), dv(&[1, 0])),
        ("A2", Quiver::linear(2), dv(&[1, 0]), dv(&[0, 1])),
        ("K2", Quiver::kronecker(2), dv(&[1, 1]), dv(&[1, 1])),
        ("K2", Quiver::kronecker(2), dv(&[0, 2]), dv(&[2, 0])),
        ("K3", Quiver::kronecker(3), dv(&[0, 1]), dv(&[1, 1])),
    ] {
        let he = HomExt::new(&q);
        let c = alpha_circ_beta(&he, &alpha, &beta, &CountPolicy::with_seed(3))?;
        println!("{name}: {alpha} o {beta} = {} ({:?}, infinite: {})", c.count, c.reason, c.infinite);
        for e in &c.evidence {
            println!("    p = {} counts over F_p, F_p^2: {:?}", e.prime, e.counts_by_degree);
        }
    }
    // a positive-dimensional family: points grow with the field
    let q = Quiver::kronecker(3);
    let r = random_rep(&q, &dv(&[1, 2]), 101, 9)?;
    let counts: Vec<u64> = (1..=2)
        .map(|k| count_subreps_over(&q, &r, &dv(&[0, 1]), k, DEFAULT_BUDGET))
        .collect::<Result<_, _>>()?;
    println!("K3: (0,1)-subrepresentations of a (1,2) representation over F_101, F_101^2: {counts:?}");
    Ok(())
}
