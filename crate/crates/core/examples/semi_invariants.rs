//! Weights of semi-invariant polynomials by degree, and the cone they span.

use quiver_cones::cone::HCone;
use quiver_cones::linalg::{int_vec, primitive};
use quiver_cones::oracle::{si_weights_by_degree, DEFAULT_MONOMIAL_BUDGET};
use quiver_cones::{sigma_cone, DimensionVector, Quiver};

fn main() -> quiver_cones::Result<()> {
    for (name, q, beta, dmax) in [
        ("K2", Quiver::kronecker(2), vec![2, 2], 4),
        ("A3", Quiver::linear(3), vec![1, 1, 1], 3),
        ("K3", Quiver::kronecker(3), vec![1, 1], 2),
    ] {
        let beta = DimensionVector::new(beta);
        let weights = si_weights_by_degree(&q, &beta, dmax, DEFAULT_MONOMIAL_BUDGET)?;
        println!("{name}, beta = {beta}");
        for w in &weights {
            println!("  degree {} weight {} dimension {}", w.degree, w.sigma, w.dim);
        }
        let gens: Vec<_> = weights.iter().map(|w| primitive(int_vec(w.sigma.entries()))).collect();
        let spanned = HCone::generated_by(q.num_vertices(), &gens)?;
        let sigma = sigma_cone(&q, &beta)?;
        println!("  spanned rays {:?}, cone rays {:?}", spanned.rays().rays_i64(), sigma.rays().rays_i64());
    }
    Ok(())
}
