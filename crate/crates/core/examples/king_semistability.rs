//! King semistability of random representations against cone membership.

use quiver_cones::linalg::int_vec;
use quiver_cones::oracle::{is_semistable, random_rep, DEFAULT_BUDGET};
use quiver_cones::{sigma_cone, DimensionVector, Quiver, Weight};

fn main() -> quiver_cones::Result<()> {
    let q = Quiver::kronecker(3);
    let beta = DimensionVector::new(vec![2, 3]);
    let cone = sigma_cone(&q, &beta)?;
    println!("K3, beta = {beta}, rays {:?}", cone.rays().rays_i64());
    for a in -4i64..=4 {
        // sigma(beta) = 2a + 3b = 0
        if a % 3 != 0 {
            continue;
        }
        let sigma = Weight::new(vec![a, -2 * a / 3]);
        let member = cone.contains(&int_vec(sigma.entries()));
        let stable: Vec<bool> = (0..3)
            .map(|t| is_semistable(&q, &random_rep(&q, &beta, 101, t)?, &sigma, DEFAULT_BUDGET))
            .collect::<Result<_, _>>()?;
        println!("  sigma {sigma}: in cone {member}, semistable samples {stable:?}");
    }
    Ok(())
}
