//! Faces of a cone, listed by codimension with their active inequalities.

use quiver_cones::{sigma_cone, DimensionVector, Quiver};

fn main() -> quiver_cones::Result<()> {
    let d4 = Quiver::from_edges(&["c", "p", "q", "r"], &[(1, 0), (2, 0), (3, 0)])?;
    let beta = DimensionVector::new(vec![2, 1, 1, 1]);
    let c = sigma_cone(&d4, &beta)?;
    println!("D4, beta = {beta}: {} inequalities", c.inequalities().len());
    for f in c.faces_up_to_codim(4) {
        let labels: Vec<String> = f.labels.iter().map(ToString::to_string).collect();
        println!(
            "  codim {} dim {} active {:?} rays {:?}  [{}]",
            f.codim,
            f.dim,
            f.active,
            f.rays.iter().map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")).collect::<Vec<_>>(),
            labels.join(" ")
        );
    }
    Ok(())
}
