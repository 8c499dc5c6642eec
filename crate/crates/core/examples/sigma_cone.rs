//! H- and V-description of the cone of weights of semi-invariants.
//!
//! ```text
//! cargo run --example sigma_cone
//! cargo run --example sigma_cone -- examples/quivers/d4.toml 2,1,1,1
//! ```

use quiver_cones::cli::load_quiver;
use quiver_cones::{sigma_cone, DimensionVector, HomExt, Quiver};

fn show(name: &str, q: &Quiver, beta: &DimensionVector) -> quiver_cones::Result<()> {
    let c = sigma_cone(q, beta)?;
    let v = c.rays();
    println!("{name}, beta = {beta}");
    for i in c.facets() {
        let ineq = &c.inequalities()[i];
        let labels: Vec<String> = ineq.labels.iter().map(ToString::to_string).collect();
        println!("  facet {:?} . sigma <= 0   from {}", ineq.normal, labels.join(" "));
    }
    println!("  rays {:?}", v.rays_i64());
    println!(
        "  {} inequalities, cone dimension {}, pointed: {}, rational Schur: {}",
        c.inequalities().len(),
        c.cone_dim(),
        v.is_pointed(),
        HomExt::new(q).is_rational_schur_root(beta)?
    );
    Ok(())
}

fn main() -> quiver_cones::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    if let [file, beta] = args.as_slice() {
        let q = load_quiver(file)?;
        let entries = beta.split(',').map(|x| x.trim().parse().expect("integer entry")).collect();
        return show(file, &q, &DimensionVector::new(entries));
    }
    show("A2", &Quiver::linear(2), &DimensionVector::new(vec![1, 1]))?;
    show("A3", &Quiver::linear(3), &DimensionVector::new(vec![1, 1, 1]))?;
    show("K3", &Quiver::kronecker(3), &DimensionVector::new(vec![2, 3]))?;
    let d4 = Quiver::from_edges(&["c", "p", "q", "r"], &[(1, 0), (2, 0), (3, 0)])?;
    show("D4", &d4, &DimensionVector::new(vec![2, 1, 1, 1]))
}
