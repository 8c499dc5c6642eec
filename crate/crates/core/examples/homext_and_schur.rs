//! Generic hom and ext by recursion and by sampling, Schur roots and the
//! canonical decomposition.

use quiver_cones::{DimensionVector, HomExt, Quiver, SamplingPolicy};

fn main() -> quiver_cones::Result<()> {
    let q = Quiver::kronecker(3);
    let he = HomExt::new(&q);
    let policy = SamplingPolicy::with_seed(1);
    let dv = |v: &[u32]| DimensionVector::new(v.to_vec());
    println!("K3 hom/ext (recursive | sampled)");
    for (a, b) in [(dv(&[1, 0]), dv(&[0, 1])), (dv(&[0, 1]), dv(&[1, 0])), (dv(&[1, 2]), dv(&[2, 1])), (dv(&[2, 3]), dv(&[2, 3]))] {
        let r = he.recursive(&a, &b)?;
        let s = he.generic_hom(&a, &b, &policy)?;
        println!("  {a} -> {b}: hom {} ext {} | hom {} ext {}", r.hom, r.ext, s.hom, s.ext);
    }
    println!("canonical decompositions");
    for (name, q, beta) in [
        ("A2", Quiver::linear(2), dv(&[2, 1])),
        ("K2", Quiver::kronecker(2), dv(&[3, 3])),
        ("K2", Quiver::kronecker(2), dv(&[2, 3])),
        ("K3", Quiver::kronecker(3), dv(&[3, 1])),
    ] {
        let he = HomExt::new(&q);
        let parts: Vec<String> = he.canonical_decomposition(&beta)?.iter().map(ToString::to_string).collect();
        println!(
            "  {name} {beta} = {}   Schur: {}, rational Schur: {}",
            parts.join(" + "),
            he.is_schur_root(&beta)?,
            he.is_rational_schur_root(&beta)?
        );
    }
    Ok(())
}
