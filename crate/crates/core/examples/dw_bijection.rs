//! Faces of the cone against well-covering decompositions by rational Schur roots.

use quiver_cones::dw::{verify_dw, Circ, DEFAULT_ENUMERATION_BUDGET};
use quiver_cones::oracle::CountPolicy;
use quiver_cones::{DimensionVector, HomExt, Quiver};

fn main() -> quiver_cones::Result<()> {
    for (name, q, beta, s_max) in [
        ("A3", Quiver::linear(3), vec![1, 1, 1], 3),
        ("K2", Quiver::kronecker(2), vec![1, 1], 2),
        ("A2", Quiver::linear(2), vec![2, 1], 2),
    ] {
        let beta = DimensionVector::new(beta);
        let he = HomExt::new(&q);
        let circ = Circ::new(&he, CountPolicy::with_seed(7));
        let r = verify_dw(&circ, &beta, s_max, DEFAULT_ENUMERATION_BUDGET)?;
        println!("{name}, beta = {beta}: bijective = {}", r.bijective());
        for st in &r.steps {
            println!("  s = {}: {} faces of codimension {}", st.s, st.faces.len(), st.s);
            for set in &st.sets {
                let parts: Vec<String> = set.parts.iter().map(ToString::to_string).collect();
                let cert = set.certificate.as_ref().map(ToString::to_string).unwrap_or_default();
                println!("    {{{}}} via {cert} -> face {:?} with rays {:?}", parts.join(", "), set.face_index, set.face.rays);
            }
            for rej in &st.rejected {
                let parts: Vec<String> = rej.parts.iter().map(ToString::to_string).collect();
                let counts: Vec<u64> = rej.failures.iter().map(|(_, c)| c.count).collect();
                println!("    rejected {{{}}}: counts {counts:?}", parts.join(", "));
            }
            for (what, v) in [("injective", &st.injective), ("surjective", &st.surjective), ("well defined", &st.well_defined)] {
                if !v.holds() {
                    println!("    {what}: {v:?}");
                }
            }
        }
    }
    Ok(())
}
