//! The convex region of component differences and the validity bounds.

use pnc::diffs::{component_differences, validity_bounds_check, ConvexRegion};
use pnc::{GInt, ResidueField};

fn main() -> pnc::Result<()> {
    for q in ["3", "4+i", "3+2i"] {
        let field = ResidueField::new(q.parse()?)?;
        let region = ConvexRegion::of_field(&field);
        let verts: Vec<String> = region.vertices().iter().map(|v| v.to_string()).collect();
        let lambda = component_differences(&field);
        let r = 2 * field.q().norm();
        let r = (r as f64).sqrt().ceil() as i64;
        let inside = (-r..=r)
            .flat_map(|re| (-r..=r).map(move |im| GInt::new(re, im)))
            .filter(|&g| region.contains(g))
            .count();
        let rep = validity_bounds_check(&field);
        println!(
            "q = {q}: hull [{}], {inside} lattice points inside, |Lambda| = {}, max norm {} <= {}: {}",
            verts.join(", "),
            lambda.len(),
            rep.max_norm,
            rep.necessary_bound,
            rep.holds()
        );
    }
    Ok(())
}
