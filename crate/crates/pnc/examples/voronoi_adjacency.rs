//! Cell adjacency by the Q-criteria, checked against geometry.

use pnc::diffs::{CharDifference, DiffSets};
use pnc::voronoi::{adjacent, edge_descriptor, VoronoiDiagram};
use pnc::{GInt, ResidueField};

fn main() -> pnc::Result<()> {
    let diagram = VoronoiDiagram::from_field(&ResidueField::new(GInt::new(2, 1))?);
    let gens = diagram.generators();
    let mut agree = 0;
    let mut adj = 0;
    for i in 0..gens.len() {
        for j in i + 1..gens.len() {
            let by_q = adjacent(&gens[i], &gens[j], diagram.sets())?;
            agree += (by_q == diagram.adjacency_oracle(i, j, 64)) as usize;
            adj += by_q as usize;
        }
    }
    let total = gens.len() * (gens.len() - 1) / 2;
    println!("q = 2+i: {adj} of {total} pairs adjacent, oracle agrees on {agree}");

    let k = diagram
        .index_of(&CharDifference::normalized(GInt::new(1, 1), -GInt::I))
        .expect("generator");
    let cell = diagram.cell(k);
    println!(
        "cell {} (mapping {:?}) borders:",
        cell.generator,
        cell.optimal_mapping.map(|m| m.to_string())
    );
    for n in &cell.adjacent {
        println!("  {n}: {:?}", edge_descriptor(&cell.generator, n)?);
    }

    let f11 = ResidueField::new(GInt::new(11, 0))?;
    let sets = DiffSets::new(&f11);
    let a = CharDifference::from_kappa_tau(GInt::new(10, 9), GInt::new(1, -10));
    let b = CharDifference::from_kappa_tau(GInt::new(9, 8), GInt::new(1, -9));
    println!(
        "q = 11: {a} vs {b}, norm(Xi) = {}, adjacent = {}",
        a.xi(&b).norm(),
        adjacent(&a, &b, &sets)?
    );
    Ok(())
}
