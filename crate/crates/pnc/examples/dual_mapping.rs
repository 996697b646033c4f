//! The vector formulation over Z_q x Z_q and its dual mapping.

use pnc::mapping::{mapping_from_cluster, vector_dual_mapping};
use pnc::{GInt, ResidueField};

fn main() -> pnc::Result<()> {
    let da = GInt::new(1, 1);
    match vector_dual_mapping(2, da, GInt::ONE)? {
        Some(d) => println!("q = 2: {:?}", d.matrix()),
        None => println!("q = 2, dA = {da}: no dual mapping, (1 + 1) = 0 mod 2"),
    }

    for q in [3i64, 7] {
        let field = ResidueField::new(GInt::new(q, 0))?;
        for (da, db) in [(GInt::new(1, 1), -GInt::ONE), (GInt::new(2, -1), GInt::new(1, 2))] {
            let d = vector_dual_mapping(q, da, db)?.expect("norm(dA) is nonzero mod q");
            let m = mapping_from_cluster(da, db, &field)?;
            println!(
                "q = {q}, ({da}, {db}): matrix {:?}, complex form {}, from clustering {}",
                d.matrix(),
                d.complex_form(&field),
                m.alpha
            );
        }
    }

    let field = ResidueField::new(GInt::new(1, 2))?;
    let m = mapping_from_cluster(GInt::new(1, 1), GInt::ONE, &field)?;
    println!("q = 1+2i handles dA = 1+i directly: {m}");
    Ok(())
}
