//! Coset partitions of the joint symbols and mapping isomorphism.

use pnc::mapping::{canonicalize, clustered_set, cosets, isomorphic, recover_partner, NcMapping, Side};
use pnc::{GInt, ResidueField};

fn main() -> pnc::Result<()> {
    let field = ResidueField::new(GInt::new(2, 1))?;
    let m = NcMapping::new(GInt::I, -GInt::I, &field)?;
    let part = cosets(m, &field);
    println!("mapping {m} over Z[i]/(2+i):");
    for class in &part.classes {
        let members: Vec<String> = class.members.iter().map(|(a, b)| format!("({a},{b})")).collect();
        println!("  w_N = {:>2}: {}", class.nc_symbol.to_string(), members.join(" "));
    }

    let cl: Vec<String> = clustered_set(m, &field)
        .iter()
        .map(|(a, b)| format!("({a},{b})"))
        .collect();
    println!("clustered differences: {}", cl.join(" "));

    let canon = canonicalize(m, &field);
    println!(
        "canonical form of {m}: {canon}, isomorphic: {}",
        isomorphic(m, canon, &field)
    );

    let other = NcMapping::new(GInt::ONE, -GInt::I, &field)?;
    println!("{m} ~ {other}: {}", isomorphic(m, other, &field));

    let (wa, wb) = (GInt::new(0, 1), GInt::new(-1, 0));
    let wn = pnc::mapping::nc_map(m, wa, wb, &field);
    println!(
        "A sent {wa}, B sent {wb}, relay broadcasts {wn}; A recovers {}, B recovers {}",
        recover_partner(wn, m, wa, Side::A, &field),
        recover_partner(wn, m, wb, Side::B, &field)
    );
    Ok(())
}
