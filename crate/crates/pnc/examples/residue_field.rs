//! Residue fields Z[i]/q: elements, reduction and the power normalization.

use pnc::{GInt, ResidueField};

fn main() -> pnc::Result<()> {
    for q in ["1+i", "2+i", "1+2i", "3", "3+2i", "4+i", "7", "11"] {
        let f = ResidueField::new(q.parse()?)?;
        println!("q = {q:<5} |Z[i]/q| = {:>3}  mu = {:.6}", f.size(), f.mu());
    }

    let f = ResidueField::new(GInt::new(2, 1))?;
    let els: Vec<String> = f.elements().iter().map(|w| w.to_string()).collect();
    println!("Z[i]/(2+i) = {{{}}}", els.join(", "));

    let f7 = ResidueField::new(GInt::new(7, 0))?;
    for w in ["8", "9i", "3+4i"] {
        let w: GInt = w.parse()?;
        println!("{w} mod 7 = {}", f7.reduce(w));
    }

    let f3 = ResidueField::new(GInt::new(3, 0))?;
    let x = GInt::new(1, 1);
    let inv = f3.inv(x)?;
    println!("in Z[i]/3: ({x})^-1 = {inv}, product = {}", f3.mul(x, inv));

    match ResidueField::new(GInt::new(2, 0)) {
        Ok(_) => unreachable!(),
        Err(e) => println!("q = 2: {e}"),
    }
    Ok(())
}
