//! Run every oracle suite on a small field.

use pnc::verify::{verify, Suite};
use pnc::{GInt, ResidueField};

fn main() -> pnc::Result<()> {
    let q: GInt = std::env::args().nth(1).unwrap_or_else(|| "2+i".into()).parse()?;
    let field = ResidueField::new(q)?;
    for r in verify(&field, Suite::All) {
        println!("{} {}", if r.pass { "PASS" } else { "FAIL" }, r.suite);
        for d in r.details.iter().take(4) {
            println!("    {d}");
        }
    }
    Ok(())
}
