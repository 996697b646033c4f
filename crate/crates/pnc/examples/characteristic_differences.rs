//! Difference pairs and characteristic differences of Z[i]/3.

use pnc::diffs::{component_differences, difference_set, in_qq, DiffSets};
use pnc::{GInt, ResidueField};

fn main() -> pnc::Result<()> {
    let field = ResidueField::new(GInt::new(3, 0))?;
    let lambda = component_differences(&field);
    println!("|Lambda| = {}", lambda.len());
    let pairs = difference_set(&field);
    let nc = pairs.iter().filter(|p| p.nc_valid).count();
    println!("|Delta| = {}, NC-valid = {nc}", pairs.len());

    let sets = DiffSets::new(&field);
    println!(
        "{} characteristic differences; the first ten:",
        sets.characteristic().len()
    );
    for cd in sets.characteristic().iter().take(10) {
        match cd.eta0() {
            Some(eta) => println!("  {cd}  eta = {:.4}{:+.4}i", eta.re, eta.im),
            None => println!("  {cd}  eta = inf"),
        }
    }

    let f11 = ResidueField::new(GInt::new(11, 0))?;
    let (kappa, tau) = (GInt::new(11, 3), GInt::new(-3, -8));
    println!("({kappa}, {tau}) in Q_11: {}", in_qq(kappa, tau, &f11)?);
    Ok(())
}
