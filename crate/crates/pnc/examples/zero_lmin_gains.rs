//! Zero-l_min channel gains, their optimal mappings and d_min.

use pnc::diffs::DiffSets;
use pnc::metrics::{d_min, dmin_at_gain, in_open_octant, optimal_mapping_at_gain, symmetric_gains, zero_lmin_gains};
use pnc::{GInt, ResidueField};

fn main() -> pnc::Result<()> {
    let field = ResidueField::new(GInt::new(3, 0))?;
    let sets = DiffSets::new(&field);
    let gains = zero_lmin_gains(&sets, 1.5)?;
    println!(
        "{:>18} {:>16} {:>10} {:>10} {:>10}",
        "eta", "char", "mapping", "1/|dA|", "brute"
    );
    for z in &gains {
        let eta = match z.gain.finite() {
            Some(v) => format!("{:.3}{:+.3}i", v.re, v.im),
            None => "inf".into(),
        };
        match optimal_mapping_at_gain(&z.cd, &field) {
            Ok(m) => {
                let brute = d_min(z.gain.finite().expect("finite"), m, &sets);
                println!(
                    "{eta:>18} {:>16} {:>10} {:>10.6} {brute:>10.6}",
                    z.cd.to_string(),
                    m.alpha.to_string(),
                    dmin_at_gain(&z.cd)
                );
            }
            Err(_) => println!("{eta:>18} {:>16} {:>10} {:>10.6}", z.cd.to_string(), "-", 0.0),
        }
    }

    let octant = gains
        .iter()
        .find(|z| in_open_octant(&z.cd))
        .expect("q = 3 has octant gains");
    println!("symmetric images of {}:", octant.cd);
    for s in symmetric_gains(&octant.cd)? {
        let v = s.gain.finite().expect("finite");
        println!("  {}  eta = {:.4}{:+.4}i", s.cd, v.re, v.im);
    }
    Ok(())
}
