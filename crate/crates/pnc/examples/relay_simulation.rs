//! Monte-Carlo SER at the relay for every canonical mapping.

use num_complex::Complex64;
use pnc::sim::{compare_mappings, ChannelConfig};
use pnc::{GInt, ResidueField};

fn main() -> pnc::Result<()> {
    let field = ResidueField::new(GInt::new(2, 1))?;
    let config = ChannelConfig::new(&field, Complex64::new(1.1, 1.0), Complex64::new(1.0, 0.0), 12.0)?;
    println!("q = 2+i, eta = 1.1+i, SNR 12 dB, 200000 trials");
    println!(
        "{:>8} {:>10} {:>10} {:>8} {:>8}",
        "alpha", "ser", "ci95", "d_min", "voronoi"
    );
    for row in compare_mappings(&config, 200_000, 7)? {
        println!(
            "{:>8} {:>10.6} {:>10.6} {:>8.3} {:>8}",
            row.mapping.alpha.to_string(),
            row.estimate.ser,
            row.estimate.half_width_95,
            row.dmin,
            if row.voronoi_optimal { "*" } else { "" }
        );
    }
    Ok(())
}
