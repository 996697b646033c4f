//! d_min surface over the gain plane, written as CSV.

use pnc::voronoi::{write_surface_csv, SurfaceMetric, VoronoiDiagram, Window};
use pnc::{GInt, ResidueField};

fn main() -> pnc::Result<()> {
    let diagram = VoronoiDiagram::from_field(&ResidueField::new(GInt::new(3, 0))?);
    let points = diagram.sample_surface(Window::square(2.0), 81, SurfaceMetric::Dmin)?;
    let edges = points.iter().filter(|p| p.on_edge).count();
    let peak = points.iter().map(|p| p.value).fold(0.0f64, f64::max);
    println!("{} points, {edges} on cell edges, max d_min {peak:.4}", points.len());

    let path = std::env::temp_dir().join("pnc_dmin_q3.csv");
    write_surface_csv(
        &points,
        std::fs::File::create(&path).map_err(|e| pnc::PncError::InvalidArgument(e.to_string()))?,
    )?;
    println!("wrote {}", path.display());

    let eta = num_complex::Complex64::new(0.5, 0.5);
    let (d, det) = diagram.rocd_dmin(eta);
    println!(
        "at eta = 0.5+0.5i: cell {}, d_min {d:.6} set by {det}",
        diagram.cell_of(eta)
    );
    Ok(())
}
