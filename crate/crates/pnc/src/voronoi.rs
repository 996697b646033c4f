//! Weighted Voronoi partition of the gain plane over the characteristic
//! differences.

use std::collections::HashMap;
use std::io::Write;
use std::sync::OnceLock;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::diffs::{CharDifference, DiffSets};
use crate::error::{PncError, Result};
use crate::gaussint::GInt;
use crate::mapping::{clusters, NcMapping};
use crate::metrics::optimal_mapping_at_gain;
use crate::residue::ResidueField;

const EDGE_MARGIN: f64 = 1e-9;
const ORACLE_MARGIN: f64 = 1e-7;

/// `|dA·η + dB|`.
pub fn weighted_distance(cd: &CharDifference, eta: Complex64) -> f64 {
    (cd.da.to_complex() * eta + cd.db.to_complex()).norm()
}

/// `{η : a|η|² + 2·Re(η·c) + b = 0}`, the locus where two generators are
/// equidistant. Coefficients are exact.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bisector {
    pub a: i64,
    pub c: GInt,
    pub b: i64,
}

impl Bisector {
    pub fn new(p: &CharDifference, r: &CharDifference) -> Self {
        Bisector {
            a: p.da.norm() - r.da.norm(),
            c: p.da * p.db.conj() - r.da * r.db.conj(),
            b: p.db.norm() - r.db.norm(),
        }
    }

    /// `wd_p(η)² − wd_r(η)²`.
    pub fn eval(&self, eta: Complex64) -> f64 {
        let c = self.c.to_complex();
        self.a as f64 * eta.norm_sqr() + 2.0 * (eta * c).re + self.b as f64
    }

    fn is_null(&self) -> bool {
        self.a == 0 && self.c.is_zero()
    }

    /// Points satisfying both equations.
    fn intersect(&self, other: &Bisector) -> Vec<Complex64> {
        if self.is_null() || other.is_null() {
            return Vec::new();
        }
        if self.a == 0 && other.a == 0 {
            let (c1, c2) = (self.c.to_complex(), other.c.to_complex());
            let det = -c1.re * c2.im + c1.im * c2.re;
            if det == 0.0 {
                return Vec::new();
            }
            let (r1, r2) = (-self.b as f64 / 2.0, -other.b as f64 / 2.0);
            let x = (r1 * -c2.im - -c1.im * r2) / det;
            let y = (c1.re * r2 - c2.re * r1) / det;
            return vec![Complex64::new(x, y)];
        }
        let radical = Bisector {
            a: 0,
            c: GInt::from(other.a) * self.c - GInt::from(self.a) * other.c,
            b: other.a * self.b - self.a * other.b,
        };
        if radical.c.is_zero() {
            return Vec::new();
        }
        let circle = if self.a != 0 { self } else { other };
        match (circle.descriptor(), radical.descriptor()) {
            (EdgeDescriptor::Circle { center, radius }, EdgeDescriptor::Line { normal, offset }) => {
                line_circle(normal, offset, center, radius)
            }
            _ => unreachable!("radical axis is a line and the other curve a circle"),
        }
    }

    pub fn descriptor(&self) -> EdgeDescriptor {
        let c = self.c.to_complex();
        if self.a != 0 {
            let a = self.a as f64;
            let center = -c.conj() / a;
            let r2 = (c.norm_sqr() - a * self.b as f64) / (a * a);
            EdgeDescriptor::Circle {
                center,
                radius: r2.max(0.0).sqrt(),
            }
        } else {
            EdgeDescriptor::Line {
                normal: (c.re, -c.im),
                offset: -(self.b as f64) / 2.0,
            }
        }
    }
}

fn line_circle(normal: (f64, f64), offset: f64, center: Complex64, radius: f64) -> Vec<Complex64> {
    let len = normal.0.hypot(normal.1);
    let (nx, ny) = (normal.0 / len, normal.1 / len);
    let d = (offset / len) - (nx * center.re + ny * center.im);
    let foot = center + Complex64::new(nx, ny) * d;
    let h2 = radius * radius - d * d;
    let tol = 1e-12 * radius.max(1.0).powi(2);
    if h2 < -tol {
        return Vec::new();
    }
    let t = Complex64::new(-ny, nx);
    if h2 <= tol {
        return vec![foot];
    }
    let h = h2.sqrt();
    vec![foot + t * h, foot - t * h]
}

/// Geometry of the edge between two generators.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum EdgeDescriptor {
    /// Unequal weights.
    Circle { center: Complex64, radius: f64 },
    /// Equal weights: `normal.0·x + normal.1·y = offset`.
    Line { normal: (f64, f64), offset: f64 },
}

impl EdgeDescriptor {
    /// `(slope, intercept)` of a non-vertical line.
    pub fn slope_intercept(&self) -> Option<(f64, f64)> {
        match *self {
            EdgeDescriptor::Line { normal, offset } if normal.1 != 0.0 => {
                Some((-normal.0 / normal.1, offset / normal.1))
            }
            _ => None,
        }
    }

    /// Parameter of the point `p`: its angle on a circle, its signed
    /// position along a line.
    fn param(&self, p: Complex64) -> f64 {
        match *self {
            EdgeDescriptor::Circle { center, .. } => (p - center).arg(),
            EdgeDescriptor::Line { normal, .. } => {
                let len = normal.0.hypot(normal.1);
                (-normal.1 * p.re + normal.0 * p.im) / len
            }
        }
    }

    /// Point at parameter `t`.
    pub fn point(&self, t: f64) -> Complex64 {
        match *self {
            EdgeDescriptor::Circle { center, radius } => center + Complex64::from_polar(radius, t),
            EdgeDescriptor::Line { normal, offset } => {
                let len = normal.0.hypot(normal.1);
                let (nx, ny) = (normal.0 / len, normal.1 / len);
                Complex64::new(nx, ny) * (offset / len) + Complex64::new(-ny, nx) * t
            }
        }
    }
}

pub fn edge_descriptor(ci: &CharDifference, cj: &CharDifference) -> Result<EdgeDescriptor> {
    if ci.same_gain(cj) {
        return Err(PncError::AssociateGenerators);
    }
    Ok(Bisector::new(ci, cj).descriptor())
}

/// Adjacency of two Voronoi cells decided by the Q-criteria.
pub fn adjacent(ci: &CharDifference, cj: &CharDifference, sets: &DiffSets) -> Result<bool> {
    if ci.same_gain(cj) {
        return Err(PncError::AssociateGenerators);
    }
    let xi = ci.xi(cj);
    let sum = |u: GInt| (ci.da + u * cj.da, ci.db + u * cj.db);
    match xi.norm() {
        1 | 2 => {
            for u in GInt::UNITS {
                let (a, b) = sum(u);
                if !sets.in_q_pair(a, b)? {
                    return Ok(true);
                }
            }
            Ok(false)
        }
        5 => {
            // Normalized distance √5 never gives adjacent cells when |q| = √5.
            if sets.field().q().norm() == 5 {
                return Ok(false);
            }
            let xi_field = ResidueField::new(xi.canonical_associate())?;
            let mut hits = GInt::UNITS
                .iter()
                .map(|&u| sum(u))
                .filter(|&(a, b)| xi_field.is_zero_mod(a) && xi_field.is_zero_mod(b));
            let (a, b) = hits.next().expect("some unit annihilates both sums mod Ξ");
            debug_assert!(hits.next().is_none(), "the annihilating unit is unique");
            let phi = a.exact_div(xi).expect("Ξ divides the sum");
            let psi = b.exact_div(xi).expect("Ξ divides the sum");
            Ok(!sets.in_q_pair(phi, psi)?)
        }
        _ => Ok(false),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VoronoiCell {
    pub generator: CharDifference,
    pub optimal_mapping: Option<NcMapping>,
    pub adjacent: Vec<CharDifference>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Window {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
}

impl Window {
    pub fn square(radius: f64) -> Self {
        Window {
            re_min: -radius,
            re_max: radius,
            im_min: -radius,
            im_max: radius,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SurfaceMetric {
    Lmin,
    Dmin,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SurfacePoint {
    pub eta: Complex64,
    pub value: f64,
    /// `l_min` argmin or `d_min`-determining difference.
    pub generator: CharDifference,
    /// Within the tie margin of a cell boundary.
    pub on_edge: bool,
}

/// Generators, their optimal mappings and lazily computed adjacency lists.
#[derive(Debug)]
pub struct VoronoiDiagram {
    sets: DiffSets,
    index: HashMap<CharDifference, usize>,
    adjacency: Vec<OnceLock<Vec<usize>>>,
}

impl VoronoiDiagram {
    pub fn new(sets: DiffSets) -> Self {
        let index = sets
            .characteristic()
            .iter()
            .enumerate()
            .map(|(k, cd)| (*cd, k))
            .collect();
        let adjacency = (0..sets.characteristic().len()).map(|_| OnceLock::new()).collect();
        VoronoiDiagram { sets, index, adjacency }
    }

    pub fn from_field(field: &ResidueField) -> Self {
        VoronoiDiagram::new(DiffSets::new(field))
    }

    pub fn sets(&self) -> &DiffSets {
        &self.sets
    }

    pub fn field(&self) -> &ResidueField {
        self.sets.field()
    }

    pub fn generators(&self) -> &[CharDifference] {
        self.sets.characteristic()
    }

    pub fn index_of(&self, cd: &CharDifference) -> Option<usize> {
        self.index.get(cd).copied()
    }

    /// Indices of the cells adjacent to cell `i`.
    pub fn adjacent_to(&self, i: usize) -> &[usize] {
        self.adjacency[i].get_or_init(|| {
            let gens = self.generators();
            let g = gens[i];
            (0..gens.len())
                .filter(|&j| j != i && matches!(g.xi(&gens[j]).norm(), 1 | 2 | 5))
                .filter(|&j| adjacent(&g, &gens[j], &self.sets).expect("distinct generators"))
                .collect()
        })
    }

    pub fn cell(&self, i: usize) -> VoronoiCell {
        let generator = self.generators()[i];
        VoronoiCell {
            generator,
            optimal_mapping: optimal_mapping_at_gain(&generator, self.field()).ok(),
            adjacent: self.adjacent_to(i).iter().map(|&j| self.generators()[j]).collect(),
        }
    }

    /// Index of the nearest generator and whether the runner-up ties within
    /// the edge margin.
    pub fn locate(&self, eta: Complex64) -> (usize, bool) {
        let mut best = (f64::INFINITY, 0usize);
        let mut second = f64::INFINITY;
        for (k, cd) in self.generators().iter().enumerate() {
            let d = weighted_distance(cd, eta);
            if d < best.0 {
                second = best.0;
                best = (d, k);
            } else if d < second {
                second = d;
            }
        }
        (best.1, second - best.0 <= EDGE_MARGIN)
    }

    pub fn cell_of(&self, eta: Complex64) -> CharDifference {
        self.generators()[self.locate(eta).0]
    }

    /// `d_min` under the optimal mapping via removal of clustered
    /// differences, scanning only the cells adjacent to the cell of `eta`.
    pub fn rocd_dmin(&self, eta: Complex64) -> (f64, CharDifference) {
        let gens = self.generators();
        let (g_idx, _) = self.locate(eta);
        let g = gens[g_idx];
        if g.is_trivial() {
            return (weighted_distance(&g, eta), g);
        }
        let m = optimal_mapping_at_gain(&g, self.field()).expect("nontrivial generator");
        let mut best = (f64::INFINITY, g);
        let mut consider = |cd: &CharDifference| {
            let d = weighted_distance(cd, eta);
            if d < best.0 {
                best = (d, *cd);
            }
        };
        for &j in self.adjacent_to(g_idx) {
            consider(&gens[j]);
        }
        let at_generator = g.da.to_complex() * eta + g.db.to_complex() == Complex64::new(0.0, 0.0);
        if at_generator {
            for cd in gens {
                if g.xi(cd).norm() == 1 && !clusters(m, cd.da, cd.db, self.field()) {
                    consider(cd);
                }
            }
        }
        best
    }

    /// Geometric adjacency test: probe the edge between cells `i` and `j`
    /// at its crossings with every other bisector through cell `i`, at the
    /// midpoints between consecutive crossings and at `samples` evenly
    /// spaced points. True iff some probe has no third generator closer by
    /// more than the margin.
    pub fn adjacency_oracle(&self, i: usize, j: usize, samples: usize) -> bool {
        let gens = self.generators();
        let (gi, gj) = (gens[i], gens[j]);
        let edge = Bisector::new(&gi, &gj);
        let desc = edge.descriptor();
        let mut params: Vec<f64> = Vec::new();
        for (k, gk) in gens.iter().enumerate() {
            if k == i || k == j {
                continue;
            }
            for p in edge.intersect(&Bisector::new(&gi, gk)) {
                params.push(desc.param(p));
            }
        }
        params.sort_by(f64::total_cmp);
        let mut probes = params.clone();
        match desc {
            EdgeDescriptor::Circle { .. } => {
                let tau = std::f64::consts::TAU;
                for w in params.windows(2) {
                    probes.push(0.5 * (w[0] + w[1]));
                }
                if let (Some(&first), Some(&last)) = (params.first(), params.last()) {
                    probes.push(0.5 * (last + first + tau));
                }
                probes.extend((0..samples).map(|s| tau * s as f64 / samples as f64));
            }
            EdgeDescriptor::Line { .. } => {
                for w in params.windows(2) {
                    probes.push(0.5 * (w[0] + w[1]));
                }
                let lo = params.first().copied().unwrap_or(0.0);
                let hi = params.last().copied().unwrap_or(0.0);
                probes.extend([lo - 1.0, hi + 1.0]);
                let span = (hi - lo).abs() + 2.0;
                probes
                    .extend((0..samples).map(|s| lo - 1.0 + span * s as f64 / samples.max(2).saturating_sub(1) as f64));
            }
        }
        probes.into_iter().any(|t| {
            let eta = desc.point(t);
            let d = 0.5 * (weighted_distance(&gi, eta) + weighted_distance(&gj, eta));
            let margin = ORACLE_MARGIN * d.max(1.0);
            gens.iter()
                .enumerate()
                .all(|(k, gk)| k == i || k == j || weighted_distance(gk, eta) >= d - margin)
        })
    }

    /// Row-major grid over `window` (rows ascend in the imaginary part).
    pub fn sample_surface(
        &self,
        window: Window,
        resolution: usize,
        metric: SurfaceMetric,
    ) -> Result<Vec<SurfacePoint>> {
        let finite = [window.re_min, window.re_max, window.im_min, window.im_max]
            .iter()
            .all(|v| v.is_finite());
        if resolution < 2 || !finite || window.re_max <= window.re_min || window.im_max <= window.im_min {
            return Err(PncError::DegenerateWindow);
        }
        let step = |lo: f64, hi: f64, k: usize| lo + (hi - lo) * k as f64 / (resolution - 1) as f64;
        let rows: Vec<Vec<SurfacePoint>> = (0..resolution)
            .into_par_iter()
            .map(|r| {
                let im = step(window.im_min, window.im_max, r);
                (0..resolution)
                    .map(|c| {
                        let eta = Complex64::new(step(window.re_min, window.re_max, c), im);
                        let (g_idx, on_edge) = self.locate(eta);
                        let (value, generator) = match metric {
                            SurfaceMetric::Lmin => {
                                let g = self.generators()[g_idx];
                                (weighted_distance(&g, eta), g)
                            }
                            SurfaceMetric::Dmin => self.rocd_dmin(eta),
                        };
                        SurfacePoint {
                            eta,
                            value,
                            generator,
                            on_edge,
                        }
                    })
                    .collect()
            })
            .collect();
        Ok(rows.into_iter().flatten().collect())
    }
}

/// CSV with columns `eta_re, eta_im, value, gen_dA, gen_dB, on_edge`.
pub fn write_surface_csv<W: Write>(points: &[SurfacePoint], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["eta_re", "eta_im", "value", "gen_dA", "gen_dB", "on_edge"])?;
    for p in points {
        w.write_record([
            p.eta.re.to_string(),
            p.eta.im.to_string(),
            format!("{:.12}", p.value),
            p.generator.da.to_string(),
            p.generator.db.to_string(),
            p.on_edge.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}
