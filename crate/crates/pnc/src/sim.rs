//! Monte-Carlo uplink of the two-way relay channel.
//!
//! Every trial draws from its own ChaCha8 stream keyed by `(seed, trial)`,
//! so error counts do not depend on how trials are split across threads.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::Serialize;

use crate::diffs::DiffSets;
use crate::error::{PncError, Result};
use crate::gaussint::GInt;
use crate::mapping::{canonical_mappings, nc_map, NcMapping};
use crate::metrics::{optimal_mapping_at_gain, DminOracle};
use crate::residue::ResidueField;
use crate::voronoi::VoronoiDiagram;

/// Per-node transmit power.
pub const POWER: f64 = 1.0;

pub fn modulate(w: GInt, field: &ResidueField) -> Result<Complex64> {
    if !field.contains(w) {
        return Err(PncError::NotAnElement(w, field.q()));
    }
    Ok(w.to_complex() / field.mu())
}

#[derive(Clone, Debug)]
pub struct ChannelConfig {
    field: ResidueField,
    h_a: Complex64,
    h_b: Complex64,
    snr_db: f64,
    /// Noiseless received points, indexed `a * size + b`.
    points: Vec<Complex64>,
}

impl ChannelConfig {
    pub fn new(field: &ResidueField, h_a: Complex64, h_b: Complex64, snr_db: f64) -> Result<Self> {
        if h_b.norm() == 0.0 {
            return Err(PncError::ZeroGain);
        }
        let amp = POWER.sqrt() / field.mu();
        let els = field.elements();
        let points = els
            .iter()
            .flat_map(|&wa| els.iter().map(move |&wb| (wa, wb)))
            .map(|(wa, wb)| (h_a * wa.to_complex() + h_b * wb.to_complex()) * amp)
            .collect();
        Ok(ChannelConfig {
            field: field.clone(),
            h_a,
            h_b,
            snr_db,
            points,
        })
    }

    pub fn field(&self) -> &ResidueField {
        &self.field
    }

    /// `η = h_A / h_B`.
    pub fn eta(&self) -> Complex64 {
        self.h_a / self.h_b
    }

    pub fn snr_db(&self) -> f64 {
        self.snr_db
    }

    pub fn with_snr_db(&self, snr_db: f64) -> Self {
        ChannelConfig { snr_db, ..self.clone() }
    }

    /// Complex noise variance `N0 = P / 10^(snr/10)`.
    pub fn noise_variance(&self) -> f64 {
        POWER / 10f64.powf(self.snr_db / 10.0)
    }

    pub fn received(&self, wa: GInt, wb: GInt) -> Option<Complex64> {
        let (a, b) = (self.field.index_of(wa)?, self.field.index_of(wb)?);
        Some(self.points[a * self.field.size() + b])
    }

    /// Maximum-likelihood joint symbol, ties to the first in sort order.
    pub fn detect_joint(&self, y: Complex64) -> (GInt, GInt) {
        let mut best = (f64::INFINITY, 0usize);
        for (k, p) in self.points.iter().enumerate() {
            let d = (y - p).norm_sqr();
            if d < best.0 {
                best = (d, k);
            }
        }
        let n = self.field.size();
        let els = self.field.elements();
        (els[best.1 / n], els[best.1 % n])
    }

    /// One trial: transmitted joint symbol and the ML decision.
    fn trial(&self, seed: u64, index: u64) -> ((GInt, GInt), (GInt, GInt)) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(index);
        let els = self.field.elements();
        let wa = els[rng.random_range(0..els.len())];
        let wb = els[rng.random_range(0..els.len())];
        let sigma = (self.noise_variance() / 2.0).sqrt();
        let zr: f64 = rng.sample(StandardNormal);
        let zi: f64 = rng.sample(StandardNormal);
        let y = self.received(wa, wb).expect("drawn from the field") + Complex64::new(zr, zi) * sigma;
        ((wa, wb), self.detect_joint(y))
    }
}

/// NC symbol of the ML joint decision.
pub fn decode_nc(y: Complex64, config: &ChannelConfig, m: NcMapping) -> GInt {
    let (wa, wb) = config.detect_joint(y);
    nc_map(m, wa, wb, config.field())
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SerEstimate {
    pub trials: u64,
    pub errors: u64,
    pub ser: f64,
    pub half_width_95: f64,
}

impl SerEstimate {
    pub fn new(trials: u64, errors: u64) -> Self {
        let ser = errors as f64 / trials as f64;
        SerEstimate {
            trials,
            errors,
            ser,
            half_width_95: 1.96 * (ser * (1.0 - ser) / trials as f64).sqrt(),
        }
    }
}

/// Error counts for several mappings under common random numbers.
fn count_errors(config: &ChannelConfig, mappings: &[NcMapping], trials: u64, seed: u64) -> Vec<u64> {
    let field = config.field();
    (0..trials)
        .into_par_iter()
        .fold(
            || vec![0u64; mappings.len()],
            |mut acc, t| {
                let ((wa, wb), (da, db)) = config.trial(seed, t);
                for (k, &m) in mappings.iter().enumerate() {
                    if nc_map(m, wa, wb, field) != nc_map(m, da, db, field) {
                        acc[k] += 1;
                    }
                }
                acc
            },
        )
        .reduce(
            || vec![0u64; mappings.len()],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        )
}

pub fn estimate_ser(config: &ChannelConfig, m: NcMapping, trials: u64, seed: u64) -> Result<SerEstimate> {
    if trials == 0 {
        return Err(PncError::InvalidArgument("trials must be at least 1".into()));
    }
    let errors = count_errors(config, &[m], trials, seed)[0];
    Ok(SerEstimate::new(trials, errors))
}

#[derive(Clone, Debug, Serialize)]
pub struct MappingRow {
    pub mapping: NcMapping,
    pub estimate: SerEstimate,
    pub dmin: f64,
    /// Largest brute-force `d_min` among the canonical mappings.
    pub dmin_argmax: bool,
    /// Cluster mapping of the Voronoi cell containing `η`.
    pub voronoi_optimal: bool,
}

/// Every canonical mapping simulated on the same draws.
pub fn compare_mappings(config: &ChannelConfig, trials: u64, seed: u64) -> Result<Vec<MappingRow>> {
    let sets = DiffSets::new(config.field());
    let oracle = DminOracle::new(&sets);
    let eta = config.eta();
    compare_with(config, trials, seed, &oracle, &VoronoiDiagram::new(sets), eta)
}

fn compare_with(
    config: &ChannelConfig,
    trials: u64,
    seed: u64,
    oracle: &DminOracle,
    diagram: &VoronoiDiagram,
    eta: Complex64,
) -> Result<Vec<MappingRow>> {
    if trials == 0 {
        return Err(PncError::InvalidArgument("trials must be at least 1".into()));
    }
    let field = config.field();
    let mappings = canonical_mappings(field);
    let dmins = oracle.all(eta);
    let (best_m, _) = oracle.best(eta);
    let voronoi = optimal_mapping_at_gain(&diagram.cell_of(eta), field).ok();
    let errors = count_errors(config, &mappings, trials, seed);
    Ok(mappings
        .iter()
        .zip(errors)
        .zip(dmins)
        .map(|((&m, e), (_, dmin))| MappingRow {
            mapping: m,
            estimate: SerEstimate::new(trials, e),
            dmin,
            dmin_argmax: m == best_m,
            voronoi_optimal: Some(m) == voronoi,
        })
        .collect())
}

/// `compare_mappings` at each SNR of a sweep, sharing the distance tables.
pub fn compare_sweep(
    config: &ChannelConfig,
    snrs_db: &[f64],
    trials: u64,
    seed: u64,
) -> Result<Vec<(f64, Vec<MappingRow>)>> {
    let sets = DiffSets::new(config.field());
    let oracle = DminOracle::new(&sets);
    let diagram = VoronoiDiagram::new(sets);
    let eta = config.eta();
    snrs_db
        .iter()
        .map(|&s| {
            Ok((
                s,
                compare_with(&config.with_snr_db(s), trials, seed, &oracle, &diagram, eta)?,
            ))
        })
        .collect()
}
