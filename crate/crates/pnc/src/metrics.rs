//! Distances over the channel-gain plane: `l_min`, `d_min`, zero-`l_min`
//! gains and the closed forms at those gains.

use num_complex::Complex64;
use serde::Serialize;

use crate::diffs::{CharDifference, DiffSets};
use crate::error::{PncError, Result};
use crate::gaussint::GInt;
use crate::mapping::{canonical_mappings, clusters, mapping_from_cluster, NcMapping};
use crate::residue::ResidueField;

/// The normalized gain `η = h_A / h_B`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum ChannelGain {
    Finite(Complex64),
    /// `η = ε·∞` for a unit `ε`.
    Infinite {
        direction: GInt,
    },
}

impl ChannelGain {
    pub fn finite(&self) -> Option<Complex64> {
        match *self {
            ChannelGain::Finite(v) => Some(v),
            ChannelGain::Infinite { .. } => None,
        }
    }
}

/// `|η·dA + dB|`.
pub fn pair_distance(eta: Complex64, da: GInt, db: GInt) -> f64 {
    (eta * da.to_complex() + db.to_complex()).norm()
}

/// Minimum over the characteristic set, ties broken by the generator order.
pub fn l_min(eta: Complex64, sets: &DiffSets) -> (f64, CharDifference) {
    let mut best = (f64::INFINITY, CharDifference::ETA_ZERO);
    for cd in sets.characteristic() {
        let d = pair_distance(eta, cd.da, cd.db);
        if d < best.0 {
            best = (d, *cd);
        }
    }
    best
}

/// Brute-force minimum over every pair of Δ not clustered by `m`.
pub fn d_min(eta: Complex64, m: NcMapping, sets: &DiffSets) -> f64 {
    let field = sets.field();
    sets.delta()
        .filter(|&(da, db)| !clusters(m, da, db, field))
        .map(|(da, db)| pair_distance(eta, da, db))
        .fold(f64::INFINITY, f64::min)
}

/// Pairs of Δ not clustered by each canonical mapping, for repeated
/// brute-force `d_min` evaluation.
#[derive(Clone, Debug)]
pub struct DminOracle {
    rows: Vec<(NcMapping, Vec<(Complex64, Complex64)>)>,
}

impl DminOracle {
    pub fn new(sets: &DiffSets) -> Self {
        let field = sets.field();
        let rows = canonical_mappings(field)
            .into_iter()
            .map(|m| {
                let pairs = sets
                    .delta()
                    .filter(|&(da, db)| !clusters(m, da, db, field))
                    .map(|(da, db)| (da.to_complex(), db.to_complex()))
                    .collect();
                (m, pairs)
            })
            .collect();
        DminOracle { rows }
    }

    pub fn mappings(&self) -> impl Iterator<Item = NcMapping> + '_ {
        self.rows.iter().map(|(m, _)| *m)
    }

    /// `d_min` under each canonical mapping, in mapping order.
    pub fn all(&self, eta: Complex64) -> Vec<(NcMapping, f64)> {
        self.rows
            .iter()
            .map(|(m, pairs)| {
                let d = pairs
                    .iter()
                    .map(|&(a, b)| (eta * a + b).norm())
                    .fold(f64::INFINITY, f64::min);
                (*m, d)
            })
            .collect()
    }

    /// The first canonical mapping attaining the largest `d_min`.
    pub fn best(&self, eta: Complex64) -> (NcMapping, f64) {
        let mut best: Option<(NcMapping, f64)> = None;
        for (m, d) in self.all(eta) {
            if best.is_none_or(|(_, b)| d > b) {
                best = Some((m, d));
            }
        }
        best.expect("at least one canonical mapping")
    }
}

/// Argmax of `d_min` over the canonical mappings `(α, 1)`.
pub fn optimal_mapping_bruteforce(eta: Complex64, sets: &DiffSets) -> (NcMapping, f64) {
    DminOracle::new(sets).best(eta)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ZeroGain {
    pub gain: ChannelGain,
    pub cd: CharDifference,
}

/// Zero-`l_min` gains with `|η°| ≤ radius`, plus the zero and infinite gains.
pub fn zero_lmin_gains(sets: &DiffSets, radius: f64) -> Result<Vec<ZeroGain>> {
    if radius.is_nan() || radius <= 0.0 {
        return Err(PncError::InvalidArgument(format!(
            "radius must be positive, got {radius}"
        )));
    }
    let mut out: Vec<ZeroGain> = vec![ZeroGain {
        gain: ChannelGain::Finite(Complex64::new(0.0, 0.0)),
        cd: CharDifference::ETA_ZERO,
    }];
    for cd in sets.characteristic() {
        if cd.da.is_zero() {
            continue;
        }
        if cd.db.norm() as f64 > radius * radius * cd.da.norm() as f64 {
            continue;
        }
        if out.iter().any(|z| z.cd.same_gain(cd)) {
            continue;
        }
        out.push(ZeroGain {
            gain: cd.generator(),
            cd: *cd,
        });
    }
    out.push(ZeroGain {
        gain: CharDifference::ETA_INFINITY.generator(),
        cd: CharDifference::ETA_INFINITY,
    });
    Ok(out)
}

/// `−dB·conj(dA)`, a positive multiple of `η°`.
fn scaled_eta0(cd: &CharDifference) -> GInt {
    -(cd.db * cd.da.conj())
}

/// `0 < arg η° < π/4`, decided exactly.
pub fn in_open_octant(cd: &CharDifference) -> bool {
    let z = scaled_eta0(cd);
    !cd.da.is_zero() && z.im > 0 && z.re > z.im
}

/// `0 ≤ arg η° ≤ π/4`, decided exactly.
pub fn in_closed_octant(cd: &CharDifference) -> bool {
    let z = scaled_eta0(cd);
    !cd.da.is_zero() && z.im >= 0 && z.re >= z.im
}

/// The seven rotations and reflections of an open-octant gain, in the order
/// `e^{i(π/2−θ)}, e^{i(π/2+θ)}, e^{i(π−θ)}, e^{i(π+θ)}, e^{i(3π/2−θ)},
/// e^{i(3π/2+θ)}, e^{−iθ}`.
pub fn symmetric_gains(cd: &CharDifference) -> Result<Vec<ZeroGain>> {
    if !in_open_octant(cd) {
        return Err(PncError::OutsideOctant(cd.da, cd.db));
    }
    let (a, b) = (cd.da, cd.db);
    let (ac, bc) = (a.conj(), b.conj());
    let i = GInt::I;
    let images = [
        (ac, i * bc),
        (a, i * b),
        (ac, -bc),
        (a, -b),
        (ac, -(i * bc)),
        (a, -(i * b)),
        (ac, bc),
    ];
    Ok(images
        .iter()
        .map(|&(da, db)| {
            let cd = CharDifference::normalized(da, db);
            ZeroGain {
                gain: cd.generator(),
                cd,
            }
        })
        .collect())
}

/// All distinct images of `cd` under the eight symmetries of the square.
pub fn dihedral_images(cd: &CharDifference) -> Vec<CharDifference> {
    let mut out: Vec<CharDifference> = Vec::new();
    for conj in [false, true] {
        let (a, b) = if conj {
            (cd.da.conj(), cd.db.conj())
        } else {
            (cd.da, cd.db)
        };
        for u in GInt::UNITS {
            let img = CharDifference::normalized(a, u * b);
            if !out.contains(&img) {
                out.push(img);
            }
        }
    }
    out
}

/// `(−dA⁻¹·dB, 1)`, optimal at the gain generated by `cd`.
pub fn optimal_mapping_at_gain(cd: &CharDifference, field: &ResidueField) -> Result<NcMapping> {
    if cd.is_trivial() {
        return Err(PncError::TrivialGenerator(cd.da, cd.db));
    }
    mapping_from_cluster(cd.da, cd.db, field)
}

/// `1/|dA|` at a nontrivial gain; `0` at the trivial gains.
pub fn dmin_at_gain(cd: &CharDifference) -> f64 {
    if cd.is_trivial() {
        0.0
    } else {
        1.0 / (cd.da.norm() as f64).sqrt()
    }
}

/// Characteristic differences at normalized distance 1 from `cd`.
pub fn dmin_determining_at_gain(cd: &CharDifference, sets: &DiffSets) -> Result<Vec<CharDifference>> {
    if cd.is_trivial() {
        return Err(PncError::TrivialGenerator(cd.da, cd.db));
    }
    Ok(sets
        .characteristic()
        .iter()
        .filter(|o| cd.xi(o).norm() == 1)
        .copied()
        .collect())
}
