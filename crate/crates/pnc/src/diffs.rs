//! Difference pairs, characteristic differences and the Q-sets.

use std::collections::HashSet;
use std::fmt;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{PncError, Result};
use crate::gaussint::{gcd, GInt};
use crate::metrics::ChannelGain;
use crate::residue::ResidueField;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct DifferencePair {
    pub da: GInt,
    pub db: GInt,
    pub distance_valid: bool,
    pub nc_valid: bool,
}

/// A coprime difference pair, normalized so that its first nonzero
/// component is a canonical associate.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct CharDifference {
    pub da: GInt,
    pub db: GInt,
}

impl CharDifference {
    /// Normalize `(da, db)` within its associate class. Does not check
    /// coprimality or membership in Δ.
    pub fn normalized(da: GInt, db: GInt) -> Self {
        let u = if da.is_zero() {
            db.canonicalizing_unit()
        } else {
            da.canonicalizing_unit()
        };
        CharDifference { da: u * da, db: u * db }
    }

    pub const ETA_ZERO: CharDifference = CharDifference {
        da: GInt::ONE,
        db: GInt::ZERO,
    };
    pub const ETA_INFINITY: CharDifference = CharDifference {
        da: GInt::ZERO,
        db: GInt::ONE,
    };

    /// Generators of the zero gain and the infinite gain.
    pub fn is_trivial(&self) -> bool {
        self.da.is_zero() || self.db.is_zero()
    }

    /// `(norm dA, norm dB, dA.re, dA.im, dB.re, dB.im)`.
    pub fn sort_key(&self) -> (i64, i64, i64, i64, i64, i64) {
        (
            self.da.norm(),
            self.db.norm(),
            self.da.re,
            self.da.im,
            self.db.re,
            self.db.im,
        )
    }

    /// `η° = −dB/dA`, or `None` for the infinite gain.
    pub fn eta0(&self) -> Option<Complex64> {
        if self.da.is_zero() {
            None
        } else {
            Some(-self.db.to_complex() / self.da.to_complex())
        }
    }

    pub fn generator(&self) -> ChannelGain {
        match self.eta0() {
            Some(v) => ChannelGain::Finite(v),
            None => ChannelGain::Infinite { direction: -self.db },
        }
    }

    /// `dB·dA' − dA·dB'`.
    pub fn xi(&self, other: &CharDifference) -> GInt {
        self.db * other.da - self.da * other.db
    }

    /// Same zero-`l_min` gain, decided by cross-multiplication.
    pub fn same_gain(&self, other: &CharDifference) -> bool {
        self.xi(other).is_zero()
    }

    /// `(κ, τ) = (−dB, dA)`.
    pub fn kappa_tau(&self) -> (GInt, GInt) {
        (-self.db, self.da)
    }

    pub fn from_kappa_tau(kappa: GInt, tau: GInt) -> Self {
        CharDifference::normalized(tau, -kappa)
    }
}

impl fmt::Display for CharDifference {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.da, self.db)
    }
}

impl fmt::Debug for CharDifference {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Λ, Δ and the characteristic set of one residue field.
#[derive(Clone, Debug)]
pub struct DiffSets {
    field: ResidueField,
    lambda: Vec<GInt>,
    lambda_set: HashSet<GInt>,
    chars: Vec<CharDifference>,
}

impl DiffSets {
    pub fn new(field: &ResidueField) -> Self {
        let lambda = component_differences(field);
        let lambda_set: HashSet<GInt> = lambda.iter().copied().collect();
        let mut seen = HashSet::new();
        let mut chars = Vec::new();
        for &da in &lambda {
            for &db in &lambda {
                if da.is_zero() && db.is_zero() {
                    continue;
                }
                if gcd(da, db).expect("nonzero pair") != GInt::ONE {
                    continue;
                }
                let cd = CharDifference::normalized(da, db);
                if seen.insert(cd) {
                    chars.push(cd);
                }
            }
        }
        chars.retain(|cd| lambda_set.contains(&cd.da) && lambda_set.contains(&cd.db));
        chars.sort_by_key(|cd| cd.sort_key());
        DiffSets {
            field: field.clone(),
            lambda,
            lambda_set,
            chars,
        }
    }

    pub fn field(&self) -> &ResidueField {
        &self.field
    }

    /// Λ sorted by `(norm, re, im)`.
    pub fn lambda(&self) -> &[GInt] {
        &self.lambda
    }

    pub fn in_lambda(&self, d: GInt) -> bool {
        self.lambda_set.contains(&d)
    }

    pub fn in_delta(&self, da: GInt, db: GInt) -> bool {
        !(da.is_zero() && db.is_zero()) && self.in_lambda(da) && self.in_lambda(db)
    }

    /// Every distance-valid pair of Δ = Λ² \ {(0, 0)}.
    pub fn delta(&self) -> impl Iterator<Item = (GInt, GInt)> + '_ {
        self.lambda
            .iter()
            .flat_map(move |&a| self.lambda.iter().map(move |&b| (a, b)))
            .filter(|(a, b)| !(a.is_zero() && b.is_zero()))
    }

    /// The characteristic set, sorted by [`CharDifference::sort_key`].
    pub fn characteristic(&self) -> &[CharDifference] {
        &self.chars
    }

    /// Membership of `(dA, dB)` in Q_q, stated in the `(δA, δB)` convention:
    /// some associate of the gcd-reduced pair lies in Δ.
    pub fn in_q_pair(&self, da: GInt, db: GInt) -> Result<bool> {
        let g = gcd(da, db)?;
        let (ra, rb) = (
            da.exact_div(g).expect("gcd divides"),
            db.exact_div(g).expect("gcd divides"),
        );
        Ok(GInt::UNITS.iter().any(|&u| self.in_delta(u * ra, u * rb)))
    }

    /// Membership of `(κ, τ)` in Q_q, with `κ = −dB`, `τ = dA`.
    pub fn in_qq(&self, kappa: GInt, tau: GInt) -> Result<bool> {
        self.in_q_pair(tau, -kappa)
    }
}

/// Λ = {w − w'}, sorted by `(norm, re, im)`.
pub fn component_differences(field: &ResidueField) -> Vec<GInt> {
    let mut set = HashSet::new();
    for &w in field.elements() {
        for &v in field.elements() {
            set.insert(w - v);
        }
    }
    let mut out: Vec<GInt> = set.into_iter().collect();
    out.sort_by_key(|d| d.sort_key());
    out
}

/// Δ with validity flags.
pub fn difference_set(field: &ResidueField) -> Vec<DifferencePair> {
    let lambda = component_differences(field);
    let mut out = Vec::with_capacity(lambda.len() * lambda.len());
    for &da in &lambda {
        for &db in &lambda {
            if da.is_zero() && db.is_zero() {
                continue;
            }
            out.push(DifferencePair {
                da,
                db,
                distance_valid: true,
                nc_valid: !da.is_zero() && !db.is_zero(),
            });
        }
    }
    out
}

pub fn characteristic_set(field: &ResidueField) -> Vec<CharDifference> {
    DiffSets::new(field).chars
}

pub fn in_qq(kappa: GInt, tau: GInt, field: &ResidueField) -> Result<bool> {
    if kappa.is_zero() && tau.is_zero() {
        return Err(PncError::BothZero);
    }
    DiffSets::new(field).in_qq(kappa, tau)
}

/// Outcome of the necessary and sufficient validity bounds on Λ.
#[derive(Clone, Debug, Serialize)]
pub struct BoundsReport {
    pub q: GInt,
    /// `2·norm(q) − 4·qR + 2` with `qR = max(|re q|, |im q|)`.
    pub necessary_bound: i64,
    pub max_norm: i64,
    /// Members of Λ whose norm equals the necessary bound.
    pub on_bound: usize,
    pub necessary_holds: bool,
    /// Nonzero δ with `norm(δ) < norm(q)` checked for membership in Λ.
    pub sufficient_checked: usize,
    pub sufficient_missing: Vec<GInt>,
}

impl BoundsReport {
    pub fn holds(&self) -> bool {
        self.necessary_holds && self.sufficient_missing.is_empty()
    }
}

pub fn validity_bounds_check(field: &ResidueField) -> BoundsReport {
    let q = field.q();
    let n = q.norm();
    let qr = q.re.abs().max(q.im.abs());
    let bound = 2 * n - 4 * qr + 2;
    let lambda = component_differences(field);
    let set: HashSet<GInt> = lambda.iter().copied().collect();
    let max_norm = lambda.iter().map(|d| d.norm()).max().unwrap_or(0);
    let on_bound = lambda.iter().filter(|d| d.norm() == bound).count();
    let r = (n as f64).sqrt().ceil() as i64;
    let mut checked = 0;
    let mut missing = Vec::new();
    for re in -r..=r {
        for im in -r..=r {
            let d = GInt::new(re, im);
            if d.is_zero() || d.norm() >= n {
                continue;
            }
            checked += 1;
            if !set.contains(&d) {
                missing.push(d);
            }
        }
    }
    BoundsReport {
        q,
        necessary_bound: bound,
        max_norm,
        on_bound,
        necessary_holds: max_norm <= bound,
        sufficient_checked: checked,
        sufficient_missing: missing,
    }
}

/// The closed convex hull of Λ, tested with exact integer predicates.
#[derive(Clone, Debug)]
pub struct ConvexRegion {
    /// Hull vertices in counter-clockwise order.
    hull: Vec<GInt>,
}

fn cross(o: GInt, a: GInt, b: GInt) -> i128 {
    let (ax, ay) = ((a.re - o.re) as i128, (a.im - o.im) as i128);
    let (bx, by) = ((b.re - o.re) as i128, (b.im - o.im) as i128);
    ax * by - ay * bx
}

impl ConvexRegion {
    pub fn new(points: &[GInt]) -> Self {
        let mut pts: Vec<GInt> = points.to_vec();
        pts.sort_by_key(|p| (p.re, p.im));
        pts.dedup();
        if pts.len() < 3 {
            return ConvexRegion { hull: pts };
        }
        let mut lower: Vec<GInt> = Vec::new();
        for &p in &pts {
            while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
                lower.pop();
            }
            lower.push(p);
        }
        let mut upper: Vec<GInt> = Vec::new();
        for &p in pts.iter().rev() {
            while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
                upper.pop();
            }
            upper.push(p);
        }
        lower.pop();
        upper.pop();
        lower.extend(upper);
        ConvexRegion { hull: lower }
    }

    pub fn of_field(field: &ResidueField) -> Self {
        ConvexRegion::new(&component_differences(field))
    }

    pub fn vertices(&self) -> &[GInt] {
        &self.hull
    }

    /// Closed membership.
    pub fn contains(&self, g: GInt) -> bool {
        match self.hull.len() {
            0 => false,
            1 => self.hull[0] == g,
            2 => {
                let (a, b) = (self.hull[0], self.hull[1]);
                cross(a, b, g) == 0
                    && g.re >= a.re.min(b.re)
                    && g.re <= a.re.max(b.re)
                    && g.im >= a.im.min(b.im)
                    && g.im <= a.im.max(b.im)
            }
            k => (0..k).all(|i| cross(self.hull[i], self.hull[(i + 1) % k], g) >= 0),
        }
    }
}

pub fn convex_region_contains(g: GInt, field: &ResidueField) -> bool {
    ConvexRegion::of_field(field).contains(g)
}
