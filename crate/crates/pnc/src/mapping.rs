//! Linear NC mappings `w_N = α·w_A + β·w_B (mod q)`.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{PncError, Result};
use crate::gaussint::{is_rational_prime, GInt};
use crate::residue::ResidueField;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct NcMapping {
    pub alpha: GInt,
    pub beta: GInt,
}

impl NcMapping {
    /// Reduces both coefficients and rejects zero residues.
    pub fn new(alpha: GInt, beta: GInt, field: &ResidueField) -> Result<Self> {
        let (alpha, beta) = (field.reduce(alpha), field.reduce(beta));
        if alpha.is_zero() || beta.is_zero() {
            return Err(PncError::ZeroCoefficient);
        }
        Ok(NcMapping { alpha, beta })
    }

    pub fn sort_key(&self) -> ((i64, i64, i64), (i64, i64, i64)) {
        (self.alpha.sort_key(), self.beta.sort_key())
    }
}

impl fmt::Display for NcMapping {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.alpha, self.beta)
    }
}

pub fn nc_map(m: NcMapping, wa: GInt, wb: GInt, field: &ResidueField) -> GInt {
    field.reduce(m.alpha * wa + m.beta * wb)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Side {
    A,
    B,
}

/// Recover the partner's symbol from the NC symbol and one's own symbol.
pub fn recover_partner(wn: GInt, m: NcMapping, own: GInt, side: Side, field: &ResidueField) -> GInt {
    let (own_coeff, partner_coeff) = match side {
        Side::A => (m.alpha, m.beta),
        Side::B => (m.beta, m.alpha),
    };
    let inv = field.inv(partner_coeff).expect("mapping coefficients are nonzero");
    field.mul(inv, wn - own_coeff * own)
}

pub fn clusters(m: NcMapping, da: GInt, db: GInt, field: &ResidueField) -> bool {
    field.is_zero_mod(m.alpha * field.reduce(da) + m.beta * field.reduce(db))
}

/// `{v·(−β, α) mod q}`: the residue pairs clustered by `m`.
pub fn clustered_set(m: NcMapping, field: &ResidueField) -> Vec<(GInt, GInt)> {
    let mut out: Vec<_> = field
        .elements()
        .iter()
        .map(|&v| (field.mul(v, -m.beta), field.mul(v, m.alpha)))
        .collect();
    out.sort_by_key(|&(a, b)| (a.sort_key(), b.sort_key()));
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Coset {
    pub nc_symbol: GInt,
    pub members: Vec<(GInt, GInt)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CosetPartition {
    pub mapping: NcMapping,
    pub classes: Vec<Coset>,
}

impl CosetPartition {
    /// The partition with labels dropped.
    pub fn unlabeled(&self) -> BTreeSet<Vec<([i64; 2], [i64; 2])>> {
        self.classes
            .iter()
            .map(|c| c.members.iter().map(|&(a, b)| (a.into(), b.into())).collect())
            .collect()
    }
}

pub fn cosets(m: NcMapping, field: &ResidueField) -> CosetPartition {
    let mut classes: Vec<Coset> = field
        .elements()
        .iter()
        .map(|&s| Coset {
            nc_symbol: s,
            members: Vec::new(),
        })
        .collect();
    for &wa in field.elements() {
        for &wb in field.elements() {
            let s = nc_map(m, wa, wb, field);
            let k = field.index_of(s).expect("nc_map returns a representative");
            classes[k].members.push((wa, wb));
        }
    }
    CosetPartition { mapping: m, classes }
}

/// `(β⁻¹α, 1)`.
pub fn canonicalize(m: NcMapping, field: &ResidueField) -> NcMapping {
    let inv = field.inv(m.beta).expect("beta is nonzero");
    NcMapping {
        alpha: field.mul(inv, m.alpha),
        beta: GInt::ONE,
    }
}

/// The `norm(q) − 1` mappings `(α, 1)`, ordered by α.
pub fn canonical_mappings(field: &ResidueField) -> Vec<NcMapping> {
    field
        .nonzero()
        .iter()
        .map(|&alpha| NcMapping { alpha, beta: GInt::ONE })
        .collect()
}

pub fn isomorphic_by_canonical_form(m1: NcMapping, m2: NcMapping, field: &ResidueField) -> bool {
    canonicalize(m1, field) == canonicalize(m2, field)
}

pub fn isomorphic_by_scaling(m1: NcMapping, m2: NcMapping, field: &ResidueField) -> bool {
    field
        .nonzero()
        .iter()
        .any(|&g| field.mul(g, m1.alpha) == m2.alpha && field.mul(g, m1.beta) == m2.beta)
}

pub fn isomorphic_by_partition(m1: NcMapping, m2: NcMapping, field: &ResidueField) -> bool {
    cosets(m1, field).unlabeled() == cosets(m2, field).unlabeled()
}

/// Isomorphism via canonical forms; the scaling and partition tests must agree.
pub fn isomorphic(m1: NcMapping, m2: NcMapping, field: &ResidueField) -> bool {
    let by_form = isomorphic_by_canonical_form(m1, m2, field);
    debug_assert_eq!(by_form, isomorphic_by_scaling(m1, m2, field));
    by_form
}

/// `(−(dA mod q)⁻¹·(dB mod q), 1)`.
pub fn mapping_from_cluster(da: GInt, db: GInt, field: &ResidueField) -> Result<NcMapping> {
    let (ra, rb) = (field.reduce(da), field.reduce(db));
    if ra.is_zero() || rb.is_zero() {
        return Err(PncError::NcInvalid(da, db));
    }
    let alpha = field.neg(field.mul(field.inv(ra)?, rb));
    Ok(NcMapping { alpha, beta: GInt::ONE })
}

/// A vector-formulation mapping `([[αR, −αI], [αI, αR]], I)` over `Z_q²`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct DualMapping {
    pub q: i64,
    pub alpha_re: i64,
    pub alpha_im: i64,
}

impl DualMapping {
    pub fn matrix(&self) -> [[i64; 2]; 2] {
        let m = |x: i64| x.rem_euclid(self.q);
        [
            [m(self.alpha_re), m(-self.alpha_im)],
            [m(self.alpha_im), m(self.alpha_re)],
        ]
    }

    /// `αR + i·αI` reduced into the residue field.
    pub fn complex_form(&self, field: &ResidueField) -> GInt {
        field.reduce(GInt::new(self.alpha_re, self.alpha_im))
    }

    /// Whether the matrix annihilates `(δA, δB)` and its dual modulo q.
    pub fn clusters_with_dual(&self, da: GInt, db: GInt) -> bool {
        let q = self.q;
        let [[a1, a2], [a3, a4]] = self.matrix();
        [(da, db), (GInt::I * da, GInt::I * db)].iter().all(|&(x, y)| {
            (a1 * x.re + a2 * x.im + y.re).rem_euclid(q) == 0 && (a3 * x.re + a4 * x.im + y.im).rem_euclid(q) == 0
        })
    }
}

/// Dual mapping of the vector formulation for a rational prime `q`.
///
/// `None` when `(δA^R)² + (δA^I)² ≡ 0 (mod q)`.
pub fn vector_dual_mapping(q: i64, da: GInt, db: GInt) -> Result<Option<DualMapping>> {
    if !is_rational_prime(q) {
        return Err(PncError::NotRationalPrime(q));
    }
    let (ar, ai) = (da.re.rem_euclid(q), da.im.rem_euclid(q));
    let (br, bi) = (db.re.rem_euclid(q), db.im.rem_euclid(q));
    if ar == 0 && ai == 0 {
        return Err(PncError::NcInvalid(da, db));
    }
    let n = (ar * ar + ai * ai).rem_euclid(q);
    if n == 0 {
        return Ok(None);
    }
    let n_inv = mod_pow(n, q - 2, q);
    let alpha_re = (-(n_inv * ((ar * br + ai * bi) % q))).rem_euclid(q);
    let alpha_im = (-(n_inv * ((ar * bi - ai * br).rem_euclid(q)))).rem_euclid(q);
    Ok(Some(DualMapping { q, alpha_re, alpha_im }))
}

fn mod_pow(mut b: i64, mut e: i64, m: i64) -> i64 {
    let mut acc = 1 % m;
    b = b.rem_euclid(m);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}
