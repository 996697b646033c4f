//! The residue field Z[i]/q with minimum-magnitude representatives.

use std::collections::HashMap;

use crate::error::{PncError, Result};
use crate::gaussint::{inverse_mod, is_gaussian_prime, GInt};

/// `Z[i]/q` for a Gaussian prime `q`.
#[derive(Clone, Debug)]
pub struct ResidueField {
    q: GInt,
    elements: Vec<GInt>,
    mu: f64,
    /// Nearest-integer remainder of each class mapped to its representative.
    by_remainder: HashMap<GInt, GInt>,
}

/// Coordinates of `w` in the basis rotated by `q`, scaled by `|q|`.
///
/// `wˣ = x_num / |q|` and `wʸ = y_num / |q|`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BasisCoords {
    pub x_num: i64,
    pub y_num: i64,
    pub norm_q: i64,
}

impl BasisCoords {
    pub fn x(&self) -> f64 {
        self.x_num as f64 / (self.norm_q as f64).sqrt()
    }

    pub fn y(&self) -> f64 {
        self.y_num as f64 / (self.norm_q as f64).sqrt()
    }

    /// `|wˣ| < |q|/2` and `|wʸ| < |q|/2`, decided exactly.
    pub fn strictly_inside(&self) -> bool {
        2 * self.x_num.abs() < self.norm_q && 2 * self.y_num.abs() < self.norm_q
    }

    /// Some coordinate sits exactly on `±|q|/2`.
    pub fn on_boundary(&self) -> bool {
        2 * self.x_num.abs() == self.norm_q || 2 * self.y_num.abs() == self.norm_q
    }
}

pub fn basis_coords(w: GInt, q: GInt) -> Result<BasisCoords> {
    if q.is_zero() {
        return Err(PncError::DivisionByZero);
    }
    let p = w.checked_mul(q.conj()).ok_or(PncError::Overflow)?;
    Ok(BasisCoords {
        x_num: p.re,
        y_num: p.im,
        norm_q: q.norm(),
    })
}

pub fn build_field(q: GInt) -> Result<ResidueField> {
    ResidueField::new(q)
}

impl ResidueField {
    pub fn new(q: GInt) -> Result<Self> {
        if !is_gaussian_prime(q) {
            return Err(PncError::NotGaussianPrime(q));
        }
        let n = q.norm();
        let elements = if n == 2 {
            vec![GInt::ZERO, GInt::ONE]
        } else {
            let r = (n as f64).sqrt().ceil() as i64;
            let mut found = Vec::new();
            for re in -r..=r {
                for im in -r..=r {
                    let w = GInt::new(re, im);
                    let c = basis_coords(w, q)?;
                    assert!(!c.on_boundary(), "lattice point {w} on the boundary of Z[i]/{q}");
                    if c.strictly_inside() {
                        found.push(w);
                    }
                }
            }
            found
        };
        Self::from_elements(q, elements)
    }

    /// The ring Z[i]/2 with representatives `{0, 1, i, 1+i}`, used only by
    /// the vector-formulation demo. 2 is not a Gaussian prime, so this is
    /// not a field.
    pub fn vector_demo_q2() -> Self {
        let elements = vec![GInt::ZERO, GInt::ONE, GInt::I, GInt::new(1, 1)];
        Self::from_elements(GInt::new(2, 0), elements).expect("Z[i]/2 representatives")
    }

    fn from_elements(q: GInt, mut elements: Vec<GInt>) -> Result<Self> {
        elements.sort_by_key(|w| w.sort_key());
        let n = q.norm();
        assert_eq!(elements.len() as i64, n, "Z[i]/{q} must have norm(q) elements");
        let mut by_remainder = HashMap::with_capacity(elements.len());
        for &e in &elements {
            let (_, r) = e.div_rem(q)?;
            let clash = by_remainder.insert(r, e);
            assert!(clash.is_none(), "representatives of Z[i]/{q} are not distinct mod q");
        }
        let total: i64 = elements.iter().map(|w| w.norm()).sum();
        let mu = (total as f64 / n as f64).sqrt();
        Ok(ResidueField {
            q,
            elements,
            mu,
            by_remainder,
        })
    }

    pub fn q(&self) -> GInt {
        self.q
    }

    /// Number of elements, `norm(q)`.
    pub fn size(&self) -> usize {
        self.elements.len()
    }

    /// Representatives sorted by `(norm, re, im)`; `0` comes first.
    pub fn elements(&self) -> &[GInt] {
        &self.elements
    }

    pub fn nonzero(&self) -> &[GInt] {
        &self.elements[1..]
    }

    /// Power normalization: `mu² = Σ norm(w) / norm(q)`.
    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn contains(&self, w: GInt) -> bool {
        self.elements.binary_search_by(|e| e.cmp_key(&w)).is_ok()
    }

    pub fn index_of(&self, w: GInt) -> Option<usize> {
        self.elements.binary_search_by(|e| e.cmp_key(&w)).ok()
    }

    /// The representative congruent to `w`.
    pub fn reduce(&self, w: GInt) -> GInt {
        let (_, r) = w.div_rem(self.q).expect("reduction overflow");
        self.by_remainder[&r]
    }

    pub fn is_zero_mod(&self, w: GInt) -> bool {
        self.reduce(w).is_zero()
    }

    pub fn add(&self, a: GInt, b: GInt) -> GInt {
        self.reduce(a + b)
    }

    pub fn sub(&self, a: GInt, b: GInt) -> GInt {
        self.reduce(a - b)
    }

    pub fn neg(&self, a: GInt) -> GInt {
        self.reduce(-a)
    }

    pub fn mul(&self, a: GInt, b: GInt) -> GInt {
        self.reduce(a * b)
    }

    pub fn inv(&self, a: GInt) -> Result<GInt> {
        Ok(self.reduce(inverse_mod(a, self.q)?))
    }
}

pub fn reduce(w: GInt, field: &ResidueField) -> GInt {
    field.reduce(w)
}

pub fn field_add(a: GInt, b: GInt, field: &ResidueField) -> GInt {
    field.add(a, b)
}

pub fn field_mul(a: GInt, b: GInt, field: &ResidueField) -> GInt {
    field.mul(a, b)
}

pub fn field_neg(a: GInt, field: &ResidueField) -> GInt {
    field.neg(a)
}

pub fn field_inv(a: GInt, field: &ResidueField) -> Result<GInt> {
    field.inv(a)
}
