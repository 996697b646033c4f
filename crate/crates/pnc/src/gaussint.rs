//! Exact Gaussian-integer arithmetic.
//!
//! All arithmetic is checked. The operator impls panic on overflow; the
//! `checked_*` methods return `None` instead.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{PncError, Result};

/// A Gaussian integer `re + im*i`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(from = "[i64; 2]", into = "[i64; 2]")]
pub struct GInt {
    pub re: i64,
    pub im: i64,
}

impl GInt {
    pub const ZERO: GInt = GInt::new(0, 0);
    pub const ONE: GInt = GInt::new(1, 0);
    pub const I: GInt = GInt::new(0, 1);
    /// `1, i, -1, -i`.
    pub const UNITS: [GInt; 4] = [GInt::new(1, 0), GInt::new(0, 1), GInt::new(-1, 0), GInt::new(0, -1)];

    pub const fn new(re: i64, im: i64) -> Self {
        GInt { re, im }
    }

    pub fn is_zero(self) -> bool {
        self.re == 0 && self.im == 0
    }

    pub fn is_unit(self) -> bool {
        self.re.abs() + self.im.abs() == 1 && (self.re == 0 || self.im == 0)
    }

    pub fn conj(self) -> GInt {
        GInt::new(self.re, -self.im)
    }

    pub fn checked_add(self, o: GInt) -> Option<GInt> {
        Some(GInt::new(self.re.checked_add(o.re)?, self.im.checked_add(o.im)?))
    }

    pub fn checked_sub(self, o: GInt) -> Option<GInt> {
        Some(GInt::new(self.re.checked_sub(o.re)?, self.im.checked_sub(o.im)?))
    }

    pub fn checked_neg(self) -> Option<GInt> {
        Some(GInt::new(self.re.checked_neg()?, self.im.checked_neg()?))
    }

    pub fn checked_mul(self, o: GInt) -> Option<GInt> {
        let re = self.re.checked_mul(o.re)?.checked_sub(self.im.checked_mul(o.im)?)?;
        let im = self.re.checked_mul(o.im)?.checked_add(self.im.checked_mul(o.re)?)?;
        Some(GInt::new(re, im))
    }

    pub fn checked_norm(self) -> Option<i64> {
        self.re.checked_mul(self.re)?.checked_add(self.im.checked_mul(self.im)?)
    }

    /// `re² + im²`. Panics on overflow.
    pub fn norm(self) -> i64 {
        self.checked_norm().expect("Gaussian integer overflow in norm")
    }

    /// Deterministic ordering key `(norm, re, im)`.
    pub fn sort_key(self) -> (i64, i64, i64) {
        (self.norm(), self.re, self.im)
    }

    pub fn cmp_key(&self, other: &GInt) -> Ordering {
        self.sort_key().cmp(&other.sort_key())
    }

    pub fn to_complex(self) -> Complex64 {
        Complex64::new(self.re as f64, self.im as f64)
    }

    /// `{a, -a, ia, -ia}`; a single element for zero.
    pub fn associates(self) -> Vec<GInt> {
        if self.is_zero() {
            return vec![self];
        }
        GInt::UNITS.iter().map(|&u| u * self).collect()
    }

    /// The associate with `re > 0, im >= 0`, or zero.
    pub fn canonical_associate(self) -> GInt {
        self * self.canonicalizing_unit()
    }

    /// Unit `u` with `u * self` canonical (`1` for zero).
    pub fn canonicalizing_unit(self) -> GInt {
        for u in GInt::UNITS {
            let c = u * self;
            if c.re > 0 && c.im >= 0 {
                return u;
            }
        }
        GInt::ONE
    }

    /// Euclidean division with nearest-integer quotient; exact halves round
    /// toward negative infinity.
    pub fn div_rem(self, b: GInt) -> Result<(GInt, GInt)> {
        if b.is_zero() {
            return Err(PncError::DivisionByZero);
        }
        let num = self.checked_mul(b.conj()).ok_or(PncError::Overflow)?;
        let n = b.checked_norm().ok_or(PncError::Overflow)?;
        let quot = GInt::new(round_half_down(num.re, n)?, round_half_down(num.im, n)?);
        let rem = quot
            .checked_mul(b)
            .and_then(|p| self.checked_sub(p))
            .ok_or(PncError::Overflow)?;
        Ok((quot, rem))
    }

    /// `self / b` when the division is exact.
    pub fn exact_div(self, b: GInt) -> Option<GInt> {
        match self.div_rem(b) {
            Ok((quot, rem)) if rem.is_zero() => Some(quot),
            _ => None,
        }
    }

    pub fn divides(self, a: GInt) -> bool {
        if self.is_zero() {
            return a.is_zero();
        }
        a.exact_div(self).is_some()
    }
}

fn round_half_down(p: i64, n: i64) -> Result<i64> {
    let two_n = n.checked_mul(2).ok_or(PncError::Overflow)?;
    let t = p
        .checked_mul(2)
        .and_then(|x| n.checked_sub(x))
        .ok_or(PncError::Overflow)?;
    Ok(-t.div_euclid(two_n))
}

impl From<[i64; 2]> for GInt {
    fn from(v: [i64; 2]) -> Self {
        GInt::new(v[0], v[1])
    }
}

impl From<GInt> for [i64; 2] {
    fn from(g: GInt) -> Self {
        [g.re, g.im]
    }
}

impl From<i64> for GInt {
    fn from(re: i64) -> Self {
        GInt::new(re, 0)
    }
}

impl Add for GInt {
    type Output = GInt;
    fn add(self, o: GInt) -> GInt {
        self.checked_add(o).expect("Gaussian integer overflow in add")
    }
}

impl Sub for GInt {
    type Output = GInt;
    fn sub(self, o: GInt) -> GInt {
        self.checked_sub(o).expect("Gaussian integer overflow in sub")
    }
}

impl Mul for GInt {
    type Output = GInt;
    fn mul(self, o: GInt) -> GInt {
        self.checked_mul(o).expect("Gaussian integer overflow in mul")
    }
}

impl Neg for GInt {
    type Output = GInt;
    fn neg(self) -> GInt {
        self.checked_neg().expect("Gaussian integer overflow in neg")
    }
}

impl fmt::Display for GInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let imag = |f: &mut fmt::Formatter<'_>, v: i64| match v {
            1 => write!(f, "i"),
            -1 => write!(f, "-i"),
            _ => write!(f, "{v}i"),
        };
        match (self.re, self.im) {
            (re, 0) => write!(f, "{re}"),
            (0, im) => imag(f, im),
            (re, im) => {
                write!(f, "{re}")?;
                if im > 0 {
                    write!(f, "+")?;
                }
                imag(f, im)
            }
        }
    }
}

impl fmt::Debug for GInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Split `s` into a real part and an imaginary coefficient string.
fn split_complex(s: &str) -> Option<(&str, Option<&str>)> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    let Some(body) = s.strip_suffix('i') else {
        return Some((s, None));
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    match split {
        Some(k) => Some((&body[..k], Some(&body[k..]))),
        None => Some(("", Some(body))),
    }
}

fn imag_coeff(s: &str) -> &str {
    match s {
        "" | "+" => "1",
        "-" => "-1",
        _ => s.strip_prefix('+').unwrap_or(s),
    }
}

impl FromStr for GInt {
    type Err = PncError;

    /// Accepts `a+bi`, `a-bi`, `a`, `bi`, with `i` standing for `1i`.
    fn from_str(s: &str) -> Result<Self> {
        let err = || PncError::Parse(s.to_string());
        let (re, im) = split_complex(s).ok_or_else(err)?;
        let re = if re.is_empty() {
            0
        } else {
            re.parse::<i64>().map_err(|_| err())?
        };
        let im = match im {
            Some(t) => imag_coeff(t).parse::<i64>().map_err(|_| err())?,
            None => 0,
        };
        Ok(GInt::new(re, im))
    }
}

/// Parse a complex float such as `1.1+1.0i`, `-0.5i` or `2`.
pub fn parse_complex(s: &str) -> Result<Complex64> {
    let err = || PncError::Parse(s.to_string());
    let (re, im) = split_complex(s).ok_or_else(err)?;
    let re = if re.is_empty() {
        0.0
    } else {
        re.parse::<f64>().map_err(|_| err())?
    };
    let im = match im {
        Some(t) => imag_coeff(t).parse::<f64>().map_err(|_| err())?,
        None => 0.0,
    };
    if !re.is_finite() || !im.is_finite() {
        return Err(err());
    }
    Ok(Complex64::new(re, im))
}

pub fn norm(a: GInt) -> i64 {
    a.norm()
}

pub fn associates(a: GInt) -> Vec<GInt> {
    a.associates()
}

pub fn canonical_associate(a: GInt) -> GInt {
    a.canonical_associate()
}

pub fn div_rem(a: GInt, b: GInt) -> Result<(GInt, GInt)> {
    a.div_rem(b)
}

/// Canonical greatest common divisor.
pub fn gcd(a: GInt, b: GInt) -> Result<GInt> {
    if a.is_zero() && b.is_zero() {
        return Err(PncError::BothZero);
    }
    let (mut r0, mut r1) = (a, b);
    while !r1.is_zero() {
        let (_, r) = r0.div_rem(r1)?;
        r0 = r1;
        r1 = r;
    }
    Ok(r0.canonical_associate())
}

/// `(x, y, g)` with `a*x + b*y = g = gcd(a, b)`.
pub fn bezout(a: GInt, b: GInt) -> Result<(GInt, GInt, GInt)> {
    if a.is_zero() && b.is_zero() {
        return Err(PncError::BothZero);
    }
    let ovf = || PncError::Overflow;
    let (mut r0, mut r1) = (a, b);
    let (mut x0, mut x1) = (GInt::ONE, GInt::ZERO);
    let (mut y0, mut y1) = (GInt::ZERO, GInt::ONE);
    while !r1.is_zero() {
        let (quot, r) = r0.div_rem(r1)?;
        let x2 = quot.checked_mul(x1).and_then(|t| x0.checked_sub(t)).ok_or_else(ovf)?;
        let y2 = quot.checked_mul(y1).and_then(|t| y0.checked_sub(t)).ok_or_else(ovf)?;
        (r0, r1) = (r1, r);
        (x0, x1) = (x1, x2);
        (y0, y1) = (y1, y2);
    }
    let u = r0.canonicalizing_unit();
    Ok((u * x0, u * y0, u * r0))
}

pub fn is_rational_prime(n: i64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3i64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

pub fn is_gaussian_prime(a: GInt) -> bool {
    let Some(n) = a.checked_norm() else {
        return false;
    };
    if is_rational_prime(n) {
        return true;
    }
    if a.re == 0 || a.im == 0 {
        let p = (a.re + a.im).abs();
        return is_rational_prime(p) && p % 4 == 3;
    }
    false
}

/// Inverse of `a` modulo the Gaussian prime `q`, as the residue-field
/// representative.
pub fn inverse_mod(a: GInt, q: GInt) -> Result<GInt> {
    if !is_gaussian_prime(q) {
        return Err(PncError::NotGaussianPrime(q));
    }
    let (x, _, g) = bezout(a, q)?;
    if g != GInt::ONE {
        return Err(PncError::NotInvertible(a, q));
    }
    if q.norm() == 2 {
        return Ok(GInt::ONE);
    }
    Ok(x.div_rem(q)?.1)
}
