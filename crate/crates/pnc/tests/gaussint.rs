use pnc::gaussint::{
    associates, bezout, canonical_associate, div_rem, gcd, inverse_mod, is_gaussian_prime, is_rational_prime,
    parse_complex,
};
use pnc::{GInt, PncError};
use proptest::prelude::*;

fn g(re: i64, im: i64) -> GInt {
    GInt::new(re, im)
}

/// `d | a`, decided from the componentwise divisibility of `a·conj(d)`.
fn divides(d: GInt, a: GInt) -> bool {
    let n = d.re * d.re + d.im * d.im;
    if n == 0 {
        return a.re == 0 && a.im == 0;
    }
    let re = a.re * d.re + a.im * d.im;
    let im = a.im * d.re - a.re * d.im;
    re % n == 0 && im % n == 0
}

fn box_points(r: i64) -> impl Iterator<Item = GInt> {
    (-r..=r).flat_map(move |re| (-r..=r).map(move |im| g(re, im)))
}

/// Largest norm among common divisors, by enumeration.
fn gcd_norm_oracle(a: GInt, b: GInt) -> i64 {
    let bound = [a, b].iter().filter(|x| !x.is_zero()).map(|x| x.norm()).min().unwrap();
    let r = (bound as f64).sqrt().ceil() as i64;
    box_points(r)
        .filter(|d| !d.is_zero() && d.norm() <= bound && divides(*d, a) && divides(*d, b))
        .map(|d| d.norm())
        .max()
        .unwrap()
}

fn prime_oracle(a: GInt) -> bool {
    let n = a.norm();
    if n < 2 {
        return false;
    }
    let r = ((n as f64).sqrt().sqrt().ceil() as i64) + 1;
    !box_points(r).any(|d| {
        let m = d.norm();
        m >= 2 && m * m <= n && m < n && divides(d, a)
    })
}

#[test]
fn div_rem_examples() {
    assert_eq!(div_rem(g(5, 0), g(2, 1)).unwrap(), (g(2, -1), g(0, 0)));
    let (q, r) = div_rem(g(7, 11), g(3, -4)).unwrap();
    assert_eq!(q * g(3, -4) + r, g(7, 11));
    assert!(2 * r.norm() <= 25);
    assert_eq!(div_rem(g(1, 0), GInt::ZERO), Err(PncError::DivisionByZero));
}

#[test]
fn div_rem_ties_round_down() {
    let (q, r) = div_rem(g(1, 1), g(2, 0)).unwrap();
    assert_eq!((q, r), (g(0, 0), g(1, 1)));
    let (q, r) = div_rem(g(-1, -1), g(2, 0)).unwrap();
    assert_eq!((q, r), (g(-1, -1), g(1, 1)));
}

#[test]
fn gcd_matches_divisor_enumeration() {
    let pts: Vec<GInt> = box_points(6).collect();
    for (k, &a) in pts.iter().enumerate().step_by(7) {
        for &b in pts.iter().skip(k % 5).step_by(11) {
            if a.is_zero() && b.is_zero() {
                continue;
            }
            let d = gcd(a, b).unwrap();
            assert!(divides(d, a) && divides(d, b), "gcd({a}, {b}) = {d}");
            assert_eq!(d.norm(), gcd_norm_oracle(a, b), "gcd({a}, {b})");
            assert_eq!(d, canonical_associate(d));
            assert_eq!(d, gcd(b, a).unwrap());
        }
    }
}

#[test]
fn gcd_of_zero_pair_is_an_error() {
    assert_eq!(gcd(GInt::ZERO, GInt::ZERO), Err(PncError::BothZero));
    assert_eq!(bezout(GInt::ZERO, GInt::ZERO), Err(PncError::BothZero));
}

#[test]
fn bezout_examples() {
    let a = g(-3, 2);
    let (x, y, d) = bezout(a, GInt::ZERO).unwrap();
    assert_eq!(y, GInt::ZERO);
    assert_eq!(d, canonical_associate(a));
    assert_eq!(x * a, d);
    assert!(x.is_unit());

    let (x, y, d) = bezout(GInt::ONE, g(-1, -1)).unwrap();
    assert_eq!(d, GInt::ONE);
    assert_eq!(x + g(-1, -1) * y, GInt::ONE);

    let (x, y, d) = bezout(g(2, 1), g(2, -1)).unwrap();
    assert_eq!(d, GInt::ONE);
    assert_eq!(gcd_norm_oracle(g(2, 1), g(2, -1)), 1);
    assert_eq!(g(2, 1) * x + g(2, -1) * y, GInt::ONE);
}

#[test]
fn canonical_associate_picks_first_quadrant() {
    for z in box_points(5).filter(|z| !z.is_zero()) {
        let c = canonical_associate(z);
        assert!(c.re > 0 && c.im >= 0, "{z} -> {c}");
        assert!(associates(z).contains(&c));
        let hits = associates(z).into_iter().filter(|a| a.re > 0 && a.im >= 0).count();
        assert_eq!(hits, 1);
    }
    assert_eq!(canonical_associate(g(-2, -1)), g(2, 1));
    assert_eq!(canonical_associate(g(0, -3)), g(3, 0));
}

#[test]
fn primality_matches_trial_division() {
    for z in box_points(100) {
        if z.norm() > 10_000 || z.re < 0 {
            continue;
        }
        assert_eq!(is_gaussian_prime(z), prime_oracle(z), "{z}");
    }
}

#[test]
fn named_primes() {
    for p in ["1+i", "2+i", "1+2i", "3", "3+2i", "4+i", "7", "11", "-3i", "2-3i"] {
        assert!(is_gaussian_prime(p.parse().unwrap()), "{p}");
    }
    for c in ["2", "5", "1+3i", "0", "1", "i", "13", "4"] {
        assert!(!is_gaussian_prime(c.parse().unwrap()), "{c}");
    }
    assert!(is_rational_prime(2) && is_rational_prime(7) && !is_rational_prime(9) && !is_rational_prime(1));
}

#[test]
fn inverse_mod_every_residue() {
    for q in ["1+i", "2+i", "1+2i", "3", "3+2i", "4+i", "7"] {
        let q: GInt = q.parse().unwrap();
        let field = pnc::ResidueField::new(q).unwrap();
        for &a in field.nonzero() {
            let x = inverse_mod(a, q).unwrap();
            assert!(divides(q, a * x - GInt::ONE), "{a}^-1 mod {q} = {x}");
        }
        assert!(matches!(inverse_mod(q, q), Err(PncError::NotInvertible(..))));
    }
    assert!(matches!(
        inverse_mod(GInt::ONE, g(2, 0)),
        Err(PncError::NotGaussianPrime(_))
    ));
}

#[test]
fn parse_and_display() {
    for (s, z) in [
        ("2+i", g(2, 1)),
        ("1+1i", g(1, 1)),
        ("1-2i", g(1, -2)),
        ("-i", g(0, -1)),
        ("3", g(3, 0)),
        ("2i", g(0, 2)),
        ("-4-3i", g(-4, -3)),
    ] {
        assert_eq!(s.parse::<GInt>().unwrap(), z, "{s}");
    }
    for s in ["2+3", "1.5", "i+1", "", "abc", "1+1.0i"] {
        assert!(s.parse::<GInt>().is_err(), "{s:?}");
    }
    assert_eq!(g(2, 1).to_string(), "2+i");
    assert_eq!(g(1, -2).to_string(), "1-2i");
    assert_eq!(g(0, 1).to_string(), "i");
    assert_eq!(g(0, -1).to_string(), "-i");
    assert_eq!(g(0, 0).to_string(), "0");
    let c = parse_complex("1.1+1.0i").unwrap();
    assert_eq!((c.re, c.im), (1.1, 1.0));
    assert_eq!(parse_complex("-0.5i").unwrap().im, -0.5);
    assert!(parse_complex("1+x").is_err());
    assert!(parse_complex("nan").is_err());
}

#[test]
fn serde_as_pair() {
    assert_eq!(serde_json::to_string(&g(2, -1)).unwrap(), "[2,-1]");
    let z: GInt = serde_json::from_str("[-3,4]").unwrap();
    assert_eq!(z, g(-3, 4));
}

#[test]
fn checked_arithmetic_overflows() {
    let big = g(i64::MAX, 0);
    assert_eq!(big.checked_add(GInt::ONE), None);
    assert_eq!(big.checked_mul(g(2, 0)), None);
    assert_eq!(big.checked_norm(), None);
    assert_eq!(div_rem(big, g(1, 1)), Err(PncError::Overflow));
}

fn small() -> impl Strategy<Value = GInt> {
    (-1000i64..=1000, -1000i64..=1000).prop_map(|(a, b)| g(a, b))
}

proptest! {
    #[test]
    fn norm_is_multiplicative(a in small(), b in small()) {
        prop_assert_eq!((a * b).norm(), a.norm() * b.norm());
    }

    #[test]
    fn remainder_bound(a in small(), b in small()) {
        prop_assume!(!b.is_zero());
        let (q, r) = div_rem(a, b).unwrap();
        prop_assert_eq!(q * b + r, a);
        prop_assert!(2 * r.norm() <= b.norm());
    }

    #[test]
    fn gcd_divides_and_is_symmetric(a in small(), b in small()) {
        prop_assume!(!(a.is_zero() && b.is_zero()));
        let d = gcd(a, b).unwrap();
        prop_assert!(divides(d, a) && divides(d, b));
        prop_assert_eq!(div_rem(a, d).unwrap().1, GInt::ZERO);
        prop_assert_eq!(d, gcd(b, a).unwrap());
    }

    #[test]
    fn bezout_identity(a in small(), b in small()) {
        prop_assume!(!(a.is_zero() && b.is_zero()));
        let (x, y, d) = bezout(a, b).unwrap();
        prop_assert_eq!(a * x + b * y, d);
        prop_assert_eq!(d, gcd(a, b).unwrap());
    }

    #[test]
    fn display_round_trips(a in small()) {
        prop_assert_eq!(a.to_string().parse::<GInt>().unwrap(), a);
    }
}
