use std::collections::{BTreeSet, HashSet};

use pnc::diffs::{
    characteristic_set, component_differences, convex_region_contains, difference_set, in_qq, validity_bounds_check,
    CharDifference, ConvexRegion, DiffSets,
};
use pnc::gaussint::gcd;
use pnc::{GInt, PncError, ResidueField};
use proptest::prelude::*;

fn g(re: i64, im: i64) -> GInt {
    GInt::new(re, im)
}

fn field(q: &str) -> ResidueField {
    ResidueField::new(q.parse().unwrap()).unwrap()
}

fn lambda_oracle(f: &ResidueField) -> BTreeSet<(i64, i64)> {
    let mut out = BTreeSet::new();
    for a in f.elements() {
        for b in f.elements() {
            out.insert((a.re - b.re, a.im - b.im));
        }
    }
    out
}

/// Unit that puts `z` into `re > 0, im >= 0`.
fn first_quadrant_unit(z: GInt) -> GInt {
    GInt::UNITS
        .into_iter()
        .find(|&u| {
            let w = u * z;
            w.re > 0 && w.im >= 0
        })
        .unwrap()
}

fn normalize(a: GInt, b: GInt) -> (GInt, GInt) {
    let u = first_quadrant_unit(if a.is_zero() { b } else { a });
    (u * a, u * b)
}

fn coprime(a: GInt, b: GInt) -> bool {
    let r = [a, b].iter().map(|x| x.norm()).max().unwrap();
    let r = (r as f64).sqrt().ceil() as i64;
    !(-r..=r)
        .flat_map(|re| (-r..=r).map(move |im| g(re, im)))
        .any(|d| d.norm() > 1 && d.divides(a) && d.divides(b))
}

type Pair = ((i64, i64), (i64, i64));

fn key(a: GInt, b: GInt) -> Pair {
    ((a.re, a.im), (b.re, b.im))
}

fn chars_oracle(f: &ResidueField) -> BTreeSet<Pair> {
    let lam: Vec<GInt> = lambda_oracle(f).into_iter().map(|(r, i)| g(r, i)).collect();
    let mut out = BTreeSet::new();
    for &a in &lam {
        for &b in &lam {
            if (a.is_zero() && b.is_zero()) || !coprime(a, b) {
                continue;
            }
            let (a, b) = normalize(a, b);
            out.insert(key(a, b));
        }
    }
    out
}

fn as_pairs(cs: &[CharDifference]) -> BTreeSet<Pair> {
    cs.iter().map(|c| key(c.da, c.db)).collect()
}

#[test]
fn lambda_matches_oracle() {
    for q in ["1+i", "2+i", "3", "3+2i", "4+i", "7"] {
        let f = field(q);
        let got: BTreeSet<(i64, i64)> = component_differences(&f).iter().map(|d| (d.re, d.im)).collect();
        assert_eq!(got, lambda_oracle(&f), "{q}");
    }
}

#[test]
fn difference_set_flags() {
    for q in ["1+i", "2+i", "3"] {
        let f = field(q);
        let lam = lambda_oracle(&f).len();
        let pairs = difference_set(&f);
        assert_eq!(pairs.len(), lam * lam - 1);
        let mut nc = 0;
        for p in &pairs {
            assert!(p.distance_valid);
            assert_eq!(p.nc_valid, !p.da.is_zero() && !p.db.is_zero());
            nc += p.nc_valid as usize;
        }
        assert_eq!(nc, (lam - 1) * (lam - 1));
        assert!(nc < pairs.len());
    }
}

#[test]
fn delta_is_closed_under_units() {
    for q in ["2+i", "1+2i", "3", "3+2i", "4+i", "7"] {
        let sets = DiffSets::new(&field(q));
        for (a, b) in sets.delta() {
            for u in GInt::UNITS {
                assert!(sets.in_delta(u * a, u * b), "{q}: ({a}, {b}) by {u}");
            }
        }
    }
}

#[test]
fn characteristic_sets_match_oracle() {
    for (q, n) in [("1+i", 4), ("2+i", 22), ("3", 102), ("3+2i", 230)] {
        let f = field(q);
        let got = characteristic_set(&f);
        assert_eq!(got.len(), n, "{q}");
        assert_eq!(as_pairs(&got), chars_oracle(&f), "{q}");
        let keys: Vec<_> = got.iter().map(|c| c.sort_key()).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
        for c in &got {
            assert_eq!(gcd(c.da, c.db).unwrap(), GInt::ONE);
        }
    }
}

#[test]
fn characteristic_set_closed_under_square_symmetries() {
    for q in ["2+i", "1+2i", "3", "3+2i", "7"] {
        let chars: HashSet<CharDifference> = characteristic_set(&field(q)).into_iter().collect();
        for c in &chars {
            for (a, b) in [(c.da, c.db), (c.da.conj(), c.db.conj())] {
                for u in GInt::UNITS {
                    assert!(chars.contains(&CharDifference::normalized(a, u * b)), "{q}: {c}");
                }
            }
        }
    }
}

#[test]
fn conjugation_fails_for_four_plus_i() {
    let sets = DiffSets::new(&field("4+i"));
    assert!(sets.in_lambda(g(4, -1)));
    assert!(!sets.in_lambda(g(4, 1)));
}

#[test]
fn normalization() {
    let c = CharDifference::normalized(g(-1, 0), g(1, 1));
    assert_eq!((c.da, c.db), (g(1, 0), g(-1, -1)));
    let c = CharDifference::normalized(GInt::ZERO, g(0, -1));
    assert_eq!((c.da, c.db), (GInt::ZERO, GInt::ONE));
    assert!(CharDifference::ETA_ZERO.is_trivial() && CharDifference::ETA_INFINITY.is_trivial());
    let c = CharDifference::normalized(g(1, 1), g(0, -1));
    assert_eq!(c.eta0().unwrap(), num_complex::Complex64::new(0.5, 0.5));
    assert_eq!(CharDifference::ETA_INFINITY.eta0(), None);
    assert_eq!(c.to_string(), "(1+i, -i)");
}

#[test]
fn kappa_tau_round_trip() {
    for c in characteristic_set(&field("3")) {
        let (k, t) = c.kappa_tau();
        assert_eq!(CharDifference::from_kappa_tau(k, t), c);
    }
}

#[test]
fn q_set_membership() {
    let f11 = field("11");
    assert!(!in_qq(g(11, 3), g(-3, -8), &f11).unwrap());
    assert_eq!(in_qq(GInt::ZERO, GInt::ZERO, &f11), Err(PncError::BothZero));

    let f = field("3");
    let sets = DiffSets::new(&f);
    let chars: HashSet<CharDifference> = sets.characteristic().iter().copied().collect();
    for re in -4..=4 {
        for im in -4..=4 {
            for (kr, ki) in [(1, 0), (2, 1), (-1, 3), (0, 0), (3, -3)] {
                let kappa = g(kr, ki);
                let tau = g(re, im);
                if kappa.is_zero() && tau.is_zero() {
                    continue;
                }
                let member = sets.in_qq(kappa, tau).unwrap();
                let d = gcd(kappa, tau).unwrap();
                let reduced = CharDifference::from_kappa_tau(kappa.exact_div(d).unwrap(), tau.exact_div(d).unwrap());
                assert_eq!(member, chars.contains(&reduced), "({kappa}, {tau})");
            }
        }
    }
}

#[test]
fn validity_bounds() {
    for (q, bound) in [("3", 8), ("4+i", 20), ("3+2i", 16), ("2+3i", 16), ("7", 72)] {
        let rep = validity_bounds_check(&field(q));
        assert_eq!(rep.necessary_bound, bound, "{q}");
        assert!(rep.holds(), "{q}: {rep:?}");
        assert!(rep.on_bound > 0, "{q}: the bound is attained");
    }
}

/// Membership in some closed triangle with vertices in `pts`.
fn in_some_triangle(p: GInt, pts: &[GInt]) -> bool {
    let cross = |o: GInt, a: GInt, b: GInt| (a.re - o.re) * (b.im - o.im) - (a.im - o.im) * (b.re - o.re);
    for i in 0..pts.len() {
        for j in i..pts.len() {
            for k in j..pts.len() {
                let (a, b, c) = (pts[i], pts[j], pts[k]);
                let s = [cross(a, b, p), cross(b, c, p), cross(c, a, p)];
                let inside = s.iter().all(|&x| x >= 0) || s.iter().all(|&x| x <= 0);
                let collinear = cross(a, b, c) == 0;
                if inside && !collinear {
                    return true;
                }
                if collinear {
                    for (u, v) in [(a, b), (b, c), (a, c)] {
                        if cross(u, v, p) == 0
                            && p.re >= u.re.min(v.re)
                            && p.re <= u.re.max(v.re)
                            && p.im >= u.im.min(v.im)
                            && p.im <= u.im.max(v.im)
                        {
                            return true;
                        }
                    }
                }
            }
        }
    }
    false
}

#[test]
fn convex_region_equals_lambda() {
    for q in ["2+i", "3", "4+i"] {
        let f = field(q);
        let lam: Vec<GInt> = component_differences(&f);
        let hull = ConvexRegion::new(&lam);
        let lam_set: HashSet<GInt> = lam.iter().copied().collect();
        for re in -6..=6 {
            for im in -6..=6 {
                let p = g(re, im);
                let by_hull = convex_region_contains(p, &f);
                assert_eq!(by_hull, hull.contains(p));
                assert_eq!(by_hull, in_some_triangle(p, &lam), "{q}: {p}");
                assert_eq!(by_hull, lam_set.contains(&p), "{q}: {p}");
            }
        }
    }
}

#[test]
fn degenerate_hulls() {
    let seg = ConvexRegion::new(&[g(-1, 0), g(0, 0), g(1, 0)]);
    assert!(seg.contains(g(0, 0)) && seg.contains(g(1, 0)) && !seg.contains(g(2, 0)) && !seg.contains(g(0, 1)));
    let pt = ConvexRegion::new(&[g(2, 2)]);
    assert!(pt.contains(g(2, 2)) && !pt.contains(g(0, 0)));
    assert!(!ConvexRegion::new(&[]).contains(GInt::ZERO));
}

proptest! {
    #[test]
    fn hull_membership_of_random_points(re in -8i64..=8, im in -8i64..=8, qi in 0usize..3) {
        let f = field(["2+i", "3", "3+2i"][qi]);
        let lam = component_differences(&f);
        let p = g(re, im);
        prop_assert_eq!(convex_region_contains(p, &f), lam.contains(&p));
    }
}
