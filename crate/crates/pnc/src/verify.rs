//! Self-checks that run each brute-force oracle against its closed form.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::diffs::{component_differences, validity_bounds_check, CharDifference, ConvexRegion, DiffSets};
use crate::error::{PncError, Result};
use crate::gaussint::GInt;
use crate::mapping::{
    canonical_mappings, clustered_set, clusters, cosets, isomorphic_by_canonical_form, isomorphic_by_scaling, nc_map,
    recover_partner, NcMapping, Side,
};
use crate::metrics::{
    d_min, dihedral_images, dmin_at_gain, in_closed_octant, in_open_octant, l_min, optimal_mapping_at_gain,
    symmetric_gains, zero_lmin_gains, DminOracle,
};
use crate::residue::ResidueField;
use crate::voronoi::{adjacent, VoronoiDiagram};

const TOL: f64 = 1e-9;
const GAIN_RADIUS: f64 = 3.0;
const SYMMETRY_RADIUS: f64 = 2.0;
const GRID: usize = 100;
const GRID_RADIUS: f64 = 2.0;
const ORACLE_SAMPLES: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    FieldAxioms,
    Cosets,
    Theorem1,
    Theorem2,
    Theorem3,
    Theorem4,
    Qcriteria,
    Symmetry,
    Convex,
    LemmaBounds,
    All,
}

impl Suite {
    /// Every concrete suite, in the order `All` runs them.
    pub const EACH: [Suite; 10] = [
        Suite::FieldAxioms,
        Suite::Cosets,
        Suite::Theorem1,
        Suite::Theorem2,
        Suite::Theorem3,
        Suite::Theorem4,
        Suite::Qcriteria,
        Suite::Symmetry,
        Suite::Convex,
        Suite::LemmaBounds,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::FieldAxioms => "field-axioms",
            Suite::Cosets => "cosets",
            Suite::Theorem1 => "theorem1",
            Suite::Theorem2 => "theorem2",
            Suite::Theorem3 => "theorem3",
            Suite::Theorem4 => "theorem4",
            Suite::Qcriteria => "qcriteria",
            Suite::Symmetry => "symmetry",
            Suite::Convex => "convex",
            Suite::LemmaBounds => "lemma-bounds",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = PncError;

    fn from_str(s: &str) -> Result<Self> {
        Suite::EACH
            .iter()
            .chain([Suite::All].iter())
            .find(|x| x.name() == s)
            .copied()
            .ok_or_else(|| PncError::InvalidArgument(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub pass: bool,
    pub details: Vec<String>,
}

struct Check {
    pass: bool,
    details: Vec<String>,
}

impl Check {
    fn new() -> Self {
        Check {
            pass: true,
            details: Vec::new(),
        }
    }

    fn note(&mut self, line: String) {
        self.details.push(line);
    }

    fn expect(&mut self, ok: bool, line: String) {
        if !ok {
            self.pass = false;
            self.details.push(format!("FAIL {line}"));
        }
    }

    fn finish(self, suite: Suite) -> SuiteReport {
        SuiteReport {
            suite,
            pass: self.pass,
            details: self.details,
        }
    }
}

/// Run `suite` (or every suite for `All`) on `field`.
pub fn verify(field: &ResidueField, suite: Suite) -> Vec<SuiteReport> {
    let suites: Vec<Suite> = if suite == Suite::All {
        Suite::EACH.to_vec()
    } else {
        vec![suite]
    };
    let sets = DiffSets::new(field);
    let diagram = VoronoiDiagram::new(sets.clone());
    suites
        .into_iter()
        .map(|s| match s {
            Suite::FieldAxioms => field_axioms(field),
            Suite::Cosets => coset_structure(field),
            Suite::Theorem1 => theorem1(&sets),
            Suite::Theorem2 => theorem2(&sets),
            Suite::Theorem3 => theorem3(&diagram),
            Suite::Theorem4 => theorem4(&diagram),
            Suite::Qcriteria => qcriteria(&diagram),
            Suite::Symmetry => symmetry(&sets),
            Suite::Convex => convex(field),
            Suite::LemmaBounds => lemma_bounds(field),
            Suite::All => unreachable!(),
        })
        .collect()
}

fn field_axioms(field: &ResidueField) -> SuiteReport {
    let mut c = Check::new();
    let q = field.q();
    let els = field.elements();
    c.expect(
        els.len() as i64 == q.norm(),
        format!("|Z[i]/{q}| = {} but norm(q) = {}", els.len(), q.norm()),
    );
    c.note(format!("|Z[i]/{q}| = {}", els.len()));
    for &w in els {
        c.expect(field.reduce(w) == w, format!("reduce({w}) != {w}"));
        for k in [q, GInt::I * q, q + GInt::I * q, q - GInt::I * q] {
            for s in [w + k, w - k] {
                c.expect(
                    s.norm() >= w.norm(),
                    format!("{s} is congruent to {w} with smaller norm"),
                );
                c.expect(field.reduce(s) == w, format!("reduce({s}) != {w}"));
            }
        }
    }
    if q.norm() >= 5 {
        let r = (q.norm() as f64).sqrt().ceil() as i64;
        for re in -r..=r {
            for im in -r..=r {
                let w = GInt::new(re, im);
                if 4 * w.norm() < q.norm() {
                    c.expect(
                        field.contains(w),
                        format!("{w} has norm < norm(q)/4 but is not an element"),
                    );
                }
            }
        }
    }
    for &a in field.nonzero() {
        let inv = field.inv(a);
        c.expect(
            inv.as_ref().is_ok_and(|&x| field.mul(a, x) == GInt::ONE),
            format!("{a} has no inverse"),
        );
    }
    if q.norm() <= 25 {
        for &a in els {
            for &b in els {
                c.expect(field.add(a, b) == field.add(b, a), format!("{a} + {b} not commutative"));
                c.expect(field.mul(a, b) == field.mul(b, a), format!("{a} * {b} not commutative"));
                for &d in els {
                    c.expect(
                        field.add(field.add(a, b), d) == field.add(a, field.add(b, d)),
                        format!("addition not associative at {a}, {b}, {d}"),
                    );
                    c.expect(
                        field.mul(field.mul(a, b), d) == field.mul(a, field.mul(b, d)),
                        format!("multiplication not associative at {a}, {b}, {d}"),
                    );
                    c.expect(
                        field.mul(a, field.add(b, d)) == field.add(field.mul(a, b), field.mul(a, d)),
                        format!("not distributive at {a}, {b}, {d}"),
                    );
                }
            }
        }
        c.note(format!(
            "field axioms checked exhaustively over {} triples",
            els.len().pow(3)
        ));
    } else {
        c.note("inverses checked; associativity and distributivity skipped for norm(q) > 25".into());
    }
    c.finish(Suite::FieldAxioms)
}

fn coset_structure(field: &ResidueField) -> SuiteReport {
    let mut c = Check::new();
    let n = field.size();
    for m in canonical_mappings(field) {
        let part = cosets(m, field);
        c.expect(part.classes.len() == n, format!("{m}: {} classes", part.classes.len()));
        let cl = clustered_set(m, field);
        for class in &part.classes {
            c.expect(
                class.members.len() == n,
                format!("{m}: class {} has {} members", class.nc_symbol, class.members.len()),
            );
            let (a0, b0) = class.members[0];
            let mut shifted: Vec<(GInt, GInt)> =
                cl.iter().map(|&(x, y)| (field.add(a0, x), field.add(b0, y))).collect();
            let mut members = class.members.clone();
            let key = |&(a, b): &(GInt, GInt)| (a.sort_key(), b.sort_key());
            shifted.sort_by_key(key);
            members.sort_by_key(key);
            c.expect(
                shifted == members,
                format!("{m}: class {} is not a coset of the clustered set", class.nc_symbol),
            );
        }
        for &wa in field.elements() {
            for &wb in field.elements() {
                let wn = nc_map(m, wa, wb, field);
                c.expect(
                    recover_partner(wn, m, wa, Side::A, field) == wb,
                    format!("{m}: recovery of {wb} from {wa} failed"),
                );
            }
        }
    }
    c.note(format!(
        "{} canonical mappings, each {} classes of {}",
        field.size() - 1,
        n,
        n
    ));
    let grid: Vec<NcMapping> = if n <= 25 {
        field
            .nonzero()
            .iter()
            .flat_map(|&a| field.nonzero().iter().map(move |&b| NcMapping { alpha: a, beta: b }))
            .collect()
    } else {
        let g = field.nonzero()[1];
        canonical_mappings(field)
            .into_iter()
            .flat_map(|m| {
                [
                    m,
                    NcMapping {
                        alpha: field.mul(g, m.alpha),
                        beta: field.mul(g, m.beta),
                    },
                ]
            })
            .collect()
    };
    let partitions: Vec<_> = grid.iter().map(|&m| cosets(m, field).unlabeled()).collect();
    let mut pairs = 0usize;
    for (i, &m1) in grid.iter().enumerate() {
        for (j, &m2) in grid.iter().enumerate() {
            let by_form = isomorphic_by_canonical_form(m1, m2, field);
            let by_scale = isomorphic_by_scaling(m1, m2, field);
            let by_part = partitions[i] == partitions[j];
            c.expect(
                by_form == by_scale && by_scale == by_part,
                format!("isomorphism tests disagree on {m1} vs {m2}"),
            );
            pairs += 1;
        }
    }
    c.note(format!(
        "isomorphism trichotomy over {} mappings ({pairs} ordered pairs)",
        grid.len()
    ));
    c.finish(Suite::Cosets)
}

fn nontrivial_gains(sets: &DiffSets) -> Vec<CharDifference> {
    zero_lmin_gains(sets, GAIN_RADIUS)
        .expect("positive radius")
        .into_iter()
        .map(|z| z.cd)
        .filter(|cd| !cd.is_trivial())
        .collect()
}

fn theorem1(sets: &DiffSets) -> SuiteReport {
    let mut c = Check::new();
    let field = sets.field();
    let oracle = DminOracle::new(sets);
    let gains = nontrivial_gains(sets);
    for cd in &gains {
        let eta = cd.eta0().expect("nontrivial");
        let m = optimal_mapping_at_gain(cd, field).expect("nontrivial");
        c.expect(clusters(m, cd.da, cd.db, field), format!("{m} does not cluster {cd}"));
        let all = oracle.all(eta);
        let best = all.iter().map(|x| x.1).fold(f64::NEG_INFINITY, f64::max);
        let mine = all.iter().find(|x| x.0 == m).map(|x| x.1).unwrap_or(f64::NAN);
        c.expect(
            (mine - best).abs() <= TOL,
            format!("at {cd}: d_min under {m} is {mine}, best is {best}"),
        );
    }
    c.note(format!(
        "{} nontrivial zero-l_min gains with |eta| <= {GAIN_RADIUS}",
        gains.len()
    ));
    c.finish(Suite::Theorem1)
}

fn theorem2(sets: &DiffSets) -> SuiteReport {
    let mut c = Check::new();
    let field = sets.field();
    for z in zero_lmin_gains(sets, GAIN_RADIUS).expect("positive radius") {
        let cd = z.cd;
        if cd.is_trivial() {
            let eta = cd.eta0().unwrap_or(Complex64::new(0.0, 0.0));
            if cd.da.is_zero() {
                c.note(format!("{cd}: infinite gain, d_min = 0"));
                continue;
            }
            let worst = canonical_mappings(field)
                .into_iter()
                .map(|m| d_min(eta, m, sets))
                .fold(f64::NEG_INFINITY, f64::max);
            c.expect(worst == 0.0, format!("{cd}: trivial gain d_min = {worst}"));
            c.note(format!("{cd}: trivial gain, d_min = {worst}"));
            continue;
        }
        let eta = cd.eta0().expect("nontrivial");
        let m = optimal_mapping_at_gain(&cd, field).expect("nontrivial");
        let brute = d_min(eta, m, sets);
        let closed = dmin_at_gain(&cd);
        c.expect(
            (brute - closed).abs() <= TOL,
            format!("{cd}: brute {brute} vs 1/|dA| = {closed}"),
        );
        c.note(format!("{cd}: mapping {m}, d_min {brute:.9}, 1/|dA| {closed:.9}"));
    }
    c.finish(Suite::Theorem2)
}

fn square_grid() -> Vec<Complex64> {
    let step = |k: usize| -GRID_RADIUS + 2.0 * GRID_RADIUS * k as f64 / (GRID - 1) as f64;
    (0..GRID)
        .flat_map(|r| (0..GRID).map(move |s| Complex64::new(step(s), step(r))))
        .collect()
}

fn theorem3(diagram: &VoronoiDiagram) -> SuiteReport {
    let mut c = Check::new();
    let field = diagram.field();
    let oracle = DminOracle::new(diagram.sets());
    let grid = square_grid();
    let results: Vec<(Complex64, bool, Option<String>)> = grid
        .par_iter()
        .map(|&eta| {
            let (idx, on_edge) = diagram.locate(eta);
            if on_edge {
                return (eta, true, None);
            }
            let g = diagram.generators()[idx];
            let all = oracle.all(eta);
            let best = all.iter().map(|x| x.1).fold(f64::NEG_INFINITY, f64::max);
            let mine = match optimal_mapping_at_gain(&g, field) {
                Ok(m) => all.iter().find(|x| x.0 == m).map(|x| x.1).unwrap_or(f64::NAN),
                Err(_) => best,
            };
            let bad = ((mine - best).abs() > TOL).then(|| format!("eta {eta}: cell {g} gives {mine}, best {best}"));
            (eta, false, bad)
        })
        .collect();
    let edges = results.iter().filter(|r| r.1).count();
    for (_, _, bad) in &results {
        if let Some(line) = bad {
            c.expect(false, line.clone());
        }
    }
    c.note(format!("{} grid points, {edges} on edges exempt", results.len()));
    c.finish(Suite::Theorem3)
}

fn theorem4(diagram: &VoronoiDiagram) -> SuiteReport {
    let mut c = Check::new();
    let oracle = DminOracle::new(diagram.sets());
    let grid = square_grid();
    let results: Vec<(bool, Option<String>)> = grid
        .par_iter()
        .map(|&eta| {
            let (_, on_edge) = diagram.locate(eta);
            if on_edge {
                return (true, None);
            }
            let (rocd, _) = diagram.rocd_dmin(eta);
            let (_, best) = oracle.best(eta);
            (
                false,
                ((rocd - best).abs() > TOL).then(|| format!("eta {eta}: rocd {rocd}, brute {best}")),
            )
        })
        .collect();
    let edges = results.iter().filter(|r| r.0).count();
    for (_, bad) in &results {
        if let Some(line) = bad {
            c.expect(false, line.clone());
        }
    }
    c.note(format!("{} grid points, {edges} on edges exempt", results.len()));
    c.finish(Suite::Theorem4)
}

/// Adjacency by Q-criteria and by geometry for every generator pair.
pub fn adjacency_agreement(diagram: &VoronoiDiagram) -> Vec<(usize, usize, bool, bool)> {
    let gens = diagram.generators();
    let pairs: Vec<(usize, usize)> = (0..gens.len())
        .flat_map(|i| (i + 1..gens.len()).map(move |j| (i, j)))
        .collect();
    pairs
        .par_iter()
        .map(|&(i, j)| {
            let by_q = adjacent(&gens[i], &gens[j], diagram.sets()).expect("distinct generators");
            (i, j, by_q, diagram.adjacency_oracle(i, j, ORACLE_SAMPLES))
        })
        .collect()
}

fn qcriteria(diagram: &VoronoiDiagram) -> SuiteReport {
    let mut c = Check::new();
    let field = diagram.field();
    let gens = diagram.generators();
    let rows = adjacency_agreement(diagram);
    let mappings = canonical_mappings(field);
    let mut counts: HashMap<i64, (usize, usize)> = HashMap::new();
    for &(i, j, by_q, by_geo) in &rows {
        let (a, b) = (gens[i], gens[j]);
        c.expect(
            by_q == by_geo,
            format!("{a} vs {b}: Q-criteria {by_q}, geometry {by_geo}"),
        );
        let e = counts.entry(a.xi(&b).norm()).or_default();
        e.0 += 1;
        if by_q {
            e.1 += 1;
            for &m in &mappings {
                let both = clusters(m, a.da, a.db, field) && clusters(m, b.da, b.db, field);
                c.expect(!both, format!("{m} clusters both adjacent generators {a} and {b}"));
            }
        }
    }
    let adjacent_pairs = rows.iter().filter(|r| r.2).count();
    c.note(format!("{} generator pairs, {adjacent_pairs} adjacent", rows.len()));
    let mut keys: Vec<_> = counts.keys().copied().filter(|k| matches!(k, 1 | 2 | 5)).collect();
    keys.sort();
    for k in keys {
        let (total, adj) = counts[&k];
        c.note(format!("norm(Xi) = {k}: {total} pairs, {adj} adjacent"));
    }
    c.finish(Suite::Qcriteria)
}

/// Zero-`l_min` gains within `radius`, and the same set rebuilt from its
/// closed-octant members by the square's symmetries.
pub fn symmetry_expansion(sets: &DiffSets, radius: f64) -> Result<(BTreeSet<Key>, BTreeSet<Key>)> {
    let full: BTreeSet<Key> = zero_lmin_gains(sets, radius)?.iter().map(|z| key(&z.cd)).collect();
    let mut expanded = BTreeSet::new();
    for z in zero_lmin_gains(sets, radius)? {
        let cd = z.cd;
        if cd.is_trivial() {
            expanded.insert(key(&cd));
        } else if in_open_octant(&cd) {
            expanded.insert(key(&cd));
            for img in symmetric_gains(&cd)? {
                expanded.insert(key(&img.cd));
            }
        } else if in_closed_octant(&cd) {
            expanded.extend(dihedral_images(&cd).iter().map(key));
        }
    }
    Ok((full, expanded))
}

/// Sort key of a characteristic difference.
pub type Key = (i64, i64, i64, i64, i64, i64);

fn key(cd: &CharDifference) -> Key {
    cd.sort_key()
}

fn symmetry(sets: &DiffSets) -> SuiteReport {
    let mut c = Check::new();
    let lambda: HashSet<GInt> = sets.lambda().iter().copied().collect();
    let asym: Vec<GInt> = sets
        .lambda()
        .iter()
        .copied()
        .filter(|d| !lambda.contains(&d.conj()) || !lambda.contains(&(GInt::I * *d)))
        .collect();
    if !asym.is_empty() {
        c.note(format!(
            "Lambda is not closed under the square symmetries ({} members, e.g. {}), so the eightfold symmetry cannot hold",
            asym.len(),
            asym[0]
        ));
    }
    let chars: HashSet<CharDifference> = sets.characteristic().iter().copied().collect();
    for cd in sets.characteristic() {
        for img in dihedral_images(cd) {
            c.expect(
                chars.contains(&img),
                format!("image {img} of {cd} is not characteristic"),
            );
        }
    }
    let (full, expanded) = symmetry_expansion(sets, SYMMETRY_RADIUS).expect("positive radius");
    c.expect(
        full == expanded,
        format!(
            "octant expansion gives {} gains, full set has {}",
            expanded.len(),
            full.len()
        ),
    );
    c.note(format!(
        "{} zero-l_min gains with |eta| <= {SYMMETRY_RADIUS}",
        full.len()
    ));
    let mut worst = 0.0f64;
    for r in 1..=10 {
        for t in 0..20 {
            let eta = Complex64::from_polar(0.2 * r as f64, std::f64::consts::FRAC_PI_4 * (t as f64 + 0.5) / 20.0);
            let base = l_min(eta, sets).0;
            for u in GInt::UNITS {
                for img in [u.to_complex() * eta, u.to_complex() * eta.conj()] {
                    worst = worst.max((l_min(img, sets).0 - base).abs());
                }
            }
        }
    }
    c.expect(
        worst <= 1e-12,
        format!("l_min differs by {worst:e} under a square symmetry"),
    );
    c.note(format!(
        "l_min symmetry over 200 octant points, worst deviation {worst:e}"
    ));
    c.finish(Suite::Symmetry)
}

fn convex(field: &ResidueField) -> SuiteReport {
    let mut c = Check::new();
    let lambda: HashSet<GInt> = component_differences(field).into_iter().collect();
    let region = ConvexRegion::of_field(field);
    let r = region
        .vertices()
        .iter()
        .map(|v| v.re.abs().max(v.im.abs()))
        .max()
        .unwrap_or(0)
        + 1;
    let mut inside = 0usize;
    for re in -r..=r {
        for im in -r..=r {
            let g = GInt::new(re, im);
            let hull = region.contains(g);
            inside += hull as usize;
            c.expect(
                hull == lambda.contains(&g),
                format!("{g}: hull {hull}, Lambda {}", lambda.contains(&g)),
            );
        }
    }
    c.note(format!(
        "|Lambda| = {}, lattice points in hull = {inside}, hull vertices = {}",
        lambda.len(),
        region.vertices().len()
    ));
    c.finish(Suite::Convex)
}

fn lemma_bounds(field: &ResidueField) -> SuiteReport {
    let mut c = Check::new();
    if field.q().norm() < 5 {
        c.note(format!(
            "not applicable: the bounds assume norm(q) >= 5, here norm(q) = {}",
            field.q().norm()
        ));
        return c.finish(Suite::LemmaBounds);
    }
    let rep = validity_bounds_check(field);
    c.expect(
        rep.necessary_holds,
        format!("max norm over Lambda {} exceeds {}", rep.max_norm, rep.necessary_bound),
    );
    c.expect(
        rep.sufficient_missing.is_empty(),
        format!("{} small differences missing from Lambda", rep.sufficient_missing.len()),
    );
    c.note(format!(
        "max norm {} <= bound {} ({} on the bound); {} differences of norm < norm(q) all present",
        rep.max_norm, rep.necessary_bound, rep.on_bound, rep.sufficient_checked
    ));
    c.finish(Suite::LemmaBounds)
}

pub fn verify_passes(reports: &[SuiteReport]) -> bool {
    reports.iter().all(|r| r.pass)
}
