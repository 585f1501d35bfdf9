//! Axiom-verification harness for the four proximity systems: Lodato (P1-P5),
//! strong (snN0-snN7), descriptive Lodato (dP0-dP4), and descriptive strong
//! (dsnN0-dsnN7).
//!
//! Each axiom is run as a sampled implication over tuples drawn from a
//! caller-supplied universe of regions. Hypotheses are evaluated by
//! independent brute-force geometry where possible, and sampling is seeded,
//! so a failure indicates an implementation bug rather than noise. The
//! boundary-point axiom snN6 is the one place where the interior-overlap
//! realization genuinely cannot satisfy the statement (a boundary point never
//! lies in an interior), so that single axiom is evaluated under the
//! boundary-contact variant [`strongly_near_boundary`].

use std::str::FromStr;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::descriptive::{
    descriptively_near, strongly_descriptively_near_spaced, FeatureMap, FeatureVector,
};
use crate::error::{Error, Result};
use crate::geom::{BoundingBox, Disk, GridMask, Point2, RegionPoint};
use crate::proximity::{
    near, regions_intersect, strongly_near, strongly_near_boundary, ProximalRelator, Region,
    RegionKind,
};

/// One of the four supported axiom systems.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RelationSystem {
    Lodato,
    Strong,
    DescriptiveLodato,
    DescriptiveStrong,
}

impl FromStr for RelationSystem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "lodato" => Ok(RelationSystem::Lodato),
            "strong" => Ok(RelationSystem::Strong),
            "descriptive-lodato" => Ok(RelationSystem::DescriptiveLodato),
            "descriptive-strong" => Ok(RelationSystem::DescriptiveStrong),
            other => Err(Error::UnknownRelation(other.to_string())),
        }
    }
}

impl RelationSystem {
    pub fn name(&self) -> &'static str {
        match self {
            RelationSystem::Lodato => "lodato",
            RelationSystem::Strong => "strong",
            RelationSystem::DescriptiveLodato => "descriptive-lodato",
            RelationSystem::DescriptiveStrong => "descriptive-strong",
        }
    }

    pub fn axiom_ids(&self) -> &'static [&'static str] {
        match self {
            RelationSystem::Lodato => &["P1", "P2", "P3", "P4", "P5"],
            RelationSystem::Strong => &[
                "snN0", "snN1", "snN2", "snN3", "snN4", "snN5", "snN6", "snN7",
            ],
            RelationSystem::DescriptiveLodato => &["dP0", "dP1", "dP2", "dP3", "dP4"],
            RelationSystem::DescriptiveStrong => &[
                "dsnN0", "dsnN1", "dsnN2", "dsnN3", "dsnN4", "dsnN5", "dsnN6", "dsnN7",
            ],
        }
    }
}

/// Tolerances, feature map, interior sampling spacing, and seed used by one
/// verification run.
#[derive(Debug, Clone)]
pub struct AxiomCheckConfig {
    pub relator: ProximalRelator,
    pub phi: FeatureMap,
    pub interior_spacing: f64,
    pub seed: u64,
}

impl Default for AxiomCheckConfig {
    fn default() -> Self {
        AxiomCheckConfig {
            relator: ProximalRelator::default(),
            phi: FeatureMap::Intensity,
            interior_spacing: 0.25,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct AxiomResult {
    pub axiom: String,
    pub passed: bool,
    pub trials: usize,
    /// Trials on which the axiom's hypothesis actually fired.
    pub hypothesis_hits: usize,
    pub counterexample: Option<Value>,
}

#[derive(Debug, Clone, Serialize)]
pub struct AxiomReport {
    pub system: String,
    pub all_passed: bool,
    pub results: Vec<AxiomResult>,
}

impl AxiomReport {
    pub fn result(&self, axiom: &str) -> Option<&AxiomResult> {
        self.results.iter().find(|r| r.axiom == axiom)
    }
}

enum Trial {
    Vacuous,
    Holds,
    Violated(Value),
}

/// Runs every axiom of the named system over sampled tuples from the
/// universe, reporting pass/fail and the first counterexample per axiom.
pub fn verify_axioms(
    system: RelationSystem,
    universe: &[Region],
    trials: usize,
    config: &AxiomCheckConfig,
) -> Result<AxiomReport> {
    if universe.is_empty() {
        return Err(Error::EmptyUniverse);
    }
    if trials == 0 {
        return Err(Error::ZeroTrials);
    }
    let ambient = universe[0].ambient();
    let mut results = Vec::new();
    for (k, &axiom) in system.axiom_ids().iter().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed ^ (k as u64).wrapping_mul(0x9E37));
        let mut hits = 0usize;
        let mut failure: Option<Value> = None;
        for _ in 0..trials {
            let outcome = run_trial(system, axiom, universe, ambient, config, &mut rng)?;
            match outcome {
                Trial::Vacuous => {}
                Trial::Holds => hits += 1,
                Trial::Violated(cex) => {
                    hits += 1;
                    failure = Some(cex);
                    break;
                }
            }
        }
        results.push(AxiomResult {
            axiom: axiom.to_string(),
            passed: failure.is_none(),
            trials,
            hypothesis_hits: hits,
            counterexample: failure,
        });
    }
    Ok(AxiomReport {
        system: system.name().to_string(),
        all_passed: results.iter().all(|r| r.passed),
        results,
    })
}

fn run_trial(
    system: RelationSystem,
    axiom: &str,
    universe: &[Region],
    ambient: BoundingBox,
    config: &AxiomCheckConfig,
    rng: &mut ChaCha8Rng,
) -> Result<Trial> {
    match system {
        RelationSystem::Lodato => lodato_trial(axiom, universe, ambient, config, rng),
        RelationSystem::Strong => strong_trial(axiom, universe, ambient, config, rng),
        RelationSystem::DescriptiveLodato => {
            descriptive_lodato_trial(axiom, universe, ambient, config, rng)
        }
        RelationSystem::DescriptiveStrong => {
            descriptive_strong_trial(axiom, universe, ambient, config, rng)
        }
    }
}

fn pick<'a>(universe: &'a [Region], rng: &mut ChaCha8Rng) -> &'a Region {
    &universe[rng.random_range(0..universe.len())]
}

fn pick_where<'a>(
    universe: &'a [Region],
    rng: &mut ChaCha8Rng,
    keep: impl Fn(&Region) -> bool,
) -> Option<&'a Region> {
    let candidates: Vec<&Region> = universe.iter().filter(|r| keep(r)).collect();
    if candidates.is_empty() {
        None
    } else {
        Some(candidates[rng.random_range(0..candidates.len())])
    }
}

fn region_json(r: &Region) -> Value {
    match r.kind() {
        RegionKind::Empty => json!({"kind": "empty"}),
        RegionKind::Whole => json!({"kind": "whole"}),
        RegionKind::Points(ps) => json!({
            "kind": "point-set",
            "points": ps.iter().map(|p| json!([p.pos.x, p.pos.y])).collect::<Vec<_>>(),
        }),
        RegionKind::Disks(ds) => json!({
            "kind": "disk-union",
            "disks": ds
                .iter()
                .map(|d| json!([d.center.x, d.center.y, d.radius]))
                .collect::<Vec<_>>(),
        }),
        RegionKind::Mask(m) => json!({
            "kind": "grid-mask",
            "cells": m.true_cells().map(|(i, j)| json!([i, j])).collect::<Vec<_>>(),
        }),
    }
}

fn cex(axiom: &str, regions: &[&Region], detail: &str) -> Value {
    json!({
        "axiom": axiom,
        "detail": detail,
        "regions": regions.iter().map(|r| region_json(r)).collect::<Vec<_>>(),
    })
}

fn implication(
    axiom: &str,
    regions: &[&Region],
    hypothesis: bool,
    conclusion: bool,
    detail: &str,
) -> Trial {
    if !hypothesis {
        Trial::Vacuous
    } else if conclusion {
        Trial::Holds
    } else {
        Trial::Violated(cex(axiom, regions, detail))
    }
}

fn equivalence(
    axiom: &str,
    regions: &[&Region],
    lhs: bool,
    rhs: bool,
    detail: &str,
) -> Trial {
    if lhs == rhs {
        Trial::Holds
    } else {
        Trial::Violated(cex(axiom, regions, detail))
    }
}

/// Union of two regions drawn so the operation is defined; retries a few
/// times before giving up on the trial.
fn pick_union_pair<'a>(
    universe: &'a [Region],
    rng: &mut ChaCha8Rng,
) -> Option<(&'a Region, &'a Region, Region)> {
    for _ in 0..24 {
        let b = pick(universe, rng);
        let c = pick(universe, rng);
        if let Ok(u) = b.union(c) {
            return Some((b, c, u));
        }
    }
    None
}

/// Sound subset evidence: every point of `b` certainly lies in `c`.
fn definitely_subset(b: &Region, c: &Region) -> bool {
    if b.is_empty() {
        return true;
    }
    if c.is_whole() {
        return true;
    }
    match (b.kind(), c.kind()) {
        (RegionKind::Points(ps), _) => ps.iter().all(|p| c.contains(p.pos)),
        (RegionKind::Disks(ds), RegionKind::Disks(cs)) => ds.iter().all(|d| {
            cs.iter()
                .any(|e| d.center.distance(e.center) + d.radius <= e.radius)
        }),
        (RegionKind::Mask(mb), RegionKind::Mask(mc)) => {
            mb.width() == mc.width()
                && mb.height() == mc.height()
                && mb.bounds() == mc.bounds()
                && mb.true_cells().all(|(i, j)| mc.get(i, j))
        }
        (RegionKind::Mask(mb), RegionKind::Disks(cs)) => mb.true_cells().all(|(i, j)| {
            let (lo, hi) = mb.cell_rect(i, j);
            let corners = [
                lo,
                hi,
                Point2::new(lo.x, hi.y),
                Point2::new(hi.x, lo.y),
            ];
            cs.iter()
                .any(|e| corners.iter().all(|&p| e.contains(p)))
        }),
        _ => false,
    }
}

fn lodato_trial(
    axiom: &str,
    universe: &[Region],
    ambient: BoundingBox,
    config: &AxiomCheckConfig,
    rng: &mut ChaCha8Rng,
) -> Result<Trial> {
    let rel = &config.relator;
    Ok(match axiom {
        "P1" => {
            let a = pick(universe, rng);
            let empty = Region::empty(ambient);
            implication(
                axiom,
                &[a],
                true,
                !near(&empty, a, rel)?,
                "empty set near something",
            )
        }
        "P2" => {
            let a = pick(universe, rng);
            let b = pick(universe, rng);
            equivalence(axiom, &[a, b], near(a, b, rel)?, near(b, a, rel)?, "asymmetric near")
        }
        "P3" => {
            let a = pick(universe, rng);
            let b = pick(universe, rng);
            implication(
                axiom,
                &[a, b],
                regions_intersect(a, b)?,
                near(a, b, rel)?,
                "intersecting sets not near",
            )
        }
        "P4" => {
            let a = pick(universe, rng);
            let Some((b, c, u)) = pick_union_pair(universe, rng) else {
                return Ok(Trial::Vacuous);
            };
            equivalence(
                axiom,
                &[a, b, c],
                near(a, &u, rel)?,
                near(a, b, rel)? || near(a, c, rel)?,
                "union additivity failed",
            )
        }
        "P5" => {
            let a = pick(universe, rng);
            let b = pick(universe, rng);
            let c = pick(universe, rng);
            implication(
                axiom,
                &[a, b, c],
                near(a, b, rel)? && definitely_subset(b, c),
                near(a, c, rel)?,
                "transitivity through enclosing set failed",
            )
        }
        _ => unreachable!("unknown lodato axiom {axiom}"),
    })
}

fn strong_trial(
    axiom: &str,
    universe: &[Region],
    ambient: BoundingBox,
    config: &AxiomCheckConfig,
    rng: &mut ChaCha8Rng,
) -> Result<Trial> {
    Ok(match axiom {
        "snN0" => {
            let a = pick(universe, rng);
            let empty = Region::empty(ambient);
            let whole = Region::whole(ambient);
            let first = !strongly_near(&empty, a)?;
            let second = a.is_empty() || strongly_near(&whole, a)?;
            implication(axiom, &[a], true, first && second, "snN0 clause failed")
        }
        "snN1" => {
            let a = pick(universe, rng);
            let b = pick(universe, rng);
            equivalence(
                axiom,
                &[a, b],
                strongly_near(a, b)?,
                strongly_near(b, a)?,
                "asymmetric strong contact",
            )
        }
        "snN2" => {
            let a = pick(universe, rng);
            let b = pick(universe, rng);
            implication(
                axiom,
                &[a, b],
                strongly_near(a, b)?,
                regions_intersect(a, b)?,
                "strongly near sets share no point",
            )
        }
        "snN3" => {
            let a = pick(universe, rng);
            let base = pick(universe, rng);
            let mut family: Vec<&Region> = vec![base];
            let mut union = base.clone();
            for _ in 0..rng.random_range(1..5usize) {
                if let Some(m) = pick_where(universe, rng, |r| union.union(r).is_ok()) {
                    union = union.union(m)?;
                    family.push(m);
                }
            }
            let fires = family
                .iter()
                .any(|b| b.has_nonempty_interior() && strongly_near(a, b).unwrap_or(false));
            implication(
                axiom,
                &[a, base],
                fires,
                strongly_near(a, &union)?,
                "strong contact lost under family union",
            )
        }
        "snN4" => {
            let a = pick(universe, rng);
            let b = pick(universe, rng);
            // sampled-interior hypothesis, independent of the predicate
            let witness = a
                .interior_samples(config.interior_spacing)
                .iter()
                .any(|p| b.interior_contains(p.pos));
            implication(
                axiom,
                &[a, b],
                witness,
                strongly_near(a, b)?,
                "interior overlap without strong contact",
            )
        }
        "snN5" => {
            let a = pick(universe, rng);
            let samples = a.interior_samples(config.interior_spacing);
            if samples.is_empty() {
                return Ok(Trial::Vacuous);
            }
            let x = &samples[rng.random_range(0..samples.len())];
            let singleton = Region::singleton(ambient, x.pos);
            implication(
                axiom,
                &[a],
                true,
                strongly_near(&singleton, a)?,
                "interior point not strongly near its set",
            )
        }
        "snN6" => {
            // evaluated under the boundary-contact variant; the pure
            // interior-overlap realization cannot satisfy this axiom
            let Some(a) = pick_where(universe, rng, |r| {
                matches!(r.kind(), RegionKind::Disks(_) | RegionKind::Mask(_))
            }) else {
                return Ok(Trial::Vacuous);
            };
            let b = pick(universe, rng);
            let Some(x) = boundary_point(a, rng) else {
                return Ok(Trial::Vacuous);
            };
            let singleton = Region::singleton(ambient, x);
            implication(
                axiom,
                &[a, b],
                regions_intersect(a, b)?,
                strongly_near_boundary(&singleton, a)? && strongly_near_boundary(a, b)?,
                "boundary-contact clause failed",
            )
        }
        "snN7" => {
            let Some(a) = pick_where(universe, rng, |r| r.singleton_point().is_some()) else {
                return Ok(Trial::Vacuous);
            };
            let Some(b) = pick_where(universe, rng, |r| r.singleton_point().is_some()) else {
                return Ok(Trial::Vacuous);
            };
            let x = a.singleton_point().expect("filtered").pos;
            let y = b.singleton_point().expect("filtered").pos;
            equivalence(
                axiom,
                &[a, b],
                strongly_near(a, b)?,
                x == y,
                "singleton strong contact differs from equality",
            )
        }
        _ => unreachable!("unknown strong axiom {axiom}"),
    })
}

/// An exactly representable boundary point of a disk-union or mask region:
/// an axis-aligned circle point, or the midpoint of an exposed cell edge.
fn boundary_point(region: &Region, rng: &mut ChaCha8Rng) -> Option<Point2> {
    match region.kind() {
        RegionKind::Disks(ds) => {
            // prefer a disk whose axis point is not swallowed by another disk
            for _ in 0..16 {
                let d = ds[rng.random_range(0..ds.len())];
                let dirs = [(1.0, 0.0), (-1.0, 0.0), (0.0, 1.0), (0.0, -1.0)];
                let (dx, dy) = dirs[rng.random_range(0..4)];
                let p = Point2::new(d.center.x + dx * d.radius, d.center.y + dy * d.radius);
                if !region.interior_contains(p) {
                    return Some(p);
                }
            }
            None
        }
        RegionKind::Mask(m) => {
            let cells: Vec<(usize, usize)> = m.true_cells().collect();
            for _ in 0..16 {
                let (i, j) = cells[rng.random_range(0..cells.len())];
                let (lo, hi) = m.cell_rect(i, j);
                let exposed_left = i == 0 || !m.get(i - 1, j);
                let exposed_right = i + 1 == m.width() || !m.get(i + 1, j);
                let mid_y = (lo.y + hi.y) / 2.0;
                if exposed_left {
                    return Some(Point2::new(lo.x, mid_y));
                }
                if exposed_right {
                    return Some(Point2::new(hi.x, mid_y));
                }
            }
            None
        }
        _ => None,
    }
}

fn points_of(region: &Region) -> Option<&Vec<RegionPoint>> {
    match region.kind() {
        RegionKind::Points(ps) => Some(ps),
        _ => None,
    }
}

/// Brute-force nonempty descriptive intersection over explicit point lists.
fn brute_dcap_nonempty(
    pa: &[RegionPoint],
    pb: &[RegionPoint],
    phi: &FeatureMap,
    tol: f64,
) -> Result<bool> {
    let fa = phi.evaluate_all(pa)?;
    let fb = phi.evaluate_all(pb)?;
    let near_image = |f: &FeatureVector, image: &[FeatureVector]| {
        image.iter().any(|g| f.distance(g) <= tol)
    };
    Ok(fa
        .iter()
        .chain(fb.iter())
        .any(|f| near_image(f, &fa) && near_image(f, &fb)))
}

fn descriptive_lodato_trial(
    axiom: &str,
    universe: &[Region],
    ambient: BoundingBox,
    config: &AxiomCheckConfig,
    rng: &mut ChaCha8Rng,
) -> Result<Trial> {
    let phi = &config.phi;
    let tol = config.relator.feature_tolerance;
    let pick_pts = |rng: &mut ChaCha8Rng| -> Option<&Region> {
        pick_where(universe, rng, |r| points_of(r).is_some())
    };
    Ok(match axiom {
        "dP0" => {
            let Some(a) = pick_pts(rng) else {
                return Ok(Trial::Vacuous);
            };
            let empty = Region::empty(ambient);
            implication(
                axiom,
                &[a],
                true,
                !descriptively_near(&empty, a, phi, tol)?,
                "empty set descriptively near something",
            )
        }
        "dP1" => {
            let (Some(a), Some(b)) = (pick_pts(rng), pick_pts(rng)) else {
                return Ok(Trial::Vacuous);
            };
            equivalence(
                axiom,
                &[a, b],
                descriptively_near(a, b, phi, tol)?,
                descriptively_near(b, a, phi, tol)?,
                "asymmetric descriptive nearness",
            )
        }
        "dP2" => {
            let (Some(a), Some(b)) = (pick_pts(rng), pick_pts(rng)) else {
                return Ok(Trial::Vacuous);
            };
            let hyp = brute_dcap_nonempty(
                points_of(a).expect("points"),
                points_of(b).expect("points"),
                phi,
                tol,
            )?;
            implication(
                axiom,
                &[a, b],
                hyp,
                descriptively_near(a, b, phi, tol)?,
                "nonempty descriptive intersection without nearness",
            )
        }
        "dP3" => {
            let (Some(a), Some(b), Some(c)) = (pick_pts(rng), pick_pts(rng), pick_pts(rng))
            else {
                return Ok(Trial::Vacuous);
            };
            let u = b.union(c)?;
            equivalence(
                axiom,
                &[a, b, c],
                descriptively_near(a, &u, phi, tol)?,
                descriptively_near(a, b, phi, tol)? || descriptively_near(a, c, phi, tol)?,
                "descriptive union additivity failed",
            )
        }
        "dP4" => {
            let (Some(a), Some(b), Some(c)) = (pick_pts(rng), pick_pts(rng), pick_pts(rng))
            else {
                return Ok(Trial::Vacuous);
            };
            let pb = points_of(b).expect("points");
            let mut every_b_near_c = true;
            for q in pb {
                let singleton = Region::points(ambient, vec![q.clone()])?;
                if !descriptively_near(&singleton, c, phi, tol)? {
                    every_b_near_c = false;
                    break;
                }
            }
            implication(
                axiom,
                &[a, b, c],
                descriptively_near(a, b, phi, tol)? && every_b_near_c,
                descriptively_near(a, c, phi, tol)?,
                "descriptive transitivity failed",
            )
        }
        _ => unreachable!("unknown descriptive lodato axiom {axiom}"),
    })
}

fn descriptive_strong_trial(
    axiom: &str,
    universe: &[Region],
    ambient: BoundingBox,
    config: &AxiomCheckConfig,
    rng: &mut ChaCha8Rng,
) -> Result<Trial> {
    let phi = &config.phi;
    let tol = config.relator.feature_tolerance;
    let spacing = config.interior_spacing;
    let sdn = |a: &Region, b: &Region| strongly_descriptively_near_spaced(a, b, phi, tol, spacing);
    Ok(match axiom {
        "dsnN0" => {
            let a = pick(universe, rng);
            let empty = Region::empty(ambient);
            let whole = Region::whole(ambient);
            let first = !sdn(&empty, a)?;
            let second = a.is_empty() || sdn(&whole, a)?;
            implication(axiom, &[a], true, first && second, "dsnN0 clause failed")
        }
        "dsnN1" => {
            let a = pick(universe, rng);
            let b = pick(universe, rng);
            equivalence(
                axiom,
                &[a, b],
                sdn(a, b)?,
                sdn(b, a)?,
                "asymmetric descriptive strong contact",
            )
        }
        "dsnN2" => {
            let a = pick(universe, rng);
            let b = pick(universe, rng);
            if a.is_whole() || b.is_whole() {
                return Ok(Trial::Vacuous);
            }
            // closed descriptive intersection witnessed on interior samples
            // plus any literal points
            let mut wa = a.interior_samples(spacing);
            let mut wb = b.interior_samples(spacing);
            if let Some(ps) = points_of(a) {
                wa.extend(ps.iter().cloned());
            }
            if let Some(ps) = points_of(b) {
                wb.extend(ps.iter().cloned());
            }
            if wa.is_empty() || wb.is_empty() {
                return Ok(Trial::Vacuous);
            }
            implication(
                axiom,
                &[a, b],
                sdn(a, b)?,
                brute_dcap_nonempty(&wa, &wb, phi, tol)?,
                "descriptive strong contact without shared description",
            )
        }
        "dsnN3" => {
            let a = pick(universe, rng);
            let base = pick(universe, rng);
            let mut family: Vec<&Region> = vec![base];
            let mut union = base.clone();
            for _ in 0..rng.random_range(1..5usize) {
                if let Some(m) = pick_where(universe, rng, |r| union.union(r).is_ok()) {
                    union = union.union(m)?;
                    family.push(m);
                }
            }
            let fires = family
                .iter()
                .any(|b| b.has_nonempty_interior() && sdn(a, b).unwrap_or(false));
            implication(
                axiom,
                &[a, base],
                fires,
                sdn(a, &union)?,
                "descriptive strong contact lost under family union",
            )
        }
        "dsnN4" => {
            let a = pick(universe, rng);
            let b = pick(universe, rng);
            let wa = a.interior_samples(spacing);
            let wb = b.interior_samples(spacing);
            if wa.is_empty() || wb.is_empty() {
                return Ok(Trial::Vacuous);
            }
            implication(
                axiom,
                &[a, b],
                brute_dcap_nonempty(&wa, &wb, phi, tol)?,
                sdn(a, b)?,
                "interior descriptive overlap without strong contact",
            )
        }
        "dsnN5" => {
            let a = pick(universe, rng);
            let samples = a.interior_samples(spacing);
            if samples.is_empty() {
                return Ok(Trial::Vacuous);
            }
            let x = samples[rng.random_range(0..samples.len())].clone();
            let singleton = Region::singleton_with_payload(ambient, x);
            implication(
                axiom,
                &[a],
                true,
                sdn(&singleton, a)?,
                "interior description not strongly near its set",
            )
        }
        "dsnN6" => {
            let a = pick(universe, rng);
            let b = pick(universe, rng);
            let sa = a.interior_samples(spacing);
            let sb = b.interior_samples(spacing);
            if sa.is_empty() || sb.is_empty() {
                return Ok(Trial::Vacuous);
            }
            let x = &sa[rng.random_range(0..sa.len())];
            let fx = phi.evaluate(x)?;
            let fb = phi.evaluate_all(&sb)?;
            let hyp = fb.iter().any(|g| fx.distance(g) <= tol);
            implication(
                axiom,
                &[a, b],
                hyp,
                sdn(a, b)?,
                "shared interior description without strong contact",
            )
        }
        "dsnN7" => {
            let Some(a) = pick_where(universe, rng, |r| r.singleton_point().is_some()) else {
                return Ok(Trial::Vacuous);
            };
            let Some(b) = pick_where(universe, rng, |r| r.singleton_point().is_some()) else {
                return Ok(Trial::Vacuous);
            };
            let fx = phi.evaluate(a.singleton_point().expect("filtered"))?;
            let fy = phi.evaluate(b.singleton_point().expect("filtered"))?;
            equivalence(
                axiom,
                &[a, b],
                sdn(a, b)?,
                fx.distance(&fy) <= tol,
                "singleton descriptive strong contact differs from description equality",
            )
        }
        _ => unreachable!("unknown descriptive strong axiom {axiom}"),
    })
}

/// What a generated universe should exercise.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UniverseFlavor {
    /// Disk unions, masks, point sets, singletons, the empty set, the whole
    /// space; coordinates on a dyadic grid so contacts are exact.
    Spatial,
    /// Point sets with small-integer intensity payloads, plus engineered
    /// subset pairs; for the descriptive Lodato axioms.
    DescriptivePoints,
    /// Regions with interiors plus described singletons; for the descriptive
    /// strong axioms with a position feature map.
    DescriptiveInteriors,
}

/// Deterministically generates a mixed region universe over the ambient box.
/// Coordinates and radii are dyadic so tangencies, shared points, and
/// matching descriptions occur exactly.
pub fn generate_universe(
    ambient: BoundingBox,
    seed: u64,
    size: usize,
    flavor: UniverseFlavor,
) -> Vec<Region> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut universe = vec![Region::empty(ambient), Region::whole(ambient)];
    let span_x = ambient.width() - 2.0;
    let span_y = ambient.height() - 2.0;
    let grid_x = (span_x / 0.125) as i64;
    let grid_y = (span_y / 0.125) as i64;
    let coord = |rng: &mut ChaCha8Rng| -> Point2 {
        Point2::new(
            ambient.min.x + 1.0 + 0.125 * rng.random_range(0..=grid_x) as f64,
            ambient.min.y + 1.0 + 0.125 * rng.random_range(0..=grid_y) as f64,
        )
    };
    let radii = [0.25, 0.375, 0.5, 0.625, 0.75, 1.0];

    // shared mask geometry per universe (dyadic cells)
    let mask_cells = 16usize;
    let mask_bounds = BoundingBox::new(
        Point2::new(ambient.min.x + 1.0, ambient.min.y + 1.0),
        Point2::new(ambient.min.x + 1.0 + 4.0, ambient.min.y + 1.0 + 4.0),
    );

    while universe.len() < size.max(6) {
        match flavor {
            UniverseFlavor::Spatial => {
                match rng.random_range(0..10u32) {
                    0 | 1 => {
                        // singleton, sometimes duplicated for equality cases
                        let p = coord(&mut rng);
                        universe.push(Region::singleton(ambient, p));
                        if rng.random_bool(0.5) {
                            universe.push(Region::singleton(ambient, p));
                        }
                    }
                    2 | 3 => {
                        let n = rng.random_range(2..5usize);
                        let pts: Vec<Point2> = (0..n).map(|_| coord(&mut rng)).collect();
                        universe.push(Region::bare_points(ambient, pts).expect("nonempty"));
                    }
                    4..=7 => {
                        let n = rng.random_range(1..4usize);
                        let disks: Vec<Disk> = (0..n)
                            .map(|_| {
                                Disk::new(coord(&mut rng), radii[rng.random_range(0..radii.len())])
                            })
                            .collect();
                        let region = Region::disks(ambient, disks.clone()).expect("nonempty");
                        // occasionally push an enclosing superset for P5
                        if rng.random_bool(0.3) {
                            let grown: Vec<Disk> = disks
                                .iter()
                                .map(|d| Disk::new(d.center, d.radius + 0.25))
                                .collect();
                            universe.push(Region::disks(ambient, grown).expect("nonempty"));
                        }
                        universe.push(region);
                    }
                    _ => {
                        let mut mask =
                            GridMask::filled(mask_cells, mask_cells, mask_bounds, false)
                                .expect("valid geometry");
                        let mut i = rng.random_range(0..mask_cells);
                        let mut j = rng.random_range(0..mask_cells);
                        for _ in 0..rng.random_range(3..12usize) {
                            mask.set(i, j, true);
                            match rng.random_range(0..4u32) {
                                0 => i = (i + 1).min(mask_cells - 1),
                                1 => i = i.saturating_sub(1),
                                2 => j = (j + 1).min(mask_cells - 1),
                                _ => j = j.saturating_sub(1),
                            }
                        }
                        universe.push(Region::mask(ambient, mask).expect("nonempty"));
                    }
                }
            }
            UniverseFlavor::DescriptivePoints => {
                let n = rng.random_range(1..5usize);
                let pts: Vec<RegionPoint> = (0..n)
                    .map(|_| {
                        RegionPoint::new(
                            coord(&mut rng),
                            vec![rng.random_range(0..4u32) as f64],
                        )
                    })
                    .collect();
                let region = Region::points(ambient, pts.clone()).expect("nonempty");
                // engineered superset so dP4's hypothesis fires
                if rng.random_bool(0.35) {
                    let mut grown = pts;
                    grown.push(RegionPoint::new(
                        coord(&mut rng),
                        vec![rng.random_range(0..4u32) as f64],
                    ));
                    universe.push(Region::points(ambient, grown).expect("nonempty"));
                }
                universe.push(region);
            }
            UniverseFlavor::DescriptiveInteriors => {
                match rng.random_range(0..6u32) {
                    0 => {
                        let p = RegionPoint::bare(coord(&mut rng));
                        universe.push(Region::singleton_with_payload(ambient, p.clone()));
                        if rng.random_bool(0.5) {
                            universe.push(Region::singleton_with_payload(ambient, p));
                        }
                    }
                    1 => {
                        let mut mask =
                            GridMask::filled(mask_cells, mask_cells, mask_bounds, false)
                                .expect("valid geometry");
                        let mut i = rng.random_range(0..mask_cells);
                        let mut j = rng.random_range(0..mask_cells);
                        for _ in 0..rng.random_range(3..10usize) {
                            mask.set(i, j, true);
                            match rng.random_range(0..4u32) {
                                0 => i = (i + 1).min(mask_cells - 1),
                                1 => i = i.saturating_sub(1),
                                2 => j = (j + 1).min(mask_cells - 1),
                                _ => j = j.saturating_sub(1),
                            }
                        }
                        universe.push(Region::mask(ambient, mask).expect("nonempty"));
                    }
                    _ => {
                        let n = rng.random_range(1..3usize);
                        let disks: Vec<Disk> = (0..n)
                            .map(|_| {
                                Disk::new(coord(&mut rng), radii[rng.random_range(0..radii.len())])
                            })
                            .collect();
                        universe.push(Region::disks(ambient, disks).expect("nonempty"));
                    }
                }
            }
        }
    }
    universe
}
