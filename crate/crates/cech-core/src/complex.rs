//! Abstract Čech complexes and nerves over a finite configuration of ball
//! centers with one fixed radius, plus the covering-condition check.

use std::collections::BTreeSet;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geom::{disks_common_point, min_enclosing_disk, Disk, Point2};
use crate::proximity::Region;

/// Abstract simplicial complex over vertex indices `0..vertex_count`.
///
/// Simplices are stored as sorted, duplicate-free index vectors; the set is
/// downward closed up to `dimension_cap` and always contains every singleton.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertex_count: usize,
    dimension_cap: usize,
    simplices: BTreeSet<Vec<usize>>,
}

impl SimplicialComplex {
    /// Builds a complex from facets, inserting every face of every facet and
    /// every singleton vertex.
    pub fn from_facets<I>(vertex_count: usize, dimension_cap: usize, facets: I) -> Result<Self>
    where
        I: IntoIterator<Item = Vec<usize>>,
    {
        let mut simplices = BTreeSet::new();
        for i in 0..vertex_count {
            simplices.insert(vec![i]);
        }
        for facet in facets {
            let mut f = facet;
            f.sort_unstable();
            f.dedup();
            if f.is_empty() || f.len() > dimension_cap + 1 {
                return Err(Error::FacetTooLarge);
            }
            if f.iter().any(|&v| v >= vertex_count) {
                return Err(Error::NerveOutOfRange);
            }
            // all nonempty subsets, via bitmask enumeration
            let n = f.len();
            for mask in 1u32..(1u32 << n) {
                let sub: Vec<usize> = (0..n).filter(|&b| mask >> b & 1 == 1).map(|b| f[b]).collect();
                simplices.insert(sub);
            }
        }
        Ok(SimplicialComplex {
            vertex_count,
            dimension_cap,
            simplices,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn dimension_cap(&self) -> usize {
        self.dimension_cap
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn simplices(&self) -> impl Iterator<Item = &Vec<usize>> {
        self.simplices.iter()
    }

    pub fn simplices_of_dim(&self, dim: usize) -> Vec<&Vec<usize>> {
        self.simplices.iter().filter(|s| s.len() == dim + 1).collect()
    }

    /// Number of simplices per dimension, index = dimension.
    pub fn counts_per_dim(&self) -> Vec<usize> {
        let mut counts = Vec::new();
        for s in &self.simplices {
            let d = s.len() - 1;
            if counts.len() <= d {
                counts.resize(d + 1, 0);
            }
            counts[d] += 1;
        }
        counts
    }

    pub fn dimension(&self) -> usize {
        self.simplices.iter().map(|s| s.len() - 1).max().unwrap_or(0)
    }

    pub fn contains(&self, simplex: &[usize]) -> bool {
        let mut s = simplex.to_vec();
        s.sort_unstable();
        s.dedup();
        self.simplices.contains(&s)
    }

    /// Maximal simplices: those not properly contained in another simplex.
    pub fn facets(&self) -> Vec<Vec<usize>> {
        let mut non_maximal: BTreeSet<&Vec<usize>> = BTreeSet::new();
        let mut faces: Vec<Vec<usize>> = Vec::new();
        for s in &self.simplices {
            if s.len() < 2 {
                continue;
            }
            for skip in 0..s.len() {
                let face: Vec<usize> = s
                    .iter()
                    .enumerate()
                    .filter(|&(k, _)| k != skip)
                    .map(|(_, &v)| v)
                    .collect();
                faces.push(face);
            }
        }
        for f in &faces {
            if let Some(found) = self.simplices.get(f) {
                non_maximal.insert(found);
            }
        }
        self.simplices
            .iter()
            .filter(|s| !non_maximal.contains(s))
            .cloned()
            .collect()
    }

    /// True when every nonempty proper subset of every simplex is present.
    /// Exhaustive; intended for tests and verification harnesses.
    pub fn is_downward_closed(&self) -> bool {
        for s in &self.simplices {
            let n = s.len();
            if n == 1 {
                continue;
            }
            for mask in 1u32..(1u32 << n) - 1 {
                let sub: Vec<usize> =
                    (0..n).filter(|&b| mask >> b & 1 == 1).map(|b| s[b]).collect();
                if !self.simplices.contains(&sub) {
                    return false;
                }
            }
        }
        true
    }
}

/// One Čech nerve: a set of ball indices whose closed balls share a common
/// point, referencing the full center configuration it was built over.
#[derive(Debug, Clone)]
pub struct CechNerve {
    members: BTreeSet<usize>,
    radius: f64,
    centers: Arc<[Point2]>,
}

impl CechNerve {
    pub fn new(members: BTreeSet<usize>, radius: f64, centers: Arc<[Point2]>) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::EmptyPointSet);
        }
        if members.iter().any(|&i| i >= centers.len()) {
            return Err(Error::NerveOutOfRange);
        }
        let member_centers: Vec<Point2> = members.iter().map(|&i| centers[i]).collect();
        if !disks_common_point(&member_centers, radius)? {
            return Err(Error::EmptyNerveIntersection);
        }
        Ok(CechNerve {
            members,
            radius,
            centers,
        })
    }

    pub fn members(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().copied()
    }

    pub fn member_count(&self) -> usize {
        self.members.len()
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn configuration(&self) -> &Arc<[Point2]> {
        &self.centers
    }

    pub fn member_centers(&self) -> Vec<Point2> {
        self.members.iter().map(|&i| self.centers[i]).collect()
    }

    pub fn disks(&self) -> Vec<Disk> {
        self.member_centers()
            .into_iter()
            .map(|c| Disk::new(c, self.radius))
            .collect()
    }

    /// Interior membership: `p` lies strictly inside at least one member
    /// ball, i.e. in the union of the open member disks.
    pub fn interior_contains(&self, p: Point2) -> bool {
        self.members
            .iter()
            .any(|&i| self.centers[i].distance(p) < self.radius)
    }
}

/// A collection of nerves covering a region.
#[derive(Debug, Clone)]
pub struct CechComplexCover {
    nerves: Vec<CechNerve>,
    region: Region,
}

impl CechComplexCover {
    /// All nerves must come from one configuration and share one radius.
    pub fn new(nerves: Vec<CechNerve>, region: Region) -> Result<Self> {
        if let Some(first) = nerves.first() {
            for n in &nerves[1..] {
                if n.radius() != first.radius() {
                    return Err(Error::RadiusMismatch);
                }
                if !Arc::ptr_eq(n.configuration(), first.configuration())
                    && n.configuration().as_ref() != first.configuration().as_ref()
                {
                    return Err(Error::NerveOutOfRange);
                }
            }
        }
        Ok(CechComplexCover { nerves, region })
    }

    pub fn nerves(&self) -> &[CechNerve] {
        &self.nerves
    }

    pub fn region(&self) -> &Region {
        &self.region
    }

    /// Covering fraction of the region by the union of all nerve balls.
    pub fn covering(&self, sample_density: f64) -> Result<CoveringReport> {
        let Some(first) = self.nerves.first() else {
            return Err(Error::EmptyPointSet);
        };
        let centers: Vec<Point2> = first.configuration().to_vec();
        covering_check(&self.region, &centers, first.radius(), sample_density)
    }
}

/// Outcome of a covering-condition check. `uncovered_samples` is truncated to
/// the first [`MAX_REPORTED_UNCOVERED`] offenders; `fraction` always reflects
/// the full sample count.
#[derive(Debug, Clone, Serialize)]
pub struct CoveringReport {
    pub covered: bool,
    pub fraction: f64,
    pub total_samples: usize,
    pub uncovered_samples: Vec<Point2>,
}

pub const MAX_REPORTED_UNCOVERED: usize = 256;

/// Builds the Čech complex over `centers` with ball radius `r`: a subset of
/// size at most `max_dim + 1` is a simplex exactly when its balls share a
/// common point.
///
/// Candidates are grown level by level along the pairwise-intersection graph,
/// which is lossless pruning: a common point forces pairwise intersection,
/// and any subset of a simplex is a simplex, so the result is downward closed
/// by construction.
pub fn build_cech_complex(centers: &[Point2], r: f64, max_dim: usize) -> Result<SimplicialComplex> {
    build_cech_complex_with_margin(centers, r, max_dim).map(|(c, _)| c)
}

/// As [`build_cech_complex`], also returning the smallest relative margin
/// `|rho - r| / r` seen over every candidate subset evaluated, where `rho` is
/// the candidate's minimum enclosing radius. Configurations whose margin is
/// tiny sit numerically on the simplex/no-simplex fence. Returns infinity
/// when no candidate was evaluated (a single center).
pub fn build_cech_complex_with_margin(
    centers: &[Point2],
    r: f64,
    max_dim: usize,
) -> Result<(SimplicialComplex, f64)> {
    if centers.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    if !(r.is_finite() && r > 0.0) {
        return Err(Error::InvalidRadius);
    }
    let n = centers.len();
    let mut margin = f64::INFINITY;
    let mut simplices: BTreeSet<Vec<usize>> = BTreeSet::new();
    for i in 0..n {
        simplices.insert(vec![i]);
    }

    // Pairwise intersection graph; the enclosing radius of a pair is half its
    // diameter, so the same statistic drives pairs and larger subsets.
    let mut neighbors: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut adjacent = vec![false; n * n];
    let mut level: Vec<Vec<usize>> = Vec::new();
    if max_dim >= 1 {
        for i in 0..n {
            for j in (i + 1)..n {
                let rho = centers[i].distance(centers[j]) / 2.0;
                margin = margin.min((rho - r).abs() / r);
                if rho <= r + crate::geom::DEFAULT_TIE_TOLERANCE {
                    neighbors[i].push(j);
                    adjacent[i * n + j] = true;
                    adjacent[j * n + i] = true;
                    level.push(vec![i, j]);
                }
            }
        }
        for s in &level {
            simplices.insert(s.clone());
        }
    }

    let mut dim = 1;
    while dim < max_dim && !level.is_empty() {
        let mut next: Vec<Vec<usize>> = Vec::new();
        for s in &level {
            let last = *s.last().expect("nonempty simplex");
            for &v in &neighbors[last] {
                if !s.iter().all(|&u| adjacent[u * n + v]) {
                    continue;
                }
                let mut candidate_centers: Vec<Point2> = s.iter().map(|&u| centers[u]).collect();
                candidate_centers.push(centers[v]);
                let rho = min_enclosing_disk(&candidate_centers)?.radius;
                margin = margin.min((rho - r).abs() / r);
                if rho <= r + crate::geom::DEFAULT_TIE_TOLERANCE {
                    let mut t = s.clone();
                    t.push(v);
                    next.push(t);
                }
            }
        }
        for s in &next {
            simplices.insert(s.clone());
        }
        level = next;
        dim += 1;
    }

    Ok((
        SimplicialComplex {
            vertex_count: n,
            dimension_cap: max_dim,
            simplices,
        },
        margin,
    ))
}

/// Facets of the complex as nerves over the shared configuration. Every ball
/// index appears in at least one nerve because singletons are simplices.
pub fn maximal_nerves(
    complex: &SimplicialComplex,
    centers: &[Point2],
    r: f64,
) -> Result<Vec<CechNerve>> {
    if centers.len() != complex.vertex_count() {
        return Err(Error::NerveOutOfRange);
    }
    let shared: Arc<[Point2]> = centers.to_vec().into();
    complex
        .facets()
        .into_iter()
        .map(|f| CechNerve::new(f.into_iter().collect(), r, Arc::clone(&shared)))
        .collect()
}

/// Samples the region and reports which fraction of the samples lies inside
/// the union of closed balls `B_r(c)`, `c` in `centers`.
///
/// Sampling: point-set regions contribute their literal points, grid masks
/// their true cell centers, disk unions a lattice at spacing `1 /
/// sample_density` clipped to the union. The whole space samples its box.
pub fn covering_check(
    region: &Region,
    centers: &[Point2],
    r: f64,
    sample_density: f64,
) -> Result<CoveringReport> {
    if centers.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    if !(r.is_finite() && r > 0.0) {
        return Err(Error::InvalidRadius);
    }
    let samples = region.coverage_samples(sample_density)?;
    if samples.is_empty() {
        return Err(Error::NoSamples);
    }
    let mut covered = 0usize;
    let mut uncovered = Vec::new();
    for &s in &samples {
        if centers.iter().any(|c| c.distance(s) <= r) {
            covered += 1;
        } else if uncovered.len() < MAX_REPORTED_UNCOVERED {
            uncovered.push(s);
        }
    }
    let total = samples.len();
    Ok(CoveringReport {
        covered: covered == total,
        fraction: covered as f64 / total as f64,
        total_samples: total,
        uncovered_samples: uncovered,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{BoundingBox, GridMask};

    fn p(x: f64, y: f64) -> Point2 {
        Point2::new(x, y)
    }

    /// The three shaded balls of the introductory figure configuration.
    pub(crate) fn three_ball_centers() -> Vec<Point2> {
        vec![p(2.5, 1.8), p(2.5, 2.5), p(1.5, 1.5)]
    }

    #[test]
    fn three_intersecting_balls_give_a_triangle() {
        let centers = three_ball_centers();
        let cx = build_cech_complex(&centers, 1.2, 2).unwrap();
        assert!(cx.contains(&[0, 1, 2]));
        assert!(cx.is_downward_closed());
        assert_eq!(cx.counts_per_dim(), vec![3, 3, 1]);
    }

    #[test]
    fn single_center_complex() {
        let cx = build_cech_complex(&[p(0.0, 0.0)], 1.0, 2).unwrap();
        assert_eq!(cx.len(), 1);
        assert!(cx.contains(&[0]));
    }

    #[test]
    fn equilateral_edges_without_fill() {
        let centers = [p(0.0, 0.0), p(1.0, 0.0), p(0.5, 0.866025)];
        let cx = build_cech_complex(&centers, 0.55, 2).unwrap();
        assert!(cx.contains(&[0, 1]));
        assert!(cx.contains(&[0, 2]));
        assert!(cx.contains(&[1, 2]));
        assert!(!cx.contains(&[0, 1, 2]));
    }

    #[test]
    fn empty_centers_error() {
        assert!(matches!(
            build_cech_complex(&[], 1.0, 2),
            Err(Error::EmptyPointSet)
        ));
    }

    #[test]
    fn monotone_in_radius() {
        let centers = [p(0.0, 0.0), p(1.0, 0.0), p(0.4, 0.9), p(2.0, 0.2)];
        let small = build_cech_complex(&centers, 0.4, 2).unwrap();
        let large = build_cech_complex(&centers, 0.9, 2).unwrap();
        for s in small.simplices() {
            assert!(large.contains(s));
        }
    }

    #[test]
    fn facets_of_filled_triangle() {
        let centers = three_ball_centers();
        let cx = build_cech_complex(&centers, 1.2, 2).unwrap();
        let nerves = maximal_nerves(&cx, &centers, 1.2).unwrap();
        assert_eq!(nerves.len(), 1);
        assert_eq!(nerves[0].member_count(), 3);
    }

    #[test]
    fn facets_of_two_disjoint_pairs() {
        let centers = [p(0.0, 0.0), p(1.0, 0.0), p(10.0, 0.0), p(11.0, 0.0)];
        let cx = build_cech_complex(&centers, 0.6, 2).unwrap();
        let nerves = maximal_nerves(&cx, &centers, 0.6).unwrap();
        assert_eq!(nerves.len(), 2);
        assert!(nerves.iter().all(|n| n.member_count() == 2));
    }

    #[test]
    fn every_index_appears_in_some_nerve() {
        let centers = [p(0.0, 0.0), p(1.0, 0.0), p(5.0, 5.0)];
        let cx = build_cech_complex(&centers, 0.6, 2).unwrap();
        let nerves = maximal_nerves(&cx, &centers, 0.6).unwrap();
        let mut seen = vec![false; centers.len()];
        for n in &nerves {
            for m in n.members() {
                seen[m] = true;
            }
        }
        assert!(seen.into_iter().all(|s| s));
    }

    #[test]
    fn nerve_requires_common_point() {
        let centers: Arc<[Point2]> = vec![p(0.0, 0.0), p(10.0, 0.0)].into();
        let members: BTreeSet<usize> = [0usize, 1].into_iter().collect();
        assert!(matches!(
            CechNerve::new(members, 1.0, centers),
            Err(Error::EmptyNerveIntersection)
        ));
    }

    #[test]
    fn nerve_interior_membership() {
        let centers = three_ball_centers();
        let cx = build_cech_complex(&centers, 1.2, 2).unwrap();
        let nerves = maximal_nerves(&cx, &centers, 1.2).unwrap();
        let nerve = &nerves[0];
        // a member center is interior
        assert!(nerve.interior_contains(p(2.5, 1.8)));
        // a point on the outer boundary of exactly one circle is not
        let boundary = p(2.5 + 1.2, 1.8);
        assert!(!nerve.interior_contains(boundary));
        // a point in the lens overlap of two member disks is interior
        assert!(nerve.interior_contains(p(2.5, 2.15)));
    }

    #[test]
    fn covering_single_point_region() {
        let ambient = BoundingBox::new(p(-2.0, -2.0), p(2.0, 2.0));
        let region = Region::bare_points(ambient, vec![p(0.0, 0.0)]).unwrap();
        let report = covering_check(&region, &[p(0.0, 0.0)], 1.0, 1.0).unwrap();
        assert!(report.covered);
        assert_eq!(report.fraction, 1.0);
    }

    #[test]
    fn covering_gap_detected() {
        // segment-like mask of length 4 along the x axis, one cell tall
        let bounds = BoundingBox::new(p(0.0, 0.0), p(4.0, 0.5));
        let mask = GridMask::filled(16, 1, bounds, true).unwrap();
        let ambient = bounds.pad(1.0);
        let region = Region::mask(ambient, mask).unwrap();
        let report = covering_check(&region, &[p(0.0, 0.25), p(3.0, 0.25)], 1.0, 1.0).unwrap();
        assert!(!report.covered);
        assert!(report.fraction < 1.0);
        assert!(report
            .uncovered_samples
            .iter()
            .all(|s| s.x > 1.0 && s.x < 3.0));
    }

    #[test]
    fn covering_disk_at_every_sample() {
        let bounds = BoundingBox::new(p(0.0, 0.0), p(2.0, 2.0));
        let mask = GridMask::filled(8, 8, bounds, true).unwrap();
        let ambient = bounds.pad(0.5);
        let centers: Vec<Point2> = mask.true_centers().collect();
        let region = Region::mask(ambient, mask).unwrap();
        let report = covering_check(&region, &centers, 0.3, 1.0).unwrap();
        assert!(report.covered);
        assert_eq!(report.fraction, 1.0);
    }

    #[test]
    fn covering_empty_region_errors() {
        let ambient = BoundingBox::new(p(0.0, 0.0), p(1.0, 1.0));
        let region = Region::empty(ambient);
        assert!(matches!(
            covering_check(&region, &[p(0.0, 0.0)], 1.0, 4.0),
            Err(Error::EmptyRegion)
        ));
    }

    #[test]
    fn cover_reports_region_coverage() {
        let centers = three_ball_centers();
        let cx = build_cech_complex(&centers, 1.2, 2).unwrap();
        let nerves = maximal_nerves(&cx, &centers, 1.2).unwrap();
        let ambient = BoundingBox::new(p(-1.0, -1.0), p(5.0, 5.0));
        let region = Region::bare_points(ambient, centers.clone()).unwrap();
        let cover = CechComplexCover::new(nerves, region).unwrap();
        assert_eq!(cover.nerves().len(), 1);
        let report = cover.covering(4.0).unwrap();
        assert!(report.covered);
        assert_eq!(report.fraction, 1.0);
    }

    #[test]
    fn cover_type_validates_radius() {
        let centers: Arc<[Point2]> = three_ball_centers().into();
        let ambient = BoundingBox::new(p(-1.0, -1.0), p(5.0, 5.0));
        let n1 = CechNerve::new([0usize].into_iter().collect(), 1.2, Arc::clone(&centers)).unwrap();
        let n2 = CechNerve::new([1usize].into_iter().collect(), 0.7, Arc::clone(&centers)).unwrap();
        let region = Region::whole(ambient);
        assert!(matches!(
            CechComplexCover::new(vec![n1, n2], region),
            Err(Error::RadiusMismatch)
        ));
    }
}
