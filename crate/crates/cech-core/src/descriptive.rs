//! Feature maps, descriptive intersection, descriptive balls and nerve
//! complexes, and the descriptive (strong) proximity predicates.
//!
//! Descriptions are real feature vectors attached to points. Feature equality
//! is realized as `‖Φ(x) − Φ(y)‖ <= tol`; pass `tol = 0` for exact matching
//! of integer-valued features and a small slack (e.g. `1e-9`) for features
//! produced by floating-point arithmetic.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::complex::{CechNerve, SimplicialComplex};
use crate::error::{Error, Result};
use crate::geom::{Disk, Point2, RegionPoint};
use crate::proximity::{check_ambient, Region, RegionKind};

/// A real feature vector. Dimension is fixed within one feature map's range.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FeatureVector(pub Vec<f64>);

impl FeatureVector {
    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn distance(&self, other: &FeatureVector) -> f64 {
        assert_eq!(self.0.len(), other.0.len(), "feature dimension mismatch");
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt()
    }
}

/// Built-in feature maps over points with payloads. Evaluation is pure and
/// deterministic: equal inputs give equal feature vectors.
#[derive(Debug, Clone, PartialEq)]
pub enum FeatureMap {
    /// The point's own coordinates; reduces descriptive notions to spatial ones.
    Position,
    /// One grayscale intensity from the first payload column.
    Intensity,
    /// Two color channels from the first two payload columns.
    ColorPair,
    /// Three color channels from the first three payload columns.
    ColorTriple,
    /// The same constant label everywhere.
    ConstantLabel(f64),
}

impl FeatureMap {
    /// Parses a map name: `position`, `intensity` (alias `grayscale`),
    /// `color-pair`, `color` (alias `color-triple`), `constant`, or
    /// `constant:<value>`.
    pub fn parse(name: &str) -> Result<FeatureMap> {
        let lower = name.trim().to_ascii_lowercase();
        if let Some(v) = lower.strip_prefix("constant:") {
            let value: f64 = v
                .parse()
                .map_err(|_| Error::UnknownFeatureMap(name.to_string()))?;
            if !value.is_finite() {
                return Err(Error::UnknownFeatureMap(name.to_string()));
            }
            return Ok(FeatureMap::ConstantLabel(value));
        }
        match lower.as_str() {
            "position" => Ok(FeatureMap::Position),
            "intensity" | "grayscale" | "grayscale-intensity" => Ok(FeatureMap::Intensity),
            "color-pair" => Ok(FeatureMap::ColorPair),
            "color" | "color-triple" => Ok(FeatureMap::ColorTriple),
            "constant" | "constant-label" => Ok(FeatureMap::ConstantLabel(0.0)),
            _ => Err(Error::UnknownFeatureMap(name.to_string())),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            FeatureMap::Position => "position",
            FeatureMap::Intensity => "intensity",
            FeatureMap::ColorPair => "color-pair",
            FeatureMap::ColorTriple => "color-triple",
            FeatureMap::ConstantLabel(_) => "constant-label",
        }
    }

    /// Feature dimension of the range.
    pub fn arity(&self) -> usize {
        match self {
            FeatureMap::Position | FeatureMap::ColorPair => 2,
            FeatureMap::Intensity | FeatureMap::ConstantLabel(_) => 1,
            FeatureMap::ColorTriple => 3,
        }
    }

    fn payload_need(&self) -> usize {
        match self {
            FeatureMap::Position | FeatureMap::ConstantLabel(_) => 0,
            FeatureMap::Intensity => 1,
            FeatureMap::ColorPair => 2,
            FeatureMap::ColorTriple => 3,
        }
    }

    pub fn evaluate(&self, p: &RegionPoint) -> Result<FeatureVector> {
        let need = self.payload_need();
        if p.payload.len() < need {
            return Err(Error::MissingPayload {
                map: self.name(),
                needed: need,
                present: p.payload.len(),
            });
        }
        Ok(match self {
            FeatureMap::Position => FeatureVector(vec![p.pos.x, p.pos.y]),
            FeatureMap::Intensity => FeatureVector(vec![p.payload[0]]),
            FeatureMap::ColorPair => FeatureVector(p.payload[..2].to_vec()),
            FeatureMap::ColorTriple => FeatureVector(p.payload[..3].to_vec()),
            FeatureMap::ConstantLabel(v) => FeatureVector(vec![*v]),
        })
    }

    pub fn evaluate_all(&self, points: &[RegionPoint]) -> Result<Vec<FeatureVector>> {
        points.iter().map(|p| self.evaluate(p)).collect()
    }
}

fn within_tol_of_any(f: &FeatureVector, image: &[FeatureVector], tol: f64) -> bool {
    image.iter().any(|g| f.distance(g) <= tol)
}

/// Descriptive intersection of two finite point-set regions: the points of
/// `A ∪ B` whose description lies within `tol` of both feature images.
/// Returns a point-set region, or the empty region when nothing matches.
pub fn descriptive_intersection(
    a: &Region,
    b: &Region,
    phi: &FeatureMap,
    tol: f64,
) -> Result<Region> {
    check_ambient(a, b)?;
    if a.is_empty() || b.is_empty() {
        return Ok(Region::empty(a.ambient()));
    }
    let (pa, pb) = match (a.kind(), b.kind()) {
        (RegionKind::Points(pa), RegionKind::Points(pb)) => (pa, pb),
        _ => return Err(Error::PointSetsRequired),
    };
    let fa = phi.evaluate_all(pa)?;
    let fb = phi.evaluate_all(pb)?;
    let mut result: Vec<RegionPoint> = Vec::new();
    let mut push = |p: &RegionPoint, f: &FeatureVector| {
        if within_tol_of_any(f, &fa, tol) && within_tol_of_any(f, &fb, tol) && !result.contains(p) {
            result.push(p.clone());
        }
    };
    for (p, f) in pa.iter().zip(&fa) {
        push(p, f);
    }
    for (p, f) in pb.iter().zip(&fb) {
        push(p, f);
    }
    if result.is_empty() {
        Ok(Region::empty(a.ambient()))
    } else {
        Region::points(a.ambient(), result)
    }
}

/// Descriptive nearness of finite point sets, realized as a nonempty
/// descriptive intersection.
pub fn descriptively_near(a: &Region, b: &Region, phi: &FeatureMap, tol: f64) -> Result<bool> {
    Ok(!descriptive_intersection(a, b, phi, tol)?.is_empty())
}

/// Per-ball descriptions for nerve-level descriptive predicates, indexed by
/// ball index in the parent configuration.
#[derive(Debug, Clone)]
pub struct BallFeatures {
    features: Vec<FeatureVector>,
}

impl BallFeatures {
    /// Explicit per-ball labels, e.g. surface colors.
    pub fn from_labels(features: Vec<FeatureVector>) -> Self {
        BallFeatures { features }
    }

    /// Mean of `phi` over the lattice points inside each ball, sampled on a
    /// `samples_per_axis` grid across the ball's bounding box.
    pub fn mean_over_disks(
        centers: &[Point2],
        r: f64,
        phi: &FeatureMap,
        samples_per_axis: usize,
    ) -> Result<Self> {
        if !(r.is_finite() && r > 0.0) {
            return Err(Error::InvalidRadius);
        }
        let n = samples_per_axis.max(2);
        let mut features = Vec::with_capacity(centers.len());
        for &c in centers {
            let disk = Disk::new(c, r);
            let mut acc: Option<Vec<f64>> = None;
            let mut count = 0usize;
            for j in 0..n {
                for i in 0..n {
                    let p = Point2::new(
                        c.x - r + 2.0 * r * (i as f64 + 0.5) / n as f64,
                        c.y - r + 2.0 * r * (j as f64 + 0.5) / n as f64,
                    );
                    if !disk.contains(p) {
                        continue;
                    }
                    let f = phi.evaluate(&RegionPoint::bare(p))?;
                    match &mut acc {
                        None => acc = Some(f.0),
                        Some(sum) => {
                            for (s, v) in sum.iter_mut().zip(&f.0) {
                                *s += v;
                            }
                        }
                    }
                    count += 1;
                }
            }
            let sum = acc.ok_or(Error::NoSamples)?;
            features.push(FeatureVector(
                sum.into_iter().map(|s| s / count as f64).collect(),
            ));
        }
        Ok(BallFeatures { features })
    }

    pub fn get(&self, ball: usize) -> Result<&FeatureVector> {
        self.features.get(ball).ok_or(Error::MissingBallFeature)
    }

    pub fn len(&self) -> usize {
        self.features.len()
    }

    pub fn is_empty(&self) -> bool {
        self.features.is_empty()
    }
}

/// Nerve-level descriptive nearness: some member ball of one nerve matches
/// some member ball of the other in feature distance at most `tol`.
pub fn nerves_descriptively_near(
    na: &CechNerve,
    nb: &CechNerve,
    features: &BallFeatures,
    tol: f64,
) -> Result<bool> {
    for a in na.members() {
        let fa = features.get(a)?;
        for b in nb.members() {
            if fa.distance(features.get(b)?) <= tol {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// Descriptive strong proximity: the descriptive intersection restricted to
/// interior points is nonempty, with the singleton and whole-space
/// conventions. Interior points are sampled on the shared ambient lattice at
/// a spacing derived from the region geometry; use
/// [`strongly_descriptively_near_spaced`] to control it.
pub fn strongly_descriptively_near(
    a: &Region,
    b: &Region,
    phi: &FeatureMap,
    tol: f64,
) -> Result<bool> {
    let spacing = default_interior_spacing(a).min(default_interior_spacing(b));
    strongly_descriptively_near_spaced(a, b, phi, tol, spacing)
}

/// Sampling spacing that resolves the thinnest feature of the region.
pub fn default_interior_spacing(region: &Region) -> f64 {
    match region.kind() {
        RegionKind::Disks(ds) => {
            ds.iter().map(|d| d.radius).fold(f64::INFINITY, f64::min) / 4.0
        }
        RegionKind::Mask(m) => {
            let (cw, ch) = m.cell_size();
            cw.min(ch)
        }
        _ => {
            let ambient = region.ambient();
            ambient.width().max(ambient.height()) / 64.0
        }
    }
}

pub fn strongly_descriptively_near_spaced(
    a: &Region,
    b: &Region,
    phi: &FeatureMap,
    tol: f64,
    spacing: f64,
) -> Result<bool> {
    check_ambient(a, b)?;
    if a.is_empty() || b.is_empty() {
        return Ok(false);
    }
    if a.is_whole() || b.is_whole() {
        return Ok(true);
    }
    match (a.singleton_point(), b.singleton_point()) {
        (Some(x), Some(y)) => Ok(phi.evaluate(x)?.distance(&phi.evaluate(y)?) <= tol),
        (Some(x), None) => singleton_matches_interior(x, b, phi, tol, spacing),
        (None, Some(y)) => singleton_matches_interior(y, a, phi, tol, spacing),
        (None, None) => {
            let sa = a.interior_samples(spacing);
            let sb = b.interior_samples(spacing);
            let fa = phi.evaluate_all(&sa)?;
            let fb = phi.evaluate_all(&sb)?;
            Ok(fa
                .iter()
                .chain(fb.iter())
                .any(|f| within_tol_of_any(f, &fa, tol) && within_tol_of_any(f, &fb, tol)))
        }
    }
}

/// `Φ(x) ∈ Φ(Int A)` up to `tol`: the singleton's description occurs among
/// the interior descriptions, regardless of where the singleton sits.
fn singleton_matches_interior(
    x: &RegionPoint,
    region: &Region,
    phi: &FeatureMap,
    tol: f64,
    spacing: f64,
) -> Result<bool> {
    let fx = phi.evaluate(x)?;
    let samples = region.interior_samples(spacing);
    let fs = phi.evaluate_all(&samples)?;
    Ok(within_tol_of_any(&fx, &fs, tol))
}

/// A descriptive ball over a finite domain: the center index plus every
/// domain index whose description lies within `feature_radius` of the
/// center's. The center is always a member.
#[derive(Debug, Clone, PartialEq)]
pub struct DescriptiveBall {
    center: usize,
    feature_radius: f64,
    members: BTreeSet<usize>,
}

impl DescriptiveBall {
    pub fn center(&self) -> usize {
        self.center
    }

    pub fn feature_radius(&self) -> f64 {
        self.feature_radius
    }

    pub fn members(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().copied()
    }

    pub fn member_count(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, index: usize) -> bool {
        self.members.contains(&index)
    }

    pub fn member_set(&self) -> &BTreeSet<usize> {
        &self.members
    }
}

/// Materializes the descriptive ball around `domain[center]`.
pub fn build_descriptive_ball(
    center: usize,
    domain: &[RegionPoint],
    phi: &FeatureMap,
    feature_radius: f64,
) -> Result<DescriptiveBall> {
    if center >= domain.len() {
        return Err(Error::CenterNotInDomain);
    }
    if !(feature_radius.is_finite() && feature_radius > 0.0) {
        return Err(Error::InvalidRadius);
    }
    let fc = phi.evaluate(&domain[center])?;
    let mut members = BTreeSet::new();
    for (i, q) in domain.iter().enumerate() {
        if fc.distance(&phi.evaluate(q)?) <= feature_radius {
            members.insert(i);
        }
    }
    debug_assert!(members.contains(&center));
    Ok(DescriptiveBall {
        center,
        feature_radius,
        members,
    })
}

/// A descriptive nerve: descriptive balls with a common member.
#[derive(Debug, Clone)]
pub struct DescriptiveNerve {
    balls: Vec<DescriptiveBall>,
}

impl DescriptiveNerve {
    pub fn new(balls: Vec<DescriptiveBall>) -> Result<Self> {
        let Some(first) = balls.first() else {
            return Err(Error::EmptyPointSet);
        };
        let mut common = first.member_set().clone();
        for b in &balls[1..] {
            common = common.intersection(b.member_set()).copied().collect();
        }
        if common.is_empty() {
            return Err(Error::EmptyNerveIntersection);
        }
        Ok(DescriptiveNerve { balls })
    }

    pub fn balls(&self) -> &[DescriptiveBall] {
        &self.balls
    }

    pub fn common_members(&self) -> BTreeSet<usize> {
        let mut common = self.balls[0].member_set().clone();
        for b in &self.balls[1..] {
            common = common.intersection(b.member_set()).copied().collect();
        }
        common
    }
}

/// Builds the descriptive nerve complex over the domain: an index subset is a
/// simplex exactly when the member sets of its descriptive balls share a
/// domain point. Membership sets are bit-packed and intersections carried
/// incrementally while growing simplices level by level.
pub fn build_descriptive_nerve_complex(
    domain: &[RegionPoint],
    phi: &FeatureMap,
    feature_radius: f64,
    max_dim: usize,
) -> Result<SimplicialComplex> {
    if domain.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    if !(feature_radius.is_finite() && feature_radius > 0.0) {
        return Err(Error::InvalidRadius);
    }
    let n = domain.len();
    let words = n.div_ceil(64);
    let feats = phi.evaluate_all(domain)?;
    let mut member_bits: Vec<Vec<u64>> = vec![vec![0u64; words]; n];
    for i in 0..n {
        for j in 0..n {
            if feats[i].distance(&feats[j]) <= feature_radius {
                member_bits[i][j / 64] |= 1u64 << (j % 64);
            }
        }
    }
    let nonzero = |bits: &[u64]| bits.iter().any(|&w| w != 0);
    let intersect = |a: &[u64], b: &[u64]| -> Vec<u64> {
        a.iter().zip(b).map(|(x, y)| x & y).collect()
    };

    let mut facets: Vec<Vec<usize>> = Vec::new();
    // (simplex, running intersection of member sets)
    let mut level: Vec<(Vec<usize>, Vec<u64>)> = (0..n)
        .map(|i| (vec![i], member_bits[i].clone()))
        .collect();
    for (s, _) in &level {
        facets.push(s.clone());
    }
    let mut dim = 0;
    while dim < max_dim && !level.is_empty() {
        let mut next = Vec::new();
        for (s, inter) in &level {
            let last = *s.last().expect("nonempty");
            for v in (last + 1)..n {
                let joined = intersect(inter, &member_bits[v]);
                if nonzero(&joined) {
                    let mut t = s.clone();
                    t.push(v);
                    facets.push(t.clone());
                    next.push((t, joined));
                }
            }
        }
        level = next;
        dim += 1;
    }
    SimplicialComplex::from_facets(n, max_dim, facets)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{build_cech_complex, maximal_nerves};
    use crate::geom::BoundingBox;
    use crate::proximity::{near, ProximalRelator};

    fn p(x: f64, y: f64) -> Point2 {
        Point2::new(x, y)
    }

    fn ambient() -> BoundingBox {
        BoundingBox::new(p(-8.0, -8.0), p(8.0, 8.0))
    }

    fn pts_region(pts: Vec<RegionPoint>) -> Region {
        Region::points(ambient(), pts).unwrap()
    }

    fn gray(x: f64, y: f64, v: f64) -> RegionPoint {
        RegionPoint::new(p(x, y), vec![v])
    }

    #[test]
    fn intersection_of_region_with_itself_is_union() {
        let a = pts_region(vec![gray(0.0, 0.0, 1.0), gray(1.0, 0.0, 2.0)]);
        let out = descriptive_intersection(&a, &a, &FeatureMap::Intensity, 0.0).unwrap();
        match out.kind() {
            RegionKind::Points(ps) => assert_eq!(ps.len(), 2),
            _ => panic!("expected points"),
        }
    }

    #[test]
    fn spatially_disjoint_sets_matching_one_color() {
        let a = pts_region(vec![gray(0.0, 0.0, 1.0), gray(0.5, 0.0, 2.0)]);
        let b = pts_region(vec![gray(5.0, 5.0, 2.0), gray(6.0, 5.0, 3.0)]);
        let out = descriptive_intersection(&a, &b, &FeatureMap::Intensity, 0.0).unwrap();
        match out.kind() {
            RegionKind::Points(ps) => {
                assert_eq!(ps.len(), 2);
                assert!(ps.iter().all(|q| q.payload[0] == 2.0));
            }
            _ => panic!("expected points"),
        }
        assert!(descriptively_near(&a, &b, &FeatureMap::Intensity, 0.0).unwrap());
    }

    #[test]
    fn disjoint_feature_images_empty_intersection() {
        let a = pts_region(vec![gray(0.0, 0.0, 1.0)]);
        let b = pts_region(vec![gray(1.0, 0.0, 2.0)]);
        let out = descriptive_intersection(&a, &b, &FeatureMap::Intensity, 0.0).unwrap();
        assert!(out.is_empty());
        assert!(!descriptively_near(&a, &b, &FeatureMap::Intensity, 0.0).unwrap());
    }

    #[test]
    fn intersection_requires_point_sets() {
        let a = pts_region(vec![gray(0.0, 0.0, 1.0)]);
        let d = Region::disks(ambient(), vec![Disk::new(p(0.0, 0.0), 1.0)]).unwrap();
        assert!(matches!(
            descriptive_intersection(&a, &d, &FeatureMap::Intensity, 0.0),
            Err(Error::PointSetsRequired)
        ));
    }

    #[test]
    fn intersection_is_symmetric() {
        let a = pts_region(vec![gray(0.0, 0.0, 1.0), gray(1.0, 1.0, 3.0)]);
        let b = pts_region(vec![gray(2.0, 0.0, 3.0), gray(3.0, 1.0, 4.0)]);
        let ab = descriptive_intersection(&a, &b, &FeatureMap::Intensity, 0.0).unwrap();
        let ba = descriptive_intersection(&b, &a, &FeatureMap::Intensity, 0.0).unwrap();
        match (ab.kind(), ba.kind()) {
            (RegionKind::Points(x), RegionKind::Points(y)) => {
                assert_eq!(x.len(), y.len());
                for q in x {
                    assert!(y.contains(q));
                }
            }
            _ => panic!("expected points"),
        }
    }

    #[test]
    fn position_reduction_matches_spatial_near() {
        let shared = p(1.0, 1.0);
        let a = pts_region(vec![RegionPoint::bare(p(0.0, 0.0)), RegionPoint::bare(shared)]);
        let b = pts_region(vec![RegionPoint::bare(shared), RegionPoint::bare(p(3.0, 3.0))]);
        let c = pts_region(vec![RegionPoint::bare(p(4.0, 4.0))]);
        let rel = ProximalRelator::default();
        assert_eq!(
            descriptively_near(&a, &b, &FeatureMap::Position, 0.0).unwrap(),
            near(&a, &b, &rel).unwrap()
        );
        assert_eq!(
            descriptively_near(&a, &c, &FeatureMap::Position, 0.0).unwrap(),
            near(&a, &c, &rel).unwrap()
        );
    }

    #[test]
    fn descriptive_ball_with_constant_features_is_whole_domain() {
        let domain: Vec<RegionPoint> = (0..5)
            .map(|i| RegionPoint::bare(p(i as f64, 0.0)))
            .collect();
        let ball =
            build_descriptive_ball(2, &domain, &FeatureMap::ConstantLabel(7.0), 0.5).unwrap();
        assert_eq!(ball.member_count(), 5);
    }

    #[test]
    fn descriptive_ball_position_reduces_to_spatial_ball() {
        let domain: Vec<RegionPoint> = (0..6)
            .map(|i| RegionPoint::bare(p(i as f64 * 0.4, 0.0)))
            .collect();
        let r = 0.9;
        let ball = build_descriptive_ball(0, &domain, &FeatureMap::Position, r).unwrap();
        for (i, q) in domain.iter().enumerate() {
            assert_eq!(
                ball.contains(i),
                q.pos.distance(domain[0].pos) <= r,
                "index {i}"
            );
        }
    }

    #[test]
    fn descriptive_ball_grayscale_example() {
        let domain = vec![gray(0.0, 0.0, 0.0), gray(1.0, 0.0, 0.4), gray(2.0, 0.0, 0.9)];
        let ball = build_descriptive_ball(0, &domain, &FeatureMap::Intensity, 0.5).unwrap();
        assert!(ball.contains(0));
        assert!(ball.contains(1));
        assert!(!ball.contains(2));
    }

    #[test]
    fn descriptive_ball_center_must_be_in_domain() {
        let domain = vec![gray(0.0, 0.0, 0.0)];
        assert!(matches!(
            build_descriptive_ball(3, &domain, &FeatureMap::Intensity, 0.5),
            Err(Error::CenterNotInDomain)
        ));
    }

    #[test]
    fn constant_features_give_full_simplex() {
        let domain: Vec<RegionPoint> = (0..4)
            .map(|i| RegionPoint::bare(p(i as f64, 0.0)))
            .collect();
        let cx =
            build_descriptive_nerve_complex(&domain, &FeatureMap::ConstantLabel(1.0), 0.1, 3)
                .unwrap();
        assert!(cx.contains(&[0, 1, 2, 3]));
        assert_eq!(cx.len(), 15);
    }

    #[test]
    fn two_feature_clusters_stay_disjoint() {
        let domain = vec![
            gray(0.0, 0.0, 0.0),
            gray(1.0, 0.0, 0.05),
            gray(2.0, 0.0, 0.9),
            gray(3.0, 0.0, 0.95),
        ];
        let cx =
            build_descriptive_nerve_complex(&domain, &FeatureMap::Intensity, 0.1, 3).unwrap();
        assert!(cx.contains(&[0, 1]));
        assert!(cx.contains(&[2, 3]));
        assert!(!cx.contains(&[1, 2]));
        assert!(!cx.contains(&[0, 2]));
    }

    /// With position features, descriptive balls are spatial balls whose
    /// witnesses are restricted to domain points: a subset is a simplex when
    /// some domain point is within the feature radius of every member.
    #[test]
    fn position_complex_matches_domain_witness_oracle() {
        let domain: Vec<RegionPoint> = vec![
            RegionPoint::bare(p(0.0, 0.0)),
            RegionPoint::bare(p(1.0, 0.0)),
            RegionPoint::bare(p(0.5, 0.8)),
            RegionPoint::bare(p(2.2, 0.1)),
            RegionPoint::bare(p(2.9, 0.4)),
        ];
        let fr = 1.1;
        let cx = build_descriptive_nerve_complex(&domain, &FeatureMap::Position, fr, 3).unwrap();
        let n = domain.len();
        for mask in 1u32..(1 << n) {
            let subset: Vec<usize> = (0..n).filter(|&b| mask >> b & 1 == 1).collect();
            if subset.len() > 4 {
                continue;
            }
            let witnessed = domain.iter().any(|w| {
                subset
                    .iter()
                    .all(|&i| w.pos.distance(domain[i].pos) <= fr)
            });
            assert_eq!(cx.contains(&subset), witnessed, "subset {subset:?}");
        }
    }

    #[test]
    fn descriptive_nerve_validates_common_member() {
        let domain = vec![gray(0.0, 0.0, 0.0), gray(1.0, 0.0, 10.0)];
        let b0 = build_descriptive_ball(0, &domain, &FeatureMap::Intensity, 0.5).unwrap();
        let b1 = build_descriptive_ball(1, &domain, &FeatureMap::Intensity, 0.5).unwrap();
        assert!(matches!(
            DescriptiveNerve::new(vec![b0.clone(), b1]),
            Err(Error::EmptyNerveIntersection)
        ));
        let solo = DescriptiveNerve::new(vec![b0]).unwrap();
        assert_eq!(solo.common_members().len(), 1);
    }

    #[test]
    fn equal_singleton_features_strongly_descriptively_near() {
        let x = Region::singleton_with_payload(ambient(), gray(0.0, 0.0, 3.0));
        let y = Region::singleton_with_payload(ambient(), gray(5.0, 5.0, 3.0));
        let z = Region::singleton_with_payload(ambient(), gray(5.0, 5.0, 4.0));
        assert!(strongly_descriptively_near(&x, &y, &FeatureMap::Intensity, 0.0).unwrap());
        assert!(!strongly_descriptively_near(&x, &z, &FeatureMap::Intensity, 0.0).unwrap());
    }

    #[test]
    fn overlapping_interiors_with_constant_features() {
        let a = Region::disks(ambient(), vec![Disk::new(p(0.0, 0.0), 1.0)]).unwrap();
        let b = Region::disks(ambient(), vec![Disk::new(p(1.0, 0.0), 1.0)]).unwrap();
        assert!(
            strongly_descriptively_near(&a, &b, &FeatureMap::ConstantLabel(1.0), 0.0).unwrap()
        );
    }

    #[test]
    fn overlapping_interiors_with_disjoint_features() {
        // position features, far-apart interiors: no description matches
        let a = Region::disks(ambient(), vec![Disk::new(p(-3.0, 0.0), 1.0)]).unwrap();
        let b = Region::disks(ambient(), vec![Disk::new(p(3.0, 0.0), 1.0)]).unwrap();
        assert!(!strongly_descriptively_near(&a, &b, &FeatureMap::Position, 0.0).unwrap());
        // overlapping interiors share lattice sample points, so position
        // descriptions match there
        let c = Region::disks(ambient(), vec![Disk::new(p(-2.2, 0.0), 1.0)]).unwrap();
        assert!(strongly_descriptively_near(&a, &c, &FeatureMap::Position, 0.0).unwrap());
    }

    #[test]
    fn nerve_level_descriptive_nearness() {
        let centers = [p(0.0, 0.0), p(0.9, 0.0), p(6.0, 0.0), p(6.9, 0.0)];
        let r = 0.6;
        let cx = build_cech_complex(&centers, r, 2).unwrap();
        let nerves = maximal_nerves(&cx, &centers, r).unwrap();
        assert_eq!(nerves.len(), 2);
        let green = FeatureVector(vec![0.8, 1.0, 0.8]);
        let gray55 = FeatureVector(vec![0.45, 0.45, 0.45]);
        let feats = BallFeatures::from_labels(vec![
            green.clone(),
            gray55.clone(),
            green.clone(),
            FeatureVector(vec![0.9, 0.9, 0.9]),
        ]);
        assert!(nerves_descriptively_near(&nerves[0], &nerves[1], &feats, 0.0).unwrap());
        let all_distinct = BallFeatures::from_labels(vec![
            FeatureVector(vec![0.0]),
            FeatureVector(vec![1.0]),
            FeatureVector(vec![2.0]),
            FeatureVector(vec![3.0]),
        ]);
        assert!(!nerves_descriptively_near(&nerves[0], &nerves[1], &all_distinct, 0.0).unwrap());
        // a nerve always matches itself: shared balls share descriptions
        assert!(nerves_descriptively_near(&nerves[0], &nerves[0], &all_distinct, 0.0).unwrap());
    }

    #[test]
    fn mean_ball_features_track_disk_centers() {
        let centers = [p(0.0, 0.0), p(3.0, -1.0)];
        let feats =
            BallFeatures::mean_over_disks(&centers, 0.8, &FeatureMap::Position, 16).unwrap();
        for (i, c) in centers.iter().enumerate() {
            let f = feats.get(i).unwrap();
            // symmetric sampling keeps the mean position at the center
            assert!((f.0[0] - c.x).abs() < 1e-9);
            assert!((f.0[1] - c.y).abs() < 1e-9);
        }
        assert!(matches!(
            feats.get(5),
            Err(Error::MissingBallFeature)
        ));
    }

    #[test]
    fn feature_map_parsing() {
        assert_eq!(FeatureMap::parse("position").unwrap(), FeatureMap::Position);
        assert_eq!(FeatureMap::parse("grayscale").unwrap(), FeatureMap::Intensity);
        assert_eq!(
            FeatureMap::parse("color").unwrap(),
            FeatureMap::ColorTriple
        );
        assert_eq!(
            FeatureMap::parse("constant:2.5").unwrap(),
            FeatureMap::ConstantLabel(2.5)
        );
        assert!(matches!(
            FeatureMap::parse("nope"),
            Err(Error::UnknownFeatureMap(_))
        ));
    }

    #[test]
    fn missing_payload_reported() {
        let bare = RegionPoint::bare(p(0.0, 0.0));
        assert!(matches!(
            FeatureMap::ColorTriple.evaluate(&bare),
            Err(Error::MissingPayload { .. })
        ));
    }
}
