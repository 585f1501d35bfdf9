//! Finite planar regions and the spatial proximity relator: Lodato nearness
//! realized as closure contact (gap distance within tolerance) and strong
//! proximity realized as open-interior overlap plus the singleton and
//! whole-space conventions.
//!
//! Grid-mask regions are treated as unions of closed cell rectangles for
//! membership, interiors, and gap distances, so that strong proximity always
//! implies nearness across mixed region kinds.

use serde::Serialize;

use crate::complex::CechNerve;
use crate::error::{Error, Result};
use crate::geom::{
    point_rect_distance, rect_rect_distance, BoundingBox, Disk, GridMask, Point2, RegionPoint,
};

/// Payload of a [`Region`]: one of the supported set kinds, or the two
/// distinguished elements (the empty set and the whole space).
#[derive(Debug, Clone, PartialEq)]
pub enum RegionKind {
    Empty,
    Whole,
    Points(Vec<RegionPoint>),
    Disks(Vec<Disk>),
    Mask(GridMask),
}

/// A subset of a bounded ambient plane region. Non-`Empty` regions are
/// nonempty by construction.
#[derive(Debug, Clone, PartialEq)]
pub struct Region {
    ambient: BoundingBox,
    kind: RegionKind,
}

impl Region {
    pub fn empty(ambient: BoundingBox) -> Region {
        Region {
            ambient,
            kind: RegionKind::Empty,
        }
    }

    /// The whole ambient space, the distinguished `X` of the axioms.
    pub fn whole(ambient: BoundingBox) -> Region {
        Region {
            ambient,
            kind: RegionKind::Whole,
        }
    }

    pub fn points(ambient: BoundingBox, points: Vec<RegionPoint>) -> Result<Region> {
        if points.is_empty() {
            return Err(Error::EmptyRegion);
        }
        Ok(Region {
            ambient,
            kind: RegionKind::Points(points),
        })
    }

    pub fn bare_points(ambient: BoundingBox, points: Vec<Point2>) -> Result<Region> {
        Region::points(ambient, points.into_iter().map(RegionPoint::bare).collect())
    }

    pub fn singleton(ambient: BoundingBox, p: Point2) -> Region {
        Region::bare_points(ambient, vec![p]).expect("nonempty")
    }

    pub fn singleton_with_payload(ambient: BoundingBox, p: RegionPoint) -> Region {
        Region::points(ambient, vec![p]).expect("nonempty")
    }

    pub fn disks(ambient: BoundingBox, disks: Vec<Disk>) -> Result<Region> {
        if disks.is_empty() {
            return Err(Error::EmptyRegion);
        }
        Ok(Region {
            ambient,
            kind: RegionKind::Disks(disks),
        })
    }

    pub fn mask(ambient: BoundingBox, mask: GridMask) -> Result<Region> {
        if mask.is_empty() {
            return Err(Error::EmptyRegion);
        }
        Ok(Region {
            ambient,
            kind: RegionKind::Mask(mask),
        })
    }

    /// The union of a nerve's closed member balls as a disk region.
    pub fn from_nerve(ambient: BoundingBox, nerve: &CechNerve) -> Region {
        Region::disks(ambient, nerve.disks()).expect("nerve is nonempty")
    }

    pub fn ambient(&self) -> BoundingBox {
        self.ambient
    }

    pub fn kind(&self) -> &RegionKind {
        &self.kind
    }

    pub fn kind_name(&self) -> &'static str {
        match self.kind {
            RegionKind::Empty => "empty",
            RegionKind::Whole => "whole",
            RegionKind::Points(_) => "point-set",
            RegionKind::Disks(_) => "disk-union",
            RegionKind::Mask(_) => "grid-mask",
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self.kind, RegionKind::Empty)
    }

    pub fn is_whole(&self) -> bool {
        matches!(self.kind, RegionKind::Whole)
    }

    /// The sole point of a one-point point-set region, if that is what this is.
    pub fn singleton_point(&self) -> Option<&RegionPoint> {
        match &self.kind {
            RegionKind::Points(ps) if ps.len() == 1 => Some(&ps[0]),
            _ => None,
        }
    }

    pub fn has_nonempty_interior(&self) -> bool {
        match &self.kind {
            RegionKind::Empty | RegionKind::Points(_) => false,
            RegionKind::Whole | RegionKind::Disks(_) => true,
            RegionKind::Mask(m) => !m.is_empty(),
        }
    }

    /// Closed membership.
    pub fn contains(&self, p: Point2) -> bool {
        match &self.kind {
            RegionKind::Empty => false,
            RegionKind::Whole => self.ambient.contains(p),
            RegionKind::Points(ps) => ps.iter().any(|q| q.pos == p),
            RegionKind::Disks(ds) => ds.iter().any(|d| d.contains(p)),
            RegionKind::Mask(m) => mask_cells_at(m, p).iter().any(|&(i, j)| m.get(i, j)),
        }
    }

    /// Membership in the topological interior. Finite point sets have empty
    /// interior; a mask point is interior when every cell whose closure holds
    /// it is occupied and it avoids the grid frame.
    pub fn interior_contains(&self, p: Point2) -> bool {
        match &self.kind {
            RegionKind::Empty | RegionKind::Points(_) => false,
            RegionKind::Whole => self.ambient.contains_interior(p),
            RegionKind::Disks(ds) => ds.iter().any(|d| d.contains_interior(p)),
            RegionKind::Mask(m) => {
                if !m.bounds().contains_interior(p) {
                    return false;
                }
                let cells = mask_cells_at(m, p);
                !cells.is_empty() && cells.iter().all(|&(i, j)| m.get(i, j))
            }
        }
    }

    /// Whether the interiors of the two regions meet. Exact for every kind
    /// pairing; point sets never contribute interior.
    pub fn interior_overlap(&self, other: &Region) -> bool {
        use RegionKind::*;
        match (&self.kind, &other.kind) {
            (Empty, _) | (_, Empty) | (Points(_), _) | (_, Points(_)) => false,
            (Whole, _) => other.has_nonempty_interior(),
            (_, Whole) => self.has_nonempty_interior(),
            (Disks(a), Disks(b)) => a.iter().any(|da| {
                b.iter()
                    .any(|db| da.center.distance(db.center) < da.radius + db.radius)
            }),
            (Disks(ds), Mask(m)) | (Mask(m), Disks(ds)) => ds.iter().any(|d| {
                m.true_cells().any(|(i, j)| {
                    let (lo, hi) = m.cell_rect(i, j);
                    point_rect_distance(d.center, lo, hi) < d.radius
                })
            }),
            (Mask(a), Mask(b)) => a.true_cells().any(|(i, j)| {
                let (alo, ahi) = a.cell_rect(i, j);
                b.true_cells().any(|(k, l)| {
                    let (blo, bhi) = b.cell_rect(k, l);
                    alo.x < bhi.x && blo.x < ahi.x && alo.y < bhi.y && blo.y < ahi.y
                })
            }),
        }
    }

    /// Distance between the two closed sets, clamped at zero. Infinite when
    /// either side is empty.
    pub fn gap_distance(&self, other: &Region) -> f64 {
        use RegionKind::*;
        match (&self.kind, &other.kind) {
            (Empty, _) | (_, Empty) => f64::INFINITY,
            (Whole, _) | (_, Whole) => 0.0,
            (Points(a), Points(b)) => min_over(a.iter().flat_map(|p| {
                b.iter().map(move |q| p.pos.distance(q.pos))
            })),
            (Points(a), Disks(b)) | (Disks(b), Points(a)) => min_over(a.iter().flat_map(|p| {
                b.iter()
                    .map(move |d| (p.pos.distance(d.center) - d.radius).max(0.0))
            })),
            (Points(a), Mask(m)) | (Mask(m), Points(a)) => min_over(a.iter().flat_map(|p| {
                m.true_cells().map(move |(i, j)| {
                    let (lo, hi) = m.cell_rect(i, j);
                    point_rect_distance(p.pos, lo, hi)
                })
            })),
            (Disks(a), Disks(b)) => min_over(a.iter().flat_map(|da| {
                b.iter()
                    .map(move |db| (da.center.distance(db.center) - da.radius - db.radius).max(0.0))
            })),
            (Disks(ds), Mask(m)) | (Mask(m), Disks(ds)) => min_over(ds.iter().flat_map(|d| {
                m.true_cells().map(move |(i, j)| {
                    let (lo, hi) = m.cell_rect(i, j);
                    (point_rect_distance(d.center, lo, hi) - d.radius).max(0.0)
                })
            })),
            (Mask(a), Mask(b)) => min_over(a.true_cells().flat_map(|(i, j)| {
                let (alo, ahi) = a.cell_rect(i, j);
                b.true_cells().map(move |(k, l)| {
                    let (blo, bhi) = b.cell_rect(k, l);
                    rect_rect_distance(alo, ahi, blo, bhi)
                })
            })),
        }
    }

    /// Set union. Only like kinds combine; masks must share one grid.
    pub fn union(&self, other: &Region) -> Result<Region> {
        check_ambient(self, other)?;
        use RegionKind::*;
        let kind = match (&self.kind, &other.kind) {
            (Empty, k) => k.clone(),
            (k, Empty) => k.clone(),
            (Whole, _) | (_, Whole) => Whole,
            (Points(a), Points(b)) => {
                let mut pts = a.clone();
                for q in b {
                    if !pts.contains(q) {
                        pts.push(q.clone());
                    }
                }
                Points(pts)
            }
            (Disks(a), Disks(b)) => {
                let mut ds = a.clone();
                for d in b {
                    if !ds.contains(d) {
                        ds.push(*d);
                    }
                }
                Disks(ds)
            }
            (Mask(a), Mask(b)) => {
                if a.width() != b.width()
                    || a.height() != b.height()
                    || a.bounds() != b.bounds()
                {
                    return Err(Error::IncompatibleUnion);
                }
                let mut merged = a.clone();
                for (i, j) in b.true_cells() {
                    merged.set(i, j, true);
                }
                Mask(merged)
            }
            _ => return Err(Error::IncompatibleUnion),
        };
        Ok(Region {
            ambient: self.ambient,
            kind,
        })
    }

    /// Sample points used by the covering check: literal points for
    /// point-sets, true cell centers for masks, and an ambient-anchored
    /// lattice at spacing `1 / density` clipped to the set otherwise.
    pub fn coverage_samples(&self, density: f64) -> Result<Vec<Point2>> {
        match &self.kind {
            RegionKind::Empty => Err(Error::EmptyRegion),
            RegionKind::Points(ps) => Ok(ps.iter().map(|p| p.pos).collect()),
            RegionKind::Mask(m) => Ok(m.true_centers().collect()),
            RegionKind::Disks(_) | RegionKind::Whole => {
                if !(density.is_finite() && density > 0.0) {
                    return Err(Error::NoSamples);
                }
                let spacing = 1.0 / density;
                Ok(lattice_points(self.ambient, spacing)
                    .into_iter()
                    .filter(|&p| self.contains(p))
                    .collect())
            }
        }
    }

    /// Interior points sampled on the ambient-anchored lattice at `spacing`.
    /// Two regions over one ambient sample the same lattice, so shared
    /// interior produces shared sample points. Masks return their true cell
    /// centers, which are always interior; point sets have no interior.
    pub fn interior_samples(&self, spacing: f64) -> Vec<RegionPoint> {
        match &self.kind {
            RegionKind::Empty | RegionKind::Points(_) => Vec::new(),
            RegionKind::Mask(m) => m.true_centers().map(RegionPoint::bare).collect(),
            RegionKind::Whole | RegionKind::Disks(_) => {
                if !(spacing.is_finite() && spacing > 0.0) {
                    return Vec::new();
                }
                lattice_points(self.ambient, spacing)
                    .into_iter()
                    .filter(|&p| self.interior_contains(p))
                    .map(RegionPoint::bare)
                    .collect()
            }
        }
    }
}

fn min_over(it: impl Iterator<Item = f64>) -> f64 {
    it.fold(f64::INFINITY, f64::min)
}

fn lattice_points(bounds: BoundingBox, spacing: f64) -> Vec<Point2> {
    let mut out = Vec::new();
    let nx = (bounds.width() / spacing).floor() as usize;
    let ny = (bounds.height() / spacing).floor() as usize;
    for j in 0..=ny {
        for i in 0..=nx {
            let p = Point2::new(
                bounds.min.x + spacing / 2.0 + i as f64 * spacing,
                bounds.min.y + spacing / 2.0 + j as f64 * spacing,
            );
            if bounds.contains(p) {
                out.push(p);
            }
        }
    }
    out
}

/// All cells of the mask whose closed rectangle contains `p`: one in the
/// generic position, two on an edge, four on a corner.
fn mask_cells_at(m: &GridMask, p: Point2) -> Vec<(usize, usize)> {
    let (cw, ch) = m.cell_size();
    let b = m.bounds();
    let ti = (p.x - b.min.x) / cw;
    let tj = (p.y - b.min.y) / ch;
    let mut out = Vec::new();
    for di in -1i64..=1 {
        for dj in -1i64..=1 {
            let i = ti.floor() as i64 + di;
            let j = tj.floor() as i64 + dj;
            if i < 0 || j < 0 || i >= m.width() as i64 || j >= m.height() as i64 {
                continue;
            }
            let (lo, hi) = m.cell_rect(i as usize, j as usize);
            if p.x >= lo.x && p.x <= hi.x && p.y >= lo.y && p.y <= hi.y {
                out.push((i as usize, j as usize));
            }
        }
    }
    out
}

pub(crate) fn check_ambient(a: &Region, b: &Region) -> Result<()> {
    if a.ambient() != b.ambient() {
        return Err(Error::AmbientMismatch);
    }
    Ok(())
}

/// The bundle of tolerances carried by one proximity relator: `gap_tolerance`
/// drives the Lodato relation, `feature_tolerance` the descriptive ones.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProximalRelator {
    pub gap_tolerance: f64,
    pub feature_tolerance: f64,
}

impl ProximalRelator {
    pub fn new(gap_tolerance: f64, feature_tolerance: f64) -> Self {
        assert!(
            gap_tolerance.is_finite() && gap_tolerance >= 0.0,
            "invalid gap tolerance"
        );
        assert!(
            feature_tolerance.is_finite() && feature_tolerance >= 0.0,
            "invalid feature tolerance"
        );
        ProximalRelator {
            gap_tolerance,
            feature_tolerance,
        }
    }
}

impl Default for ProximalRelator {
    fn default() -> Self {
        ProximalRelator {
            gap_tolerance: 0.0,
            feature_tolerance: 0.0,
        }
    }
}

/// Lodato nearness: the closed sets come within `gap_tolerance` of each
/// other. The empty set is near nothing; the whole space is near everything
/// nonempty.
pub fn near(a: &Region, b: &Region, relator: &ProximalRelator) -> Result<bool> {
    check_ambient(a, b)?;
    if a.is_empty() || b.is_empty() {
        return Ok(false);
    }
    if a.is_whole() || b.is_whole() {
        return Ok(true);
    }
    Ok(a.gap_distance(b) <= relator.gap_tolerance)
}

/// Closed intersection test: the sets actually share a point (gap exactly
/// zero). Used as the hypothesis of several axioms.
pub fn regions_intersect(a: &Region, b: &Region) -> Result<bool> {
    check_ambient(a, b)?;
    if a.is_empty() || b.is_empty() {
        return Ok(false);
    }
    if a.is_whole() || b.is_whole() {
        return Ok(true);
    }
    Ok(a.gap_distance(b) == 0.0)
}

/// Strong proximity under the interior-overlap realization: interiors meet,
/// or a singleton sits inside the other's interior, or two singletons
/// coincide, or one side is the whole space.
///
/// Tangent closed disks share only boundary, so they are not strongly near
/// here; see [`strongly_near_boundary`] for the boundary-contact variant.
pub fn strongly_near(a: &Region, b: &Region) -> Result<bool> {
    check_ambient(a, b)?;
    if a.is_empty() || b.is_empty() {
        return Ok(false);
    }
    if a.is_whole() || b.is_whole() {
        return Ok(true);
    }
    match (a.singleton_point(), b.singleton_point()) {
        (Some(x), Some(y)) => Ok(x.pos == y.pos),
        (Some(x), None) => Ok(b.interior_contains(x.pos)),
        (None, Some(y)) => Ok(a.interior_contains(y.pos)),
        (None, None) => Ok(a.interior_overlap(b)),
    }
}

/// Boundary-contact variant of strong proximity: additionally counts closed
/// contact (shared boundary points) as strong contact, which is what the
/// boundary-point axiom demands of sets that intersect without overlapping
/// interiors. Singletons use closed membership.
pub fn strongly_near_boundary(a: &Region, b: &Region) -> Result<bool> {
    check_ambient(a, b)?;
    if a.is_empty() || b.is_empty() {
        return Ok(false);
    }
    if a.is_whole() || b.is_whole() {
        return Ok(true);
    }
    match (a.singleton_point(), b.singleton_point()) {
        (Some(x), Some(y)) => Ok(x.pos == y.pos),
        (Some(x), None) => Ok(b.contains(x.pos)),
        (None, Some(y)) => Ok(a.contains(y.pos)),
        (None, None) => Ok(a.interior_overlap(b) || a.gap_distance(b) == 0.0),
    }
}

/// Strong proximity of two nerves: some member ball of one intersects some
/// member ball of the other, i.e. a pair of centers within `2r` (closed
/// balls, so tangency counts).
pub fn nerves_strongly_near(na: &CechNerve, nb: &CechNerve) -> Result<bool> {
    if na.radius() != nb.radius() {
        return Err(Error::RadiusMismatch);
    }
    let two_r = 2.0 * na.radius();
    let ca = na.member_centers();
    let cb = nb.member_centers();
    Ok(ca
        .iter()
        .any(|p| cb.iter().any(|q| p.distance(*q) <= two_r)))
}
