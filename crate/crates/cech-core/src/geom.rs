//! Exact-leaning planar primitives: points, closed disks, k-wise disk
//! intersection via minimum enclosing disks, and rasterization of disk unions.
//!
//! All types are immutable values and all operations are pure functions, so
//! everything here is safe to share across threads.

use serde::Serialize;

use crate::error::{Error, Result};

/// Absolute slack used when comparing a minimum-enclosing radius against a
/// ball radius. Tangent ("kissing") disks count as intersecting because the
/// balls are closed.
pub const DEFAULT_TIE_TOLERANCE: f64 = 1e-9;

/// A point of the Euclidean plane. Coordinates are always finite.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    /// Panics on NaN or infinite coordinates; parsers validate before
    /// constructing so untrusted data surfaces as `Error::Parse` instead.
    pub fn new(x: f64, y: f64) -> Self {
        assert!(x.is_finite() && y.is_finite(), "non-finite coordinate");
        Point2 { x, y }
    }

    pub fn distance(&self, other: Point2) -> f64 {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        (dx * dx + dy * dy).sqrt()
    }
}

/// A point carrying an optional numeric payload (extra CSV columns). The
/// payload feeds feature maps; spatial operations ignore it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegionPoint {
    pub pos: Point2,
    pub payload: Vec<f64>,
}

impl RegionPoint {
    pub fn new(pos: Point2, payload: Vec<f64>) -> Self {
        assert!(
            payload.iter().all(|v| v.is_finite()),
            "non-finite payload component"
        );
        RegionPoint { pos, payload }
    }

    pub fn bare(pos: Point2) -> Self {
        RegionPoint {
            pos,
            payload: Vec::new(),
        }
    }
}

/// A closed ball of the plane: all points within `radius` of `center`,
/// boundary included.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Disk {
    pub center: Point2,
    pub radius: f64,
}

impl Disk {
    /// Panics unless `radius` is strictly positive and finite.
    pub fn new(center: Point2, radius: f64) -> Self {
        assert!(radius.is_finite() && radius > 0.0, "invalid disk radius");
        Disk { center, radius }
    }

    /// Closed membership: the boundary circle belongs to the disk.
    pub fn contains(&self, p: Point2) -> bool {
        self.center.distance(p) <= self.radius
    }

    /// Open membership: strictly inside, boundary excluded.
    pub fn contains_interior(&self, p: Point2) -> bool {
        self.center.distance(p) < self.radius
    }
}

/// An axis-aligned box with `min` componentwise below `max`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundingBox {
    pub min: Point2,
    pub max: Point2,
}

impl BoundingBox {
    pub fn new(min: Point2, max: Point2) -> Self {
        assert!(min.x <= max.x && min.y <= max.y, "inverted bounding box");
        BoundingBox { min, max }
    }

    /// Smallest box containing all the given points.
    pub fn of_points(points: &[Point2]) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptyPointSet);
        }
        let mut min = points[0];
        let mut max = points[0];
        for p in &points[1..] {
            min.x = min.x.min(p.x);
            min.y = min.y.min(p.y);
            max.x = max.x.max(p.x);
            max.y = max.y.max(p.y);
        }
        Ok(BoundingBox { min, max })
    }

    pub fn width(&self) -> f64 {
        self.max.x - self.min.x
    }

    pub fn height(&self) -> f64 {
        self.max.y - self.min.y
    }

    pub fn is_degenerate(&self) -> bool {
        self.width() <= 0.0 || self.height() <= 0.0
    }

    pub fn contains(&self, p: Point2) -> bool {
        p.x >= self.min.x && p.x <= self.max.x && p.y >= self.min.y && p.y <= self.max.y
    }

    pub fn contains_interior(&self, p: Point2) -> bool {
        p.x > self.min.x && p.x < self.max.x && p.y > self.min.y && p.y < self.max.y
    }

    pub fn pad(&self, d: f64) -> Self {
        BoundingBox::new(
            Point2::new(self.min.x - d, self.min.y - d),
            Point2::new(self.max.x + d, self.max.y + d),
        )
    }

    /// Expands the shorter side symmetrically until the box is square.
    pub fn square(&self) -> Self {
        let w = self.width();
        let h = self.height();
        if w >= h {
            let grow = (w - h) / 2.0;
            BoundingBox::new(
                Point2::new(self.min.x, self.min.y - grow),
                Point2::new(self.max.x, self.max.y + grow),
            )
        } else {
            let grow = (h - w) / 2.0;
            BoundingBox::new(
                Point2::new(self.min.x - grow, self.min.y),
                Point2::new(self.max.x + grow, self.max.y),
            )
        }
    }

    pub fn union(&self, other: &BoundingBox) -> BoundingBox {
        BoundingBox::new(
            Point2::new(self.min.x.min(other.min.x), self.min.y.min(other.min.y)),
            Point2::new(self.max.x.max(other.max.x), self.max.y.max(other.max.y)),
        )
    }
}

/// Boolean occupancy grid over a bounding box, row-major with cell `(i, j)`
/// covering the `i`-th column and `j`-th row; row 0 sits at `bounds.min.y`.
#[derive(Debug, Clone, PartialEq)]
pub struct GridMask {
    width: usize,
    height: usize,
    bounds: BoundingBox,
    cells: Vec<bool>,
}

impl GridMask {
    pub fn new(width: usize, height: usize, bounds: BoundingBox, cells: Vec<bool>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::BadGridDimensions);
        }
        if bounds.is_degenerate() {
            return Err(Error::DegenerateBox);
        }
        if cells.len() != width * height {
            return Err(Error::BadGridDimensions);
        }
        Ok(GridMask {
            width,
            height,
            bounds,
            cells,
        })
    }

    pub fn filled(width: usize, height: usize, bounds: BoundingBox, value: bool) -> Result<Self> {
        GridMask::new(width, height, bounds, vec![value; width * height])
    }

    /// Builds a mask by evaluating `f` at every cell center.
    pub fn from_fn(
        width: usize,
        height: usize,
        bounds: BoundingBox,
        mut f: impl FnMut(Point2) -> bool,
    ) -> Result<Self> {
        let mut mask = GridMask::filled(width, height, bounds, false)?;
        for j in 0..height {
            for i in 0..width {
                let v = f(mask.cell_center(i, j));
                mask.set(i, j, v);
            }
        }
        Ok(mask)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn bounds(&self) -> BoundingBox {
        self.bounds
    }

    pub fn cell_size(&self) -> (f64, f64) {
        (
            self.bounds.width() / self.width as f64,
            self.bounds.height() / self.height as f64,
        )
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.cells[j * self.width + i]
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        self.cells[j * self.width + i] = value;
    }

    pub fn cell_center(&self, i: usize, j: usize) -> Point2 {
        let (cw, ch) = self.cell_size();
        Point2::new(
            self.bounds.min.x + (i as f64 + 0.5) * cw,
            self.bounds.min.y + (j as f64 + 0.5) * ch,
        )
    }

    /// Closed rectangle of cell `(i, j)` as `(low corner, high corner)`.
    pub fn cell_rect(&self, i: usize, j: usize) -> (Point2, Point2) {
        let (cw, ch) = self.cell_size();
        (
            Point2::new(self.bounds.min.x + i as f64 * cw, self.bounds.min.y + j as f64 * ch),
            Point2::new(
                self.bounds.min.x + (i as f64 + 1.0) * cw,
                self.bounds.min.y + (j as f64 + 1.0) * ch,
            ),
        )
    }

    /// Index of the cell whose half-open footprint contains `p`, if any.
    pub fn cell_containing(&self, p: Point2) -> Option<(usize, usize)> {
        if !self.bounds.contains(p) {
            return None;
        }
        let (cw, ch) = self.cell_size();
        let i = (((p.x - self.bounds.min.x) / cw).floor() as usize).min(self.width - 1);
        let j = (((p.y - self.bounds.min.y) / ch).floor() as usize).min(self.height - 1);
        Some((i, j))
    }

    pub fn true_count(&self) -> usize {
        self.cells.iter().filter(|&&c| c).count()
    }

    pub fn is_empty(&self) -> bool {
        !self.cells.iter().any(|&c| c)
    }

    pub fn true_cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.height)
            .flat_map(move |j| (0..self.width).map(move |i| (i, j)))
            .filter(move |&(i, j)| self.get(i, j))
    }

    pub fn true_centers(&self) -> impl Iterator<Item = Point2> + '_ {
        self.true_cells().map(move |(i, j)| self.cell_center(i, j))
    }
}

/// Smallest disk containing a point set. Unlike [`Disk`] the radius may be
/// zero (single point, duplicated points).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnclosingDisk {
    pub center: Point2,
    pub radius: f64,
}

impl EnclosingDisk {
    pub fn contains(&self, p: Point2) -> bool {
        self.center.distance(p) <= self.radius + DEFAULT_TIE_TOLERANCE
    }
}

// Relative slack for the incremental containment tests inside the minimum
// enclosing disk construction, following the usual guarded-predicate scheme.
const MED_EPS: f64 = 1e-12;

fn med_contains(center: Point2, radius: f64, p: Point2) -> bool {
    center.distance(p) <= radius * (1.0 + MED_EPS) + f64::MIN_POSITIVE
}

fn disk_from_diameter(a: Point2, b: Point2) -> EnclosingDisk {
    let center = Point2::new((a.x + b.x) / 2.0, (a.y + b.y) / 2.0);
    let radius = center.distance(a).max(center.distance(b));
    EnclosingDisk { center, radius }
}

/// Circumscribed disk of a nondegenerate triangle, `None` when collinear.
/// Coordinates are shifted toward the triangle midpoint before solving to
/// keep the determinant well conditioned.
fn circumscribed_disk(a: Point2, b: Point2, c: Point2) -> Option<EnclosingDisk> {
    let ox = (a.x.min(b.x).min(c.x) + a.x.max(b.x).max(c.x)) / 2.0;
    let oy = (a.y.min(b.y).min(c.y) + a.y.max(b.y).max(c.y)) / 2.0;
    let (ax, ay) = (a.x - ox, a.y - oy);
    let (bx, by) = (b.x - ox, b.y - oy);
    let (cx, cy) = (c.x - ox, c.y - oy);
    let d = (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by)) * 2.0;
    if d == 0.0 {
        return None;
    }
    let x = ox
        + ((ax * ax + ay * ay) * (by - cy)
            + (bx * bx + by * by) * (cy - ay)
            + (cx * cx + cy * cy) * (ay - by))
            / d;
    let y = oy
        + ((ax * ax + ay * ay) * (cx - bx)
            + (bx * bx + by * by) * (ax - cx)
            + (cx * cx + cy * cy) * (bx - ax))
            / d;
    let center = Point2::new(x, y);
    let radius = center
        .distance(a)
        .max(center.distance(b))
        .max(center.distance(c));
    Some(EnclosingDisk { center, radius })
}

fn cross(ox: f64, oy: f64, ax: f64, ay: f64) -> f64 {
    ox * ay - oy * ax
}

struct SplitMix64(u64);

impl SplitMix64 {
    fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E3779B97F4A7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
        z ^ (z >> 31)
    }
}

/// Returns the unique smallest disk containing every input point, computed by
/// randomized incremental construction in expected linear time. Duplicates
/// are removed first; the permutation is seeded deterministically so repeated
/// calls give bit-identical results.
pub fn min_enclosing_disk(points: &[Point2]) -> Result<EnclosingDisk> {
    if points.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    let mut pts: Vec<Point2> = Vec::with_capacity(points.len());
    for &p in points {
        if !pts.contains(&p) {
            pts.push(p);
        }
    }
    let mut rng = SplitMix64(0x5EED_0D15C ^ pts.len() as u64);
    for i in (1..pts.len()).rev() {
        let j = (rng.next() % (i as u64 + 1)) as usize;
        pts.swap(i, j);
    }

    let mut disk = EnclosingDisk {
        center: pts[0],
        radius: 0.0,
    };
    for i in 1..pts.len() {
        if !med_contains(disk.center, disk.radius, pts[i]) {
            disk = med_one_boundary_point(&pts[..=i], pts[i]);
        }
    }
    Ok(disk)
}

fn med_one_boundary_point(pts: &[Point2], p: Point2) -> EnclosingDisk {
    let mut disk = EnclosingDisk {
        center: p,
        radius: 0.0,
    };
    for (i, &q) in pts.iter().enumerate() {
        if med_contains(disk.center, disk.radius, q) {
            continue;
        }
        disk = if disk.radius == 0.0 {
            disk_from_diameter(p, q)
        } else {
            med_two_boundary_points(&pts[..=i], p, q)
        };
    }
    disk
}

fn med_two_boundary_points(pts: &[Point2], p: Point2, q: Point2) -> EnclosingDisk {
    let circ = disk_from_diameter(p, q);
    let mut left: Option<EnclosingDisk> = None;
    let mut right: Option<EnclosingDisk> = None;
    let (pqx, pqy) = (q.x - p.x, q.y - p.y);
    for &r in pts {
        if med_contains(circ.center, circ.radius, r) {
            continue;
        }
        let side = cross(pqx, pqy, r.x - p.x, r.y - p.y);
        let Some(c) = circumscribed_disk(p, q, r) else {
            continue;
        };
        let c_side = cross(pqx, pqy, c.center.x - p.x, c.center.y - p.y);
        if side > 0.0 && left.map_or(true, |l| c_side > cross(pqx, pqy, l.center.x - p.x, l.center.y - p.y)) {
            left = Some(c);
        } else if side < 0.0
            && right.map_or(true, |rd| c_side < cross(pqx, pqy, rd.center.x - p.x, rd.center.y - p.y))
        {
            right = Some(c);
        }
    }
    match (left, right) {
        (None, None) => circ,
        (Some(l), None) => l,
        (None, Some(r)) => r,
        (Some(l), Some(r)) => {
            if l.radius <= r.radius {
                l
            } else {
                r
            }
        }
    }
}

/// Decides whether the closed balls of radius `r` around `centers` share a
/// common point, by comparing the minimum enclosing radius of the centers
/// against `r` with the default tie tolerance. Valid because all balls share
/// one radius: the intersection is nonempty exactly when some point (the
/// enclosing center) is within `r` of every center.
pub fn disks_common_point(centers: &[Point2], r: f64) -> Result<bool> {
    disks_common_point_tol(centers, r, DEFAULT_TIE_TOLERANCE)
}

/// As [`disks_common_point`] with an explicit tie tolerance.
pub fn disks_common_point_tol(centers: &[Point2], r: f64, tie: f64) -> Result<bool> {
    if !(r.is_finite() && r > 0.0) {
        return Err(Error::InvalidRadius);
    }
    let med = min_enclosing_disk(centers)?;
    Ok(med.radius <= r + tie)
}

/// Rasterizes the union of closed disks onto a grid: a cell is true exactly
/// when its center lies in at least one disk.
pub fn rasterize_union(
    disks: &[Disk],
    bounds: BoundingBox,
    width: usize,
    height: usize,
) -> Result<GridMask> {
    if bounds.is_degenerate() {
        return Err(Error::DegenerateBox);
    }
    let mut mask = GridMask::filled(width, height, bounds, false)?;
    let (cw, ch) = mask.cell_size();
    for disk in disks {
        // Only cells whose centers can possibly be inside the disk.
        let lo_i = ((disk.center.x - disk.radius - bounds.min.x) / cw - 0.5).floor();
        let hi_i = ((disk.center.x + disk.radius - bounds.min.x) / cw - 0.5).ceil();
        let lo_j = ((disk.center.y - disk.radius - bounds.min.y) / ch - 0.5).floor();
        let hi_j = ((disk.center.y + disk.radius - bounds.min.y) / ch - 0.5).ceil();
        let lo_i = lo_i.max(0.0) as usize;
        let hi_i = (hi_i.max(0.0) as usize).min(width.saturating_sub(1));
        let lo_j = lo_j.max(0.0) as usize;
        let hi_j = (hi_j.max(0.0) as usize).min(height.saturating_sub(1));
        for j in lo_j..=hi_j {
            for i in lo_i..=hi_i {
                if !mask.get(i, j) && disk.contains(mask.cell_center(i, j)) {
                    mask.set(i, j, true);
                }
            }
        }
    }
    Ok(mask)
}

/// Distance from a point to a closed axis-aligned rectangle, zero inside.
pub fn point_rect_distance(p: Point2, lo: Point2, hi: Point2) -> f64 {
    let dx = (lo.x - p.x).max(0.0).max(p.x - hi.x);
    let dy = (lo.y - p.y).max(0.0).max(p.y - hi.y);
    (dx * dx + dy * dy).sqrt()
}

/// Distance between two closed axis-aligned rectangles, zero when they touch.
pub fn rect_rect_distance(alo: Point2, ahi: Point2, blo: Point2, bhi: Point2) -> f64 {
    let dx = (blo.x - ahi.x).max(alo.x - bhi.x).max(0.0);
    let dy = (blo.y - ahi.y).max(alo.y - bhi.y).max(0.0);
    (dx * dx + dy * dy).sqrt()
}
