#![allow(dead_code)] // shared between test targets; not every target uses everything

//! Independent oracles shared by the property and acceptance suites. Nothing
//! here touches the library's enclosing-disk machinery: the common-point
//! oracle is a row-scan grid search and the enclosing-disk oracle a full
//! candidate enumeration.

use cech_core::{EnclosingDisk, Point2};

/// Grid common-point search: scans horizontal grid lines at spacing
/// `h = resolution * r` and intersects the exact per-disk chords on each
/// line. Sound for "no common point"; finds a common point whenever the
/// intersection contains a ball of radius at least `h`, which the margin
/// filters guarantee.
pub fn grid_common_point_search(centers: &[Point2], r: f64, resolution: f64) -> bool {
    let h = resolution * r;
    let y_lo = centers
        .iter()
        .map(|c| c.y - r)
        .fold(f64::NEG_INFINITY, f64::max);
    let y_hi = centers
        .iter()
        .map(|c| c.y + r)
        .fold(f64::INFINITY, f64::min);
    if y_lo > y_hi {
        return false;
    }
    let steps = ((y_hi - y_lo) / h).ceil() as usize;
    for k in 0..=steps {
        let y = (y_lo + k as f64 * h).min(y_hi);
        let mut x_lo = f64::NEG_INFINITY;
        let mut x_hi = f64::INFINITY;
        let mut feasible = true;
        for c in centers {
            let dy = y - c.y;
            let spread2 = r * r - dy * dy;
            if spread2 < 0.0 {
                feasible = false;
                break;
            }
            let spread = spread2.sqrt();
            x_lo = x_lo.max(c.x - spread);
            x_hi = x_hi.min(c.x + spread);
        }
        if feasible && x_lo <= x_hi {
            return true;
        }
    }
    false
}

/// Exhaustive minimum-enclosing-disk oracle: tries every single point, every
/// pair diameter, and every triple circumscribed disk, keeps the feasible
/// candidates, and returns the smallest.
pub fn enclosing_disk_oracle(points: &[Point2]) -> EnclosingDisk {
    assert!(!points.is_empty());
    let contains_all = |center: Point2, radius: f64| {
        points
            .iter()
            .all(|p| center.distance(*p) <= radius + 1e-9)
    };
    let mut best = EnclosingDisk {
        center: points[0],
        radius: f64::INFINITY,
    };
    let mut consider = |center: Point2, radius: f64| {
        if radius < best.radius && contains_all(center, radius) {
            best = EnclosingDisk { center, radius };
        }
    };
    for &p in points {
        consider(p, 0.0);
    }
    for (i, &a) in points.iter().enumerate() {
        for &b in &points[i + 1..] {
            let center = Point2::new((a.x + b.x) / 2.0, (a.y + b.y) / 2.0);
            consider(center, center.distance(a).max(center.distance(b)));
        }
    }
    for (i, &a) in points.iter().enumerate() {
        for (j, &b) in points.iter().enumerate().skip(i + 1) {
            for &c in &points[j + 1..] {
                if let Some((center, radius)) = circumcircle(a, b, c) {
                    consider(center, radius);
                }
            }
        }
    }
    assert!(best.radius.is_finite(), "oracle found no enclosing disk");
    best
}

fn circumcircle(a: Point2, b: Point2, c: Point2) -> Option<(Point2, f64)> {
    let d = 2.0 * (a.x * (b.y - c.y) + b.x * (c.y - a.y) + c.x * (a.y - b.y));
    if d == 0.0 {
        return None;
    }
    let a2 = a.x * a.x + a.y * a.y;
    let b2 = b.x * b.x + b.y * b.y;
    let c2 = c.x * c.x + c.y * c.y;
    let ux = (a2 * (b.y - c.y) + b2 * (c.y - a.y) + c2 * (a.y - b.y)) / d;
    let uy = (a2 * (c.x - b.x) + b2 * (a.x - c.x) + c2 * (b.x - a.x)) / d;
    let center = Point2::new(ux, uy);
    let radius = center
        .distance(a)
        .max(center.distance(b))
        .max(center.distance(c));
    Some((center, radius))
}

/// Union-find over `n` vertices; used to cross-check component counts.
pub struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let root = self.find(self.parent[x]);
            self.parent[x] = root;
        }
        self.parent[x]
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra != rb {
            self.parent[rb] = ra;
        }
    }

    pub fn component_count(&mut self) -> usize {
        let n = self.parent.len();
        (0..n).filter(|&i| self.find(i) == i).count()
    }
}
