//! End-to-end pipeline from an irregular planar region given as a grid mask
//! to a nerve approximation with quality metrics: coverage of the region,
//! excess spill outside it, and agreement of the two Betti computations.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::complex::{build_cech_complex, covering_check};
use crate::error::{Error, Result};
use crate::geom::{rasterize_union, Disk, GridMask, Point2};
use crate::homology::{complex_betti, grid_betti, BettiNumbers};
use crate::proximity::Region;

/// How ball centers are drawn from the mask. All strategies return points
/// lying in occupied cells and are deterministic (Poisson given its seed).
#[derive(Debug, Clone, PartialEq)]
pub enum SamplingStrategy {
    /// Row-major greedy net over true cell centers: a center is kept exactly
    /// when every previously kept point is at least `spacing` away. On a full
    /// rectangular mask with `spacing` equal to the cell size this keeps
    /// every true cell center, and in general every true cell center ends up
    /// strictly within `spacing` of some kept point.
    Grid { spacing: f64 },
    /// Dart throwing with a minimum pairwise distance.
    Poisson { min_dist: f64, seed: u64 },
    /// Boundary cell centers thinned to `spacing`, then interior fill.
    BoundaryInterior { spacing: f64 },
}

/// Quality report for one approximation run.
#[derive(Debug, Clone, Serialize)]
pub struct ApproximationReport {
    pub n_centers: usize,
    pub radius: f64,
    pub coverage_fraction: f64,
    pub excess_fraction: f64,
    pub betti_region: BettiNumbers,
    pub betti_complex: BettiNumbers,
    pub betti_agree: bool,
}

/// Draws sample points from the occupied cells of the mask.
pub fn sample_region(mask: &GridMask, strategy: &SamplingStrategy) -> Result<Vec<Point2>> {
    if mask.is_empty() {
        return Err(Error::EmptyRegion);
    }
    let extent = mask.bounds().width().max(mask.bounds().height());
    match strategy {
        SamplingStrategy::Grid { spacing } => {
            check_spacing(*spacing, extent)?;
            Ok(greedy_net(mask.true_centers(), *spacing, &[]))
        }
        SamplingStrategy::Poisson { min_dist, seed } => {
            check_spacing(*min_dist, extent)?;
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let bounds = mask.bounds();
            let area = bounds.width() * bounds.height();
            let target = (area / (min_dist * min_dist)).ceil() as usize;
            let attempts = (target * 64).clamp(1024, 400_000);
            let mut kept: Vec<Point2> = Vec::new();
            for _ in 0..attempts {
                let p = Point2::new(
                    rng.random_range(bounds.min.x..bounds.max.x),
                    rng.random_range(bounds.min.y..bounds.max.y),
                );
                let in_true_cell = mask
                    .cell_containing(p)
                    .map(|(i, j)| mask.get(i, j))
                    .unwrap_or(false);
                if in_true_cell && kept.iter().all(|q| q.distance(p) >= *min_dist) {
                    kept.push(p);
                }
            }
            if kept.is_empty() {
                return Err(Error::NoSamples);
            }
            Ok(kept)
        }
        SamplingStrategy::BoundaryInterior { spacing } => {
            check_spacing(*spacing, extent)?;
            let boundary = greedy_net(boundary_cell_centers(mask), *spacing, &[]);
            let interior = greedy_net(interior_cell_centers(mask), *spacing, &boundary);
            let mut out = boundary;
            out.extend(interior);
            Ok(out)
        }
    }
}

fn check_spacing(spacing: f64, extent: f64) -> Result<()> {
    if !(spacing.is_finite() && spacing > 0.0) || spacing > extent {
        return Err(Error::SpacingTooLarge);
    }
    Ok(())
}

/// Keeps a candidate exactly when all previously kept points (and the fixed
/// `seed` points) are at distance >= spacing; every dropped candidate is
/// therefore strictly within `spacing` of a kept one.
fn greedy_net(
    candidates: impl Iterator<Item = Point2>,
    spacing: f64,
    seeds: &[Point2],
) -> Vec<Point2> {
    let mut kept: Vec<Point2> = Vec::new();
    for c in candidates {
        if seeds.iter().all(|q| q.distance(c) >= spacing)
            && kept.iter().all(|q| q.distance(c) >= spacing)
        {
            kept.push(c);
        }
    }
    kept
}

fn is_boundary_cell(mask: &GridMask, i: usize, j: usize) -> bool {
    if !mask.get(i, j) {
        return false;
    }
    let w = mask.width();
    let h = mask.height();
    if i == 0 || j == 0 || i + 1 == w || j + 1 == h {
        return true;
    }
    !(mask.get(i - 1, j) && mask.get(i + 1, j) && mask.get(i, j - 1) && mask.get(i, j + 1))
}

fn boundary_cell_centers(mask: &GridMask) -> impl Iterator<Item = Point2> + '_ {
    mask.true_cells()
        .filter(move |&(i, j)| is_boundary_cell(mask, i, j))
        .map(move |(i, j)| mask.cell_center(i, j))
}

fn interior_cell_centers(mask: &GridMask) -> impl Iterator<Item = Point2> + '_ {
    mask.true_cells()
        .filter(move |&(i, j)| !is_boundary_cell(mask, i, j))
        .map(move |(i, j)| mask.cell_center(i, j))
}

/// Samples centers, builds the Čech complex, and reports coverage, excess,
/// and the two Betti computations. Excess counts cells of the mask's own
/// grid, so spill beyond the mask's bounding box is not charged.
pub fn approximate_shape(
    mask: &GridMask,
    strategy: &SamplingStrategy,
    r: f64,
) -> Result<ApproximationReport> {
    if !(r.is_finite() && r > 0.0) {
        return Err(Error::InvalidRadius);
    }
    let centers = sample_region(mask, strategy)?;
    if centers.is_empty() {
        return Err(Error::NoSamples);
    }
    let complex = build_cech_complex(&centers, r, 2)?;

    let ambient = mask.bounds().pad(r);
    let region = Region::mask(ambient, mask.clone())?;
    let covering = covering_check(&region, &centers, r, 1.0)?;

    let disks: Vec<Disk> = centers.iter().map(|&c| Disk::new(c, r)).collect();
    let union = rasterize_union(&disks, mask.bounds(), mask.width(), mask.height())?;
    let mut excess_cells = 0usize;
    for (i, j) in union.true_cells() {
        if !mask.get(i, j) {
            excess_cells += 1;
        }
    }

    let betti_region = grid_betti(mask)?;
    let betti_complex = complex_betti(&complex)?;

    Ok(ApproximationReport {
        n_centers: centers.len(),
        radius: r,
        coverage_fraction: covering.fraction,
        excess_fraction: excess_cells as f64 / mask.true_count() as f64,
        betti_region,
        betti_complex,
        betti_agree: betti_region == betti_complex,
    })
}
