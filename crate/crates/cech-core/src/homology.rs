//! Desk-scale homotopy-type witnesses: Betti numbers (β0, β1) of an abstract
//! complex via boundary-matrix rank over the two-element field, and of a
//! rasterized disk union via flood fill, plus the dual-path nerve checks that
//! compare them.

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::complex::{build_cech_complex_with_margin, SimplicialComplex};
use crate::descriptive::FeatureMap;
use crate::error::{Error, Result};
use crate::geom::{rasterize_union, BoundingBox, Disk, GridMask, Point2, RegionPoint};

/// The homotopy-type proxy used throughout: number of connected components
/// and number of independent loops. Planar disk unions are determined up to
/// homotopy by this pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BettiNumbers {
    pub b0: usize,
    pub b1: usize,
}

/// Mod-2 boundary operator from k-simplices (columns) to (k-1)-simplices
/// (rows): entry 1 exactly where the row simplex is a codimension-1 face of
/// the column simplex. Rows are bit-packed.
pub struct BoundaryMatrix {
    row_count: usize,
    columns: Vec<Vec<u64>>,
}

impl BoundaryMatrix {
    pub fn build(complex: &SimplicialComplex, k: usize) -> BoundaryMatrix {
        assert!(k >= 1, "boundary operator needs dimension >= 1");
        let rows = complex.simplices_of_dim(k - 1);
        let cols = complex.simplices_of_dim(k);
        let row_index: std::collections::HashMap<&[usize], usize> = rows
            .iter()
            .enumerate()
            .map(|(i, s)| (s.as_slice(), i))
            .collect();
        let words = rows.len().div_ceil(64).max(1);
        let mut columns = Vec::with_capacity(cols.len());
        for col in cols {
            let mut bits = vec![0u64; words];
            for skip in 0..col.len() {
                let face: Vec<usize> = col
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != skip)
                    .map(|(_, &v)| v)
                    .collect();
                let row = row_index[face.as_slice()];
                bits[row / 64] ^= 1u64 << (row % 64);
            }
            columns.push(bits);
        }
        BoundaryMatrix {
            row_count: rows.len(),
            columns,
        }
    }

    pub fn row_count(&self) -> usize {
        self.row_count
    }

    pub fn col_count(&self) -> usize {
        self.columns.len()
    }

    pub fn entry(&self, row: usize, col: usize) -> bool {
        self.columns[col][row / 64] >> (row % 64) & 1 == 1
    }

    /// Rank over GF(2) by column elimination against stored pivots.
    pub fn rank(&self) -> usize {
        let mut pivots: Vec<Option<Vec<u64>>> = vec![None; self.row_count];
        let mut rank = 0;
        for col in &self.columns {
            let mut c = col.clone();
            while let Some(lead) = lowest_set_bit(&c) {
                match &pivots[lead] {
                    Some(p) => {
                        for (cw, pw) in c.iter_mut().zip(p) {
                            *cw ^= pw;
                        }
                    }
                    None => {
                        pivots[lead] = Some(c);
                        rank += 1;
                        break;
                    }
                }
            }
        }
        rank
    }

    /// Composes this boundary with `next` (one dimension up) over GF(2) and
    /// checks the composite is zero. Verification helper.
    pub fn composes_to_zero_with(&self, next: &BoundaryMatrix) -> bool {
        // boundary of boundary of each (k+1)-simplex: xor of our columns
        // selected by the next matrix's column bits
        let words = self.row_count.div_ceil(64).max(1);
        for col in &next.columns {
            let mut acc = vec![0u64; words];
            for (row, our_col) in self.columns.iter().enumerate() {
                if col[row / 64] >> (row % 64) & 1 == 1 {
                    for (a, w) in acc.iter_mut().zip(our_col) {
                        *a ^= w;
                    }
                }
            }
            if acc.iter().any(|&w| w != 0) {
                return false;
            }
        }
        true
    }
}

fn lowest_set_bit(words: &[u64]) -> Option<usize> {
    for (i, &w) in words.iter().enumerate() {
        if w != 0 {
            return Some(i * 64 + w.trailing_zeros() as usize);
        }
    }
    None
}

/// Betti numbers of the complex over GF(2): `b0 = V − rank ∂1`,
/// `b1 = (E − rank ∂1) − rank ∂2`. The complex must contain its 2-simplices
/// for `b1` to be meaningful (build with `max_dim >= 2`).
pub fn complex_betti(complex: &SimplicialComplex) -> Result<BettiNumbers> {
    if complex.is_empty() || complex.vertex_count() == 0 {
        return Err(Error::EmptyComplex);
    }
    let v = complex.simplices_of_dim(0).len();
    let e = complex.simplices_of_dim(1).len();
    let d1 = BoundaryMatrix::build(complex, 1);
    let d2 = BoundaryMatrix::build(complex, 2);
    let r1 = d1.rank();
    let r2 = d2.rank();
    Ok(BettiNumbers {
        b0: v - r1,
        b1: (e - r1) - r2,
    })
}

/// Betti numbers of a rasterized set: components of the true cells under
/// 4-connectivity, and bounded components of the false cells under
/// 8-connectivity (the standard digital duality, which avoids phantom holes
/// at diagonal contacts).
pub fn grid_betti(mask: &GridMask) -> Result<BettiNumbers> {
    if mask.is_empty() {
        return Err(Error::EmptyUnion);
    }
    let w = mask.width();
    let h = mask.height();
    let idx = |i: usize, j: usize| j * w + i;

    let mut label = vec![false; w * h]; // visited
    let mut b0 = 0;
    let mut stack = Vec::new();
    for j in 0..h {
        for i in 0..w {
            if !mask.get(i, j) || label[idx(i, j)] {
                continue;
            }
            b0 += 1;
            label[idx(i, j)] = true;
            stack.push((i, j));
            while let Some((ci, cj)) = stack.pop() {
                let mut visit = |ni: usize, nj: usize| {
                    if mask.get(ni, nj) && !label[idx(ni, nj)] {
                        label[idx(ni, nj)] = true;
                        stack.push((ni, nj));
                    }
                };
                if ci > 0 {
                    visit(ci - 1, cj);
                }
                if ci + 1 < w {
                    visit(ci + 1, cj);
                }
                if cj > 0 {
                    visit(ci, cj - 1);
                }
                if cj + 1 < h {
                    visit(ci, cj + 1);
                }
            }
        }
    }

    // Flood the outside background from the frame with 8-connectivity; every
    // remaining false component is a bounded hole.
    let mut outside = vec![false; w * h];
    let mut stack: Vec<(usize, usize)> = Vec::new();
    for i in 0..w {
        for j in [0, h - 1] {
            if !mask.get(i, j) && !outside[idx(i, j)] {
                outside[idx(i, j)] = true;
                stack.push((i, j));
            }
        }
    }
    for j in 0..h {
        for i in [0, w - 1] {
            if !mask.get(i, j) && !outside[idx(i, j)] {
                outside[idx(i, j)] = true;
                stack.push((i, j));
            }
        }
    }
    let flood8 = |seed_stack: &mut Vec<(usize, usize)>, marks: &mut Vec<bool>| {
        while let Some((ci, cj)) = seed_stack.pop() {
            for dj in -1i64..=1 {
                for di in -1i64..=1 {
                    if di == 0 && dj == 0 {
                        continue;
                    }
                    let ni = ci as i64 + di;
                    let nj = cj as i64 + dj;
                    if ni < 0 || nj < 0 || ni >= w as i64 || nj >= h as i64 {
                        continue;
                    }
                    let (ni, nj) = (ni as usize, nj as usize);
                    if !mask.get(ni, nj) && !marks[idx(ni, nj)] {
                        marks[idx(ni, nj)] = true;
                        seed_stack.push((ni, nj));
                    }
                }
            }
        }
    };
    flood8(&mut stack, &mut outside);

    let mut b1 = 0;
    let mut hole = vec![false; w * h];
    for j in 0..h {
        for i in 0..w {
            if mask.get(i, j) || outside[idx(i, j)] || hole[idx(i, j)] {
                continue;
            }
            b1 += 1;
            hole[idx(i, j)] = true;
            let mut stack = vec![(i, j)];
            flood8(&mut stack, &mut hole);
        }
    }

    Ok(BettiNumbers { b0, b1 })
}

/// Morphological erosion with the 3x3 box element; cells outside the grid
/// count as false.
pub fn erode(mask: &GridMask) -> GridMask {
    morph(mask, true)
}

/// Morphological dilation with the 3x3 box element.
pub fn dilate(mask: &GridMask) -> GridMask {
    morph(mask, false)
}

fn morph(mask: &GridMask, erosion: bool) -> GridMask {
    let w = mask.width();
    let h = mask.height();
    let mut out = GridMask::filled(w, h, mask.bounds(), false).expect("same geometry");
    for j in 0..h {
        for i in 0..w {
            let mut all = true;
            let mut any = false;
            for dj in -1i64..=1 {
                for di in -1i64..=1 {
                    let ni = i as i64 + di;
                    let nj = j as i64 + dj;
                    let v = if ni < 0 || nj < 0 || ni >= w as i64 || nj >= h as i64 {
                        false
                    } else {
                        mask.get(ni as usize, nj as usize)
                    };
                    all &= v;
                    any |= v;
                }
            }
            out.set(i, j, if erosion { all } else { any });
        }
    }
    out
}

/// Margin-filter thresholds for [`nerve_theorem_check`]: candidate subsets
/// may not sit within `radius_margin` (relative) of the ball radius, and the
/// rasterized union may not carry features thinner than `thinness_cells`
/// (realized by requiring Betti stability under one-cell erosion/dilation per
/// `thinness_cells / 2` rounds).
#[derive(Debug, Clone, Copy)]
pub struct NerveCheckConfig {
    pub radius_margin: f64,
    pub thinness_cells: usize,
}

impl Default for NerveCheckConfig {
    fn default() -> Self {
        NerveCheckConfig {
            radius_margin: 1e-3,
            thinness_cells: 3,
        }
    }
}

/// Dual-path verdict: Betti numbers of the abstract complex against those of
/// the rasterized union of the same balls. `margin` is the smallest relative
/// enclosing-radius margin seen while building the complex.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NerveCheckReport {
    pub complex_betti: BettiNumbers,
    pub union_betti: BettiNumbers,
    pub agree: bool,
    pub resolution: usize,
    pub margin: f64,
}

impl Serialize for NerveCheckReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("NerveCheckReport", 7)?;
        s.serialize_field("b0_complex", &self.complex_betti.b0)?;
        s.serialize_field("b1_complex", &self.complex_betti.b1)?;
        s.serialize_field("b0_union", &self.union_betti.b0)?;
        s.serialize_field("b1_union", &self.union_betti.b1)?;
        s.serialize_field("agree", &self.agree)?;
        s.serialize_field("resolution", &self.resolution)?;
        s.serialize_field("margin", &self.margin)?;
        s.end()
    }
}

fn report(
    complex_betti: BettiNumbers,
    union_betti: BettiNumbers,
    resolution: usize,
    margin: f64,
) -> NerveCheckReport {
    NerveCheckReport {
        complex_betti,
        union_betti,
        agree: complex_betti == union_betti,
        resolution,
        margin,
    }
}

/// Checks the nerve/union homotopy claim for one configuration: builds the
/// Čech complex (cap 2) and the rasterized union at `resolution`², computes
/// both Betti pairs by independent code paths, and compares.
///
/// Errs with [`Error::UnstableConfiguration`] when the configuration fails
/// the margin filter: some candidate subset's enclosing radius within the
/// relative `radius_margin` of `r`, or Betti numbers that change under
/// one-cell morphology (a feature thinner than the filter allows).
pub fn nerve_theorem_check(centers: &[Point2], r: f64, resolution: usize) -> Result<NerveCheckReport> {
    nerve_theorem_check_with(centers, r, resolution, &NerveCheckConfig::default())
}

pub fn nerve_theorem_check_with(
    centers: &[Point2],
    r: f64,
    resolution: usize,
    config: &NerveCheckConfig,
) -> Result<NerveCheckReport> {
    if resolution < 8 {
        return Err(Error::BadGridDimensions);
    }
    let (complex, margin) = build_cech_complex_with_margin(centers, r, 2)?;
    if margin < config.radius_margin {
        return Err(Error::UnstableConfiguration);
    }
    let b_complex = complex_betti(&complex)?;

    let tight = BoundingBox::of_points(centers)?.pad(r);
    let frame = 8.0 * tight.width().max(tight.height()) / resolution as f64;
    let bounds = tight.pad(frame).square();
    let disks: Vec<Disk> = centers.iter().map(|&c| Disk::new(c, r)).collect();
    let mask = rasterize_union(&disks, bounds, resolution, resolution)?;
    let b_union = grid_betti(&mask).map_err(|_| Error::UnstableConfiguration)?;

    let rounds = (config.thinness_cells / 2).max(1);
    let mut eroded = mask.clone();
    let mut dilated = mask;
    for _ in 0..rounds {
        eroded = erode(&eroded);
        dilated = dilate(&dilated);
    }
    let b_eroded = grid_betti(&eroded).map_err(|_| Error::UnstableConfiguration)?;
    let b_dilated = grid_betti(&dilated).map_err(|_| Error::UnstableConfiguration)?;
    if b_eroded != b_union || b_dilated != b_union {
        return Err(Error::UnstableConfiguration);
    }

    Ok(report(b_complex, b_union, resolution, margin))
}

/// Checks the descriptive nerve/union claim: maps the domain into feature
/// space through `phi` and verifies the complex of descriptive balls against
/// the union of feature-space balls there.
///
/// 1-D feature maps use an exact interval-merge oracle for the union side;
/// 2-D maps reuse the planar machinery. Higher arities have no union oracle.
pub fn descriptive_nerve_theorem_check(
    domain: &[RegionPoint],
    phi: &FeatureMap,
    feature_radius: f64,
    resolution: usize,
) -> Result<NerveCheckReport> {
    if domain.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    if !(feature_radius.is_finite() && feature_radius > 0.0) {
        return Err(Error::InvalidRadius);
    }
    match phi.arity() {
        2 => {
            let centers: Vec<Point2> = domain
                .iter()
                .map(|p| {
                    let f = phi.evaluate(p)?;
                    Ok(Point2::new(f.0[0], f.0[1]))
                })
                .collect::<Result<_>>()?;
            nerve_theorem_check(&centers, feature_radius, resolution)
        }
        1 => {
            let values: Vec<f64> = domain
                .iter()
                .map(|p| phi.evaluate(p).map(|f| f.0[0]))
                .collect::<Result<_>>()?;
            // complex over the embedded line
            let centers: Vec<Point2> = values.iter().map(|&v| Point2::new(v, 0.0)).collect();
            let (complex, margin) = build_cech_complex_with_margin(&centers, feature_radius, 2)?;
            if margin < NerveCheckConfig::default().radius_margin {
                return Err(Error::UnstableConfiguration);
            }
            let b_complex = complex_betti(&complex)?;
            // interval-merge union oracle: sort closed intervals, count gaps
            let mut sorted = values;
            sorted.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
            let mut components = 1usize;
            let mut reach = sorted[0] + feature_radius;
            for &v in &sorted[1..] {
                if v - feature_radius > reach {
                    components += 1;
                }
                reach = reach.max(v + feature_radius);
            }
            let b_union = BettiNumbers {
                b0: components,
                b1: 0,
            };
            Ok(report(b_complex, b_union, resolution, margin))
        }
        d => Err(Error::FeatureDimension(d)),
    }
}
