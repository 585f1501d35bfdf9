//! Property-based invariants for the geometric predicates, the complex
//! builder, the proximity relations, and the homology cross-checks.

mod support;

use proptest::prelude::*;

use cech_core::{
    build_cech_complex, complex_betti, descriptively_near, disks_common_point,
    maximal_nerves, min_enclosing_disk, near, rasterize_union, strongly_near, BoundingBox, Disk,
    FeatureMap, GridMask, Point2, ProximalRelator, Region, RegionPoint,
};
use support::{enclosing_disk_oracle, grid_common_point_search, UnionFind};

fn coord() -> impl Strategy<Value = f64> {
    (-10.0..10.0f64).prop_map(|v| (v * 64.0).round() / 64.0)
}

fn point() -> impl Strategy<Value = Point2> {
    (coord(), coord()).prop_map(|(x, y)| Point2::new(x, y))
}

fn points(max: usize) -> impl Strategy<Value = Vec<Point2>> {
    prop::collection::vec(point(), 1..max)
}

proptest! {
    /// The enclosing disk contains every input point.
    #[test]
    fn med_contains_all_inputs(pts in points(64)) {
        let med = min_enclosing_disk(&pts).unwrap();
        for p in &pts {
            prop_assert!(med.center.distance(*p) <= med.radius + 1e-9);
        }
    }

    /// The randomized construction agrees with full candidate enumeration.
    #[test]
    fn med_matches_enumeration_oracle(pts in points(10)) {
        let med = min_enclosing_disk(&pts).unwrap();
        let oracle = enclosing_disk_oracle(&pts);
        prop_assert!((med.radius - oracle.radius).abs() <= 1e-9,
            "med {} vs oracle {}", med.radius, oracle.radius);
    }

    /// Common-point decisions are monotone in the radius.
    #[test]
    fn common_point_monotone_in_radius(pts in points(8), r in 0.1..4.0f64, grow in 0.01..2.0f64) {
        if disks_common_point(&pts, r).unwrap() {
            prop_assert!(disks_common_point(&pts, r + grow).unwrap());
        }
    }

    /// The enclosing-radius decision agrees with a row-scan grid search away
    /// from the decision boundary.
    #[test]
    fn common_point_matches_grid_search(pts in points(6), r in 0.2..3.0f64) {
        let med = min_enclosing_disk(&pts).unwrap();
        prop_assume!((med.radius - r).abs() > 1e-3 * r);
        let fast = disks_common_point(&pts, r).unwrap();
        let slow = grid_common_point_search(&pts, r, 1e-3);
        prop_assert_eq!(fast, slow);
    }

    /// Adding a disk never clears a rasterized cell.
    #[test]
    fn rasterize_union_monotone(
        disks in prop::collection::vec((point(), 0.2..2.0f64), 1..6),
        extra in (point(), 0.2..2.0f64),
    ) {
        let bounds = BoundingBox::new(Point2::new(-14.0, -14.0), Point2::new(14.0, 14.0));
        let base: Vec<Disk> = disks.iter().map(|&(c, r)| Disk::new(c, r)).collect();
        let mut grown = base.clone();
        grown.push(Disk::new(extra.0, extra.1));
        let small = rasterize_union(&base, bounds, 64, 64).unwrap();
        let large = rasterize_union(&grown, bounds, 64, 64).unwrap();
        for j in 0..64 {
            for i in 0..64 {
                prop_assert!(!small.get(i, j) || large.get(i, j));
            }
        }
    }

    /// Simplices only ever appear as the radius grows.
    #[test]
    fn complex_monotone_in_radius(pts in points(8), r in 0.2..2.0f64, grow in 0.05..1.0f64) {
        let small = build_cech_complex(&pts, r, 2).unwrap();
        let large = build_cech_complex(&pts, r + grow, 2).unwrap();
        for s in small.simplices() {
            prop_assert!(large.contains(s));
        }
    }

    /// Every constructed complex is downward closed with all vertices present.
    #[test]
    fn complex_downward_closed(pts in points(8), r in 0.2..2.0f64) {
        let cx = build_cech_complex(&pts, r, 3).unwrap();
        prop_assert!(cx.is_downward_closed());
        prop_assert_eq!(cx.simplices_of_dim(0).len(), cx.vertex_count());
    }

    /// Every facet nerve re-verifies its common intersection, and inside one
    /// nerve every pair of member balls intersects and is near.
    #[test]
    fn facet_nerves_share_a_common_point(pts in points(8), r in 0.2..2.0f64) {
        let ambient = BoundingBox::new(Point2::new(-16.0, -16.0), Point2::new(16.0, 16.0));
        let rel = ProximalRelator::default();
        let cx = build_cech_complex(&pts, r, 2).unwrap();
        for nerve in maximal_nerves(&cx, &pts, r).unwrap() {
            let centers = nerve.member_centers();
            prop_assert!(disks_common_point(&centers, r).unwrap());
            for (i, a) in centers.iter().enumerate() {
                for b in &centers[i + 1..] {
                    prop_assert!(a.distance(*b) <= 2.0 * r + 1e-9);
                    let da = Region::disks(ambient, vec![Disk::new(*a, r)]).unwrap();
                    let db = Region::disks(ambient, vec![Disk::new(*b, r)]).unwrap();
                    prop_assert!(near(&da, &db, &rel).unwrap());
                }
            }
        }
    }

    /// Nearness is symmetric and additive over unions of disk regions.
    #[test]
    fn near_symmetric_and_union_additive(
        a in prop::collection::vec((point(), 0.2..1.5f64), 1..4),
        b in prop::collection::vec((point(), 0.2..1.5f64), 1..4),
        c in prop::collection::vec((point(), 0.2..1.5f64), 1..4),
    ) {
        let ambient = BoundingBox::new(Point2::new(-16.0, -16.0), Point2::new(16.0, 16.0));
        let mk = |list: &[(Point2, f64)]| {
            Region::disks(ambient, list.iter().map(|&(p, r)| Disk::new(p, r)).collect()).unwrap()
        };
        let (ra, rb, rc) = (mk(&a), mk(&b), mk(&c));
        let rel = ProximalRelator::default();
        prop_assert_eq!(near(&ra, &rb, &rel).unwrap(), near(&rb, &ra, &rel).unwrap());
        let union = rb.union(&rc).unwrap();
        prop_assert_eq!(
            near(&ra, &union, &rel).unwrap(),
            near(&ra, &rb, &rel).unwrap() || near(&ra, &rc, &rel).unwrap()
        );
    }

    /// Strong contact implies nearness (at zero gap tolerance).
    #[test]
    fn strongly_near_implies_near(
        a in prop::collection::vec((point(), 0.2..1.5f64), 1..4),
        b in prop::collection::vec((point(), 0.2..1.5f64), 1..4),
    ) {
        let ambient = BoundingBox::new(Point2::new(-16.0, -16.0), Point2::new(16.0, 16.0));
        let mk = |list: &[(Point2, f64)]| {
            Region::disks(ambient, list.iter().map(|&(p, r)| Disk::new(p, r)).collect()).unwrap()
        };
        let (ra, rb) = (mk(&a), mk(&b));
        if strongly_near(&ra, &rb).unwrap() {
            prop_assert!(near(&ra, &rb, &ProximalRelator::default()).unwrap());
        }
    }

    /// With position features and zero tolerance, descriptive nearness of
    /// finite point sets coincides with spatial nearness.
    #[test]
    fn descriptive_position_reduction(
        a in points(5),
        b in points(5),
    ) {
        let ambient = BoundingBox::new(Point2::new(-16.0, -16.0), Point2::new(16.0, 16.0));
        let ra = Region::bare_points(ambient, a).unwrap();
        let rb = Region::bare_points(ambient, b).unwrap();
        prop_assert_eq!(
            descriptively_near(&ra, &rb, &FeatureMap::Position, 0.0).unwrap(),
            near(&ra, &rb, &ProximalRelator::default()).unwrap()
        );
    }

    /// b0 from boundary-matrix rank equals an independent union-find count
    /// over the 1-skeleton.
    #[test]
    fn complex_b0_matches_union_find(pts in points(12), r in 0.2..2.0f64) {
        let cx = build_cech_complex(&pts, r, 2).unwrap();
        let betti = complex_betti(&cx).unwrap();
        let mut uf = UnionFind::new(cx.vertex_count());
        for s in cx.simplices_of_dim(1) {
            uf.union(s[0], s[1]);
        }
        prop_assert_eq!(betti.b0, uf.component_count());
    }

    /// Euler consistency: when the 2-truncation has no 2-cycles,
    /// V - E + F = b0 - b1.
    #[test]
    fn euler_consistency(pts in points(10), r in 0.2..2.0f64) {
        let cx = build_cech_complex(&pts, r, 2).unwrap();
        let v = cx.simplices_of_dim(0).len();
        let e = cx.simplices_of_dim(1).len();
        let f = cx.simplices_of_dim(2).len();
        let rank2 = cech_core::BoundaryMatrix::build(&cx, 2).rank();
        prop_assume!(f == rank2); // no 2-cycles in the truncation
        let betti = complex_betti(&cx).unwrap();
        prop_assert_eq!(
            v as i64 - e as i64 + f as i64,
            betti.b0 as i64 - betti.b1 as i64
        );
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    /// Rasterized Betti numbers are stable under doubling the resolution on
    /// margin-safe configurations.
    #[test]
    fn grid_betti_resolution_stable(pts in points(8), r in 0.3..1.0f64) {
        let Ok(low) = cech_core::nerve_theorem_check(&pts, r, 256) else {
            // margin filter rejected the configuration
            return Ok(());
        };
        if let Ok(high) = cech_core::nerve_theorem_check(&pts, r, 512) {
            prop_assert_eq!(low.union_betti, high.union_betti);
        }
    }

    /// Masks sampled with the grid strategy at spacing <= r are fully covered.
    #[test]
    fn grid_spacing_under_radius_covers(seed_cells in prop::collection::vec((0usize..24, 0usize..24), 6..40)) {
        let bounds = BoundingBox::new(Point2::new(0.0, 0.0), Point2::new(24.0, 24.0));
        let mut mask = GridMask::filled(24, 24, bounds, false).unwrap();
        for (i, j) in seed_cells {
            mask.set(i, j, true);
        }
        let r = 2.0;
        let report = cech_core::approximate_shape(
            &mask,
            &cech_core::SamplingStrategy::Grid { spacing: r },
            r,
        )
        .unwrap();
        prop_assert_eq!(report.coverage_fraction, 1.0);
    }
}

/// Nerve unions with strongly-near ball interiors are strongly
/// descriptively near under a constant feature map (descriptions match
/// wherever interiors exist).
#[test]
fn strongly_near_interiors_are_strongly_descriptively_near() {
    use rand::Rng;
    use rand::SeedableRng;
    let ambient = BoundingBox::new(Point2::new(-16.0, -16.0), Point2::new(16.0, 16.0));
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x51AB);
    let mut fired = 0usize;
    for _ in 0..500 {
        let ra = rng.random_range(0.4..1.2);
        let rb = rng.random_range(0.4..1.2);
        let ca = Point2::new(rng.random_range(-4.0..4.0), rng.random_range(-4.0..4.0));
        let d = rng.random_range(0.0..(ra + rb) * 1.5);
        let cb = Point2::new(ca.x + d, ca.y);
        let a = Region::disks(ambient, vec![Disk::new(ca, ra)]).unwrap();
        let b = Region::disks(ambient, vec![Disk::new(cb, rb)]).unwrap();
        if strongly_near(&a, &b).unwrap() {
            fired += 1;
            assert!(cech_core::strongly_descriptively_near_spaced(
                &a,
                &b,
                &FeatureMap::ConstantLabel(1.0),
                0.0,
                ra.min(rb) / 8.0,
            )
            .unwrap());
        }
    }
    assert!(fired > 100);
}

/// Margin-safe configurations up to 50 centers agree between the complex and
/// the rasterized union at the full working resolution.
#[test]
fn dual_path_agreement_up_to_fifty_centers() {
    use rand::Rng;
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x50C);
    let mut accepted = 0usize;
    let mut attempts = 0usize;
    while accepted < 20 {
        attempts += 1;
        assert!(attempts < 600, "margin filter rejected too many configs");
        let n = rng.random_range(3..=50usize);
        let centers: Vec<Point2> = (0..n)
            .map(|_| {
                Point2::new(rng.random_range(0.0..1.0), rng.random_range(0.0..1.0))
            })
            .collect();
        // radius proportional to the mean nearest-neighbor distance
        let mean_nn = centers
            .iter()
            .map(|a| {
                centers
                    .iter()
                    .filter(|b| *b != a)
                    .map(|b| a.distance(*b))
                    .fold(f64::INFINITY, f64::min)
            })
            .sum::<f64>()
            / n as f64;
        let r = mean_nn * rng.random_range(0.2..1.5);
        if !(r.is_finite() && r > 1e-3) {
            continue;
        }
        match cech_core::nerve_theorem_check(&centers, r, 1024) {
            Err(cech_core::Error::UnstableConfiguration) => continue,
            Err(e) => panic!("unexpected error: {e}"),
            Ok(report) => {
                assert!(report.agree, "betti mismatch at n={n}, r={r}: {report:?}");
                accepted += 1;
            }
        }
    }
}

/// Region distance against brute point sampling for mixed kinds.
#[test]
fn mask_gap_distance_matches_rect_geometry() {
    let ambient = BoundingBox::new(Point2::new(-2.0, -2.0), Point2::new(8.0, 8.0));
    let bounds = BoundingBox::new(Point2::new(0.0, 0.0), Point2::new(4.0, 4.0));
    let mut m1 = GridMask::filled(4, 4, bounds, false).unwrap();
    m1.set(0, 0, true);
    let mut m2 = GridMask::filled(4, 4, bounds, false).unwrap();
    m2.set(2, 0, true);
    let r1 = Region::mask(ambient, m1).unwrap();
    let r2 = Region::mask(ambient, m2).unwrap();
    // cells [0,1]x[0,1] and [2,3]x[0,1]: rectangle gap is 1
    assert_eq!(r1.gap_distance(&r2), 1.0);
    let pts = Region::points(
        ambient,
        vec![RegionPoint::bare(Point2::new(1.0, 0.5))],
    )
    .unwrap();
    // the point touches the closed cell of m1
    assert_eq!(r1.gap_distance(&pts), 0.0);
}
