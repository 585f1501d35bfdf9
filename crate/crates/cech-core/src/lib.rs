//! Čech nerves and complexes over finite, bounded planar regions, the
//! spatial/strong/descriptive proximity relator on regions and nerves, and
//! desk-scale verification of nerve/union homotopy equivalence through Betti
//! numbers computed along two independent paths.
//!
//! The crate is organized around the pipeline:
//!
//! * [`geom`] - points, closed disks, minimum enclosing disks, rasterization;
//! * [`complex`] - Čech complexes, nerves, and the covering condition;
//! * [`proximity`] - regions and the proximity relations on them;
//! * [`axioms`] - the sampled axiom-verification harness;
//! * [`descriptive`] - feature maps, descriptive balls/nerves, descriptive
//!   proximity;
//! * [`homology`] - Betti numbers of complexes (boundary-matrix rank over
//!   GF(2)) and of rasterized unions (flood fill), plus the dual-path nerve
//!   checks;
//! * [`approx`] - mask-to-nerve shape approximation with quality metrics;
//! * [`io`] / [`render`] - CSV/PGM parsing and SVG output.

pub mod approx;
pub mod axioms;
pub mod complex;
pub mod descriptive;
mod error;
pub mod geom;
pub mod homology;
pub mod io;
pub mod proximity;
pub mod render;

pub use error::{Error, Result};

pub use approx::{approximate_shape, sample_region, ApproximationReport, SamplingStrategy};
pub use axioms::{
    generate_universe, verify_axioms, AxiomCheckConfig, AxiomReport, AxiomResult, RelationSystem,
    UniverseFlavor,
};
pub use complex::{
    build_cech_complex, build_cech_complex_with_margin, covering_check, maximal_nerves,
    CechComplexCover, CechNerve, CoveringReport, SimplicialComplex,
};
pub use descriptive::{
    build_descriptive_ball, build_descriptive_nerve_complex, descriptive_intersection,
    descriptively_near, nerves_descriptively_near, strongly_descriptively_near,
    strongly_descriptively_near_spaced, BallFeatures, DescriptiveBall, DescriptiveNerve,
    FeatureMap, FeatureVector,
};
pub use geom::{
    disks_common_point, disks_common_point_tol, min_enclosing_disk, rasterize_union, BoundingBox,
    Disk, EnclosingDisk, GridMask, Point2, RegionPoint,
};
pub use homology::{
    complex_betti, descriptive_nerve_theorem_check, grid_betti, nerve_theorem_check,
    nerve_theorem_check_with, BettiNumbers, BoundaryMatrix, NerveCheckConfig, NerveCheckReport,
};
pub use io::{parse_mask_pgm, parse_mask_pgm_str, parse_points_csv, parse_points_csv_str};
pub use proximity::{
    near, nerves_strongly_near, regions_intersect, strongly_near, strongly_near_boundary,
    ProximalRelator, Region, RegionKind,
};
pub use render::{render_svg, RenderOptions};
