//! `cech`: command-line front end for building Čech complexes over planar
//! point configurations, evaluating the proximity relator, verifying the
//! proximity axiom suites, and checking nerve/union Betti agreement.
//!
//! Exit codes: 0 success, 1 usage error, 2 data error, 3 check failure.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use cech_core::{
    approximate_shape, build_cech_complex, complex_betti, covering_check,
    descriptive_nerve_theorem_check, descriptively_near, generate_universe, grid_betti,
    maximal_nerves, near, nerve_theorem_check, parse_mask_pgm, parse_points_csv, render_svg,
    strongly_descriptively_near, strongly_near, verify_axioms, AxiomCheckConfig, BoundingBox,
    Disk, FeatureMap, Point2, ProximalRelator, Region, RegionPoint, RelationSystem,
    RenderOptions, SamplingStrategy, UniverseFlavor,
};

#[derive(Parser)]
#[command(
    name = "cech",
    version,
    about = "Čech nerves, proximity relators, and nerve-theorem checks on planar regions"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build the Čech complex over CSV points and write it as JSON
    Build {
        #[arg(long)]
        points: PathBuf,
        #[arg(long)]
        radius: f64,
        #[arg(long, default_value_t = 2)]
        max_dim: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Check the covering condition of a region by balls at the points
    Cover {
        #[arg(long)]
        points: PathBuf,
        /// Region to cover; defaults to the point set itself
        #[arg(long)]
        mask: Option<PathBuf>,
        #[arg(long)]
        radius: f64,
        /// Samples per unit length for disk-union regions
        #[arg(long, default_value_t = 16.0)]
        density: f64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Evaluate the proximity relator on two regions (.csv points, .pgm masks)
    Proximity {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        /// Treat CSV inputs as unions of balls of --radius at the points
        #[arg(long)]
        as_disks: bool,
        #[arg(long)]
        radius: Option<f64>,
        /// Feature map for the descriptive relations
        #[arg(long)]
        phi: Option<String>,
        /// Gap and feature tolerance of the relator
        #[arg(long, default_value_t = 0.0)]
        tolerance: f64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Betti numbers of a mask (flood fill) or of a complex over points
    Betti {
        #[arg(long)]
        mask: Option<PathBuf>,
        #[arg(long)]
        points: Option<PathBuf>,
        #[arg(long)]
        radius: Option<f64>,
        #[arg(long, default_value_t = 2)]
        max_dim: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run one proximity axiom suite over seeded generated universes
    VerifyAxioms {
        /// lodato | strong | descriptive-lodato | descriptive-strong
        #[arg(long)]
        system: String,
        #[arg(long, default_value_t = 8)]
        universes: usize,
        #[arg(long, default_value_t = 24)]
        universe_size: usize,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0.0)]
        tolerance: f64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Compare complex Betti numbers against the rasterized union
    NerveCheck {
        #[arg(long)]
        points: PathBuf,
        #[arg(long)]
        radius: Option<f64>,
        #[arg(long, default_value_t = 1024)]
        resolution: usize,
        /// Run the descriptive variant through this feature map
        #[arg(long)]
        phi: Option<String>,
        #[arg(long)]
        feature_radius: Option<f64>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Approximate a mask region by a nerve and report quality metrics
    Approx {
        #[arg(long)]
        mask: PathBuf,
        #[arg(long)]
        radius: f64,
        /// grid | poisson | boundary-interior
        #[arg(long, default_value = "grid")]
        strategy: String,
        #[arg(long)]
        spacing: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Render the complex over CSV points as SVG
    Render {
        #[arg(long)]
        points: PathBuf,
        #[arg(long)]
        radius: f64,
        #[arg(long, default_value_t = 2)]
        max_dim: usize,
        #[arg(long)]
        out: PathBuf,
    },
}

enum RunError {
    Usage(String),
    Data(String),
}

impl From<cech_core::Error> for RunError {
    fn from(e: cech_core::Error) -> Self {
        RunError::Data(e.to_string())
    }
}

impl From<std::io::Error> for RunError {
    fn from(e: std::io::Error) -> Self {
        RunError::Data(e.to_string())
    }
}

impl From<serde_json::Error> for RunError {
    fn from(e: serde_json::Error) -> Self {
        RunError::Data(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    print!("{e}");
                    ExitCode::SUCCESS
                }
                _ => {
                    eprint!("{e}");
                    ExitCode::from(1)
                }
            };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(RunError::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(1)
        }
        Err(RunError::Data(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

/// Writes through a temp file in the same directory, then renames.
fn write_atomic(path: &Path, content: &[u8]) -> std::io::Result<()> {
    let name = path
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_else(|| "out".to_string());
    let tmp = path.with_file_name(format!(".{name}.tmp{}", std::process::id()));
    std::fs::write(&tmp, content)?;
    std::fs::rename(&tmp, path)
}

fn write_json(path: &Path, value: &Value) -> Result<(), RunError> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    write_atomic(path, text.as_bytes())?;
    Ok(())
}

fn positions(points: &[RegionPoint]) -> Vec<Point2> {
    points.iter().map(|p| p.pos).collect()
}

fn require_radius(radius: Option<f64>, what: &str) -> Result<f64, RunError> {
    radius.ok_or_else(|| RunError::Usage(format!("--radius is required for {what}")))
}

/// Loads a region from a file: `.pgm` masks, anything else CSV points. With
/// `as_disks`, point files become unions of balls of the given radius.
fn load_region(
    path: &Path,
    ambient_hint: Option<BoundingBox>,
    as_disks: bool,
    radius: Option<f64>,
) -> Result<(Region, BoundingBox), RunError> {
    let is_pgm = path
        .extension()
        .map(|e| e.eq_ignore_ascii_case("pgm"))
        .unwrap_or(false);
    if is_pgm {
        let mask = parse_mask_pgm(path)?;
        let ambient = ambient_hint.unwrap_or_else(|| mask.bounds().pad(1.0));
        return Ok((Region::mask(ambient, mask)?, ambient));
    }
    let points = parse_points_csv(path)?;
    if points.is_empty() {
        return Err(RunError::Data("empty point set".to_string()));
    }
    let bbox = BoundingBox::of_points(&positions(&points)).map_err(cech_core::Error::from)?;
    if as_disks {
        let r = require_radius(radius, "--as-disks")?;
        let ambient = ambient_hint.unwrap_or_else(|| bbox.pad(r + 1.0));
        let disks: Vec<Disk> = points.iter().map(|p| Disk::new(p.pos, r)).collect();
        Ok((Region::disks(ambient, disks)?, ambient))
    } else {
        let ambient = ambient_hint.unwrap_or_else(|| bbox.pad(1.0));
        Ok((Region::points(ambient, points)?, ambient))
    }
}

fn run(cli: Cli) -> Result<ExitCode, RunError> {
    match cli.cmd {
        Cmd::Build {
            points,
            radius,
            max_dim,
            out,
        } => {
            let pts = parse_points_csv(&points)?;
            let centers = positions(&pts);
            let complex = build_cech_complex(&centers, radius, max_dim)?;
            let nerves = maximal_nerves(&complex, &centers, radius)?;
            let value = json!({
                "vertex_count": complex.vertex_count(),
                "radius": radius,
                "dimension_cap": complex.dimension_cap(),
                "simplices": complex.simplices().collect::<Vec<_>>(),
                "facets": nerves
                    .iter()
                    .map(|n| n.members().collect::<Vec<_>>())
                    .collect::<Vec<_>>(),
            });
            write_json(&out, &value)?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Cover {
            points,
            mask,
            radius,
            density,
            out,
        } => {
            let pts = parse_points_csv(&points)?;
            let centers = positions(&pts);
            let region = match mask {
                Some(mask_path) => {
                    let m = parse_mask_pgm(&mask_path)?;
                    let ambient = m.bounds().pad(radius + 1.0);
                    Region::mask(ambient, m)?
                }
                None => {
                    let bbox =
                        BoundingBox::of_points(&centers).map_err(cech_core::Error::from)?;
                    Region::points(bbox.pad(radius + 1.0), pts.clone())?
                }
            };
            let report = covering_check(&region, &centers, radius, density)?;
            write_json(&out, &serde_json::to_value(&report)?)?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Proximity {
            a,
            b,
            as_disks,
            radius,
            phi,
            tolerance,
            out,
        } => {
            // load both, then rebuild over the joint ambient box
            let (_, boxa) = load_region(&a, None, as_disks, radius)?;
            let (_, boxb) = load_region(&b, None, as_disks, radius)?;
            let joint = boxa.union(&boxb);
            let (ra, _) = load_region(&a, Some(joint), as_disks, radius)?;
            let (rb, _) = load_region(&b, Some(joint), as_disks, radius)?;
            let relator = ProximalRelator::new(tolerance, tolerance);
            let phi = phi.map(|name| FeatureMap::parse(&name)).transpose()?;
            let descriptive = phi
                .as_ref()
                .map(|phi| {
                    let dn = descriptively_near(&ra, &rb, phi, tolerance)
                        .map(Value::from)
                        .unwrap_or(Value::Null);
                    let sdn = strongly_descriptively_near(&ra, &rb, phi, tolerance)
                        .map(Value::from)
                        .unwrap_or(Value::Null);
                    (dn, sdn)
                })
                .unwrap_or((Value::Null, Value::Null));
            let value = json!({
                "near": near(&ra, &rb, &relator)?,
                "strongly_near": strongly_near(&ra, &rb)?,
                "gap_distance": ra.gap_distance(&rb),
                "descriptively_near": descriptive.0,
                "strongly_descriptively_near": descriptive.1,
            });
            write_json(&out, &value)?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Betti {
            mask,
            points,
            radius,
            max_dim,
            out,
        } => {
            let betti = match (mask, points) {
                (Some(mask_path), None) => grid_betti(&parse_mask_pgm(&mask_path)?)?,
                (None, Some(points_path)) => {
                    let r = require_radius(radius, "--points")?;
                    let pts = parse_points_csv(&points_path)?;
                    let complex = build_cech_complex(&positions(&pts), r, max_dim.max(2))?;
                    complex_betti(&complex)?
                }
                _ => {
                    return Err(RunError::Usage(
                        "pass exactly one of --mask or --points".to_string(),
                    ))
                }
            };
            write_json(&out, &serde_json::to_value(betti).map_err(RunError::from)?)?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::VerifyAxioms {
            system,
            universes,
            universe_size,
            trials,
            seed,
            tolerance,
            out,
        } => {
            let system: RelationSystem = system.parse()?;
            let flavor = match system {
                RelationSystem::Lodato | RelationSystem::Strong => UniverseFlavor::Spatial,
                RelationSystem::DescriptiveLodato => UniverseFlavor::DescriptivePoints,
                RelationSystem::DescriptiveStrong => UniverseFlavor::DescriptiveInteriors,
            };
            let phi = match system {
                RelationSystem::DescriptiveStrong => FeatureMap::Position,
                _ => FeatureMap::Intensity,
            };
            let ambient =
                BoundingBox::new(Point2::new(-6.0, -6.0), Point2::new(6.0, 6.0));
            let mut reports = Vec::new();
            let mut all_passed = true;
            for u in 0..universes.max(1) {
                let universe_seed = seed.wrapping_add(u as u64);
                let universe =
                    generate_universe(ambient, universe_seed, universe_size, flavor);
                let config = AxiomCheckConfig {
                    relator: ProximalRelator::new(tolerance, tolerance),
                    phi: phi.clone(),
                    interior_spacing: 0.25,
                    seed: universe_seed,
                };
                let report = verify_axioms(system, &universe, trials, &config)?;
                all_passed &= report.all_passed;
                reports.push(serde_json::to_value(&report)?);
            }
            let value = json!({
                "system": system.name(),
                "universes": universes.max(1),
                "trials": trials,
                "all_passed": all_passed,
                "reports": reports,
            });
            write_json(&out, &value)?;
            Ok(if all_passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(3)
            })
        }
        Cmd::NerveCheck {
            points,
            radius,
            resolution,
            phi,
            feature_radius,
            out,
        } => {
            if resolution < 64 {
                return Err(RunError::Usage(
                    "--resolution must be at least 64".to_string(),
                ));
            }
            let pts = parse_points_csv(&points)?;
            let report = match phi {
                Some(name) => {
                    let phi = FeatureMap::parse(&name)?;
                    let fr = feature_radius.ok_or_else(|| {
                        RunError::Usage("--feature-radius is required with --phi".to_string())
                    })?;
                    descriptive_nerve_theorem_check(&pts, &phi, fr, resolution)?
                }
                None => {
                    let r = require_radius(radius, "nerve-check")?;
                    nerve_theorem_check(&positions(&pts), r, resolution)?
                }
            };
            write_json(&out, &serde_json::to_value(&report)?)?;
            Ok(if report.agree {
                ExitCode::SUCCESS
            } else {
                eprintln!("check failure: complex and union Betti numbers disagree");
                ExitCode::from(3)
            })
        }
        Cmd::Approx {
            mask,
            radius,
            strategy,
            spacing,
            seed,
            out,
        } => {
            let strategy = match strategy.as_str() {
                "grid" => SamplingStrategy::Grid { spacing },
                "poisson" => SamplingStrategy::Poisson {
                    min_dist: spacing,
                    seed,
                },
                "boundary-interior" | "boundary" => {
                    SamplingStrategy::BoundaryInterior { spacing }
                }
                other => {
                    return Err(RunError::Usage(format!(
                        "unknown strategy `{other}` (grid | poisson | boundary-interior)"
                    )))
                }
            };
            let m = parse_mask_pgm(&mask)?;
            let report = approximate_shape(&m, &strategy, radius)?;
            write_json(&out, &serde_json::to_value(&report)?)?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Render {
            points,
            radius,
            max_dim,
            out,
        } => {
            let pts = parse_points_csv(&points)?;
            let centers = positions(&pts);
            let complex = build_cech_complex(&centers, radius, max_dim)?;
            let svg = render_svg(&complex, &centers, radius, &RenderOptions::default());
            write_atomic(&out, svg.as_bytes())?;
            Ok(ExitCode::SUCCESS)
        }
    }
}
