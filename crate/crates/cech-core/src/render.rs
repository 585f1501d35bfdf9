//! SVG rendering of a complex over its ball configuration: one translucent
//! circle per ball, a line per 1-simplex, a filled polygon per 2-simplex.
//! Output is deterministic for fixed input.

use std::fmt::Write;

use crate::complex::SimplicialComplex;
use crate::geom::{BoundingBox, Point2};

#[derive(Debug, Clone)]
pub struct RenderOptions {
    pub width_px: f64,
    pub disk_fill: String,
    pub disk_opacity: f64,
    pub triangle_fill: String,
    pub triangle_opacity: f64,
    pub edge_stroke: String,
    pub draw_centers: bool,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions {
            width_px: 640.0,
            disk_fill: "#4f81bd".to_string(),
            disk_opacity: 0.25,
            triangle_fill: "#d9822b".to_string(),
            triangle_opacity: 0.35,
            edge_stroke: "#1a1a1a".to_string(),
            draw_centers: true,
        }
    }
}

fn fmt(v: f64) -> String {
    format!("{v:.3}")
}

/// Renders the complex to a standalone SVG document.
pub fn render_svg(
    complex: &SimplicialComplex,
    centers: &[Point2],
    r: f64,
    options: &RenderOptions,
) -> String {
    assert_eq!(
        complex.vertex_count(),
        centers.len(),
        "complex must be built over the given centers"
    );
    let world = BoundingBox::of_points(centers)
        .expect("nonempty centers")
        .pad(r * 1.1);
    let scale = options.width_px / world.width();
    let height_px = world.height() * scale;
    let map = |p: Point2| -> (f64, f64) {
        ((p.x - world.min.x) * scale, (world.max.y - p.y) * scale)
    };

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{}" height="{}" viewBox="0 0 {} {}">"#,
        fmt(options.width_px),
        fmt(height_px),
        fmt(options.width_px),
        fmt(height_px),
    );

    for &c in centers {
        let (cx, cy) = map(c);
        let _ = writeln!(
            svg,
            r#"<circle cx="{}" cy="{}" r="{}" fill="{}" fill-opacity="{}" stroke="{}" stroke-width="1"/>"#,
            fmt(cx),
            fmt(cy),
            fmt(r * scale),
            options.disk_fill,
            options.disk_opacity,
            options.disk_fill,
        );
    }

    for simplex in complex.simplices() {
        if simplex.len() != 3 {
            continue;
        }
        let pts: Vec<String> = simplex
            .iter()
            .map(|&v| {
                let (x, y) = map(centers[v]);
                format!("{},{}", fmt(x), fmt(y))
            })
            .collect();
        let _ = writeln!(
            svg,
            r#"<polygon points="{}" fill="{}" fill-opacity="{}"/>"#,
            pts.join(" "),
            options.triangle_fill,
            options.triangle_opacity,
        );
    }

    for simplex in complex.simplices() {
        if simplex.len() != 2 {
            continue;
        }
        let (x1, y1) = map(centers[simplex[0]]);
        let (x2, y2) = map(centers[simplex[1]]);
        let _ = writeln!(
            svg,
            r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="{}" stroke-width="1.5"/>"#,
            fmt(x1),
            fmt(y1),
            fmt(x2),
            fmt(y2),
            options.edge_stroke,
        );
    }

    if options.draw_centers {
        for &c in centers {
            let (cx, cy) = map(c);
            let _ = writeln!(
                svg,
                r#"<circle cx="{}" cy="{}" r="2.5" fill="{}"/>"#,
                fmt(cx),
                fmt(cy),
                options.edge_stroke,
            );
        }
    }

    svg.push_str("</svg>\n");
    svg
}
