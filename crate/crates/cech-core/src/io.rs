//! Zero-dependency file formats: `x,y[,f1,...,fn]` CSV point lists and plain
//! (P2) PGM masks. Both parsers validate fully before constructing values,
//! so malformed or hostile input surfaces as errors, never panics.

use std::path::Path;

use crate::error::{Error, Result};
use crate::geom::{BoundingBox, GridMask, Point2, RegionPoint};

/// Parses CSV text with header `x,y[,f1,...,fn]`. Extra columns become the
/// per-point feature payload; row order is preserved.
pub fn parse_points_csv_str(text: &str) -> Result<Vec<RegionPoint>> {
    let mut lines = text.lines().enumerate();
    let Some((_, header)) = lines.next() else {
        return Err(Error::Parse {
            line: 1,
            msg: "missing header".to_string(),
        });
    };
    let header_fields: Vec<&str> = header.trim_end_matches('\r').split(',').collect();
    if header_fields.len() < 2
        || header_fields[0].trim() != "x"
        || header_fields[1].trim() != "y"
    {
        return Err(Error::Parse {
            line: 1,
            msg: "header must start with `x,y`".to_string(),
        });
    }
    let columns = header_fields.len();

    let mut points = Vec::new();
    for (idx, raw) in lines {
        let line_no = idx + 1;
        let line = raw.trim_end_matches('\r');
        if line.is_empty() {
            // blank lines are only tolerated at the very end
            if text
                .lines()
                .skip(line_no)
                .any(|l| !l.trim_end_matches('\r').is_empty())
            {
                return Err(Error::Parse {
                    line: line_no,
                    msg: "blank line".to_string(),
                });
            }
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != columns {
            return Err(Error::Parse {
                line: line_no,
                msg: format!("expected {columns} columns, found {}", fields.len()),
            });
        }
        let mut values = Vec::with_capacity(columns);
        for field in &fields {
            let v: f64 = field.trim().parse().map_err(|_| Error::Parse {
                line: line_no,
                msg: format!("invalid number `{}`", field.trim()),
            })?;
            if !v.is_finite() {
                return Err(Error::Parse {
                    line: line_no,
                    msg: "non-finite value".to_string(),
                });
            }
            values.push(v);
        }
        points.push(RegionPoint::new(
            Point2::new(values[0], values[1]),
            values[2..].to_vec(),
        ));
    }
    Ok(points)
}

pub fn parse_points_csv(path: &Path) -> Result<Vec<RegionPoint>> {
    parse_points_csv_str(&std::fs::read_to_string(path)?)
}

/// Serializes points back to CSV with shortest round-trip float formatting.
pub fn points_to_csv(points: &[RegionPoint]) -> String {
    let payload_len = points.first().map_or(0, |p| p.payload.len());
    let mut out = String::from("x,y");
    for k in 0..payload_len {
        out.push_str(&format!(",f{}", k + 1));
    }
    out.push('\n');
    for p in points {
        out.push_str(&format!("{},{}", p.pos.x, p.pos.y));
        for v in &p.payload {
            out.push_str(&format!(",{v}"));
        }
        out.push('\n');
    }
    out
}

/// Parses a plain-text (P2) portable graymap into a mask: a cell is occupied
/// when its pixel value exceeds half the maximum value. The box defaults to
/// `[0,width] x [0,height]` with row 0 of the image at the top.
pub fn parse_mask_pgm_str(text: &str) -> Result<GridMask> {
    let mut tokens = PgmTokens::new(text);
    let magic = tokens
        .next_token()
        .ok_or_else(|| Error::Pgm("unexpected end of file".to_string()))?;
    if magic != "P2" {
        return Err(Error::Pgm(format!("bad magic `{magic}`, expected P2")));
    }
    let width = tokens.next_usize("width")?;
    let height = tokens.next_usize("height")?;
    if width == 0 || height == 0 {
        return Err(Error::Pgm("dimensions must be positive".to_string()));
    }
    if width.saturating_mul(height) > 64_000_000 {
        return Err(Error::Pgm("image too large".to_string()));
    }
    let maxval = tokens.next_usize("maxval")?;
    if maxval < 1 {
        return Err(Error::Pgm("maxval must be at least 1".to_string()));
    }
    let mut pixels = Vec::with_capacity(width * height);
    for _ in 0..width * height {
        let v = tokens.next_usize("pixel")?;
        if v > maxval {
            return Err(Error::Pgm(format!("pixel value {v} exceeds maxval {maxval}")));
        }
        pixels.push(v);
    }
    if tokens.next_token().is_some() {
        return Err(Error::Pgm("trailing data after pixel raster".to_string()));
    }

    let bounds = BoundingBox::new(
        Point2::new(0.0, 0.0),
        Point2::new(width as f64, height as f64),
    );
    let mut mask = GridMask::filled(width, height, bounds, false)
        .map_err(|_| Error::Pgm("bad dimensions".to_string()))?;
    for (k, &v) in pixels.iter().enumerate() {
        let i = k % width;
        let image_row = k / width;
        // image rows run top to bottom; grid rows bottom to top
        let j = height - 1 - image_row;
        mask.set(i, j, 2 * v > maxval);
    }
    Ok(mask)
}

pub fn parse_mask_pgm(path: &Path) -> Result<GridMask> {
    parse_mask_pgm_str(&std::fs::read_to_string(path)?)
}

/// Writes a mask out as plain PGM (occupied cells white).
pub fn mask_to_pgm(mask: &GridMask) -> String {
    let mut out = format!("P2\n{} {}\n255\n", mask.width(), mask.height());
    for image_row in 0..mask.height() {
        let j = mask.height() - 1 - image_row;
        let row: Vec<&str> = (0..mask.width())
            .map(|i| if mask.get(i, j) { "255" } else { "0" })
            .collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

struct PgmTokens<'a> {
    rest: &'a str,
}

impl<'a> PgmTokens<'a> {
    fn new(text: &'a str) -> Self {
        PgmTokens { rest: text }
    }

    /// Next whitespace-delimited token, skipping `#` comments to end of line.
    fn next_token(&mut self) -> Option<&'a str> {
        loop {
            self.rest = self
                .rest
                .trim_start_matches(|c: char| c.is_ascii_whitespace());
            if let Some(after_hash) = self.rest.strip_prefix('#') {
                let end = after_hash.find('\n').map(|n| n + 1).unwrap_or(after_hash.len());
                self.rest = &after_hash[end..];
                continue;
            }
            if self.rest.is_empty() {
                return None;
            }
            let end = self
                .rest
                .find(|c: char| c.is_ascii_whitespace() || c == '#')
                .unwrap_or(self.rest.len());
            let (tok, rest) = self.rest.split_at(end);
            self.rest = rest;
            return Some(tok);
        }
    }

    fn next_usize(&mut self, what: &str) -> Result<usize> {
        let tok = self
            .next_token()
            .ok_or_else(|| Error::Pgm("unexpected end of file".to_string()))?;
        tok.parse()
            .map_err(|_| Error::Pgm(format!("invalid {what} `{tok}`")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_bare_points() {
        let pts = parse_points_csv_str("x,y\n0,0\n1,0\n").unwrap();
        assert_eq!(pts.len(), 2);
        assert_eq!(pts[1].pos, Point2::new(1.0, 0.0));
        assert!(pts[0].payload.is_empty());
    }

    #[test]
    fn csv_feature_column() {
        let pts = parse_points_csv_str("x,y,f1\n0,0,0.5\n").unwrap();
        assert_eq!(pts.len(), 1);
        assert_eq!(pts[0].payload, vec![0.5]);
    }

    #[test]
    fn csv_malformed_number_reports_line() {
        match parse_points_csv_str("x,y\n0,abc\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn csv_inconsistent_columns_rejected() {
        assert!(matches!(
            parse_points_csv_str("x,y,f1\n0,0\n"),
            Err(Error::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn csv_bad_header_rejected() {
        assert!(matches!(
            parse_points_csv_str("a,b\n0,0\n"),
            Err(Error::Parse { line: 1, .. })
        ));
    }

    #[test]
    fn csv_rejects_non_finite() {
        assert!(matches!(
            parse_points_csv_str("x,y\nNaN,0\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_points_csv_str("x,y\ninf,0\n"),
            Err(Error::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn csv_roundtrip_exact() {
        let pts = vec![
            RegionPoint::new(Point2::new(0.1234567890123, -7.5), vec![0.25]),
            RegionPoint::new(Point2::new(1e-9, 2.0 / 3.0), vec![1.5]),
        ];
        let text = points_to_csv(&pts);
        let back = parse_points_csv_str(&text).unwrap();
        assert_eq!(pts, back);
    }

    #[test]
    fn pgm_checkerboard() {
        let mask = parse_mask_pgm_str("P2\n2 2\n255\n0 255\n255 0\n").unwrap();
        // image row 0 is the top, grid row 1
        assert!(!mask.get(0, 1));
        assert!(mask.get(1, 1));
        assert!(mask.get(0, 0));
        assert!(!mask.get(1, 0));
        assert_eq!(mask.true_count(), 2);
    }

    #[test]
    fn pgm_all_zero_is_empty_mask() {
        let mask = parse_mask_pgm_str("P2\n2 2\n255\n0 0 0 0\n").unwrap();
        assert!(mask.is_empty());
    }

    #[test]
    fn pgm_truncated_pixels() {
        match parse_mask_pgm_str("P2\n2 2\n255\n0 0 0\n") {
            Err(Error::Pgm(msg)) => assert!(msg.contains("unexpected end of file")),
            other => panic!("expected pgm error, got {other:?}"),
        }
    }

    #[test]
    fn pgm_bad_magic() {
        assert!(matches!(
            parse_mask_pgm_str("P5\n2 2\n255\n0 0 0 0\n"),
            Err(Error::Pgm(_))
        ));
    }

    #[test]
    fn pgm_comments_and_threshold() {
        let text = "P2 # plain graymap\n# a comment line\n3 1\n9\n4 5 9\n";
        let mask = parse_mask_pgm_str(text).unwrap();
        assert!(!mask.get(0, 0)); // 4*2 <= 9
        assert!(mask.get(1, 0)); // 5*2 > 9
        assert!(mask.get(2, 0));
    }

    #[test]
    fn pgm_value_above_maxval_rejected() {
        assert!(matches!(
            parse_mask_pgm_str("P2\n1 1\n10\n11\n"),
            Err(Error::Pgm(_))
        ));
    }

    #[test]
    fn pgm_roundtrip() {
        let text = "P2\n3 2\n255\n255 0 255\n0 255 0\n";
        let mask = parse_mask_pgm_str(text).unwrap();
        let back = parse_mask_pgm_str(&mask_to_pgm(&mask)).unwrap();
        assert_eq!(mask, back);
    }
}
