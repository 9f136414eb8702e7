//! Snapshot, diagnostics, and SVG emitters.
//!
//! CSV floats carry 17 significant digits so binary64 values survive a
//! round trip exactly; identical runs therefore produce byte-identical
//! files.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::evolution::DiagnosticsRecord;
use crate::geometry::{PolygonalCurve, Vec2};

fn write_file(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

/// 17 significant digits, enough to reconstruct the exact f64.
#[inline]
fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

/// CSV with header `index,x,y`, one row per vertex (1-based index).
pub fn write_snapshot(curve: &PolygonalCurve, path: &Path) -> Result<()> {
    let mut out = String::with_capacity(48 * curve.len() + 16);
    out.push_str("index,x,y\n");
    for (i, v) in curve.vertices().iter().enumerate() {
        let _ = writeln!(out, "{},{},{}", i + 1, fmt_f64(v.x), fmt_f64(v.y));
    }
    write_file(path, &out)
}

/// Reads a snapshot CSV back into a curve; exact inverse of
/// [`write_snapshot`].
pub fn read_snapshot(path: &Path) -> Result<PolygonalCurve> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })?;
    let mut verts = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        if lineno == 0 {
            if line != "index,x,y" {
                return Err(Error::Parse(format!("unexpected snapshot header: {line}")));
            }
            continue;
        }
        let mut fields = line.split(',');
        let bad = || Error::Parse(format!("snapshot line {}: {line}", lineno + 1));
        let _index = fields.next().ok_or_else(bad)?;
        let x: f64 = fields.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
        let y: f64 = fields.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
        verts.push(Vec2::new(x, y));
    }
    PolygonalCurve::new(verts)
}

/// CSV with header `t,L,A,V,max_edge_dev,constraint_residual,M_in`.
pub fn write_diagnostics(records: &[DiagnosticsRecord], path: &Path) -> Result<()> {
    let mut out = String::with_capacity(128 * records.len() + 64);
    out.push_str("t,L,A,V,max_edge_dev,constraint_residual,M_in\n");
    for r in records {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{}",
            fmt_f64(r.t),
            fmt_f64(r.perimeter),
            fmt_f64(r.area),
            fmt_f64(r.volume),
            fmt_f64(r.max_edge_dev),
            fmt_f64(r.constraint_residual),
            r.m_in
        );
    }
    write_file(path, &out)
}

/// Static rendering: the closed curve as a stroked polygon in the fixed
/// viewBox [-2, 2]^2, y up.
pub fn render_svg(curve: &PolygonalCurve, path: &Path) -> Result<()> {
    let mut points = String::with_capacity(16 * curve.len());
    for v in curve.vertices() {
        let _ = write!(points, "{:.6},{:.6} ", v.x, -v.y);
    }
    let svg = format!(
        concat!(
            "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n",
            "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"-2 -2 4 4\">\n",
            "  <polygon points=\"{}\" fill=\"none\" stroke=\"black\" stroke-width=\"0.008\"/>\n",
            "</svg>\n"
        ),
        points.trim_end()
    );
    write_file(path, &svg)
}
