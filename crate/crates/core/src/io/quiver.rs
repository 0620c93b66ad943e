use std::fmt::Write as _;
use std::io::Write;

use super::table::FieldTable;
use crate::error::{Error, Result};

const CANVAS: f64 = 800.0;
const MARGIN: f64 = 20.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuiverOptions {
    /// Draw every `stride`-th node along each axis.
    pub stride: usize,
    /// Draw arrows along −(jx, jy). Used to show carrier flow j/e for a
    /// negative charge.
    pub reverse: bool,
}

impl QuiverOptions {
    pub fn new(stride: usize) -> Self {
        QuiverOptions {
            stride,
            reverse: false,
        }
    }
}

/// One drawn arrow, in data coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Arrow {
    pub node: (usize, usize),
    pub x: f64,
    pub y: f64,
    pub dx: f64,
    pub dy: f64,
}

/// Arrows for the nodes selected by `opts`; zero vectors are dropped and
/// lengths are normalized so the longest shown arrow spans 0.9 strides.
pub fn quiver_arrows(table: &FieldTable, opts: &QuiverOptions) -> Result<Vec<Arrow>> {
    let (nx, ny) = table.shape_2d()?;
    if opts.stride == 0 || opts.stride > nx || opts.stride > ny {
        return Err(Error::StrideTooLarge {
            stride: opts.stride,
            nx,
            ny,
        });
    }
    let xs = table.column("x")?;
    let ys = table.column("y")?;
    let jx = table.column("jx")?;
    let jy = table.column("jy")?;
    let sign = if opts.reverse { -1.0 } else { 1.0 };

    let mut picked = Vec::new();
    for j in (0..ny).step_by(opts.stride) {
        for i in (0..nx).step_by(opts.stride) {
            let n = i + nx * j;
            let (vx, vy) = (sign * jx[n], sign * jy[n]);
            let mag = vx.hypot(vy);
            if mag > 0.0 && mag.is_finite() {
                picked.push((i, j, xs[n], ys[n], vx, vy, mag));
            }
        }
    }
    let max = picked.iter().fold(0.0f64, |a, p| a.max(p.6));
    let cell_x = (xs[nx - 1] - xs[0]) / (nx - 1).max(1) as f64 * opts.stride as f64;
    let cell_y = (ys[nx * (ny - 1)] - ys[0]) / (ny - 1).max(1) as f64 * opts.stride as f64;
    let cell = cell_x.abs().min(cell_y.abs());
    Ok(picked
        .into_iter()
        .map(|(i, j, x, y, vx, vy, _)| {
            let s = 0.9 * cell / max;
            Arrow {
                node: (i, j),
                x,
                y,
                dx: vx * s,
                dy: vy * s,
            }
        })
        .collect())
}

/// Standalone SVG 1.1 quiver plot of (jx, jy).
pub fn write_quiver_svg(
    table: &FieldTable,
    mut out: impl Write,
    opts: &QuiverOptions,
) -> Result<usize> {
    let arrows = quiver_arrows(table, opts)?;
    let xs = table.column("x")?;
    let ys = table.column("y")?;
    let (x0, x1) = bounds(&xs);
    let (y0, y1) = bounds(&ys);
    let span = (x1 - x0).max(y1 - y0);
    let scale = if span > 0.0 {
        (CANVAS - 2.0 * MARGIN) / span
    } else {
        1.0
    };
    let px = |x: f64| MARGIN + (x - x0) * scale;
    let py = |y: f64| CANVAS - MARGIN - (y - y0) * scale;

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<?xml version="1.0" encoding="UTF-8" standalone="no"?>"#
    );
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{c}" height="{c}" viewBox="0 0 {c} {c}">"#,
        c = CANVAS
    );
    let _ = writeln!(
        svg,
        r#"<rect x="{m}" y="{m}" width="{w:.3}" height="{h:.3}" fill="none" stroke="black" stroke-width="1"/>"#,
        m = MARGIN,
        w = (x1 - x0) * scale,
        h = (y1 - y0) * scale
    );
    let _ = writeln!(svg, r#"<g stroke="black" fill="black" stroke-width="0.8">"#);
    for a in &arrows {
        let (sx, sy) = (px(a.x), py(a.y));
        let (ex, ey) = (px(a.x + a.dx), py(a.y + a.dy));
        let (ux, uy) = (ex - sx, ey - sy);
        let len = ux.hypot(uy);
        let _ = write!(
            svg,
            r#"<line data-node="{},{}" x1="{sx:.4}" y1="{sy:.4}" x2="{ex:.4}" y2="{ey:.4}"/>"#,
            a.node.0, a.node.1
        );
        if len > 0.0 {
            let head = (0.3 * len).min(6.0);
            let (dx, dy) = (ux / len, uy / len);
            let bx = ex - head * dx;
            let by = ey - head * dy;
            let w = 0.4 * head;
            let _ = write!(
                svg,
                r#"<polygon points="{ex:.4},{ey:.4} {:.4},{:.4} {:.4},{:.4}"/>"#,
                bx - w * dy,
                by + w * dx,
                bx + w * dy,
                by - w * dx
            );
        }
        svg.push('\n');
    }
    svg.push_str("</g>\n</svg>\n");
    out.write_all(svg.as_bytes())?;
    out.flush()?;
    Ok(arrows.len())
}

fn bounds(v: &[f64]) -> (f64, f64) {
    v.iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &x| {
            (lo.min(x), hi.max(x))
        })
}

/// Arrow start/end points (SVG coordinates) parsed back from an emitted file.
pub fn parse_svg_arrows(svg: &str) -> Vec<((usize, usize), [f64; 4])> {
    let attr = |s: &str, name: &str| -> Option<String> {
        let key = format!("{name}=\"");
        let start = s.find(&key)? + key.len();
        let end = s[start..].find('"')? + start;
        Some(s[start..end].to_owned())
    };
    svg.split("<line ")
        .skip(1)
        .filter_map(|chunk| {
            let node = attr(chunk, "data-node")?;
            let (i, j) = node.split_once(',')?;
            let coords: Option<Vec<f64>> = ["x1", "y1", "x2", "y2"]
                .iter()
                .map(|k| attr(chunk, k)?.parse().ok())
                .collect();
            let c = coords?;
            Some(((i.parse().ok()?, j.parse().ok()?), [c[0], c[1], c[2], c[3]]))
        })
        .collect()
}
