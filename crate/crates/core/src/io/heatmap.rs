use std::io::Write;

use serde::{Deserialize, Serialize};

use super::table::{format_f64, FieldTable};
use crate::error::{Error, Result};

/// Inferno-like control points; luminance rises monotonically.
const RAMP: [(f64, [f64; 3]); 9] = [
    (0.000, [0.0, 0.0, 4.0]),
    (0.125, [31.0, 12.0, 72.0]),
    (0.250, [85.0, 15.0, 109.0]),
    (0.375, [136.0, 34.0, 106.0]),
    (0.500, [186.0, 54.0, 85.0]),
    (0.625, [227.0, 89.0, 51.0]),
    (0.750, [249.0, 140.0, 10.0]),
    (0.875, [249.0, 201.0, 50.0]),
    (1.000, [252.0, 255.0, 164.0]),
];

/// Maps s ∈ [0, 1] onto the ramp.
pub fn ramp_color(s: f64) -> [u8; 3] {
    let s = if s.is_nan() { 0.0 } else { s.clamp(0.0, 1.0) };
    let seg = RAMP
        .windows(2)
        .find(|w| s <= w[1].0)
        .unwrap_or(&RAMP[RAMP.len() - 2..]);
    let (s0, c0) = seg[0];
    let (s1, c1) = seg[1];
    let f = (s - s0) / (s1 - s0);
    std::array::from_fn(|k| (c0[k] + f * (c1[k] - c0[k])).round() as u8)
}

/// Relative luminance (Rec. 709 weights) of an 8-bit colour.
pub fn luminance(rgb: [u8; 3]) -> f64 {
    0.2126 * rgb[0] as f64 + 0.7152 * rgb[1] as f64 + 0.0722 * rgb[2] as f64
}

/// The linear scaling used for one heatmap.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HeatmapScale {
    pub column: String,
    pub unit: String,
    pub min: f64,
    pub max: f64,
}

impl HeatmapScale {
    /// Companion text recorded next to the image.
    pub fn to_text(&self) -> String {
        format!(
            "column {}\nunit {}\nmin {}\nmax {}\nramp inferno-9\n",
            self.column,
            self.unit,
            format_f64(self.min),
            format_f64(self.max)
        )
    }
}

/// Binary PPM (P6, maxval 255), one pixel per node, top row = largest y.
/// Non-finite values are drawn with the minimum colour and excluded from
/// the min/max.
pub fn write_heatmap(
    table: &FieldTable,
    column: &str,
    mut out: impl Write,
) -> Result<HeatmapScale> {
    let (nx, ny) = table.shape_2d()?;
    let values = table.column(column)?;
    let unit = table.unit(column)?.to_owned();
    let (min, max) = values
        .iter()
        .filter(|v| v.is_finite())
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
            (lo.min(v), hi.max(v))
        });
    let (min, max) = if min.is_finite() {
        (min, max)
    } else {
        (0.0, 0.0)
    };
    let span = max - min;

    write!(out, "P6\n{nx} {ny}\n255\n")?;
    let mut pixels = Vec::with_capacity(nx * ny * 3);
    for row in (0..ny).rev() {
        for col in 0..nx {
            let v = values[col + nx * row];
            let s = if span > 0.0 && v.is_finite() {
                (v - min) / span
            } else {
                0.0
            };
            pixels.extend_from_slice(&ramp_color(s));
        }
    }
    out.write_all(&pixels)?;
    out.flush()?;
    Ok(HeatmapScale {
        column: column.to_owned(),
        unit,
        min,
        max,
    })
}

/// Decoded P6 image, for checks on emitted files.
#[derive(Debug, Clone, PartialEq)]
pub struct Ppm {
    pub width: usize,
    pub height: usize,
    pub pixels: Vec<[u8; 3]>,
}

impl Ppm {
    pub fn parse(bytes: &[u8]) -> Result<Ppm> {
        let bad = || Error::InvalidTable("malformed PPM".into());
        let mut fields = Vec::new();
        let mut pos = 0;
        while fields.len() < 4 {
            while pos < bytes.len() && bytes[pos].is_ascii_whitespace() {
                pos += 1;
            }
            let start = pos;
            while pos < bytes.len() && !bytes[pos].is_ascii_whitespace() {
                pos += 1;
            }
            if start == pos {
                return Err(bad());
            }
            fields.push(
                std::str::from_utf8(&bytes[start..pos])
                    .map_err(|_| bad())?
                    .to_owned(),
            );
        }
        pos += 1;
        if fields[0] != "P6" || fields[3] != "255" {
            return Err(bad());
        }
        let width: usize = fields[1].parse().map_err(|_| bad())?;
        let height: usize = fields[2].parse().map_err(|_| bad())?;
        let data = bytes.get(pos..).ok_or_else(bad)?;
        if data.len() != width * height * 3 {
            return Err(bad());
        }
        Ok(Ppm {
            width,
            height,
            pixels: data.chunks(3).map(|c| [c[0], c[1], c[2]]).collect(),
        })
    }

    pub fn pixel(&self, col: usize, row: usize) -> [u8; 3] {
        self.pixels[col + self.width * row]
    }
}
