//! Columnar text, JSON manifests, PPM heatmaps and SVG quiver plots.

pub mod heatmap;
pub mod manifest;
pub mod quiver;
pub mod table;

use std::fs::File;
use std::io::BufWriter;
use std::path::Path;

pub use heatmap::{luminance, ramp_color, write_heatmap, HeatmapScale, Ppm};
pub use manifest::{
    read_manifest, write_manifest, ObservablesManifest, Provenance, Reference, Scalar,
};
pub use quiver::{parse_svg_arrows, quiver_arrows, write_quiver_svg, Arrow, QuiverOptions};
pub use table::{read_field_csv, write_field_csv, Column, FieldTable};

use crate::error::Result;

pub fn write_field_csv_file(table: &FieldTable, path: &Path) -> Result<()> {
    write_field_csv(table, BufWriter::new(File::create(path)?))
}

/// Writes `path` and the scaling record `path` + `.txt`.
pub fn write_heatmap_file(table: &FieldTable, column: &str, path: &Path) -> Result<HeatmapScale> {
    let scale = write_heatmap(table, column, BufWriter::new(File::create(path)?))?;
    let mut companion = path.as_os_str().to_owned();
    companion.push(".txt");
    std::fs::write(companion, scale.to_text())?;
    Ok(scale)
}

pub fn write_quiver_svg_file(
    table: &FieldTable,
    path: &Path,
    opts: &QuiverOptions,
) -> Result<usize> {
    write_quiver_svg(table, BufWriter::new(File::create(path)?), opts)
}

pub fn write_manifest_file(manifest: &ObservablesManifest, path: &Path) -> Result<()> {
    write_manifest(manifest, BufWriter::new(File::create(path)?))
}
