//! Field tables sampled from the solution families.

use rayon::prelude::*;

use crate::error::Result;
use crate::io::{Column, FieldTable};
use crate::numerics::GridSpec;
use crate::packet::PacketState;
use crate::well::WellState;

/// ρ, ρ/max ρ, j, |j| and v on a vertex grid spanning the well.
/// v is NaN where ρ vanishes (the corners).
pub fn well_table(state: &WellState, nodes: usize) -> Result<FieldTable> {
    let l = state.half_width();
    let grid = GridSpec::square(-l, l, nodes);
    grid.validate()?;
    let rows: Vec<Vec<f64>> = grid
        .points()
        .par_iter()
        .map(|&[x, y, _]| {
            let fc = state.four_current(x, y);
            let jmag = state.current_magnitude(x, y);
            let v = state.velocity(x, y).unwrap_or(f64::NAN);
            vec![x, y, fc.rho, 0.0, fc.jx, fc.jy, fc.jz, jmag, v]
        })
        .collect();
    let columns = vec![
        Column::new("x", "m"),
        Column::new("y", "m"),
        Column::new("rho", "C/m^2"),
        Column::new("rho_rel", "1"),
        Column::new("jx", "A/m"),
        Column::new("jy", "A/m"),
        Column::new("jz", "A/m"),
        Column::new("jmag", "A/m"),
        Column::new("v", "m/s"),
    ];
    FieldTable::new(vec![nodes, nodes], columns, with_relative_density(rows))
}

/// z = 0 slice of the packet at time `t` over |x|, |y| ≤ `half_extent`.
pub fn packet_table(
    state: &PacketState,
    t: f64,
    nodes: usize,
    half_extent: f64,
) -> Result<FieldTable> {
    let grid = GridSpec::square(-half_extent, half_extent, nodes);
    grid.validate()?;
    let rows: Vec<Vec<f64>> = grid
        .points()
        .par_iter()
        .map(|&p| {
            let fc = state.four_current(p, t);
            let jmag = fc.j_norm();
            let v = if fc.rho != 0.0 {
                jmag / fc.rho.abs()
            } else {
                f64::NAN
            };
            vec![p[0], p[1], fc.rho, 0.0, fc.jx, fc.jy, fc.jz, jmag, v]
        })
        .collect();
    let columns = vec![
        Column::new("x", "m"),
        Column::new("y", "m"),
        Column::new("rho", "C/m^3"),
        Column::new("rho_rel", "1"),
        Column::new("jx", "A/m^2"),
        Column::new("jy", "A/m^2"),
        Column::new("jz", "A/m^2"),
        Column::new("jmag", "A/m^2"),
        Column::new("v", "m/s"),
    ];
    FieldTable::new(vec![nodes, nodes], columns, with_relative_density(rows))
}

/// Fills column 3 with ρ / ρ at its largest magnitude.
fn with_relative_density(mut rows: Vec<Vec<f64>>) -> Vec<Vec<f64>> {
    let peak = rows
        .iter()
        .fold(0.0f64, |a, r| if r[2].abs() > a.abs() { r[2] } else { a });
    for r in &mut rows {
        r[3] = if peak != 0.0 { r[2] / peak } else { 0.0 };
    }
    rows
}
