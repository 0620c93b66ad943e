//! Verification suites for the two solution families.
//!
//! Each suite runs a list of independent checks and records the measured
//! value, the tolerance it was held to and whether it passed. Sample points
//! are supplied by the caller so runs can be seeded and reproduced.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::numerics::{
    continuity_residual, convergence_order, convergence_order_from, dirac_residual,
    gordon_decompose, GaussLegendre, GridSpec, ResidualReport,
};
use crate::packet::PacketState;
use crate::well::WellState;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub tolerance: f64,
    pub passed: bool,
    pub detail: Value,
}

impl Check {
    fn at_most(name: &str, value: f64, tolerance: f64, detail: Value) -> Self {
        Check {
            name: name.to_owned(),
            value,
            tolerance,
            passed: value.is_finite() && value <= tolerance,
            detail,
        }
    }

    /// Passes when |value − target| ≤ tolerance.
    fn near(name: &str, value: f64, target: f64, tolerance: f64, detail: Value) -> Self {
        Check {
            name: name.to_owned(),
            value,
            tolerance,
            passed: (value - target).abs() <= tolerance,
            detail,
        }
    }

    fn flag(name: &str, ok: bool, detail: Value) -> Self {
        Check {
            name: name.to_owned(),
            value: if ok { 1.0 } else { 0.0 },
            tolerance: 1.0,
            passed: ok,
            detail,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub target: String,
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }

    /// Checks keyed by name, for a manifest.
    pub fn to_map(&self) -> BTreeMap<String, Value> {
        self.checks
            .iter()
            .map(|c| {
                (
                    c.name.clone(),
                    json!({
                        "value": c.value,
                        "tolerance": c.tolerance,
                        "passed": c.passed,
                        "detail": c.detail,
                    }),
                )
            })
            .collect()
    }
}

/// Target order for every finite-difference sweep and the allowed band.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OrderTolerance {
    pub expected: f64,
    pub band: f64,
}

impl Default for OrderTolerance {
    fn default() -> Self {
        OrderTolerance {
            expected: 2.0,
            band: 0.2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WellTolerances {
    pub order: OrderTolerance,
    pub eigen: f64,
    pub normalization: f64,
    pub spin_squared: f64,
    pub spin_z: f64,
    pub spin_deficit: f64,
    pub divergence: f64,
    pub velocity: f64,
    pub polarization: f64,
    /// Largest relative Gordon discrepancy at the finest step.
    pub gordon: f64,
}

impl Default for WellTolerances {
    fn default() -> Self {
        WellTolerances {
            order: OrderTolerance::default(),
            eigen: 1e-12,
            normalization: 1e-12,
            spin_squared: 1e-10,
            spin_z: 1e-12,
            spin_deficit: 1e-2,
            divergence: 1e-10,
            velocity: 1e-10,
            polarization: 1e-12,
            gordon: 1e-4,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct WellVerifyOptions {
    /// Nodes per axis for the Dirac and continuity sweeps.
    pub grids: Vec<usize>,
    /// Interior points for the Gordon decomposition.
    pub gordon_points: Vec<[f64; 3]>,
    /// Coarsest Gordon step; halved twice.
    pub gordon_step: f64,
    /// Interior points for the analytic divergence and velocity spot checks.
    pub spot_points: Vec<[f64; 3]>,
    /// Nodes per axis of the grid scanned for the velocity bound.
    pub velocity_nodes: usize,
    pub quadrature_order: usize,
    pub tolerances: WellTolerances,
}

impl WellVerifyOptions {
    pub fn new(
        state: &WellState,
        gordon_points: Vec<[f64; 3]>,
        spot_points: Vec<[f64; 3]>,
    ) -> Self {
        WellVerifyOptions {
            grids: vec![65, 129, 257],
            gordon_points,
            gordon_step: state.half_width() / 100.0,
            spot_points,
            velocity_nodes: 1001,
            quadrature_order: crate::well::SPIN_QUADRATURE_ORDER,
            tolerances: WellTolerances::default(),
        }
    }
}

fn order_check(name: &str, reports: &[ResidualReport], tol: &OrderTolerance) -> Result<Check> {
    let fit = convergence_order(reports)?;
    let detail = json!({
        "monotone": fit.monotone,
        "sweep": reports.iter().map(|r| json!({
            "h": r.h,
            "l2": r.l2,
            "linf": r.linf,
            "relative_l2": r.relative_l2(),
            "interior_points": r.interior_points,
        })).collect::<Vec<_>>(),
    });
    let mut c = Check::near(name, fit.order, tol.expected, tol.band, detail);
    c.passed &= fit.monotone;
    Ok(c)
}

/// Largest imaginary part of an assembled Gordon term, relative to its scale.
pub const GORDON_IMAGINARY_TOLERANCE: f64 = 1e-10;

/// Gordon sum against the direct current at `points`, for steps h, h/2, h/4.
/// Returns the order check, the finest relative discrepancy, the largest
/// imaginary residue of the assembled terms and the largest polarization,
/// the last two relative to the term scale.
fn gordon_checks(
    field: &impl crate::numerics::SpinorField,
    k: &crate::PhysicalConstants,
    points: &[[f64; 3]],
    t: f64,
    step: f64,
    order_tol: &OrderTolerance,
    finest_tol: f64,
) -> Result<(Check, Check, Check, f64)> {
    if points.len() < 16 {
        return Err(Error::InvalidParameter {
            name: "gordon points",
            value: points.len() as f64,
            reason: "need at least 16 points",
        });
    }
    let steps = [step, step / 2.0, step / 4.0];
    let mut rms = Vec::new();
    let mut worst = 0.0f64;
    let mut pol = 0.0f64;
    let mut imaginary = 0.0f64;
    for (i, &h) in steps.iter().enumerate() {
        let mut sq = 0.0;
        for &p in points {
            let g = gordon_decompose(field, k, p, t, h, None)?;
            let rel = g.discrepancy() / g.scale;
            sq += rel * rel;
            if i == steps.len() - 1 {
                worst = worst.max(rel);
            }
            let pmax = g.polarization.iter().fold(0.0f64, |a, v| a.max(v.abs()));
            pol = pol.max(pmax / g.scale);
            imaginary = imaginary.max(g.imaginary_residue);
        }
        rms.push((sq / points.len() as f64).sqrt());
    }
    let fit = convergence_order_from(&steps, &rms)?;
    let detail = json!({ "steps": steps, "relative_rms": rms, "monotone": fit.monotone, "points": points.len() });
    let mut order = Check::near(
        "gordon_order",
        fit.order,
        order_tol.expected,
        order_tol.band,
        detail,
    );
    order.passed &= fit.monotone;
    let finest = Check::at_most(
        "gordon_discrepancy",
        worst,
        finest_tol,
        json!({ "step": steps[2] }),
    );
    let imag = Check::at_most(
        "gordon_imaginary",
        imaginary,
        GORDON_IMAGINARY_TOLERANCE,
        json!({ "steps": steps }),
    );
    Ok((order, finest, imag, pol))
}

/// Full verification of the well ground state.
pub fn verify_well(state: &WellState, opts: &WellVerifyOptions) -> Result<VerificationReport> {
    let tol = &opts.tolerances;
    let k = &state.constants;
    let l = state.half_width();
    let mut checks = Vec::new();

    checks.push(Check::at_most(
        "eigen_relation",
        state.eigen_residual().abs(),
        tol.eigen,
        json!({ "energy": state.energy, "kinetic": state.kinetic }),
    ));
    let norm = state.normalization_integral(opts.quadrature_order);
    checks.push(Check::at_most(
        "normalization",
        (norm - 1.0).abs(),
        tol.normalization,
        json!({ "integral": norm }),
    ));

    let reports = opts
        .grids
        .iter()
        .map(|&n| dirac_residual(state, k, &GridSpec::square(-l, l, n), 0.0, None))
        .collect::<Result<Vec<_>>>()?;
    checks.push(order_check("dirac_order", &reports, &tol.order)?);

    // On a square grid the difference errors of ∂ₓjₓ and ∂ᵧjᵧ cancel exactly,
    // so the sweep uses a 4:3 node ratio to expose the truncation error.
    let reports = opts
        .grids
        .iter()
        .map(|&n| {
            let ny = (n - 1) * 3 / 4 + 1;
            let grid = GridSpec::rect([-l, -l], [l, l], [n, ny]);
            continuity_residual(
                |x, _| state.charge_density(x[0], x[1]),
                |x, _| state.current_density(x[0], x[1]),
                &grid,
                0.0,
                // ρ is static; any positive step gives ∂ρ/∂t = 0
                1.0,
            )
        })
        .collect::<Result<Vec<_>>>()?;
    checks.push(order_check("continuity_order", &reports, &tol.order)?);

    let div_scale =
        (2.0 * state.eta * k.e * k.c * state.norm * state.norm).abs() * state.wavenumber();
    let div = opts.spot_points.iter().fold(0.0f64, |a, p| {
        let (dx, dy) = state.current_divergence_terms(p[0], p[1]);
        a.max((dx + dy).abs())
    });
    checks.push(Check::at_most(
        "divergence_spot",
        div / div_scale,
        tol.divergence,
        json!({ "points": opts.spot_points.len() }),
    ));

    let (order, finest, imag, pol) = gordon_checks(
        state,
        k,
        &opts.gordon_points,
        0.0,
        opts.gordon_step,
        &tol.order,
        tol.gordon,
    )?;
    checks.push(order);
    checks.push(finest);
    checks.push(imag);
    checks.push(Check::at_most(
        "polarization_stationary",
        pol,
        tol.polarization,
        Value::Null,
    ));

    let hb = k.hbar;
    let s2 = state.spin_squared_with_order(opts.quadrature_order);
    checks.push(Check::at_most(
        "spin_squared",
        (s2 / (0.75 * hb * hb) - 1.0).abs(),
        tol.spin_squared,
        json!({ "value": s2 }),
    ));
    let sz = state.spin_vector_with_order(opts.quadrature_order)[2];
    checks.push(Check::at_most(
        "spin_z",
        (sz / state.spin_z_closed_form() - 1.0).abs(),
        tol.spin_z,
        json!({ "value": sz, "closed_form": state.spin_z_closed_form() }),
    ));
    let deficit = 0.5 * hb - sz;
    checks.push(Check::at_most(
        "spin_z_deficit",
        (deficit / state.spin_z_deficit_closed_form() - 1.0).abs(),
        tol.spin_deficit,
        json!({ "value": deficit, "closed_form": state.spin_z_deficit_closed_form() }),
    ));

    checks.push(velocity_bound(state, opts.velocity_nodes)?);
    let worst = opts.spot_points.iter().fold(0.0f64, |a, p| {
        let v = state.velocity(p[0], p[1]).unwrap_or(f64::NAN);
        let tf = state.velocity_tangent_form(p[0], p[1]);
        let rel = if tf == 0.0 {
            v.abs()
        } else {
            (v / tf - 1.0).abs()
        };
        if rel.is_nan() {
            f64::INFINITY
        } else {
            a.max(rel)
        }
    });
    checks.push(Check::at_most(
        "velocity_closed_form",
        worst,
        tol.velocity,
        Value::Null,
    ));

    Ok(VerificationReport {
        target: "well".into(),
        checks,
    })
}

/// max v over a vertex grid must stay strictly below c, with v(0, 0) = 0.
fn velocity_bound(state: &WellState, nodes: usize) -> Result<Check> {
    use rayon::prelude::*;
    let l = state.half_width();
    let grid = GridSpec::square(-l, l, nodes);
    grid.validate()?;
    let max = grid
        .points()
        .par_iter()
        .filter_map(|p| state.velocity(p[0], p[1]).ok())
        .reduce(|| 0.0, f64::max);
    let center = state.velocity(0.0, 0.0)?;
    let c = state.constants.c;
    Ok(Check {
        name: "velocity_bound".into(),
        value: max / c,
        tolerance: 1.0,
        passed: max < c && center == 0.0,
        detail: json!({ "max": max, "center": center, "nodes": nodes }),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PacketTolerances {
    pub order: OrderTolerance,
    /// 1 − overlap allowed at `oracle_nodes`.
    pub oracle_overlap: f64,
    pub width_ratio: f64,
    pub second_moment: f64,
    pub charge: f64,
    pub gordon: f64,
}

impl Default for PacketTolerances {
    fn default() -> Self {
        PacketTolerances {
            order: OrderTolerance::default(),
            oracle_overlap: 1e-6,
            width_ratio: 1e-3,
            second_moment: 1e-6,
            charge: 1e-6,
            gordon: 1e-4,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PacketVerifyOptions {
    /// Time of the residual sweeps (s).
    pub time: f64,
    /// Nodes per axis of the 3D residual sweeps, spanning ±`sweep_extent`·d.
    pub grids: Vec<usize>,
    pub sweep_extent: f64,
    pub gordon_points: Vec<[f64; 3]>,
    pub gordon_step: f64,
    /// Points for the superposition oracle, |x| ≤ 3d.
    pub oracle_points: Vec<[f64; 3]>,
    pub oracle_nodes: usize,
    /// Node counts whose oracle error must fall monotonically.
    pub oracle_ladder: Vec<usize>,
    /// Times (in units of t_c) at which the oracle is compared.
    pub oracle_times: Vec<f64>,
    pub tolerances: PacketTolerances,
}

impl PacketVerifyOptions {
    pub fn new(
        state: &PacketState,
        gordon_points: Vec<[f64; 3]>,
        oracle_points: Vec<[f64; 3]>,
    ) -> Self {
        PacketVerifyOptions {
            time: 0.5 * state.decoherence_time(),
            grids: vec![33, 65, 129],
            sweep_extent: 3.0,
            gordon_points,
            gordon_step: state.width() / 100.0,
            oracle_points,
            oracle_nodes: 24,
            oracle_ladder: vec![8, 16, 32],
            oracle_times: vec![0.0, 0.5, 1.0],
            tolerances: PacketTolerances::default(),
        }
    }
}

/// Per-axis standard deviation of the charge density at `t` relative to
/// t = 0, from its numerically integrated second moment.
pub fn second_moment_width_ratio(state: &PacketState, t: f64) -> f64 {
    let d = state.width();
    let half = 12.0 * d;
    let gl = GaussLegendre::composite(16, 8);
    let variance = |t: f64| {
        let m0 = gl.integrate_3d(|x| state.four_current(x, t).rho, [-half; 3], [half; 3]);
        let m2 = gl.integrate_3d(
            |x| x[0] * x[0] * state.four_current(x, t).rho,
            [-half; 3],
            [half; 3],
        );
        m2 / m0
    };
    (variance(t) / variance(0.0)).sqrt()
}

/// Charge inside the box |xᵢ| ≤ `half_extent`.
pub fn enclosed_charge(state: &PacketState, t: f64, half_extent: f64) -> f64 {
    let gl = GaussLegendre::composite(16, 8);
    gl.integrate_3d(
        |x| state.four_current(x, t).rho,
        [-half_extent; 3],
        [half_extent; 3],
    )
}

/// Full verification of the free wavepacket.
pub fn verify_packet(
    state: &PacketState,
    opts: &PacketVerifyOptions,
) -> Result<VerificationReport> {
    let tol = &opts.tolerances;
    let k = &state.constants;
    let d = state.width();
    let tc = state.decoherence_time();
    let mut checks = Vec::new();

    let ext = opts.sweep_extent * d;
    let reports = opts
        .grids
        .iter()
        .map(|&n| dirac_residual(state, k, &GridSpec::cube(-ext, ext, n), opts.time, None))
        .collect::<Result<Vec<_>>>()?;
    checks.push(order_check("dirac_order", &reports, &tol.order)?);

    let dt = 1e-4 * tc;
    let reports = opts
        .grids
        .iter()
        .map(|&n| {
            continuity_residual(
                |x, t| state.four_current(x, t).rho,
                |x, t| state.four_current(x, t).j(),
                &GridSpec::cube(-ext, ext, n),
                opts.time,
                dt,
            )
        })
        .collect::<Result<Vec<_>>>()?;
    checks.push(order_check("continuity_order", &reports, &tol.order)?);

    let (order, finest, imag, _) = gordon_checks(
        state,
        k,
        &opts.gordon_points,
        0.0,
        opts.gordon_step,
        &tol.order,
        tol.gordon,
    )?;
    checks.push(order);
    checks.push(finest);
    checks.push(imag);

    for &frac in &opts.oracle_times {
        let t = frac * tc;
        let a = state.oracle_agreement(&opts.oracle_points, t, opts.oracle_nodes);
        checks.push(Check::at_most(
            &format!("oracle_overlap_t{frac}"),
            1.0 - a.overlap,
            tol.oracle_overlap,
            json!({ "nodes": opts.oracle_nodes, "overlap": a.overlap, "relative_error": a.relative_error, "points": opts.oracle_points.len() }),
        ));
        let ladder: Vec<f64> = opts
            .oracle_ladder
            .iter()
            .map(|&n| {
                state
                    .oracle_agreement(&opts.oracle_points, t, n)
                    .relative_error
            })
            .collect();
        let monotone = ladder.windows(2).all(|w| w[1] < w[0]);
        checks.push(Check::flag(
            &format!("oracle_monotone_t{frac}"),
            monotone,
            json!({ "nodes": opts.oracle_ladder, "relative_error": ladder }),
        ));
    }

    let ratio = state.width_ratio(tc)?;
    checks.push(Check::near(
        "width_ratio_tc",
        ratio,
        std::f64::consts::SQRT_2,
        tol.width_ratio,
        Value::Null,
    ));
    let numeric = second_moment_width_ratio(state, tc);
    checks.push(Check::at_most(
        "width_ratio_second_moment",
        (numeric / ratio - 1.0).abs(),
        tol.second_moment,
        json!({ "numeric": numeric, "closed_form": ratio }),
    ));

    let box_half = 10.0 * d;
    let q0 = enclosed_charge(state, 0.0, box_half);
    let q1 = enclosed_charge(state, 2.0 * tc, box_half);
    checks.push(Check::at_most(
        "charge_conservation",
        (q1 / q0 - 1.0).abs(),
        tol.charge,
        json!({ "box_half_width": box_half, "t0": q0, "t_2tc": q1, "charge": k.e }),
    ));

    Ok(VerificationReport {
        target: "packet".into(),
        checks,
    })
}
