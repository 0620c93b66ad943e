//! Finite-difference residuals of the Dirac and continuity equations and
//! observed convergence orders.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::field::SpinorField;
use super::grid::GridSpec;
use super::pairwise_sum;
use crate::constants::PhysicalConstants;
use crate::error::{Error, Result};
use crate::spinor::{dirac, Complex, Spinor4};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ResidualReport {
    /// Largest grid spacing (m).
    pub h: f64,
    /// Root-mean-square residual over interior nodes.
    pub l2: f64,
    /// Largest residual modulus over interior nodes.
    pub linf: f64,
    pub interior_points: usize,
    /// Magnitude of the individual terms that cancel in the residual.
    pub scale: f64,
}

impl ResidualReport {
    fn from_squares(h: f64, squares: &[f64], scale: f64) -> Self {
        let n = squares.len();
        let l2 = if n == 0 {
            0.0
        } else {
            (pairwise_sum(squares) / n as f64).sqrt()
        };
        let linf = squares.iter().fold(0.0f64, |a, &b| a.max(b)).sqrt();
        ResidualReport {
            h,
            l2,
            linf,
            interior_points: n,
            scale,
        }
    }

    pub fn relative_l2(&self) -> f64 {
        if self.scale == 0.0 {
            self.l2
        } else {
            self.l2 / self.scale
        }
    }
}

/// Samples on the grid plus the out-of-plane neighbours needed for ∂/∂z
/// when the grid is a 2D plane.
struct Stencil<T> {
    nx: usize,
    ny: usize,
    nz: usize,
    values: Vec<T>,
    x: Vec<f64>,
    y: Vec<f64>,
    z: Vec<f64>,
}

impl<T: Copy + Send> Stencil<T> {
    fn sample(grid: &GridSpec, f: impl Fn([f64; 3]) -> T + Sync) -> Self {
        let nx = grid.axes[0].nodes;
        let ny = grid.axes[1].nodes;
        let x = grid.coords(0);
        let y = grid.coords(1);
        let z = if grid.dims() == 3 {
            grid.coords(2)
        } else {
            let hz = grid.spacing(0).min(grid.spacing(1));
            vec![grid.plane_z - hz, grid.plane_z, grid.plane_z + hz]
        };
        let nz = z.len();
        let values = (0..nx * ny * nz)
            .into_par_iter()
            .map(|idx| {
                let i = idx % nx;
                let j = (idx / nx) % ny;
                let k = idx / (nx * ny);
                f([x[i], y[j], z[k]])
            })
            .collect();
        Stencil {
            nx,
            ny,
            nz,
            values,
            x,
            y,
            z,
        }
    }

    fn at(&self, i: usize, j: usize, k: usize) -> T {
        self.values[i + self.nx * (j + self.ny * k)]
    }

    /// Interior nodes (full stencil support), x fastest.
    fn interior(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for k in 1..self.nz - 1 {
            for j in 1..self.ny - 1 {
                for i in 1..self.nx - 1 {
                    out.push((i, j, k));
                }
            }
        }
        out
    }
}

fn spinor_gradient(s: &Stencil<Spinor4>, i: usize, j: usize, k: usize) -> [Spinor4; 3] {
    let dx = 1.0 / (s.x[i + 1] - s.x[i - 1]);
    let dy = 1.0 / (s.y[j + 1] - s.y[j - 1]);
    let dz = 1.0 / (s.z[k + 1] - s.z[k - 1]);
    [
        (s.at(i + 1, j, k) - s.at(i - 1, j, k)).scale_re(dx),
        (s.at(i, j + 1, k) - s.at(i, j - 1, k)).scale_re(dy),
        (s.at(i, j, k + 1) - s.at(i, j, k - 1)).scale_re(dz),
    ]
}

/// Envelope time derivative ∂ψ/∂t + i(mc²/ħ)ψ, analytic when the field
/// provides it, otherwise a central difference of e^{imc²t/ħ}ψ with step `h_t`.
pub(crate) fn envelope_rate(
    field: &impl SpinorField,
    k: &PhysicalConstants,
    x: [f64; 3],
    t: f64,
    h_t: Option<f64>,
) -> Result<Spinor4> {
    if let Some(d) = field.envelope_rate(x, t) {
        return Ok(d);
    }
    let ht = h_t.ok_or(Error::InvalidParameter {
        name: "h_t",
        value: f64::NAN,
        reason: "field has no analytic time derivative; a time step is required",
    })?;
    if ht.is_nan() || ht <= 0.0 {
        return Err(Error::InvalidParameter {
            name: "h_t",
            value: ht,
            reason: "time step must be positive",
        });
    }
    let w = k.rest_frequency() * ht;
    let plus = field.psi(x, t + ht).scale(Complex::from_polar(1.0, w));
    let minus = field.psi(x, t - ht).scale(Complex::from_polar(1.0, -w));
    Ok((plus - minus).scale_re(0.5 / ht))
}

/// Interior residual of (1/c)∂ψ/∂t + α·∇ψ + i(mc/ħ)γ⁰ψ.
///
/// The rest-energy phase is taken out of the time derivative first, so the
/// residual is evaluated as (1/c)D + α·∇ψ + i(mc/ħ)(γ⁰ − 1)ψ with
/// D = ∂ψ/∂t + i(mc²/ħ)ψ; the two forms are algebraically identical but the
/// second avoids cancelling two terms of size mc/ħ.
pub fn dirac_residual(
    field: &impl SpinorField,
    k: &PhysicalConstants,
    grid: &GridSpec,
    t: f64,
    h_t: Option<f64>,
) -> Result<ResidualReport> {
    grid.validate()?;
    let m = dirac();
    let kc = k.compton_wavenumber();
    let stencil = Stencil::sample(grid, |x| field.psi(x, t));
    let interior = stencil.interior();

    let rows: Vec<Result<(f64, f64)>> = interior
        .par_iter()
        .map(|&(i, j, kk)| {
            let psi = stencil.at(i, j, kk);
            let grad = spinor_gradient(&stencil, i, j, kk);
            let x = [stencil.x[i], stencil.y[j], stencil.z[kk]];
            let d = envelope_rate(field, k, x, t, h_t)?;
            let mut r = d.scale_re(1.0 / k.c);
            for (a, g) in m.alpha.iter().zip(grad.iter()) {
                r = r + a.apply(g);
            }
            let mass = Complex::new(0.0, -2.0 * kc);
            r[2] += mass * psi[2];
            r[3] += mass * psi[3];
            if !r.is_finite() {
                return Err(Error::NonFinite("Dirac residual"));
            }
            Ok((r.norm_sqr(), kc * psi.norm_sqr().sqrt()))
        })
        .collect();
    let mut squares = Vec::with_capacity(rows.len());
    let mut scale = 0.0f64;
    for row in rows {
        let (sq, s) = row?;
        squares.push(sq);
        scale = scale.max(s);
    }
    Ok(ResidualReport::from_squares(grid.h(), &squares, scale))
}

/// Interior residual of ∂ρ/∂t + ∇·j with central differences in space and
/// time step `dt`.
pub fn continuity_residual(
    rho_fn: impl Fn([f64; 3], f64) -> f64 + Sync,
    j_fn: impl Fn([f64; 3], f64) -> [f64; 3] + Sync,
    grid: &GridSpec,
    t: f64,
    dt: f64,
) -> Result<ResidualReport> {
    grid.validate()?;
    if dt.is_nan() || dt <= 0.0 {
        return Err(Error::InvalidParameter {
            name: "dt",
            value: dt,
            reason: "time step must be positive",
        });
    }
    let current = Stencil::sample(grid, |x| j_fn(x, t));
    let interior = current.interior();
    let rows: Vec<(f64, f64)> = interior
        .par_iter()
        .map(|&(i, j, k)| {
            let x = [current.x[i], current.y[j], current.z[k]];
            let drho = (rho_fn(x, t + dt) - rho_fn(x, t - dt)) / (2.0 * dt);
            let dxj = (current.at(i + 1, j, k)[0] - current.at(i - 1, j, k)[0])
                / (current.x[i + 1] - current.x[i - 1]);
            let dyj = (current.at(i, j + 1, k)[1] - current.at(i, j - 1, k)[1])
                / (current.y[j + 1] - current.y[j - 1]);
            let dzj = (current.at(i, j, k + 1)[2] - current.at(i, j, k - 1)[2])
                / (current.z[k + 1] - current.z[k - 1]);
            let r = drho + dxj + dyj + dzj;
            (r * r, drho.abs() + dxj.abs() + dyj.abs() + dzj.abs())
        })
        .collect();
    let squares: Vec<f64> = rows.iter().map(|r| r.0).collect();
    let scale = rows.iter().fold(0.0f64, |a, r| a.max(r.1));
    Ok(ResidualReport::from_squares(grid.h(), &squares, scale))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceFit {
    /// Least-squares slope of log(error) against log(h).
    pub order: f64,
    /// Whether every refinement reduced the error.
    pub monotone: bool,
}

/// Observed order from (spacing, error) pairs with strictly decreasing spacing.
pub fn convergence_order_from(h: &[f64], err: &[f64]) -> Result<ConvergenceFit> {
    assert_eq!(h.len(), err.len());
    if h.len() < 3 {
        return Err(Error::TooFewReports(h.len()));
    }
    if h.windows(2)
        .any(|w| w[1].partial_cmp(&w[0]) != Some(std::cmp::Ordering::Less))
    {
        return Err(Error::SpacingNotDecreasing);
    }
    if err.iter().any(|e| !(e.is_finite() && *e > 0.0)) {
        return Err(Error::NonFinite(
            "convergence errors (need finite, positive values)",
        ));
    }
    let lx: Vec<f64> = h.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = err.iter().map(|v| v.ln()).collect();
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = lx.iter().map(|x| (x - mx) * (x - mx)).sum();
    Ok(ConvergenceFit {
        order: sxy / sxx,
        monotone: err.windows(2).all(|w| w[1] < w[0]),
    })
}

/// Observed order of a sweep of L2 residuals.
pub fn convergence_order(reports: &[ResidualReport]) -> Result<ConvergenceFit> {
    let h: Vec<f64> = reports.iter().map(|r| r.h).collect();
    let e: Vec<f64> = reports.iter().map(|r| r.l2).collect();
    convergence_order_from(&h, &e)
}
