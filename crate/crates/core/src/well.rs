//! Ground eigenstate of a Dirac electron in the square infinite well
//! |x|, |y| ≤ L, with no confinement and zero momentum along z.
//!
//! ψ = N e^{-iEt/ħ} (c_x c_y, 0, 0, η(i s_x c_y − c_x s_y))
//!
//! with c_x = cos(πx/2L), s_x = sin(πx/2L) and so on. Every observable is
//! evaluated in this sin/cos product form; the tangent form diverges at the
//! walls while the observables stay finite.
//!
//! Densities are per unit length along z (C/m², A/m).

use serde::{Deserialize, Serialize};

use crate::constants::PhysicalConstants;
use crate::error::{Error, Result};
use crate::numerics::{GaussLegendre, SpinorField};
use crate::spinor::{dirac, Complex, FourCurrent, Spinor4};

/// Default Gauss–Legendre order per axis for the well integrals.
pub const SPIN_QUADRATURE_ORDER: usize = 48;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WellConfig {
    /// Half-width L (m).
    pub half_width: f64,
}

impl WellConfig {
    pub fn new(half_width: f64) -> Result<Self> {
        if !(half_width.is_finite() && half_width > 0.0) {
            return Err(Error::InvalidParameter {
                name: "L",
                value: half_width,
                reason: "well half-width must be positive and finite",
            });
        }
        Ok(WellConfig { half_width })
    }
}

/// cos(πu/2) and sin(πu/2), exact zeros at u = ±1.
pub fn half_pi_cos_sin(u: f64) -> (f64, f64) {
    use std::f64::consts::FRAC_PI_2;
    let a = u.abs();
    if a <= 0.5 {
        let (s, c) = (FRAC_PI_2 * u).sin_cos();
        (c, s)
    } else {
        // cos(πu/2) = sin(π(1−|u|)/2); 1 − |u| is exact here
        let r = 1.0 - a;
        let (s, c) = (FRAC_PI_2 * r).sin_cos();
        (s, c.copysign(u))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WellState {
    pub config: WellConfig,
    /// Geometric factor η = ħcπ / (2L(E + mc²)).
    pub eta: f64,
    /// Total energy E (J).
    pub energy: f64,
    /// E − mc² (J), evaluated without cancellation.
    pub kinetic: f64,
    /// Normalization N = 1 / (L √(1 + 2η²)) (1/m).
    pub norm: f64,
    pub constants: PhysicalConstants,
}

/// Trigonometric factors at one point.
#[derive(Debug, Clone, Copy)]
struct Trig {
    cx: f64,
    sx: f64,
    cy: f64,
    sy: f64,
}

impl Trig {
    fn q(&self) -> f64 {
        self.sx * self.sx * self.cy * self.cy + self.cx * self.cx * self.sy * self.sy
    }
}

impl WellState {
    pub fn solve_ground(config: WellConfig) -> Result<Self> {
        Self::solve_ground_with(config, PhysicalConstants::TABLE)
    }

    pub fn solve_ground_with(config: WellConfig, k: PhysicalConstants) -> Result<Self> {
        let config = WellConfig::new(config.half_width)?;
        let wavenumber = std::f64::consts::PI / (2.0 * config.half_width);
        let rest = k.rest_energy();
        let confinement = 2.0 * (k.hbar * k.c * wavenumber).powi(2);
        let energy = (rest * rest + confinement).sqrt();
        let kinetic = confinement / (energy + rest);
        let eta = k.hbar * k.c / (energy + rest) * wavenumber;
        let norm = 1.0 / (config.half_width * (1.0 + 2.0 * eta * eta).sqrt());
        Ok(WellState {
            config,
            eta,
            energy,
            kinetic,
            norm,
            constants: k,
        })
    }

    pub fn half_width(&self) -> f64 {
        self.config.half_width
    }

    /// π / 2L
    pub fn wavenumber(&self) -> f64 {
        std::f64::consts::PI / (2.0 * self.config.half_width)
    }

    /// (E² − m²c⁴ − 2(ħcπ/2L)²) / E².
    pub fn eigen_residual(&self) -> f64 {
        let k = &self.constants;
        let rest = k.rest_energy();
        let conf = 2.0 * (k.hbar * k.c * self.wavenumber()).powi(2);
        let e2 = self.energy * self.energy;
        (e2 - rest * rest - conf) / e2
    }

    fn trig(&self, x: f64, y: f64) -> Trig {
        let l = self.config.half_width;
        let (cx, sx) = half_pi_cos_sin(x / l);
        let (cy, sy) = half_pi_cos_sin(y / l);
        Trig { cx, sx, cy, sy }
    }

    fn spatial(&self, tr: &Trig) -> Spinor4 {
        let n = self.norm;
        let upper = n * tr.cx * tr.cy;
        let lower = Complex::new(-tr.cx * tr.sy, tr.sx * tr.cy) * (n * self.eta);
        Spinor4::new(
            Complex::new(upper, 0.0),
            Complex::new(0.0, 0.0),
            Complex::new(0.0, 0.0),
            lower,
        )
    }

    /// ψ(x, y, t).
    pub fn wavefunction(&self, x: f64, y: f64, t: f64) -> Spinor4 {
        let phase = Complex::from_polar(1.0, -self.energy * t / self.constants.hbar);
        self.spatial(&self.trig(x, y)).scale(phase)
    }

    /// e N² [c_x²c_y² + η²(s_x²c_y² + c_x²s_y²)] (C/m²).
    pub fn charge_density(&self, x: f64, y: f64) -> f64 {
        let tr = self.trig(x, y);
        let c2 = (tr.cx * tr.cy).powi(2);
        self.constants.e * self.norm * self.norm * (c2 + self.eta * self.eta * tr.q())
    }

    fn current_prefactor(&self) -> f64 {
        2.0 * self.eta * self.constants.e * self.constants.c * self.norm * self.norm
    }

    /// 2η e c N² (−c_x² c_y s_y, c_x s_x c_y², 0) (A/m).
    pub fn current_density(&self, x: f64, y: f64) -> [f64; 3] {
        let tr = self.trig(x, y);
        let a = self.current_prefactor();
        [
            -a * tr.cx * tr.cx * tr.cy * tr.sy,
            a * tr.cx * tr.sx * tr.cy * tr.cy,
            0.0,
        ]
    }

    pub fn four_current(&self, x: f64, y: f64) -> FourCurrent {
        let [jx, jy, jz] = self.current_density(x, y);
        FourCurrent {
            rho: self.charge_density(x, y),
            jx,
            jy,
            jz,
        }
    }

    /// |j| = 2η|e|cN² |c_x c_y| √(s_x²c_y² + c_x²s_y²).
    pub fn current_magnitude(&self, x: f64, y: f64) -> f64 {
        let tr = self.trig(x, y);
        self.current_prefactor().abs() * (tr.cx * tr.cy).abs() * tr.q().sqrt()
    }

    /// Analytic ∂ₓjₓ and ∂ᵧjᵧ; their sum vanishes identically.
    pub fn current_divergence_terms(&self, x: f64, y: f64) -> (f64, f64) {
        let tr = self.trig(x, y);
        let a = self.current_prefactor();
        let k = self.wavenumber();
        let djx = -a * (2.0 * tr.cx * (-k * tr.sx)) * tr.cy * tr.sy;
        let djy = a * tr.cx * tr.sx * (2.0 * tr.cy * (-k * tr.sy));
        (djx, djy)
    }

    /// v = |j| / |ρ|, bounded by c.
    pub fn velocity(&self, x: f64, y: f64) -> Result<f64> {
        let rho = self.charge_density(x, y);
        if rho == 0.0 {
            return Err(Error::UndefinedVelocity { x, y });
        }
        Ok(self.current_magnitude(x, y) / rho.abs())
    }

    /// Tangent form c · 2ηT / (1 + η²T²), T² = tan²(πx/2L) + tan²(πy/2L).
    /// Only meaningful strictly inside the well.
    pub fn velocity_tangent_form(&self, x: f64, y: f64) -> f64 {
        let l = self.config.half_width;
        let tx = (std::f64::consts::FRAC_PI_2 * x / l).tan();
        let ty = (std::f64::consts::FRAC_PI_2 * y / l).tan();
        let t = (tx * tx + ty * ty).sqrt();
        let et = self.eta * t;
        self.constants.c * 2.0 * et / (1.0 + et * et)
    }

    fn integrate<const K: usize>(
        &self,
        order: usize,
        f: impl Fn(&Spinor4) -> [f64; K],
    ) -> [f64; K] {
        let l = self.config.half_width;
        let gl = GaussLegendre::new(order);
        gl.integrate_2d_many(|x, y| f(&self.spatial(&self.trig(x, y))), [-l, -l], [l, l])
    }

    /// ∫∫ ψ†ψ dx dy over the well.
    pub fn normalization_integral(&self, order: usize) -> f64 {
        self.integrate(order, |psi| [psi.norm_sqr()])[0]
    }

    /// ∫∫ ψ†(ħΣ/2)²ψ dx dy, evaluated with the explicit Σ matrices.
    pub fn spin_squared(&self) -> f64 {
        self.spin_squared_with_order(SPIN_QUADRATURE_ORDER)
    }

    pub fn spin_squared_with_order(&self, order: usize) -> f64 {
        let m = dirac();
        let half_hbar = 0.5 * self.constants.hbar;
        let sq = m
            .spin
            .iter()
            .map(|s| s * s)
            .fold(crate::spinor::Matrix4c::ZERO, |a, b| a + b)
            .scale(Complex::new(half_hbar * half_hbar, 0.0));
        self.integrate(order, |psi| [psi.expectation(&sq).re])[0]
    }

    /// ∫∫ ψ†(ħ/2)Σψ dx dy.
    pub fn spin_vector(&self) -> [f64; 3] {
        self.spin_vector_with_order(SPIN_QUADRATURE_ORDER)
    }

    pub fn spin_vector_with_order(&self, order: usize) -> [f64; 3] {
        let m = dirac();
        let half_hbar = 0.5 * self.constants.hbar;
        let s = self.integrate(order, |psi| {
            std::array::from_fn(|k| psi.expectation(&m.spin[k]).re)
        });
        s.map(|v| half_hbar * v)
    }

    /// (ħ/2)(1 − 2η²)/(1 + 2η²).
    pub fn spin_z_closed_form(&self) -> f64 {
        let e2 = self.eta * self.eta;
        0.5 * self.constants.hbar * (1.0 - 2.0 * e2) / (1.0 + 2.0 * e2)
    }

    /// ħ/2 − S_z = ħ · 2η²/(1 + 2η²).
    pub fn spin_z_deficit_closed_form(&self) -> f64 {
        let e2 = self.eta * self.eta;
        self.constants.hbar * 2.0 * e2 / (1.0 + 2.0 * e2)
    }
}

impl SpinorField for WellState {
    fn psi(&self, x: [f64; 3], t: f64) -> Spinor4 {
        self.wavefunction(x[0], x[1], t)
    }

    fn envelope_rate(&self, x: [f64; 3], t: f64) -> Option<Spinor4> {
        let w = self.kinetic / self.constants.hbar;
        Some(self.psi(x, t).scale(Complex::new(0.0, -w)))
    }

    fn is_stationary(&self) -> bool {
        true
    }
}
