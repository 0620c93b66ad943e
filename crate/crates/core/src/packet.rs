//! Free-electron Gaussian wavepacket, spin up, zero mean momentum.
//!
//! Closed form (quadratic order in P/mc):
//!
//! ```text
//! ψ = N e^{-imc²t/ħ} G(x,t) (1, 0, a z, a (x + iy))
//! G = (2πħ²/w)^{3/2} exp(−r²/2w),  w = d² + iħt/m,  a = iħ / (2mc w)
//! ```
//!
//! which is the momentum superposition of plane-wave eigenstates with
//! Gaussian weight exp(−P²d²/2ħ²). [`PacketState::superposition_oracle`]
//! evaluates that superposition by brute-force Gauss–Hermite quadrature.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::constants::PhysicalConstants;
use crate::error::{Error, Result};
use crate::numerics::{gauss_hermite_rule, GaussLegendre, SpinorField};
use crate::spinor::{four_current, Complex, FourCurrent, Spinor4};

/// Minimum packet width in units of the reduced Compton wavelength.
pub const MIN_WIDTH_IN_COMPTON: f64 = 100.0;
/// Normalization box half-width in units of d.
pub const NORM_BOX_HALF_WIDTH: f64 = 8.0;
/// Oracle refinement threshold on the relative change under node doubling.
pub const ORACLE_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PacketConfig {
    /// Gaussian width parameter d (m).
    pub width: f64,
}

impl PacketConfig {
    pub fn new(width: f64) -> Result<Self> {
        Self::with_constants(width, &PhysicalConstants::TABLE)
    }

    pub fn with_constants(width: f64, k: &PhysicalConstants) -> Result<Self> {
        if !(width.is_finite() && width > 0.0) {
            return Err(Error::InvalidParameter {
                name: "d",
                value: width,
                reason: "packet width must be positive and finite",
            });
        }
        if width < MIN_WIDTH_IN_COMPTON * k.compton_wavelength() {
            return Err(Error::InvalidParameter {
                name: "d",
                value: width,
                reason:
                    "packet width must be at least 100 reduced Compton wavelengths (3.86e-11 m) \
                         for the small-momentum expansion to hold",
            });
        }
        Ok(PacketConfig { width })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PacketState {
    pub config: PacketConfig,
    /// Normalization constant fixed at t = 0.
    pub norm: f64,
    /// Decoherence time d²/(λ_c c) (s).
    pub decoherence_time: f64,
    pub constants: PhysicalConstants,
}

/// Result of one brute-force momentum superposition.
#[derive(Debug, Clone, Copy)]
pub struct OracleSample {
    pub spinor: Spinor4,
    /// Whether doubling the node count changed the result by ≤ 1e-8 (relative).
    pub converged: bool,
    pub relative_change: f64,
}

impl PacketState {
    pub fn new(config: PacketConfig) -> Result<Self> {
        Self::with_constants(config, PhysicalConstants::TABLE)
    }

    pub fn with_constants(config: PacketConfig, k: PhysicalConstants) -> Result<Self> {
        let config = PacketConfig::with_constants(config.width, &k)?;
        let d = config.width;
        let mut state = PacketState {
            config,
            norm: 1.0,
            decoherence_time: d * d / (k.compton_wavelength() * k.c),
            constants: k,
        };
        let half = NORM_BOX_HALF_WIDTH * d;
        let gl = GaussLegendre::composite(16, 8);
        let total = gl.integrate_3d(|x| state.psi(x, 0.0).norm_sqr(), [-half; 3], [half; 3]);
        state.norm = 1.0 / total.sqrt();
        Ok(state)
    }

    pub fn width(&self) -> f64 {
        self.config.width
    }

    /// d²/(λ_c c).
    pub fn decoherence_time(&self) -> f64 {
        self.decoherence_time
    }

    /// Complex width w(t) = d² + iħt/m.
    pub fn complex_width(&self, t: f64) -> Complex {
        let d = self.config.width;
        Complex::new(d * d, self.constants.hbar * t / self.constants.m)
    }

    /// σ(t)/σ(0) of |G|² along one axis: √(d⁴ + (λ_c c t)²) / d².
    pub fn width_ratio(&self, t: f64) -> Result<f64> {
        if t.is_nan() || t < 0.0 {
            return Err(Error::InvalidParameter {
                name: "t",
                value: t,
                reason: "time must be non-negative",
            });
        }
        let d2 = self.config.width.powi(2);
        let s = self.constants.compton_wavelength() * self.constants.c * t;
        Ok((d2 * d2 + s * s).sqrt() / d2)
    }

    /// Per-axis variance of |G|²: (d⁴ + (λ_c c t)²) / 2d².
    pub fn axis_variance(&self, t: f64) -> f64 {
        let d2 = self.config.width.powi(2);
        let s = self.constants.compton_wavelength() * self.constants.c * t;
        (d2 * d2 + s * s) / (2.0 * d2)
    }

    /// G(x, t).
    pub fn gaussian_profile(&self, x: [f64; 3], t: f64) -> Complex {
        let w = self.complex_width(t);
        let hb = self.constants.hbar;
        let r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
        let pref = (2.0 * std::f64::consts::PI * hb * hb).powf(1.5) * w.powf(-1.5);
        pref * (-r2 / (2.0 * w)).exp()
    }

    /// a(t) = iħ / (2mc w).
    fn small_factor(&self, w: Complex) -> Complex {
        let k = &self.constants;
        Complex::new(0.0, k.hbar) / (2.0 * k.m * k.c * w)
    }

    fn rest_phase(&self, t: f64) -> Complex {
        Complex::from_polar(1.0, -self.constants.rest_frequency() * t)
    }

    /// Closed-form ψ(x, t).
    pub fn wavefunction(&self, x: [f64; 3], t: f64) -> Spinor4 {
        let w = self.complex_width(t);
        let a = self.small_factor(w);
        let g = self.gaussian_profile(x, t) * self.norm * self.rest_phase(t);
        Spinor4::new(
            g,
            Complex::new(0.0, 0.0),
            g * a * x[2],
            g * a * Complex::new(x[0], x[1]),
        )
    }

    /// ρ and j from the spinor bilinears of [`Self::wavefunction`].
    pub fn four_current(&self, x: [f64; 3], t: f64) -> FourCurrent {
        four_current(&self.wavefunction(x, t), &self.constants)
    }

    /// Brute-force momentum superposition with `nodes` Gauss–Hermite nodes per
    /// axis, checked against `2 * nodes`.
    pub fn superposition_oracle(&self, x: [f64; 3], t: f64, nodes: usize) -> Result<OracleSample> {
        if nodes < 8 {
            return Err(Error::InvalidParameter {
                name: "nodes",
                value: nodes as f64,
                reason: "superposition quadrature needs at least 8 nodes per axis",
            });
        }
        let coarse = self.superposition(x, t, nodes);
        let fine = self.superposition(x, t, 2 * nodes);
        let diff = (coarse - fine).norm_sqr().sqrt();
        let scale = fine.norm_sqr().sqrt();
        let relative_change = if scale > 0.0 { diff / scale } else { diff };
        Ok(OracleSample {
            spinor: coarse,
            converged: relative_change <= ORACLE_TOLERANCE,
            relative_change,
        })
    }

    /// N ∫ e^{-imc²t/ħ} e^{-iP²t/2mħ} e^{-P²d²/2ħ²} e^{iP·x/ħ} u(P) d³P with
    /// u(P) = (1, 0, P_z/2mc, (P_x + iP_y)/2mc), summed over the full
    /// tensor-product node set.
    pub fn superposition(&self, x: [f64; 3], t: f64, nodes: usize) -> Spinor4 {
        let k = &self.constants;
        let d = self.config.width;
        let rule = gauss_hermite_rule(nodes);
        let p_scale = std::f64::consts::SQRT_2 * k.hbar / d;
        let tau = k.hbar * t / (k.m * d * d);
        let momenta: Vec<f64> = rule.nodes.iter().map(|s| s * p_scale).collect();
        let axis: [Vec<Complex>; 3] = std::array::from_fn(|ax| {
            rule.nodes
                .iter()
                .zip(&rule.weights)
                .zip(&momenta)
                .map(|((s, w), p)| {
                    let phase = -s * s * tau + p * x[ax] / k.hbar;
                    Complex::from_polar(*w, phase)
                })
                .collect()
        });
        let mut s0 = Complex::new(0.0, 0.0);
        let mut sz = Complex::new(0.0, 0.0);
        let mut sxy = Complex::new(0.0, 0.0);
        for (fz, pz) in axis[2].iter().zip(&momenta) {
            for (fy, py) in axis[1].iter().zip(&momenta) {
                let fyz = fy * fz;
                for (fx, px) in axis[0].iter().zip(&momenta) {
                    let f = fx * fyz;
                    s0 += f;
                    sz += f * pz;
                    sxy += f * Complex::new(*px, *py);
                }
            }
        }
        let jac = p_scale.powi(3);
        let pref = self.rest_phase(t) * (self.norm * jac);
        let spin = 1.0 / (2.0 * k.m * k.c);
        Spinor4::new(
            pref * s0,
            Complex::new(0.0, 0.0),
            pref * sz * spin,
            pref * sxy * spin,
        )
    }

    /// Oracle and closed form at many points; returns the normalized overlap
    /// |⟨a, b⟩| / (‖a‖‖b‖) over the concatenated sample vectors and the
    /// relative L2 difference ‖a − b‖/‖b‖.
    pub fn oracle_agreement(&self, points: &[[f64; 3]], t: f64, nodes: usize) -> OracleAgreement {
        let pairs: Vec<(Spinor4, Spinor4)> = points
            .par_iter()
            .map(|&x| (self.superposition(x, t, nodes), self.wavefunction(x, t)))
            .collect();
        let mut dot = Complex::new(0.0, 0.0);
        let (mut na, mut nb, mut nd) = (0.0, 0.0, 0.0);
        for (a, b) in &pairs {
            dot += a.inner(b);
            na += a.norm_sqr();
            nb += b.norm_sqr();
            nd += (*a - *b).norm_sqr();
        }
        OracleAgreement {
            overlap: dot.norm() / (na * nb).sqrt(),
            relative_error: (nd / nb).sqrt(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OracleAgreement {
    pub overlap: f64,
    pub relative_error: f64,
}

impl SpinorField for PacketState {
    fn psi(&self, x: [f64; 3], t: f64) -> Spinor4 {
        self.wavefunction(x, t)
    }

    fn envelope_rate(&self, x: [f64; 3], t: f64) -> Option<Spinor4> {
        let k = &self.constants;
        let w = self.complex_width(t);
        let dw = Complex::new(0.0, k.hbar / k.m);
        let a = self.small_factor(w);
        let da = -a * dw / w;
        let r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
        let g = self.gaussian_profile(x, t) * self.norm * self.rest_phase(t);
        let dg = g * (-1.5 / w + r2 / (2.0 * w * w)) * dw;
        let xy = Complex::new(x[0], x[1]);
        Some(Spinor4::new(
            dg,
            Complex::new(0.0, 0.0),
            (dg * a + g * da) * x[2],
            (dg * a + g * da) * xy,
        ))
    }
}

/// Plane-wave eigenstate with momentum P.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlaneWave {
    pub momentum: [f64; 3],
    pub energy: f64,
    /// E − mc² without cancellation.
    pub kinetic: f64,
    pub constants: PhysicalConstants,
}

impl PlaneWave {
    pub fn new(momentum: [f64; 3], k: PhysicalConstants) -> Result<Self> {
        let p2: f64 = momentum.iter().map(|p| p * p).sum();
        if p2.is_nan() || p2.sqrt() >= k.m * k.c {
            return Err(Error::InvalidParameter {
                name: "|P|",
                value: p2.sqrt(),
                reason: "momentum must stay below mc",
            });
        }
        let rest = k.rest_energy();
        let energy = (rest * rest + p2 * k.c * k.c).sqrt();
        Ok(PlaneWave {
            momentum,
            energy,
            kinetic: p2 * k.c * k.c / (energy + rest),
            constants: k,
        })
    }

    pub fn at(&self, x: [f64; 3], t: f64) -> Spinor4 {
        let k = &self.constants;
        let [px, py, pz] = self.momentum;
        let phase = -self.energy * t / k.hbar + (px * x[0] + py * x[1] + pz * x[2]) / k.hbar;
        let f = k.c / (self.energy + k.rest_energy());
        Spinor4::new(
            Complex::new(1.0, 0.0),
            Complex::new(0.0, 0.0),
            Complex::new(f * pz, 0.0),
            Complex::new(f * px, f * py),
        )
        .scale(Complex::from_polar(1.0, phase))
    }
}

/// e^{−iEt/ħ + iP·x/ħ} (1, 0, cP_z/(E+mc²), c(P_x+iP_y)/(E+mc²)).
pub fn plane_wave(
    momentum: [f64; 3],
    x: [f64; 3],
    t: f64,
    k: &PhysicalConstants,
) -> Result<Spinor4> {
    Ok(PlaneWave::new(momentum, *k)?.at(x, t))
}

impl SpinorField for PlaneWave {
    fn psi(&self, x: [f64; 3], t: f64) -> Spinor4 {
        self.at(x, t)
    }

    fn envelope_rate(&self, x: [f64; 3], t: f64) -> Option<Spinor4> {
        let w = self.kinetic / self.constants.hbar;
        Some(self.at(x, t).scale(Complex::new(0.0, -w)))
    }

    fn is_stationary(&self) -> bool {
        true
    }
}

#[cfg(test)]
#[allow(clippy::excessive_precision)]
mod tests {
    use super::*;

    const D10: f64 = 10e-9;
    // 50-digit mpmath evaluation with the tabulated constants
    const TC_10NM: f64 = 8.6423149905123340e-13;

    fn packet() -> PacketState {
        PacketState::new(PacketConfig::new(D10).unwrap()).unwrap()
    }

    #[test]
    fn regime_guard() {
        assert!(PacketConfig::new(1e-12).is_err());
        assert!(PacketConfig::new(-1e-8).is_err());
        assert!(PacketConfig::new(3.9e-11).is_ok());
    }

    #[test]
    fn decoherence_time_values() {
        let p = packet();
        assert!((p.decoherence_time() / 8.638e-13 - 1.0).abs() < 5e-3);
        assert!((p.decoherence_time() - TC_10NM).abs() <= 2.0 * f64::EPSILON * TC_10NM);
        let q = PacketState::new(PacketConfig::new(2.0 * D10).unwrap()).unwrap();
        assert!((q.decoherence_time() / p.decoherence_time() - 4.0).abs() < 1e-14);
    }

    #[test]
    fn normalization_matches_analytic_integral() {
        // ∫|G|²(1 + |a|²r²) at t = 0 with |G|² = (2πħ²/d²)³ e^{-r²/d²}
        let p = packet();
        let k = p.constants;
        let d = D10;
        let g0 = (2.0 * std::f64::consts::PI * k.hbar * k.hbar / (d * d)).powi(3);
        let gauss = (std::f64::consts::PI * d * d).powf(1.5);
        let a2 = (k.compton_wavelength() / (2.0 * d * d)).powi(2);
        let r2_mean = 1.5 * d * d;
        let total = g0 * gauss * (1.0 + a2 * r2_mean);
        assert!(
            (p.norm * p.norm * total - 1.0).abs() < 1e-12,
            "{}",
            p.norm * p.norm * total
        );
    }

    #[test]
    fn width_ratio_values() {
        let p = packet();
        assert_eq!(p.width_ratio(0.0).unwrap(), 1.0);
        let r = p.width_ratio(p.decoherence_time()).unwrap();
        assert!((r - std::f64::consts::SQRT_2).abs() < 1e-12);
        assert!(p.width_ratio(-1e-15).is_err());
    }

    #[test]
    fn small_components_at_t0() {
        let p = packet();
        let psi0 = p.wavefunction([0.0; 3], 0.0);
        assert_eq!(psi0[2].norm(), 0.0);
        assert_eq!(psi0[3].norm(), 0.0);
        let psi = p.wavefunction([D10, 0.0, 0.0], 0.0);
        let ratio = psi[3] / psi[0];
        let expected = Complex::new(0.0, p.constants.compton_wavelength() / (2.0 * D10));
        assert!((ratio - expected).norm() <= 1e-14 * expected.norm());
    }

    #[test]
    fn density_decays_after_decoherence_time() {
        let p = packet();
        let tc = p.decoherence_time();
        let x = [0.0, 0.0, 0.0];
        let r: Vec<f64> = [0.0, tc, 2.0 * tc, 4.0 * tc]
            .iter()
            .map(|&t| p.wavefunction(x, t).norm_sqr())
            .collect();
        assert!(r.windows(2).all(|w| w[1] < w[0]));
    }

    #[test]
    fn t0_current_structure() {
        // j = e c |NG|² (λ_c/d²)(−y, x, 0) at t = 0
        let p = packet();
        let k = p.constants;
        let lc = k.compton_wavelength();
        for &x in &[
            [0.3e-8, -0.7e-8, 0.2e-8],
            [1.1e-8, 0.4e-8, -0.5e-8],
            [0.0, 0.5e-8, 0.0],
        ] {
            let j = p.four_current(x, 0.0);
            let g2 = (p.gaussian_profile(x, 0.0) * p.norm).norm_sqr();
            let pref = k.e * k.c * g2 * lc / (D10 * D10);
            assert!((j.jx - pref * -x[1]).abs() <= 1e-13 * pref.abs() * D10);
            assert!((j.jy - pref * x[0]).abs() <= 1e-13 * pref.abs() * D10);
            assert!(j.jz.abs() <= 1e-13 * pref.abs() * D10);
            // ρ = e|NG|²(1 + λ_c² r²/4d⁴)
            let r2 = x.iter().map(|v| v * v).sum::<f64>();
            let rho = k.e * g2 * (1.0 + lc * lc * r2 / (4.0 * D10.powi(4)));
            assert!((j.rho / rho - 1.0).abs() < 1e-14);
            assert!(j.rho / k.e > 0.0);
        }
        assert_eq!(p.four_current([0.0; 3], 0.7e-13).j(), [0.0; 3]);
        // carrier flow j/e along −x above the centre (counterclockwise)
        let j = p.four_current([0.0, 0.5e-8, 0.0], 0.0);
        assert!(j.jx / k.e < 0.0);
    }

    #[test]
    fn oracle_matches_closed_form_at_sample_points() {
        let p = packet();
        for &t in &[0.0, 0.5 * p.decoherence_time()] {
            for &x in &[
                [0.0; 3],
                [1.2e-8, -0.4e-8, 2.0e-8],
                [-2.5e-8, 0.3e-8, 0.1e-8],
            ] {
                let o = p.superposition_oracle(x, t, 24).unwrap();
                let c = p.wavefunction(x, t);
                let err = (o.spinor - c).norm_sqr().sqrt() / c.norm_sqr().sqrt();
                assert!(err < 1e-7, "t={t} x={x:?} err={err}");
                assert!(o.relative_change < 1e-7, "{}", o.relative_change);
            }
        }
        assert!(p.superposition_oracle([0.0; 3], 0.0, 4).is_err());
    }

    #[test]
    fn oracle_far_field_is_negligible() {
        let p = packet();
        let peak = p.wavefunction([0.0; 3], 0.0).norm_sqr().sqrt();
        let far = p
            .superposition([5.0 * D10, 0.0, 0.0], 0.0, 48)
            .norm_sqr()
            .sqrt();
        // closed form there is e^{-12.5} ≈ 4e-6 of peak
        let exact = p.wavefunction([5.0 * D10, 0.0, 0.0], 0.0).norm_sqr().sqrt();
        assert!(
            (far - exact).abs() < 1e-9 * peak,
            "{}",
            (far - exact) / peak
        );
        // far outside the resolved band the node set aliases; the flag says so
        let o = p
            .superposition_oracle([20.0 * D10, 0.0, 0.0], 0.0, 24)
            .unwrap();
        assert!(!o.converged);
    }

    #[test]
    fn plane_wave_forms() {
        let k = PhysicalConstants::TABLE;
        let t = 2.5e-16;
        let rest = plane_wave([0.0; 3], [1e-9, 2e-9, 0.0], t, &k).unwrap();
        let phase = Complex::from_polar(1.0, -k.rest_energy() * t / k.hbar);
        assert!((rest[0] - phase).norm() < 1e-15);
        assert_eq!(rest[2].norm() + rest[3].norm() + rest[1].norm(), 0.0);

        let p = 2e-25;
        let psi = plane_wave([p, 0.0, 0.0], [0.0; 3], 0.0, &k).unwrap();
        let e = (k.rest_energy().powi(2) + (p * k.c).powi(2)).sqrt();
        assert_eq!(psi[3].im, 0.0);
        assert!((psi[3].re - k.c * p / (e + k.rest_energy())).abs() < 1e-18);
        assert!(plane_wave([k.m * k.c, 0.0, 0.0], [0.0; 3], 0.0, &k).is_err());
    }
}
