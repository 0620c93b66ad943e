//! Gordon decomposition of the Dirac current at a point.
//!
//! With ∂ₖ = ∂/∂xᵏ and σ^{μν} = (i/2)[γ^μ, γ^ν]:
//!
//! ```text
//! convection_k   = -(i e ħ / 2m) [ψ̄ ∂ₖψ − (∂ₖψ̄) ψ]
//! magnetization_k = (e ħ / 2m) Σₙ ∂ₙ(ψ̄ σ^{kn} ψ)
//! polarization_k  = (e ħ / 2mc) ∂ₜ(ψ̄ σ^{k0} ψ)
//! ```
//!
//! and for any solution of the free Dirac equation their sum equals
//! e c ψ̄γᵏψ. Derivatives are central differences in space; the time
//! derivative is analytic when the field provides one.

use serde::{Deserialize, Serialize};

use super::field::SpinorField;
use crate::constants::PhysicalConstants;
use crate::error::{Error, Result};
use crate::spinor::{dirac, four_current, Complex, Spinor4};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GordonTerms {
    pub convection: [f64; 3],
    pub magnetization: [f64; 3],
    pub polarization: [f64; 3],
    /// e c ψ̄γψ at the same point.
    pub direct: [f64; 3],
    /// Largest imaginary part of any assembled term, relative to `scale`.
    pub imaginary_residue: f64,
    /// Largest |component| among the three terms and the direct current.
    pub scale: f64,
}

impl GordonTerms {
    pub fn sum(&self) -> [f64; 3] {
        std::array::from_fn(|k| self.convection[k] + self.magnetization[k] + self.polarization[k])
    }

    /// Spin current: magnetization + polarization.
    pub fn spin_current(&self) -> [f64; 3] {
        std::array::from_fn(|k| self.magnetization[k] + self.polarization[k])
    }

    /// |sum − direct| (Euclidean).
    pub fn discrepancy(&self) -> f64 {
        let s = self.sum();
        (0..3)
            .map(|k| (s[k] - self.direct[k]).powi(2))
            .sum::<f64>()
            .sqrt()
    }
}

fn offset(x: [f64; 3], axis: usize, h: f64) -> [f64; 3] {
    let mut y = x;
    y[axis] += h;
    y
}

/// Splits the current of `field` at `point`, time `t`, into convection,
/// magnetization and polarization parts.
///
/// `h` is the spatial step; `h_t` is used only when the field has no
/// analytic time derivative and is not stationary.
pub fn gordon_decompose(
    field: &impl SpinorField,
    k: &PhysicalConstants,
    point: [f64; 3],
    t: f64,
    h: f64,
    h_t: Option<f64>,
) -> Result<GordonTerms> {
    if h.is_nan() || h <= 0.0 {
        return Err(Error::InvalidParameter {
            name: "h",
            value: h,
            reason: "spatial step must be positive",
        });
    }
    let m = dirac();
    let g0 = &m.gamma[0];
    let psi = field.psi(point, t);
    let bar = |a: &Spinor4, b: &Spinor4| a.inner(&g0.apply(b));

    // spinor samples at ±h along each axis
    let plus: [Spinor4; 3] = std::array::from_fn(|a| field.psi(offset(point, a, h), t));
    let minus: [Spinor4; 3] = std::array::from_fn(|a| field.psi(offset(point, a, -h), t));
    let grad: [Spinor4; 3] = std::array::from_fn(|a| (plus[a] - minus[a]).scale_re(0.5 / h));

    let conv_pref = Complex::new(0.0, -k.e * k.hbar / (2.0 * k.m));
    let convection: [Complex; 3] =
        std::array::from_fn(|a| conv_pref * (bar(&psi, &grad[a]) - bar(&grad[a], &psi)));

    let mag_pref = k.e * k.hbar / (2.0 * k.m);
    let magnetization: [Complex; 3] = std::array::from_fn(|kk| {
        let mut acc = Complex::new(0.0, 0.0);
        for n in 0..3 {
            if n == kk {
                continue;
            }
            let s = &m.sigma[kk + 1][n + 1];
            let d = (plus[n].bar_bilinear(s) - minus[n].bar_bilinear(s)) / (2.0 * h);
            acc += d;
        }
        acc * mag_pref
    });

    let pol_pref = k.e * k.hbar / (2.0 * k.m * k.c);
    let polarization: [Complex; 3] = if field.is_stationary() {
        [Complex::new(0.0, 0.0); 3]
    } else if let Some(d) = field.envelope_rate(point, t) {
        // the common phase cancels in the bilinear, leaving D̄σψ + ψ̄σD
        std::array::from_fn(|kk| {
            let s = &m.sigma[kk + 1][0];
            (bar(&d, &s.apply(&psi)) + bar(&psi, &s.apply(&d))) * pol_pref
        })
    } else {
        let ht = h_t.ok_or(Error::InvalidParameter {
            name: "h_t",
            value: f64::NAN,
            reason: "field has no analytic time derivative; a time step is required",
        })?;
        let later = field.psi(point, t + ht);
        let earlier = field.psi(point, t - ht);
        std::array::from_fn(|kk| {
            let s = &m.sigma[kk + 1][0];
            (later.bar_bilinear(s) - earlier.bar_bilinear(s)) / (2.0 * ht) * pol_pref
        })
    };

    let direct = four_current(&psi, k).j();
    let terms = [convection, magnetization, polarization];
    if terms
        .iter()
        .flatten()
        .any(|c| !(c.re.is_finite() && c.im.is_finite()))
    {
        return Err(Error::NonFinite("Gordon decomposition"));
    }
    let scale = terms
        .iter()
        .flatten()
        .map(|c| c.re.abs())
        .chain(direct.iter().map(|v| v.abs()))
        .fold(0.0f64, f64::max);
    let max_im = terms
        .iter()
        .flatten()
        .map(|c| c.im.abs())
        .fold(0.0f64, f64::max);
    Ok(GordonTerms {
        convection: convection.map(|c| c.re),
        magnetization: magnetization.map(|c| c.re),
        polarization: polarization.map(|c| c.re),
        direct,
        imaginary_residue: if scale > 0.0 { max_im / scale } else { max_im },
        scale,
    })
}
