//! SI constants used throughout the crate.
//!
//! The values are rounded four/five-digit figures rather than CODATA, so
//! derived reference numbers (λ_c = 3.862e-13 m, η = 3.033e-5 at L = 10 nm)
//! are reproduced to their quoted precision.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalConstants {
    /// Electron charge (C), negative.
    pub e: f64,
    /// Electron mass (kg).
    pub m: f64,
    /// Vacuum permeability (H/m).
    pub mu0: f64,
    /// Speed of light (m/s).
    pub c: f64,
    /// Reduced Planck constant (J s).
    pub hbar: f64,
}

impl PhysicalConstants {
    pub const TABLE: PhysicalConstants = PhysicalConstants {
        e: -1.6022e-19,
        m: 9.109e-31,
        mu0: 1.257e-6,
        c: 2.998e8,
        hbar: 1.054e-34,
    };

    /// Reduced Compton wavelength ħ/(mc) in metres.
    pub fn compton_wavelength(&self) -> f64 {
        self.hbar / (self.m * self.c)
    }

    /// Rest energy mc² in joules.
    pub fn rest_energy(&self) -> f64 {
        self.m * self.c * self.c
    }

    /// Rest-energy angular frequency mc²/ħ (rad/s).
    pub fn rest_frequency(&self) -> f64 {
        self.m * self.c * self.c / self.hbar
    }

    /// Inverse reduced Compton wavelength mc/ħ (1/m).
    pub fn compton_wavenumber(&self) -> f64 {
        self.m * self.c / self.hbar
    }
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self::TABLE
    }
}

#[cfg(test)]
#[allow(clippy::excessive_precision)]
mod tests {
    use super::*;

    // Frozen from a 50-digit mpmath evaluation of the tabulated constants.
    const LAMBDA_C_EXT: f64 = 3.8595642969356890e-13;
    const REST_ENERGY_EXT: f64 = 8.1871728436e-14;

    #[test]
    fn table_values_verbatim() {
        let k = PhysicalConstants::TABLE;
        assert_eq!(k.e, -1.6022e-19);
        assert_eq!(k.m, 9.109e-31);
        assert_eq!(k.mu0, 1.257e-6);
        assert_eq!(k.c, 2.998e8);
        assert_eq!(k.hbar, 1.054e-34);
        assert!(k.e < 0.0);
        assert_eq!(PhysicalConstants::default(), k);
    }

    #[test]
    fn compton_wavelength_matches_quoted_value() {
        let lc = PhysicalConstants::TABLE.compton_wavelength();
        assert!((lc / 3.862e-13 - 1.0).abs() < 1e-3, "{lc}");
    }

    #[test]
    fn compton_wavelength_extended_precision() {
        let lc = PhysicalConstants::TABLE.compton_wavelength();
        let ulp = f64::EPSILON * LAMBDA_C_EXT;
        assert!((lc - LAMBDA_C_EXT).abs() <= ulp, "{lc} vs {LAMBDA_C_EXT}");
    }

    #[test]
    fn compton_wavelength_scales_with_hbar() {
        let mut k = PhysicalConstants::TABLE;
        let base = k.compton_wavelength();
        k.hbar *= 2.0;
        assert_eq!(k.compton_wavelength(), 2.0 * base);
    }

    #[test]
    fn compton_identity() {
        let k = PhysicalConstants::TABLE;
        let one = k.compton_wavelength() * k.m * k.c / k.hbar;
        assert!((one - 1.0).abs() <= 2.0 * f64::EPSILON);
    }

    #[test]
    fn rest_energy_values() {
        let k = PhysicalConstants::TABLE;
        let e0 = k.rest_energy();
        assert!((e0 / 8.187e-14 - 1.0).abs() < 1e-3);
        assert!((e0 - REST_ENERGY_EXT).abs() <= 2.0 * f64::EPSILON * REST_ENERGY_EXT);
        assert!((e0 / (k.c * k.c) / k.m - 1.0).abs() <= 2.0 * f64::EPSILON);
        let massless = PhysicalConstants { m: 0.0, ..k };
        assert_eq!(massless.rest_energy(), 0.0);
    }
}
