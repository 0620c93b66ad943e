//! Grids, quadrature, finite differences and the verification routines.

pub mod field;
pub mod gordon;
pub mod grid;
pub mod quadrature;
pub mod residual;

pub use field::{FnField, SpinorField};
pub use gordon::{gordon_decompose, GordonTerms};
pub use grid::{Axis, Centering, GridSpec};
pub use quadrature::{gauss_hermite_rule, gauss_legendre_rule, GaussLegendre, Rule};
pub use residual::{
    continuity_residual, convergence_order, convergence_order_from, dirac_residual, ConvergenceFit,
    ResidualReport,
};

/// Pairwise (cascade) summation in a fixed order, so a given input slice
/// always reduces to the same bits regardless of thread count.
pub fn pairwise_sum(values: &[f64]) -> f64 {
    const BLOCK: usize = 32;
    if values.len() <= BLOCK {
        return values.iter().fold(0.0, |a, &b| a + b);
    }
    let mid = values.len() / 2;
    pairwise_sum(&values[..mid]) + pairwise_sum(&values[mid..])
}

/// Central first difference (f(x+h) - f(x-h)) / (x₊ - x₋).
#[inline]
pub fn central_difference(f_plus: f64, f_minus: f64, x_plus: f64, x_minus: f64) -> f64 {
    (f_plus - f_minus) / (x_plus - x_minus)
}
