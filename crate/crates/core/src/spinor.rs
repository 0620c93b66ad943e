//! Dirac-representation spinor algebra.
//!
//! γ⁰ = diag(1, 1, -1, -1), αᵏ = ((0, σₖ), (σₖ, 0)), γᵏ = γ⁰αᵏ,
//! Σₖ = (1/2i)(α × α)ₖ and σ^{μν} = (i/2)[γ^μ, γ^ν].

use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};
use std::sync::OnceLock;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::constants::PhysicalConstants;
use crate::error::{Error, Result};

pub type Complex = Complex64;

const ZERO: Complex = Complex::new(0.0, 0.0);
const ONE: Complex = Complex::new(1.0, 0.0);
const I: Complex = Complex::new(0.0, 1.0);

/// Four complex amplitudes of a Dirac bispinor, upper (large) pair first.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Spinor4(pub [Complex; 4]);

impl Spinor4 {
    pub const ZERO: Spinor4 = Spinor4([ZERO; 4]);

    pub fn new(a1: Complex, a2: Complex, a3: Complex, a4: Complex) -> Self {
        Spinor4([a1, a2, a3, a4])
    }

    pub fn scale(&self, s: Complex) -> Self {
        Spinor4(self.0.map(|a| a * s))
    }

    pub fn scale_re(&self, s: f64) -> Self {
        Spinor4(self.0.map(|a| a * s))
    }

    /// ψ†φ
    pub fn inner(&self, other: &Spinor4) -> Complex {
        self.0
            .iter()
            .zip(other.0.iter())
            .fold(ZERO, |acc, (a, b)| acc + a.conj() * b)
    }

    pub fn norm_sqr(&self) -> f64 {
        self.0.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|a| a.re.is_finite() && a.im.is_finite())
    }

    /// ψ†Mψ, the Hermitian-form bilinear.
    pub fn expectation(&self, m: &Matrix4c) -> Complex {
        self.inner(&m.apply(self))
    }

    /// ψ̄Mψ = ψ†γ⁰Mψ.
    pub fn bar_bilinear(&self, m: &Matrix4c) -> Complex {
        let g0 = &dirac().gamma[0];
        self.inner(&(g0 * m).apply(self))
    }
}

impl Index<usize> for Spinor4 {
    type Output = Complex;
    fn index(&self, i: usize) -> &Complex {
        &self.0[i]
    }
}

impl IndexMut<usize> for Spinor4 {
    fn index_mut(&mut self, i: usize) -> &mut Complex {
        &mut self.0[i]
    }
}

impl Add for Spinor4 {
    type Output = Spinor4;
    fn add(self, rhs: Spinor4) -> Spinor4 {
        Spinor4(std::array::from_fn(|i| self.0[i] + rhs.0[i]))
    }
}

impl Sub for Spinor4 {
    type Output = Spinor4;
    fn sub(self, rhs: Spinor4) -> Spinor4 {
        Spinor4(std::array::from_fn(|i| self.0[i] - rhs.0[i]))
    }
}

impl Neg for Spinor4 {
    type Output = Spinor4;
    fn neg(self) -> Spinor4 {
        Spinor4(self.0.map(|a| -a))
    }
}

/// Dense 4×4 complex matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Matrix4c(pub [[Complex; 4]; 4]);

impl Matrix4c {
    pub const ZERO: Matrix4c = Matrix4c([[ZERO; 4]; 4]);

    pub fn identity() -> Self {
        Self::diag([ONE; 4])
    }

    pub fn diag(d: [Complex; 4]) -> Self {
        let mut m = Self::ZERO;
        for (i, v) in d.into_iter().enumerate() {
            m.0[i][i] = v;
        }
        m
    }

    /// ((a, b), (c, d)) from 2×2 blocks.
    pub fn from_blocks(a: Pauli, b: Pauli, c: Pauli, d: Pauli) -> Self {
        let mut m = Self::ZERO;
        for r in 0..2 {
            for s in 0..2 {
                m.0[r][s] = a.0[r][s];
                m.0[r][s + 2] = b.0[r][s];
                m.0[r + 2][s] = c.0[r][s];
                m.0[r + 2][s + 2] = d.0[r][s];
            }
        }
        m
    }

    pub fn apply(&self, v: &Spinor4) -> Spinor4 {
        Spinor4(std::array::from_fn(|r| {
            (0..4).fold(ZERO, |acc, s| acc + self.0[r][s] * v.0[s])
        }))
    }

    pub fn scale(&self, s: Complex) -> Self {
        Matrix4c(self.0.map(|row| row.map(|a| a * s)))
    }

    pub fn adjoint(&self) -> Self {
        Matrix4c(std::array::from_fn(|r| {
            std::array::from_fn(|s| self.0[s][r].conj())
        }))
    }

    pub fn commutator(&self, other: &Matrix4c) -> Self {
        self * other - other * self
    }

    pub fn anticommutator(&self, other: &Matrix4c) -> Self {
        self * other + other * self
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.0
            .iter()
            .flatten()
            .map(|a| a.norm())
            .fold(0.0, f64::max)
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        (self - &self.adjoint()).max_abs() <= tol
    }
}

impl Mul for &Matrix4c {
    type Output = Matrix4c;
    fn mul(self, rhs: &Matrix4c) -> Matrix4c {
        Matrix4c(std::array::from_fn(|r| {
            std::array::from_fn(|s| (0..4).fold(ZERO, |acc, k| acc + self.0[r][k] * rhs.0[k][s]))
        }))
    }
}

impl Add for &Matrix4c {
    type Output = Matrix4c;
    fn add(self, rhs: &Matrix4c) -> Matrix4c {
        Matrix4c(std::array::from_fn(|r| {
            std::array::from_fn(|s| self.0[r][s] + rhs.0[r][s])
        }))
    }
}

impl Sub for &Matrix4c {
    type Output = Matrix4c;
    fn sub(self, rhs: &Matrix4c) -> Matrix4c {
        Matrix4c(std::array::from_fn(|r| {
            std::array::from_fn(|s| self.0[r][s] - rhs.0[r][s])
        }))
    }
}

// the owned forms forward to the reference impls
#[allow(clippy::op_ref)]
impl Mul for Matrix4c {
    type Output = Matrix4c;
    fn mul(self, rhs: Matrix4c) -> Matrix4c {
        &self * &rhs
    }
}

#[allow(clippy::op_ref)]
impl Add for Matrix4c {
    type Output = Matrix4c;
    fn add(self, rhs: Matrix4c) -> Matrix4c {
        &self + &rhs
    }
}

#[allow(clippy::op_ref)]
impl Sub for Matrix4c {
    type Output = Matrix4c;
    fn sub(self, rhs: Matrix4c) -> Matrix4c {
        &self - &rhs
    }
}

/// 2×2 complex block.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pauli(pub [[Complex; 2]; 2]);

impl Pauli {
    pub const ZERO: Pauli = Pauli([[ZERO; 2]; 2]);
    pub const IDENTITY: Pauli = Pauli([[ONE, ZERO], [ZERO, ONE]]);
    pub const X: Pauli = Pauli([[ZERO, ONE], [ONE, ZERO]]);
    pub const Y: Pauli = Pauli([[ZERO, Complex::new(0.0, -1.0)], [I, ZERO]]);
    pub const Z: Pauli = Pauli([[ONE, ZERO], [ZERO, Complex::new(-1.0, 0.0)]]);

    /// σ₁, σ₂, σ₃ for k = 1..=3.
    pub fn sigma(k: usize) -> Result<Pauli> {
        match k {
            1 => Ok(Self::X),
            2 => Ok(Self::Y),
            3 => Ok(Self::Z),
            _ => Err(Error::IndexOutOfRange {
                what: "Pauli",
                index: k,
                range: "1..=3",
            }),
        }
    }

    pub fn neg(&self) -> Pauli {
        Pauli(self.0.map(|row| row.map(|a| -a)))
    }
}

/// The full set of Dirac-representation matrices, built once and checked
/// against their defining relations.
#[derive(Debug, Clone)]
pub struct DiracMatrices {
    pub gamma: [Matrix4c; 4],
    /// α¹..α³ stored at indices 0..3.
    pub alpha: [Matrix4c; 3],
    /// Σ₁..Σ₃ stored at indices 0..3.
    pub spin: [Matrix4c; 3],
    pub sigma: [[Matrix4c; 4]; 4],
}

impl DiracMatrices {
    fn build() -> Self {
        let pauli = [Pauli::X, Pauli::Y, Pauli::Z];
        let alpha = pauli.map(|s| Matrix4c::from_blocks(Pauli::ZERO, s, s, Pauli::ZERO));
        let g0 = Matrix4c::diag([ONE, ONE, -ONE, -ONE]);
        let gamma = [g0, g0 * alpha[0], g0 * alpha[1], g0 * alpha[2]];

        // Σₖ = (1/2i) εₖᵢⱼ αⁱαʲ
        let half_over_i = Complex::new(0.0, -0.5);
        let spin: [Matrix4c; 3] = std::array::from_fn(|k| {
            let (i, j) = ((k + 1) % 3, (k + 2) % 3);
            alpha[i].commutator(&alpha[j]).scale(half_over_i)
        });

        let half_i = Complex::new(0.0, 0.5);
        let sigma = std::array::from_fn(|mu| {
            std::array::from_fn(|nu| gamma[mu].commutator(&gamma[nu]).scale(half_i))
        });

        DiracMatrices {
            gamma,
            alpha,
            spin,
            sigma,
        }
    }

    /// Checks the Clifford algebra, α anticommutation, Hermiticity and the
    /// block form of Σ. Returns a description of the first failed relation.
    pub fn self_check(&self) -> std::result::Result<(), String> {
        let id = Matrix4c::identity();
        let metric = [1.0, -1.0, -1.0, -1.0];
        #[allow(clippy::needless_range_loop)]
        for mu in 0..4 {
            for nu in 0..4 {
                let expected = if mu == nu {
                    id.scale(Complex::new(2.0 * metric[mu], 0.0))
                } else {
                    Matrix4c::ZERO
                };
                let anti = self.gamma[mu].anticommutator(&self.gamma[nu]);
                if (anti - expected).max_abs() != 0.0 {
                    return Err(format!("{{γ{mu}, γ{nu}}} != 2g{mu}{nu}"));
                }
            }
        }
        for j in 0..3 {
            if !self.alpha[j].is_hermitian(0.0) {
                return Err(format!("α{} not Hermitian", j + 1));
            }
            if !self.spin[j].is_hermitian(0.0) {
                return Err(format!("Σ{} not Hermitian", j + 1));
            }
            for k in 0..3 {
                let expected = if j == k {
                    id.scale(Complex::new(2.0, 0.0))
                } else {
                    Matrix4c::ZERO
                };
                let anti = self.alpha[j].anticommutator(&self.alpha[k]);
                if (anti - expected).max_abs() != 0.0 {
                    return Err(format!("{{α{}, α{}}} != 2δ", j + 1, k + 1));
                }
            }
            let s = Pauli::sigma(j + 1).expect("index in range");
            let block = Matrix4c::from_blocks(s, Pauli::ZERO, Pauli::ZERO, s);
            if (self.spin[j] - block).max_abs() != 0.0 {
                return Err(format!("Σ{} != diag(σ, σ)", j + 1));
            }
        }
        Ok(())
    }
}

/// Shared, self-checked Dirac matrices.
pub fn dirac() -> &'static DiracMatrices {
    static MATRICES: OnceLock<DiracMatrices> = OnceLock::new();
    MATRICES.get_or_init(|| {
        let m = DiracMatrices::build();
        if let Err(msg) = m.self_check() {
            panic!("Dirac matrix self-check failed: {msg}");
        }
        m
    })
}

pub fn gamma(mu: usize) -> Result<Matrix4c> {
    if mu > 3 {
        return Err(Error::IndexOutOfRange {
            what: "gamma",
            index: mu,
            range: "0..=3",
        });
    }
    Ok(dirac().gamma[mu])
}

pub fn alpha(k: usize) -> Result<Matrix4c> {
    if !(1..=3).contains(&k) {
        return Err(Error::IndexOutOfRange {
            what: "alpha",
            index: k,
            range: "1..=3",
        });
    }
    Ok(dirac().alpha[k - 1])
}

/// Dirac spin operator Σₖ.
pub fn sigma_spin(k: usize) -> Result<Matrix4c> {
    if !(1..=3).contains(&k) {
        return Err(Error::IndexOutOfRange {
            what: "spin",
            index: k,
            range: "1..=3",
        });
    }
    Ok(dirac().spin[k - 1])
}

/// σ^{μν} = (i/2)[γ^μ, γ^ν].
pub fn sigma_tensor(mu: usize, nu: usize) -> Result<Matrix4c> {
    for idx in [mu, nu] {
        if idx > 3 {
            return Err(Error::IndexOutOfRange {
                what: "sigma tensor",
                index: idx,
                range: "0..=3",
            });
        }
    }
    Ok(dirac().sigma[mu][nu])
}

/// Charge density and current density of a spinor.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct FourCurrent {
    pub rho: f64,
    pub jx: f64,
    pub jy: f64,
    pub jz: f64,
}

impl FourCurrent {
    pub fn j(&self) -> [f64; 3] {
        [self.jx, self.jy, self.jz]
    }

    pub fn j_norm(&self) -> f64 {
        (self.jx * self.jx + self.jy * self.jy + self.jz * self.jz).sqrt()
    }
}

/// Bilinears of one spinor before the real part is taken. The imaginary
/// parts are rounding residue for a Hermitian form.
#[derive(Debug, Clone, Copy)]
pub struct CurrentBilinears {
    pub density: Complex,
    pub flux: [Complex; 3],
}

impl CurrentBilinears {
    pub fn of(psi: &Spinor4) -> Self {
        let m = dirac();
        CurrentBilinears {
            density: psi.inner(psi),
            flux: std::array::from_fn(|k| psi.expectation(&m.alpha[k])),
        }
    }

    /// Largest |Im| relative to the largest |Re| (0 for the zero spinor).
    pub fn imaginary_residue(&self) -> f64 {
        let scale = self.density.re.abs();
        if scale == 0.0 {
            return 0.0;
        }
        let im = std::iter::once(self.density.im)
            .chain(self.flux.iter().map(|f| f.im))
            .fold(0.0f64, |a, b| a.max(b.abs()));
        im / scale
    }
}

/// ρ = e ψ†ψ, jᵏ = e c ψ†αᵏψ.
pub fn four_current(psi: &Spinor4, k: &PhysicalConstants) -> FourCurrent {
    let b = CurrentBilinears::of(psi);
    FourCurrent {
        rho: k.e * b.density.re,
        jx: k.e * k.c * b.flux[0].re,
        jy: k.e * k.c * b.flux[1].re,
        jz: k.e * k.c * b.flux[2].re,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    fn is_zero(m: &Matrix4c) -> bool {
        m.max_abs() == 0.0
    }

    #[test]
    fn self_check_passes() {
        dirac().self_check().unwrap();
    }

    #[test]
    fn gamma_squares_and_anticommutation() {
        let g0 = gamma(0).unwrap();
        let g1 = gamma(1).unwrap();
        let id = Matrix4c::identity();
        assert_eq!(g0 * g0, id);
        assert_eq!(g1 * g1, id.scale(c(-1.0, 0.0)));
        assert!(is_zero(&g0.anticommutator(&g1)));
        assert_eq!(
            g0,
            Matrix4c::diag([c(1., 0.), c(1., 0.), c(-1., 0.), c(-1., 0.)])
        );
        assert!(gamma(4).is_err());
    }

    #[test]
    fn alpha_relations() {
        let id = Matrix4c::identity();
        for k in 1..=3 {
            let a = alpha(k).unwrap();
            assert_eq!(a * a, id);
        }
        let a1 = alpha(1).unwrap();
        let a2 = alpha(2).unwrap();
        assert!(is_zero(&a1.anticommutator(&a2)));
        let up = Spinor4::new(c(1., 0.), c(0., 0.), c(0., 0.), c(0., 0.));
        assert_eq!(
            a1.apply(&up),
            Spinor4::new(c(0., 0.), c(0., 0.), c(0., 0.), c(1., 0.))
        );
        assert!(alpha(0).is_err());
        assert!(alpha(4).is_err());
    }

    #[test]
    fn spin_operator() {
        let up = Spinor4::new(c(1., 0.), c(0., 0.), c(0., 0.), c(0., 0.));
        assert_eq!(sigma_spin(3).unwrap().apply(&up), up);

        let sum = (1..=3)
            .map(|k| {
                let s = sigma_spin(k).unwrap();
                s * s
            })
            .fold(Matrix4c::ZERO, |a, b| a + b);
        assert_eq!(sum, Matrix4c::identity().scale(c(3.0, 0.0)));
        assert!(sigma_spin(0).is_err());
    }

    #[test]
    fn spin_from_alpha_cross_product_oracle() {
        // (α × α)ₖ expanded term by term, no commutator helper.
        let a: Vec<Matrix4c> = (1..=3).map(|k| alpha(k).unwrap()).collect();
        let cross = [
            (a[1] * a[2]) - (a[2] * a[1]),
            (a[2] * a[0]) - (a[0] * a[2]),
            (a[0] * a[1]) - (a[1] * a[0]),
        ];
        let paulis = [Pauli::X, Pauli::Y, Pauli::Z];
        for k in 0..3 {
            let from_cross = cross[k].scale(c(0.0, -0.5));
            let block = Matrix4c::from_blocks(paulis[k], Pauli::ZERO, Pauli::ZERO, paulis[k]);
            assert!(is_zero(&(from_cross - block)), "k = {}", k + 1);
        }
    }

    #[test]
    fn sigma_tensor_structure() {
        for mu in 0..4 {
            assert!(is_zero(&sigma_tensor(mu, mu).unwrap()));
            for nu in 0..4 {
                let s = sigma_tensor(mu, nu).unwrap() + sigma_tensor(nu, mu).unwrap();
                assert!(is_zero(&s));
            }
        }
        // direct (i/2)(γ¹γ² − γ²γ¹)
        let g1 = gamma(1).unwrap();
        let g2 = gamma(2).unwrap();
        let direct = ((g1 * g2) - (g2 * g1)).scale(c(0.0, 0.5));
        let block = Matrix4c::from_blocks(Pauli::Z, Pauli::ZERO, Pauli::ZERO, Pauli::Z);
        assert!(is_zero(&(direct - block)));
        assert_eq!(sigma_tensor(1, 2).unwrap(), block);
        assert!(sigma_tensor(0, 4).is_err());
    }

    #[test]
    fn gamma_bar_current_matches_alpha_form() {
        let k = PhysicalConstants::TABLE;
        let psi = Spinor4::new(c(0.3, -0.2), c(0.1, 0.7), c(-0.4, 0.05), c(0.2, 0.2));
        let j = four_current(&psi, &k);
        for i in 1..=3 {
            let via_gamma = psi.bar_bilinear(&gamma(i).unwrap());
            let expected = [j.jx, j.jy, j.jz][i - 1];
            assert!(
                (k.e * k.c * via_gamma.re - expected).abs() <= 1e-15 * expected.abs().max(1e-30)
            );
        }
        let rho = psi.bar_bilinear(&gamma(0).unwrap()).re * k.e;
        assert!((rho - j.rho).abs() <= 1e-15 * j.rho.abs());
    }

    #[test]
    fn rest_spinor_current() {
        let k = PhysicalConstants::TABLE;
        let up = Spinor4::new(c(1., 0.), c(0., 0.), c(0., 0.), c(0., 0.));
        let j = four_current(&up, &k);
        assert_eq!(j.rho, k.e);
        assert_eq!(j.j(), [0.0; 3]);
        let z = four_current(&Spinor4::ZERO, &k);
        assert_eq!(z, FourCurrent::default());
    }

    #[test]
    fn plane_wave_spinor_current_along_z() {
        // Bilinear of (1, 0, b, 0) with b = cPz/(E+mc²) real: ψ†α³ψ = 2b.
        let k = PhysicalConstants::TABLE;
        let pz = 3.0e-25;
        let e = (k.rest_energy().powi(2) + (pz * k.c).powi(2)).sqrt();
        let b = k.c * pz / (e + k.rest_energy());
        let amp = c(0.6, 0.8) * 0.5;
        let psi = Spinor4::new(amp, c(0., 0.), amp * b, c(0., 0.));
        let j = four_current(&psi, &k);
        let expected = 2.0 * k.e * k.c * b * amp.norm_sqr();
        assert!((j.jz - expected).abs() <= 1e-14 * expected.abs());
        assert_eq!(j.jx, 0.0);
        assert_eq!(j.jy, 0.0);
    }

    #[test]
    fn spin_squared_is_three_quarters_identity_in_units() {
        let total = (1..=3)
            .map(|k| {
                let s = sigma_spin(k).unwrap().scale(c(0.5, 0.0));
                s * s
            })
            .fold(Matrix4c::ZERO, |a, b| a + b);
        assert_eq!(total, Matrix4c::identity().scale(c(0.75, 0.0)));
    }
}
