//! Python bindings: well and packet states, constants, observables and verification.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use wavespin_core::verify::{self, PacketVerifyOptions, VerificationReport, WellVerifyOptions};
use wavespin_core::{Complex, FourCurrent, PacketConfig, PhysicalConstants, Spinor4, WellConfig};

fn value_error(e: wavespin_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn amplitudes(s: Spinor4) -> [Complex; 4] {
    s.0
}

fn current_tuple(j: FourCurrent) -> (f64, f64, f64, f64) {
    (j.rho, j.jx, j.jy, j.jz)
}

fn report_dict<'py>(py: Python<'py>, report: &VerificationReport) -> PyResult<Bound<'py, PyDict>> {
    let checks = PyDict::new(py);
    for c in &report.checks {
        let d = PyDict::new(py);
        d.set_item("value", c.value)?;
        d.set_item("tolerance", c.tolerance)?;
        d.set_item("passed", c.passed)?;
        checks.set_item(&c.name, d)?;
    }
    let out = PyDict::new(py);
    out.set_item("target", &report.target)?;
    out.set_item("passed", report.passed())?;
    out.set_item("checks", checks)?;
    Ok(out)
}

/// The SI constants used by every computation.
#[pyclass(name = "Constants", frozen)]
struct PyConstants(PhysicalConstants);

#[pymethods]
impl PyConstants {
    #[new]
    fn new() -> Self {
        PyConstants(PhysicalConstants::TABLE)
    }
    #[getter]
    fn e(&self) -> f64 {
        self.0.e
    }
    #[getter]
    fn m(&self) -> f64 {
        self.0.m
    }
    #[getter]
    fn mu0(&self) -> f64 {
        self.0.mu0
    }
    #[getter]
    fn c(&self) -> f64 {
        self.0.c
    }
    #[getter]
    fn hbar(&self) -> f64 {
        self.0.hbar
    }
    /// Reduced Compton wavelength ħ/(mc) (m).
    #[getter]
    fn compton_wavelength(&self) -> f64 {
        self.0.compton_wavelength()
    }
    /// Rest energy mc² (J).
    #[getter]
    fn rest_energy(&self) -> f64 {
        self.0.rest_energy()
    }
}

/// Ground state of an electron in the square well −L ≤ x, y ≤ L.
#[pyclass(name = "WellState", frozen)]
struct PyWellState(wavespin_core::WellState);

#[pymethods]
impl PyWellState {
    /// Solve for the ground state of a well of half-width `half_width` (m).
    #[new]
    fn new(half_width: f64) -> PyResult<Self> {
        let config = WellConfig::new(half_width).map_err(value_error)?;
        wavespin_core::WellState::solve_ground(config)
            .map(PyWellState)
            .map_err(value_error)
    }
    #[getter]
    fn half_width(&self) -> f64 {
        self.0.half_width()
    }
    #[getter]
    fn eta(&self) -> f64 {
        self.0.eta
    }
    /// Total energy E (J).
    #[getter]
    fn energy(&self) -> f64 {
        self.0.energy
    }
    /// E − mc² (J).
    #[getter]
    fn kinetic_energy(&self) -> f64 {
        self.0.kinetic
    }
    /// Normalization constant N (1/m).
    #[getter]
    fn norm(&self) -> f64 {
        self.0.norm
    }
    /// Relative residual of E² = m²c⁴ + 2ħ²c²k².
    fn eigen_residual(&self) -> f64 {
        self.0.eigen_residual()
    }
    /// The four spinor amplitudes at (x, y, t).
    fn wavefunction(&self, x: f64, y: f64, t: f64) -> [Complex; 4] {
        amplitudes(self.0.wavefunction(x, y, t))
    }
    /// (ρ, jx, jy, jz) at (x, y).
    fn four_current(&self, x: f64, y: f64) -> (f64, f64, f64, f64) {
        current_tuple(self.0.four_current(x, y))
    }
    /// |j|/ρ at (x, y); raises where the charge density vanishes.
    fn velocity(&self, x: f64, y: f64) -> PyResult<f64> {
        self.0.velocity(x, y).map_err(value_error)
    }
    /// ⟨S²⟩ by quadrature (J² s²).
    fn spin_squared(&self) -> f64 {
        self.0.spin_squared()
    }
    /// ⟨S⟩ by quadrature (J s).
    fn spin_vector(&self) -> [f64; 3] {
        self.0.spin_vector()
    }
    fn spin_z_closed_form(&self) -> f64 {
        self.0.spin_z_closed_form()
    }
    /// Run the well checks at the given Gordon and spot points ((x, y, z) tuples).
    #[pyo3(signature = (gordon_points, spot_points, grids=None))]
    fn verify<'py>(
        &self,
        py: Python<'py>,
        gordon_points: Vec<[f64; 3]>,
        spot_points: Vec<[f64; 3]>,
        grids: Option<Vec<usize>>,
    ) -> PyResult<Bound<'py, PyDict>> {
        let mut opts = WellVerifyOptions::new(&self.0, gordon_points, spot_points);
        if let Some(g) = grids {
            opts.grids = g;
        }
        let report = py
            .detach(|| verify::verify_well(&self.0, &opts))
            .map_err(value_error)?;
        report_dict(py, &report)
    }
}

/// Free spin-up Gaussian wavepacket of width d.
#[pyclass(name = "PacketState", frozen)]
struct PyPacketState(wavespin_core::PacketState);

#[pymethods]
impl PyPacketState {
    /// Packet of width `width` (m); must be at least 100 reduced Compton wavelengths.
    #[new]
    fn new(width: f64) -> PyResult<Self> {
        let config = PacketConfig::new(width).map_err(value_error)?;
        wavespin_core::PacketState::new(config)
            .map(PyPacketState)
            .map_err(value_error)
    }
    #[getter]
    fn width(&self) -> f64 {
        self.0.width()
    }
    #[getter]
    fn norm(&self) -> f64 {
        self.0.norm
    }
    /// Decoherence time t_c (s).
    #[getter]
    fn decoherence_time(&self) -> f64 {
        self.0.decoherence_time()
    }
    /// Width at time t relative to the initial width.
    fn width_ratio(&self, t: f64) -> PyResult<f64> {
        self.0.width_ratio(t).map_err(value_error)
    }
    /// The four spinor amplitudes at (x, y, z, t).
    fn wavefunction(&self, x: f64, y: f64, z: f64, t: f64) -> [Complex; 4] {
        amplitudes(self.0.wavefunction([x, y, z], t))
    }
    /// (ρ, jx, jy, jz) at (x, y, z, t).
    fn four_current(&self, x: f64, y: f64, z: f64, t: f64) -> (f64, f64, f64, f64) {
        current_tuple(self.0.four_current([x, y, z], t))
    }
    /// Brute-force momentum superposition with `nodes` Gauss–Hermite nodes per axis.
    fn superposition(&self, x: f64, y: f64, z: f64, t: f64, nodes: usize) -> [Complex; 4] {
        amplitudes(self.0.superposition([x, y, z], t, nodes))
    }
    /// (overlap, relative error) of the superposition against the closed form.
    fn oracle_agreement(&self, points: Vec<[f64; 3]>, t: f64, nodes: usize) -> (f64, f64) {
        let a = self.0.oracle_agreement(&points, t, nodes);
        (a.overlap, a.relative_error)
    }
    /// Run the packet checks at the given Gordon and oracle points ((x, y, z) tuples).
    #[pyo3(signature = (gordon_points, oracle_points, grids=None))]
    fn verify<'py>(
        &self,
        py: Python<'py>,
        gordon_points: Vec<[f64; 3]>,
        oracle_points: Vec<[f64; 3]>,
        grids: Option<Vec<usize>>,
    ) -> PyResult<Bound<'py, PyDict>> {
        let mut opts = PacketVerifyOptions::new(&self.0, gordon_points, oracle_points);
        if let Some(g) = grids {
            opts.grids = g;
        }
        let report = py
            .detach(|| verify::verify_packet(&self.0, &opts))
            .map_err(value_error)?;
        report_dict(py, &report)
    }
}

/// Scalar observables of the well of half-width `half_width` (m) as a dict.
#[pyfunction]
fn observables<'py>(py: Python<'py>, half_width: f64) -> PyResult<Bound<'py, PyDict>> {
    let s =
        wavespin_core::WellState::solve_ground(WellConfig::new(half_width).map_err(value_error)?)
            .map_err(value_error)?;
    let hbar = s.constants.hbar;
    let sz = s.spin_vector()[2];
    let d = PyDict::new(py);
    d.set_item("eta", s.eta)?;
    d.set_item("E", s.energy)?;
    d.set_item("E_minus_rest", s.kinetic)?;
    d.set_item("N", s.norm)?;
    d.set_item("S2", s.spin_squared())?;
    d.set_item("Sz", sz)?;
    d.set_item("Sz_deficit", 0.5 * hbar - sz)?;
    d.set_item("Sz_deficit_closed_form", s.spin_z_deficit_closed_form())?;
    Ok(d)
}

#[pymodule]
fn wavespin(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyConstants>()?;
    m.add_class::<PyWellState>()?;
    m.add_class::<PyPacketState>()?;
    m.add_function(wrap_pyfunction!(observables, m)?)?;
    Ok(())
}
