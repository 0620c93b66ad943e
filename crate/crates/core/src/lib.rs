//! Exact Dirac 4-spinor states and their observables.
//!
//! Two solution families are provided: the ground eigenstate of an electron
//! in a 2D square infinite well ([`well`]) and a free spin-up Gaussian
//! wavepacket ([`packet`]). From either one the crate computes charge and
//! current densities, spin expectations, the velocity field and spreading
//! metrics, and [`numerics`] checks them against the Dirac equation,
//! continuity, the Gordon decomposition and a brute-force momentum
//! superposition. [`io`] writes field tables, manifests and figures.

pub mod constants;
pub mod error;
pub mod io;
pub mod numerics;
pub mod packet;
pub mod sampling;
pub mod spinor;
pub mod verify;
pub mod well;

pub use constants::PhysicalConstants;
pub use error::{Error, Result};
pub use packet::{PacketConfig, PacketState, PlaneWave};
pub use spinor::{Complex, FourCurrent, Matrix4c, Spinor4};
pub use well::{WellConfig, WellState};
