// oracle values keep every digit the oracle printed
#![allow(clippy::excessive_precision)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wavespin_core::numerics::{
    continuity_residual, convergence_order, dirac_residual, gordon_decompose, FnField, GridSpec,
};
use wavespin_core::verify::{enclosed_charge, second_moment_width_ratio};
use wavespin_core::{Complex, PacketConfig, PacketState, PhysicalConstants, PlaneWave};

const D: f64 = 1e-8;
// mpmath, 50 digits, from the rounded constant table
const COMPTON: f64 = 3.8595642969356890e-13;
const T_C_10NM: f64 = 8.6423149905123340e-13;

fn packet() -> PacketState {
    PacketState::new(PacketConfig::new(D).unwrap()).unwrap()
}

#[test]
fn frozen_scales() {
    let k = PhysicalConstants::TABLE;
    assert!((k.compton_wavelength() / COMPTON - 1.0).abs() < 2.3e-16);
    let p = packet();
    assert!((p.decoherence_time() / T_C_10NM - 1.0).abs() < 1e-14);
    // reference figures to their quoted digits
    assert!((p.decoherence_time() / 8.638e-13 - 1.0).abs() < 5e-3);
    assert!((k.compton_wavelength() / 3.862e-13 - 1.0).abs() < 1e-3);
}

#[test]
fn small_component_ratio_at_unit_offset() {
    let p = packet();
    let lc = p.constants.compton_wavelength();
    let psi = p.wavefunction([D, 0.0, 0.0], 0.0);
    let ratio = psi[3] / psi[0];
    let want = Complex::new(0.0, lc / (2.0 * D));
    assert!((ratio - want).norm() < 1e-15 * want.norm());
}

#[test]
fn dirac_residual_second_order_at_half_decoherence_time() {
    let p = packet();
    let k = p.constants;
    let t = 0.5 * p.decoherence_time();
    let reports: Vec<_> = [17, 33, 65]
        .iter()
        .map(|&n| dirac_residual(&p, &k, &GridSpec::cube(-3.0 * D, 3.0 * D, n), t, None).unwrap())
        .collect();
    let fit = convergence_order(&reports).unwrap();
    assert!((fit.order - 2.0).abs() <= 0.25 && fit.monotone, "{fit:?}");
}

#[test]
fn residual_invariant_under_global_phase() {
    let p = packet();
    let k = p.constants;
    let t = 0.25 * p.decoherence_time();
    let grid = GridSpec::square(-3.0 * D, 3.0 * D, 33).with_plane_z(0.4 * D);
    let phase = Complex::from_polar(1.0, 1.234);
    let plain = FnField(|x: [f64; 3], t: f64| p.wavefunction(x, t));
    let rotated = FnField(|x: [f64; 3], t: f64| p.wavefunction(x, t).scale(phase));
    let h_t = Some(1e-4 * p.decoherence_time());
    let a = dirac_residual(&plain, &k, &grid, t, h_t).unwrap();
    let b = dirac_residual(&rotated, &k, &grid, t, h_t).unwrap();
    assert!((a.l2 / b.l2 - 1.0).abs() < 1e-10);
}

#[test]
fn continuity_holds_at_second_order() {
    let p = packet();
    let t = 0.5 * p.decoherence_time();
    let dt = 1e-4 * p.decoherence_time();
    let reports: Vec<_> = [17, 33, 65]
        .iter()
        .map(|&n| {
            continuity_residual(
                |x, t| p.four_current(x, t).rho,
                |x, t| p.four_current(x, t).j(),
                &GridSpec::cube(-3.0 * D, 3.0 * D, n),
                t,
                dt,
            )
            .unwrap()
        })
        .collect();
    let fit = convergence_order(&reports).unwrap();
    assert!((fit.order - 2.0).abs() <= 0.25 && fit.monotone, "{fit:?}");
}

#[test]
fn total_charge_is_conserved() {
    let p = packet();
    let e = p.constants.e;
    let q0 = enclosed_charge(&p, 0.0, 10.0 * D);
    let q1 = enclosed_charge(&p, 2.0 * p.decoherence_time(), 10.0 * D);
    assert!((q0 / e - 1.0).abs() < 1e-12);
    assert!((q1 / q0 - 1.0).abs() < 1e-6);
}

#[test]
fn spreading_matches_second_moment() {
    let p = packet();
    let tc = p.decoherence_time();
    assert!((p.width_ratio(tc).unwrap() - std::f64::consts::SQRT_2).abs() < 1e-12);
    for frac in [0.5, 1.0, 2.0] {
        let numeric = second_moment_width_ratio(&p, frac * tc);
        assert!((numeric / p.width_ratio(frac * tc).unwrap() - 1.0).abs() < 1e-6);
    }
    assert!(p.width_ratio(-1.0).is_err());
}

#[test]
fn oracle_converges_monotonically() {
    let p = packet();
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    // inside |x| ≤ 3d; closer in, 16 nodes already reach rounding at t = 0
    let points: Vec<[f64; 3]> = (0..200)
        .map(|_| loop {
            let x: [f64; 3] = std::array::from_fn(|_| rng.random_range(-3.0 * D..3.0 * D));
            if x.iter().map(|v| v * v).sum::<f64>() <= 9.0 * D * D {
                break x;
            }
        })
        .collect();
    for frac in [0.0, 0.5, 1.0] {
        let t = frac * p.decoherence_time();
        let errs: Vec<f64> = [8, 16, 32]
            .iter()
            .map(|&n| p.oracle_agreement(&points, t, n).relative_error)
            .collect();
        assert!(errs.windows(2).all(|w| w[1] < w[0]), "t={t}: {errs:?}");
        assert!(1.0 - p.oracle_agreement(&points, t, 24).overlap < 1e-6);
    }
}

#[test]
fn gordon_identity_packet_and_well() {
    let p = packet();
    let k = p.constants;
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for _ in 0..16 {
        let x: [f64; 3] = std::array::from_fn(|_| rng.random_range(-2.0 * D..2.0 * D));
        let coarse = gordon_decompose(&p, &k, x, 0.0, D / 100.0, None).unwrap();
        let fine = gordon_decompose(&p, &k, x, 0.0, D / 200.0, None).unwrap();
        let ratio = coarse.discrepancy() / fine.discrepancy();
        assert!((ratio - 4.0).abs() < 0.4, "{ratio}");
        assert!(fine.discrepancy() < 1e-4 * fine.scale);
        assert!(fine.imaginary_residue < 1e-10);
    }
    let w =
        wavespin_core::WellState::solve_ground(wavespin_core::WellConfig::new(D).unwrap()).unwrap();
    let g = gordon_decompose(&w, &k, [0.3 * D, -0.2 * D, 0.0], 0.0, D / 100.0, None).unwrap();
    assert_eq!(g.polarization, [0.0; 3]);
    assert!(g.discrepancy() < 1e-3 * g.scale);
}

#[test]
fn plane_wave_residual_second_order_and_current() {
    let k = PhysicalConstants::TABLE;
    let pz = 1e-3 * k.m * k.c;
    let pw = PlaneWave::new([0.3 * pz, -0.2 * pz, pz], k).unwrap();
    let wavelength = 2.0 * std::f64::consts::PI * k.hbar / pz;
    let reports: Vec<_> = [65, 129, 257]
        .iter()
        .map(|&n| {
            dirac_residual(&pw, &k, &GridSpec::square(0.0, wavelength, n), 0.0, None).unwrap()
        })
        .collect();
    let fit = convergence_order(&reports).unwrap();
    assert!((fit.order - 2.0).abs() <= 0.2 && fit.monotone, "{fit:?}");
    assert!(PlaneWave::new([k.m * k.c, 0.0, 0.0], k).is_err());
}
