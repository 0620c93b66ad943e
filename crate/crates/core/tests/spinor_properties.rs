use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wavespin_core::spinor::{alpha, dirac, four_current, gamma, CurrentBilinears};
use wavespin_core::{Complex, Matrix4c, PhysicalConstants, Spinor4};

fn spinor_from(v: [f64; 8]) -> Spinor4 {
    Spinor4::new(
        Complex::new(v[0], v[1]),
        Complex::new(v[2], v[3]),
        Complex::new(v[4], v[5]),
        Complex::new(v[6], v[7]),
    )
}

proptest! {
    #[test]
    fn current_is_real_and_subluminal(v in prop::array::uniform8(-1.0f64..1.0)) {
        let psi = spinor_from(v);
        prop_assume!(psi.norm_sqr() > 1e-12);
        let b = CurrentBilinears::of(&psi);
        prop_assert!(b.imaginary_residue() < 1e-14);
        let k = PhysicalConstants::TABLE;
        let fc = four_current(&psi, &k);
        prop_assert!(fc.j_norm() <= k.c * fc.rho.abs() * (1.0 + 1e-12));
    }

    #[test]
    fn current_scales_quadratically(v in prop::array::uniform8(-1.0f64..1.0), s in 0.1f64..10.0, phase in 0.0f64..6.3) {
        let k = PhysicalConstants::TABLE;
        let psi = spinor_from(v);
        let a = four_current(&psi, &k);
        let b = four_current(&psi.scale(Complex::from_polar(s, phase)), &k);
        let tol = 1e-12 * s * s * (a.rho.abs() + 1e-300);
        prop_assert!((b.rho - s * s * a.rho).abs() <= tol);
        for (x, y) in a.j().iter().zip(b.j()) {
            prop_assert!((y - s * s * x).abs() <= tol * k.c);
        }
    }
}

#[test]
fn million_random_spinors_stay_inside_light_cone() {
    let k = PhysicalConstants::TABLE;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut worst = 0.0f64;
    for _ in 0..1_000_000 {
        let v: [f64; 8] = std::array::from_fn(|_| rng.random_range(-1.0..1.0));
        let psi = spinor_from(v);
        let fc = four_current(&psi, &k);
        worst = worst.max(fc.j_norm() / (k.c * fc.rho.abs()));
        assert!(CurrentBilinears::of(&psi).imaginary_residue() < 1e-14);
    }
    assert!(worst <= 1.0 + 1e-12, "{worst}");
}

#[test]
fn clifford_relations_from_public_accessors() {
    let eta = [1.0, -1.0, -1.0, -1.0];
    #[allow(clippy::needless_range_loop)]
    for mu in 0..4 {
        for nu in 0..4 {
            let ac = gamma(mu).unwrap().anticommutator(&gamma(nu).unwrap());
            let want = if mu == nu {
                Matrix4c::identity().scale(Complex::new(2.0 * eta[mu], 0.0))
            } else {
                Matrix4c::ZERO
            };
            assert!((ac - want).max_abs() < 1e-15);
        }
    }
    for k in 1..=3 {
        assert!(alpha(k).unwrap().is_hermitian(0.0));
        let g = dirac();
        let prod = g.gamma[0] * g.gamma[k];
        assert!((prod - alpha(k).unwrap()).max_abs() < 1e-15);
    }
    assert!(gamma(4).is_err());
    assert!(alpha(0).is_err() && alpha(4).is_err());
}

#[test]
fn rest_spinor_has_no_current() {
    let k = PhysicalConstants::TABLE;
    let psi = Spinor4::new(
        Complex::new(0.6, 0.0),
        Complex::new(0.0, 0.8),
        Complex::new(0.0, 0.0),
        Complex::new(0.0, 0.0),
    );
    let fc = four_current(&psi, &k);
    assert_eq!(fc.j(), [0.0; 3]);
    assert!((fc.rho / k.e - 1.0).abs() < 1e-15);
}
