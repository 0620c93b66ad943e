"""Smoke test for the wavespin extension module."""

import math
import random

import wavespin


def ball_points(rng, n, radius):
    out = []
    while len(out) < n:
        p = tuple(rng.uniform(-radius, radius) for _ in range(3))
        if sum(v * v for v in p) <= radius * radius:
            out.append(p)
    return out


def main():
    k = wavespin.Constants()
    assert abs(k.compton_wavelength / 3.862e-13 - 1) < 1e-3

    well = wavespin.WellState(10e-9)
    assert abs(well.eta / 3.033e-5 - 1) < 1e-3
    assert abs(well.eigen_residual()) < 1e-12
    assert abs(well.spin_squared() / (0.75 * k.hbar**2) - 1) < 1e-10
    assert abs(well.spin_vector()[2] / well.spin_z_closed_form() - 1) < 1e-12
    psi = well.wavefunction(0.0, 0.0, 0.0)
    assert len(psi) == 4 and isinstance(psi[0], complex)
    rho, jx, jy, jz = well.four_current(3e-9, 2e-9)
    assert rho < 0 and jz == 0  # charge density of an electron
    assert well.velocity(3e-9, 2e-9) < k.c
    try:
        well.velocity(10e-9, 10e-9)
    except ValueError:
        pass
    else:
        raise AssertionError("velocity at a corner should raise")

    obs = wavespin.observables(10e-9)
    assert set(obs) >= {"eta", "E", "E_minus_rest", "N", "S2", "Sz", "Sz_deficit"}

    try:
        wavespin.WellState(-1.0)
    except ValueError:
        pass
    else:
        raise AssertionError("negative width should raise")

    rng = random.Random(7)
    L = well.half_width
    gordon = [(rng.uniform(-0.9 * L, 0.9 * L), rng.uniform(-0.9 * L, 0.9 * L), 0.0) for _ in range(16)]
    spots = [(rng.uniform(-0.99 * L, 0.99 * L), rng.uniform(-0.99 * L, 0.99 * L), 0.0) for _ in range(1000)]
    report = well.verify(gordon, spots)
    failed = [n for n, c in report["checks"].items() if not c["passed"]]
    assert report["passed"], failed

    packet = wavespin.PacketState(10e-9)
    tc = packet.decoherence_time
    assert abs(tc / 8.638e-13 - 1) < 5e-3
    assert abs(packet.width_ratio(tc) - math.sqrt(2)) < 1e-3
    d = packet.width
    points = ball_points(rng, 100, 3 * d)
    overlap, err = packet.oracle_agreement(points, 0.5 * tc, 24)
    assert 1 - overlap < 1e-6, overlap
    a = packet.wavefunction(d, 0.0, 0.0, tc)
    b = packet.superposition(d, 0.0, 0.0, tc, 24)
    assert max(abs(x - y) for x, y in zip(a, b)) < 1e-6 * max(abs(x) for x in a)

    try:
        wavespin.PacketState(1e-12)
    except ValueError as e:
        assert "Compton" in str(e)
    else:
        raise AssertionError("sub-Compton width should raise")

    print("wavespin smoke test passed")


if __name__ == "__main__":
    main()
