"""Smoke tests for the python bindings; plain asserts, no test framework."""

import math
import sys

import ionnet


def approx(a, b, rel=1e-9):
    return abs(a - b) <= rel * max(abs(a), abs(b), 1e-300)


def main():
    # resource estimates
    t_fast = ionnet.cluster_time(1e3, 0.1, 0.1, 1e-6)
    assert abs(t_fast - 0.162) < 0.162 * 0.05, t_fast
    assert approx(ionnet.repeater_time(16, 1e-6, 0.1), 4e-5)
    assert approx(ionnet.bell_separation(1e-5), 2997.92458)
    assert approx(ionnet.atom_photon_success(0.5, 0.02, 0.2), 0.002)

    # ion chain statics
    positions = ionnet.equilibrium_positions(2)
    assert approx(positions[1], 0.25 ** (1.0 / 3.0), 1e-9)
    axial, transverse = ionnet.normal_mode_frequencies(3, 10.0)
    assert approx(axial[0], 1.0, 1e-9)
    assert approx(axial[1], math.sqrt(3.0), 1e-9)
    assert len(transverse) == 3

    prefactor, exponent, r2 = ionnet.spread_fit([5, 10, 15, 20, 25, 30])
    assert abs(exponent - 2.87) < 0.15, exponent
    assert r2 > 0.99

    # beamsplitter interference
    hom = ionnet.beamsplitter_number(1, 1)
    assert "|1,1" not in " ".join(hom)
    split = ionnet.beamsplitter_number(0, 1)
    assert approx(abs(split["|0,1"]), 1 / math.sqrt(2))

    # heralded gate on the balanced input
    r2c = 1 / math.sqrt(2)
    out = ionnet.type2_herald(r2c, r2c, r2c, r2c)
    assert approx(out["probability"], 0.25)
    state = out["atomic_state"]
    assert approx(abs(state["ud"]), r2c) and approx(abs(state["du"]), r2c)

    # light collection
    f_star, p_star = ionnet.optimize_focus(r2c, -1j * r2c)
    assert 0.45 <= p_star <= 0.52, p_star
    assert abs(f_star - 0.54) < 0.02
    assert ionnet.fiber_overlap_numeric(0, 1.0, r2c, -1j * r2c) < 1e-10
    coop, p_c = ionnet.cavity_collection(1.0, 1.0, 1.0, 0.9, 1.0)
    assert approx(coop, 1.0) and approx(p_c, 0.4)

    # radiation pattern forward normalization
    curve = ionnet.radiation_pattern(3, 600.0, grid=256)
    assert max(v for _, v in curve) == 1.0

    print("python smoke tests passed")
    return 0


if __name__ == "__main__":
    sys.exit(main())
