"""Acceptance criteria, one test each, printing a PASS/FAIL line per criterion.

Run with ``pytest tests/test_acceptance.py -v`` or directly as a script.
"""

import dataclasses
import math
import time

import numpy as np
import pytest

from bosewitness.constants import CODATA2018, reduced_units
from bosewitness.errors import NoFiniteCondensation
from bosewitness.gas import GasSpec, critical_temperature
from bosewitness.oracle import (
    DiscreteBox,
    box_spectrum,
    crossing_temperature,
    sample_product_states,
    separable_minimum_bruteforce,
    subbox_ground_energy,
    witness_gap_demo,
)
from bosewitness.scenario import KETTERLE, REPRODUCTIONS, parse_scenario
from bosewitness.special import polylog, zeta
from bosewitness.witness import (
    Partition,
    entanglement_length,
    lowest_separable_energy,
    max_witnessed_partition,
    transition_temperature,
    transition_temperature_fixed_density,
)

REDUCED = reduced_units()


def rel(a, b):
    return abs(a / b - 1)


def sodium():
    return parse_scenario(KETTERLE).gas


def random_specs(rng, count):
    for _ in range(count):
        yield GasSpec(
            int(rng.integers(1, 4)),
            float(10 ** rng.uniform(-6, -3)),
            float(10 ** rng.uniform(-27, -24)),
            float(10 ** rng.uniform(0, 9)),
        )


def criterion_1():
    start = time.perf_counter()
    gas = sodium()
    est = max_witnessed_partition(gas, 2e-5)
    t = transition_temperature(gas, Partition(185))
    elapsed = time.perf_counter() - start
    ok = est.nearest == 185 and 1.9e-5 <= t <= 2.1e-5 and elapsed < 1.0
    return ok, f"M_real={est.M:.4f} nearest={est.nearest} T_trans(185)={t:.4e} K in {elapsed:.3f} s"


def criterion_2():
    dl = entanglement_length(sodium(), Partition(185))
    ok = rel(dl, 1e-5 / 185) < 1e-12 and rel(dl, 5e-8) <= 0.1
    return ok, f"dL={dl:.4e} m, {100 * rel(dl, 5e-8):.1f}% from 5e-8"


def criterion_3():
    gas = sodium()
    ratio = transition_temperature_fixed_density(gas) / critical_temperature(gas)
    return abs(ratio - 2.02) <= 0.02, f"T_trans(M^3=N)/T_crit={ratio:.5f}"


def criterion_4():
    (row,) = REPRODUCTIONS["planck"]().records()
    t = row["t_trans(K)"]
    return 1e30 <= t <= 1e34, f"T_trans={t:.3e} K"


def criterion_5():
    rng = np.random.default_rng(5)
    start = time.perf_counter()
    worst = 0.0
    for spec in random_specs(rng, 20):
        part = Partition(float(rng.uniform(1, 1000)))
        found = crossing_temperature(spec, part, piecewise=False).condensed
        worst = max(worst, rel(found, transition_temperature(spec, part)))
    elapsed = time.perf_counter() - start
    return worst <= 1e-10 and elapsed < 5.0, f"max rel err {worst:.2e} over 20 specs in {elapsed:.2f} s"


def criterion_6():
    exact = math.pi**2 / 2
    fine = box_spectrum(DiscreteBox(1999, constants=REDUCED), 1).eigenvalues[0]
    coarse = box_spectrum(DiscreteBox(999, constants=REDUCED), 1).eigenvalues[0]
    ground_err = rel(fine, exact)
    order = (coarse - exact) / (fine - exact)
    box = DiscreteBox(2519, constants=REDUCED)
    full = subbox_ground_energy(box, 1)
    scaling = max(rel(subbox_ground_energy(box, M) / full, M**2) for M in range(1, 9))
    ok = ground_err <= 1e-5 and 3.5 <= order <= 4.5 and scaling <= 1e-3
    return ok, f"ground rel err {ground_err:.2e}, h^2 ratio {order:.4f}, M^2 scaling err {scaling:.2e}"


def criterion_7():
    rng = np.random.default_rng(7)
    box = DiscreteBox(839, constants=REDUCED)
    worst_excess = math.inf
    for M in range(1, 9):
        e0 = subbox_ground_energy(box, M)
        for N in range(1, 9):
            energies, _ = sample_product_states(box, M, N, 1000, rng)
            worst_excess = min(worst_excess, float(np.min(energies)) / (N * e0) - 1)
    refine = max(
        separable_minimum_bruteforce(box, M, N) / (N * subbox_ground_energy(box, M)) - 1
        for M, N in ((2, 1), (2, 3), (4, 8), (8, 8))
    )
    floor, ground = witness_gap_demo(DiscreteBox(2999, constants=REDUCED), 3, 5)
    gap = rel(floor / ground, 9)
    ok = worst_excess >= -1e-12 and -1e-12 <= refine <= 1e-6 and gap <= 1e-3
    return ok, (
        f"64 configs x 1000 samples, min excess {worst_excess:.2e}; "
        f"refined excess {refine:.2e}; gap ratio err (M=3) {gap:.2e}"
    )


def criterion_8():
    z2 = rel(zeta(2.0), math.pi**2 / 6)
    li1 = max(rel(polylog(1, z), -math.log1p(-z)) for z in np.linspace(0.02, 0.98, 20))
    # z d/dz Li_s(z) = Li_{s-1}(z), central difference in ln z
    deriv = 0.0
    h = 1e-5
    for s in (1.5, 2.0, 2.5, 3.5):
        for z in (0.1, 0.5, 0.9):
            fd = (polylog(s, z * math.exp(h)) - polylog(s, z * math.exp(-h))) / (2 * h)
            deriv = max(deriv, rel(fd, polylog(s - 1, z)))
    ok = z2 <= 1e-12 and li1 <= 1e-12 and deriv <= 1e-6
    return ok, f"zeta(2) {z2:.1e}, Li_1 {li1:.1e}, recurrence {deriv:.1e}"


def criterion_9():
    rng = np.random.default_rng(9)
    worst = 0.0
    monotone = True
    for spec in random_specs(rng, 200):
        part = Partition(float(rng.uniform(1, 1000)))
        e = lowest_separable_energy(spec, part)
        k = float(rng.uniform(0.5, 5))
        scaled = {
            "N": (dataclasses.replace(spec, particle_number=spec.particle_number * k), part, k),
            "M^2": (spec, Partition(part.M * k), k**2),
            "d": (dataclasses.replace(spec, dimension=1), part, 1 / spec.dimension),
            "1/m": (dataclasses.replace(spec, mass=spec.mass * k), part, 1 / k),
            "1/L^2": (dataclasses.replace(spec, box_length=spec.box_length * k), part, 1 / k**2),
        }
        for s2, p2, factor in scaled.values():
            worst = max(worst, rel(lowest_separable_energy(s2, p2) / e, factor))
        heavy_hbar = dataclasses.replace(CODATA2018, hbar=CODATA2018.hbar * k)
        t = transition_temperature(spec, part)
        worst = max(worst, rel(transition_temperature(spec, part, heavy_hbar) / t, k**2))
        monotone &= transition_temperature(spec, Partition(part.M * (1 + 1e-6))) > t
    trip = 0.0
    for spec in random_specs(rng, 200):
        M = float(rng.uniform(1, 1000))
        trip = max(trip, rel(max_witnessed_partition(spec, transition_temperature(spec, Partition(M))).M, M))
    ok = worst <= 1e-12 and monotone and trip <= 1e-10
    return ok, f"scaling err {worst:.1e}, monotone {monotone}, round trip {trip:.1e}"


def criterion_10():
    details = []
    ok = True
    for d in (1, 2):
        spec = GasSpec(d, 1e-5, 3.8e-26, 7e5)
        try:
            critical_temperature(spec)
            raised = False
        except NoFiniteCondensation:
            raised = True
        t = transition_temperature(spec, Partition.fixed_density(spec))
        ok &= raised and math.isfinite(t) and t > 0
        details.append(f"d={d}: raises {raised}, T_trans={t:.3e} K")
    return ok, "; ".join(details)


CRITERIA = [
    (1, "sodium partition M=185 and T_trans(185)", criterion_1),
    (2, "entanglement length L/185", criterion_2),
    (3, "fixed-density factor of two", criterion_3),
    (4, "Planck-scale order of magnitude", criterion_4),
    (5, "numeric crossing = closed form", criterion_5),
    (6, "discretized box spectrum", criterion_6),
    (7, "separable bound on product states", criterion_7),
    (8, "special functions", criterion_8),
    (9, "exact scaling laws", criterion_9),
    (10, "low-dimension behaviour", criterion_10),
]


def report(number, title, ok, detail):
    return f"criterion {number:2d} {'PASS' if ok else 'FAIL'}  {title}: {detail}"


@pytest.mark.parametrize("number, title, fn", CRITERIA, ids=[f"criterion_{n}" for n, _, _ in CRITERIA])
def test_criterion(number, title, fn, capsys):
    ok, detail = fn()
    with capsys.disabled():
        print("\n" + report(number, title, ok, detail))
    assert ok, detail


if __name__ == "__main__":
    results = [(n, t, *fn()) for n, t, fn in CRITERIA]
    for row in results:
        print(report(*row))
    raise SystemExit(0 if all(r[2] for r in results) else 1)
