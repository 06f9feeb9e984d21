"""The oracle suite behind ``bosewitness verify``.

Each check compares a closed form against an independent numerical route
and reports the observed deviation next to its tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .constants import reduced_units
from .gas import GasSpec, ModeSet, critical_temperature, discrete_grand_canonical, internal_energy
from .oracle import (
    DiscreteBox,
    box_spectrum,
    crossing_temperature,
    sample_product_states,
    separable_minimum_bruteforce,
    subbox_ground_energy,
    witness_gap_demo,
)
from .records import Table
from .special import polylog, zeta
from .witness import Partition, transition_temperature

REDUCED = reduced_units()


@dataclass(frozen=True)
class Check:
    name: str
    value: float
    tolerance: float
    passed: bool
    detail: str = ""


def _rel(a: float, b: float) -> float:
    return float(abs(a / b - 1))


def check_zeta() -> Check:
    err = _rel(zeta(2.0), math.pi**2 / 6)
    return Check("zeta(2) = pi^2/6", err, 1e-12, err <= 1e-12)


def check_li1() -> Check:
    zs = np.linspace(0.02, 0.98, 20)
    err = max(_rel(polylog(1, z), -math.log1p(-z)) for z in zs)
    return Check("Li_1(z) = -ln(1-z), 20 points", err, 1e-12, err <= 1e-12)


def check_ground_energy() -> Check:
    box = DiscreteBox(1999, constants=REDUCED)
    err = _rel(box_spectrum(box, 1).eigenvalues[0], math.pi**2 / 2)
    return Check("box ground energy, 2000 intervals", err, 1e-5, err <= 1e-5)


def check_discrete_closed_form() -> Check:
    box = DiscreteBox(1999, constants=REDUCED)
    spec = box_spectrum(box, 5)
    err = max(_rel(v, box.exact_discrete_level(i + 1)) for i, v in enumerate(spec.eigenvalues))
    return Check("Sturm bisection vs exact discrete spectrum", err, 1e-12, err <= 1e-12)


def check_convergence_order() -> Check:
    exact = math.pi**2 / 2
    coarse = box_spectrum(DiscreteBox(999, constants=REDUCED), 1).eigenvalues[0] - exact
    fine = box_spectrum(DiscreteBox(1999, constants=REDUCED), 1).eigenvalues[0] - exact
    ratio = float(coarse / fine)
    return Check("O(h^2) convergence ratio", ratio, 0.5, 3.5 <= ratio <= 4.5, "expected in [3.5, 4.5]")


def check_subbox_scaling() -> Check:
    box = DiscreteBox(2519, constants=REDUCED)
    full = subbox_ground_energy(box, 1)
    err = max(_rel(subbox_ground_energy(box, M) / full, M**2) for M in range(1, 9))
    return Check("cell ground energy ~ M^2, M <= 8", err, 1e-3, err <= 1e-3)


def check_variational(samples: int = 1000) -> Check:
    rng = np.random.default_rng(2024)
    box = DiscreteBox(839, constants=REDUCED)
    worst = math.inf
    for M in (1, 2, 4, 8):
        e0 = subbox_ground_energy(box, M)
        for N in (1, 3, 8):
            energies, _ = sample_product_states(box, M, N, samples, rng)
            worst = min(worst, float(np.min(energies / (N * e0))) - 1)
    return Check(
        "product states never beat N E_0^cell", worst, -1e-9, worst >= -1e-9, "min relative excess"
    )


def check_bruteforce() -> Check:
    box = DiscreteBox(839, constants=REDUCED)
    err = 0.0
    for M, N in ((2, 3), (4, 8), (8, 5)):
        found = separable_minimum_bruteforce(box, M, N, samples=8, refine_steps=30)
        err = max(err, found / (N * subbox_ground_energy(box, M)) - 1)
    return Check("brute-force minimum reaches the floor", err, 1e-6, 0 <= err + 1e-12 and err <= 1e-6)


def check_gap() -> Check:
    floor, ground = witness_gap_demo(DiscreteBox(2999, constants=REDUCED), 3, 5)
    err = _rel(floor / ground, 9)
    return Check("witness gap ratio -> M^2 (M = 3)", err, 1e-3, err <= 1e-3)


def check_crossing(count: int = 20) -> Check:
    rng = np.random.default_rng(7)
    err = 0.0
    for _ in range(count):
        spec = GasSpec(
            int(rng.integers(1, 4)),
            float(10 ** rng.uniform(-6, -4)),
            float(10 ** rng.uniform(-27, -25)),
            float(10 ** rng.uniform(3, 7)),
        )
        part = Partition(int(rng.integers(1, 1001)))
        found = crossing_temperature(spec, part, piecewise=False).condensed
        err = max(err, _rel(found, transition_temperature(spec, part)))
    return Check(f"numeric crossing vs closed form, {count} specs", err, 1e-10, err <= 1e-10)


def check_discrete_gas() -> Check:
    gaps = []
    for side in (10.0, 20.0, 40.0):
        spec = GasSpec(3, side, 1.0, side**3)
        T = 2 * critical_temperature(spec, REDUCED)
        modes = ModeSet.for_temperature(T, spec, REDUCED)
        exact = discrete_grand_canonical(T, spec, modes, REDUCED).internal_energy
        gaps.append(_rel(exact, internal_energy(T, spec, REDUCED)))
    ok = gaps[0] > gaps[1] > gaps[2] and gaps[2] < 0.01
    return Check("discrete-mode U -> continuum U (L, 2L, 4L)", gaps[2], 0.01, ok)


ALL_CHECKS = (
    check_zeta,
    check_li1,
    check_ground_energy,
    check_discrete_closed_form,
    check_convergence_order,
    check_subbox_scaling,
    check_variational,
    check_bruteforce,
    check_gap,
    check_crossing,
    check_discrete_gas,
)


def run_checks() -> list[Check]:
    return [fn() for fn in ALL_CHECKS]


def checks_table(checks: list[Check]) -> Table:
    table = Table([("check", None), ("value", "1"), ("tolerance", "1"), ("passed", None), ("note", None)])
    for c in checks:
        table.add(
            {"check": c.name, "value": c.value, "tolerance": c.tolerance, "passed": c.passed, "note": c.detail}
        )
    return table
