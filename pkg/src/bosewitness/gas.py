"""Ideal Bose gas in a d-dimensional box.

Two descriptions live here. The continuum (thermodynamic-limit) equation of
state gives the BEC temperature and U(T) in closed form through zeta and
polylog values. The discrete-mode sums over the actual box levels
``eps_n = hbar^2 pi^2 |n|^2 / (2 m L^2)`` evaluate the grand-canonical ensemble
exactly at finite size, and serve as the reference the continuum formulas
converge to.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .constants import CODATA2018, PhysicalConstants, lookup_species
from .errors import (
    ConvergenceFailure,
    CutoffTooSmall,
    DivergentZeta,
    DomainError,
    NoFiniteCondensation,
    PhaseError,
)
from .special import polylog_log, zeta

# included levels satisfy eps_n - eps_ground <= MODE_CUTOFF_KT * k_B T
MODE_CUTOFF_KT = 40.0
TAIL_WEIGHT_LIMIT = 1e-16


@dataclass(frozen=True)
class GasSpec:
    """A free Bose gas: dimension, box length (m), particle mass (kg), mean N."""

    dimension: int
    box_length: float
    mass: float
    particle_number: float

    def __post_init__(self):
        if self.dimension not in (1, 2, 3):
            raise DomainError(f"dimension must be 1, 2 or 3, got {self.dimension!r}")
        if not self.box_length > 0:
            raise DomainError(f"box length must be positive, got {self.box_length!r}")
        if not self.mass > 0:
            raise DomainError(f"mass must be positive, got {self.mass!r}")
        if not self.particle_number >= 1:
            raise DomainError(f"particle number must be >= 1, got {self.particle_number!r}")

    @classmethod
    def for_species(cls, species: str, dimension: int, box_length: float, particle_number: float):
        return cls(dimension, box_length, lookup_species(species).mass, particle_number)

    @property
    def volume(self) -> float:
        return self.box_length**self.dimension

    @property
    def density(self) -> float:
        return self.particle_number / self.volume


class Phase(enum.Enum):
    CONDENSED = "condensed"
    NORMAL = "normal"


@dataclass(frozen=True)
class ThermoPoint:
    temperature: float
    fugacity: float
    chemical_potential: float
    internal_energy: float
    phase: Phase


def thermal_wavelength(T: float, m: float, constants: PhysicalConstants = CODATA2018) -> float:
    """Thermal de Broglie wavelength sqrt(2 pi hbar^2 / (m k_B T))."""
    if not (T > 0 and m > 0):
        raise DomainError(f"thermal wavelength needs T > 0 and m > 0, got T={T}, m={m}")
    return math.sqrt(2 * math.pi * constants.hbar**2 / (m * constants.boltzmann * T))


def critical_temperature(spec: GasSpec, constants: PhysicalConstants = CODATA2018) -> float:
    """BEC temperature 2 pi hbar^2 rho^(2/d) / (k_B m zeta(d/2)^(2/d)).

    Raises
    ------
    NoFiniteCondensation
        For d = 1, 2, where zeta(d/2) diverges and the ideal gas does not
        condense at any finite temperature in the thermodynamic limit.
    """
    d = spec.dimension
    try:
        z = zeta(d / 2)
    except DivergentZeta:
        raise NoFiniteCondensation(
            f"no finite BEC temperature in d = {d}: zeta({d}/2) diverges"
        ) from None
    return (
        2
        * math.pi
        * constants.hbar**2
        * spec.density ** (2 / d)
        / (constants.boltzmann * spec.mass * z ** (2 / d))
    )


def _occupation_scale(T: float, spec: GasSpec, constants: PhysicalConstants) -> float:
    """V_d / lambda_T^d, the number of thermal cells in the box."""
    return (spec.box_length / thermal_wavelength(T, spec.mass, constants)) ** spec.dimension


def internal_energy_condensed(
    T: float, spec: GasSpec, constants: PhysicalConstants = CODATA2018
) -> float:
    """Condensed-branch (mu = 0) energy (d/2) k_B T zeta(1 + d/2) V_d / lambda_T^d.

    No phase guard is applied: this is the expression the transition
    temperature is derived from, and it is evaluated above T_crit as well.
    """
    d = spec.dimension
    return 0.5 * d * constants.boltzmann * T * zeta(1 + d / 2) * _occupation_scale(T, spec, constants)


def _solve_log_fugacity(target: float, order: float) -> float:
    """Return mu = ln z with Li_order(z) = target, by bisection on ln(-mu)."""
    if order == 1:
        # Li_1(z) = -ln(1 - z) inverts exactly; underflows to -0.0 when 1 - z < 1e-308
        return math.log1p(-math.exp(-target))
    # Li(z) <= z / (1 - z) puts the root at or above z = target / (1 + target);
    # Li(z) >= z puts it at or below z = target.
    t_hi = math.log1p(1 / target)
    t_lo = -math.log(target) if target < 1 else 5e-324
    if t_lo <= 0:
        t_lo = 5e-324
    if polylog_log(order, -t_lo) < target:
        raise DomainError(
            f"degeneracy rho*lambda^d = {target:.6g} is beyond the resolvable fugacity range"
        )
    a, b = math.log(t_lo), math.log(t_hi)
    for _ in range(400):
        mid = 0.5 * (a + b)
        if polylog_log(order, -math.exp(mid)) > target:
            a = mid
        else:
            b = mid
        if b - a < 1e-16:
            break
    return -math.exp(0.5 * (a + b))


def solve_fugacity(T: float, spec: GasSpec, constants: PhysicalConstants = CODATA2018) -> ThermoPoint:
    """Normal-phase state: solve rho lambda_T^d = Li_{d/2}(z) for the fugacity.

    Raises
    ------
    PhaseError
        In d = 3 at or below the condensation temperature, where no z < 1
        satisfies the equation of state.
    """
    if not T > 0:
        raise DomainError(f"temperature must be positive, got {T}")
    d = spec.dimension
    if d == 3:
        tc = critical_temperature(spec, constants)
        if T <= tc:
            raise PhaseError(f"T = {T:.6g} K is not above T_crit = {tc:.6g} K")
    cells = _occupation_scale(T, spec, constants)
    target = spec.particle_number / cells
    mu_red = _solve_log_fugacity(target, d / 2)
    kT = constants.boltzmann * T
    energy = 0.5 * d * kT * cells * polylog_log(1 + d / 2, mu_red)
    return ThermoPoint(T, math.exp(mu_red), kT * mu_red, energy, Phase.NORMAL)


def thermo_point(T: float, spec: GasSpec, constants: PhysicalConstants = CODATA2018) -> ThermoPoint:
    """Continuum state at T, dispatching on the phase (T = T_crit is condensed)."""
    if not T > 0:
        raise DomainError(f"temperature must be positive, got {T}")
    if spec.dimension == 3 and T <= critical_temperature(spec, constants):
        u = internal_energy_condensed(T, spec, constants)
        return ThermoPoint(T, 1.0, 0.0, u, Phase.CONDENSED)
    return solve_fugacity(T, spec, constants)


def internal_energy(T: float, spec: GasSpec, constants: PhysicalConstants = CODATA2018) -> float:
    """Continuum U(T): condensed branch up to T_crit, normal phase above."""
    return thermo_point(T, spec, constants).internal_energy


# ---------------------------------------------------------------------------
# discrete box levels


def _square_sum_counts(dimension: int, max_index: int, q_max: int) -> np.ndarray:
    """counts[q] = #{n in [1, max_index]^d : |n|^2 = q} for q <= q_max."""
    squares = np.arange(1, max_index + 1, dtype=np.int64) ** 2
    squares = squares[squares <= q_max]
    counts = np.zeros(q_max + 1, dtype=np.int64)
    counts[squares] = 1
    for _ in range(dimension - 1):
        nxt = np.zeros_like(counts)
        for s in squares:
            nxt[s:] += counts[: q_max + 1 - s]
        counts = nxt
    return counts


@dataclass(frozen=True)
class ModeSet:
    """Single-particle box levels, grouped by |n|^2 with their degeneracies.

    ``energies`` is ascending; ``excluded_energy`` is the lowest level that
    was left out, which bounds the truncated Boltzmann tail.
    """

    dimension: int
    max_index: int
    unit_energy: float
    energies: np.ndarray
    degeneracies: np.ndarray
    excluded_energy: float

    @property
    def ground_energy(self) -> float:
        return float(self.energies[0])

    @property
    def count(self) -> int:
        return int(self.degeneracies.sum())

    @classmethod
    def build(
        cls,
        spec: GasSpec,
        max_index: int,
        max_square: int | None = None,
        constants: PhysicalConstants = CODATA2018,
    ) -> ModeSet:
        """All levels with 1 <= n_i <= max_index, optionally also |n|^2 <= max_square."""
        d = spec.dimension
        if max_index < 1:
            raise DomainError("max_index must be >= 1")
        unit = (constants.hbar * math.pi) ** 2 / (2 * spec.mass * spec.box_length**2)
        box_q = d * max_index**2
        q_max = box_q if max_square is None else min(max_square, box_q)
        if q_max < d:
            raise DomainError("cutoff excludes the ground state")
        counts = _square_sum_counts(d, max_index, q_max)
        q = np.nonzero(counts)[0]
        # lowest level outside the set
        excluded_q = (max_index + 1) ** 2 + (d - 1)
        if max_square is not None and max_square < box_q:
            excluded_q = min(excluded_q, max_square + 1)
        return cls(
            dimension=d,
            max_index=max_index,
            unit_energy=unit,
            energies=unit * q.astype(float),
            degeneracies=counts[q].astype(float),
            excluded_energy=unit * excluded_q,
        )

    @classmethod
    def for_temperature(
        cls, T: float, spec: GasSpec, constants: PhysicalConstants = CODATA2018
    ) -> ModeSet:
        """Levels within MODE_CUTOFF_KT * k_B T of the ground state."""
        d = spec.dimension
        unit = (constants.hbar * math.pi) ** 2 / (2 * spec.mass * spec.box_length**2)
        q_cut = d + MODE_CUTOFF_KT * constants.boltzmann * T / unit
        q_cut = int(math.floor(q_cut))
        max_index = max(1, math.isqrt(q_cut - (d - 1)))
        return cls.build(spec, max_index, max_square=q_cut, constants=constants)


def _bose_sums(x0: float, beta_gap: np.ndarray, g: np.ndarray) -> tuple[float, np.ndarray]:
    # occupations 1 / (exp(x0 + beta (eps - eps0)) - 1) with x0 = beta (eps0 - mu)
    with np.errstate(over="ignore"):
        occ = g / np.expm1(x0 + beta_gap)
    return float(occ.sum()), occ


def discrete_grand_canonical(
    T: float,
    spec: GasSpec,
    modes: ModeSet | None = None,
    constants: PhysicalConstants = CODATA2018,
) -> ThermoPoint:
    """Exact grand-canonical state over the box levels with mean particle number N.

    The chemical potential is found by bisection on ``x = (eps0 - mu) / k_B T``
    in log space over ``[1e-15 eps0 / k_B T, 1e3]``. The returned fugacity
    is measured from the ground level, ``exp((mu - eps0) / k_B T)``, so it
    stays in (0, 1); the phase flag follows the continuum T_crit.

    Raises
    ------
    CutoffTooSmall
        If the first excluded level still carries Boltzmann weight >= 1e-16
        relative to the ground level.
    """
    if not T > 0:
        raise DomainError(f"temperature must be positive, got {T}")
    if modes is None:
        modes = ModeSet.for_temperature(T, spec, constants)
    kT = constants.boltzmann * T
    eps0 = modes.ground_energy
    tail = math.exp(-(modes.excluded_energy - eps0) / kT)
    if tail >= TAIL_WEIGHT_LIMIT:
        raise CutoffTooSmall(
            f"first excluded level has Boltzmann weight {tail:.3g} >= {TAIL_WEIGHT_LIMIT:g}"
        )
    beta_gap = (modes.energies - eps0) / kT
    g = modes.degeneracies
    n_target = spec.particle_number

    lo, hi = math.log(1e-15 * eps0 / kT), math.log(1e3)
    if _bose_sums(math.exp(hi), beta_gap, g)[0] > n_target:
        raise ConvergenceFailure("chemical potential below the search bracket")
    if _bose_sums(math.exp(lo), beta_gap, g)[0] < n_target:
        raise ConvergenceFailure("chemical potential above the search bracket")
    for _ in range(300):
        mid = 0.5 * (lo + hi)
        n_mid, _ = _bose_sums(math.exp(mid), beta_gap, g)
        if n_mid > n_target:
            lo = mid
        else:
            hi = mid
        if abs(n_mid - n_target) <= 1e-12 * n_target or hi - lo < 1e-15:
            break
    x0 = math.exp(0.5 * (lo + hi))
    n_found, occ = _bose_sums(x0, beta_gap, g)
    if abs(n_found - n_target) > 1e-9 * n_target:
        raise ConvergenceFailure(f"particle number residual {n_found / n_target - 1:.3g}")
    mu = eps0 - kT * x0
    energy = math.fsum(occ * modes.energies)
    phase = Phase.NORMAL
    if spec.dimension == 3 and T <= critical_temperature(spec, constants):
        phase = Phase.CONDENSED
    return ThermoPoint(T, math.exp(-x0), mu, energy, phase)
