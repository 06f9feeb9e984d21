"""Energy and temperature entanglement witnesses for the free Bose gas.

Splitting the box into M equal ranges per axis, any state that is a mixture
of products over the M^d cells must pay at least the cell ground-state
energy per particle and per axis:

    E_lowest(M) = d N hbar^2 pi^2 M^2 / (2 m L^2).

Equating that floor with the condensed-branch internal energy of the gas
gives the temperature below which every thermal state is entangled across
the partition:

    T_trans(M) = 2 pi hbar^2 / (k_B m L^2) * (N M^2 pi / (2 zeta(1 + d/2)))^(2 / (2 + d)).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import NamedTuple

from .constants import CODATA2018, PhysicalConstants
from .errors import DomainError, NoFiniteCondensation
from .gas import GasSpec, critical_temperature, internal_energy_condensed
from .special import zeta


@dataclass(frozen=True)
class Partition:
    """M equal cuts along every axis (M^d cells). M may be real for interpolation."""

    M: float

    def __post_init__(self):
        if not self.M >= 1:
            raise DomainError(f"partition count must be >= 1, got {self.M!r}")

    @classmethod
    def fixed_density(cls, spec: GasSpec) -> Partition:
        """The partition with one particle per cell on average, M^d = N."""
        return cls(spec.particle_number ** (1 / spec.dimension))

    def cells(self, dimension: int) -> float:
        return self.M**dimension

    def subset_length(self, box_length: float) -> float:
        return box_length / self.M


class Verdict(enum.Enum):
    ENTANGLED = "Entangled"
    INCONCLUSIVE = "Inconclusive"


class Quantity(enum.Enum):
    ENERGY = "energy"
    TEMPERATURE = "temperature"


@dataclass(frozen=True)
class Measurement:
    kind: Quantity
    value: float

    def __post_init__(self):
        if not self.value > 0:
            raise DomainError(f"measured {self.kind.value} must be positive, got {self.value!r}")

    @classmethod
    def energy(cls, joules: float) -> Measurement:
        return cls(Quantity.ENERGY, joules)

    @classmethod
    def temperature(cls, kelvin: float) -> Measurement:
        return cls(Quantity.TEMPERATURE, kelvin)


@dataclass(frozen=True)
class WitnessReport:
    """Bound values for one (gas, partition) pair and, optionally, a verdict.

    ``t_crit`` is None where the gas has no finite condensation temperature.
    ``verdict`` and ``margin`` are None when no measurement was supplied;
    ``margin`` is measured / bound in the compared quantity.
    """

    e_lowest: float
    t_trans: float
    t_crit: float | None
    entanglement_length: float
    verdict: Verdict | None = None
    margin: float | None = None
    compared: Quantity | None = None


class PartitionEstimate(NamedTuple):
    M: float
    floor: int
    nearest: int


def lowest_separable_energy(
    spec: GasSpec, part: Partition, constants: PhysicalConstants = CODATA2018
) -> float:
    """Minimum energy of any state separable across ``part``: d N hbar^2 pi^2 M^2 / (2 m L^2)."""
    cell_ground = (constants.hbar * math.pi * part.M) ** 2 / (2 * spec.mass * spec.box_length**2)
    return spec.dimension * spec.particle_number * cell_ground


def _temperature_scale(spec: GasSpec, constants: PhysicalConstants) -> float:
    # 2 pi hbar^2 / (k_B m L^2)
    return 2 * math.pi * constants.hbar**2 / (constants.boltzmann * spec.mass * spec.box_length**2)


def transition_temperature(
    spec: GasSpec, part: Partition, constants: PhysicalConstants = CODATA2018
) -> float:
    """Temperature below which every thermal state is entangled across ``part``.

    Finite for every d >= 1 since only zeta(1 + d/2) enters. Grows with M,
    falls as 1/m and vanishes as hbar^2 in the classical limit.
    """
    d = spec.dimension
    bracket = spec.particle_number * part.M**2 * math.pi / (2 * zeta(1 + d / 2))
    return _temperature_scale(spec, constants) * bracket ** (2 / (2 + d))


def transition_temperature_fixed_density(
    spec: GasSpec, constants: PhysicalConstants = CODATA2018
) -> float:
    """T_trans at M^d = N, written through the density rho = N / L^d."""
    d = spec.dimension
    prefactor = (
        2 * math.pi * constants.hbar**2 * spec.density ** (2 / d)
        / (constants.boltzmann * spec.mass)
    )
    return prefactor * (math.pi / (2 * zeta(1 + d / 2))) ** (2 / (2 + d))


def max_witnessed_partition(
    spec: GasSpec, T: float, constants: PhysicalConstants = CODATA2018
) -> PartitionEstimate:
    """Invert T_trans(M) = T for M.

    Returns the real solution with its floor (the finest integer partition
    whose witness still fires at T) and its nearest integer. The real value
    may fall below 1 when T is colder than any partition can witness.
    """
    if not T > 0:
        raise DomainError(f"temperature must be positive, got {T}")
    d = spec.dimension
    x = T / _temperature_scale(spec, constants)
    m_real = math.sqrt(2 * zeta(1 + d / 2) / (spec.particle_number * math.pi) * x ** ((2 + d) / 2))
    return PartitionEstimate(m_real, math.floor(m_real), round(m_real))


def entanglement_length(spec: GasSpec, part: Partition) -> float:
    return part.subset_length(spec.box_length)


def _t_crit_or_none(spec: GasSpec, constants: PhysicalConstants) -> float | None:
    try:
        return critical_temperature(spec, constants)
    except NoFiniteCondensation:
        return None


def verdict(
    spec: GasSpec,
    part: Partition,
    measurement: Measurement | None = None,
    compare: Quantity | None = None,
    constants: PhysicalConstants = CODATA2018,
) -> WitnessReport:
    """Witness report, with a verdict when a measurement is given.

    By default the measurement is compared in its own quantity: energy
    against E_lowest, temperature against T_trans. ``compare=ENERGY`` with a
    temperature measurement first converts it to energy through the
    condensed-branch U(T). A value exactly at the bound is Inconclusive
    because separable states can reach it.
    """
    e_low = lowest_separable_energy(spec, part, constants)
    t_trans = transition_temperature(spec, part, constants)
    report = dict(
        e_lowest=e_low,
        t_trans=t_trans,
        t_crit=_t_crit_or_none(spec, constants),
        entanglement_length=entanglement_length(spec, part),
    )
    if measurement is None:
        return WitnessReport(**report)

    compare = compare or measurement.kind
    if compare is Quantity.TEMPERATURE:
        if measurement.kind is not Quantity.TEMPERATURE:
            raise DomainError("an energy measurement cannot be compared as a temperature")
        margin = measurement.value / t_trans
    elif measurement.kind is Quantity.TEMPERATURE:
        margin = internal_energy_condensed(measurement.value, spec, constants) / e_low
    else:
        margin = measurement.value / e_low
    outcome = Verdict.ENTANGLED if margin < 1 else Verdict.INCONCLUSIVE
    return WitnessReport(**report, verdict=outcome, margin=margin, compared=compare)
