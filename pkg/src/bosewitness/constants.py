"""Physical constants (CODATA 2018), particle species and Planck units.

Every formula in the package takes a ``constants`` argument defaulting to
:data:`CODATA2018`. Passing a modified copy (``dataclasses.replace``) is how
scaling laws such as ``T_trans ∝ ħ²`` are probed, and :func:`reduced_units`
gives the ħ = k_B = 1 system used throughout the tests.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError, UnknownSpecies


@dataclass(frozen=True)
class PhysicalConstants:
    hbar: float  # J s
    boltzmann: float  # J / K
    atomic_mass_unit: float  # kg
    speed_of_light: float  # m / s
    gravitational_constant: float  # m^3 / (kg s^2)
    planck_mass: float  # kg
    planck_length: float  # m
    planck_temperature: float  # K

    def __post_init__(self):
        for name, value in self.__dict__.items():
            if not value > 0:
                raise DomainError(f"constant {name} must be positive, got {value!r}")


CODATA2018 = PhysicalConstants(
    hbar=1.054571817e-34,
    boltzmann=1.380649e-23,
    atomic_mass_unit=1.66053906660e-27,
    speed_of_light=299792458.0,
    gravitational_constant=6.67430e-11,
    planck_mass=2.176434e-8,
    planck_length=1.616255e-35,
    planck_temperature=1.416784e32,
)


def reduced_units(hbar: float = 1.0, boltzmann: float = 1.0) -> PhysicalConstants:
    """Natural-unit constants with c = G = 1 (so all Planck quantities are 1)."""
    return PhysicalConstants(
        hbar=hbar,
        boltzmann=boltzmann,
        atomic_mass_unit=1.0,
        speed_of_light=1.0,
        gravitational_constant=1.0,
        planck_mass=math.sqrt(hbar),
        planck_length=math.sqrt(hbar),
        planck_temperature=math.sqrt(hbar) / boltzmann,
    )


@dataclass(frozen=True)
class PlanckUnits:
    planck_mass: float
    planck_length: float
    planck_temperature: float


def planck_units(constants: PhysicalConstants = CODATA2018) -> PlanckUnits:
    """Planck mass, length and temperature derived from ħ, c, G and k_B.

    These are recomputed rather than read from the stored fields, so the
    stored CODATA values act as a consistency check.
    """
    hbar, c, G = constants.hbar, constants.speed_of_light, constants.gravitational_constant
    mass = math.sqrt(hbar * c / G)
    return PlanckUnits(
        planck_mass=mass,
        planck_length=math.sqrt(hbar * G / c**3),
        planck_temperature=mass * c**2 / constants.boltzmann,
    )


@dataclass(frozen=True)
class ParticleSpecies:
    name: str
    mass: float  # kg

    def __post_init__(self):
        if not self.mass > 0:
            raise DomainError(f"species mass must be positive, got {self.mass!r}")


# atomic masses in u (AME 2016 / CODATA)
_ATOMIC_MASSES = {
    "hydrogen-1": 1.00782503,
    "helium-4": 4.00260325,
    "lithium-7": 7.01600344,
    "sodium-23": 22.98976928,
    "potassium-39": 38.96370649,
    "rubidium-87": 86.90918053,
}


def species_names() -> list[str]:
    return sorted(_ATOMIC_MASSES)


def lookup_species(name: str, constants: PhysicalConstants = CODATA2018) -> ParticleSpecies:
    """Return the built-in species record for ``name`` (case-insensitive)."""
    key = name.strip().lower()
    try:
        mass_u = _ATOMIC_MASSES[key]
    except KeyError:
        raise UnknownSpecies(
            f"unknown species {name!r}; known: {', '.join(species_names())}"
        ) from None
    return ParticleSpecies(key, mass_u * constants.atomic_mass_unit)
