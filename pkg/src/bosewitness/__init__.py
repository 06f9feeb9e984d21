"""Thermodynamic entanglement witnesses for the free Bose gas in a box."""

__version__ = "0.1.0"

from .constants import CODATA2018, PhysicalConstants, lookup_species, planck_units, reduced_units
from .errors import (
    BoseWitnessError,
    DivergentZeta,
    DomainError,
    NoFiniteCondensation,
    PhaseError,
    UnknownSpecies,
)
from .gas import (
    GasSpec,
    ModeSet,
    Phase,
    ThermoPoint,
    critical_temperature,
    discrete_grand_canonical,
    internal_energy,
    internal_energy_condensed,
    solve_fugacity,
    thermal_wavelength,
)
from .special import polylog, zeta
from .witness import (
    Measurement,
    Partition,
    Quantity,
    Verdict,
    WitnessReport,
    entanglement_length,
    lowest_separable_energy,
    max_witnessed_partition,
    transition_temperature,
    transition_temperature_fixed_density,
    verdict,
)
