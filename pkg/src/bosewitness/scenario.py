"""Scenario files, parameter sweeps and the packaged reproductions.

A scenario is one JSON object::

    {
      "gas": {"dimension": 3, "particle_number": 7e5, "box_length": "10um",
              "species": "sodium-23"},
      "partition": 185,
      "measurement": {"temperature": "10uK"},
      "sweep": {"variable": "M", "from": 1, "to": 400, "points": 400,
                "scale": "linear"}
    }

``partition`` may be ``"auto"`` (M^d = N). ``gas`` takes exactly one of
``species`` or ``mass``; ``measurement`` and ``sweep`` are optional.
"""

from __future__ import annotations

import dataclasses
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .constants import CODATA2018, lookup_species, planck_units
from .errors import BoseWitnessError, ParseError
from .gas import GasSpec, critical_temperature
from .records import Table
from .units import parse_quantity
from .witness import (
    Measurement,
    Partition,
    Quantity,
    max_witnessed_partition,
    transition_temperature,
    transition_temperature_fixed_density,
    verdict,
)

SWEEP_VARIABLES = ("M", "T", "N", "L", "m", "d")


@dataclass(frozen=True)
class Sweep:
    variable: str
    start: float
    stop: float
    points: int
    scale: str = "linear"

    def values(self) -> list:
        if self.scale == "log":
            vals = np.geomspace(self.start, self.stop, self.points)
        else:
            vals = np.linspace(self.start, self.stop, self.points)
        if self.variable == "d" or (
            self.variable == "M" and self.scale == "linear" and _integral(self.start, self.stop, self.points)
        ):
            return [int(round(v)) for v in vals]
        return [float(v) for v in vals]


def _integral(start, stop, points) -> bool:
    if points < 2:
        return float(start).is_integer()
    step = (stop - start) / (points - 1)
    return float(start).is_integer() and float(step).is_integer()


@dataclass(frozen=True)
class Scenario:
    gas: GasSpec
    species: str | None = None
    partition: float | str = "auto"
    measurement: Measurement | None = None
    compare: Quantity | None = None
    sweep: Sweep | None = None
    name: str = "scenario"

    def resolve_partition(self, gas: GasSpec | None = None) -> Partition:
        gas = gas or self.gas
        if self.partition == "auto":
            return Partition.fixed_density(gas)
        return Partition(self.partition)


# ---------------------------------------------------------------------------
# parsing


def _require(obj: dict, key: str, where: str):
    if key not in obj:
        raise ParseError(f"{where}: missing field '{key}'")
    return obj[key]


def _field(where: str, key: str, fn, value):
    try:
        return fn(value)
    except ParseError as exc:
        raise ParseError(f"{where}.{key}: {exc}") from None
    except (TypeError, ValueError) as exc:
        raise ParseError(f"{where}.{key}: invalid value {value!r} ({exc})") from None


def parse_scenario(doc: dict, name: str = "scenario") -> Scenario:
    if not isinstance(doc, dict):
        raise ParseError("scenario must be a JSON object")
    unknown = set(doc) - {"name", "gas", "partition", "measurement", "compare", "sweep"}
    if unknown:
        raise ParseError(f"unknown top-level field(s): {', '.join(sorted(unknown))}")
    gas = _require(doc, "gas", "scenario")
    if not isinstance(gas, dict):
        raise ParseError("gas: must be an object")

    has_species, has_mass = "species" in gas, "mass" in gas
    if has_species == has_mass:
        raise ParseError("gas: exactly one of 'species' or 'mass' is required (field 'mass')")
    species = None
    if has_species:
        species = gas["species"]
        try:
            mass = lookup_species(species).mass
        except BoseWitnessError as exc:
            raise ParseError(f"gas.species: {exc}") from None
    else:
        mass = _field("gas", "mass", lambda v: parse_quantity(v, "mass"), gas["mass"])

    dimension = _field("gas", "dimension", int, _require(gas, "dimension", "gas"))
    box_length = _field(
        "gas", "box_length", lambda v: parse_quantity(v, "length"), _require(gas, "box_length", "gas")
    )
    particle_number = _field("gas", "particle_number", float, _require(gas, "particle_number", "gas"))
    try:
        spec = GasSpec(dimension, box_length, mass, particle_number)
    except BoseWitnessError as exc:
        raise ParseError(f"gas: {exc}") from None

    partition = doc.get("partition", "auto")
    if partition != "auto":
        partition = _field("scenario", "partition", float, partition)
        if not partition >= 1:
            raise ParseError("scenario.partition: must be >= 1 or 'auto'")

    measurement = None
    if "measurement" in doc:
        m = doc["measurement"]
        if not isinstance(m, dict) or len(m) != 1 or not set(m) <= {"temperature", "energy"}:
            raise ParseError("measurement: give exactly one of 'temperature' or 'energy'")
        ((kind, raw),) = m.items()
        value = _field("measurement", kind, lambda v: parse_quantity(v, kind), raw)
        try:
            measurement = Measurement(Quantity(kind), value)
        except BoseWitnessError as exc:
            raise ParseError(f"measurement.{kind}: {exc}") from None

    compare = None
    if "compare" in doc:
        compare = _field("scenario", "compare", Quantity, doc["compare"])

    sweep = None
    if "sweep" in doc:
        s = doc["sweep"]
        if not isinstance(s, dict):
            raise ParseError("sweep: must be an object")
        variable = _require(s, "variable", "sweep")
        if variable not in SWEEP_VARIABLES:
            raise ParseError(f"sweep.variable: must be one of {', '.join(SWEEP_VARIABLES)}")
        scale = s.get("scale", "linear")
        if scale not in ("linear", "log"):
            raise ParseError("sweep.scale: must be 'linear' or 'log'")
        quantity = {"T": "temperature", "L": "length", "m": "mass"}.get(variable)
        conv = (lambda v: parse_quantity(v, quantity)) if quantity else float
        start = _field("sweep", "from", conv, _require(s, "from", "sweep"))
        stop = _field("sweep", "to", conv, _require(s, "to", "sweep"))
        points = _field("sweep", "points", int, _require(s, "points", "sweep"))
        if points < 1:
            raise ParseError("sweep.points: must be >= 1")
        if scale == "log" and not (start > 0 and stop > 0):
            raise ParseError("sweep: log scale needs positive bounds")
        sweep = Sweep(variable, start, stop, points, scale)

    return Scenario(
        gas=spec,
        species=species,
        partition=partition,
        measurement=measurement,
        compare=compare,
        sweep=sweep,
        name=str(doc.get("name", name)),
    )


def load_scenario(path: str | Path) -> Scenario:
    path = Path(path)
    try:
        doc = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    except OSError as exc:
        raise ParseError(f"{path}: {exc.strerror}") from None
    try:
        return parse_scenario(doc, name=path.stem)
    except ParseError as exc:
        raise ParseError(f"{path}: {exc}") from None


# ---------------------------------------------------------------------------
# evaluation

REPORT_COLUMNS = [
    ("dimension", "1"),
    ("particle_number", "1"),
    ("box_length", "m"),
    ("mass", "kg"),
    ("M", "1"),
    ("measured_temperature", "K"),
    ("measured_energy", "J"),
    ("e_lowest", "J"),
    ("t_trans", "K"),
    ("t_crit", "K"),
    ("entanglement_length", "m"),
    ("verdict", None),
    ("margin", "1"),
]


def evaluate(
    gas: GasSpec,
    part: Partition,
    measurement: Measurement | None = None,
    compare: Quantity | None = None,
) -> dict:
    report = verdict(gas, part, measurement, compare)
    row = {
        "dimension": gas.dimension,
        "particle_number": gas.particle_number,
        "box_length": gas.box_length,
        "mass": gas.mass,
        "M": part.M,
        "e_lowest": report.e_lowest,
        "t_trans": report.t_trans,
        "t_crit": report.t_crit,
        "entanglement_length": report.entanglement_length,
        "verdict": report.verdict,
        "margin": report.margin,
    }
    if measurement is not None:
        key = "measured_temperature" if measurement.kind is Quantity.TEMPERATURE else "measured_energy"
        row[key] = measurement.value
    return row


def _sweep_point(scn: Scenario, value) -> dict:
    gas, partition, measurement = scn.gas, scn.partition, scn.measurement
    var = scn.sweep.variable
    if var == "M":
        partition = value
    elif var == "T":
        measurement = Measurement.temperature(value)
    elif var == "N":
        gas = dataclasses.replace(gas, particle_number=value)
    elif var == "L":
        gas = dataclasses.replace(gas, box_length=value)
    elif var == "m":
        gas = dataclasses.replace(gas, mass=value)
    elif var == "d":
        gas = dataclasses.replace(gas, dimension=int(value))
    part = Partition.fixed_density(gas) if partition == "auto" else Partition(partition)
    return evaluate(gas, part, measurement, scn.compare)


def run_scenario(scn: Scenario, jobs: int = 1) -> Table:
    """Evaluate a scenario into a Table, one row per sweep point (or a single row).

    With ``jobs > 1`` sweep rows are computed on a thread pool; rows keep the
    sweep order either way.
    """
    table = Table(list(REPORT_COLUMNS))
    table.meta = {"scenario": scn.name}
    if scn.species:
        table.meta["species"] = scn.species
    if scn.sweep is None:
        table.add(evaluate(scn.gas, scn.resolve_partition(), scn.measurement, scn.compare))
        return table
    values = scn.sweep.values()
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(lambda v: _sweep_point(scn, v), values))
    else:
        rows = [_sweep_point(scn, v) for v in values]
    for row in rows:
        table.add(row)
    table.meta["sweep"] = f"{scn.sweep.variable} {scn.sweep.scale} x{scn.sweep.points}"
    return table


# ---------------------------------------------------------------------------
# packaged reproductions

KETTERLE = {
    "name": "ketterle",
    "gas": {
        "dimension": 3,
        "particle_number": 7e5,
        "box_length": "10um",
        "species": "sodium-23",
    },
    "partition": "auto",
    "measurement": {"temperature": "20uK"},
}
KETTERLE_ONSET_TEMPERATURE = 2e-5


def reproduce_ketterle() -> Table:
    """Sodium BEC numbers: the partition whose T_trans equals the onset temperature."""
    scn = parse_scenario(KETTERLE)
    gas = scn.gas
    est = max_witnessed_partition(gas, KETTERLE_ONSET_TEMPERATURE)
    part = Partition(est.nearest)
    t_fixed = transition_temperature_fixed_density(gas)
    t_crit = critical_temperature(gas)
    table = Table(
        [
            ("onset_temperature", "K"),
            ("M_real", "1"),
            ("M", "1"),
            ("t_trans", "K"),
            ("entanglement_length", "m"),
            ("mean_spacing", "m"),
            ("e_lowest", "J"),
            ("t_crit", "K"),
            ("t_trans_fixed_density", "K"),
            ("ratio_fixed_density_to_crit", "1"),
        ],
        meta={"scenario": "ketterle", "species": "sodium-23"},
    )
    row = evaluate(gas, part)
    table.add(
        {
            "onset_temperature": KETTERLE_ONSET_TEMPERATURE,
            "M_real": est.M,
            "M": est.nearest,
            "t_trans": transition_temperature(gas, part),
            "entanglement_length": row["entanglement_length"],
            "mean_spacing": gas.density ** (-1 / gas.dimension),
            "e_lowest": row["e_lowest"],
            "t_crit": t_crit,
            "t_trans_fixed_density": t_fixed,
            "ratio_fixed_density_to_crit": t_fixed / t_crit,
        }
    )
    return table


PLANCK_PARTICLES = 1e6


def reproduce_planck() -> Table:
    """Planck-mass bosons at Planck density, cells one Planck length wide."""
    pu = planck_units(CODATA2018)
    side = PLANCK_PARTICLES ** (1 / 3) * pu.planck_length
    gas = GasSpec(3, side, pu.planck_mass, PLANCK_PARTICLES)
    part = Partition.fixed_density(gas)
    t_trans = transition_temperature(gas, part)
    table = Table(
        [
            ("mass", "kg"),
            ("density", "m^-3"),
            ("entanglement_length", "m"),
            ("t_trans", "K"),
            ("t_trans_fixed_density", "K"),
            ("planck_temperature", "K"),
            ("ratio_to_planck_temperature", "1"),
        ],
        meta={"scenario": "planck"},
    )
    table.add(
        {
            "mass": gas.mass,
            "density": gas.density,
            "entanglement_length": part.subset_length(gas.box_length),
            "t_trans": t_trans,
            "t_trans_fixed_density": transition_temperature_fixed_density(gas),
            "planck_temperature": pu.planck_temperature,
            "ratio_to_planck_temperature": t_trans / pu.planck_temperature,
        }
    )
    return table


def reproduce_dimensions() -> Table:
    """Fixed-density T_trans against T_crit for d = 1, 2, 3 at the sodium parameters."""
    base = parse_scenario(KETTERLE).gas
    table = Table(
        [
            ("dimension", "1"),
            ("density", "m^-d"),
            ("t_trans_fixed_density", "K"),
            ("t_crit", "K"),
            ("ratio_fixed_density_to_crit", "1"),
        ],
        meta={"scenario": "dimensions-table", "species": "sodium-23"},
    )
    for d in (1, 2, 3):
        gas = dataclasses.replace(base, dimension=d)
        t_fixed = transition_temperature_fixed_density(gas)
        t_crit = evaluate(gas, Partition(1))["t_crit"]
        table.add(
            {
                "dimension": d,
                "density": gas.density,
                "t_trans_fixed_density": t_fixed,
                "t_crit": t_crit,
                "ratio_fixed_density_to_crit": None if t_crit is None else t_fixed / t_crit,
            }
        )
    return table


REPRODUCTIONS = {
    "ketterle": reproduce_ketterle,
    "planck": reproduce_planck,
    "dimensions-table": reproduce_dimensions,
}
