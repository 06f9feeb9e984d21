"""Command-line interface: ``bosewitness <subcommand> ...``.

Exit codes: 0 success, 1 domain error, 2 usage error. ``verdict`` with
``--exit-on-verdict`` exits 0 for Entangled and 3 for Inconclusive.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .constants import CODATA2018, lookup_species, planck_units, species_names
from .errors import BoseWitnessError, ParseError
from .gas import GasSpec, critical_temperature
from .records import FORMATS, Table, default_meta, render
from .scenario import (
    REPORT_COLUMNS,
    REPRODUCTIONS,
    SWEEP_VARIABLES,
    Scenario,
    Sweep,
    evaluate,
    load_scenario,
    run_scenario,
)
from .units import parse_quantity
from .witness import (
    Measurement,
    Partition,
    Quantity,
    Verdict,
    lowest_separable_energy,
    max_witnessed_partition,
    transition_temperature,
)

EXIT_OK, EXIT_DOMAIN, EXIT_USAGE, EXIT_INCONCLUSIVE = 0, 1, 2, 3


def _quantity(kind):
    def convert(text):
        try:
            return parse_quantity(text, kind)
        except ParseError as exc:
            raise argparse.ArgumentTypeError(str(exc)) from None

    convert.__name__ = kind
    return convert


def _partition_arg(text):
    if text == "auto":
        return text
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"M must be a number or 'auto', got {text!r}") from None


def _output_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=sorted(FORMATS), default="table")
    p.add_argument("--out", type=Path, help="write to this file instead of stdout")
    p.add_argument("--no-meta", action="store_true", help="omit the metadata header")


def _gas_args(p: argparse.ArgumentParser, partition: bool = True) -> None:
    g = p.add_argument_group("gas")
    g.add_argument("--d", type=int, default=3, choices=(1, 2, 3), help="dimension (default 3)")
    g.add_argument("--N", type=float, required=True, help="mean particle number")
    g.add_argument("--L", type=_quantity("length"), required=True, help="box length, e.g. 10um")
    who = g.add_mutually_exclusive_group(required=True)
    who.add_argument("--species", help=f"one of: {', '.join(species_names())}")
    who.add_argument("--mass", type=_quantity("mass"), help="particle mass, e.g. 3.8e-26kg or 23u")
    if partition:
        g.add_argument("--M", type=_partition_arg, default="auto", help="cuts per axis or 'auto' (M^d = N)")


def _gas(args) -> GasSpec:
    mass = lookup_species(args.species).mass if args.species else args.mass
    return GasSpec(args.d, args.L, mass, args.N)


def _partition(args, gas: GasSpec) -> Partition:
    return Partition.fixed_density(gas) if args.M == "auto" else Partition(args.M)


def _measurement(args) -> Measurement | None:
    if getattr(args, "T", None) is not None:
        return Measurement.temperature(args.T)
    if getattr(args, "E", None) is not None:
        return Measurement.energy(args.E)
    return None


def _emit(table: Table, args, command: str) -> None:
    if not args.no_meta:
        table.meta = default_meta(command=command, **table.meta)
    text = render(table, args.format, include_meta=not args.no_meta)
    if args.out:
        args.out.write_text(text)
    else:
        sys.stdout.write(text)


def _single(columns, record, meta=None) -> Table:
    table = Table(columns, meta=dict(meta or {}))
    table.add(record)
    return table


def cmd_constants(args) -> int:
    c = CODATA2018
    pu = planck_units(c)
    table = Table([("name", None), ("value", None), ("unit", None)], meta={"dataset": "CODATA 2018"})
    for name, value, unit in (
        ("hbar", c.hbar, "J s"),
        ("boltzmann", c.boltzmann, "J/K"),
        ("atomic_mass_unit", c.atomic_mass_unit, "kg"),
        ("speed_of_light", c.speed_of_light, "m/s"),
        ("gravitational_constant", c.gravitational_constant, "m^3/(kg s^2)"),
        ("planck_mass", pu.planck_mass, "kg"),
        ("planck_length", pu.planck_length, "m"),
        ("planck_temperature", pu.planck_temperature, "K"),
    ):
        table.add({"name": name, "value": value, "unit": unit})
    for name in species_names():
        table.add({"name": f"mass[{name}]", "value": lookup_species(name).mass, "unit": "kg"})
    _emit(table, args, "constants")
    return EXIT_OK


def cmd_tcrit(args) -> int:
    gas = _gas(args)
    _emit(_single([("t_crit", "K")], {"t_crit": critical_temperature(gas)}), args, "tcrit")
    return EXIT_OK


def cmd_ttrans(args) -> int:
    gas = _gas(args)
    part = _partition(args, gas)
    rec = {"M": part.M, "t_trans": transition_temperature(gas, part)}
    _emit(_single([("M", "1"), ("t_trans", "K")], rec), args, "ttrans")
    return EXIT_OK


def cmd_elowest(args) -> int:
    gas = _gas(args)
    part = _partition(args, gas)
    rec = {"M": part.M, "e_lowest": lowest_separable_energy(gas, part)}
    _emit(_single([("M", "1"), ("e_lowest", "J")], rec), args, "elowest")
    return EXIT_OK


def cmd_invert_m(args) -> int:
    gas = _gas(args)
    est = max_witnessed_partition(gas, args.T)
    rec = {"temperature": args.T, "M_real": est.M, "M_floor": est.floor, "M_nearest": est.nearest}
    cols = [("temperature", "K"), ("M_real", "1"), ("M_floor", "1"), ("M_nearest", "1")]
    _emit(_single(cols, rec), args, "invert-m")
    return EXIT_OK


def cmd_verdict(args) -> int:
    gas = _gas(args)
    measurement = _measurement(args)
    compare = Quantity(args.compare) if args.compare else None
    row = evaluate(gas, _partition(args, gas), measurement, compare)
    _emit(_single(list(REPORT_COLUMNS), row), args, "verdict")
    if args.exit_on_verdict:
        return EXIT_OK if row["verdict"] is Verdict.ENTANGLED else EXIT_INCONCLUSIVE
    return EXIT_OK


def cmd_scan(args) -> int:
    gas = _gas(args)
    conv = {"T": _quantity("temperature"), "L": _quantity("length"), "m": _quantity("mass")}.get(
        args.var, float
    )
    try:
        start, stop = conv(args.start), conv(args.stop)
    except argparse.ArgumentTypeError as exc:
        raise ParseError(str(exc)) from None
    scn = Scenario(
        gas=gas,
        species=args.species,
        partition=args.M,
        measurement=_measurement(args),
        sweep=Sweep(args.var, start, stop, args.points, "log" if args.log else "linear"),
        name="scan",
    )
    _emit(run_scenario(scn, jobs=args.jobs), args, "scan")
    return EXIT_OK


def cmd_run(args) -> int:
    scn = load_scenario(args.scenario)
    _emit(run_scenario(scn, jobs=args.jobs), args, "run")
    return EXIT_OK


def cmd_verify(args) -> int:
    from .verify import checks_table, run_checks

    checks = run_checks()
    _emit(checks_table(checks), args, "verify")
    return EXIT_OK if all(c.passed for c in checks) else EXIT_DOMAIN


def cmd_reproduce(args) -> int:
    _emit(REPRODUCTIONS[args.name](), args, f"reproduce {args.name}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bosewitness",
        description="Entanglement witnesses for the ideal Bose gas in a box.",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("constants", help="physical constants, Planck units and species masses")
    _output_args(p)
    p.set_defaults(func=cmd_constants)

    p = sub.add_parser("tcrit", help="BEC critical temperature")
    _gas_args(p, partition=False)
    _output_args(p)
    p.set_defaults(func=cmd_tcrit)

    p = sub.add_parser("ttrans", help="entanglement transition temperature T_trans(M)")
    _gas_args(p)
    _output_args(p)
    p.set_defaults(func=cmd_ttrans)

    p = sub.add_parser("elowest", help="separable energy floor E_lowest(M)")
    _gas_args(p)
    _output_args(p)
    p.set_defaults(func=cmd_elowest)

    p = sub.add_parser("invert-m", help="finest partition witnessed at temperature T")
    _gas_args(p, partition=False)
    p.add_argument("--T", type=_quantity("temperature"), required=True)
    _output_args(p)
    p.set_defaults(func=cmd_invert_m)

    p = sub.add_parser("verdict", help="witness verdict for a measured T or E")
    _gas_args(p)
    meas = p.add_mutually_exclusive_group(required=True)
    meas.add_argument("--T", type=_quantity("temperature"), help="measured temperature")
    meas.add_argument("--E", type=_quantity("energy"), help="measured energy")
    p.add_argument("--compare", choices=[q.value for q in Quantity], help="quantity to compare in")
    p.add_argument("--exit-on-verdict", action="store_true", help="exit 0 if Entangled, 3 if not")
    _output_args(p)
    p.set_defaults(func=cmd_verdict)

    p = sub.add_parser("scan", help="sweep one parameter and emit plot-ready rows")
    _gas_args(p)
    p.add_argument("--var", choices=SWEEP_VARIABLES, required=True)
    p.add_argument("--from", dest="start", required=True)
    p.add_argument("--to", dest="stop", required=True)
    p.add_argument("--points", type=int, default=50)
    p.add_argument("--log", action="store_true", help="logarithmic spacing")
    p.add_argument("--T", type=_quantity("temperature"), help="measured temperature")
    p.add_argument("--E", type=_quantity("energy"), help="measured energy")
    p.add_argument("--jobs", type=int, default=1)
    _output_args(p)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("run", help="evaluate a JSON scenario file")
    p.add_argument("scenario", type=Path)
    p.add_argument("--jobs", type=int, default=1)
    _output_args(p)
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("verify", help="run the numerical oracle suite")
    _output_args(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("reproduce", help="packaged reproductions")
    p.add_argument("name", choices=sorted(REPRODUCTIONS))
    _output_args(p)
    p.set_defaults(func=cmd_reproduce)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        parser.print_usage(sys.stderr)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BoseWitnessError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
