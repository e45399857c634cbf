"""Command-line entry point.

Subcommands:

    table       amplification table from the indicator snapshot
    classify    region classification plus a per-region census
    curve       beta = 1/alpha samples (csv, json, or svg)
    scatter     SVG scatter of classified countries over the curve
    whatif      hypothetical account for a GDP, share, and consumption split
    transistor  DC bias point and gains of the analog amplifier stage
    fetch       live World Bank pull for given ISO3 codes (the only
                subcommand that touches the network)

Exit codes: 0 success, 1 usage error, 2 data/parse error, 3 numeric
failure. The data file defaults to the packaged snapshot; the AMMET_DATA
environment variable overrides the default and the --data flag overrides
both. Numeric flags accept a decimal comma as well as a decimal point.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from . import report, worldbank
from .errors import (
    ConvergenceError,
    DomainError,
    ParseError,
    UsageError,
    WorldBankApiError,
)
from .model import whatif_account
from .regions import Region, classify_records
from .transistor import (
    BiasCircuit,
    TransistorParams,
    current_gain,
    effective_gain_with_leakage,
    gain_from_base_width,
    solve_bias_point,
)

DATA_ENV_VAR = "AMMET_DATA"

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_NUMERIC = 3


@dataclass(frozen=True)
class CliConfig:
    """Validated run configuration shared by the data-driven subcommands."""

    subcommand: str
    data_path: Path
    year: int
    format: str
    output: Path | None


class _Parser(argparse.ArgumentParser):
    # argparse exits the interpreter on errors; raise instead so run() can
    # translate every usage problem into exit code 1.
    def error(self, message):
        raise UsageError(message)


def _number(text: str) -> float:
    """Float flag value; a decimal comma is accepted as separator."""
    try:
        return float(text.replace(",", "."))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None


def _quantity(value: float) -> str:
    return str(int(value)) if value == int(value) else repr(value)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ammet", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="subcommand", metavar="SUBCOMMAND")

    def add_data_flags(p):
        p.add_argument("--data", type=Path, default=None,
                       help=f"indicator CSV (default: packaged snapshot, or ${DATA_ENV_VAR})")
        p.add_argument("--year", type=int, default=2017, help="year column to read")

    def add_output_flag(p):
        p.add_argument("--output", "-o", type=Path, default=None,
                       help="write to this file instead of standard output")

    p = sub.add_parser("table", help="emit the amplification table")
    add_data_flags(p)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    add_output_flag(p)
    p.set_defaults(handler=_cmd_table)

    p = sub.add_parser("classify", help="classify countries into regions")
    add_data_flags(p)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--include-aggregates", action="store_true",
                   help="classify World Bank aggregates too (default: countries only)")
    add_output_flag(p)
    p.set_defaults(handler=_cmd_classify)

    p = sub.add_parser("curve", help="emit gain-curve samples")
    p.add_argument("--min", dest="alpha_min", type=_number, default=0.085)
    p.add_argument("--max", dest="alpha_max", type=_number, default=1.0)
    p.add_argument("--n", type=int, default=128, help="number of samples")
    p.add_argument("--format", choices=("csv", "json", "svg"), default="csv")
    p.add_argument("--width", type=int, default=800)
    p.add_argument("--height", type=int, default=600)
    add_output_flag(p)
    p.set_defaults(handler=_cmd_curve)

    p = sub.add_parser("scatter", help="emit the classified-country scatter SVG")
    add_data_flags(p)
    p.add_argument("--min", dest="alpha_min", type=_number, default=0.085)
    p.add_argument("--max", dest="alpha_max", type=_number, default=1.0)
    p.add_argument("--n", type=int, default=128)
    p.add_argument("--width", type=int, default=800)
    p.add_argument("--height", type=int, default=600)
    p.add_argument("--include-aggregates", action="store_true")
    add_output_flag(p)
    p.set_defaults(handler=_cmd_scatter)

    p = sub.add_parser("whatif", help="hypothetical account for a GDP split")
    p.add_argument("--gdp", type=_number, required=True)
    p.add_argument("--alpha", type=_number, required=True,
                   help="government share of GDP")
    p.add_argument("--consumption-share", type=_number, required=True,
                   help="consumption share of the private remainder")
    add_output_flag(p)
    p.set_defaults(handler=_cmd_whatif)

    p = sub.add_parser("transistor", help="solve the amplifier stage bias point")
    p.add_argument("--vcc", type=_number, default=10.0, help="supply voltage (V)")
    p.add_argument("--rb", type=_number, default=1e6, help="base resistor (ohm)")
    p.add_argument("--rc", type=_number, default=1e3, help="collector resistor (ohm)")
    p.add_argument("--saturation-current", type=_number, default=1e-14,
                   help="junction saturation current (A)")
    p.add_argument("--thermal-voltage", type=_number, default=0.02585)
    p.add_argument("--base-width", type=_number, default=1e-7, help="meters")
    p.add_argument("--diffusion-length", type=_number, default=1e-6, help="meters")
    p.add_argument("--gamma", type=_number, default=0.995,
                   help="emitter injection efficiency")
    p.add_argument("--icbo", type=_number, default=0.0,
                   help="collector-base leakage current (A)")
    p.add_argument("--vce-sat", type=_number, default=0.2,
                   help="collector-emitter saturation floor (V)")
    add_output_flag(p)
    p.set_defaults(handler=_cmd_transistor)

    p = sub.add_parser("fetch", help="pull live indicator data (network)")
    p.add_argument("--codes", nargs="+", required=True, metavar="ISO3")
    p.add_argument("--year", type=int, default=2017)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    add_output_flag(p)
    p.set_defaults(handler=_cmd_fetch)

    return parser


def _resolve_data_path(ns) -> Path:
    if ns.data is not None:
        return ns.data
    env = os.environ.get(DATA_ENV_VAR)
    if env:
        return Path(env)
    return worldbank.default_fixture_path()


def _config(ns) -> CliConfig:
    return CliConfig(
        subcommand=ns.subcommand,
        data_path=_resolve_data_path(ns),
        year=ns.year,
        format=getattr(ns, "format", "csv"),
        output=ns.output,
    )


def _write_output(ns, data: bytes) -> None:
    if ns.output is not None:
        Path(ns.output).write_bytes(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()


def _report_skipped(skipped) -> None:
    if skipped:
        names = ", ".join(record.name for record in skipped)
        print(f"skipped {len(skipped)} record(s) without a usable value: {names}",
              file=sys.stderr)


def _load_records(config: CliConfig):
    return worldbank.load_worldbank_csv(config.data_path, year=config.year)


def _cmd_table(ns) -> int:
    config = _config(ns)
    rows, skipped = worldbank.build_amplification_table(_load_records(config))
    _write_output(ns, report.emit_table(rows, config.format))
    _report_skipped(skipped)
    return EXIT_OK


def _census_order(census) -> list[tuple[str, int]]:
    return [(region.value, census[region]) for region in Region]


def _cmd_classify(ns) -> int:
    config = _config(ns)
    records = _load_records(config)
    if not ns.include_aggregates:
        records = [r for r in records if not r.is_aggregate]
    result = classify_records(records)
    if config.format == "json":
        doc = {
            "records": [
                {
                    "name": r.country.name,
                    "iso3": r.country.iso3,
                    "alpha": r.alpha,
                    "beta": r.beta,
                    "region": r.region.value,
                }
                for r in result.records
            ],
            "census": dict(_census_order(result.census)),
            "skipped": [r.name for r in result.skipped],
        }
        _write_output(ns, (json.dumps(doc, indent=2, ensure_ascii=False) + "\n").encode())
    else:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(["name", "alpha", "beta", "region"])
        for r in result.records:
            writer.writerow([
                r.country.name,
                report.format_alpha(r.alpha),
                report.format_beta(r.beta),
                r.region.value,
            ])
        _write_output(ns, buffer.getvalue().encode("utf-8"))
        census_text = " ".join(f"{label}={count}" for label, count in _census_order(result.census))
        print(f"census: {census_text}", file=sys.stderr)
        _report_skipped(result.skipped)
    return EXIT_OK


def _curve_series(ns):
    return report.curve_points(ns.alpha_min, ns.alpha_max, ns.n)


def _cmd_curve(ns) -> int:
    series = _curve_series(ns)
    if ns.format == "svg":
        data = report.render_scatter_svg([], series, ns.width, ns.height)
    else:
        data = report.emit_curve(series, ns.format)
    _write_output(ns, data)
    return EXIT_OK


def _cmd_scatter(ns) -> int:
    config = _config(ns)
    records = _load_records(config)
    if not ns.include_aggregates:
        records = [r for r in records if not r.is_aggregate]
    result = classify_records(records)
    series = _curve_series(ns)
    _write_output(ns, report.render_scatter_svg(list(result.records), series,
                                                ns.width, ns.height))
    _report_skipped(result.skipped)
    return EXIT_OK


def _cmd_whatif(ns) -> int:
    account = whatif_account(ns.gdp, ns.alpha, ns.consumption_share)
    line = (
        f"Y={_quantity(account.income_y)} C={_quantity(account.consumption_c)} "
        f"I={_quantity(account.investment_i)} G={_quantity(account.government_g)}\n"
    )
    _write_output(ns, line.encode("utf-8"))
    return EXIT_OK


def _cmd_transistor(ns) -> int:
    params = TransistorParams(
        saturation_current=ns.saturation_current,
        base_width=ns.base_width,
        diffusion_length=ns.diffusion_length,
        injection_efficiency=ns.gamma,
        thermal_voltage=ns.thermal_voltage,
        leakage_current=ns.icbo,
        vce_saturation=ns.vce_sat,
    )
    circuit = BiasCircuit(supply_voltage=ns.vcc, base_resistor=ns.rb,
                          collector_resistor=ns.rc)
    point = solve_bias_point(circuit, params)
    ideal = gain_from_base_width(params)
    lines = [
        f"v_be={point.v_be!r}",
        f"i_b={point.i_b!r}",
        f"i_c={point.i_c!r}",
        f"v_ce={point.v_ce!r}",
        f"saturated={'true' if point.saturated else 'false'}",
        f"ideal_gain={ideal!r}",
    ]
    if point.i_c > 0:
        lines.append(f"leakage_gain={effective_gain_with_leakage(point.i_c, ideal, ns.icbo)!r}")
    if point.i_b > 0:
        lines.append(f"realized_gain={current_gain(point.i_c, point.i_b)!r}")
    _write_output(ns, ("\n".join(lines) + "\n").encode("utf-8"))
    return EXIT_OK


def _cmd_fetch(ns) -> int:
    records = worldbank.fetch_indicator(ns.codes, ns.year)
    if ns.format == "json":
        doc = [
            {
                "name": r.name,
                "iso3": r.iso3,
                "year": r.year,
                "expenditure_pct": r.expenditure_pct,
                "is_aggregate": r.is_aggregate,
            }
            for r in records
        ]
        _write_output(ns, (json.dumps(doc, indent=2, ensure_ascii=False) + "\n").encode())
    else:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(["name", "iso3", "year", "expenditure_pct", "is_aggregate"])
        for r in records:
            writer.writerow([
                r.name,
                r.iso3,
                r.year,
                "" if r.expenditure_pct is None else repr(r.expenditure_pct),
                "true" if r.is_aggregate else "false",
            ])
        _write_output(ns, buffer.getvalue().encode("utf-8"))
    return EXIT_OK


def run(argv: list[str]) -> int:
    """Dispatch argv; returns the process exit code (never raises)."""
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except UsageError as exc:
        print(f"ammet: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    if ns.subcommand is None:
        parser.print_usage(sys.stderr)
        print("ammet: error: a subcommand is required", file=sys.stderr)
        return EXIT_USAGE
    try:
        return ns.handler(ns)
    except (UsageError, DomainError) as exc:
        print(f"ammet: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ParseError, WorldBankApiError, OSError) as exc:
        print(f"ammet: data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except ConvergenceError as exc:
        print(f"ammet: numeric error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


def main(argv: list[str] | None = None) -> None:
    sys.exit(run(sys.argv[1:] if argv is None else argv))


if __name__ == "__main__":
    main()
