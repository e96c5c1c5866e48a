"""
The `jd` command line.
"""

from __future__ import annotations

import csv
import io
import json
import logging
import sys
import time
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence

try:
    from typing import override
except ImportError:  # Python < 3.12
    from typing_extensions import override

import click

from .config import OUTPUT_FORMATS, ConfigError, RunConfig
from .error_handler import CapExceededError, JacobiError, ParseError
from .maps import bd, bu, delta, delta_double_prime, delta_prime, eyeglass_to_theta
from .necklace import enumerate_necklaces, iota, kernel_report, orbit_representatives, period_exponent
from .parser import parse
from .printer import diagram_to_json, format_diagram, format_sum, sum_to_json
from .relations import build_presentation, invariants_to_json, rank_and_torsion, write_rank_table
from .suites import SUITES, SuiteOptions, UnknownSuiteError, report_to_json, run_suite
from .sums import DiagramSum
from .tensor import eta, iota_eta_diagram
from .weight import PRESETS, StructureConstants, evaluate, project_half

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_PARSE = 2
EXIT_CAP = 3
EXIT_USAGE = 4


def _report(message: str) -> None:
    logger.debug("command failed", exc_info=True)
    click.echo(message, err=True)


class JacobiGroup(click.Group):
    """
    Command group mapping failures to the stable exit codes.
    """

    @override
    def invoke(self, ctx: click.Context) -> Any:
        try:
            return super().invoke(ctx)
        except ParseError as error:
            message = str(error)
            _report(message if message.startswith("[col") else f"[col {error.position}] Error: {message}")
            return EXIT_PARSE
        except CapExceededError as error:
            _report(f"Error: {error}")
            return EXIT_CAP
        except UnknownSuiteError as error:
            _report(f"Error: unknown suite {error.args[0]!r}; choose from {', '.join(sorted(SUITES))} or all")
            return EXIT_USAGE
        except (ConfigError, JacobiError, ValueError) as error:
            _report(f"Error: {error}")
            return EXIT_USAGE

    @override
    def main(self, *args: Any, standalone_mode: bool = True, **kwargs: Any) -> Any:
        try:
            result = super().main(*args, standalone_mode=False, **kwargs)
        except click.ClickException as error:
            error.show()
            result = EXIT_USAGE
        except click.Abort:
            click.echo("Aborted!", err=True)
            result = EXIT_CHECK_FAILED
        code = result if isinstance(result, int) else EXIT_OK
        if standalone_mode:
            sys.exit(code)
        return code


def _configure_logging(verbose: int) -> None:
    level = logging.WARNING if verbose == 0 else logging.INFO if verbose == 1 else logging.DEBUG
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")
    logging.getLogger().setLevel(level)


def out_option(fn: Callable) -> Callable:
    return click.option(
        "--out",
        "output_format",
        type=click.Choice(OUTPUT_FORMATS),
        default="json",
        show_default=True,
        help="Output format.",
    )(fn)


def degree_option(fn: Callable) -> Callable:
    return click.option(
        "--max-degree",
        type=int,
        default=None,
        help="Largest internal degree a computation may reach (default: $JD_MAX_DEGREE or 8).",
    )(fn)


def _emit_json(data: Any) -> None:
    click.echo(json.dumps(data, indent=2, sort_keys=True))


def _emit_csv(fields: Sequence[str], rows: Iterable[Dict[str, Any]]) -> None:
    stream = io.StringIO()
    writer = csv.DictWriter(stream, fieldnames=list(fields), lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow(row)
    click.echo(stream.getvalue(), nl=False)


def _input_genus(config_genus: Optional[int]) -> int:
    return 1 if config_genus is None else config_genus


@click.group(cls=JacobiGroup)
@click.option("-v", "--verbose", count=True, help="Repeat for more logging.")
def cli(verbose: int) -> None:
    """
    Jacobi diagram modules, maps, necklaces and weight systems.
    """
    _configure_logging(verbose)


@cli.command("parse")
@click.argument("expr")
@click.option("--genus", type=int, default=None, help="Reject labels above this genus.")
@out_option
def parse_command(expr: str, genus: Optional[int], output_format: str) -> int:
    """
    Parse a diagram and print its canonical form.
    """
    RunConfig.from_options(genus=_input_genus(genus), output_format=output_format)
    diagram = parse(expr, genus)
    data = diagram_to_json(diagram)
    if output_format == "json":
        _emit_json(data)
    elif output_format == "csv":
        fields = ("dsl", "ideg", "betti", "legs", "connected")
        _emit_csv(fields, [{key: data[key] for key in fields}])
    else:
        click.echo(data["dsl"])
    return EXIT_OK


@cli.command("module")
@click.option("--n", "n", type=int, required=True, help="Internal degree.")
@click.option("--loops", type=int, required=True, help="Loop number.")
@click.option("--genus", type=int, default=1, show_default=True)
@click.option("--oriented", is_flag=True, help="Use oriented generators with explicit AS relators.")
@degree_option
@out_option
def module_command(
    n: int, loops: int, genus: int, oriented: bool, max_degree: Optional[int], output_format: str
) -> int:
    """
    Rank and torsion of the connected module of a stratum.
    """
    config = RunConfig.from_options(genus, max_degree, output_format)
    started = time.perf_counter()
    presentation = build_presentation(
        n, loops, config.genus, as_reduced=not oriented, max_degree=config.max_degree
    )
    invariants = rank_and_torsion(presentation)
    report = invariants_to_json(presentation, invariants)
    report["seconds"] = round(time.perf_counter() - started, 3)
    if output_format == "json":
        _emit_json(report)
    elif output_format == "csv":
        stream = io.StringIO()
        write_rank_table([report], stream)
        click.echo(stream.getvalue(), nl=False)
    else:
        torsion = " ".join(f"Z/{d}" for d in invariants.invariant_factors) or "none"
        click.echo(
            f"A(n={n}, l={loops}, g={genus}): {report['generators']} generators, "
            f"rank {invariants.rank}, torsion {torsion}"
        )
    return EXIT_OK


@cli.command("verify")
@click.option("--suite", "suite_name", required=True, help=f"One of {', '.join(sorted(SUITES))} or all.")
@click.option("--m", "m", type=int, default=2, show_default=True, help="Half length for necklace suites.")
@click.option("--k", "k", type=int, default=None, help="Loop parameter of the higher-loop suite.")
@click.option("--genus", type=int, default=1, show_default=True)
@click.option("--system", type=click.Choice(sorted(PRESETS)), default="sl2", show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@degree_option
@out_option
def verify_command(
    suite_name: str,
    m: int,
    k: Optional[int],
    genus: int,
    system: str,
    seed: int,
    max_degree: Optional[int],
    output_format: str,
) -> int:
    """
    Run a verification suite; exits 1 if any check fails.
    """
    config = RunConfig.from_options(genus, max_degree, output_format, seed)
    records = run_suite(suite_name, SuiteOptions(config, m, k, system))
    report = report_to_json(suite_name, records)
    if output_format == "json":
        _emit_json(report)
    elif output_format == "csv":
        _emit_csv(
            ("name", "expected", "actual", "passed", "provenance"),
            (r.to_json() for r in records),
        )
    else:
        for r in records:
            status = "PASS" if r.passed else "FAIL"
            click.echo(f"{status} {r.name}: expected {r.expected}, got {r.actual} ({r.provenance})")
        click.echo("PASS" if report["passed"] else "FAIL")
    return EXIT_OK if report["passed"] else EXIT_CHECK_FAILED


MAPS: Dict[str, Callable[[DiagramSum], DiagramSum]] = {
    "delta": delta,
    "delta-prime": delta_prime,
    "delta-double-prime": delta_double_prime,
    "bu": bu,
    "bd": bd,
    "eyeglass-to-theta": lambda x: x.map_diagrams(eyeglass_to_theta),
    "iota-eta": lambda x: x.map_diagrams(iota_eta_diagram).mod2(),
    "mirror": lambda x: x.map_diagrams(lambda d: DiagramSum.of(d.mirror())),
    "as-reduce": lambda x: x.as_reduce(),
}


@cli.command("map")
@click.option("--name", type=click.Choice(sorted(MAPS) + ["eta"]), required=True)
@click.option("--input", "expr", required=True, help="A diagram in the DSL.")
@click.option("--genus", type=int, default=None, help="Reject labels above this genus.")
@out_option
def map_command(name: str, expr: str, genus: Optional[int], output_format: str) -> int:
    """
    Apply a diagram map to a diagram.
    """
    RunConfig.from_options(genus=_input_genus(genus), output_format=output_format)
    diagram = parse(expr, genus)
    if name == "eta":
        word = eta(diagram)
        if output_format == "json":
            _emit_json([{"word": [str(a) for a in w], "coefficient": c} for w, c in word.items()])
        elif output_format == "csv":
            _emit_csv(
                ("word", "coefficient"),
                ({"word": " ".join(str(a) for a in w), "coefficient": c} for w, c in word.items()),
            )
        else:
            click.echo(str(word))
        return EXIT_OK
    result = MAPS[name](DiagramSum.of(diagram))
    if output_format == "json":
        _emit_json({"map": name, "input": format_diagram(diagram), "result": sum_to_json(result)})
    elif output_format == "csv":
        _emit_csv(("diagram", "coefficient"), sum_to_json(result))
    else:
        click.echo(format_sum(result))
    return EXIT_OK


@cli.command("weight")
@click.option("--system", type=click.Choice(sorted(PRESETS)), default=None)
@click.option(
    "--constants",
    type=click.Path(exists=True, dir_okay=False),
    default=None,
    help='JSON file {"d": 3, "entries": [[i, j, k, c], ...]}.',
)
@click.option("--input", "expr", required=True, help="A diagram in the DSL.")
@click.option("--half", "colour", type=int, default=None, help="Half of the projection onto one colour.")
@click.option("--genus", type=int, default=None, help="Reject labels above this genus.")
@out_option
def weight_command(
    system: Optional[str],
    constants: Optional[str],
    expr: str,
    colour: Optional[int],
    genus: Optional[int],
    output_format: str,
) -> int:
    """
    Evaluate the weight system of structure constants on a diagram.
    """
    if (system is None) == (constants is None):
        raise click.UsageError("give exactly one of --system and --constants")
    RunConfig.from_options(genus=_input_genus(genus), output_format=output_format)
    values = PRESETS[system]() if system is not None else StructureConstants.load(constants)
    diagram = parse(expr, genus)
    if colour is None:
        weight = evaluate(values, diagram)
    else:
        weight = project_half(values, diagram, colour)
    if output_format == "json":
        _emit_json({"input": format_diagram(diagram), "weight": weight.to_json()})
    elif output_format == "csv":
        _emit_csv(
            ("monomial", "coefficient"),
            (
                {"monomial": " ".join(f"{label}@{c}" for label, c in m), "coefficient": v}
                for m, v in weight.items()
            ),
        )
    else:
        click.echo(str(weight))
    return EXIT_OK


@cli.command("necklace")
@click.option("--length", type=int, required=True, help="Number of beads 2m.")
@click.option("--genus", type=int, default=1, show_default=True)
@click.option(
    "--count", "action", flag_value="count", default=True, help="Count necklaces with arrow (default)."
)
@click.option("--list", "action", flag_value="list", help="List necklaces with e(x) and iota(x).")
@click.option("--kernel", "action", flag_value="kernel", help="One-loop kernel rank for m = length / 2.")
@degree_option
@out_option
def necklace_command(
    length: int, genus: int, action: str, max_degree: Optional[int], output_format: str
) -> int:
    """
    Necklaces with arrow of a given length.
    """
    config = RunConfig.from_options(genus, max_degree, output_format)
    primes, doubles = enumerate_necklaces(length, config.genus, config.max_degree)
    if action == "count":
        data: Any = {
            "length": length,
            "genus": genus,
            "prime": len(primes),
            "doublePrime": len(doubles),
            "orbits": len(orbit_representatives(primes + doubles)),
        }
        rows: List[Dict[str, Any]] = [data]
    elif action == "list":
        rows = [
            {"necklace": str(x), "e": period_exponent(x), "iota": str(iota(x))}
            for x in primes + doubles
        ]
        data = rows
    else:
        report = kernel_report(length // 2, config.genus, config.max_degree)
        data = {
            "m": length // 2,
            "genus": genus,
            "rank": report.rank,
            "formula": report.formula,
            "matches_combined_kernel": report.matches_combined_kernel,
            "basis": [format_sum(b) for b in report.basis],
        }
        rows = [{key: value for key, value in data.items() if key != "basis"}]
    if output_format == "json":
        _emit_json(data)
    elif output_format == "csv":
        _emit_csv(list(rows[0]) if rows else [], rows)
    else:
        for row in rows:
            click.echo(" ".join(f"{key}={value}" for key, value in row.items()))
    return EXIT_OK


def main() -> None:
    cli.main(prog_name="jd")
