"""
Command-line interface for the spectral zeta toolkit.

Usage:
    python main.py coeffs --k 4 --method all
    python main.py eval --space sphere --k 3 --s "2+1.5i"
    python main.py residues --space projective --k 5 --n-max 4
    python main.py special --space sphere --k 4 --n-max 3 --format csv
    python main.py verify --k-max 12
    python main.py table --space sphere --k 3 --input points.txt
"""
import logging
import math
import re
import sys
from typing import List, Optional

import click
from pydantic import ValidationError

from config import (
    CONFIG_KEYS,
    DEFAULT_EM_ORDER,
    DEFAULT_K_MAX,
    DEFAULT_MAX_L,
    DEFAULT_POLE_EPS,
    DEFAULT_TOL,
    DEFAULT_WORKERS,
    LOG_FORMAT,
    load_config_file,
)
from evaluators.batch import evaluate_batch
from evaluators.continuation import zeta_continuation
from exceptions import AtPoleError, DomainError, UnsupportedValueError, ZetaError
from models.coefficients import CoefficientMethod
from models.evaluation import EvalOptions
from models.space import SpaceKind, SpaceSpec
from utils.coefficient_utils import coefficient_table, compare_methods
from utils.data_utils import (
    at_pole_record,
    coeff_record,
    eval_record,
    failed_eval_record,
    residue_record,
    special_record,
    verify_record,
    write_records,
)
from utils.residue_utils import pole_catalog, special_value
from verification.suite import run_verification

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_COEFF_MISMATCH = 2
EXIT_AT_POLE = 3
EXIT_USAGE = 64

# config file key -> command parameter name
PARAM_NAMES = {"format": "fmt"}

_NUMBER = r"(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?"
_COMPLEX = re.compile(rf"[+-]?{_NUMBER}(?:[+-](?:{_NUMBER})?[ij])?|[+-]?(?:{_NUMBER})?[ij]")


def parse_complex(text: str) -> complex:
    """
    Parse 'a+bi', 'a-bi', 'bi' or a plain real, with optional whitespace.

    Example:
        >>> parse_complex("2 - 1.5i")
        (2-1.5j)
        >>> parse_complex("-3")
        (-3+0j)
    """
    compact = re.sub(r"\s+", "", text)
    if not _COMPLEX.fullmatch(compact):
        raise ValueError(f"cannot parse '{text}' as a complex number (expected a+bi, a-bi or a real)")
    if compact[-1] in "ij" and compact[-2:-1] in ("", "+", "-"):
        compact = compact[:-1] + "1j"
    value = complex(compact.replace("i", "j"))
    if not (math.isfinite(value.real) and math.isfinite(value.imag)):
        raise ValueError(f"'{text}' is not finite")
    return value


class ComplexParam(click.ParamType):
    name = "complex"

    def convert(self, value, param, ctx):
        if isinstance(value, complex):
            return value
        try:
            return parse_complex(value)
        except ValueError as e:
            self.fail(str(e), param, ctx)


COMPLEX = ComplexParam()


def _configure_logging(verbose: int) -> None:
    level = logging.WARNING if verbose == 0 else logging.INFO if verbose == 1 else logging.DEBUG
    logging.basicConfig(level=level, format=LOG_FORMAT, stream=sys.stderr, force=True)


def _default_map(path: str) -> dict:
    """click default_map with the config file values offered to every command"""
    try:
        values = load_config_file(path)
    except (OSError, ValueError) as e:
        raise click.UsageError(f"Bad config file: {e}")
    params = {PARAM_NAMES.get(key, key): value for key, value in values.items()}
    return {name: dict(params) for name in cli.commands}


def _spec(space: str, k: int) -> SpaceSpec:
    return SpaceSpec(space=SpaceKind(space), k=k)


def _options(tol: float, max_l: int, pole_eps: float, em_order: int) -> EvalOptions:
    try:
        return EvalOptions(tol=tol, max_l=max_l, pole_eps=pole_eps, em_order=em_order)
    except ValidationError as e:
        raise click.UsageError(f"Invalid evaluation options: {e.errors()[0]['msg']}")


space_option = click.option("--space", type=click.Choice([kind.value for kind in SpaceKind]), default="sphere",
                            show_default=True, help="Sphere S^k or real projective space P^k")
k_option = click.option("--k", "k", type=click.IntRange(min=2), required=True, help="Dimension, at least 2")
format_option = click.option("--format", "fmt", type=click.Choice(["json", "csv"]), default="json",
                             show_default=True, help="Output format")


def numeric_options(command):
    """Accuracy flags shared by eval and table"""
    command = click.option("--em-order", type=int, default=DEFAULT_EM_ORDER, show_default=True,
                           help="Minimum Euler-Maclaurin order (even)")(command)
    command = click.option("--pole-eps", type=float, default=DEFAULT_POLE_EPS, show_default=True,
                           help="Refuse points this close to a pole")(command)
    command = click.option("--max-l", type=int, default=DEFAULT_MAX_L, show_default=True,
                           help="Cap on the binomial series length")(command)
    command = click.option("--tol", type=float, default=DEFAULT_TOL, show_default=True,
                           help="Target absolute error")(command)
    return command


@click.group()
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False), default=None,
              help="key=value file holding flag defaults")
@click.option("-v", "--verbose", count=True, help="-v for INFO, -vv for DEBUG logging on stderr")
@click.pass_context
def cli(ctx: click.Context, config_path: Optional[str], verbose: int):
    """Exact and numeric spectral zeta functions of spheres and real projective spaces."""
    _configure_logging(verbose)
    if config_path:
        ctx.default_map = _default_map(config_path)
        logger.info(f"Loaded defaults from {config_path}: {sorted(CONFIG_KEYS)}")


@cli.command()
@k_option
@click.option("--method", type=click.Choice(["all"] + [method.value for method in CoefficientMethod]),
              default=CoefficientMethod.RECURSION.value, show_default=True,
              help="Computation method; 'all' cross-checks every method")
@format_option
@click.pass_context
def coeffs(ctx: click.Context, k: int, method: str, fmt: str):
    """Print the coefficient row B_{k,0..k-1}."""
    if method == "all":
        agree = compare_methods(k)
        same = all(agree.values())
        record = coeff_record(coefficient_table(k, CoefficientMethod.EXPANSION), methods_agree=same)
        write_records([record], fmt, sys.stdout)
        if not same:
            click.echo(f"Error: coefficient methods disagree for k={k}", err=True)
            ctx.exit(EXIT_COEFF_MISMATCH)
        return
    write_records([coeff_record(coefficient_table(k, CoefficientMethod(method)))], fmt, sys.stdout)


@cli.command(name="eval")
@space_option
@k_option
@click.option("--s", "s", type=COMPLEX, required=True, help="Argument, e.g. 2, -3 or '1.5+2i'")
@numeric_options
@format_option
@click.pass_context
def eval_point(ctx: click.Context, space: str, k: int, s: complex, tol: float, max_l: int, pole_eps: float,
               em_order: int, fmt: str):
    """Evaluate Z_k(s) or L_k(s) at one point."""
    spec = _spec(space, k)
    opts = _options(tol, max_l, pole_eps, em_order)
    try:
        result = zeta_continuation(spec, s, opts)
    except AtPoleError as e:
        write_records([at_pole_record(spec, s, e)], fmt, sys.stdout)
        ctx.exit(EXIT_AT_POLE)
    except ZetaError as e:
        write_records([failed_eval_record(spec, s, e)], fmt, sys.stdout)
        click.echo(f"Error: {e}", err=True)
        ctx.exit(EXIT_VERIFY_FAILED)
    write_records([eval_record(spec, s, result)], fmt, sys.stdout)


@cli.command()
@space_option
@k_option
@click.option("--n-max", type=click.IntRange(min=0), default=5, show_default=True, help="Largest pole index n")
@format_option
def residues(space: str, k: int, n_max: int, fmt: str):
    """Exact residues at the candidate poles s = k/2 - n."""
    spec = _spec(space, k)
    write_records([residue_record(spec, entry) for entry in pole_catalog(spec, n_max)], fmt, sys.stdout)


@cli.command()
@space_option
@k_option
@click.option("--n-max", type=click.IntRange(min=0), default=5, show_default=True, help="Largest n in s = -n")
@format_option
def special(space: str, k: int, n_max: int, fmt: str):
    """Exact values at s = 0, -1, ..., -n_max."""
    spec = _spec(space, k)
    records = []
    for n in range(n_max + 1):
        try:
            value = special_value(spec, n)
        except UnsupportedValueError:
            value = None
        records.append(special_record(spec, n, value))
    write_records(records, fmt, sys.stdout)


@cli.command()
@click.option("--k-max", type=click.IntRange(min=2), default=DEFAULT_K_MAX, show_default=True,
              help="Largest dimension for the exact checks")
@click.option("--tol", type=float, default=None, help="Tolerance for the numeric cross-checks")
@click.option("--skip-numeric", is_flag=True, help="Run only the exact checks")
@format_option
@click.pass_context
def verify(ctx: click.Context, k_max: int, tol: Optional[float], skip_numeric: bool, fmt: str):
    """Run the self-verification suite."""
    try:
        outcomes = run_verification(k_max, tol=tol, numeric=not skip_numeric)
    except ValidationError as e:
        raise click.UsageError(f"Invalid tolerance: {e.errors()[0]['msg']}")
    write_records([verify_record(o.name, o.passed, o.detail) for o in outcomes], fmt, sys.stdout)
    failed = [o.name for o in outcomes if not o.passed]
    if failed:
        for name in failed:
            click.echo(f"FAILED: {name}", err=True)
        ctx.exit(EXIT_VERIFY_FAILED)


def read_points(lines) -> List[complex]:
    """Parse one point per line; blank lines and '#' comments are skipped"""
    points = []
    for number, line in enumerate(lines, start=1):
        text = line.split("#", 1)[0].strip()
        if not text:
            continue
        try:
            points.append(parse_complex(text))
        except ValueError as e:
            raise click.BadParameter(f"line {number}: {e}", param_hint="--input")
    return points


@cli.command()
@space_option
@k_option
@click.option("--input", "source", type=click.File("r"), default="-", show_default=True,
              help="File with one point per line")
@click.option("--workers", type=click.IntRange(min=1), default=DEFAULT_WORKERS, show_default=True,
              help="Points evaluated concurrently")
@numeric_options
@format_option
def table(space: str, k: int, source, workers: int, tol: float, max_l: int, pole_eps: float, em_order: int,
          fmt: str):
    """Evaluate a list of points; output order follows the input."""
    spec = _spec(space, k)
    opts = _options(tol, max_l, pole_eps, em_order)
    points = read_points(source)
    records = []
    for s, outcome in zip(points, evaluate_batch(spec, points, opts, workers)):
        if isinstance(outcome, AtPoleError):
            records.append(at_pole_record(spec, s, outcome))
        elif isinstance(outcome, ZetaError):
            records.append(failed_eval_record(spec, s, outcome))
        else:
            records.append(eval_record(spec, s, outcome))
    write_records(records, fmt, sys.stdout)


def run(argv: Optional[List[str]] = None) -> int:
    """
    Run the CLI and map the outcome to an exit code.

    Returns:
        int: 0 success, 1 verification failure, 2 coefficient mismatch,
        3 at a pole, 64 usage error
    """
    try:
        code = cli.main(args=argv, prog_name="zeta", standalone_mode=False)
    except click.UsageError as e:
        e.show()
        return EXIT_USAGE
    except (DomainError, ValidationError) as e:
        click.echo(f"Error: {e}", err=True)
        return EXIT_USAGE
    except click.Abort:
        click.echo("Aborted!", err=True)
        return EXIT_VERIFY_FAILED
    return code if isinstance(code, int) else EXIT_OK


if __name__ == "__main__":
    sys.exit(run())
