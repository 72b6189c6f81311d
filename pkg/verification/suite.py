import logging
import math
import random
from fractions import Fraction
from math import factorial
from typing import Iterator, List, NamedTuple, Optional

from config import (
    DEFAULT_ORACLE_TERMS,
    HURWITZ_EXACT_N_MAX,
    HURWITZ_POINTS,
    NUMERIC_K_MAX,
    NUMERIC_N_MAX,
    RESIDUE_EPS,
    SPECIAL_N_MAX,
    VERIFY_POINTS,
    VERIFY_SEED,
)
from evaluators.continuation import limit_numeric, residue_numeric, zeta_continuation
from evaluators.dirichlet import dirichlet_oracle
from exceptions import UnsupportedValueError, ZetaError
from models.evaluation import EvalOptions
from models.space import SpaceKind, SpaceSpec
from utils.coefficient_utils import (
    check_identities,
    check_polynomial_identity,
    coeffs_via_recursion,
    compare_methods,
    integrality_holds,
    parity_pattern_holds,
)
from utils.exact_utils import hurwitz_zeta_nonpos_int, riemann_zeta_nonpos_int
from utils.hurwitz_utils import hurwitz_zeta, riemann_zeta
from utils.residue_utils import residue, series_special_value, special_value

logger = logging.getLogger(__name__)

NUMERIC_RESIDUE_TOL = 1e-8
LIMIT_TOL = 1e-6
ANCHOR_TOL = 1e-10


class CheckOutcome(NamedTuple):
    name: str
    passed: bool
    detail: str = ""


def _spaces(k: int) -> List[SpaceSpec]:
    return [SpaceSpec(space=SpaceKind.SPHERE, k=k), SpaceSpec(space=SpaceKind.PROJECTIVE, k=k)]


def exact_checks(k: int, rng: random.Random) -> Iterator[CheckOutcome]:
    """Every exact identity for dimension k"""
    agree = compare_methods(k)
    bad = [method.value for method, same in agree.items() if not same]
    yield CheckOutcome(f"k={k}: coefficient methods agree", not bad, ", ".join(bad))

    table = coeffs_via_recursion(k)
    yield CheckOutcome(f"k={k}: parity pattern", parity_pattern_holds(table))
    yield CheckOutcome(f"k={k}: integrality", integrality_holds(table))
    for check in check_identities(k, table):
        yield CheckOutcome(check.name, check.passed, f"{check.left} != {check.right}" if not check.passed else "")
    for _ in range(3):
        x = Fraction(rng.randint(-50, 50), rng.randint(1, 12))
        check = check_polynomial_identity(k, x, table)
        yield CheckOutcome(check.name, check.passed)

    sphere, projective = _spaces(k)
    yield CheckOutcome(f"k={k}: leading sphere residue is 1/(k-1)!", residue(sphere, 0) == Fraction(1, factorial(k - 1)))
    yield CheckOutcome(
        f"k={k}: leading projective residue is 1/(2(k-1)!)",
        residue(projective, 0) == Fraction(1, 2 * factorial(k - 1)),
    )
    halves = [n for n in range(SPECIAL_N_MAX + 1) if residue(projective, n) * 2 != residue(sphere, n)]
    yield CheckOutcome(f"k={k}: projective residues are half the sphere residues", not halves, f"n={halves}")
    if k % 2 == 0:
        nonzero = [n for n in range(k // 2, SPECIAL_N_MAX + 1) if residue(sphere, n) != 0]
        yield CheckOutcome(f"k={k}: residues vanish for n >= k/2", not nonzero, f"n={nonzero}")

    for spec in (sphere, projective) if k % 2 else (sphere,):
        mismatched = []
        for n in range(SPECIAL_N_MAX + 1):
            value = special_value(spec, n)
            if k % 2 and value != (-1 if n == 0 else 0):
                mismatched.append(n)
            elif value != series_special_value(spec, n):
                mismatched.append(n)
        yield CheckOutcome(f"{spec.label}: special values at s = 0..-{SPECIAL_N_MAX}", not mismatched, f"n={mismatched}")


def _random_point(rng: random.Random, k: int) -> complex:
    return complex(rng.uniform(k / 2 + 0.5, k / 2 + 3), rng.uniform(-5, 5))


def numeric_checks(k: int, opts: EvalOptions, rng: random.Random) -> Iterator[CheckOutcome]:
    """Cross-checks of the numeric engines against exact values and the Dirichlet oracle"""
    for spec in _spaces(k):
        for _ in range(VERIFY_POINTS):
            s = _random_point(rng, k)
            series = zeta_continuation(spec, s, opts)
            oracle = dirichlet_oracle(spec, s, DEFAULT_ORACLE_TERMS, opts)
            gap = abs(series.as_complex - oracle.as_complex)
            yield CheckOutcome(
                f"{spec.label}({s:.4f}): continuation matches Dirichlet series",
                gap <= series.error_bound + oracle.error_bound,
                f"gap {gap:.2e}, bounds {series.error_bound:.2e} + {oracle.error_bound:.2e}",
            )

        for n in range(NUMERIC_N_MAX + 1):
            exact = residue(spec, n)
            estimate = complex(residue_numeric(spec, n, RESIDUE_EPS, opts))
            yield CheckOutcome(
                f"{spec.label}: numeric residue at s={Fraction(k, 2) - n}",
                abs(estimate - float(exact)) <= NUMERIC_RESIDUE_TOL,
                f"estimate {estimate.real:.12g}, exact {exact}",
            )

        for n in range(6):
            try:
                exact = special_value(spec, n)
            except UnsupportedValueError:
                continue
            routed = zeta_continuation(spec, -n, opts)
            limit = complex(limit_numeric(spec, -n, RESIDUE_EPS, opts))
            yield CheckOutcome(
                f"{spec.label}(-{n}): exact routing and numeric limit agree",
                routed.exact == str(exact) and abs(limit - float(exact)) <= LIMIT_TOL,
                f"routed {routed.exact}, limit {limit.real:.10g}, exact {exact}",
            )


def half_shift_checks() -> Iterator[CheckOutcome]:
    """zeta(-n; 1/2) = (2^-n - 1) zeta(-n), exactly"""
    wrong = [
        n for n in range(HURWITZ_EXACT_N_MAX + 1)
        if hurwitz_zeta_nonpos_int(n, Fraction(1, 2)) != (Fraction(1, 2 ** n) - 1) * riemann_zeta_nonpos_int(n)
    ]
    yield CheckOutcome(f"zeta(-n; 1/2) = (2^-n - 1) zeta(-n) for n = 0..{HURWITZ_EXACT_N_MAX}", not wrong, f"n={wrong}")


def _hurwitz_point(rng: random.Random) -> complex:
    """A random point in the sampling box, redrawn while it lies within 0.1 of s = 1"""
    while True:
        s = complex(rng.uniform(-4, 6), rng.uniform(-5, 5))
        if abs(s - 1) > 0.1:
            return s


def hurwitz_checks(opts: EvalOptions, rng: random.Random) -> Iterator[CheckOutcome]:
    """zeta(s; 1/2) = (2^s - 1) zeta(s) at random points away from s = 1"""
    for _ in range(HURWITZ_POINTS):
        s = _hurwitz_point(rng)
        half = hurwitz_zeta(s, Fraction(1, 2), opts)
        full = riemann_zeta(s, opts)
        factor = 2 ** s - 1
        gap = abs(half.as_complex - factor * full.as_complex)
        yield CheckOutcome(
            f"zeta({s:.4f}; 1/2) = (2^s - 1) zeta(s)",
            gap <= half.error_bound + abs(factor) * full.error_bound,
            f"gap {gap:.2e}",
        )


def anchor_checks(k_max: int, opts: EvalOptions) -> Iterator[CheckOutcome]:
    """Closed forms: Z_2(2) = 1 and Z_3(2) = pi^2/12 + 1/16"""
    anchors = [(2, 1.0)]
    if k_max >= 3:
        anchors.append((3, math.pi ** 2 / 12 + 1 / 16))
    for k, expected in anchors:
        result = zeta_continuation(SpaceSpec(space=SpaceKind.SPHERE, k=k), 2, opts)
        error = abs(result.as_complex - expected)
        yield CheckOutcome(
            f"Z_{k}(2) closed form",
            error <= ANCHOR_TOL and error <= max(result.error_bound, 1e-15),
            f"error {error:.2e}, bound {result.error_bound:.2e}",
        )


def run_verification(k_max: int, tol: Optional[float] = None, numeric: bool = True) -> List[CheckOutcome]:
    """
    Run every exact check for k = 2..k_max and the numeric cross-checks for
    k <= min(k_max, NUMERIC_K_MAX).

    Args:
        k_max: Largest dimension, at least 2
        tol: Tolerance for the numeric engines
        numeric: Skip the numeric part when False

    Returns:
        List[CheckOutcome]: One outcome per check; a check that raised counts as failed
    """
    rng = random.Random(VERIFY_SEED)
    opts = EvalOptions(tol=tol) if tol is not None else EvalOptions()
    outcomes: List[CheckOutcome] = []

    def collect(name: str, checks: Iterator[CheckOutcome]) -> None:
        try:
            outcomes.extend(checks)
        except ZetaError as e:
            logger.error(f"{name} raised: {str(e)}")
            outcomes.append(CheckOutcome(name, False, str(e)))

    collect("half-shift Hurwitz values", half_shift_checks())
    for k in range(2, k_max + 1):
        collect(f"exact checks k={k}", exact_checks(k, rng))
    if numeric:
        for k in range(2, min(k_max, NUMERIC_K_MAX) + 1):
            collect(f"numeric checks k={k}", numeric_checks(k, opts, rng))
        collect("Hurwitz half-argument identity", hurwitz_checks(opts, rng))
        collect("closed-form anchors", anchor_checks(k_max, opts))

    failed = [outcome.name for outcome in outcomes if not outcome.passed]
    logger.info(f"Verification ran {len(outcomes)} checks, {len(failed)} failed")
    return outcomes
