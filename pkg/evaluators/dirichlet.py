import cmath
import logging
import math
from math import factorial
from typing import Optional

import numpy as np

from config import DEFAULT_ORACLE_TERMS, DIRICHLET_MARGIN
from exceptions import DomainError, NonFiniteResultError
from evaluators.continuation import SeriesShape
from models.evaluation import ComplexValue, EvalOptions, EvalResult
from models.space import SpaceSpec
from utils.hurwitz_utils import EPS

logger = logging.getLogger(__name__)


def _log_terms(spec: SpaceSpec, s: complex, n_terms: int) -> np.ndarray:
    """log of P_k(m) / (m(m+k-1))^s for m = n (sphere) or m = 2n (projective), n = 1..n_terms-1"""
    k = spec.k
    n = np.arange(1, n_terms, dtype=float)
    m = n if spec.is_sphere else 2 * n
    log_mult = np.log(2 * m + k - 1) - math.lgamma(k)
    for i in range(1, k - 1):
        log_mult += np.log(m + i)
    return log_mult - s * (np.log(m) + np.log(m + k - 1))


def _integral_tail(shape: SeriesShape, s: complex, start: float) -> complex:
    """
    Integral of the summand from start to infinity, expanded in (c/y)^2 with y = start + c:

        sum_j sum_l w^j B_j (s)_l/l! c^(2l) y^(j - 2s - 2l + 1) / (2s + 2l - j - 1)

    times scale(s)/(k-1)!.
    """
    y = start + float(shape.shift)
    c_sq = float(shape.shift) ** 2
    log_y = math.log(y)
    total = 0j
    rising = 1 + 0j
    for l in range(64):
        if l > 0:
            rising *= (s + l - 1) / l
        level = 0j
        for j, coefficient in shape.terms:
            exponent = j - 2 * s - 2 * l + 1
            level += coefficient * cmath.exp(exponent * log_y) / (-exponent)
        contribution = rising * c_sq ** l * level
        total += contribution
        if abs(contribution) <= EPS * abs(total) / 16:
            break
    return shape.scale(s) * shape.norm * total


def dirichlet_oracle(spec: SpaceSpec, s: complex, N: int = DEFAULT_ORACLE_TERMS,
                     opts: Optional[EvalOptions] = None) -> EvalResult:
    """
    Evaluate Z_k(s) or L_k(s) straight from the defining Dirichlet series.

    The first N-1 terms are summed directly; the rest is the integral of the
    summand from N plus half its value at N. The remainder of that
    trapezoid-style tail is at most half the integral of |f'|, bounded with
    P_k(m) <= 2 (m+k)^(k-1) / (k-1)!.

    Args:
        spec: Which zeta function
        s: Complex argument with Re s > k/2 + DIRICHLET_MARGIN
        N: Where the direct sum hands over to the integral tail
        opts: Unused accuracy controls, accepted for a uniform evaluator signature

    Returns:
        EvalResult: Value and an error bound covering the tail and rounding

    Raises:
        DomainError: If Re s is too close to the abscissa of convergence or N < 2
    """
    s = complex(s)
    k = spec.k
    if s.real <= k / 2 + DIRICHLET_MARGIN:
        raise DomainError(f"Dirichlet series needs Re s > {k / 2 + DIRICHLET_MARGIN}, got {s.real}")
    if N < 2:
        raise DomainError(f"N must be at least 2, got {N}")

    logs = _log_terms(spec, s, N)
    terms = np.exp(logs)
    partial = complex(terms.sum())
    magnitude = float(np.abs(terms).sum())
    # each exp(log) carries a relative error of about EPS times the size of its argument
    log_span = (2 * abs(s) + k) * math.log(2 * N + k)
    roundoff = EPS * (4 + math.log2(N) + log_span) * magnitude

    shape = SeriesShape(spec)
    at_n = complex(np.exp(_log_terms(spec, s, N + 1)[-1]))
    tail = _integral_tail(shape, s, float(N)) + at_n / 2
    value = partial + tail

    # remainder of the trapezoid tail: (1/2) int |f'| with |f'| <= (k - 1 + 2|s|) |f| / x
    sigma = s.real
    decay = 2 * sigma - k + 1
    envelope = 2 * (1 + k / N) ** (k - 1) / factorial(k - 1)
    if not spec.is_sphere:
        envelope *= 2.0 ** (k - 1 - 2 * sigma)
    tail_bound = 0.5 * (k - 1 + 2 * abs(s)) * envelope * N ** (-decay) / decay

    if not cmath.isfinite(value):
        raise NonFiniteResultError(f"Dirichlet sum for {spec.label}({s}) overflowed")
    logger.debug(f"Dirichlet {spec.label}({s}) with N={N}: tail {tail}, bound {tail_bound:.2e}")
    return EvalResult(
        value=ComplexValue.of(value),
        error_bound=tail_bound + roundoff + 4 * EPS * abs(tail),
        terms_used=N,
    )
