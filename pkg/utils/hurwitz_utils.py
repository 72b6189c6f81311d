import cmath
import logging
import math
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import NamedTuple, Optional, Tuple, Union

import numpy as np
from scipy.special import loggamma

from config import (
    EM_MAX_ORDER,
    EM_MAX_TERMS,
    MIN_TOL,
    REFLECTION_BELOW,
    REFLECTION_MAX_DENOMINATOR,
)
from exceptions import DomainError, NonFiniteResultError, PoleAtOneError
from models.evaluation import ComplexValue, EvalFlag, EvalOptions, EvalResult
from utils.exact_utils import bernoulli_number, hurwitz_zeta_nonpos_int

logger = logging.getLogger(__name__)

EPS = float(np.finfo(float).eps)
LOG_TWO_PI = math.log(2 * math.pi)

Shift = Union[float, int, Fraction]


class HurwitzSum(NamedTuple):
    """Internal Euler-Maclaurin outcome: value, truncation bound, rounding estimate"""
    value: complex
    bound: float
    roundoff: float
    terms: int


@lru_cache(maxsize=None)
def _em_weights(order: int) -> np.ndarray:
    """B_{2m}/(2m)! for m = 1..order, as floats"""
    return np.array([float(bernoulli_number(2 * m) / factorial(2 * m)) for m in range(1, order + 1)])


def _log_em_bound(w: complex, log_x: float, m: int, log_rising: float) -> float:
    """
    log of 4 |(w)_{2m}| / (2 pi)^{2m} * x^{-(Re w + 2m - 1)} / (Re w + 2m - 1),
    the remainder bound after m correction terms.
    """
    decay = w.real + 2 * m - 1
    return math.log(4.0) + log_rising - 2 * m * LOG_TWO_PI - decay * log_x - math.log(decay)


def _em_plan(w: complex, a: float, target: float, min_order: int, scaled: bool) -> Tuple[int, int, float]:
    """
    Choose the number of direct terms N and the correction order M.

    Returns:
        Tuple: (N, M, remainder bound) with the smallest bound found when the
        target cannot be met inside the search limits
    """
    start_order = max(min_order, math.ceil((2.0 - w.real) / 2.0))
    log_target = math.log(target)
    log_scale = w.real * math.log(a) if scaled else 0.0
    n_terms = max(10, math.ceil(abs(w.imag)), math.ceil(2 * a))
    best = (n_terms, start_order, math.inf)
    while n_terms <= EM_MAX_TERMS:
        log_x = math.log(n_terms + a)
        log_rising = 0.0
        for i in range(2 * start_order):
            factor = abs(w + i)
            if factor == 0.0:
                return n_terms, start_order, 0.0
            log_rising += math.log(factor)
        for m in range(start_order, EM_MAX_ORDER + 1):
            log_bound = _log_em_bound(w, log_x, m, log_rising) + log_scale
            if log_bound < math.log(best[2]):
                best = (n_terms, m, math.exp(log_bound))
            if log_bound <= log_target:
                return n_terms, m, math.exp(log_bound)
            factor = abs(w + 2 * m) * abs(w + 2 * m + 1)
            if factor == 0.0:
                return n_terms, m + 1, 0.0
            log_rising += math.log(factor)
        n_terms *= 2
    logger.debug(f"Euler-Maclaurin target {target:.1e} not reached for w={w}, a={a}; best bound {best[2]:.2e}")
    return best


def _exprel(z: complex) -> complex:
    """(e^z - 1)/z, accurate near z = 0"""
    if abs(z) < 0.1:
        total, term = 0j, 1 + 0j
        for n in range(1, 18):
            total += term
            term *= z / (n + 1)
        return total
    return (cmath.exp(z) - 1) / z


def exp_rounding(z: complex) -> float:
    """Relative rounding error of exp(z) when z itself is only known to a few ulps"""
    return EPS * (1 + 2 * abs(z))


def _em_sum(w: complex, a: float, target: float, min_order: int, scaled: bool = False,
            regularized: bool = False) -> HurwitzSum:
    """
    Euler-Maclaurin evaluation of zeta(w; a).

    scaled returns a^w zeta(w; a), which stays O(1) for large Re w.
    regularized returns zeta(w; a) - 1/(w - 1), finite at w = 1.
    """
    n_terms, order, bound = _em_plan(w, a, target, min_order, scaled)
    n = np.arange(n_terms, dtype=float)
    x = n_terms + a
    if scaled:
        logs = np.log1p(n / a)
        log_x = math.log(x / a)
    else:
        logs = np.log(n + a)
        log_x = math.log(x)
    direct_terms = np.exp(-w * logs)
    direct = complex(direct_terms.sum())
    # each exp(-w log) carries a relative error of about EPS times the size of its argument
    direct_roundoff = EPS * float(np.sum(
        np.abs(direct_terms) * (4 + math.log2(n_terms) + 2 * abs(w) * np.abs(logs))
    ))
    x_pow = cmath.exp(-w * log_x)
    if regularized:
        tail = -math.log(x) * _exprel((1 - w) * math.log(x))
        tail_rounding = exp_rounding((1 - w) * math.log(x))
    else:
        tail = x * x_pow / (w - 1)
        tail_rounding = exp_rounding(w * log_x)
    half = x_pow / 2
    weights = _em_weights(order)
    rising = w
    power = x_pow / x
    corrections = 0j
    correction_size = 0.0
    for m in range(1, order + 1):
        term = weights[m - 1] * rising * power
        corrections += term
        correction_size += abs(term)
        rising *= (w + 2 * m - 1) * (w + 2 * m)
        power /= x * x
    value = direct + tail + half + corrections
    roundoff = (
        direct_roundoff
        + (4 * EPS + tail_rounding) * abs(tail)
        + (4 * EPS + exp_rounding(w * log_x)) * (abs(half) + correction_size)
        + 4 * order * EPS * correction_size
    )
    return HurwitzSum(value=value, bound=bound, roundoff=roundoff, terms=n_terms + order)


def _small_denominator(a: Shift) -> Optional[Fraction]:
    """The exact rational behind a, if its denominator is small"""
    if isinstance(a, Fraction):
        return a if a.denominator <= REFLECTION_MAX_DENOMINATOR else None
    guess = Fraction(a).limit_denominator(REFLECTION_MAX_DENOMINATOR)
    if abs(float(guess) - a) <= 4 * EPS * max(1.0, abs(a)):
        return guess
    return None


def _reflected_sum(w: complex, a: Fraction, target: float, min_order: int, scaled: bool) -> HurwitzSum:
    """
    zeta(w; a) for Re w < 0 through Hurwitz's formula

        zeta(1 - t; a0) = 2 Gamma(t) / (2 pi)^t * sum_n cos(pi t / 2 - 2 pi n a0) n^(-t),

    with a0 = a - ceil(a) + 1 in (0, 1] written as p/q, so the cosine series
    collapses onto q Hurwitz sums with Re t > 1. The shift back to a subtracts
    finitely many powers.
    """
    t = 1 - w
    shift = math.ceil(a) - 1
    a0 = a - shift
    p, q = a0.numerator, a0.denominator
    log_gamma = complex(loggamma(t))
    prefactor = 2 * cmath.exp(log_gamma - t * LOG_TWO_PI)
    # loggamma is accurate to a few ulps of its own size
    prefactor_rounding = EPS * (1 + 2 * (abs(log_gamma) + abs(t) * LOG_TWO_PI))
    q_pow = cmath.exp(-t * math.log(q))
    outer_rounding = prefactor_rounding + exp_rounding(t * math.log(q))
    series, bound, roundoff, terms = 0j, 0.0, 0.0, 0
    for r in range(1, q + 1):
        angle = math.pi * t / 2 - 2 * math.pi * ((r * p) % q) / q
        cosine = cmath.cos(angle)
        weight = prefactor * cosine * q_pow
        # an angle known to 2 EPS |angle| moves the cosine by that much times |sin|
        weight_error = abs(prefactor * q_pow) * (
            abs(cosine) * outer_rounding + 2 * EPS * abs(angle) * abs(cmath.sin(angle))
        )
        inner = _em_sum(t, r / q, target / (q * max(abs(weight), 1e-300)), min_order)
        series += weight * inner.value
        bound += abs(weight) * inner.bound
        roundoff += abs(weight) * inner.roundoff + (weight_error + 4 * EPS * abs(weight)) * abs(inner.value)
        terms += inner.terms
    powers = [cmath.exp(-w * math.log(float(a0) + i)) for i in range(shift)]
    value = series - sum(powers)
    roundoff += 4 * EPS * abs(series) + sum(
        (4 * EPS + exp_rounding(w * math.log(float(a0) + i))) * abs(v) for i, v in enumerate(powers)
    )
    if scaled:
        factor = cmath.exp(w * math.log(a))
        value *= factor
        bound *= abs(factor)
        roundoff = roundoff * abs(factor) + exp_rounding(w * math.log(a)) * abs(value)
    return HurwitzSum(value=value, bound=bound, roundoff=roundoff, terms=terms + shift)


def hurwitz_sum(w: complex, a: Shift, target: float, em_order: int, scaled: bool = False) -> HurwitzSum:
    """
    Hurwitz zeta without option handling, for use inside other evaluators.

    Args:
        w: Argument, w != 1
        a: Shift, a > 0
        target: Wanted bound on the truncation error
        em_order: Minimum Euler-Maclaurin order (even)
        scaled: Return a^w zeta(w; a) instead of zeta(w; a)

    Returns:
        HurwitzSum: Value with truncation bound and rounding estimate
    """
    w = complex(w)
    min_order = em_order // 2
    if w.real < REFLECTION_BELOW:
        exact_shift = _small_denominator(a)
        if exact_shift is not None:
            return _reflected_sum(w, exact_shift, target, min_order, scaled)
    return _em_sum(w, float(a), target, min_order, scaled=scaled)


def regularized_sum(w: complex, a: Shift, target: float, em_order: int) -> HurwitzSum:
    """
    zeta(w; a) - 1/(w - 1) without option handling.

    At w = 1 exactly this is -psi(a), taken from the harmonic closed form when
    a is a positive integer or half-integer (every sphere shift and the odd-k
    projective shifts). Other points go through Euler-Maclaurin.
    """
    w = complex(w)
    if w == 1:
        try:
            value = -digamma_at_half_integer(Fraction(a))
            return HurwitzSum(value=complex(value), bound=0.0, roundoff=4 * EPS * abs(value), terms=0)
        except DomainError:
            pass
    return _em_sum(w, float(a), target, em_order // 2, regularized=True)


def _check_shift(a: Shift) -> None:
    if not a > 0:
        raise DomainError(f"Hurwitz shift must be positive, got a={a}")


def _clamp(opts: EvalOptions) -> Tuple[float, frozenset]:
    if opts.tol < MIN_TOL:
        logger.warning(f"Tolerance {opts.tol:.1e} is below {MIN_TOL:.0e}; clamping")
        return MIN_TOL, frozenset({EvalFlag.TOLERANCE_CLAMPED})
    return opts.tol, frozenset()


def _exact_nonpositive(s: complex, a: Shift) -> Optional[Fraction]:
    if s.imag != 0 or s.real > 0 or s.real != math.floor(s.real):
        return None
    return hurwitz_zeta_nonpos_int(int(-s.real), Fraction(a))


def _finish(total: HurwitzSum, tol: float, flags: frozenset) -> EvalResult:
    if not cmath.isfinite(total.value):
        raise NonFiniteResultError(f"Hurwitz evaluation overflowed: {total.value}")
    if total.bound > tol:
        flags = flags | {EvalFlag.TRUNCATED}
        logger.warning(f"Hurwitz truncation bound {total.bound:.2e} exceeds tolerance {tol:.1e}")
    if total.roundoff > tol:
        flags = flags | {EvalFlag.NEAR_CANCELLATION}
    return EvalResult(
        value=ComplexValue.of(total.value),
        error_bound=total.bound + total.roundoff,
        terms_used=total.terms,
        flags=flags,
    )


def hurwitz_zeta(s: complex, a: Shift, opts: Optional[EvalOptions] = None) -> EvalResult:
    """
    Hurwitz zeta function zeta(s; a) = sum_{n>=0} (n+a)^(-s), continued to s != 1.

    Args:
        s: Complex argument
        a: Real shift, a > 0
        opts: Accuracy controls

    Returns:
        EvalResult: Value within error_bound of zeta(s; a)

    Raises:
        PoleAtOneError: If |s - 1| <= opts.pole_eps
        DomainError: If a <= 0
    """
    opts = opts or EvalOptions()
    s = complex(s)
    _check_shift(a)
    if abs(s - 1) <= opts.pole_eps:
        raise PoleAtOneError(s, opts.pole_eps)
    tol, flags = _clamp(opts)
    exact = _exact_nonpositive(s, a)
    if exact is not None:
        value = float(exact)
        return EvalResult(
            value=ComplexValue(re=value),
            error_bound=abs(value) * EPS,
            flags=flags | {EvalFlag.EXACT_ROUTED},
            exact=str(exact),
        )
    total = hurwitz_sum(s, a, tol / 2, opts.em_order)
    logger.debug(f"zeta({s}; {a}) = {total.value} using {total.terms} terms")
    return _finish(total, tol, flags)


def riemann_zeta(s: complex, opts: Optional[EvalOptions] = None) -> EvalResult:
    """Riemann zeta function, zeta(s) = zeta(s; 1)"""
    return hurwitz_zeta(s, 1, opts)


def regularized_hurwitz_zeta(s: complex, a: Shift, opts: Optional[EvalOptions] = None) -> EvalResult:
    """
    zeta(s; a) - 1/(s - 1), analytic at s = 1 where it equals -psi(a).

    Args:
        s: Complex argument near 1
        a: Real shift, a > 0
        opts: Accuracy controls

    Returns:
        EvalResult: The regular part of the Hurwitz zeta function
    """
    opts = opts or EvalOptions()
    s = complex(s)
    _check_shift(a)
    tol, flags = _clamp(opts)
    return _finish(regularized_sum(s, a, tol / 2, opts.em_order), tol, flags)


def digamma_at_half_integer(a: Union[int, Fraction]) -> float:
    """
    psi(a) for a positive integer or half-integer, from the harmonic closed forms
    psi(m) = -gamma + H_{m-1} and psi(m + 1/2) = -gamma - 2 ln 2 + 2 sum_{i=1}^{m} 1/(2i-1).

    Args:
        a: Positive integer or half-integer

    Returns:
        float: psi(a)

    Raises:
        DomainError: If a is not a positive integer or half-integer
    """
    a = Fraction(a)
    if a <= 0 or a.denominator not in (1, 2):
        raise DomainError(f"digamma closed form needs a positive integer or half-integer, got {a}")
    if a.denominator == 1:
        harmonic = sum((Fraction(1, i) for i in range(1, a.numerator)), Fraction(0))
        return -float(np.euler_gamma) + float(harmonic)
    m = a.numerator // 2
    odd_harmonic = sum((Fraction(1, 2 * i - 1) for i in range(1, m + 1)), Fraction(0))
    return -float(np.euler_gamma) - 2 * math.log(2) + 2 * float(odd_harmonic)
