import cmath
import logging
import math
from fractions import Fraction
from math import factorial
from typing import Dict, List, Optional, Tuple

from config import MIN_TOL, REGULARIZE_RADIUS, RESIDUE_EPS
from exceptions import AtPoleError, DomainError, NonFiniteResultError, UnsupportedValueError
from models.evaluation import ComplexValue, EvalFlag, EvalOptions, EvalResult
from models.space import SpaceSpec
from utils.coefficient_utils import coeffs_via_recursion
from utils.hurwitz_utils import EPS, exp_rounding, hurwitz_sum, regularized_sum
from utils.residue_utils import residue, special_value

logger = logging.getLogger(__name__)


class SeriesShape:
    """
    The data that turns a coefficient row into the binomial Hurwitz series

        Z(s) = scale(s) / (k-1)! * sum_l (s)_l / l! * c^(2l) * sum_j w^j B_{k,j} zeta(2s + 2l - j; a)

    Spheres use c = (k-1)/2, a = (k+1)/2, w = 1, scale = 1. Projective spaces
    use c = (k-1)/4, a = (k+3)/4, w = 2, scale = 2^(-2s).
    """

    def __init__(self, spec: SpaceSpec):
        k = spec.k
        self.spec = spec
        if spec.is_sphere:
            self.shift, self.a, self.weight = Fraction(k - 1, 2), Fraction(k + 1, 2), 1
        else:
            self.shift, self.a, self.weight = Fraction(k - 1, 4), Fraction(k + 3, 4), 2
        self.ratio_sq = float(self.shift / self.a) ** 2
        self.norm = 1.0 / factorial(k - 1)
        self.terms: List[Tuple[int, float]] = [
            (j, float(self.weight ** j * b)) for j, b in coeffs_via_recursion(k).nonzero()
        ]

    def scale(self, s: complex) -> complex:
        if self.spec.is_sphere:
            return 1.0 + 0j
        return cmath.exp(-2 * s * math.log(2))

    def scale_rounding(self, s: complex) -> float:
        """Relative rounding error of scale(s) times the 1/(k-1)! norm"""
        if self.spec.is_sphere:
            return 2 * EPS
        return 2 * EPS + exp_rounding(2 * s * math.log(2))


def _rising_exact(s0: Fraction, l: int) -> Fraction:
    value = Fraction(1)
    for i in range(l):
        value *= (s0 + i) / (i + 1)
    return value


def _divided_difference(s: complex, s0: Fraction, l: int) -> Tuple[complex, float]:
    """
    (R_l(s) - R_l(s0)) / (s - s0) for R_l(s) = prod_{i<l} (s+i)/(i+1), by
    telescoping over the linear factors. No subtraction of nearby values.

    Returns the value and the sum of the absolute telescoped terms.
    """
    if l == 0:
        return 0j, 0.0
    suffix = [1 + 0j] * (l + 1)
    for i in range(l - 1, -1, -1):
        suffix[i] = suffix[i + 1] * (s + i) / (i + 1)
    total, size, prefix = 0j, 0.0, 1.0
    for i in range(l):
        piece = prefix * suffix[i + 1] / (i + 1)
        total += piece
        size += abs(piece)
        prefix *= float(s0 + i) / (i + 1)
    return total, size


def _nearest_pole(k: int, s: complex) -> Optional[Tuple[int, Fraction]]:
    n = round(k / 2 - s.real)
    if n < 0:
        return None
    return n, Fraction(k, 2) - n


def _exact_route(spec: SpaceSpec, s: complex) -> Optional[Fraction]:
    if s.imag != 0 or s.real > 0 or s.real != math.floor(s.real):
        return None
    try:
        return special_value(spec, int(-s.real))
    except UnsupportedValueError:
        return None


def zeta_continuation(spec: SpaceSpec, s: complex, opts: Optional[EvalOptions] = None) -> EvalResult:
    """
    Evaluate Z_k(s) (sphere) or L_k(s) (projective) anywhere in the complex plane.

    Non-positive integers with a closed form are answered exactly. Elsewhere the
    binomial Hurwitz series is summed until a geometric tail certificate meets
    the tolerance. Terms whose Hurwitz argument sits within REGULARIZE_RADIUS of
    1 are split into their pole and regular parts; pole parts belonging to a
    point with zero residue cancel exactly and are dropped.

    Args:
        spec: Which zeta function
        s: Complex argument
        opts: Accuracy controls

    Returns:
        EvalResult: Value with an absolute error bound and diagnostic flags

    Raises:
        AtPoleError: If s is within opts.pole_eps of a pole with nonzero residue
        NonFiniteResultError: If the sum overflows
    """
    opts = opts or EvalOptions()
    s = complex(s)
    flags = frozenset()
    tol = opts.tol
    if tol < MIN_TOL:
        logger.warning(f"Tolerance {tol:.1e} is below {MIN_TOL:.0e}; clamping")
        tol, flags = MIN_TOL, frozenset({EvalFlag.TOLERANCE_CLAMPED})

    exact = _exact_route(spec, s)
    if exact is not None:
        value = float(exact)
        logger.debug(f"{spec.label}({s.real:g}) exact-routed to {exact}")
        return EvalResult(
            value=ComplexValue(re=value),
            error_bound=abs(value) * EPS,
            flags=flags | {EvalFlag.EXACT_ROUTED},
            exact=str(exact),
        )

    nearest = _nearest_pole(spec.k, s)
    if nearest is not None and abs(s - complex(nearest[1])) <= opts.pole_eps:
        value = residue(spec, nearest[0])
        if value != 0:
            raise AtPoleError(nearest[1], value, n=nearest[0])

    shape = SeriesShape(spec)
    prefactor = shape.scale(s) * shape.norm
    out_scale = abs(prefactor)
    a = float(shape.a)
    log_a = math.log(a)
    c_sq = float(shape.shift) ** 2
    j_factors = {j: cmath.exp(-(2 * s - j) * log_a) for j, _ in shape.terms}
    j_rounding = {j: exp_rounding((2 * s - j) * log_a) for j, _ in shape.terms}
    residue_zero: Dict[int, bool] = {}

    total = 0j
    hurwitz_error = 0.0
    roundoff = 0.0
    regularized_used = False
    quiet_run = 0
    tail = math.inf
    rising = 1 + 0j
    last_l = 0
    for l in range(opts.max_l + 1):
        last_l = l
        if l > 0:
            rising *= (s + l - 1) / l
        # rising and ratio_sq ** l pick up a few ulps per level
        drift = 6 * l * EPS
        # 6/pi^2 * sum 1/(l+1)^2 = 1 spreads the Hurwitz budget over all l
        budget = tol * 0.25 * 0.6 / ((l + 1) ** 2 * len(shape.terms))
        for j, coefficient in shape.terms:
            w = 2 * s + 2 * l - j
            if abs(w - 1) < REGULARIZE_RADIUS:
                regularized_used = True
                s0 = Fraction(1 + j, 2) - l
                unscaled = c_sq ** l * coefficient
                inner = regularized_sum(w, shape.a, budget / max(out_scale * abs(unscaled * rising), 1e-300), opts.em_order)
                divided, divided_size = _divided_difference(s, s0, l)
                term = rising * inner.value + divided / 2
                term_size = abs(rising * inner.value) + divided_size / 2
                pole_error = 0.0
                singular = _rising_exact(s0, l)
                if singular != 0:
                    n = int(Fraction(spec.k, 2) - s0)
                    if n not in residue_zero:
                        residue_zero[n] = residue(spec, n) == 0
                    if not residue_zero[n]:
                        gap = s - complex(s0)
                        pole_part = float(singular) / (2 * gap)
                        term += pole_part
                        # s - s0 is only known to EPS |s|
                        pole_error = abs(pole_part) * EPS * (2 + abs(s) / abs(gap))
                term *= unscaled
                hurwitz_error += abs(unscaled * rising) * inner.bound
                roundoff += abs(unscaled) * (
                    abs(rising) * inner.roundoff + (4 * EPS + drift) * term_size + pole_error
                )
            else:
                scaled = shape.ratio_sq ** l * coefficient * j_factors[j]
                inner = hurwitz_sum(w, shape.a, budget / max(out_scale * abs(scaled * rising), 1e-300), opts.em_order, scaled=True)
                term = scaled * rising * inner.value
                hurwitz_error += abs(scaled * rising) * inner.bound
                roundoff += abs(scaled * rising) * inner.roundoff + (4 * EPS + j_rounding[j] + drift) * abs(term)
            total += term

        # majorant of the first omitted term, valid once every Hurwitz argument has Re > 1
        next_l = l + 1
        sigmas = [2 * s.real + 2 * next_l - j for j, _ in shape.terms]
        if min(sigmas) <= 1 or next_l <= abs(s):
            quiet_run = 0
            continue
        next_rising = abs(rising * (s + l) / next_l)
        majorant = next_rising * shape.ratio_sq ** next_l * sum(
            abs(coefficient * j_factors[j]) * (1 + a / (sigma - 1))
            for (j, coefficient), sigma in zip(shape.terms, sigmas)
        )
        rho = max(1.0, (abs(s) + next_l) / (next_l + 1)) * shape.ratio_sq
        quiet_run = quiet_run + 1 if out_scale * majorant < tol / 10 else 0
        if rho < 1:
            tail = majorant * rho / (1 - rho) + majorant
            if out_scale * tail <= tol / 2 and quiet_run >= 3:
                break
    else:
        flags = flags | {EvalFlag.TRUNCATED}
        logger.warning(f"{spec.label}({s}) stopped at max_l={opts.max_l}; tail bound {out_scale * tail:.2e}")

    value = prefactor * total
    if not cmath.isfinite(value):
        raise NonFiniteResultError(f"{spec.label}({s}) overflowed")
    # no tail certificate when max_l cuts the series off first
    error_bound = out_scale * (tail + hurwitz_error + roundoff) + (2 * EPS + shape.scale_rounding(s)) * abs(value)
    if out_scale * roundoff > tol or regularized_used:
        flags = flags | {EvalFlag.NEAR_CANCELLATION}
    logger.debug(f"{spec.label}({s}) = {value} with {last_l + 1} series terms, bound {error_bound:.2e}")
    return EvalResult(
        value=ComplexValue.of(value),
        error_bound=error_bound,
        terms_used=last_l + 1,
        flags=flags,
    )


def _richardson(sample, eps: float) -> complex:
    """(4 g(eps/2) - g(eps)) / 3 for a symmetric sample g with even error expansion"""
    return (4 * sample(eps / 2) - sample(eps)) / 3


def _check_eps(eps: float) -> None:
    if not 0 < eps < 0.1:
        raise DomainError(f"eps must lie in (0, 0.1), got {eps}")


def residue_numeric(spec: SpaceSpec, n: int, eps: float = RESIDUE_EPS,
                    opts: Optional[EvalOptions] = None) -> ComplexValue:
    """
    Numerical residue at s0 = k/2 - n from symmetric samples s0 +- eps, s0 +- eps/2.

    g(e) = e (Z(s0 + e) - Z(s0 - e)) / 2 equals the residue up to O(e^2), so one
    Richardson step leaves an O(eps^4) error.
    """
    if n < 0:
        raise DomainError(f"index n must be non-negative, got {n}")
    _check_eps(eps)
    opts = opts or EvalOptions()
    s0 = spec.k / 2 - n

    def sample(e: float) -> complex:
        upper = zeta_continuation(spec, s0 + e, opts).as_complex
        lower = zeta_continuation(spec, s0 - e, opts).as_complex
        return e * (upper - lower) / 2

    return ComplexValue.of(_richardson(sample, eps))


def limit_numeric(spec: SpaceSpec, s0: complex, eps: float = RESIDUE_EPS,
                  opts: Optional[EvalOptions] = None) -> ComplexValue:
    """
    Limit of Z(s) as s -> s0 from the symmetric averages at s0 +- eps and s0 +- eps/2.
    Never evaluates at s0 itself, so it checks exact routing independently.
    """
    _check_eps(eps)
    opts = opts or EvalOptions()
    s0 = complex(s0)

    def sample(e: float) -> complex:
        upper = zeta_continuation(spec, s0 + e, opts).as_complex
        lower = zeta_continuation(spec, s0 - e, opts).as_complex
        return (upper + lower) / 2

    return ComplexValue.of(_richardson(sample, eps))
