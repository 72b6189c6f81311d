import logging
from fractions import Fraction
from math import comb, factorial
from typing import List

from exceptions import DomainError, UnsupportedValueError
from models.space import PoleEntry, PolePoint, SpaceSpec
from utils.coefficient_utils import coeffs_via_recursion
from utils.exact_utils import generalized_binomial, hurwitz_zeta_nonpos_int, riemann_zeta_nonpos_int

logger = logging.getLogger(__name__)


def _check_index(n: int) -> None:
    if n < 0:
        raise DomainError(f"index n must be non-negative, got {n}")


def residue(spec: SpaceSpec, n: int) -> Fraction:
    """
    Exact residue of Z_k (sphere) or L_k (projective) at s = k/2 - n.

    Each Hurwitz factor zeta(2s + 2l - j; a) contributes residue 1/2 at its
    pole, which fixes the prefactor 1/(2(k-1)!) for spheres. The projective
    series carries an extra 1/2, so its residues are half the sphere ones.

    Args:
        spec: Which zeta function
        n: Pole candidate index, n >= 0

    Returns:
        Fraction: The residue; zero where the candidate point is regular
    """
    _check_index(n)
    k = spec.k
    table = coeffs_via_recursion(k)
    shift_sq = Fraction(k - 1, 2) ** 2
    top = n - Fraction(k, 2)
    total = Fraction(0)
    for h in range(min(n, (k - 2) // 2) + 1):
        sign = -1 if (n - h) % 2 else 1
        total += sign * shift_sq ** (n - h) * generalized_binomial(top, n - h) * table[k - 2 * h - 1]
    prefactor = Fraction(1, 2 * factorial(k - 1))
    if not spec.is_sphere:
        prefactor /= 2
    return prefactor * total


def pole_catalog(spec: SpaceSpec, n_max: int) -> List[PoleEntry]:
    """
    List every candidate pole s = k/2 - n for n = 0..n_max with its residue.

    Args:
        spec: Which zeta function
        n_max: Largest candidate index, >= 0

    Returns:
        List[PoleEntry]: Candidates in order of decreasing location
    """
    _check_index(n_max)
    entries = []
    for n in range(n_max + 1):
        value = residue(spec, n)
        entries.append(PoleEntry(point=PolePoint.at(spec.k, n), residue=value, regular=value == 0))
    return entries


def _even_sphere_special_value(k: int, n: int) -> Fraction:
    """
    Z_k(-n) for even k: riemann zeta at negative odd integers plus the
    finite terms left where a Hurwitz pole meets a zero of the binomial factor.
    """
    table = coeffs_via_recursion(k)
    shift = Fraction(k - 1, 2)
    total = Fraction(0)
    for h in range((k - 2) // 2 + 1):
        coefficient = table[k - 2 * h - 1]
        inner = Fraction(0)
        for l in range(n + 1):
            exponent = 2 * h + 1 + 2 * l - 2 * n - k
            sign = -1 if l % 2 else 1
            # (2^e - 1) zeta(e) = zeta(e; 1/2), e a negative odd integer
            half_shift_zeta = (Fraction(1, 2 ** -exponent) - 1) * riemann_zeta_nonpos_int(-exponent)
            inner += sign * comb(n, l) * shift ** (2 * l) * half_shift_zeta
        m = (k - 2 * h) // 2
        sign = -1 if n % 2 else 1
        inner += sign * Fraction(factorial(n) * factorial(m - 1), 2 * factorial(m + n)) * shift ** (k - 2 * h + 2 * n)
        total += coefficient * inner
    total /= factorial(k - 1)
    if n == 0:
        total -= 1
    return total


def special_value(spec: SpaceSpec, n: int) -> Fraction:
    """
    Exact value of the zeta function at s = -n.

    Odd k: Z_k(0) = L_k(0) = -1 and Z_k(-n) = L_k(-n) = 0 for n >= 1.
    Even k spheres: a finite rational sum over B_{k,k-2h-1} and zeta at negative
    odd integers.

    Args:
        spec: Which zeta function
        n: n >= 0

    Returns:
        Fraction: The exact value

    Raises:
        UnsupportedValueError: For projective spaces of even dimension
    """
    _check_index(n)
    if spec.k % 2:
        return Fraction(-1) if n == 0 else Fraction(0)
    if spec.is_sphere:
        return _even_sphere_special_value(spec.k, n)
    raise UnsupportedValueError(f"no closed form for {spec.label}(-{n}) with even k; use numeric evaluation")


def series_special_value(spec: SpaceSpec, n: int) -> Fraction:
    """
    Z_k(-n) or L_k(-n) read off the binomial Hurwitz series directly.

    At s = -n only l <= n survive, each with Hurwitz values at non-positive
    integers. For even k the terms whose Hurwitz argument hits 1 at
    l = (k-2h)/2 + n add the finite limit (-1)^n n! (m-1)! / (2 (m+n)!) with
    m = (k-2h)/2. This does not pass through the Riemann zeta reduction, so it
    checks special_value independently.

    Raises:
        UnsupportedValueError: For projective spaces of even dimension
    """
    _check_index(n)
    k = spec.k
    if not spec.is_sphere and k % 2 == 0:
        raise UnsupportedValueError(f"no closed form for {spec.label}(-{n}) with even k; use numeric evaluation")
    table = coeffs_via_recursion(k)
    if spec.is_sphere:
        shift, a, weight, scale = Fraction(k - 1, 2), Fraction(k + 1, 2), 1, Fraction(1)
    else:
        shift, a, weight, scale = Fraction(k - 1, 4), Fraction(k + 3, 4), 2, Fraction(4) ** n
    total = Fraction(0)
    for l in range(n + 1):
        sign = -1 if l % 2 else 1
        inner = sum(
            (weight ** j * b * hurwitz_zeta_nonpos_int(2 * n - 2 * l + j, a) for j, b in table.nonzero()),
            Fraction(0),
        )
        total += sign * comb(n, l) * shift ** (2 * l) * inner
    if k % 2 == 0:
        for j, b in table.nonzero():
            m = (j + 1) // 2
            sign = -1 if n % 2 else 1
            total += b * sign * Fraction(factorial(n) * factorial(m - 1), 2 * factorial(m + n)) * shift ** (2 * (m + n))
    return scale * total / factorial(k - 1)
