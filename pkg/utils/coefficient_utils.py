import logging
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Dict, Iterable, List, Optional

from exceptions import DomainError
from models.coefficients import CoefficientMethod, CoefficientTable, IdentityCheck
from utils.exact_utils import multiplicity_polynomial, stirling_first

logger = logging.getLogger(__name__)


def _check_k(k: int) -> None:
    if k < 2:
        raise DomainError(f"coefficient tables need k >= 2, got k={k}")


def _poly_mul_linear(poly: List[Fraction], root_shift: Fraction) -> List[Fraction]:
    """Multiply sum_j poly[j] x^j by (x + root_shift)"""
    out = [Fraction(0)] * (len(poly) + 1)
    for j, c in enumerate(poly):
        out[j] += c * root_shift
        out[j + 1] += c
    return out


@lru_cache(maxsize=None)
def coeffs_via_expansion(k: int) -> CoefficientTable:
    """
    Expand (k-1)! P_k(x - (k-1)/2) = 2x (x - (k-1)/2 + 1) ... (x - (k-1)/2 + k-2).

    Args:
        k: Dimension, k >= 2

    Returns:
        CoefficientTable: B_{k,0..k-1}
    """
    _check_k(k)
    shift = Fraction(k - 1, 2)
    poly = [Fraction(0), Fraction(2)]
    for i in range(1, k - 1):
        poly = _poly_mul_linear(poly, i - shift)
    return CoefficientTable(k=k, coeffs=tuple(poly), method=CoefficientMethod.EXPANSION)


@lru_cache(maxsize=None)
def coeffs_via_stirling(k: int) -> CoefficientTable:
    """
    B_{k,j} = sum_p (-1)^(k+j+1) C(j+p, j) ((k-1)/2)^p (s_{k,j+p+1} + s_{k-1,j+p}).
    """
    _check_k(k)
    shift = Fraction(k - 1, 2)
    coeffs = []
    for j in range(k):
        sign = -1 if (k + j + 1) % 2 else 1
        total = Fraction(0)
        for p in range(k - j):
            total += comb(j + p, j) * shift ** p * (stirling_first(k, j + p + 1) + stirling_first(k - 1, j + p))
        coeffs.append(sign * total)
    return CoefficientTable(k=k, coeffs=tuple(coeffs), method=CoefficientMethod.STIRLING)


@lru_cache(maxsize=None)
def coeffs_via_reduced_stirling(k: int) -> CoefficientTable:
    """
    Single-row Stirling form:
    B_{k,j} = 2 sum_p (-1)^(k+j+1) C(j+p-1, j-1) ((k-1)/2)^p s_{k-1,j+p}.
    """
    _check_k(k)
    shift = Fraction(k - 1, 2)
    coeffs = [Fraction(0)]
    for j in range(1, k):
        sign = -1 if (k + j + 1) % 2 else 1
        total = Fraction(0)
        for p in range(k - j):
            total += comb(j + p - 1, j - 1) * shift ** p * stirling_first(k - 1, j + p)
        coeffs.append(2 * sign * total)
    return CoefficientTable(k=k, coeffs=tuple(coeffs), method=CoefficientMethod.REDUCED_STIRLING)


@lru_cache(maxsize=None)
def coeffs_via_recursion(k: int) -> CoefficientTable:
    """
    B_{k,j} = B_{k-2,j-2} - ((k-3)/2)^2 B_{k-2,j}, from B_{2,1} = B_{3,2} = 2.
    Indices outside the previous row count as 0.
    """
    _check_k(k)
    if k == 2:
        coeffs = (Fraction(0), Fraction(2))
    elif k == 3:
        coeffs = (Fraction(0), Fraction(0), Fraction(2))
    else:
        previous = coeffs_via_recursion(k - 2)
        square = Fraction(k - 3, 2) ** 2
        coeffs = tuple(previous[j - 2] - square * previous[j] for j in range(k))
    return CoefficientTable(k=k, coeffs=coeffs, method=CoefficientMethod.RECURSION)


METHODS = {
    CoefficientMethod.EXPANSION: coeffs_via_expansion,
    CoefficientMethod.STIRLING: coeffs_via_stirling,
    CoefficientMethod.REDUCED_STIRLING: coeffs_via_reduced_stirling,
    CoefficientMethod.RECURSION: coeffs_via_recursion,
}


def coefficient_table(k: int, method: CoefficientMethod = CoefficientMethod.RECURSION) -> CoefficientTable:
    """Look up the table for k with the given method (cached per (k, method))"""
    return METHODS[CoefficientMethod(method)](k)


def compare_methods(k: int, methods: Optional[Iterable[CoefficientMethod]] = None) -> Dict[CoefficientMethod, bool]:
    """
    Compare each method's row against the expansion row.

    Returns:
        Dict: method -> True when entrywise equal to the expansion
    """
    reference = coeffs_via_expansion(k).coeffs
    result = {}
    for method in methods or METHODS:
        result[CoefficientMethod(method)] = coefficient_table(k, method).coeffs == reference
        if not result[CoefficientMethod(method)]:
            logger.error(f"Coefficient mismatch for k={k}: {method.value} differs from expansion")
    return result


def parity_pattern_holds(table: CoefficientTable) -> bool:
    """B_{k,j} = 0 exactly when j = 0 or j has the parity of k"""
    for j, value in enumerate(table.coeffs):
        should_vanish = j == 0 or (j - table.k) % 2 == 0
        if should_vanish != (value == 0):
            return False
    return True


def integrality_holds(table: CoefficientTable) -> bool:
    """Odd k: every entry is an integer. Even k: 2^(k-2) times every entry is."""
    scale = 1 if table.k % 2 else 2 ** (table.k - 2)
    return all((scale * value).denominator == 1 for value in table.coeffs)


def check_identities(k: int, table: Optional[CoefficientTable] = None) -> List[IdentityCheck]:
    """
    Evaluate the exact identities satisfied by a coefficient row.

    Sphere forms: sum_j B_{k,j} ((k-1)/2)^j = (k-1)!, and sum_j B_{k,j} p^j = 0
    at p = 1, ..., (k-3)/2 (odd k) or p = 1/2, 3/2, ..., (k-3)/2 (even k).
    Projective forms: sum_j 2^j B_{k,j} ((k-1)/4)^j = (k-1)!, and for odd k
    sum_j 2^j B_{k,j} p^j = 0 at p = 1/2, 1, ..., (k-3)/4.

    Args:
        k: Dimension, k >= 2
        table: Row to check; defaults to the recursion row

    Returns:
        List[IdentityCheck]: One entry per identity, both sides exact
    """
    _check_k(k)
    table = table or coeffs_via_recursion(k)
    target = Fraction(factorial(k - 1))
    checks = [
        IdentityCheck(
            name=f"k={k}: sum B x^j at x=(k-1)/2 equals (k-1)!",
            left=table.evaluate(Fraction(k - 1, 2)),
            right=target,
        ),
        IdentityCheck(
            name=f"k={k}: sum 2^j B x^j at x=(k-1)/4 equals (k-1)!",
            left=table.evaluate(Fraction(k - 1, 4), weight=2),
            right=target,
        ),
    ]
    # roots of the sphere polynomial strictly inside (0, (k-1)/2)
    start = Fraction(1) if k % 2 else Fraction(1, 2)
    p = start
    while p <= Fraction(k - 3, 2):
        checks.append(IdentityCheck(name=f"k={k}: sum B p^j vanishes at p={p}", left=table.evaluate(p), right=Fraction(0)))
        p += 1
    if k % 2:
        p = Fraction(1, 2)
        while p <= Fraction(k - 3, 4):
            checks.append(IdentityCheck(
                name=f"k={k}: sum 2^j B p^j vanishes at p={p}",
                left=table.evaluate(p, weight=2),
                right=Fraction(0),
            ))
            p += Fraction(1, 2)
    return checks


def check_polynomial_identity(k: int, x: Fraction, table: Optional[CoefficientTable] = None) -> IdentityCheck:
    """sum_j B_{k,j} x^j against (k-1)! P_k(x - (k-1)/2) evaluated directly"""
    table = table or coeffs_via_recursion(k)
    x = Fraction(x)
    return IdentityCheck(
        name=f"k={k}: polynomial identity at x={x}",
        left=table.evaluate(x),
        right=multiplicity_polynomial(k, x - Fraction(k - 1, 2)),
    )
