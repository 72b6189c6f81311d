import logging
import threading
from fractions import Fraction
from math import comb, factorial, prod
from typing import List, Union

from exceptions import DomainError

logger = logging.getLogger(__name__)

RationalLike = Union[int, Fraction]


class StirlingCache:
    """
    Signed Stirling numbers of the first kind, grown row by row on demand.

    Entry (n, m) is s_{n,m} with x(x+1)...(x+n-1) = sum_m (-1)^(n+m) s_{n,m} x^m.
    Rows are only ever appended, so readers never see a partially built row.
    """

    def __init__(self):
        self._rows: List[List[int]] = [[1]]
        self._lock = threading.Lock()

    def _grow(self, n: int) -> None:
        with self._lock:
            while len(self._rows) <= n:
                size = len(self._rows) - 1
                last = self._rows[-1]
                row = [0] * (size + 2)
                for m in range(1, size + 2):
                    below = last[m - 1]
                    same = last[m] if m <= size else 0
                    row[m] = below - size * same
                self._rows.append(row)

    def get(self, n: int, m: int) -> int:
        if n < 0 or m < 0:
            raise DomainError(f"Stirling indices must be non-negative, got ({n}, {m})")
        if m > n:
            return 0
        if n >= len(self._rows):
            self._grow(n)
        return self._rows[n][m]


class BernoulliCache:
    """Bernoulli numbers B_0, B_1, ... with B_1 = -1/2, grown on demand"""

    def __init__(self):
        self._numbers: List[Fraction] = [Fraction(1)]
        self._lock = threading.Lock()

    def get(self, n: int) -> Fraction:
        if n < 0:
            raise DomainError(f"Bernoulli index must be non-negative, got {n}")
        if n >= len(self._numbers):
            with self._lock:
                while len(self._numbers) <= n:
                    m = len(self._numbers)
                    if m > 1 and m % 2:
                        self._numbers.append(Fraction(0))
                        continue
                    # sum_{i=0}^{m} C(m+1, i) B_i = 0
                    total = sum(comb(m + 1, i) * b for i, b in enumerate(self._numbers))
                    self._numbers.append(-total / (m + 1))
        return self._numbers[n]


STIRLING = StirlingCache()
BERNOULLI = BernoulliCache()


def stirling_first(n: int, m: int) -> int:
    """
    Signed Stirling number of the first kind s_{n,m}.

    Args:
        n: Row index, n >= 0
        m: Column index, m >= 0

    Returns:
        int: s_{n,m}; zero when m > n or when m = 0 < n
    """
    return STIRLING.get(n, m)


def scaled_multiplicity(k: int, n: int) -> int:
    """(k-1)! P_k(n) = (2n+k-1)(n+1)...(n+k-2)"""
    _require_dimension(k)
    if n < 0:
        raise DomainError(f"eigenvalue index must be non-negative, got {n}")
    return (2 * n + k - 1) * prod(range(n + 1, n + k - 1))


def multiplicity(k: int, n: int) -> int:
    """
    Multiplicity of the eigenvalue n(n+k-1) of the Laplacian on S^k.

    Args:
        k: Sphere dimension, k >= 2
        n: Eigenvalue index, n >= 0

    Returns:
        int: P_k(n)
    """
    return scaled_multiplicity(k, n) // factorial(k - 1)


def multiplicity_polynomial(k: int, x: RationalLike) -> Fraction:
    """(k-1)! P_k(x) for a rational argument"""
    _require_dimension(k)
    x = Fraction(x)
    return (2 * x + k - 1) * prod((x + i for i in range(1, k - 1)), start=Fraction(1))


def generalized_binomial(top: RationalLike, m: int) -> Fraction:
    """
    Binomial coefficient with a rational top argument: top(top-1)...(top-m+1)/m!.

    Args:
        top: Any rational
        m: Lower index; negative values give 0

    Returns:
        Fraction: The coefficient
    """
    if m < 0:
        return Fraction(0)
    top = Fraction(top)
    return prod((top - i for i in range(m)), start=Fraction(1)) / factorial(m)


def bernoulli_number(n: int) -> Fraction:
    """B_n with B_1 = -1/2"""
    return BERNOULLI.get(n)


def bernoulli_polynomial(n: int, a: RationalLike) -> Fraction:
    """
    Bernoulli polynomial B_n(a) = sum_i C(n,i) B_i a^(n-i).

    Args:
        n: Degree, n >= 0
        a: Rational evaluation point

    Returns:
        Fraction: B_n(a)
    """
    if n < 0:
        raise DomainError(f"Bernoulli polynomial degree must be non-negative, got {n}")
    a = Fraction(a)
    total = Fraction(0)
    for i in range(n + 1):
        total = total * a + comb(n, i) * bernoulli_number(i)
    return total


def hurwitz_zeta_nonpos_int(n: int, a: RationalLike) -> Fraction:
    """
    Exact Hurwitz zeta at s = -n: zeta(-n; a) = -B_{n+1}(a)/(n+1).

    Args:
        n: n >= 0
        a: Rational shift, a > 0

    Returns:
        Fraction: zeta(-n; a)
    """
    if n < 0:
        raise DomainError(f"expected a non-positive integer argument, got s = {-n}")
    a = Fraction(a)
    if a <= 0:
        raise DomainError(f"Hurwitz shift must be positive, got {a}")
    return -bernoulli_polynomial(n + 1, a) / (n + 1)


def riemann_zeta_nonpos_int(n: int) -> Fraction:
    """zeta(-n), exactly"""
    return hurwitz_zeta_nonpos_int(n, 1)


def _require_dimension(k: int) -> None:
    if k < 2:
        raise DomainError(f"dimension must be at least 2, got k={k}")
