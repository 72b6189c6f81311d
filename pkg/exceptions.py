from fractions import Fraction
from typing import Optional


class ZetaError(Exception):
    """Base class for every error raised by the zeta toolkit."""


class DomainError(ZetaError, ValueError):
    """An argument lies outside the domain of the requested operation."""


class PoleAtOneError(ZetaError):
    """The Hurwitz zeta function was requested at (or too close to) s = 1."""

    def __init__(self, s: complex, pole_eps: float):
        self.s = s
        self.pole_eps = pole_eps
        super().__init__(f"Hurwitz zeta has a pole at s = 1; |s - 1| = {abs(s - 1):.3e} <= {pole_eps:.1e}")


class AtPoleError(ZetaError):
    """
    The spectral zeta function was requested at one of its poles.

    The exact residue travels with the error so callers can report it instead
    of a value.
    """

    def __init__(self, location: Fraction, residue: Fraction, n: Optional[int] = None):
        self.location = location
        self.residue = residue
        self.n = n
        super().__init__(f"simple pole at s = {location} with residue {residue}")


class UnsupportedValueError(ZetaError):
    """No closed form is available for the requested exact value."""


class NonFiniteResultError(ZetaError, ArithmeticError):
    """A numeric evaluation overflowed or produced NaN."""
