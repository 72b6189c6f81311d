import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from evaluators.continuation import limit_numeric, residue_numeric, zeta_continuation
from evaluators.dirichlet import dirichlet_oracle
from exceptions import AtPoleError, DomainError
from models.evaluation import EvalFlag, EvalOptions
from models.space import SpaceKind, SpaceSpec
from utils.coefficient_utils import coeffs_via_recursion


def sphere(k):
    return SpaceSpec(space=SpaceKind.SPHERE, k=k)


def projective(k):
    return SpaceSpec(space=SpaceKind.PROJECTIVE, k=k)


def test_two_sphere_at_two_telescopes():
    result = zeta_continuation(sphere(2), 2)
    error = abs(result.as_complex - 1.0)
    assert error < 1e-10
    assert error <= result.error_bound
    assert not result.has(EvalFlag.TRUNCATED)


def test_three_sphere_at_two():
    # sum (n+1)^2 / (n(n+2))^2 = pi^2/12 + 1/16
    result = zeta_continuation(sphere(3), 2)
    error = abs(result.as_complex - (math.pi ** 2 / 12 + 1 / 16))
    assert error < 1e-10
    assert error <= result.error_bound


@pytest.mark.parametrize("spec", [sphere(3), projective(3), sphere(5), projective(7)])
def test_zero_is_exact_routed(spec):
    result = zeta_continuation(spec, 0)
    assert result.has(EvalFlag.EXACT_ROUTED)
    assert result.exact == "-1"
    assert result.value.re == -1.0


def test_even_sphere_routing():
    result = zeta_continuation(sphere(2), -1)
    assert result.exact == "-1/15"
    assert limit_numeric(sphere(2), -1).re == pytest.approx(-1 / 15, abs=1e-6)
    assert limit_numeric(sphere(2), 0).re == pytest.approx(-2 / 3, abs=1e-6)


def test_limit_matches_odd_sphere_values():
    assert limit_numeric(sphere(3), 0).re == pytest.approx(-1, abs=1e-6)
    assert abs(complex(limit_numeric(sphere(5), -2))) < 1e-6


@pytest.mark.parametrize("spec, s, residue", [
    (sphere(2), 1, Fraction(1)),
    (sphere(3), 1.5, Fraction(1, 2)),
    (sphere(3), 0.5, Fraction(1, 4)),
    (projective(3), 1.5, Fraction(1, 4)),
])
def test_at_pole_carries_residue(spec, s, residue):
    with pytest.raises(AtPoleError) as info:
        zeta_continuation(spec, s)
    assert info.value.residue == residue
    assert info.value.location == Fraction(s)


def test_zero_residue_point_is_evaluated():
    # L_4 is regular at -1 even though single terms of its series are not
    result = zeta_continuation(projective(4), -1)
    assert not result.has(EvalFlag.EXACT_ROUTED)
    assert result.has(EvalFlag.NEAR_CANCELLATION)
    assert math.isfinite(result.value.re)
    limit = limit_numeric(projective(4), -1)
    assert abs(result.as_complex - complex(limit)) < 1e-6


def test_spurious_crossing_is_regularized():
    result = zeta_continuation(sphere(2), 1e-4)
    assert result.has(EvalFlag.NEAR_CANCELLATION)
    assert result.value.re == pytest.approx(-2 / 3, abs=1e-3)


@pytest.mark.parametrize("spec, n, expected", [
    (sphere(2), 0, 1.0),
    (sphere(3), 1, 0.25),
    (sphere(4), 3, 0.0),
    (projective(3), 0, 0.25),
    (projective(2), 0, 0.5),
])
def test_numeric_residues(spec, n, expected):
    estimate = residue_numeric(spec, n, 1e-3)
    assert abs(complex(estimate) - expected) < 1e-8


def test_residue_eps_range():
    with pytest.raises(DomainError):
        residue_numeric(sphere(2), 0, 0.5)
    with pytest.raises(DomainError):
        residue_numeric(sphere(2), -1)


def test_truncation_flag():
    result = zeta_continuation(sphere(5), 4, EvalOptions(max_l=2))
    assert result.has(EvalFlag.TRUNCATED)
    assert result.terms_used == 3


def test_tolerance_clamp_flag():
    result = zeta_continuation(sphere(2), 3, EvalOptions(tol=1e-15))
    assert result.has(EvalFlag.TOLERANCE_CLAMPED)


@pytest.mark.parametrize("spec", [sphere(2), projective(2), sphere(4), projective(5)])
def test_conjugate_symmetry(spec):
    s = complex(0.3, 2.2)
    upper = zeta_continuation(spec, s).as_complex
    lower = zeta_continuation(spec, s.conjugate()).as_complex
    assert abs(upper - lower.conjugate()) < 1e-10


@given(
    st.integers(min_value=2, max_value=6),
    st.sampled_from(list(SpaceKind)),
    st.floats(min_value=0.5, max_value=3),
    st.floats(min_value=-5, max_value=5),
)
@settings(max_examples=50, deadline=None)
def test_agrees_with_dirichlet_series(k, kind, offset, im):
    spec = SpaceSpec(space=kind, k=k)
    s = complex(k / 2 + offset, im)
    series = zeta_continuation(spec, s)
    oracle = dirichlet_oracle(spec, s, 100000)
    assert abs(series.as_complex - oracle.as_complex) <= series.error_bound + oracle.error_bound
    assert series.error_bound <= 1e-8
    assert oracle.error_bound <= 1e-8


def test_moderate_dimension_converges():
    result = zeta_continuation(sphere(8), complex(0.5, 1.0))
    assert not result.has(EvalFlag.TRUNCATED)
    assert result.terms_used < EvalOptions().max_l


def _mp(value: Fraction):
    return mpmath.mpf(value.numerator) / value.denominator


def series_reference(spec, s, digits=60):
    """The binomial Hurwitz series summed in high precision"""
    k = spec.k
    if spec.is_sphere:
        shift, a, weight = Fraction(k - 1, 2), Fraction(k + 1, 2), 1
    else:
        shift, a, weight = Fraction(k - 1, 4), Fraction(k + 3, 4), 2
    with mpmath.workdps(digits):
        z = mpmath.mpc(s.real, s.imag)
        terms = [(j, weight ** j * _mp(b)) for j, b in coeffs_via_recursion(k).nonzero()]
        total, rising = mpmath.mpc(0), mpmath.mpc(1)
        for l in range(600):
            if l:
                rising *= (z + l - 1) / l
            level = sum(b * mpmath.zeta(2 * z + 2 * l - j, _mp(a)) for j, b in terms)
            term = rising * _mp(shift) ** (2 * l) * level
            total += term
            if l > abs(s) + 5 and abs(term) < mpmath.mpf(10) ** (5 - digits) * abs(total):
                break
        if not spec.is_sphere:
            total *= mpmath.power(2, -2 * z)
        return complex(total / mpmath.factorial(k - 1))


@pytest.mark.parametrize("spec, s", [
    (sphere(3), complex(-30.3, 2.0)),
    (sphere(2), complex(-7.997, -4.18)),
    (projective(5), complex(-7.07, -4.88)),
    (sphere(2), complex(-3.3, 1.7)),
    (projective(3), complex(-5.5, 2.0)),
    (sphere(4), complex(-2.25, -3.0)),
    (projective(2), complex(-0.7, 0.4)),
    (sphere(5), complex(-12.6, 7.5)),
])
def test_left_half_plane_within_bound(spec, s):
    result = zeta_continuation(spec, s)
    assert abs(result.as_complex - series_reference(spec, s)) <= result.error_bound
