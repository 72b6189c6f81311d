from fractions import Fraction

import pytest
from hypothesis import given, strategies as st
from pydantic import ValidationError

from exceptions import DomainError
from models.coefficients import CoefficientMethod, CoefficientTable
from utils.coefficient_utils import (
    METHODS,
    check_identities,
    check_polynomial_identity,
    coefficient_table,
    coeffs_via_expansion,
    coeffs_via_recursion,
    coeffs_via_reduced_stirling,
    coeffs_via_stirling,
    compare_methods,
    integrality_holds,
    parity_pattern_holds,
)

F = Fraction


@pytest.mark.parametrize("k, row", [
    (2, [0, 2]),
    (3, [0, 0, 2]),
    (4, [0, F(-1, 2), 0, 2]),
    (5, [0, 0, -2, 0, 2]),
    (6, [0, F(9, 8), 0, -5, 0, 2]),
])
@pytest.mark.parametrize("method", list(CoefficientMethod))
def test_small_rows(k, row, method):
    assert list(coefficient_table(k, method).coeffs) == row


@pytest.mark.parametrize("k", range(2, 26))
def test_methods_agree(k):
    assert all(compare_methods(k).values())
    assert coeffs_via_stirling(k).coeffs == coeffs_via_recursion(k).coeffs
    assert coeffs_via_reduced_stirling(k).coeffs == coeffs_via_expansion(k).coeffs


@pytest.mark.parametrize("k", range(2, 26))
def test_parity_and_integrality(k):
    table = coeffs_via_recursion(k)
    assert parity_pattern_holds(table)
    assert integrality_holds(table)


@pytest.mark.parametrize("k", range(2, 26))
def test_identities(k):
    checks = check_identities(k)
    assert checks
    failed = [check.name for check in checks if not check.passed]
    assert not failed


def test_identity_grid_sizes():
    # k=7: sphere roots at p = 1, 2; projective roots at p = 1/2, 1
    names = [check.name for check in check_identities(7)]
    assert len(names) == 2 + 2 + 2
    # k=6: sphere roots at p = 1/2, 3/2
    assert len(check_identities(6)) == 2 + 2


def test_broken_row_fails_checks():
    table = coeffs_via_recursion(5)
    broken = CoefficientTable(k=5, coeffs=(F(0), F(0), F(-2), F(0), F(3)), method=CoefficientMethod.EXPANSION)
    assert parity_pattern_holds(broken)
    assert not all(check.passed for check in check_identities(5, broken))
    assert all(check.passed for check in check_identities(5, table))


def test_parity_violation_detected():
    table = CoefficientTable(k=3, coeffs=(F(0), F(1), F(2)), method=CoefficientMethod.EXPANSION)
    assert not parity_pattern_holds(table)


def test_even_row_integrality_uses_power_of_two():
    table = CoefficientTable(k=4, coeffs=(F(0), F(-1, 8), F(0), F(2)), method=CoefficientMethod.EXPANSION)
    assert not integrality_holds(table)
    assert integrality_holds(coeffs_via_recursion(4))


@given(st.integers(min_value=2, max_value=14), st.fractions(min_value=-20, max_value=20, max_denominator=50))
def test_polynomial_identity(k, x):
    assert check_polynomial_identity(k, x).passed


def test_table_indexing_and_evaluation():
    table = coeffs_via_recursion(4)
    assert table[1] == F(-1, 2)
    assert table[-1] == 0
    assert table[10] == 0
    assert list(table.nonzero()) == [(1, F(-1, 2)), (3, F(2))]
    assert table.evaluate(F(3, 2)) == 6
    assert table.evaluate(F(3, 4), weight=2) == 6


def test_table_rejects_wrong_length():
    with pytest.raises(ValidationError):
        CoefficientTable(k=3, coeffs=(F(0), F(2)), method=CoefficientMethod.RECURSION)


@pytest.mark.parametrize("method", list(METHODS.values()))
def test_dimension_domain(method):
    with pytest.raises(DomainError):
        method(1)
