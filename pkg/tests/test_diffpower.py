from math import factorial, prod

import pytest
import sympy
from sympy.functions.combinatorial.numbers import partition

from conftest import X, from_sympy, to_sympy
from wronskiops.errors import PowerOrderError
from wronskiops.logic.diffpower import (
    beta_table,
    beta_upper_bound,
    derivative_terms,
    enumerate_S,
    power_derivative,
    power_derivative_oracle,
    size,
    weight,
)
from wronskiops.logic.polycore import SparsePoly


def faa_di_bruno(alpha, s):
    """p! / prod(s_k! k!^s_k) times the falling factorial alpha^(|s|)."""
    p = weight(s)
    ways = factorial(p) // prod(factorial(c) * factorial(k + 1) ** c for k, c in enumerate(s))
    return ways * factorial(alpha) // factorial(alpha - size(s))


def test_enumerate_small_orders():
    assert enumerate_S(0) == ((),)
    assert enumerate_S(1) == ((1,),)
    assert enumerate_S(3) == ((3, 0, 0), (1, 1, 0), (0, 0, 1))


@pytest.mark.parametrize("p", range(1, 11))
def test_enumerate_matches_partition_count(p):
    sequences = enumerate_S(p)
    assert len(sequences) == partition(p)
    assert len(set(sequences)) == len(sequences)
    assert all(weight(s) == p and len(s) == p for s in sequences)
    assert sequences[0] == (p,) + (0,) * (p - 1)
    assert sequences[-1] == (0,) * (p - 1) + (1,)


def test_first_and_second_derivative_coefficients():
    assert beta_table(5, 1)[(1,)] == 5
    second = beta_table(5, 2)
    assert second[(2, 0)] == 20
    assert second[(0, 1)] == 5


@pytest.mark.parametrize("alpha", range(0, 9))
def test_beta_matches_faa_di_bruno(alpha):
    for p in range(0, alpha + 1):
        table = beta_table(alpha, p)
        for s in enumerate_S(p):
            assert table[s] == faa_di_bruno(alpha, s)


def test_beta_upper_bound():
    for alpha in range(1, 11):
        for q in range(0, min(alpha, 6) + 1):
            assert all(value <= beta_upper_bound(alpha, q) for value in beta_table(alpha, q).order(q).values())


def test_order_above_power_is_rejected():
    with pytest.raises(PowerOrderError):
        beta_table(2, 3)


def test_terms_are_homogeneous():
    for term in derivative_terms(7, 5):
        assert term.f_exponent + size(term.s) == 7
        assert weight(term.s) == 5


def test_power_derivative_agrees_with_sympy():
    f = SparsePoly({0: -1, 1: 3, 2: 1})
    expected = sympy.diff(to_sympy(f).as_expr() ** 5, X, 3)
    assert power_derivative(f, 5, 3) == from_sympy(expected)


@pytest.mark.parametrize("alpha,p", [(0, 0), (1, 1), (4, 2), (6, 6), (9, 4)])
def test_power_derivative_matches_oracle(alpha, p):
    f = SparsePoly({0: 2, 3: -1, 7: 5})
    assert power_derivative(f, alpha, p) == power_derivative_oracle(f, alpha, p)


def test_oracle_covers_orders_beyond_the_power():
    f = SparsePoly({1: 1})
    assert power_derivative_oracle(f, 2, 3).is_zero
