from fractions import Fraction
from math import inf

import numpy as np
import pytest

from conftest import to_sympy
from wronskiops.errors import ZeroPolynomialError
from wronskiops.logic.polycore import SparsePoly, derivative
from wronskiops.logic.realroots import (
    RationalInterval,
    cauchy_bound,
    count_negative_roots,
    count_positive_roots,
    count_real_roots,
    count_roots_in,
    isolate_roots,
    refine,
    separate,
    sign_at,
    sign_variations,
    sturm_sequence,
)
from wronskiops.models.generators import random_sparse_poly


def test_counts(x):
    assert count_real_roots(x ** 2 - 2) == 2
    assert count_real_roots(x ** 2 + 1) == 0
    assert count_real_roots((x - 1) ** 3 * (x + 2)) == 2
    assert count_real_roots(SparsePoly.constant(5)) == 0
    assert count_real_roots(x ** 7) == 1
    with pytest.raises(ZeroPolynomialError, match="infinitely many roots"):
        count_real_roots(SparsePoly.zero())


def test_counts_agree_with_sympy():
    rng = np.random.default_rng(20240611)
    for _ in range(40):
        p = random_sparse_poly(rng, t=5, d=9, coeff_max=7) * random_sparse_poly(rng, t=3, d=4, coeff_max=3)
        if p.degree < 1:
            continue
        assert count_real_roots(p) == to_sympy(p).sqf_part().count_roots()


def test_sturm_sequence(x):
    assert sturm_sequence(x ** 2 - 2) == [x ** 2 - 2, x, SparsePoly.one()]


def test_sign_variations(x):
    sequence = sturm_sequence(x ** 2 - 2)
    assert sign_variations(sequence, -inf) == 2
    assert sign_variations(sequence, 0) == 1
    assert sign_variations(sequence, inf) == 0


def test_sign_at(x):
    p = x ** 3 - x * 2
    assert sign_at(p, Fraction(3, 2)) == 1
    assert sign_at(p, Fraction(1, 2)) == -1
    assert sign_at(p, 0) == 0
    assert sign_at(p, float('-inf')) == -1


def test_positive_and_negative_roots(x):
    p = x ** 3 - x
    assert count_positive_roots(p) == 1
    assert count_negative_roots(p) == 1
    assert count_real_roots(p) == 3


def test_endpoint_flags(x):
    p = (x - 1) * (x - 2)
    assert count_roots_in(p, RationalInterval(1, 2, True, True)) == 2
    assert count_roots_in(p, RationalInterval.open(1, 2)) == 0
    assert count_roots_in(p, RationalInterval(1, 2, False, True)) == 1
    assert count_roots_in(p, RationalInterval(1, 2, True, False)) == 1
    assert count_roots_in(p, RationalInterval.point(1)) == 1
    assert count_roots_in(p, RationalInterval.real_line()) == 2


def test_interval_validation():
    with pytest.raises(ValueError):
        RationalInterval(2, 1)
    with pytest.raises(ValueError):
        RationalInterval(1, 1)
    with pytest.raises(ValueError):
        RationalInterval(None, 1, lo_closed=True)


def test_interval_order():
    a = RationalInterval.open(0, 1)
    b = RationalInterval(1, 2, True, False)
    assert a.precedes(b)
    assert a.disjoint(b)
    assert not RationalInterval(0, 1, False, True).disjoint(b)
    assert str(RationalInterval.point(Fraction(1, 2))) == "[1/2]"
    assert str(RationalInterval.open(None, 0)) == "(-inf, 0)"


def test_cauchy_bound(x):
    assert cauchy_bound(x ** 2 - 2) == 3
    assert cauchy_bound(x * 4 + 1) == 2


def test_isolation(x):
    p = (x - 1) * (x - 2) * (x + 3) * (x ** 2 - 2)
    intervals = isolate_roots(p)
    assert len(intervals) == 5
    for iv in intervals:
        assert count_roots_in(p, iv) == 1
    for left, right in zip(intervals, intervals[1:]):
        assert left.precedes(right)
    assert isolate_roots(x ** 2 + 1) == []


def test_refine_keeps_the_root(x):
    p = x ** 2 - 2
    iv = refine(p, RationalInterval.open(1, 2))
    assert iv == RationalInterval.open(1, Fraction(3, 2))
    assert refine(x - 1, RationalInterval.open(0, 2)) == RationalInterval.point(1)


def test_separate(x):
    p = x ** 2 - 2
    q = x - Fraction(3, 2)
    ivs_p, ivs_q = separate(p, isolate_roots(p), q, isolate_roots(q))
    assert all(a.disjoint(b) for a in ivs_p for b in ivs_q)
    assert all(count_roots_in(p, iv) == 1 for iv in ivs_p)
    assert all(count_roots_in(q, iv) == 1 for iv in ivs_q)


def test_separate_rejects_common_roots(x):
    p = x ** 2 - 1
    q = x - 1
    with pytest.raises(ValueError, match="common root"):
        separate(p, isolate_roots(p), q, isolate_roots(q))


def test_rolle_consistency():
    rng = np.random.default_rng(515)
    for _ in range(60):
        p = random_sparse_poly(rng, t=4, d=8, coeff_max=9) * random_sparse_poly(rng, t=2, d=3, coeff_max=3)
        if p.degree < 1:
            continue
        assert count_real_roots(derivative(p)) >= count_real_roots(p) - 1


def test_isolation_matches_sturm_count():
    rng = np.random.default_rng(616)
    for _ in range(40):
        p = random_sparse_poly(rng, t=5, d=9, coeff_max=7) * random_sparse_poly(rng, t=3, d=4, coeff_max=3)
        if p.degree < 1:
            continue
        assert len(isolate_roots(p)) == count_real_roots(p)


def test_refinement_keeps_the_totals():
    rng = np.random.default_rng(717)
    for _ in range(30):
        p = random_sparse_poly(rng, t=4, d=7, coeff_max=7)
        if p.degree < 1:
            continue
        intervals = isolate_roots(p)
        refined = [refine(p, refine(p, iv)) for iv in intervals]
        assert sum(count_roots_in(p, iv) for iv in refined) == count_real_roots(p)
        for before, after in zip(intervals, refined):
            assert count_roots_in(p, after) == 1
            assert after.width <= before.width
