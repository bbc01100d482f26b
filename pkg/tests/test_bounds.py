import mpmath
import pytest

from wronskiops.config.config import Config
from wronskiops.logic.bounds import (
    analyze_family,
    bound_dense,
    bound_sparse,
    bound_sparse_refined,
    bound_weak_descartes,
    certified_bound_main3,
    certified_bound_sum,
    certified_bound_upsilon,
    family_bound_main3,
    family_upsilon,
    interval_bound_heart,
    main3_bound,
    open_problem_gap,
    upsilon_bound,
)
from wronskiops.logic.polycore import SparsePoly
from wronskiops.logic.realroots import count_real_roots
from wronskiops.models.generators import InstanceParams, optimal_instance, random_instance
from wronskiops.models.sps import ExpansionBudget, descartes_instance, expand


def test_e_upper_is_above_e():
    mpmath.mp.dps = 50
    assert mpmath.mpf(Config.E_UPPER.numerator) / Config.E_UPPER.denominator > mpmath.e


@pytest.mark.parametrize("k,m,t", [(1, 1, 1), (2, 1, 1), (2, 1, 3), (3, 2, 2), (1, 3, 4)])
def test_sparse_bound_is_a_tight_ceiling(k, m, t):
    mpmath.mp.dps = 50
    exact = 4 * k * t * m + 4 * (mpmath.e * (1 + t)) ** (mpmath.mpf(m * k * k) / 2)
    value = bound_sparse(k, m, t)
    assert value >= exact
    assert value <= mpmath.ceil(exact) + 1


def test_small_bounds():
    assert bound_sparse(1, 1, 1) == 14
    assert bound_dense(1, 1, 3) == 8
    assert bound_dense(2, 1, 1) == 9
    assert bound_weak_descartes(3) == 5
    assert bound_sparse_refined(1, 1, 1) == 4
    assert bound_sparse_refined(2, 1, 1) == 9


def test_refined_never_exceeds_sparse():
    for k in range(1, 4):
        for m in range(1, 3):
            for t in range(1, 4):
                assert bound_sparse_refined(k, m, t) <= bound_sparse(k, m, t)


def test_bound_formulas():
    assert upsilon_bound(2, 3) == 8
    assert main3_bound([2, 3, 1]) == 10
    assert main3_bound([4]) == 4


def test_descartes_instance_certified(cubic_instance):
    bound, upsilon = certified_bound_upsilon(cubic_instance)
    assert upsilon.size == 1
    assert bound == 5
    assert count_real_roots(expand(cubic_instance)) == 3
    assert certified_bound_main3(cubic_instance) >= 3
    assert certified_bound_sum(cubic_instance) >= bound


def test_zero_instance_has_no_certified_bound(zero_instance):
    bound, upsilon = certified_bound_upsilon(zero_instance)
    assert bound is None
    assert upsilon.infinite
    assert certified_bound_main3(zero_instance) is None
    assert analyze_family(zero_instance) is None


def test_analysis_uses_the_reduced_family(x):
    # 2x^2 and -x^2 merge into one term
    inst = descartes_instance([2, -1, 1], [2, 2, 0])
    analysis = analyze_family(inst)
    assert analysis.k == 2
    assert len(analysis.zero_counts) == 2


def test_family_bounds(x):
    bound, upsilon = family_upsilon([SparsePoly.one(), x])
    assert (bound, upsilon.size) == (1, 0)
    assert family_upsilon([x, x * 2])[0] is None
    assert family_bound_main3([x ** 2, x ** 3]) == 1 + 1 + 1


@pytest.mark.parametrize("seed", range(8))
def test_certified_bounds_dominate_exact_counts(seed):
    inst = random_instance(InstanceParams(k=3, m=2, t=2, d=3, alpha_max=2, seed=seed))
    expanded = expand(inst)
    if expanded.is_zero:
        pytest.skip("instance vanished")
    roots = count_real_roots(expanded)
    analysis = analyze_family(inst)
    bound, _ = certified_bound_upsilon(inst, analysis=analysis)
    assert roots <= bound
    assert roots <= certified_bound_main3(inst, analysis=analysis)
    assert roots <= bound_sparse(inst.k, inst.m, inst.t)
    assert roots <= bound_dense(inst.k, inst.m, inst.d)


def test_interval_property_on_optimal_instance():
    optimal = optimal_instance(2, 1)
    outcome = interval_bound_heart(optimal.instance)
    assert outcome.passed
    assert not outcome.skipped
    assert all(c <= outcome.limit for c in outcome.counts)


def test_interval_property_skips(zero_instance, cubic_instance):
    assert interval_bound_heart(zero_instance).skipped
    outcome = interval_bound_heart(cubic_instance, budget=ExpansionBudget(max_degree=1, max_sparsity=10))
    assert outcome.skipped and outcome.passed


def test_open_problem_probe():
    probe = open_problem_gap(descartes_instance([1, -1], [2, 0]))
    assert (probe.lhs, probe.rhs) == (3, 3)
    assert probe.holds
