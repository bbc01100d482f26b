import dataclasses
from fractions import Fraction

import pytest

from wronskiops.errors import ResourceLimitError
from wronskiops.logic.bounds import bound_dense, bound_sparse
from wronskiops.logic.pit import (
    certificate_check,
    hitting_set_size,
    pit_blackbox,
    pit_randomized,
    pit_whitebox,
)
from wronskiops.models.generators import InstanceParams, random_instance
from wronskiops.models.sps import SpsInstance, descartes_instance, expand


def test_hitting_set_sizes(zero_instance):
    assert hitting_set_size(zero_instance, 'sparse') == bound_sparse(2, 2, 3)
    assert hitting_set_size(zero_instance, 'dense') == bound_dense(2, 2, 2)
    with pytest.raises(ValueError):
        hitting_set_size(zero_instance, 'tropical')


@pytest.mark.parametrize("model", ['sparse', 'dense'])
def test_blackbox_zero(zero_instance, model):
    verdict = pit_blackbox(zero_instance, model=model)
    assert verdict.is_zero
    assert verdict.witness is None
    assert verdict.queries == hitting_set_size(zero_instance, model) + 1


def test_blackbox_stops_at_first_nonzero_value():
    verdict = pit_blackbox(descartes_instance([-1, 1], [0, 1]))
    assert not verdict.is_zero
    assert verdict.witness == 2
    assert verdict.queries == 2


def test_blackbox_query_cap(zero_instance):
    with pytest.raises(ResourceLimitError, match="cap is 3"):
        pit_blackbox(zero_instance, query_cap=3)


def test_whitebox_zero(zero_instance):
    verdict = pit_whitebox(zero_instance)
    assert verdict.is_zero
    assert verdict.certificate.positions == (0,)
    assert verdict.certificate.dependencies == {1: {0: 1}}
    assert verdict.certificate.vector == (0,)
    assert certificate_check(zero_instance, verdict)


def test_whitebox_nonzero(cubic_instance):
    verdict = pit_whitebox(cubic_instance)
    assert not verdict.is_zero
    assert verdict.certificate.vector == (1, -2, 1)
    assert certificate_check(cubic_instance, verdict).passed


def test_whitebox_rewrites_dependent_terms(x):
    # 2(x+1) + 3(x-1) - 5x = -1, so the instance is nonzero
    inst = SpsInstance(bases=(x + 1, x - 1, x), coeffs=(2, 3, -5), exponents=((1, 0, 0), (0, 1, 0), (0, 0, 1)))
    verdict = pit_whitebox(inst)
    assert not verdict.is_zero
    assert verdict.certificate.dependencies == {2: {0: Fraction(1, 2), 1: Fraction(1, 2)}}
    assert verdict.certificate.vector == (Fraction(-1, 2), Fraction(1, 2))
    assert certificate_check(inst, verdict)


def test_tampered_certificates_are_rejected(zero_instance):
    verdict = pit_whitebox(zero_instance)
    forged_vector = dataclasses.replace(verdict.certificate, vector=(1,))
    assert not certificate_check(zero_instance, dataclasses.replace(verdict, certificate=forged_vector))
    forged_dependency = dataclasses.replace(verdict.certificate, dependencies={1: {0: 2}})
    outcome = certificate_check(zero_instance, dataclasses.replace(verdict, certificate=forged_dependency))
    assert not outcome.passed
    assert "not an identity" in outcome.detail
    assert not certificate_check(zero_instance, dataclasses.replace(verdict, is_zero=False))
    assert not certificate_check(zero_instance, pit_blackbox(zero_instance, model='dense'))


def test_randomized(zero_instance, cubic_instance):
    assert pit_randomized(zero_instance, seed=3).is_zero
    assert not pit_randomized(cubic_instance, seed=3).is_zero


@pytest.mark.parametrize("seed", range(10))
def test_modes_agree_with_expansion(seed):
    params = InstanceParams(k=3, m=2, t=2, d=3, alpha_max=3, seed=seed)
    inst = random_instance(params, force_zero=seed % 2 == 0)
    oracle = expand(inst).is_zero
    assert pit_blackbox(inst, model='dense').is_zero == oracle
    whitebox = pit_whitebox(inst)
    assert whitebox.is_zero == oracle
    assert certificate_check(inst, whitebox)
