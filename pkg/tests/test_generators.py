import numpy as np
import pytest
from pydantic import ValidationError

from wronskiops.logic.polycore import derivative
from wronskiops.logic.realroots import count_real_roots
from wronskiops.models.generators import (
    InstanceParams,
    optimal_instance,
    random_descartes,
    random_instance,
    random_instances,
    random_sparse_poly,
    spawn_seeds,
)
from wronskiops.models.sps import expand


def test_params_validation():
    with pytest.raises(ValidationError):
        InstanceParams(k=0)
    with pytest.raises(ValidationError):
        InstanceParams(seed=-1)
    assert InstanceParams().k == 2


def test_spawn_seeds_are_deterministic():
    seeds = spawn_seeds(7, 6)
    assert seeds == spawn_seeds(7, 6)
    assert len(set(seeds)) == 6
    assert all(0 <= s < 2 ** 64 for s in seeds)
    assert spawn_seeds(8, 6) != seeds


def test_random_sparse_poly_shape():
    rng = np.random.default_rng(3)
    for _ in range(50):
        p = random_sparse_poly(rng, t=3, d=6, coeff_max=4)
        assert not p.is_zero
        assert p.sparsity <= 3
        assert p.degree <= 6
        assert all(abs(c) <= 4 for _, c in p.terms)


def test_random_instance_is_reproducible():
    params = InstanceParams(k=4, m=2, t=3, d=5, alpha_max=3, seed=11)
    first = random_instance(params)
    assert first == random_instance(params)
    assert first.k == 4 and first.m == 2
    assert first.alpha_max <= 3
    assert all(a != 0 for a in first.coeffs)


@pytest.mark.parametrize("k", range(1, 8))
def test_forced_zero_instances_vanish(k):
    params = InstanceParams(k=k, m=2, t=2, d=3, alpha_max=3, seed=100 + k)
    inst = random_instance(params, force_zero=True)
    assert inst.k == k
    assert expand(inst).is_zero


def test_random_instances_batch():
    batch = random_instances(InstanceParams(k=2, seed=5), 4)
    assert len(batch) == 4
    assert batch == random_instances(InstanceParams(k=2, seed=5), 4)


def test_random_descartes():
    rng = np.random.default_rng(9)
    inst = random_descartes(rng, 5, max_exponent=12, coeff_max=9)
    exponents = [row[0] for row in inst.exponents]
    assert len(set(exponents)) == 5
    assert inst.m == 1
    assert inst.bases[0].terms == ((1, 1),)


@pytest.mark.parametrize("k,p", [(2, 1), (2, 2), (3, 2)])
def test_optimal_instance_attains_its_prediction(k, p):
    optimal = optimal_instance(k, p)
    g = expand(optimal.instance)
    assert count_real_roots(g) == optimal.predicted_roots
    assert count_real_roots(optimal.f) == optimal.predicted_base_roots
    assert count_real_roots(optimal.f * derivative(optimal.f)) == optimal.predicted_upsilon
    assert optimal.instance.k == k


def test_optimal_instance_sizes():
    optimal = optimal_instance(2, 1)
    assert optimal.predicted_roots == 6
    assert optimal.predicted_base_roots == 2
    assert optimal.predicted_upsilon == 3
    with pytest.raises(ValueError):
        optimal_instance(1, 1)
    with pytest.raises(ValueError):
        optimal_instance(2, 0)
