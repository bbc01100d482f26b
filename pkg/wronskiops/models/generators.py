"""
Instance generators: seeded random instances and the optimality construction.
"""
from dataclasses import dataclass
from typing import List, Tuple

import numpy as np
from pydantic import BaseModel, Field

from wronskiops.logic.polycore import SparsePoly, mul
from wronskiops.models.sps import SpsInstance, descartes_instance


class InstanceParams(BaseModel):
    k: int = Field(2, ge=1)
    m: int = Field(1, ge=1)
    t: int = Field(2, ge=1)
    d: int = Field(3, ge=0)
    alpha_max: int = Field(3, ge=0)
    coeff_max: int = Field(5, ge=1)
    seed: int = Field(1, ge=0, lt=2 ** 64)


def spawn_seeds(seed: int, n: int) -> List[int]:
    """n independent 64-bit seeds split off one root seed."""
    children = np.random.SeedSequence(seed).spawn(n)
    return [int(child.generate_state(1, dtype=np.uint64)[0]) for child in children]


def _nonzero(rng: np.random.Generator, bound: int) -> int:
    value = int(rng.integers(1, bound + 1))
    return value if rng.random() < 0.5 else -value


def random_sparse_poly(rng: np.random.Generator, t: int, d: int, coeff_max: int) -> SparsePoly:
    """Nonzero polynomial of degree <= d with at most t terms."""
    count = int(rng.integers(1, min(t, d + 1) + 1))
    exponents = rng.choice(d + 1, size=count, replace=False)
    return SparsePoly({int(e): _nonzero(rng, coeff_max) for e in exponents})


def random_instance(params: InstanceParams, force_zero: bool = False) -> SpsInstance:
    """
    Deterministic in params.seed. With force_zero the terms come in groups
    sharing one exponent row whose coefficients cancel.
    """
    rng = np.random.default_rng(params.seed)
    bases = tuple(random_sparse_poly(rng, params.t, params.d, params.coeff_max) for _ in range(params.m))

    def row() -> Tuple[int, ...]:
        return tuple(int(e) for e in rng.integers(0, params.alpha_max + 1, size=params.m))

    if not force_zero:
        rows = [row() for _ in range(params.k)]
        coeffs = [_nonzero(rng, params.coeff_max) for _ in range(params.k)]
        return SpsInstance(bases=bases, coeffs=tuple(coeffs), exponents=tuple(rows))

    terms: List[Tuple[int, Tuple[int, ...]]] = []
    if params.k == 1:
        terms.append((0, row()))
    else:
        pairs = params.k // 2
        if params.k % 2:
            pairs -= 1
            shared = row()
            a, b = _nonzero(rng, params.coeff_max), _nonzero(rng, params.coeff_max)
            terms += [(a, shared), (b, shared), (-a - b, shared)]
        for _ in range(pairs):
            shared = row()
            a = _nonzero(rng, params.coeff_max)
            terms += [(a, shared), (-a, shared)]
    order = rng.permutation(len(terms))
    terms = [terms[int(i)] for i in order]
    return SpsInstance(bases=bases, coeffs=tuple(a for a, _ in terms), exponents=tuple(r for _, r in terms))


def random_instances(params: InstanceParams, n: int, force_zero: bool = False) -> List[SpsInstance]:
    return [random_instance(params.model_copy(update={'seed': seed}), force_zero)
            for seed in spawn_seeds(params.seed, n)]


def random_descartes(rng: np.random.Generator, k: int, max_exponent: int, coeff_max: int) -> SpsInstance:
    """sum of k monomials a_i x^(alpha_i) with distinct exponents."""
    exponents = sorted(int(e) for e in rng.choice(max_exponent + 1, size=k, replace=False))
    return descartes_instance([_nonzero(rng, coeff_max) for _ in range(k)], exponents)


@dataclass(frozen=True)
class OptimalInstance:
    """g = h(f) written as sum_i c_i f^(2i-1), with the root counts it attains."""
    instance: SpsInstance
    f: SparsePoly
    h: SparsePoly
    predicted_roots: int
    predicted_upsilon: int
    predicted_base_roots: int


def optimal_instance(k: int, p: int) -> OptimalInstance:
    """
    h = x prod_{i<k} (x^2 - i^2) has 2k-1 simple real roots and only odd
    powers; f = k prod_{i<=n} (x - 2i) with n = 1 + ceil((p+1)/2) swings past
    +-(k-1) between consecutive roots, so each level h = 0 is met n times.
    """
    if k < 2 or p < 1:
        raise ValueError("the construction needs k >= 2 and p >= 1")
    n = 1 + (p + 2) // 2
    f = SparsePoly.from_roots([2 * i for i in range(1, n + 1)], scale=k)
    h = mul([SparsePoly.x()] + [SparsePoly({2: 1, 0: -i * i}) for i in range(1, k)])
    coeffs = tuple(h.coefficient(2 * i - 1) for i in range(1, k + 1))
    instance = SpsInstance(bases=(f,), coeffs=coeffs, exponents=tuple((2 * i - 1,) for i in range(1, k + 1)))
    return OptimalInstance(
        instance=instance,
        f=f,
        h=h,
        predicted_roots=(2 * k - 1) * n,
        predicted_upsilon=2 * n - 1,
        predicted_base_roots=n,
    )
