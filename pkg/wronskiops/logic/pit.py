"""
Identity testing for SPS instances.

Blackbox: a nonzero instance has at most B distinct real roots, so it cannot
vanish on all of 1..B+1. Whitebox: terms enter a Wronskian basis one at a
time; dependent terms are rewritten over the basis and the instance is zero
iff the accumulated basis coefficients all cancel.
"""
import logging
from dataclasses import dataclass, field
from math import prod
from typing import Dict, Optional, Tuple

import numpy as np

from wronskiops.config.config import Config
from wronskiops.errors import ExpansionBudgetError, ResourceLimitError
from wronskiops.logic.bounds import bound_dense, bound_sparse
from wronskiops.logic.polycore import Coefficient, SparsePoly, canonical
from wronskiops.logic.wronskian import (
    MergedTerm,
    VerificationOutcome,
    merge_terms,
    reduce_terms,
    wronskian_leading_coefficient,
)
from wronskiops.models.sps import ExpansionBudget, SpsInstance

logger = logging.getLogger(__name__)

MODELS = ('sparse', 'dense')


@dataclass(frozen=True)
class Certificate:
    """
    merged: the instance after summing identical exponent rows
    positions: merged indices of the basis members, in basis order
    dependencies: merged index -> {basis slot: coefficient}
    vector: the instance written over the basis
    """
    merged: Tuple[MergedTerm, ...]
    positions: Tuple[int, ...]
    dependencies: Dict[int, Dict[int, Coefficient]] = field(hash=False)
    vector: Tuple[Coefficient, ...]


@dataclass(frozen=True)
class PitVerdict:
    is_zero: bool
    mode: str
    witness: Optional[int] = None
    queries: int = 0
    bound: Optional[int] = None
    certificate: Optional[Certificate] = None


def hitting_set_size(inst: SpsInstance, model: str = 'sparse') -> int:
    """The root bound B; points 1..B+1 form the hitting set."""
    if model == 'sparse':
        return bound_sparse(inst.k, inst.m, inst.t)
    if model == 'dense':
        return bound_dense(inst.k, inst.m, inst.d)
    raise ValueError(f"unknown model {model!r}, expected one of {MODELS}")


def pit_blackbox(inst: SpsInstance, model: str = 'sparse', query_cap: Optional[int] = None) -> PitVerdict:
    """Evaluate at 1, 2, ... B+1, stopping at the first nonzero value."""
    bound = hitting_set_size(inst, model)
    cap = Config.QUERY_CAP if query_cap is None else query_cap
    for point in range(1, bound + 2):
        if point > cap:
            raise ResourceLimitError(
                f"blackbox test needs {bound + 1} queries, cap is {cap}; first {cap} values were zero")
        if inst.evaluate(point) != 0:
            logger.info("nonzero at %d after %d queries", point, point)
            return PitVerdict(is_zero=False, mode='blackbox', witness=point, queries=point, bound=bound)
    return PitVerdict(is_zero=True, mode='blackbox', queries=bound + 1, bound=bound)


def pit_whitebox(inst: SpsInstance, cap: Optional[int] = None, method: str = 'auto') -> PitVerdict:
    merged = merge_terms(inst)
    reduction = reduce_terms(inst.bases, merged, cap=cap, method=method)
    is_zero = all(c == 0 for c in reduction.vector)
    logger.info("whitebox: %d merged terms, basis of %d, %s",
                len(merged), len(reduction.positions), "zero" if is_zero else "nonzero")
    certificate = Certificate(
        merged=tuple(merged),
        positions=tuple(reduction.positions),
        dependencies=reduction.dependencies,
        vector=tuple(reduction.vector),
    )
    return PitVerdict(is_zero=is_zero, mode='whitebox', certificate=certificate)


def _identity_holds(inst: SpsInstance, target: MergedTerm, combination: Dict[int, Coefficient],
                    basis: Tuple[MergedTerm, ...], budget: ExpansionBudget) -> bool:
    """target.product == sum_j combination[j] * basis[j].product as polynomials."""
    involved = [target.product] + [basis[j].product for j in combination]
    degree = max(sum(e * max(base.degree, 0) for base, e in zip(inst.bases, p.exponents))
                 for p in involved)
    if degree <= budget.max_degree:
        lhs = target.product.expand(inst.bases)
        rhs = SparsePoly.zero()
        for j, weight in combination.items():
            rhs = rhs + basis[j].product.expand(inst.bases) * weight
        return lhs == rhs
    if degree + 1 > Config.QUERY_CAP:
        raise ExpansionBudgetError(f"dependency of degree {degree} cannot be checked")
    # two polynomials of degree <= D agreeing on D+1 points are equal
    for point in range(1, degree + 2):
        values = [base(point) for base in inst.bases]

        def value(product) -> Coefficient:
            return prod(v ** e for v, e in zip(values, product.exponents) if e)

        rhs = sum(weight * value(basis[j].product) for j, weight in combination.items())
        if value(target.product) != rhs:
            return False
    return True


def certificate_check(inst: SpsInstance, verdict: PitVerdict,
                      budget: Optional[ExpansionBudget] = None) -> VerificationOutcome:
    """Re-derive every claim of a whitebox certificate from the instance."""
    certificate = verdict.certificate
    if certificate is None:
        return VerificationOutcome(False, "verdict carries no certificate")
    budget = budget or ExpansionBudget.default()
    merged = tuple(merge_terms(inst))
    if merged != certificate.merged:
        return VerificationOutcome(False, "merged terms do not match the instance")
    basis = tuple(merged[i] for i in certificate.positions)
    covered = set(certificate.positions) | set(certificate.dependencies)
    if covered != set(range(len(merged))) or set(certificate.positions) & set(certificate.dependencies):
        return VerificationOutcome(False, "every merged term must be a basis member or a dependency, not both")
    if basis and wronskian_leading_coefficient(inst.bases, [t.product for t in basis]) == 0:
        return VerificationOutcome(False, "basis members are linearly dependent")

    vector = [t.coefficient for t in basis]
    for index, combination in sorted(certificate.dependencies.items()):
        if any(not 0 <= j < len(basis) for j in combination):
            return VerificationOutcome(False, f"dependency of term {index} refers to a missing basis slot")
        if not _identity_holds(inst, merged[index], combination, basis, budget):
            return VerificationOutcome(False, f"dependency of term {index} is not an identity")
        for j, weight in combination.items():
            vector[j] = canonical(vector[j] + merged[index].coefficient * weight)
    if tuple(vector) != certificate.vector:
        return VerificationOutcome(False, "basis coefficient vector does not match")
    if verdict.is_zero != all(c == 0 for c in vector):
        return VerificationOutcome(False, "verdict contradicts the coefficient vector")
    return VerificationOutcome(True, f"{len(certificate.dependencies)} dependencies verified")


def pit_randomized(inst: SpsInstance, trials: int = 20, seed: Optional[int] = None) -> PitVerdict:
    """
    Schwartz-Zippel cross-check: points drawn from a range 100 times the
    degree bound, so a nonzero instance survives a trial with probability <= 1/100.
    """
    rng = np.random.default_rng(Config.SEED if seed is None else seed)
    span = min(100 * (inst.predicted_degree() + 1), 2 ** 62)
    for trial in range(1, trials + 1):
        point = int(rng.integers(1, span + 1))
        if inst.evaluate(point) != 0:
            return PitVerdict(is_zero=False, mode='randomized', witness=point, queries=trial)
    return PitVerdict(is_zero=True, mode='randomized', queries=trials)
