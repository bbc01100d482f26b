"""
Real-root bounds for SPS instances.

A-priori bounds depend only on (k, m, t) or (k, m, d). Certified bounds are
computed per instance from the exact zero sets of the prefix Wronskians of
the g-family g_i = h_i * prod_j f_j^k', where h_1..h_k' is the reduced
(independent, zero-free) family carrying the same sum. The g-sum equals
expand(inst) * prod_j f_j^k', so its real roots contain those of the
instance.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from math import comb, isqrt
from typing import List, Optional, Sequence, Tuple

from wronskiops.config.config import Config
from wronskiops.errors import ExpansionBudgetError
from wronskiops.logic.polycore import SparsePoly, exact_div, gcd, mul, squarefree_part
from wronskiops.logic.realroots import RationalInterval, count_real_roots, isolate_roots, separate
from wronskiops.logic.wronskian import (
    FactoredWronskian,
    ReducedFamily,
    factored_wronskian,
    reduce_instance,
    wronskian_direct,
)
from wronskiops.models.sps import ExpansionBudget, SpsInstance, expand

logger = logging.getLogger(__name__)


def _ceil(value: Fraction) -> int:
    return -(-value.numerator // value.denominator)


def _ceil_sqrt(value: Fraction) -> int:
    """Smallest integer c with c^2 >= value."""
    target = _ceil(value)
    root = isqrt(target)
    return root if root * root == target else root + 1


# ----------------------------------------------------------------------
# A-priori bounds
# ----------------------------------------------------------------------
def bound_sparse(k: int, m: int, t: int) -> int:
    """ceil(4ktm + 4 (e(1+t))^(m k^2 / 2)) with e over-approximated by Config.E_UPPER."""
    base = Config.E_UPPER * (1 + t)
    n = m * k * k
    if n % 2 == 0:
        tail = _ceil(4 * base ** (n // 2))
    else:
        tail = _ceil_sqrt(16 * base ** n)
    return 4 * k * t * m + tail


def bound_dense(k: int, m: int, d: int) -> int:
    return _ceil(Fraction(k ** 3 * m * d, 3) + 2 * k * m * d + k)


def bound_sparse_refined(k: int, m: int, t: int) -> int:
    """The binomial estimate the sparse bound is derived from."""
    total = k - 1 + 2 * k * (2 * t - 1) * m
    for s in range(1, k + 1):
        total += 2 * (2 * comb(m * comb(s, 2) + m * t - 1, m * t - 1) - 1)
    return total


def bound_weak_descartes(k: int) -> int:
    """Distinct real roots of a k-term sum of monomials."""
    return 2 * k - 1


# ----------------------------------------------------------------------
# Certified bounds
# ----------------------------------------------------------------------
@dataclass(frozen=True)
class UpsilonSet:
    """Points where some prefix Wronskian vanishes."""
    radical: Optional[SparsePoly]
    size: Optional[int]
    points: Tuple[RationalInterval, ...] = ()

    @property
    def infinite(self) -> bool:
        return self.radical is None

    @classmethod
    def unbounded(cls) -> 'UpsilonSet':
        return cls(radical=None, size=None)

    @classmethod
    def from_radical(cls, radical: SparsePoly) -> 'UpsilonSet':
        points = tuple(isolate_roots(radical))
        return cls(radical=radical, size=len(points), points=points)


@dataclass(frozen=True)
class FamilyAnalysis:
    """Prefix Wronskians of one g-family and their distinct real zero counts."""
    family: ReducedFamily
    factored: Tuple[FactoredWronskian, ...]
    radicals: Tuple[SparsePoly, ...]
    zero_counts: Tuple[int, ...]

    @property
    def k(self) -> int:
        return self.family.k

    def upsilon(self) -> UpsilonSet:
        return UpsilonSet.from_radical(squarefree_part(mul(self.radicals)))

    def base_product(self) -> SparsePoly:
        """prod of the bases the g-family carries."""
        exponents = self.factored[0].power_exponents
        return mul(base for base, e in zip(self.family.bases, exponents) if e)


def analyze_family(inst: SpsInstance, cap: Optional[int] = None, method: str = 'auto') -> Optional[FamilyAnalysis]:
    """None when the instance is identically zero."""
    family = reduce_instance(inst, cap=cap, method=method)
    if family is None:
        return None
    shift = family.k
    factored = []
    radicals = []
    zero_counts = []
    for s in range(1, family.k + 1):
        fw = factored_wronskian(family.bases, family.products, s, shift=shift, method=method)
        factors = [base for base, e in zip(family.bases, fw.power_exponents) if e]
        radical = squarefree_part(mul(factors + [fw.detT]))
        factored.append(fw)
        radicals.append(radical)
        zero_counts.append(count_real_roots(radical))
    logger.debug("prefix Wronskian zero counts %s", zero_counts)
    return FamilyAnalysis(family=family, factored=tuple(factored), radicals=tuple(radicals),
                          zero_counts=tuple(zero_counts))


def upsilon_bound(size: int, k: int) -> int:
    return (1 + size) * k - 1


def main3_bound(zero_counts: Sequence[int]) -> int:
    """k-1 + Z(W_k) + Z(W_{k-1}) + 2 sum_{j<=k-2} Z(W_j), with Z(W_0) = 0."""
    k = len(zero_counts)
    counts = [0] + list(zero_counts)
    return k - 1 + counts[k] + counts[k - 1] + 2 * sum(counts[1:k - 1])


def certified_bound_upsilon(inst: SpsInstance, analysis: Optional[FamilyAnalysis] = None,
                            cap: Optional[int] = None) -> Tuple[Optional[int], UpsilonSet]:
    """((1+|U|)k' - 1, U), or (None, unbounded U) for an identically zero instance."""
    analysis = analysis or analyze_family(inst, cap=cap)
    if analysis is None:
        return None, UpsilonSet.unbounded()
    upsilon = analysis.upsilon()
    return upsilon_bound(upsilon.size, analysis.k), upsilon


def certified_bound_main3(inst: SpsInstance, analysis: Optional[FamilyAnalysis] = None,
                          cap: Optional[int] = None) -> Optional[int]:
    analysis = analysis or analyze_family(inst, cap=cap)
    if analysis is None:
        return None
    return main3_bound(analysis.zero_counts)


def certified_bound_sum(inst: SpsInstance, analysis: Optional[FamilyAnalysis] = None,
                        cap: Optional[int] = None) -> Optional[int]:
    """(1 + sum_i Z(W_i)) k' - 1, the form before the zero sets are merged."""
    analysis = analysis or analyze_family(inst, cap=cap)
    if analysis is None:
        return None
    return upsilon_bound(sum(analysis.zero_counts), analysis.k)


def family_upsilon(functions: Sequence[SparsePoly]) -> Tuple[Optional[int], UpsilonSet]:
    """Certified bound on any combination of an explicit family of polynomials."""
    walls = [wronskian_direct(functions[:i]) for i in range(1, len(functions) + 1)]
    if any(w.is_zero for w in walls):
        return None, UpsilonSet.unbounded()
    upsilon = UpsilonSet.from_radical(squarefree_part(mul(squarefree_part(w) for w in walls)))
    return upsilon_bound(upsilon.size, len(functions)), upsilon


def family_bound_main3(functions: Sequence[SparsePoly]) -> Optional[int]:
    walls = [wronskian_direct(functions[:i]) for i in range(1, len(functions) + 1)]
    if any(w.is_zero for w in walls):
        return None
    return main3_bound([count_real_roots(w) for w in walls])


# ----------------------------------------------------------------------
# Interval property and the open-problem probe
# ----------------------------------------------------------------------
@dataclass(frozen=True)
class HeartOutcome:
    """Roots of the expanded instance in each gap between consecutive points of U."""
    passed: bool
    skipped: bool
    limit: Optional[int]
    counts: Tuple[int, ...]
    detail: str

    def __bool__(self):
        return self.passed


def interval_bound_heart(inst: SpsInstance, budget: Optional[ExpansionBudget] = None,
                         analysis: Optional[FamilyAnalysis] = None,
                         cap: Optional[int] = None) -> HeartOutcome:
    """Every gap of the real line cut at the points of U carries at most k'-1 roots."""
    try:
        expanded = expand(inst, budget)
    except ExpansionBudgetError as e:
        logger.warning("interval check skipped: %s", e)
        return HeartOutcome(passed=True, skipped=True, limit=None, counts=(), detail=str(e))
    analysis = analysis or analyze_family(inst, cap=cap)
    if analysis is None or expanded.is_zero:
        return HeartOutcome(passed=True, skipped=True, limit=None, counts=(),
                            detail="identically zero instance: U is infinite")

    upsilon = analysis.upsilon()
    limit = analysis.k - 1
    radical = squarefree_part(expanded)
    outside = exact_div(radical, gcd(radical, upsilon.radical))
    if outside.is_constant:
        counts = tuple(0 for _ in range(upsilon.size + 1))
    else:
        points, roots = separate(upsilon.radical, list(upsilon.points), outside, isolate_roots(outside))
        tally = [0] * (upsilon.size + 1)
        for root in roots:
            gap = sum(1 for point in points if point.precedes(root))
            tally[gap] += 1
        counts = tuple(tally)
    passed = all(c <= limit for c in counts)
    detail = f"{len(counts)} intervals, roots per interval {list(counts)}, limit {limit}"
    return HeartOutcome(passed=passed, skipped=False, limit=limit, counts=counts, detail=detail)


@dataclass(frozen=True)
class OpenProblemProbe:
    lhs: int
    rhs: int

    @property
    def holds(self) -> bool:
        return self.lhs <= self.rhs


def open_problem_gap(inst: SpsInstance, budget: Optional[ExpansionBudget] = None,
                     analysis: Optional[FamilyAnalysis] = None,
                     cap: Optional[int] = None) -> Optional[OpenProblemProbe]:
    """
    lhs = Z(sum c_i g_i), rhs = k'-1 + sum_i Z(W(g_1..g_i)).

    Reported, never enforced. None for an identically zero instance.
    """
    expanded = expand(inst, budget)
    analysis = analysis or analyze_family(inst, cap=cap)
    if analysis is None or expanded.is_zero:
        return None
    lhs = count_real_roots(expanded * analysis.base_product())
    rhs = analysis.k - 1 + sum(analysis.zero_counts)
    probe = OpenProblemProbe(lhs=lhs, rhs=rhs)
    if not probe.holds:
        logger.warning("open-problem inequality fails: %d > %d", lhs, rhs)
    return probe
