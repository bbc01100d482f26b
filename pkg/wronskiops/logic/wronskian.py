"""
Wronskian determinants of polynomial families and of power products.

For g_u = prod_j f_j^(A_uj) the derivative matrix factors as

    W(g_1..g_s) = prod_j f_j^(sum_u A_uj - C(s,2)) * det T

where T_{v,u} collects the low-degree part of g_u^(v-1) once
prod_j f_j^(A_uj - (v-1)) is pulled out of every cell. Cells are built from
the beta table, never from the expanded powers.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from itertools import permutations
from math import comb, factorial
from operator import mul as multiply
from typing import TYPE_CHECKING, Dict, Iterator, List, Optional, Sequence, Tuple

from wronskiops.config.config import Config
from wronskiops.errors import DegenerateBaseError, DependentPrefixError, ResourceLimitError
from wronskiops.logic.diffpower import beta_table, derivative_monomial, enumerate_S, size
from wronskiops.logic.polycore import (
    Coefficient,
    SparsePoly,
    canonical,
    derivative,
    exact_div,
    gcd,
    mul,
)
from wronskiops.logic.realroots import count_real_roots

if TYPE_CHECKING:
    from wronskiops.models.sps import SpsInstance

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class VerificationOutcome:
    passed: bool
    detail: str = ""

    def __bool__(self):
        return self.passed


@dataclass(frozen=True)
class PowerProduct:
    """prod_j f_j^(exponents[j]) over a shared list of bases."""
    exponents: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, 'exponents', tuple(int(e) for e in self.exponents))
        if any(e < 0 for e in self.exponents):
            raise ValueError(f"negative exponent in power product {self.exponents}")

    def expand(self, bases: Sequence[SparsePoly]) -> SparsePoly:
        return mul(base ** e for base, e in zip(bases, self.exponents) if e)

    def shifted(self, shift: int) -> 'PowerProduct':
        return PowerProduct(tuple(e + shift for e in self.exponents))

    def __len__(self):
        return len(self.exponents)


# ----------------------------------------------------------------------
# Determinants
# ----------------------------------------------------------------------
def _inversions(perm: Sequence[int]) -> int:
    count = 0
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                count += 1
    return count


def permutation_determinant(matrix, zero):
    """Leibniz expansion over any exact ring with +, -, * and is_zero."""
    total = zero
    for perm in permutations(range(len(matrix))):
        factors = [matrix[row][col] for row, col in enumerate(perm)]
        if any(entry.is_zero for entry in factors):
            continue
        term = reduce(multiply, factors)
        total = total - term if _inversions(perm) % 2 else total + term
    return total


def bareiss_determinant(matrix: List[List[SparsePoly]]) -> SparsePoly:
    """Fraction-free elimination; every division is exact in Q[x]."""
    n = len(matrix)
    rows = [list(row) for row in matrix]
    sign = 1
    previous = SparsePoly.one()
    for k in range(n - 1):
        if rows[k][k].is_zero:
            pivot = next((i for i in range(k + 1, n) if not rows[i][k].is_zero), None)
            if pivot is None:
                return SparsePoly.zero()
            rows[k], rows[pivot] = rows[pivot], rows[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                rows[i][j] = exact_div(rows[i][j] * rows[k][k] - rows[i][k] * rows[k][j], previous)
        previous = rows[k][k]
    return rows[n - 1][n - 1] * sign


def determinant(matrix: List[List[SparsePoly]], method: str = 'auto') -> SparsePoly:
    n = len(matrix)
    if n == 0:
        return SparsePoly.one()
    if method == 'auto':
        method = 'permutation' if n <= Config.PERMUTATION_MAX else 'bareiss'
    if method == 'permutation':
        return permutation_determinant(matrix, SparsePoly.zero())
    if method == 'bareiss':
        return bareiss_determinant(matrix)
    raise ValueError(f"unknown determinant method: {method}")


def wronskian_matrix(fs: Sequence[SparsePoly]) -> List[List[SparsePoly]]:
    """Row i holds the i-th derivatives."""
    return [[derivative(f, i) for f in fs] for i in range(len(fs))]


def wronskian_direct(fs: Sequence[SparsePoly], method: str = 'auto') -> SparsePoly:
    return determinant(wronskian_matrix(fs), method)


# ----------------------------------------------------------------------
# Factored Wronskians of power products
# ----------------------------------------------------------------------
@dataclass(frozen=True)
class FactoredWronskian:
    """W(g_1..g_s) = prod_j f_j^(power_exponents[j]) * detT with g_u = h_u * prod_j f_j^shift."""
    power_exponents: Tuple[int, ...]
    detT: SparsePoly
    shift: int
    s: int

    @property
    def is_zero(self) -> bool:
        return self.detT.is_zero

    def expand(self, bases: Sequence[SparsePoly]) -> SparsePoly:
        factors = [base ** e for base, e in zip(bases, self.power_exponents) if e]
        return mul(factors + [self.detT])

    def expanded_degree(self, bases: Sequence[SparsePoly]) -> float:
        if self.detT.is_zero:
            return self.detT.degree
        return self.detT.degree + sum(
            base.degree * e for base, e in zip(bases, self.power_exponents) if e)


def compositions(total: int, parts: int) -> Iterator[Tuple[int, ...]]:
    """Ordered tuples of `parts` nonnegative integers summing to `total`."""
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


def active_bases(bases: Sequence[SparsePoly], products: Sequence[PowerProduct]) -> List[int]:
    """
    Indices of the bases that take part in the products.

    A zero base is tolerated only when every product omits it.
    """
    active = []
    for j, base in enumerate(bases):
        if base.is_zero:
            if any(p.exponents[j] for p in products):
                raise DegenerateBaseError(j)
            continue
        active.append(j)
    return active


def _reduced_derivative(f: SparsePoly, powers: List[SparsePoly], derivatives: List[SparsePoly],
                        exponent: int, order: int) -> SparsePoly:
    """(f^exponent)^(order) / f^(exponent - order), from the beta table."""
    table = beta_table(exponent, order)
    result = SparsePoly.zero()
    for s in enumerate_S(order):
        beta = table[s]
        if beta:
            result = result + derivative_monomial(powers[order - size(s)], derivatives, s) * beta
    return result


def factored_wronskian(bases: Sequence[SparsePoly], products: Sequence[PowerProduct], s: int,
                       shift: Optional[int] = None, method: str = 'auto') -> FactoredWronskian:
    """Factored Wronskian of the first s products, each multiplied by prod_j f_j^shift."""
    if not 1 <= s <= len(products):
        raise ValueError(f"prefix length must lie in 1..{len(products)}, got {s}")
    if shift is None:
        shift = s
    if shift < s - 1:
        raise ValueError(f"shift {shift} too small for a prefix of length {s}")
    prefix = list(products[:s])
    for product in prefix:
        if len(product) != len(bases):
            raise ValueError("power product length does not match the number of bases")
    active = active_bases(bases, prefix)

    top = s - 1
    powers = {j: [bases[j] ** e for e in range(top + 1)] for j in active}
    derivs = {j: [derivative(bases[j], k) for k in range(1, top + 1)] for j in active}

    # reduced[u][j][r] = (f_j^A)^(r) / f_j^(A - r) with A = alpha_uj + shift
    reduced: List[Dict[int, List[SparsePoly]]] = []
    for product in prefix:
        per_base = {}
        for j in active:
            exponent = product.exponents[j] + shift
            per_base[j] = [_reduced_derivative(bases[j], powers[j], derivs[j], exponent, r)
                           for r in range(top + 1)]
        reduced.append(per_base)

    matrix: List[List[SparsePoly]] = []
    for order in range(s):
        row = []
        for u in range(s):
            cell = SparsePoly.zero()
            if active:
                splits = compositions(order, len(active))
            else:
                # every g_u is the constant 1
                splits = [()] if order == 0 else []
            for split in splits:
                weight = factorial(order)
                factors = []
                for j, r in zip(active, split):
                    weight //= factorial(r)
                    factors.append(powers[j][order - r])
                    factors.append(reduced[u][j][r])
                cell = cell + mul(factors) * weight
            row.append(cell)
        matrix.append(row)
    detT = determinant(matrix, method)

    offset = s * shift - comb(s, 2)
    power_exponents = tuple(
        sum(p.exponents[j] for p in prefix) + offset if j in active else 0
        for j in range(len(bases)))
    return FactoredWronskian(power_exponents=power_exponents, detT=detT, shift=shift, s=s)


def scaling_check(g: SparsePoly, fs: Sequence[SparsePoly]) -> VerificationOutcome:
    """W(g f_1, ..., g f_k) = g^k W(f_1, ..., f_k)."""
    lhs = wronskian_direct([g * f for f in fs])
    rhs = g ** len(fs) * wronskian_direct(fs)
    if lhs == rhs:
        return VerificationOutcome(True, "scaling identity holds")
    return VerificationOutcome(False, f"W(g*f) = {lhs} but g^k W(f) = {rhs}")


def wronskian_leading_coefficient(bases: Sequence[SparsePoly], products: Sequence[PowerProduct],
                                  method: str = 'auto') -> Coefficient:
    """
    lc(W(h_1..h_l)) without expanding any h_u, or 0 when the h_u are dependent.

    W(h) = W(g) / prod_j f_j^(l*shift) = prod_j f_j^(sum_u alpha_uj - C(l,2)) * detT,
    and the leading coefficient is multiplicative even when an exponent is negative.
    """
    l = len(products)
    if l == 0:
        return 1
    factored = factored_wronskian(bases, products, l, shift=l, method=method)
    if factored.is_zero:
        return 0
    active = active_bases(bases, products)
    leading = Fraction(factored.detT.leading_coefficient)
    for j in active:
        exponent = sum(p.exponents[j] for p in products) - comb(l, 2)
        leading *= Fraction(bases[j].leading_coefficient) ** exponent
    return canonical(leading)


# ----------------------------------------------------------------------
# Rational functions and the Frobenius recurrence
# ----------------------------------------------------------------------
@dataclass(frozen=True)
class RationalFunction:
    """num/den in lowest terms with a monic denominator."""
    num: SparsePoly
    den: SparsePoly = field(default_factory=SparsePoly.one)

    def __post_init__(self):
        num, den = self.num, self.den
        if den.is_zero:
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero:
            num, den = SparsePoly.zero(), SparsePoly.one()
        else:
            common = gcd(num, den)
            if not common.is_constant:
                num, den = exact_div(num, common), exact_div(den, common)
            scale = Fraction(1) / Fraction(den.leading_coefficient)
            num, den = num * scale, den * scale
        object.__setattr__(self, 'num', num)
        object.__setattr__(self, 'den', den)

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    def __add__(self, other: 'RationalFunction') -> 'RationalFunction':
        return RationalFunction(self.num * other.den + other.num * self.den, self.den * other.den)

    def __sub__(self, other: 'RationalFunction') -> 'RationalFunction':
        return RationalFunction(self.num * other.den - other.num * self.den, self.den * other.den)

    def __mul__(self, other: 'RationalFunction') -> 'RationalFunction':
        return RationalFunction(self.num * other.num, self.den * other.den)

    def __truediv__(self, other: 'RationalFunction') -> 'RationalFunction':
        if other.is_zero:
            raise ZeroDivisionError("division by the zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def derivative(self) -> 'RationalFunction':
        return RationalFunction(
            derivative(self.num) * self.den - self.num * derivative(self.den), self.den * self.den)

    def __eq__(self, other):
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self.num * other.den == other.num * self.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __str__(self):
        if self.den == SparsePoly.one():
            return str(self.num)
        return f"({self.num}) / ({self.den})"


def prefix_wronskians(fs: Sequence[SparsePoly]) -> List[SparsePoly]:
    """[W_0 = 1, W_1, ..., W_k]."""
    return [SparsePoly.one()] + [wronskian_direct(fs[:i]) for i in range(1, len(fs) + 1)]


def frobenius_check(fs: Sequence[SparsePoly]) -> VerificationOutcome:
    """
    R_0 = f_1 + ... + f_k, R_{i+1} = W_{i+1}^2 / W_i * (R_i / W_{i+1})'
    and the chain must end on R_{k-1} = W_k.
    """
    if not fs:
        raise ValueError("the family must not be empty")
    walls = prefix_wronskians(fs)
    for i, w in enumerate(walls[1:], start=1):
        if w.is_zero:
            raise DependentPrefixError(f"dependent prefix: W_{i} vanishes identically")
    k = len(fs)
    r = RationalFunction(reduce(lambda a, b: a + b, fs))
    for i in range(k - 1):
        nxt = RationalFunction(walls[i + 1])
        r = RationalFunction(walls[i + 1] ** 2, walls[i]) * (r / nxt).derivative()
    target = RationalFunction(walls[k])
    if r == target:
        return VerificationOutcome(True, f"R_{k - 1} = W_{k} = {walls[k]}")
    return VerificationOutcome(False, f"R_{k - 1} = {r} differs from W_{k} = {walls[k]}")


def quotient_check(fs: Sequence[SparsePoly]) -> VerificationOutcome:
    """W(f_1..f_k) = f_1^k * W((f_2/f_1)', ..., (f_k/f_1)')."""
    if not fs or fs[0].is_zero:
        raise ValueError("the first function must be a nonzero polynomial")
    first = fs[0]
    ratios = [RationalFunction(f, first).derivative() for f in fs[1:]]
    columns = []
    for ratio in ratios:
        column = [ratio]
        for _ in range(len(ratios) - 1):
            column.append(column[-1].derivative())
        columns.append(column)
    matrix = [[columns[c][r] for c in range(len(ratios))] for r in range(len(ratios))]
    inner = permutation_determinant(matrix, RationalFunction(SparsePoly.zero())) if ratios \
        else RationalFunction(SparsePoly.one())
    lhs = RationalFunction(wronskian_direct(fs))
    rhs = RationalFunction(first ** len(fs)) * inner
    if lhs == rhs:
        return VerificationOutcome(True, "quotient identity holds")
    return VerificationOutcome(False, f"W(f) = {lhs} but f_1^k W((f_i/f_1)') = {rhs}")


# ----------------------------------------------------------------------
# Bounds on det T
# ----------------------------------------------------------------------
def dett_degree_bound(m: int, d: int, s: int) -> int:
    return m * d * comb(s, 2)


def dett_sparsity_bound(m: int, t: int, s: int) -> int:
    return comb(m * comb(s, 2) + m * t - 1, m * t - 1)


def dett_root_bound(m: int, t: int, s: int) -> int:
    """Rule of signs on a polynomial with at most dett_sparsity_bound terms."""
    return 2 * dett_sparsity_bound(m, t, s) - 1


def wronskian_zero_estimate(bases: Sequence[SparsePoly], factored: FactoredWronskian) -> int:
    """sum_j Z(f_j) + Z(det T), an upper estimate of Z(W(g_1..g_s))."""
    total = count_real_roots(factored.detT)
    for base, e in zip(bases, factored.power_exponents):
        if e:
            total += count_real_roots(base)
    return total


# ----------------------------------------------------------------------
# Incremental basis of power products
# ----------------------------------------------------------------------
class WronskianBasis:
    """
    Linearly independent power products, grown one candidate at a time.

    A candidate is independent iff lc(W(basis + candidate)) != 0; otherwise
    Cramer's rule on leading coefficients writes it in the basis.
    """

    def __init__(self, bases: Sequence[SparsePoly], cap: Optional[int] = None, method: str = 'auto'):
        self.bases = list(bases)
        self.cap = Config.BASIS_CAP if cap is None else cap
        self.method = method
        self.products: List[PowerProduct] = []
        self.leading: Coefficient = 1

    def __len__(self):
        return len(self.products)

    def insert(self, product: PowerProduct) -> Optional[Dict[int, Coefficient]]:
        """None when the product joined the basis, else its coefficients over the basis."""
        leading = wronskian_leading_coefficient(self.bases, self.products + [product], self.method)
        if leading != 0:
            if len(self.products) >= self.cap:
                raise ResourceLimitError(
                    f"basis cap {self.cap} reached: an independent term would need a larger Wronskian")
            self.products.append(product)
            self.leading = leading
            logger.debug("basis grew to %d, lc(W) = %s", len(self.products), leading)
            return None
        coefficients = {}
        for j in range(len(self.products)):
            replaced = list(self.products)
            replaced[j] = product
            numerator = wronskian_leading_coefficient(self.bases, replaced, self.method)
            coefficients[j] = canonical(Fraction(numerator) / Fraction(self.leading))
        logger.debug("dependent term %s = %s over the basis", product.exponents, coefficients)
        return coefficients


@dataclass(frozen=True)
class MergedTerm:
    product: PowerProduct
    coefficient: Coefficient
    sources: Tuple[int, ...]


def merge_terms(inst: 'SpsInstance') -> List[MergedTerm]:
    """Identical exponent rows summed in first-occurrence order; zero coefficients dropped."""
    order: List[Tuple[int, ...]] = []
    totals: Dict[Tuple[int, ...], Coefficient] = {}
    sources: Dict[Tuple[int, ...], List[int]] = {}
    for index, (coefficient, row) in enumerate(zip(inst.coeffs, inst.exponents)):
        if coefficient == 0:
            continue
        if row not in totals:
            order.append(row)
            totals[row] = 0
            sources[row] = []
        totals[row] = canonical(totals[row] + coefficient)
        sources[row].append(index)
    return [MergedTerm(PowerProduct(row), totals[row], tuple(sources[row]))
            for row in order if totals[row] != 0]


@dataclass
class BasisReduction:
    merged: List[MergedTerm]
    basis: WronskianBasis
    positions: List[int]
    dependencies: Dict[int, Dict[int, Coefficient]]
    vector: List[Coefficient]


def reduce_terms(bases: Sequence[SparsePoly], merged: List[MergedTerm],
                 cap: Optional[int] = None, method: str = 'auto') -> BasisReduction:
    """Insert merged terms in order; the vector collects the sum over the basis."""
    basis = WronskianBasis(bases, cap=cap, method=method)
    positions: List[int] = []
    dependencies: Dict[int, Dict[int, Coefficient]] = {}
    vector: List[Coefficient] = []
    for index, term in enumerate(merged):
        combination = basis.insert(term.product)
        if combination is None:
            positions.append(index)
            vector.append(term.coefficient)
            continue
        dependencies[index] = combination
        for j, weight in combination.items():
            vector[j] = canonical(vector[j] + term.coefficient * weight)
    return BasisReduction(merged=merged, basis=basis, positions=positions,
                          dependencies=dependencies, vector=vector)


@dataclass(frozen=True)
class ReducedFamily:
    """An independent family with nonzero coefficients carrying the same sum."""
    bases: Tuple[SparsePoly, ...]
    products: Tuple[PowerProduct, ...]
    coefficients: Tuple[Coefficient, ...]

    @property
    def k(self) -> int:
        return len(self.products)


def reduce_instance(inst: 'SpsInstance', cap: Optional[int] = None,
                    method: str = 'auto') -> Optional[ReducedFamily]:
    """None when the instance is identically zero."""
    reduction = reduce_terms(inst.bases, merge_terms(inst), cap=cap, method=method)
    kept = [(p, c) for p, c in zip(reduction.basis.products, reduction.vector) if c != 0]
    if not kept:
        return None
    return ReducedFamily(bases=tuple(inst.bases),
                         products=tuple(p for p, _ in kept),
                         coefficients=tuple(c for _, c in kept))
