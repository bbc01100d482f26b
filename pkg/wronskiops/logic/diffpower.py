"""
Closed-form p-th derivative of a power f^alpha.

(f^alpha)^(p) = sum over s in S_p of beta(alpha, s) * f^(alpha - |s|) * prod_k (f^(k))^(s_k)

where S_p holds the multiplicity encodings of the integer partitions of p
(s_i = how many parts equal i) and |s| = sum of the s_i.
"""
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, List, Tuple

from wronskiops.errors import PowerOrderError
from wronskiops.logic.polycore import SparsePoly, derivative, mul

VanishingSeq = Tuple[int, ...]


def weight(s: VanishingSeq) -> int:
    """sum of i * s_i."""
    return sum((i + 1) * c for i, c in enumerate(s))


def size(s: VanishingSeq) -> int:
    """|s|."""
    return sum(s)


@lru_cache(maxsize=64)
def enumerate_S(p: int) -> Tuple[VanishingSeq, ...]:
    """
    All s with sum i*s_i = p, as dense length-p tuples.

    Ordered so that (p, 0, ..., 0) comes first and (0, ..., 0, 1) last.
    S_0 is the single empty sequence.
    """
    if p < 0:
        raise ValueError("order must be nonnegative")
    if p == 0:
        return ((),)
    found: List[VanishingSeq] = []
    acc: List[int] = []

    def fill(part: int, remaining: int):
        if remaining == 0:
            found.append(tuple(acc) + (0,) * (p - len(acc)))
            return
        if part > remaining:
            return
        for multiplicity in range(remaining // part, -1, -1):
            acc.append(multiplicity)
            fill(part + 1, remaining - multiplicity * part)
            acc.pop()

    fill(1, p)
    return tuple(found)


def beta_upper_bound(alpha: int, q: int) -> int:
    return (q * q + alpha) ** q


@dataclass(frozen=True)
class BetaTable:
    """beta(alpha, s) for every s in S_q, q <= max_order."""
    alpha: int
    max_order: int
    entries: Dict[VanishingSeq, int] = field(repr=False)

    def __getitem__(self, s: VanishingSeq) -> int:
        return self.entries[s]

    def order(self, q: int) -> Dict[VanishingSeq, int]:
        return {s: self.entries[s] for s in enumerate_S(q)}


@lru_cache(maxsize=1024)
def beta_table(alpha: int, p: int) -> BetaTable:
    """
    Build the table order by order.

    Differentiating f^(alpha-|s|) * prod (f^(k))^(s_k) once either raises
    the f' count (s + e_1, factor alpha - |s|) or trades one f^(k) for an
    f^(k+1) (s - e_k + e_{k+1}, factor s_k). Read backwards, for s' in S_q:

        beta(s') = [s'_1 > 0] (alpha - |s'| + 1) beta(s' - e_1)
                 + sum_k [s'_{k+1} > 0] (s'_k + 1) beta(s' + e_k - e_{k+1})
    """
    if alpha < p:
        raise PowerOrderError(f"closed-form derivative needs alpha >= p, got alpha={alpha}, p={p}")
    entries: Dict[VanishingSeq, int] = {(): 1}
    for q in range(1, p + 1):
        for s in enumerate_S(q):
            value = 0
            if s[0]:
                lowered = list(s)
                lowered[0] -= 1
                value += (alpha - size(s) + 1) * entries[tuple(lowered[:q - 1])]
            for k in range(q - 1):
                if s[k + 1]:
                    traded = list(s)
                    traded[k] += 1
                    traded[k + 1] -= 1
                    value += (s[k] + 1) * entries[tuple(traded[:q - 1])]
            entries[s] = value
    return BetaTable(alpha=alpha, max_order=p, entries=entries)


@dataclass(frozen=True)
class DerivativeTerm:
    beta: int
    f_exponent: int
    s: VanishingSeq


def derivative_terms(alpha: int, p: int) -> List[DerivativeTerm]:
    """The beta-formula as structure: one term per s in S_p."""
    table = beta_table(alpha, p)
    return [DerivativeTerm(beta=table[s], f_exponent=alpha - size(s), s=s) for s in enumerate_S(p)]


def derivative_monomial(f_power: SparsePoly, derivatives: List[SparsePoly], s: VanishingSeq) -> SparsePoly:
    """f_power * prod_k (f^(k))^(s_k); derivatives[k-1] is f^(k)."""
    factors = [f_power]
    for k, count in enumerate(s):
        if count:
            factors.append(derivatives[k] ** count)
    return mul(factors)


def power_derivative(f: SparsePoly, alpha: int, p: int) -> SparsePoly:
    """(f^alpha)^(p) through the beta table, never expanding f^alpha and differentiating."""
    table = beta_table(alpha, p)
    derivatives = [derivative(f, k) for k in range(1, p + 1)]
    powers: Dict[int, SparsePoly] = {}
    result = SparsePoly.zero()
    for s in enumerate_S(p):
        beta = table[s]
        if not beta:
            continue
        exponent = alpha - size(s)
        if exponent not in powers:
            powers[exponent] = f ** exponent
        result = result + derivative_monomial(powers[exponent], derivatives, s) * beta
    return result


def power_derivative_oracle(f: SparsePoly, alpha: int, p: int) -> SparsePoly:
    """Expand f^alpha, then differentiate p times. Valid for every alpha."""
    return derivative(f ** alpha, p)
