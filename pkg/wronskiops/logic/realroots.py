"""
Exact real-root oracle.

Distinct real roots are counted with the sympy Sturm chain of the
squarefree part. Sturm: for a < b the number of distinct roots in (a, b]
is V(a) - V(b), V counting sign variations along the chain.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from math import inf
from typing import List, Optional, Sequence, Tuple, Union

import sympy
from sympy import Poly

from wronskiops.errors import ZeroPolynomialError
from wronskiops.logic.polycore import SparsePoly, content, from_poly, sign_changes, to_poly

logger = logging.getLogger(__name__)

Point = Union[Fraction, float]


@dataclass(frozen=True)
class RationalInterval:
    """Interval with rational ends; None stands for -inf (lo) or +inf (hi)."""
    lo: Optional[Fraction]
    hi: Optional[Fraction]
    lo_closed: bool = False
    hi_closed: bool = False

    def __post_init__(self):
        lo = None if self.lo is None else Fraction(self.lo)
        hi = None if self.hi is None else Fraction(self.hi)
        object.__setattr__(self, 'lo', lo)
        object.__setattr__(self, 'hi', hi)
        if lo is None and self.lo_closed or hi is None and self.hi_closed:
            raise ValueError("an infinite end cannot be closed")
        if lo is not None and hi is not None:
            if lo > hi or lo == hi and not (self.lo_closed and self.hi_closed):
                raise ValueError(f"empty interval {self}")

    @classmethod
    def point(cls, value) -> 'RationalInterval':
        return cls(value, value, True, True)

    @classmethod
    def open(cls, lo, hi) -> 'RationalInterval':
        return cls(lo, hi, False, False)

    @classmethod
    def real_line(cls) -> 'RationalInterval':
        return cls(None, None)

    @property
    def is_point(self) -> bool:
        return self.lo is not None and self.lo == self.hi

    @property
    def width(self) -> Point:
        if self.lo is None or self.hi is None:
            return inf
        return self.hi - self.lo

    def contains(self, x: Fraction) -> bool:
        if self.lo is not None and (x < self.lo or x == self.lo and not self.lo_closed):
            return False
        if self.hi is not None and (x > self.hi or x == self.hi and not self.hi_closed):
            return False
        return True

    def precedes(self, other: 'RationalInterval') -> bool:
        """Every point of self lies strictly left of every point of other."""
        if self.hi is None or other.lo is None:
            return False
        if self.hi < other.lo:
            return True
        return self.hi == other.lo and not (self.hi_closed and other.lo_closed)

    def disjoint(self, other: 'RationalInterval') -> bool:
        return self.precedes(other) or other.precedes(self)

    def __str__(self):
        left = '[' if self.lo_closed else '('
        right = ']' if self.hi_closed else ')'
        lo = '-inf' if self.lo is None else str(self.lo)
        hi = '+inf' if self.hi is None else str(self.hi)
        if self.is_point:
            return f"[{lo}]"
        return f"{left}{lo}, {hi}{right}"


# ----------------------------------------------------------------------
# Sturm sequences
# ----------------------------------------------------------------------
def _sturm(p: SparsePoly) -> List[Poly]:
    if p.is_zero:
        raise ZeroPolynomialError("infinitely many roots: zero polynomial")
    # sympy reduces to the monic squarefree part first
    return to_poly(p).sturm()


def _positive_scale(p: SparsePoly) -> SparsePoly:
    return p * (1 / content(p))


def sturm_sequence(p: SparsePoly) -> List[SparsePoly]:
    """Sturm chain of the squarefree part, each member divided by its positive content."""
    return [_positive_scale(from_poly(member)) for member in _sturm(p)]


def poly_sign(poly: Poly, x: Point) -> int:
    """Sign of a sympy polynomial at a rational or at +-inf."""
    if poly.is_zero:
        return 0
    if x in (inf, -inf):
        lead = 1 if poly.LC() > 0 else -1
        return -lead if x == -inf and poly.degree() % 2 else lead
    x = Fraction(x)
    numerator = int(poly.eval(sympy.Rational(x.numerator, x.denominator)).p)
    return (numerator > 0) - (numerator < 0)


def sign_variations(sequence: Sequence[SparsePoly], x: Point) -> int:
    return _variations([to_poly(member) for member in sequence], x)


def _variations(polys: Sequence[Poly], x: Point) -> int:
    return sign_changes(poly_sign(poly, x) for poly in polys)


def sign_at(p: SparsePoly, x: Point) -> int:
    return poly_sign(to_poly(p), x)


def _count_half_open(sequence: List[Poly], lo: Point, hi: Point) -> int:
    """Distinct roots in (lo, hi]."""
    return _variations(sequence, lo) - _variations(sequence, hi)


def count_real_roots(p: SparsePoly) -> int:
    """Distinct real roots of a nonzero polynomial."""
    return _count_half_open(_sturm(p), -inf, inf)


def count_roots_in(p: SparsePoly, iv: RationalInterval) -> int:
    """Distinct roots inside iv, endpoints included according to the flags."""
    sequence = _sturm(p)
    first = sequence[0]
    lo = -inf if iv.lo is None else iv.lo
    hi = inf if iv.hi is None else iv.hi
    if iv.is_point:
        return int(poly_sign(first, lo) == 0)
    count = _count_half_open(sequence, lo, hi)
    if iv.hi is not None and not iv.hi_closed and poly_sign(first, hi) == 0:
        count -= 1
    if iv.lo is not None and iv.lo_closed and poly_sign(first, lo) == 0:
        count += 1
    return count


def count_positive_roots(p: SparsePoly) -> int:
    return count_roots_in(p, RationalInterval.open(0, None))


def count_negative_roots(p: SparsePoly) -> int:
    return count_roots_in(p, RationalInterval.open(None, 0))


# ----------------------------------------------------------------------
# Isolation
# ----------------------------------------------------------------------
def cauchy_bound(p: SparsePoly) -> int:
    """Integer B with every complex root of p strictly inside |z| < B."""
    if p.is_zero:
        raise ZeroPolynomialError("infinitely many roots: zero polynomial")
    lead = abs(Fraction(p.leading_coefficient))
    largest = max((abs(Fraction(c)) for e, c in p.terms if e != p.degree), default=Fraction(0))
    ratio = largest / lead
    return 1 + -(-ratio.numerator // ratio.denominator)


def isolate_roots(p: SparsePoly) -> List[RationalInterval]:
    """
    One interval per distinct real root, left to right.

    Each interval is either a point [r] or open (a, b) with rational ends
    that are not roots.
    """
    sequence = _sturm(p)
    if sequence[0].degree() == 0:
        return []
    first = sequence[0]
    bound = Fraction(cauchy_bound(p))
    found: List[RationalInterval] = []
    # (lo, hi] pieces, processed left to right
    stack: List[Tuple[Fraction, Fraction, int]] = [(-bound, bound, _count_half_open(sequence, -bound, bound))]
    rounds = 0
    while stack:
        lo, hi, count = stack.pop()
        if count == 0:
            continue
        if count == 1:
            if poly_sign(first, hi) == 0:
                found.append(RationalInterval.point(hi))
            else:
                found.append(RationalInterval.open(lo, hi))
            continue
        rounds += 1
        mid = (lo + hi) / 2
        left = _count_half_open(sequence, lo, mid)
        stack.append((mid, hi, count - left))
        stack.append((lo, mid, left))
    logger.debug("isolated %d roots in %d bisections", len(found), rounds)
    return found


def refine(p: SparsePoly, iv: RationalInterval) -> RationalInterval:
    """Halve an isolating interval, keeping its root."""
    if iv.is_point:
        return iv
    if iv.lo is None or iv.hi is None:
        raise ValueError("only bounded isolating intervals can be refined")
    mid = (iv.lo + iv.hi) / 2
    if sign_at(p, mid) == 0:
        return RationalInterval.point(mid)
    left = RationalInterval(iv.lo, mid, iv.lo_closed, False)
    if count_roots_in(p, left) >= 1:
        return left
    return RationalInterval(mid, iv.hi, False, iv.hi_closed)


def separate(p: SparsePoly, ivs_p: List[RationalInterval],
             q: SparsePoly, ivs_q: List[RationalInterval]) -> Tuple[List[RationalInterval], List[RationalInterval]]:
    """
    Refine two families of isolating intervals until no p-interval meets a
    q-interval. p and q must have no common real root.
    """
    ivs_p, ivs_q = list(ivs_p), list(ivs_q)
    rounds = 0
    while True:
        clash = next(((i, j) for i, a in enumerate(ivs_p) for j, b in enumerate(ivs_q)
                      if not a.disjoint(b)), None)
        if clash is None:
            logger.debug("separated root intervals after %d refinements", rounds)
            return ivs_p, ivs_q
        i, j = clash
        a, b = ivs_p[i], ivs_q[j]
        if a.is_point and b.is_point:
            raise ValueError(f"common root at {a.lo}")
        rounds += 1
        if b.is_point or (not a.is_point and a.width >= b.width):
            ivs_p[i] = refine(p, a)
        else:
            ivs_q[j] = refine(q, b)
