"""
Exact sparse univariate polynomial arithmetic.

Coefficients are rationals kept in canonical form: an ``int`` whenever the
value is integral, otherwise a reduced ``Fraction`` with positive
denominator. Exponents are arbitrary-precision nonnegative integers, so a
polynomial like ``x^(10^30) + 1`` costs two dictionary entries.
"""
from fractions import Fraction
from math import gcd as igcd, lcm
from numbers import Rational
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

import sympy
from sympy import QQ, Poly

from wronskiops.errors import ZeroPolynomialError

Coefficient = Union[int, Fraction]

# Degree reported for the zero polynomial
DEGREE_OF_ZERO = float('-inf')


def canonical(value) -> Coefficient:
    """Return the canonical exact form of a rational value."""
    if isinstance(value, bool):
        return int(value)
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return value.numerator if value.denominator == 1 else value
    if isinstance(value, Rational):
        return canonical(Fraction(int(value.numerator), int(value.denominator)))
    raise TypeError(f"coefficients must be exact rationals, got {type(value).__name__}")


class SparsePoly:
    """
    Immutable univariate polynomial stored as exponent -> coefficient.

    Terms are kept sorted by increasing exponent and never hold a zero
    coefficient, so equality is structural.
    """
    __slots__ = ('_terms', '_hash')

    def __init__(self, terms: Optional[Mapping[int, Coefficient]] = None):
        clean: Dict[int, Coefficient] = {}
        for exponent, value in (terms or {}).items():
            if not isinstance(exponent, int) or isinstance(exponent, bool) or exponent < 0:
                raise ValueError(f"exponents must be nonnegative integers, got {exponent!r}")
            value = canonical(value)
            if value:
                clean[exponent] = value
        self._terms = dict(sorted(clean.items()))
        self._hash = None

    @classmethod
    def _accumulated(cls, acc: Dict[int, Coefficient]) -> 'SparsePoly':
        """Build from an accumulator of already-exact values, dropping zeros."""
        poly = cls.__new__(cls)
        poly._terms = {e: canonical(c) for e, c in sorted(acc.items()) if c}
        poly._hash = None
        return poly

    # ------------------------------------------------------------------
    # Constructors
    # ------------------------------------------------------------------
    @classmethod
    def zero(cls) -> 'SparsePoly':
        return cls()

    @classmethod
    def constant(cls, value: Coefficient) -> 'SparsePoly':
        return cls({0: value})

    @classmethod
    def one(cls) -> 'SparsePoly':
        return cls({0: 1})

    @classmethod
    def x(cls) -> 'SparsePoly':
        return cls({1: 1})

    @classmethod
    def monomial(cls, value: Coefficient, exponent: int) -> 'SparsePoly':
        return cls({exponent: value})

    @classmethod
    def from_coefficients(cls, coefficients: Sequence[Coefficient]) -> 'SparsePoly':
        """Dense coefficients, lowest degree first."""
        return cls({e: c for e, c in enumerate(coefficients)})

    @classmethod
    def from_roots(cls, roots: Iterable[Coefficient], scale: Coefficient = 1) -> 'SparsePoly':
        """scale * prod (x - r)."""
        return mul([cls({0: -canonical(r), 1: 1}) for r in roots]) * scale

    # ------------------------------------------------------------------
    # Structure
    # ------------------------------------------------------------------
    @property
    def terms(self) -> Tuple[Tuple[int, Coefficient], ...]:
        return tuple(self._terms.items())

    def coefficient(self, exponent: int) -> Coefficient:
        return self._terms.get(exponent, 0)

    def coefficients(self) -> List[Coefficient]:
        """Dense coefficient list, lowest degree first (empty for zero)."""
        if not self._terms:
            return []
        dense = [0] * (self.degree + 1)
        for e, c in self._terms.items():
            dense[e] = c
        return dense

    @property
    def sparsity(self) -> int:
        return len(self._terms)

    @property
    def degree(self) -> Union[int, float]:
        if not self._terms:
            return DEGREE_OF_ZERO
        return next(reversed(self._terms))

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @property
    def is_constant(self) -> bool:
        return not self._terms or self.degree == 0

    @property
    def leading_coefficient(self) -> Coefficient:
        if not self._terms:
            return 0
        return self._terms[self.degree]

    @property
    def constant_term(self) -> Coefficient:
        return self._terms.get(0, 0)

    # ------------------------------------------------------------------
    # Arithmetic
    # ------------------------------------------------------------------
    def _coerce(self, other) -> Optional['SparsePoly']:
        if isinstance(other, SparsePoly):
            return other
        if isinstance(other, (int, Fraction, Rational)):
            return SparsePoly.constant(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        acc = dict(self._terms)
        for e, c in other._terms.items():
            acc[e] = acc.get(e, 0) + c
        return SparsePoly._accumulated(acc)

    __radd__ = __add__

    def __neg__(self):
        return SparsePoly._accumulated({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, SparsePoly):
            return _mul_pair(self, other)
        if isinstance(other, (int, Fraction, Rational)):
            value = canonical(other)
            return SparsePoly._accumulated({e: c * value for e, c in self._terms.items()})
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("polynomial powers need a nonnegative integer exponent")
        result = SparsePoly.one()
        base = self
        while exponent:
            if exponent & 1:
                result = _mul_pair(result, base)
            exponent >>= 1
            if exponent:
                base = _mul_pair(base, base)
        return result

    def __call__(self, point):
        return canonical(sum(c * point ** e for e, c in self._terms.items()))

    def derivative(self, order: int = 1) -> 'SparsePoly':
        return derivative(self, order)

    # ------------------------------------------------------------------
    # Comparison / display
    # ------------------------------------------------------------------
    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(self._terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    def __repr__(self):
        return f"SparsePoly({self._terms!r})"

    def __str__(self):
        if not self._terms:
            return "0"
        pieces = []
        for e, c in reversed(self._terms.items()):
            sign = '-' if c < 0 else '+'
            magnitude = -c if c < 0 else c
            if e == 0:
                body = str(magnitude)
            else:
                power = 'x' if e == 1 else f"x^{e}"
                body = power if magnitude == 1 else f"{magnitude}*{power}"
            pieces.append((sign, body))
        first_sign, first_body = pieces[0]
        text = ('-' if first_sign == '-' else '') + first_body
        for sign, body in pieces[1:]:
            text += f" {sign} {body}"
        return text


def _mul_pair(p: SparsePoly, q: SparsePoly) -> SparsePoly:
    if p.is_zero or q.is_zero:
        return SparsePoly.zero()
    acc: Dict[int, Coefficient] = {}
    for e1, c1 in p._terms.items():
        for e2, c2 in q._terms.items():
            e = e1 + e2
            acc[e] = acc.get(e, 0) + c1 * c2
    return SparsePoly._accumulated(acc)


# ----------------------------------------------------------------------
# Module-level operations
# ----------------------------------------------------------------------
def add(p: SparsePoly, q: SparsePoly) -> SparsePoly:
    return p + q


def mul(ps: Iterable[SparsePoly]) -> SparsePoly:
    """Fully expanded product; the empty product is 1."""
    result = SparsePoly.one()
    for p in ps:
        result = _mul_pair(result, p)
        if result.is_zero:
            break
    return result


def derivative(p: SparsePoly, order: int = 1) -> SparsePoly:
    """Exact order-th formal derivative."""
    if order < 0:
        raise ValueError("derivative order must be nonnegative")
    if order == 0:
        return p
    acc = {}
    for e, c in p.terms:
        if e < order:
            continue
        falling = 1
        for i in range(order):
            falling *= e - i
        acc[e - order] = c * falling
    return SparsePoly._accumulated(acc)


def eval_at_integer(p: SparsePoly, n: int) -> Coefficient:
    return p(n)


def compose(p: SparsePoly, q: SparsePoly) -> SparsePoly:
    """p(q(x)), expanded."""
    result = SparsePoly.zero()
    previous = 0
    power = SparsePoly.one()
    for e, c in p.terms:
        power = power * q ** (e - previous)
        previous = e
        result = result + power * c
    return result


def sign_changes(values: Iterable[Coefficient]) -> int:
    """Sign changes along a sequence, zeros skipped."""
    changes = 0
    last = 0
    for value in values:
        if value == 0:
            continue
        if last and (value > 0) != (last > 0):
            changes += 1
        last = value
    return changes


def descartes_positive_bound(p: SparsePoly) -> int:
    """Rule of signs: sign changes of the coefficients by increasing exponent."""
    if p.is_zero:
        raise ZeroPolynomialError("rule of signs is undefined for the zero polynomial")
    return sign_changes(c for _, c in p.terms)


def descartes_negative_bound(p: SparsePoly) -> int:
    """Rule of signs applied to p(-x)."""
    if p.is_zero:
        raise ZeroPolynomialError("rule of signs is undefined for the zero polynomial")
    return sign_changes(-c if e % 2 else c for e, c in p.terms)


# ----------------------------------------------------------------------
# Content, primitive parts and division
# ----------------------------------------------------------------------
def content(p: SparsePoly) -> Fraction:
    """Positive rational c with p / c having coprime integer coefficients."""
    if p.is_zero:
        return Fraction(0)
    values = [Fraction(c) for _, c in p.terms]
    numerator = 0
    denominator = 1
    for v in values:
        numerator = igcd(numerator, v.numerator)
        denominator = lcm(denominator, v.denominator)
    return Fraction(numerator, denominator)


def primitive_part(p: SparsePoly) -> SparsePoly:
    """p divided by its content, made to have a positive leading coefficient."""
    if p.is_zero:
        return p
    scale = 1 / content(p)
    if p.leading_coefficient < 0:
        scale = -scale
    return p * scale


def divmod_poly(p: SparsePoly, q: SparsePoly) -> Tuple[SparsePoly, SparsePoly]:
    """Euclidean division over the rationals."""
    if q.is_zero:
        raise ZeroDivisionError("polynomial division by zero")
    remainder = dict(p._terms)
    quotient: Dict[int, Coefficient] = {}
    q_degree = q.degree
    q_lead = Fraction(q.leading_coefficient)
    while remainder:
        r_degree = max(remainder)
        if r_degree < q_degree:
            break
        factor = canonical(remainder[r_degree] / q_lead)
        shift = r_degree - q_degree
        quotient[shift] = factor
        for e, c in q._terms.items():
            key = e + shift
            value = remainder.get(key, 0) - factor * c
            if value:
                remainder[key] = canonical(value)
            else:
                remainder.pop(key, None)
    return SparsePoly._accumulated(quotient), SparsePoly._accumulated(remainder)


def exact_div(p: SparsePoly, q: SparsePoly) -> SparsePoly:
    quotient, remainder = divmod_poly(p, q)
    if not remainder.is_zero:
        raise ArithmeticError("polynomial division is not exact")
    return quotient


# ----------------------------------------------------------------------
# Dense bridge to sympy (gcd, radical, remainder sequences)
# ----------------------------------------------------------------------
X = sympy.Symbol('x')


def to_poly(p: SparsePoly) -> Poly:
    """Dense sympy polynomial over QQ with the same coefficients."""
    terms = {(e,): sympy.Rational(c.numerator, c.denominator) for e, c in p.terms}
    return Poly.from_dict(terms, X, domain=QQ)


def from_poly(poly: Poly) -> SparsePoly:
    return SparsePoly({int(monom[0]): Fraction(int(c.p), int(c.q)) for monom, c in poly.terms()})


def gcd(p: SparsePoly, q: SparsePoly) -> SparsePoly:
    """Primitive gcd with positive leading coefficient."""
    return primitive_part(from_poly(to_poly(p).gcd(to_poly(q))))


def squarefree_part(p: SparsePoly) -> SparsePoly:
    """
    p / gcd(p, p'), primitive with positive leading coefficient.

    Same complex root set as p, every root simple.
    """
    if p.is_zero:
        raise ZeroPolynomialError("undefined radical: zero polynomial")
    return primitive_part(from_poly(to_poly(p).sqf_part()))
