from fractions import Fraction

import pytest
import sympy

from wronskiops.logic.polycore import SparsePoly
from wronskiops.models.sps import SpsInstance, descartes_instance

X = sympy.Symbol('x')


def to_sympy(p: SparsePoly) -> sympy.Poly:
    return sympy.Poly(sum(sympy.Rational(c.numerator, c.denominator) * X ** e for e, c in p.terms), X, domain='QQ')


def from_sympy(expr) -> SparsePoly:
    poly = sympy.Poly(expr, X)
    return SparsePoly({int(m[0]): Fraction(int(c.p), int(c.q)) for m, c in poly.terms()})


@pytest.fixture
def x():
    return SparsePoly.x()


@pytest.fixture
def cubic_instance():
    """x^3 - 2x + 1 = (x - 1)(x^2 + x - 1): three real roots."""
    return descartes_instance([1, -2, 1], [0, 1, 3])


@pytest.fixture
def zero_instance():
    """(x+1)^2 - (x^2 + 2x + 1), written over two bases."""
    return SpsInstance(
        bases=(SparsePoly({0: 1, 1: 1}), SparsePoly({0: 1, 1: 2, 2: 1})),
        coeffs=(1, -1),
        exponents=((2, 0), (0, 1)),
    )


@pytest.fixture
def write_instance(tmp_path):
    def write(text: str, name: str = "instance.sps"):
        path = tmp_path / name
        path.write_text(text, encoding='utf-8')
        return path
    return write
