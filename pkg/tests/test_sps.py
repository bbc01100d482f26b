from fractions import Fraction

import pytest

from wronskiops.errors import ExpansionBudgetError, InstanceSyntaxError
from wronskiops.logic.polycore import SparsePoly
from wronskiops.models.sps import ExpansionBudget, SpsInstance, descartes_instance, expand, parse, serialize

EXAMPLE = """\
# two bases
bases 2
f1: 1*x^0 + 1*x^1
f2: -2*x^0 + 1*x^3   # x^3 - 2
terms 2
1 : f1^2
-1/2 : f1^1 f2^3
"""


def test_parse_example(x):
    inst = parse(EXAMPLE)
    assert inst.m == 2
    assert inst.k == 2
    assert inst.bases == (x + 1, x ** 3 - 2)
    assert inst.coeffs == (1, Fraction(-1, 2))
    assert inst.exponents == ((2, 0), (1, 3))
    assert inst.t == 2
    assert inst.d == 3
    assert inst.alpha_max == 3


def test_parse_lenient_polynomials(x):
    inst = parse("bases 1\nf1: x^2 - 3*x + 4\nterms 1\n2 : f1 f1^2\n")
    assert inst.bases == (x ** 2 - x * 3 + 4,)
    # repeated factors add up
    assert inst.exponents == ((3,),)


def test_serialize_is_parseable():
    inst = parse(EXAMPLE)
    text = serialize(inst)
    assert text.splitlines()[1] == "f1: 1*x^0 + 1*x^1"
    assert parse(text) == inst


def test_constant_term_line(x):
    inst = parse("bases 1\nf1: x\nterms 2\n5 :\n-1 : f1^2\n")
    assert expand(inst) == 5 - x ** 2
    assert serialize(inst).splitlines()[3] == "5 :"


@pytest.mark.parametrize("text,line,message", [
    ("bases 1\nf2: 1*x^0\nterms 1\n1 : f1\n", 2, "expected f1"),
    ("bases 1\nf1: 1*x^0\nterms 1\n1 : f3^2\n", 4, "unknown base f3"),
    ("bases 1\nf1: 1*x^1\nterms 1\n1 : f1^-2\n", 4, "negative exponent"),
    ("bases 1\nf1: 1*x^1\nterms 1\n1/0 : f1\n", 4, "zero denominator"),
    ("bases 1\nf1: 1*x^1\nterms 2\n1 : f1\n", 5, "unexpected end of input"),
    ("bases 1\nf1: 1*x^1\nterms 1\n1 : f1\n2 : f1\n", 5, "unexpected content"),
    ("bases 1\nf1: 0\nterms 1\n1 : f1^2\n", 4, "zero polynomial"),
    ("bases 1\nf1: 3*y\nterms 1\n1 : f1\n", 2, "expected 'x'"),
])
def test_syntax_errors(text, line, message):
    with pytest.raises(InstanceSyntaxError, match=message) as info:
        parse(text)
    assert info.value.line == line
    assert info.value.exit_code == 2


def test_zero_base_allowed_when_unused(x):
    inst = parse("bases 2\nf1: 0\nf2: x\nterms 1\n3 : f2\n")
    assert expand(inst) == x * 3


def test_dimension_checks(x):
    with pytest.raises(InstanceSyntaxError):
        SpsInstance(bases=(x,), coeffs=(1, 2), exponents=((1,),))
    with pytest.raises(InstanceSyntaxError):
        SpsInstance(bases=(x,), coeffs=(1,), exponents=((1, 2),))
    with pytest.raises(InstanceSyntaxError, match="negative exponent"):
        SpsInstance(bases=(x,), coeffs=(1,), exponents=((-1,),))


def test_evaluate_matches_expansion():
    inst = parse(EXAMPLE)
    expanded = expand(inst)
    for n in range(-3, 6):
        assert inst.evaluate(n) == expanded(n)


def test_expansion_budget(x):
    inst = SpsInstance(bases=(x + 1,), coeffs=(1,), exponents=((20,),))
    assert inst.predicted_degree() == 20
    with pytest.raises(ExpansionBudgetError, match="exceeds the budget") as info:
        expand(inst, ExpansionBudget(max_degree=10, max_sparsity=100))
    assert info.value.exit_code == 3
    with pytest.raises(ExpansionBudgetError, match="sparsity"):
        expand(inst, ExpansionBudget(max_degree=100, max_sparsity=5))
    assert expand(inst, ExpansionBudget(max_degree=20, max_sparsity=21)).degree == 20


def test_descartes_instance(x):
    inst = descartes_instance([3, -1], [0, 5])
    assert inst.bases == (x,)
    assert expand(inst) == 3 - x ** 5
    assert inst.products[1].exponents == (5,)
    assert inst.evaluate(2) == 3 - 32
