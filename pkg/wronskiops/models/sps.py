"""
Sums of products of powers of sparse polynomials.

An instance is sum_i a_i prod_j f_j^(alpha_ij). The text format is line
oriented, '#' starts a comment:

    bases 2
    f1: 1*x^0 + 1*x^1
    f2: -2*x^0 + 1*x^3
    terms 2
    1 : f1^2
    -1/2 : f1^1 f2^3
"""
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from wronskiops.config.config import Config
from wronskiops.errors import ExpansionBudgetError, InstanceSyntaxError
from wronskiops.logic.polycore import Coefficient, SparsePoly, canonical, mul
from wronskiops.logic.wronskian import PowerProduct


@dataclass(frozen=True)
class ExpansionBudget:
    max_degree: int
    max_sparsity: int

    @classmethod
    def default(cls) -> 'ExpansionBudget':
        return cls(max_degree=Config.BUDGET_DEGREE, max_sparsity=Config.BUDGET_SPARSITY)


@dataclass(frozen=True)
class SpsInstance:
    bases: Tuple[SparsePoly, ...]
    coeffs: Tuple[Coefficient, ...]
    exponents: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        bases = tuple(self.bases)
        coeffs = tuple(canonical(a) for a in self.coeffs)
        rows = tuple(tuple(int(e) for e in row) for row in self.exponents)
        if not bases:
            raise InstanceSyntaxError("an instance needs at least one base polynomial")
        if not coeffs:
            raise InstanceSyntaxError("an instance needs at least one term")
        if len(rows) != len(coeffs):
            raise InstanceSyntaxError(f"{len(coeffs)} coefficients but {len(rows)} exponent rows")
        for i, row in enumerate(rows):
            if len(row) != len(bases):
                raise InstanceSyntaxError(f"term {i + 1} has {len(row)} exponents for {len(bases)} bases")
            if any(e < 0 for e in row):
                raise InstanceSyntaxError(f"term {i + 1} has a negative exponent")
        object.__setattr__(self, 'bases', bases)
        object.__setattr__(self, 'coeffs', coeffs)
        object.__setattr__(self, 'exponents', rows)

    @property
    def k(self) -> int:
        return len(self.coeffs)

    @property
    def m(self) -> int:
        return len(self.bases)

    @property
    def t(self) -> int:
        return max(base.sparsity for base in self.bases)

    @property
    def d(self) -> int:
        return max(max(base.degree, 0) for base in self.bases)

    @property
    def alpha_max(self) -> int:
        return max(max(row) for row in self.exponents)

    @property
    def products(self) -> Tuple[PowerProduct, ...]:
        return tuple(PowerProduct(row) for row in self.exponents)

    def evaluate(self, n: int) -> Coefficient:
        """Exact value at n from the base values, without expansion."""
        values = [base(n) for base in self.bases]
        total = 0
        for a, row in zip(self.coeffs, self.exponents):
            if a == 0:
                continue
            term = a
            for value, e in zip(values, row):
                if e:
                    term *= value ** e
                    if term == 0:
                        break
            total += term
        return canonical(total)

    def predicted_degree(self) -> int:
        """Cost of expansion: sum_j alpha_ij * max(deg f_j, 1), worst term."""
        return max((sum(e * max(base.degree, 1) for base, e in zip(self.bases, row) if e)
                    for a, row in zip(self.coeffs, self.exponents) if a != 0), default=0)


def expand(inst: SpsInstance, budget: Optional[ExpansionBudget] = None) -> SparsePoly:
    """Fully expanded sum, refused up front when it would exceed the budget."""
    budget = budget or ExpansionBudget.default()
    predicted = inst.predicted_degree()
    if predicted > budget.max_degree:
        raise ExpansionBudgetError(f"degree {predicted} exceeds the budget of {budget.max_degree}")
    powers: Dict[Tuple[int, int], SparsePoly] = {}
    total = SparsePoly.zero()
    for a, row in zip(inst.coeffs, inst.exponents):
        if a == 0:
            continue
        factors = []
        for j, e in enumerate(row):
            if e:
                if (j, e) not in powers:
                    powers[(j, e)] = inst.bases[j] ** e
                factors.append(powers[(j, e)])
        total = total + mul(factors) * a
        if total.sparsity > budget.max_sparsity:
            raise ExpansionBudgetError(
                f"sparsity {total.sparsity} exceeds the budget of {budget.max_sparsity}")
    return total


def descartes_instance(coeffs: Sequence[Coefficient], exponents: Sequence[int]) -> SpsInstance:
    """sum_i a_i x^(alpha_i) over the single base x."""
    return SpsInstance(bases=(SparsePoly.x(),), coeffs=tuple(coeffs),
                       exponents=tuple((e,) for e in exponents))


# ----------------------------------------------------------------------
# Text format
# ----------------------------------------------------------------------
_INT = re.compile(r'\d+')
_SPACE = re.compile(r'\s*')


class _Line:
    """Cursor over one source line; columns are 1-based."""

    def __init__(self, number: int, text: str):
        self.number = number
        self.text = text
        self.pos = 0

    def error(self, message: str, pos: Optional[int] = None) -> InstanceSyntaxError:
        return InstanceSyntaxError(message, self.number, (self.pos if pos is None else pos) + 1)

    def skip(self):
        self.pos = _SPACE.match(self.text, self.pos).end()

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos:self.pos + 1]

    def at_end(self) -> bool:
        return self.peek() == ''

    def accept(self, literal: str) -> bool:
        if self.peek() == literal:
            self.pos += len(literal)
            return True
        return False

    def expect(self, literal: str, what: str):
        if not self.accept(literal):
            raise self.error(f"expected {what}")

    def keyword(self, word: str):
        self.skip()
        if not self.text.startswith(word, self.pos):
            raise self.error(f"expected '{word}'")
        self.pos += len(word)

    def integer(self, what: str) -> int:
        self.skip()
        if self.text[self.pos:self.pos + 1] == '-':
            raise self.error(f"negative {what}")
        match = _INT.match(self.text, self.pos)
        if not match:
            raise self.error(f"expected {what}")
        self.pos = match.end()
        return int(match.group())

    def finish(self):
        if not self.at_end():
            raise self.error("unexpected trailing text")


def _source_lines(text: str) -> List[_Line]:
    lines = []
    for number, raw in enumerate(text.splitlines(), start=1):
        body = raw.split('#', 1)[0]
        if body.strip():
            lines.append(_Line(number, body.rstrip()))
    return lines


def _parse_monomial(line: _Line, sign: int) -> Tuple[int, int]:
    if line.accept('-'):
        sign = -sign
    coefficient = 1
    has_number = line.peek().isdigit()
    if has_number:
        coefficient = line.integer("coefficient")
        if not line.accept('*'):
            return sign * coefficient, 0
    if not line.accept('x'):
        raise line.error("expected 'x'")
    exponent = 1
    if line.accept('^'):
        exponent = line.integer("exponent")
    return sign * coefficient, exponent


def _parse_polynomial(line: _Line) -> SparsePoly:
    terms: Dict[int, int] = {}
    sign = 1
    if line.accept('+'):
        sign = 1
    elif line.accept('-'):
        sign = -1
    while True:
        coefficient, exponent = _parse_monomial(line, sign)
        terms[exponent] = terms.get(exponent, 0) + coefficient
        if line.at_end():
            break
        if line.accept('+'):
            sign = 1
        elif line.accept('-'):
            sign = -1
        else:
            raise line.error("expected '+' or '-'")
    return SparsePoly(terms)


def _parse_rational(line: _Line) -> Coefficient:
    sign = -1 if line.accept('-') else 1
    if sign == 1:
        line.accept('+')
    numerator = line.integer("coefficient")
    if line.accept('/'):
        start = line.pos
        denominator = line.integer("denominator")
        if denominator == 0:
            raise line.error("zero denominator", start)
        return canonical(Fraction(sign * numerator, denominator))
    return sign * numerator


def parse(text: str) -> SpsInstance:
    lines = _source_lines(text)
    last = len(text.splitlines()) + 1
    cursor = iter(lines)

    def next_line(what: str) -> _Line:
        line = next(cursor, None)
        if line is None:
            raise InstanceSyntaxError(f"unexpected end of input, expected {what}", last, 1)
        return line

    header = next_line("'bases <m>'")
    header.keyword('bases')
    m = header.integer("number of bases")
    header.finish()
    if m < 1:
        raise header.error("at least one base is required", 0)

    bases: List[SparsePoly] = []
    for j in range(1, m + 1):
        line = next_line(f"definition of f{j}")
        line.keyword('f')
        start = line.pos
        index = line.integer("base index")
        if index != j:
            raise line.error(f"expected f{j}, found f{index}", start)
        line.expect(':', "':'")
        bases.append(_parse_polynomial(line))

    header = next_line("'terms <k>'")
    header.keyword('terms')
    k = header.integer("number of terms")
    header.finish()
    if k < 1:
        raise header.error("at least one term is required", 0)

    coeffs: List[Coefficient] = []
    rows: List[Tuple[int, ...]] = []
    for _ in range(k):
        line = next_line("a term line '<a> : f<j>^<e> ...'")
        coeffs.append(_parse_rational(line))
        line.expect(':', "':'")
        row = [0] * m
        while not line.at_end():
            line.accept('*')
            start = line.pos
            line.keyword('f')
            index = line.integer("base index")
            if not 1 <= index <= m:
                raise line.error(f"unknown base f{index}", start)
            exponent = 1
            if line.accept('^'):
                exponent = line.integer("exponent")
            if exponent and bases[index - 1].is_zero:
                raise line.error(f"base f{index} is the zero polynomial", start)
            row[index - 1] += exponent
        rows.append(tuple(row))

    extra = next(cursor, None)
    if extra is not None:
        extra.skip()
        raise extra.error("unexpected content after the last term")
    return SpsInstance(bases=tuple(bases), coeffs=tuple(coeffs), exponents=tuple(rows))


def format_polynomial(p: SparsePoly) -> str:
    """Base line body: monomials by increasing exponent."""
    if p.is_zero:
        return "0"
    pieces = []
    for e, c in p.terms:
        if not isinstance(c, int):
            raise ValueError("base polynomials must have integer coefficients to be serialized")
        body = f"{abs(c)}*x^{e}"
        if not pieces:
            pieces.append(body if c > 0 else f"-{body}")
        else:
            pieces.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(pieces)


def serialize(inst: SpsInstance) -> str:
    lines = [f"bases {inst.m}"]
    lines += [f"f{j}: {format_polynomial(base)}" for j, base in enumerate(inst.bases, start=1)]
    lines.append(f"terms {inst.k}")
    for a, row in zip(inst.coeffs, inst.exponents):
        factors = " ".join(f"f{j}^{e}" for j, e in enumerate(row, start=1) if e)
        lines.append(f"{a} : {factors}".rstrip())
    return "\n".join(lines) + "\n"
