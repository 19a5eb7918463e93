"""Recursive-descent parser for rational functions in t and forms over Q(t).

Grammar (whitespace is insignificant, juxtaposition is not multiplication)::

    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := '-' factor | base ('^' '-'? integer)?
    base   := integer | variable | '(' expr ')'

Fractions such as 1/4 are quotients of integer literals.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .mpoly import MultiPolynomial
from .places import INFINITY, Place, PlaceSet
from .poly import UniPoly
from .ratfunc import RationalFunction


class ParseError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        self.text = text
        self.pos = pos
        super().__init__(f"{message} at position {pos}: {text!r}")


# -- AST


@dataclass(frozen=True)
class Num:
    value: int


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Neg:
    arg: "Node"


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Pow:
    base: "Node"
    exp: int


Node = Union[Num, Var, Neg, BinOp, Pow]

_PREC = {"+": 1, "-": 1, "*": 2, "/": 2}


def to_text(node: Node) -> str:
    """Print with the fewest parentheses that still parse back to ``node``."""
    if isinstance(node, Num):
        return str(node.value)
    if isinstance(node, Var):
        return node.name
    if isinstance(node, Neg):
        inner = to_text(node.arg)
        if isinstance(node.arg, BinOp):
            inner = f"({inner})"
        return "-" + inner
    if isinstance(node, Pow):
        base = to_text(node.base)
        if not isinstance(node.base, (Num, Var)):
            base = f"({base})"
        return f"{base}^{node.exp}"
    p = _PREC[node.op]
    left = to_text(node.left)
    if isinstance(node.left, BinOp) and _PREC[node.left.op] < p:
        left = f"({left})"
    right = to_text(node.right)
    # left-associative: an equal-precedence right operand needs parentheses
    if isinstance(node.right, BinOp) and _PREC[node.right.op] <= p:
        right = f"({right})"
    return f"{left}{node.op}{right}"


# -- tokenizer and parser

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:  # trailing whitespace
            break
        if m.group(1):
            out.append(("int", m.group(1), m.start(1)))
        elif m.group(2):
            out.append(("name", m.group(2), m.start(2)))
        elif m.group(3):
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise ParseError(f"unexpected character {ch!r}", text, m.start(3))
            out.append(("op", ch, m.start(3)))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str, variables: Sequence[str]):
        self.text = text
        self.variables = set(variables)
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def fail(self, msg: str):
        raise ParseError(msg, self.text, self.peek()[2])

    def expect(self, value: str):
        if self.peek()[1] != value or self.peek()[0] != "op":
            self.fail(f"expected {value!r}")
        self.take()

    def parse(self) -> Node:
        if self.peek()[0] == "end":
            self.fail("empty expression")
        node = self.expr()
        if self.peek()[0] != "end":
            self.fail("unexpected token " + repr(self.peek()[1]))
        return node

    def expr(self) -> Node:
        node = self.term()
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            node = BinOp(op, node, self.term())
        return node

    def term(self) -> Node:
        node = self.factor()
        while self.peek()[0] == "op" and self.peek()[1] in "*/":
            op = self.take()[1]
            node = BinOp(op, node, self.factor())
        return node

    def factor(self) -> Node:
        if self.peek()[:2] == ("op", "-"):
            self.take()
            return Neg(self.factor())
        base = self.base()
        if self.peek()[:2] == ("op", "^"):
            self.take()
            sign = 1
            if self.peek()[:2] == ("op", "-"):
                self.take()
                sign = -1
            kind, val, _ = self.peek()
            if kind != "int":
                self.fail("expected an integer exponent")
            self.take()
            return Pow(base, sign * int(val))
        return base

    def base(self) -> Node:
        kind, val, pos = self.peek()
        if kind == "int":
            self.take()
            if self.peek()[0] in ("int", "name") or self.peek()[:2] == ("op", "("):
                self.fail("juxtaposition is not allowed; use '*'")
            return Num(int(val))
        if kind == "name":
            if val not in self.variables:
                raise ParseError(f"unknown variable {val!r}", self.text, pos)
            self.take()
            if self.peek()[0] in ("int", "name") or self.peek()[:2] == ("op", "("):
                self.fail("juxtaposition is not allowed; use '*'")
            return Var(val)
        if (kind, val) == ("op", "("):
            self.take()
            node = self.expr()
            self.expect(")")
            if self.peek()[0] in ("int", "name") or self.peek()[:2] == ("op", "("):
                self.fail("juxtaposition is not allowed; use '*'")
            return node
        if kind == "end":
            self.fail("unexpected end of input")
        self.fail(f"unexpected token {val!r}")


def parse_expression(text: str, variables: Sequence[str] = ("t",)) -> Node:
    return _Parser(text, variables).parse()


# -- evaluation


def _evaluate(node: Node, names: Sequence[str], text: str):
    """Evaluate to a RationalFunction (no form variables) or MultiPolynomial."""
    if isinstance(node, Num):
        return RationalFunction.const(node.value)
    if isinstance(node, Var):
        if node.name == "t":
            return RationalFunction.t()
        return MultiPolynomial.variable(list(names).index(node.name), len(names), names)
    if isinstance(node, Neg):
        return -_evaluate(node.arg, names, text)
    if isinstance(node, Pow):
        b = _evaluate(node.base, names, text)
        if isinstance(b, MultiPolynomial) and node.exp < 0:
            raise ParseError("negative power of a form variable", text, 0)
        if isinstance(b, RationalFunction) and not b and node.exp < 0:
            raise ParseError("zero raised to a negative power", text, 0)
        return b**node.exp
    a = _evaluate(node.left, names, text)
    b = _evaluate(node.right, names, text)
    if node.op == "+":
        return a + b if isinstance(a, MultiPolynomial) or not isinstance(b, MultiPolynomial) else b + a
    if node.op == "-":
        return a - b if isinstance(a, MultiPolynomial) or not isinstance(b, MultiPolynomial) else -b + a
    if node.op == "*":
        return a * b if isinstance(a, MultiPolynomial) or not isinstance(b, MultiPolynomial) else b * a
    if isinstance(b, MultiPolynomial):
        if not b.is_constant():
            raise ParseError("division by a form variable; quotients are only allowed in coefficients", text, 0)
        b = b.coefficient((0,) * b.nvars)
    if not b:
        raise ParseError("division by zero", text, 0)
    return a * b.inverse()


def parse_ratfunc(text: str) -> RationalFunction:
    value = _evaluate(parse_expression(text, ("t",)), (), text)
    return value


def parse_form(text: str, names: Sequence[str]) -> MultiPolynomial:
    """Parse a polynomial in ``names`` with coefficients in Q(t)."""
    names = tuple(names)
    if "t" in names:
        raise ValueError("t is reserved for the function field")
    value = _evaluate(parse_expression(text, ("t",) + names), names, text)
    if isinstance(value, RationalFunction):
        value = MultiPolynomial.constant(value, len(names), names)
    return value


def projective_names(n: int) -> tuple[str, ...]:
    return tuple(f"x{i}" for i in range(n + 1))


def infer_names(texts: Sequence[str]) -> tuple[str, ...]:
    """Smallest variable family covering every name used: x0..xn, X,Y or L,T."""
    used = set()
    for s in texts:
        used.update(m.group(0) for m in re.finditer(r"[A-Za-z_][A-Za-z_0-9]*", s))
    used.discard("t")
    xs = [int(v[1:]) for v in used if re.fullmatch(r"x\d+", v)]
    if xs and len(xs) == len(used):
        return projective_names(max(max(xs), 1))
    if used <= {"X", "Y"}:
        return ("X", "Y")
    if used <= {"L", "T"}:
        return ("L", "T")
    raise ValueError(f"cannot mix variable families: {sorted(used)}")


def parse_place(text: str) -> Place:
    """'inf' or a monic irreducible polynomial in t."""
    if text.strip() == "inf":
        return INFINITY
    f = parse_ratfunc(text)
    if f.den.degree != 0 or f.num.degree < 1:
        raise ParseError("a place must be a nonconstant polynomial in t or 'inf'", text, 0)
    poly: UniPoly = f.num
    if poly.coeffs[-1] != 1:
        raise ParseError("a place polynomial must be monic", text, 0)
    return Place.finite(poly)


def parse_place_set(items: Sequence[str] | str) -> PlaceSet:
    if isinstance(items, str):
        items = [s for s in items.split(",") if s.strip()]
    return PlaceSet(parse_place(s) for s in items)


def parse_rational(text: str) -> Fraction:
    m = re.fullmatch(r"\s*(-?\d+)\s*(?:/\s*(\d+))?\s*", str(text))
    if not m:
        raise ValueError(f"not a rational number: {text!r}")
    den = int(m.group(2) or 1)
    if den == 0:
        raise ValueError(f"zero denominator: {text!r}")
    return Fraction(int(m.group(1)), den)
