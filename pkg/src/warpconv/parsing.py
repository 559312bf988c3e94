"""Recursive-descent parser for operator expressions.

Grammar (whitespace insignificant)::

    expr     :=  term (('+' | '-') term)*
    term     :=  unary (('*' | '/') unary)*
    unary    :=  '-' unary | power
    power    :=  atom ('^' exponent)?
    exponent :=  ['-'] INT  |  '(' ['-'] INT ['/' INT] ')'
    atom     :=  INT | 'i' | IDENT | '(' expr ')'

Identifiers: X1 X2 X3 (positions), P1 P2 P3 (momenta), r (= |x|),
rho (= sqrt(x2^2+x3^2)), i (imaginary unit), and constant names.  Division
is only defined when the divisor normal-orders to a single invertible
scalar * r^p * rho^q term, which covers rational literals like 3/7 and
potentials like e^2/r.  Exponents of r and rho may be rational; everything
else takes integer exponents (positions and momenta nonnegative).
"""

from __future__ import annotations

from fractions import Fraction

from .coords import CoordFunction
from .errors import ParseError, UnknownSymbolError
from .operators import OperatorExpr, P_ZERO
from .scalars import QC, SymbolicScalar, mono_inv, DEFAULT_CONSTANTS

_OPS = set("+-*/^()")


class _Token:
    __slots__ = ("kind", "text", "pos")

    def __init__(self, kind: str, text: str, pos: int):
        self.kind = kind  # 'num' | 'ident' | an operator char | 'end'
        self.text = text
        self.pos = pos


def _tokenize(text: str) -> list[_Token]:
    out = []
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
            continue
        if c.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            out.append(_Token("num", text[i:j], i))
            i = j
            continue
        if c.isalpha() or c == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            out.append(_Token("ident", text[i:j], i))
            i = j
            continue
        if c in _OPS:
            out.append(_Token(c, c, i))
            i += 1
            continue
        raise ParseError(f"unexpected character {c!r}", i)
    out.append(_Token("end", "", n))
    return out


class Parser:
    def __init__(self, text: str, extra_constants: tuple[str, ...] = ()):
        self.tokens = _tokenize(text)
        self.k = 0
        self.constants = set(DEFAULT_CONSTANTS) | set(extra_constants)

    def peek(self) -> _Token:
        return self.tokens[self.k]

    def next(self) -> _Token:
        tok = self.tokens[self.k]
        self.k += 1
        return tok

    def expect(self, kind: str) -> _Token:
        tok = self.next()
        if tok.kind != kind:
            raise ParseError(f"expected {kind!r}, found {tok.text!r}", tok.pos)
        return tok

    def parse(self) -> OperatorExpr:
        expr = self.expr()
        tok = self.peek()
        if tok.kind != "end":
            raise ParseError(f"unexpected trailing input {tok.text!r}", tok.pos)
        return expr

    def expr(self) -> OperatorExpr:
        acc = self.term()
        while self.peek().kind in ("+", "-"):
            op = self.next().kind
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self) -> OperatorExpr:
        acc = self.unary()
        while self.peek().kind in ("*", "/"):
            tok = self.next()
            rhs = self.unary()
            if tok.kind == "*":
                acc = acc * rhs
            else:
                acc = acc * _invert(rhs, tok.pos)
        return acc

    def unary(self) -> OperatorExpr:
        if self.peek().kind == "-":
            self.next()
            return -self.unary()
        return self.power()

    def power(self) -> OperatorExpr:
        tok = self.peek()
        base_kind, base = self.atom()
        if self.peek().kind != "^":
            return base
        self.next()
        exp = self.exponent()
        if base_kind in ("r", "rho"):
            if base_kind == "r":
                return OperatorExpr.from_coord(CoordFunction.r_power(exp))
            return OperatorExpr.from_coord(CoordFunction.rho_power(exp))
        if exp.denominator != 1:
            raise ParseError(
                f"fractional exponent {exp} only allowed on r and rho", tok.pos)
        n = exp.numerator
        if base_kind == "const":
            name = tok.text
            return OperatorExpr.scalar(SymbolicScalar.symbol(name, n))
        if base_kind == "num":
            coeff = _single_qc(base)
            acc = QC(Fraction(1))
            if n >= 0:
                for _ in range(n):
                    acc = acc * coeff
            else:
                if coeff.is_zero():
                    raise ParseError("zero to a negative power", tok.pos)
                for _ in range(-n):
                    acc = acc / coeff
            return OperatorExpr.scalar(acc)
        if n < 0:
            raise ParseError(
                f"negative exponent {n} not allowed for {tok.text!r}", tok.pos)
        return base.power(n)

    def atom(self) -> tuple[str, OperatorExpr]:
        tok = self.next()
        if tok.kind == "num":
            return "num", OperatorExpr.scalar(QC(Fraction(int(tok.text))))
        if tok.kind == "(":
            inner = self.expr()
            self.expect(")")
            return "group", inner
        if tok.kind == "ident":
            name = tok.text
            if name in ("X1", "X2", "X3"):
                return "op", OperatorExpr.position(int(name[1]))
            if name in ("P1", "P2", "P3"):
                return "op", OperatorExpr.momentum(int(name[1]))
            if name == "r":
                return "r", OperatorExpr.from_coord(CoordFunction.r_power(1))
            if name == "rho":
                return "rho", OperatorExpr.from_coord(CoordFunction.rho_power(1))
            if name == "i":
                return "num", OperatorExpr.scalar(QC(0, Fraction(1)))
            if name in self.constants:
                return "const", OperatorExpr.scalar(SymbolicScalar.symbol(name))
            raise UnknownSymbolError(f"unknown symbol {name!r}", tok.pos)
        raise ParseError(f"unexpected token {tok.text!r}", tok.pos)

    def exponent(self) -> Fraction:
        # A bare exponent is a single signed integer; rationals need
        # parentheses (r^(-3/2)) so that e^2/r keeps meaning (e^2)/r.
        paren = False
        if self.peek().kind == "(":
            self.next()
            paren = True
        sign = 1
        if self.peek().kind == "-":
            self.next()
            sign = -1
        num = int(self.expect("num").text)
        den = 1
        if paren and self.peek().kind == "/":
            self.next()
            den = int(self.expect("num").text)
        if paren:
            self.expect(")")
        return Fraction(sign * num, den)


def _single_qc(expr: OperatorExpr) -> QC:
    f = expr.coordinate_part()
    ((_, coeff),) = f.terms.items()
    return coeff


def _invert(expr: OperatorExpr, pos: int) -> OperatorExpr:
    """Exact inverse of a single scalar * r^p * rho^q term."""
    if list(expr.terms.keys()) != [P_ZERO]:
        raise ParseError("cannot divide by an expression with momentum", pos)
    f = expr.coordinate_part()
    if len(f.terms) != 1:
        raise ParseError("cannot divide by a multi-term expression", pos)
    ((a, p, q, mono), coeff), = f.terms.items()
    if any(a):
        raise ParseError(
            "cannot divide by positions; only scalars, r and rho invert", pos)
    inv = CoordFunction({((0, 0, 0), -p, -q, mono_inv(mono)):
                         QC(Fraction(1)) / coeff})
    return OperatorExpr.from_coord(inv)


def parse(text: str, extra_constants: tuple[str, ...] = ()) -> OperatorExpr:
    """Parse expression text into a normal-ordered OperatorExpr."""
    return Parser(text, extra_constants).parse()
