"""One-variable expression language: lexer, Pratt parser, printer, evaluators.

Grammar, loosest first::

    sum     := product (("+" | "-") product)*
    product := unary (("*" | "/") unary)*
    unary   := "-" unary | power
    power   := atom ("^" unary)?          # right associative
    atom    := number | name | name "(" sum ")" | "root(" int "," sum ")"
             | "(" sum ")" | "|" sum "|"

``**`` is accepted as a synonym for ``^``.  Implicit multiplication is not.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from typing import Optional, Union

from .errors import DivisionByZero, DomainError, HyperlimError, ParseError
from .hyperfield import (
    Hyper,
    absolute,
    add,
    div,
    from_real,
    int_pow,
    mul,
    neg,
    nth_root,
    real_pow,
    sub,
)
from .lift import EXP, FUNCTION_NAMES, LN, ElementaryFn, lift

CONSTANTS = {"pi": math.pi, "e": math.e}


@dataclass(frozen=True)
class SourceSpan:
    start: int
    end: int

    def __post_init__(self):
        if not 0 <= self.start <= self.end:
            raise ValueError(f"bad span {self.start}:{self.end}")


@dataclass(frozen=True)
class Constant:
    value: float
    name: Optional[str] = None
    span: Optional[SourceSpan] = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Variable:
    name: str = "x"
    span: Optional[SourceSpan] = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Unary:
    """``op`` is ``"neg"``, ``"abs"`` or an elementary function name."""

    op: str
    child: "Expr"
    span: Optional[SourceSpan] = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Binary:
    op: str  # add, sub, mul, div, pow
    left: "Expr"
    right: "Expr"
    span: Optional[SourceSpan] = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Root:
    n: int
    child: "Expr"
    span: Optional[SourceSpan] = field(default=None, compare=False, repr=False)


Expr = Union[Constant, Variable, Unary, Binary, Root]

_BINARY_SYMBOL = {"add": "+", "sub": "-", "mul": "*", "div": "/", "pow": "^"}
_SYMBOL_BINARY = {v: k for k, v in _BINARY_SYMBOL.items()}
_BINDING = {"+": 10, "-": 10, "*": 20, "/": 20, "^": 40}
_UNARY_MINUS = 30


def has_variable(e: Expr) -> bool:
    if isinstance(e, Variable):
        return True
    if isinstance(e, Constant):
        return False
    if isinstance(e, Binary):
        return has_variable(e.left) or has_variable(e.right)
    return has_variable(e.child)


# --------------------------------------------------------------------------
# lexer

_TOKEN = re.compile(
    r"\s*(?:(?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)"
    r"|(?P<name>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>\*\*|[-+*/^(),|]))"
)


@dataclass(frozen=True)
class _Token:
    kind: str  # num, name, op, end
    text: str
    start: int
    end: int


def _tokenize(text: str) -> list:
    tokens, pos = [], 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos == len(text):
            tokens.append(_Token("end", "", pos, pos))
            return tokens
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            start = len(text[:pos].encode())
            raise ParseError(f"unexpected character {text[pos]!r}", SourceSpan(start, start + len(text[pos].encode())))
        kind = m.lastgroup
        value = m.group(kind)
        start = m.start(kind)
        if value == "**":
            value = "^"
        tokens.append(_Token(kind, value, start, m.end()))
        pos = m.end()


# --------------------------------------------------------------------------
# parser


class _Parser:
    def __init__(self, text: str, variable: str):
        self.text = text
        self.variable = variable
        self.tokens = _tokenize(text)
        self.i = 0
        self._offsets = None

    # byte offsets differ from character offsets only for non-ASCII input
    def span(self, start: int, end: int) -> SourceSpan:
        if self.text.isascii():
            return SourceSpan(start, end)
        if self._offsets is None:
            acc, offs = 0, [0]
            for ch in self.text:
                acc += len(ch.encode())
                offs.append(acc)
            self._offsets = offs
        return SourceSpan(self._offsets[start], self._offsets[end])

    def fail(self, message: str, tok: _Token):
        raise ParseError(message, self.span(tok.start, tok.end))

    @property
    def tok(self) -> _Token:
        return self.tokens[self.i]

    def expect(self, text: str) -> _Token:
        tok = self.tok
        if tok.text != text or tok.kind == "end":
            self.fail(f"expected {text!r}", tok)
        self.i += 1
        return tok

    def parse(self) -> Expr:
        node = self.expression(0)
        if self.tok.kind != "end":
            self.fail(f"unexpected {self.tok.text!r}", self.tok)
        return node

    def expression(self, min_bp: int) -> Expr:
        left = self.prefix()
        while True:
            tok = self.tok
            bp = _BINDING.get(tok.text) if tok.kind == "op" else None
            if bp is None or bp <= min_bp:
                return left
            self.i += 1
            op = _SYMBOL_BINARY[tok.text]
            right = self.expression(bp - 1 if op == "pow" else bp)
            span = self.span_of(left, right)
            if op == "pow" and has_variable(left) and has_variable(right):
                raise ParseError("exponent and base cannot both depend on the variable", span)
            left = Binary(op, left, right, span)

    def span_of(self, left: Expr, right: Expr) -> SourceSpan:
        return SourceSpan(left.span.start, right.span.end)

    def prefix(self) -> Expr:
        tok = self.tok
        if tok.kind == "num":
            self.i += 1
            return Constant(float(tok.text), None, self.span(tok.start, tok.end))
        if tok.kind == "name":
            return self.name()
        if tok.text == "-":
            self.i += 1
            child = self.expression(_UNARY_MINUS)
            span = SourceSpan(self.span(tok.start, tok.end).start, child.span.end)
            if isinstance(child, Constant) and child.name is None:
                return Constant(-child.value, None, span)
            return Unary("neg", child, span)
        if tok.text == "(":
            self.i += 1
            inner = self.expression(0)
            close = self.expect(")")
            return _respan(inner, self.span(tok.start, close.end))
        if tok.text == "|":
            self.i += 1
            inner = self.expression(0)
            close = self.expect("|")
            return Unary("abs", inner, self.span(tok.start, close.end))
        self.fail("expected an operand" if tok.kind != "end" else "unexpected end of input", tok)

    def name(self) -> Expr:
        tok = self.tok
        self.i += 1
        word = tok.text
        if word == self.variable:
            return Variable(word, self.span(tok.start, tok.end))
        if word in CONSTANTS:
            return Constant(CONSTANTS[word], word, self.span(tok.start, tok.end))
        if word == "root":
            self.expect("(")
            n_tok = self.tok
            n_expr = self.expression(0)
            if has_variable(n_expr):
                self.fail("root index must be constant", n_tok)
            n = eval_real(n_expr, 0.0)
            if n != int(n) or n < 1:
                self.fail("root index must be a positive integer", n_tok)
            self.expect(",")
            child = self.expression(0)
            close = self.expect(")")
            return Root(int(n), child, self.span(tok.start, close.end))
        if word in FUNCTION_NAMES:
            self.expect("(")
            child = self.expression(0)
            close = self.expect(")")
            return Unary(word, child, self.span(tok.start, close.end))
        self.fail(f"unknown name {word!r}", tok)


def _respan(node: Expr, span: SourceSpan) -> Expr:
    return type(node)(**{**{f: getattr(node, f) for f in node.__dataclass_fields__}, "span": span})


def parse(text: str, variable: str = "x") -> Expr:
    """Parse ``text`` into an expression tree in the single ``variable``."""
    return _Parser(text, variable).parse()


# --------------------------------------------------------------------------
# printer


def to_text(e: Expr) -> str:
    """Canonical fully parenthesised form; ``parse(to_text(e)) == e``."""
    if isinstance(e, Constant):
        if e.name is not None:
            return e.name
        return f"({e.value!r})" if e.value < 0 or math.copysign(1, e.value) < 0 else repr(e.value)
    if isinstance(e, Variable):
        return e.name
    if isinstance(e, Unary):
        if e.op == "neg":
            return f"(-{to_text(e.child)})"
        return f"{e.op}({to_text(e.child)})"
    if isinstance(e, Root):
        return f"root({e.n}, {to_text(e.child)})"
    return f"({to_text(e.left)} {_BINARY_SYMBOL[e.op]} {to_text(e.right)})"


# --------------------------------------------------------------------------
# evaluation


def _with_span(exc: HyperlimError, node: Expr) -> HyperlimError:
    if exc.span is None and node.span is not None:
        exc.span = node.span
    return exc


def eval_hyper(e: Expr, x: Hyper) -> Hyper:
    """Evaluate ``e`` with the variable bound to the hyperreal ``x``."""
    try:
        return _eval_hyper(e, x)
    except HyperlimError as exc:
        raise _with_span(exc, e)


def _eval_hyper(e: Expr, x: Hyper) -> Hyper:
    w = x.window
    if isinstance(e, Constant):
        return from_real(e.value, w)
    if isinstance(e, Variable):
        return x
    if not has_variable(e):
        return from_real(eval_real(e, 0.0), w)
    if isinstance(e, Root):
        return nth_root(eval_hyper(e.child, x), e.n)
    if isinstance(e, Unary):
        child = eval_hyper(e.child, x)
        try:
            if e.op == "neg":
                return neg(child)
            if e.op == "abs":
                return absolute(child)
            return lift(ElementaryFn(e.op), child)
        except HyperlimError as exc:
            raise _with_span(exc, e)
    try:
        if e.op == "pow":
            return _eval_pow(e, x)
        a, b = eval_hyper(e.left, x), eval_hyper(e.right, x)
        if e.op == "add":
            return add(a, b)
        if e.op == "sub":
            return sub(a, b)
        if e.op == "mul":
            return mul(a, b)
        return div(a, b)
    except HyperlimError as exc:
        raise _with_span(exc, e)


def _eval_pow(e: Binary, x: Hyper) -> Hyper:
    if has_variable(e.left):
        base = eval_hyper(e.left, x)
        q = eval_real(e.right, 0.0)
        if float(q).is_integer():
            return int_pow(base, int(q))
        return real_pow(base, q)
    c = eval_real(e.left, 0.0)
    if c <= 0:
        raise DomainError("a variable exponent needs a positive constant base")
    exponent = eval_hyper(e.right, x)
    return lift(EXP, mul(exponent, lift(LN, from_real(c, x.window))))


def eval_real(e: Expr, x: float) -> float:
    """Plain floating point evaluation at ``x``."""
    if isinstance(e, Constant):
        return e.value
    if isinstance(e, Variable):
        return float(x)
    try:
        if isinstance(e, Root):
            return _real_root(eval_real(e.child, x), e.n)
        if isinstance(e, Unary):
            v = eval_real(e.child, x)
            if e.op == "neg":
                return -v
            return ElementaryFn(e.op).real(v)
        a, b = eval_real(e.left, x), eval_real(e.right, x)
        if e.op == "add":
            return a + b
        if e.op == "sub":
            return a - b
        if e.op == "mul":
            return a * b
        if e.op == "div":
            if b == 0:
                raise DivisionByZero("division by zero")
            return a / b
        return _real_pow(a, b)
    except HyperlimError as exc:
        raise _with_span(exc, e)


def _real_root(v: float, n: int) -> float:
    if v < 0:
        if n % 2 == 0:
            raise DomainError("even root of a negative number")
        return -((-v) ** (1.0 / n))
    return v ** (1.0 / n)


def _real_pow(a: float, b: float) -> float:
    if float(b).is_integer() and math.isfinite(b):
        if a == 0 and b < 0:
            raise DivisionByZero("zero to a negative power")
        try:
            return a ** int(b)
        except OverflowError:
            return math.copysign(math.inf, a) if int(b) % 2 else math.inf
    if a < 0:
        raise DomainError("non-integer power of a negative number")
    if a == 0 and b < 0:
        raise DivisionByZero("zero to a negative power")
    try:
        return math.pow(a, b)
    except OverflowError:
        return math.inf


__all__ = [
    "Binary",
    "Constant",
    "Expr",
    "Root",
    "SourceSpan",
    "Unary",
    "Variable",
    "eval_hyper",
    "eval_real",
    "has_variable",
    "parse",
    "to_text",
]
