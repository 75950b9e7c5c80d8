"""Expression language for analytic functions of one complex variable ``z``.

Grammar (loosest first)::

    expr    := expr ('+'|'-') term | term
    term    := term ('*'|'/') unary | unary
    unary   := '-' unary | '+' unary | power
    power   := atom ['^' unary]              # right-associative, binds tighter than '-'
    atom    := number | 'i' | 'z' | 'pi' | name | call '(' expr ')' | '(' expr ')'

Numbers may carry an ``i`` suffix (``2i``, ``1.5e-3i``).  ``**`` is accepted
as a synonym for ``^``.  Names other than ``z``, ``i``, ``pi`` and the calls
``log``, ``exp``, ``sqrt`` are parameters and must be bound when parsing.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from ..errors import FormulaSyntaxError, NonConstantExponent

CALLS = ("log", "exp", "sqrt")


class Node:
    __slots__ = ()

    def has_z(self) -> bool:
        raise NotImplementedError


@dataclass(frozen=True)
class Var(Node):
    def has_z(self):
        return True


@dataclass(frozen=True)
class Const(Node):
    value: complex

    def has_z(self):
        return False


@dataclass(frozen=True)
class Neg(Node):
    operand: Node

    def has_z(self):
        return self.operand.has_z()


@dataclass(frozen=True)
class BinOp(Node):
    op: str
    left: Node
    right: Node

    def has_z(self):
        return self.left.has_z() or self.right.has_z()


@dataclass(frozen=True)
class Call(Node):
    name: str
    arg: Node

    def has_z(self):
        return self.arg.has_z()


_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?i?)
  | (?P<name>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>\*\*|[-+*/^()])
    """,
    re.VERBOSE,
)

_BINARY = {"+": (1, "left"), "-": (1, "left"), "*": (2, "left"), "/": (2, "left")}


@dataclass
class _Tok:
    kind: str
    text: str
    offset: int


def tokenize(text: str):
    pos = 0
    toks = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise FormulaSyntaxError(f"unexpected character {text[pos]!r}", pos, text)
        kind = m.lastgroup
        if kind != "ws":
            tok = m.group()
            toks.append(_Tok(kind, "^" if tok == "**" else tok, pos))
        pos = m.end()
    toks.append(_Tok("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text, params):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0
        self.params = params

    @property
    def cur(self):
        return self.toks[self.i]

    def advance(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, text):
        if self.cur.text != text:
            found = "end of input" if self.cur.kind == "end" else repr(self.cur.text)
            raise FormulaSyntaxError(f"expected {text!r}, found {found}", self.cur.offset, self.text)
        return self.advance()

    def parse(self):
        node = self.expr(1)
        if self.cur.kind != "end":
            raise FormulaSyntaxError(f"unexpected {self.cur.text!r}", self.cur.offset, self.text)
        return node

    def expr(self, min_prec):
        lhs = self.unary()
        while self.cur.kind == "op" and self.cur.text in _BINARY:
            prec, _ = _BINARY[self.cur.text]
            if prec < min_prec:
                break
            op = self.advance().text
            rhs = self.expr(prec + 1)
            lhs = BinOp(op, lhs, rhs)
        return lhs

    def unary(self):
        if self.cur.text == "-":
            self.advance()
            return Neg(self.unary())
        if self.cur.text == "+":
            self.advance()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.cur.text == "^":
            tok = self.advance()
            exponent = self.unary()
            if exponent.has_z():
                raise NonConstantExponent("exponent must not depend on z", tok.offset, self.text)
            return BinOp("^", base, exponent)
        return base

    def atom(self):
        tok = self.cur
        if tok.kind == "num":
            self.advance()
            if tok.text.endswith("i"):
                return Const(complex(0, float(tok.text[:-1])))
            return Const(complex(float(tok.text)))
        if tok.kind == "name":
            self.advance()
            name = tok.text
            if name in CALLS:
                self.expect("(")
                arg = self.expr(1)
                self.expect(")")
                return Call(name, arg)
            if name == "z":
                return Var()
            if name == "i":
                return Const(1j)
            if name == "pi":
                return Const(complex(3.141592653589793))
            if name in self.params:
                return Const(complex(self.params[name]))
            raise FormulaSyntaxError(f"unknown name {name!r}", tok.offset, self.text)
        if tok.text == "(":
            self.advance()
            node = self.expr(1)
            self.expect(")")
            return node
        found = "end of input" if tok.kind == "end" else repr(tok.text)
        raise FormulaSyntaxError(f"expected an operand, found {found}", tok.offset, self.text)


def parse(formula: str, params=None) -> Node:
    """Parse ``formula`` into an immutable AST, binding named parameters."""
    return _Parser(formula, dict(params or {})).parse()


def _fmt_const(c: complex) -> str:
    c = complex(c)
    if c.imag == 0:
        return repr(c.real)
    if c.real == 0:
        return f"{c.imag!r}i"
    return f"({c.real!r}{'+' if c.imag >= 0 else '-'}{abs(c.imag)!r}i)"


def to_text(node: Node) -> str:
    """Pretty-print with enough parentheses to re-parse to an equivalent tree."""
    if isinstance(node, Var):
        return "z"
    if isinstance(node, Const):
        text = _fmt_const(node.value)
        return f"({text})" if text.startswith("-") else text
    if isinstance(node, Neg):
        return f"(-{to_text(node.operand)})"
    if isinstance(node, Call):
        return f"{node.name}({to_text(node.arg)})"
    return f"({to_text(node.left)}{node.op}{to_text(node.right)})"
