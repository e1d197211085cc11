"""Parser for polynomial expressions and session scripts.

Expressions use ``+ - * ^`` (``**`` is accepted as well), parentheses,
integer literals and division by constants, e.g. ``x^3 - 1/3*x*y^2*z^2``.

A session script looks like::

    ring Q[x,y,z]            # or: ring Fp 2[x,y,z], ring F2[x,y,z]
    poly f = x^2 + y^7 + y*z^4
    ideal I = x^2 - y^3, x*y - z^3
    order I

Blank lines and ``#`` comments are ignored; the single non-declaration line is
the command.
"""

from __future__ import annotations

import re
import shlex
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Optional

from .errors import DomainError, ParseError
from .ring import Field, Polynomial, Ring

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>\*\*|[-+*/^(),])|(?P<bad>\S))"
)


@dataclass
class _Tok:
    kind: str
    text: str
    col: int


def _tokenize(text: str, line: int, col0: int) -> list[_Tok]:
    toks: list[_Tok] = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            break
        kind = m.lastgroup
        start = m.start(kind)
        if kind == "bad":
            raise ParseError(f"unexpected character {m.group(kind)!r}", line, col0 + start + 1)
        toks.append(_Tok(kind, m.group(kind), col0 + start + 1))
        pos = m.end()
    toks.append(_Tok("end", "", col0 + len(text.rstrip()) + 1))
    return toks


class _ExprParser:
    """Recursive descent: sum := term (('+'|'-') term)*; term := unary (('*'|'/') unary)*;
    unary := '-' unary | power; power := atom ('^' integer)?"""

    def __init__(self, text: str, ring: Ring, names: Mapping[str, Polynomial], line: int, col0: int):
        self.ring = ring
        self.names = names
        self.line = line
        self.toks = _tokenize(text, line, col0)
        self.i = 0

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def take(self) -> _Tok:
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg: str, tok: Optional[_Tok] = None):
        tok = tok or self.peek()
        raise ParseError(msg, self.line, tok.col)

    def parse(self) -> Polynomial:
        value = self.sum()
        if self.peek().kind != "end":
            self.error(f"unexpected {self.peek().text!r}")
        return value

    def sum(self) -> Polynomial:
        value = self.term()
        while self.peek().text in ("+", "-"):
            op = self.take().text
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> Polynomial:
        value = self.unary()
        while self.peek().text in ("*", "/"):
            op = self.take()
            rhs = self.unary()
            if op.text == "*":
                value = value * rhs
            else:
                if not rhs.is_constant() or not rhs:
                    self.error("division is only allowed by nonzero constants", op)
                value = value / rhs.constant_coeff()
        return value

    def unary(self) -> Polynomial:
        if self.peek().text == "-":
            self.take()
            return -self.unary()
        if self.peek().text == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> Polynomial:
        base = self.atom()
        if self.peek().text in ("^", "**"):
            op = self.take()
            tok = self.peek()
            if tok.kind != "num":
                self.error("exponent must be a nonnegative integer", tok if tok.kind != "end" else op)
            self.take()
            return base ** int(tok.text)
        return base

    def atom(self) -> Polynomial:
        tok = self.take()
        if tok.kind == "num":
            return self.ring.constant(int(tok.text))
        if tok.kind == "name":
            if tok.text in self.ring.variables:
                return self.ring.gen(tok.text)
            if tok.text in self.names:
                return self.names[tok.text]
            raise ParseError(f"unknown variable {tok.text!r}", self.line, tok.col)
        if tok.text == "(":
            value = self.sum()
            if self.peek().text != ")":
                self.error("expected ')'")
            self.take()
            return value
        self.i -= 1
        self.error("expected a number, variable or '('" if tok.kind != "end" else "unexpected end of expression")


def parse_polynomial(text: str, ring: Ring, names: Mapping[str, Polynomial] | None = None,
                     line: int = 1, column: int = 1) -> Polynomial:
    return _ExprParser(text, ring, names or {}, line, column - 1).parse()


def _split_top_level(text: str) -> list[tuple[str, int]]:
    """Split on commas outside parentheses; returns (piece, offset) pairs."""
    pieces, depth, start = [], 0, 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "," and depth == 0:
            pieces.append((text[start:i], start))
            start = i + 1
    pieces.append((text[start:], start))
    return pieces


_RING = re.compile(
    r"^ring\s+(?:(?P<q>Q|QQ)|(?:Fp\s*|F|GF\s*)(?P<p>\d+))\s*\[(?P<vars>[^\]]*)\]\s*$"
)
_DECL = re.compile(r"^(?P<kind>poly|ideal)\s+(?P<name>[A-Za-z_][A-Za-z0-9_]*)\s*=(?P<body>.*)$")
_IDENT = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")


@dataclass
class SessionScript:
    ring: Ring
    polys: dict[str, Polynomial] = field(default_factory=dict)
    ideals: dict[str, list[Polynomial]] = field(default_factory=dict)
    command: list[str] = field(default_factory=list)
    command_line: int = 0
    source: str = ""


def parse_ring(text: str, line: int = 1) -> Ring:
    m = _RING.match(text.strip())
    if not m:
        raise ParseError("expected 'ring Q[v1,...]' or 'ring Fp <p>[v1,...]'", line, 1)
    fld = Field(0) if m.group("q") else Field(int(m.group("p")))
    names = [v.strip() for v in m.group("vars").split(",") if v.strip()]
    if not names:
        raise ParseError("a ring needs at least one variable", line, text.index("[") + 2)
    for v in names:
        if not _IDENT.match(v):
            raise ParseError(f"bad variable name {v!r}", line, text.index(v) + 1)
    return Ring(tuple(names), fld)


def parse_script(text: str) -> SessionScript:
    """Parse a session script; the first non-blank line must declare the ring."""
    script: Optional[SessionScript] = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        stripped = body.strip()
        if not stripped:
            continue
        indent = len(body) - len(body.lstrip())
        if script is None:
            if not stripped.startswith("ring"):
                raise ParseError("the script must start with a ring declaration", lineno, indent + 1)
            script = SessionScript(parse_ring(stripped, lineno), source=text)
            continue
        if stripped.startswith("ring ") or stripped == "ring":
            raise ParseError("only one ring declaration is allowed", lineno, indent + 1)
        m = _DECL.match(stripped)
        if m:
            name = m.group("name")
            if name in script.ring.variables:
                raise ParseError(f"{name!r} is already a variable", lineno, indent + m.start("name") + 1)
            if name in script.polys or name in script.ideals:
                raise ParseError(f"{name!r} is declared twice", lineno, indent + m.start("name") + 1)
            col = indent + m.start("body") + 1
            if m.group("kind") == "poly":
                script.polys[name] = parse_polynomial(m.group("body"), script.ring, script.polys, lineno, col)
            else:
                gens = []
                for piece, off in _split_top_level(m.group("body")):
                    if not piece.strip():
                        raise ParseError("empty ideal generator", lineno, col + off)
                    gens.append(parse_polynomial(piece, script.ring, script.polys, lineno, col + off))
                script.ideals[name] = gens
            continue
        if script.command:
            raise ParseError("only one command line is allowed", lineno, indent + 1)
        try:
            script.command = shlex.split(stripped)
        except ValueError as exc:
            raise ParseError(str(exc), lineno, indent + 1) from None
        script.command_line = lineno
    if script is None:
        raise ParseError("empty script", 1, 1)
    if not script.command:
        raise DomainError("the script has no command line")
    return script
