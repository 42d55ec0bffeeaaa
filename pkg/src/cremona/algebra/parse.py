"""Text grammar for polynomials, rational expressions, maps and matrices.

Expressions use the variables ``z0`` .. ``z15``, integer literals, ``+ - * / ^``
and parentheses.  ``^`` takes a non-negative integer literal and there is no
implicit multiplication, so ``2z0`` is rejected.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .poly import MAX_VARS, MultiPoly
from .ratfunc import RatFunc

__all__ = [
    "ParseError", "parse_expr", "parse_poly", "parse_tuple", "parse_matrix",
    "split_top_level", "max_var_index",
]


class ParseError(ValueError):
    """Raised for any malformed input text."""


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|z(?P<var>\d+)|(?P<op>[-+*/^()]))")


@dataclass
class _Tok:
    kind: str
    value: object
    pos: int


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r} at position {pos} in {text!r}")
        if m.group("num") is not None:
            toks.append(_Tok("num", int(m.group("num")), m.start("num")))
        elif m.group("var") is not None:
            i = int(m.group("var"))
            if i >= MAX_VARS:
                raise ParseError(f"variable z{i} out of range (z0..z{MAX_VARS - 1})")
            toks.append(_Tok("var", i, m.start("var") - 1))
        else:
            toks.append(_Tok("op", m.group("op"), m.start("op")))
        pos = m.end()
        if toks[-1].kind in ("num", "var") and pos < n and (text[pos].isalnum() or text[pos] == "_"):
            raise ParseError(f"implicit multiplication or bad identifier at position {pos} in {text!r}")
    return toks


def max_var_index(text: str) -> int:
    """Largest variable index mentioned in ``text`` (-1 when none)."""
    return max((int(m) for m in re.findall(r"z(\d+)", text)), default=-1)


class _Parser:
    def __init__(self, text: str, nvars: int):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        self.nvars = nvars

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self):
        t = self.peek()
        if t is None:
            raise ParseError(f"unexpected end of input in {self.text!r}")
        self.i += 1
        return t

    def expect(self, op):
        t = self.take()
        if t.kind != "op" or t.value != op:
            raise ParseError(f"expected {op!r} at position {t.pos} in {self.text!r}")

    def parse(self) -> RatFunc:
        if not self.toks:
            raise ParseError("empty expression")
        r = self.expr()
        t = self.peek()
        if t is not None:
            raise ParseError(f"unexpected token {t.value!r} at position {t.pos} in {self.text!r}")
        return r

    def expr(self) -> RatFunc:
        r = self.term()
        while (t := self.peek()) is not None and t.kind == "op" and t.value in "+-":
            self.i += 1
            rhs = self.term()
            r = r + rhs if t.value == "+" else r - rhs
        return r

    def term(self) -> RatFunc:
        r = self.unary()
        while (t := self.peek()) is not None and t.kind == "op" and t.value in "*/":
            self.i += 1
            rhs = self.unary()
            if t.value == "*":
                r = r * rhs
            else:
                if rhs.is_zero():
                    raise ParseError(f"division by zero at position {t.pos} in {self.text!r}")
                r = r / rhs
        return r

    def unary(self) -> RatFunc:
        t = self.peek()
        if t is not None and t.kind == "op" and t.value in "+-":
            self.i += 1
            r = self.unary()
            return -r if t.value == "-" else r
        return self.power()

    def power(self) -> RatFunc:
        base = self.atom()
        t = self.peek()
        if t is not None and t.kind == "op" and t.value == "^":
            self.i += 1
            e = self.take()
            if e.kind != "num":
                raise ParseError(f"exponent must be a non-negative integer literal at position {e.pos}")
            return base ** e.value
        return base

    def atom(self) -> RatFunc:
        t = self.take()
        if t.kind == "num":
            return RatFunc.const(t.value, self.nvars)
        if t.kind == "var":
            if t.value >= self.nvars:
                raise ParseError(f"variable z{t.value} not allowed with {self.nvars} variables")
            return RatFunc.from_poly(MultiPoly.var(t.value, self.nvars))
        if t.value == "(":
            r = self.expr()
            self.expect(")")
            return r
        raise ParseError(f"unexpected token {t.value!r} at position {t.pos} in {self.text!r}")


def parse_expr(text: str, nvars: int | None = None) -> RatFunc:
    """Parse a rational expression over ``nvars`` variables (default: as many as used)."""
    if nvars is None:
        nvars = max_var_index(text) + 1
    return _Parser(text, nvars).parse()


def parse_poly(text: str, nvars: int | None = None) -> MultiPoly:
    """Parse a polynomial; division is allowed only by nonzero constants."""
    r = parse_expr(text, nvars)
    if not r.is_polynomial():
        raise ParseError(f"{text!r} is not a polynomial")
    return r.as_poly()


def split_top_level(text: str, sep: str) -> list[str]:
    """Split on ``sep`` outside any parentheses or brackets."""
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
            if depth < 0:
                raise ParseError(f"unbalanced brackets in {text!r}")
        if ch == sep and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    if depth:
        raise ParseError(f"unbalanced brackets in {text!r}")
    parts.append("".join(cur))
    return parts


def _strip_outer(text: str, open_: str, close: str) -> str:
    s = text.strip()
    if not (s.startswith(open_) and s.endswith(close)):
        raise ParseError(f"expected {open_}...{close}, got {text!r}")
    inner = s[1:-1]
    depth = 0
    for ch in inner:
        depth += ch in "(["
        depth -= ch in ")]"
        if depth < 0:
            raise ParseError(f"expected a single bracketed tuple, got {text!r}")
    return inner


def parse_tuple(text: str, sep: str, nvars: int | None = None) -> list[RatFunc]:
    """Parse ``(e sep e sep ...)`` into rational expressions over a shared variable count."""
    inner = _strip_outer(text, "(", ")")
    parts = split_top_level(inner, sep)
    if any(not p.strip() for p in parts):
        raise ParseError(f"empty component in {text!r}")
    if nvars is None:
        nvars = max_var_index(text) + 1
    return [parse_expr(p, nvars) for p in parts]


def parse_matrix(text: str, nvars: int | None = None) -> list[list[RatFunc]]:
    """Parse ``[a,b;c,d]`` (rows split by ``;``) into a square matrix."""
    inner = _strip_outer(text, "[", "]")
    if nvars is None:
        nvars = max_var_index(text) + 1
    rows = [split_top_level(r, ",") for r in split_top_level(inner, ";")]
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ParseError(f"matrix {text!r} is not square")
    return [[parse_expr(e, nvars) for e in r] for r in rows]
