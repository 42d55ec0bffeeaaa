"""Sparse multivariate polynomials with exact rational coefficients.

A :class:`MultiPoly` lives in ``Q[z0, ..., z{k-1}]`` and stores a mapping from
exponent tuples to nonzero coefficients.  Coefficients are kept as ``int``
whenever they are integral and as :class:`fractions.Fraction` otherwise, which
keeps the common integer-only workloads fast.

Values are immutable; every operation returns a new polynomial.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence, Union

MAX_VARS = 16

Coeff = Union[int, Fraction]
Monomial = tuple[int, ...]


def coerce_coeff(c) -> Coeff:
    """Return ``c`` as an exact coefficient (``int`` or ``Fraction``)."""
    if type(c) is int:
        return c
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, bool):
        return int(c)
    if isinstance(c, int):
        return int(c)
    raise TypeError(f"inexact or unsupported coefficient {c!r}")


def _norm(c):
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


def grlex_key(e: Monomial):
    """Sort key: larger key means larger monomial in graded-lex order."""
    return (sum(e), e)


class ZeroPolynomial:
    """Marker returned by :func:`homogeneous_degree` for the zero polynomial."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "ZERO_POLYNOMIAL"

    def __bool__(self):
        return False


ZERO_POLYNOMIAL = ZeroPolynomial()


class MultiPoly:
    """Polynomial in ``nvars`` variables over Q.

    >>> z0, z1 = MultiPoly.var(0, 2), MultiPoly.var(1, 2)
    >>> str((z0 + z1) ** 2)
    'z0^2+2*z0*z1+z1^2'
    """

    __slots__ = ("nvars", "_terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[Sequence[int], object] | None = None):
        if not 0 <= nvars <= MAX_VARS:
            raise ValueError(f"variable count must be in 0..{MAX_VARS}, got {nvars}")
        clean: dict[Monomial, Coeff] = {}
        for e, c in (terms or {}).items():
            e = tuple(int(x) for x in e)
            if len(e) != nvars:
                raise ValueError(f"exponent {e} has length {len(e)}, expected {nvars}")
            if any(x < 0 for x in e):
                raise ValueError(f"negative exponent in {e}")
            c = coerce_coeff(c)
            if c:
                clean[e] = _norm(clean.get(e, 0) + c)
                if not clean[e]:
                    del clean[e]
        self.nvars = nvars
        self._terms = clean
        self._hash = None

    @classmethod
    def _make(cls, nvars: int, terms: dict) -> "MultiPoly":
        # trusted constructor: terms already normalized with no zero coefficients
        p = object.__new__(cls)
        p.nvars = nvars
        p._terms = terms
        p._hash = None
        return p

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, nvars: int) -> "MultiPoly":
        return cls._make(nvars, {})

    @classmethod
    def const(cls, c, nvars: int) -> "MultiPoly":
        c = coerce_coeff(c)
        return cls._make(nvars, {(0,) * nvars: c} if c else {})

    @classmethod
    def one(cls, nvars: int) -> "MultiPoly":
        return cls.const(1, nvars)

    @classmethod
    def var(cls, i: int, nvars: int) -> "MultiPoly":
        if not 0 <= i < nvars:
            raise ValueError(f"variable z{i} out of range for {nvars} variables")
        e = [0] * nvars
        e[i] = 1
        return cls._make(nvars, {tuple(e): 1})

    @classmethod
    def monomial(cls, exps: Sequence[int], coeff=1) -> "MultiPoly":
        return cls(len(exps), {tuple(exps): coeff})

    # -- basic queries ------------------------------------------------------

    @property
    def terms(self) -> Mapping[Monomial, Coeff]:
        return MappingProxyType(self._terms)

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        if not self._terms:
            return True
        return len(self._terms) == 1 and not any(next(iter(self._terms)))

    def constant_value(self) -> Coeff:
        """Return the value of a constant polynomial (0 for the zero polynomial)."""
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return next(iter(self._terms.values()), 0)

    def constant_term(self) -> Coeff:
        return self._terms.get((0,) * self.nvars, 0)

    def total_degree(self) -> int:
        """Maximum total degree of a term; -1 for the zero polynomial."""
        return max((sum(e) for e in self._terms), default=-1)

    def degree_in(self, i: int) -> int:
        return max((e[i] for e in self._terms), default=-1)

    def variables(self) -> frozenset[int]:
        used = set()
        for e in self._terms:
            used.update(i for i, x in enumerate(e) if x)
        return frozenset(used)

    def sorted_terms(self) -> list[tuple[Monomial, Coeff]]:
        """Terms in graded-lex descending order."""
        return sorted(self._terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    def leading_monomial(self) -> Monomial:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        return max(self._terms, key=grlex_key)

    def leading_coefficient(self) -> Coeff:
        return self._terms[self.leading_monomial()] if self._terms else 0

    def monomial_content(self) -> Monomial:
        """Componentwise minimum exponent: the largest monomial dividing every term."""
        if not self._terms:
            return (0,) * self.nvars
        it = iter(self._terms)
        m = list(next(it))
        for e in it:
            for i, x in enumerate(e):
                if x < m[i]:
                    m[i] = x
        return tuple(m)

    def is_homogeneous(self) -> bool:
        degs = {sum(e) for e in self._terms}
        return len(degs) <= 1

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.nvars != self.nvars:
                raise ValueError(
                    f"variable count mismatch: {self.nvars} vs {other.nvars}")
            return other
        return MultiPoly.const(other, self.nvars)

    def __add__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        if len(other._terms) > len(self._terms):
            big, small = other._terms, self._terms
        else:
            big, small = self._terms, other._terms
        out = dict(big)
        for e, c in small.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = _norm(s)
            else:
                out.pop(e, None)
        return MultiPoly._make(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._make(self.nvars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "MultiPoly":
        c = coerce_coeff(c)
        if not c:
            return MultiPoly.zero(self.nvars)
        if c == 1:
            return self
        return MultiPoly._make(self.nvars, {e: _norm(v * c) for e, v in self._terms.items()})

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            try:
                return self.scale(other)
            except TypeError:
                return NotImplemented
        other = self._coerce(other)
        a, b = self._terms, other._terms
        if not a or not b:
            return MultiPoly.zero(self.nvars)
        if len(a) < len(b):
            a, b = b, a
        out: dict = {}
        get = out.get
        for eb, cb in b.items():
            for ea, ca in a.items():
                e = tuple([x + y for x, y in zip(ea, eb)])
                out[e] = get(e, 0) + ca * cb
        return MultiPoly._make(self.nvars, {e: _norm(c) for e, c in out.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, MultiPoly):
            if not other.is_constant() or other.is_zero():
                return NotImplemented
            other = other.constant_value()
        c = coerce_coeff(other)
        if not c:
            raise ZeroDivisionError("polynomial division by zero")
        return self.scale(Fraction(1) / c)

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = MultiPoly.one(self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def mul_monomial(self, m: Monomial, c=1) -> "MultiPoly":
        c = coerce_coeff(c)
        if not c:
            return MultiPoly.zero(self.nvars)
        return MultiPoly._make(
            self.nvars,
            {tuple([x + y for x, y in zip(e, m)]): _norm(v * c) for e, v in self._terms.items()})

    def div_monomial(self, m: Monomial) -> "MultiPoly":
        """Divide by the monomial ``z^m``; every term must be divisible."""
        out = {}
        for e, c in self._terms.items():
            q = tuple([x - y for x, y in zip(e, m)])
            if any(x < 0 for x in q):
                raise ArithmeticError("monomial does not divide polynomial")
            out[q] = c
        return MultiPoly._make(self.nvars, out)

    # -- comparison ---------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.nvars == other.nvars and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self.constant_value() == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    # -- structure ----------------------------------------------------------

    def coeffs_in(self, i: int) -> dict[int, "MultiPoly"]:
        """View as a polynomial in ``z_i``: map power -> coefficient (free of ``z_i``)."""
        parts: dict[int, dict] = {}
        for e, c in self._terms.items():
            k = e[i]
            if k:
                e = e[:i] + (0,) + e[i + 1:]
            parts.setdefault(k, {})[e] = c
        return {k: MultiPoly._make(self.nvars, t) for k, t in parts.items()}

    @classmethod
    def from_coeffs_in(cls, i: int, coeffs: Mapping[int, "MultiPoly"], nvars: int) -> "MultiPoly":
        out: dict = {}
        for k, p in coeffs.items():
            for e, c in p._terms.items():
                e2 = e[:i] + (e[i] + k,) + e[i + 1:]
                s = out.get(e2, 0) + c
                if s:
                    out[e2] = _norm(s)
                else:
                    out.pop(e2, None)
        return cls._make(nvars, out)

    def substitute(self, images: Sequence["MultiPoly"]) -> "MultiPoly":
        """Replace ``z_i`` by ``images[i]`` and expand."""
        return substitute(self, images)

    def subs(self, values: Mapping[int, object]) -> "MultiPoly":
        """Substitute constants for some variables; the variable count is kept."""
        vals = {i: coerce_coeff(v) for i, v in values.items()}
        out: dict = {}
        for e, c in self._terms.items():
            e2 = list(e)
            for i, v in vals.items():
                if e[i]:
                    c = c * v ** e[i]
                    e2[i] = 0
            if c:
                e2 = tuple(e2)
                s = out.get(e2, 0) + c
                if s:
                    out[e2] = _norm(s)
                else:
                    out.pop(e2, None)
        return MultiPoly._make(self.nvars, out)

    def remap(self, nvars: int, index_map: Sequence[int]) -> "MultiPoly":
        """Rename variables: old ``z_i`` becomes ``z_{index_map[i]}`` in ``nvars`` variables.

        Variables of ``self`` that do not occur may map anywhere; occurring
        variables must map to distinct indices.
        """
        out = {}
        for e, c in self._terms.items():
            e2 = [0] * nvars
            for i, x in enumerate(e):
                if x:
                    e2[index_map[i]] += x
            out[tuple(e2)] = c
        return MultiPoly._make(nvars, out)

    def integer_content(self) -> Fraction:
        """Positive rational c with ``self / c`` having coprime integer coefficients."""
        if not self._terms:
            return Fraction(0)
        num = 0
        den = 1
        for c in self._terms.values():
            if type(c) is int:
                num = gcd(num, c)
            else:
                num = gcd(num, c.numerator)
                den = lcm(den, c.denominator)
        return Fraction(num, den)

    def canonical(self) -> "MultiPoly":
        """Integer-coprime representative with positive graded-lex leading coefficient."""
        if not self._terms:
            return self
        c = self.integer_content()
        if self.leading_coefficient() < 0:
            c = -c
        if c == 1:
            return self
        inv = 1 / c
        return MultiPoly._make(self.nvars, {e: _norm(v * inv) for e, v in self._terms.items()})

    def is_canonical(self) -> bool:
        return self.canonical() == self

    # -- text ---------------------------------------------------------------

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"MultiPoly({self.nvars}, {format_poly(self)!r})"


def _format_coeff(c) -> str:
    if type(c) is int:
        return str(c)
    return f"{c.numerator}/{c.denominator}"


def format_monomial(e: Monomial) -> str:
    parts = []
    for i, x in enumerate(e):
        if x == 1:
            parts.append(f"z{i}")
        elif x:
            parts.append(f"z{i}^{x}")
    return "*".join(parts)


def format_poly(p: MultiPoly) -> str:
    """Canonical text: graded-lex descending terms, explicit ``*``, no spaces."""
    if p.is_zero():
        return "0"
    out = []
    for e, c in p.sorted_terms():
        mono = format_monomial(e)
        neg = c < 0
        a = -c if neg else c
        if not mono:
            body = _format_coeff(a)
        elif a == 1:
            body = mono
        else:
            body = f"{_format_coeff(a)}*{mono}"
        if out:
            out.append(("-" if neg else "+") + body)
        else:
            out.append(("-" if neg else "") + body)
    return "".join(out)


def substitute(p: MultiPoly, images: Sequence[MultiPoly]) -> MultiPoly:
    """``p`` with ``z_i`` replaced by ``images[i]``, fully expanded."""
    if len(images) != p.nvars:
        raise ValueError(f"expected {p.nvars} images, got {len(images)}")
    if not images:
        return MultiPoly.const(p.constant_term(), 0)
    m = images[0].nvars
    if any(q.nvars != m for q in images):
        raise ValueError("images must share a variable count")
    if p.is_zero():
        return MultiPoly.zero(m)
    cache: dict[tuple[int, int], MultiPoly] = {}

    def power(i: int, k: int) -> MultiPoly:
        key = (i, k)
        r = cache.get(key)
        if r is None:
            if k == 1:
                r = images[i]
            else:
                h = k // 2
                r = power(i, h) * power(i, k - h)
            cache[key] = r
        return r

    acc: dict = {}
    one = MultiPoly.one(m)
    for e, c in p._terms.items():
        t = one
        for i, k in enumerate(e):
            if k:
                t = t * power(i, k)
        for e2, c2 in t._terms.items():
            acc[e2] = acc.get(e2, 0) + c * c2
    return MultiPoly._make(m, {e: _norm(c) for e, c in acc.items() if c})


def homogeneous_degree(p: MultiPoly):
    """Common total degree of all terms.

    Returns ``None`` when ``p`` is not homogeneous and the falsy marker
    :data:`ZERO_POLYNOMIAL` for the zero polynomial.
    """
    if p.is_zero():
        return ZERO_POLYNOMIAL
    degs = {sum(e) for e in p._terms}
    return degs.pop() if len(degs) == 1 else None


def variables(nvars: int) -> list[MultiPoly]:
    return [MultiPoly.var(i, nvars) for i in range(nvars)]


def poly_sum(polys: Iterable[MultiPoly], nvars: int) -> MultiPoly:
    acc = MultiPoly.zero(nvars)
    for q in polys:
        acc = acc + q
    return acc
