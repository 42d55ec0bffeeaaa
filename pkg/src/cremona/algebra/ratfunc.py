"""Rational functions and the two kinds of coefficient field used downstream.

Elements of Q are plain ``int``/``Fraction`` values.  Elements of a function
field ``Q(z_i, ...)`` are :class:`RatFunc` values over the ambient variable
count of the field, so the ordinary Python operators work uniformly for both.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .gcd import _gcd, exact_divide
from .poly import MultiPoly, coerce_coeff, format_poly

__all__ = ["RatFunc", "ratfunc_normalize", "QQ", "FunctionField", "Field", "FieldElem"]


class RatFunc:
    """Quotient ``num/den`` of polynomials in lowest terms.

    The denominator is kept canonical (integer-coprime, positive leading
    coefficient), which makes the representation unique.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if isinstance(num, RatFunc) and den is None:
            self.num, self.den = num.num, num.den
            return
        if not isinstance(num, MultiPoly):
            raise TypeError("RatFunc numerator must be a MultiPoly")
        if den is None:
            den = MultiPoly.one(num.nvars)
        n, d = _normalize(num, den)
        self.num, self.den = n, d

    @classmethod
    def _raw(cls, num: MultiPoly, den: MultiPoly) -> "RatFunc":
        r = object.__new__(cls)
        r.num, r.den = num, den
        return r

    @classmethod
    def from_poly(cls, p: MultiPoly) -> "RatFunc":
        return cls._raw(p, MultiPoly.one(p.nvars))

    @classmethod
    def const(cls, c, nvars: int) -> "RatFunc":
        return cls._raw(MultiPoly.const(c, nvars), MultiPoly.one(nvars))

    @property
    def nvars(self) -> int:
        return self.num.nvars

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def constant_value(self) -> Fraction | int:
        if not self.is_constant():
            raise ValueError("rational function is not constant")
        v = Fraction(self.num.constant_value()) / self.den.constant_value()
        return v.numerator if v.denominator == 1 else v

    def as_poly(self) -> MultiPoly:
        if not self.den.is_constant():
            raise ValueError(f"{self} is not a polynomial")
        return self.num / self.den.constant_value()

    def _coerce(self, other) -> "RatFunc":
        if isinstance(other, RatFunc):
            if other.nvars != self.nvars:
                raise ValueError(
                    f"function fields differ: {self.nvars} vs {other.nvars} variables")
            return other
        if isinstance(other, MultiPoly):
            if other.nvars != self.nvars:
                raise ValueError(
                    f"function fields differ: {self.nvars} vs {other.nvars} variables")
            return RatFunc.from_poly(other)
        return RatFunc.const(coerce_coeff(other), self.nvars)

    def __add__(self, other):
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        if o.num.is_zero():
            return self
        if self.num.is_zero():
            return o
        if self.den == o.den:
            return RatFunc(self.num + o.num, self.den)
        if self.den.is_constant() and o.den.is_constant():
            return RatFunc(self.num.scale(o.den.constant_value()) + o.num.scale(self.den.constant_value()),
                           self.den * o.den)
        g = _gcd(self.den, o.den)
        d1 = exact_divide(self.den, g)
        d2 = exact_divide(o.den, g)
        return RatFunc(self.num * d2 + o.num * d1, self.den * d2)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc._raw(-self.num, self.den)

    def __sub__(self, other):
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, (RatFunc, MultiPoly)):
            try:
                c = coerce_coeff(other)
            except TypeError:
                return NotImplemented
            if not c:
                return RatFunc.const(0, self.nvars)
            return RatFunc._raw(self.num.scale(c), self.den)
        o = self._coerce(other)
        if self.num.is_zero() or o.num.is_zero():
            return RatFunc.const(0, self.nvars)
        a, b, c, d = self.num, self.den, o.num, o.den
        if not (b.is_constant() and c.is_constant()):
            g = _gcd(c, b)
            if not g.is_constant():
                c, b = exact_divide(c, g), exact_divide(b, g)
        if not (a.is_constant() and d.is_constant()):
            g = _gcd(a, d)
            if not g.is_constant():
                a, d = exact_divide(a, g), exact_divide(d, g)
        return _canon_den(a * c, b * d)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero rational function")
        return _canon_den(self.den, self.num)

    def __truediv__(self, other):
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        return RatFunc._raw(self.num ** k, self.den ** k)

    def __eq__(self, other):
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        if self.num == o.num and self.den == o.den:
            return True
        return self.num * o.den == o.num * self.den

    def __hash__(self):
        return hash((self.num, self.den))

    def subs(self, values) -> "RatFunc":
        num, den = self.num.subs(values), self.den.subs(values)
        if den.is_zero():
            raise ZeroDivisionError("denominator vanishes under substitution")
        return RatFunc(num, den)

    def __str__(self):
        if self.den.is_constant() and self.den.constant_value() == 1:
            return format_poly(self.num)
        n = format_poly(self.num)
        d = format_poly(self.den)
        if len(self.num) > 1:
            n = f"({n})"
        if len(self.den) > 1 or not self.den.is_constant() and "*" in d:
            d = f"({d})"
        return f"{n}/{d}"

    def __repr__(self):
        return f"RatFunc({self})"


def _canon_den(num: MultiPoly, den: MultiPoly) -> RatFunc:
    if den.is_zero():
        raise ZeroDivisionError("zero denominator")
    if num.is_zero():
        return RatFunc.const(0, num.nvars)
    cd = den.canonical()
    scale = Fraction(den.leading_coefficient()) / cd.leading_coefficient()
    if scale != 1:
        num = num.scale(1 / scale)
    return RatFunc._raw(num, cd)


def _normalize(num: MultiPoly, den: MultiPoly) -> tuple[MultiPoly, MultiPoly]:
    if num.nvars != den.nvars:
        raise ValueError(f"variable count mismatch: {num.nvars} vs {den.nvars}")
    if den.is_zero():
        raise ZeroDivisionError("zero denominator")
    if num.is_zero():
        return num, MultiPoly.one(num.nvars)
    if not den.is_constant():
        g = _gcd(num, den)
        if not g.is_constant():
            num, den = exact_divide(num, g), exact_divide(den, g)
    r = _canon_den(num, den)
    return r.num, r.den


def ratfunc_normalize(num: MultiPoly, den: MultiPoly) -> RatFunc:
    """Reduce ``num/den`` to lowest terms with a canonical denominator."""
    return RatFunc(num, den)


FieldElem = Union[int, Fraction, RatFunc]


@dataclass(frozen=True)
class Field:
    """Coefficient field: Q when ``nvars`` is None, else Q(z_i : i in variables)."""

    nvars: int | None = None
    variables: tuple[int, ...] = ()

    @property
    def is_rational(self) -> bool:
        return self.nvars is None

    def __call__(self, x) -> FieldElem:
        if self.nvars is None:
            if isinstance(x, RatFunc):
                if not x.is_constant():
                    raise ValueError(f"{x} is not a rational number")
                return x.constant_value()
            if isinstance(x, MultiPoly):
                return coerce_coeff(x.constant_value())
            return coerce_coeff(x)
        if isinstance(x, RatFunc):
            if x.nvars != self.nvars:
                raise ValueError(
                    f"element over {x.nvars} variables used in a field over {self.nvars}")
            return x
        if isinstance(x, MultiPoly):
            if x.nvars != self.nvars:
                raise ValueError(
                    f"element over {x.nvars} variables used in a field over {self.nvars}")
            return RatFunc.from_poly(x)
        return RatFunc.const(coerce_coeff(x), self.nvars)

    def zero(self) -> FieldElem:
        return self(0)

    def one(self) -> FieldElem:
        return self(1)

    def var(self, i: int) -> RatFunc:
        if self.nvars is None:
            raise ValueError("Q has no variables")
        return RatFunc.from_poly(MultiPoly.var(i, self.nvars))

    def contains(self, x) -> bool:
        if self.nvars is None:
            return isinstance(x, (int, Fraction)) or (isinstance(x, RatFunc) and x.is_constant())
        if isinstance(x, RatFunc):
            return x.nvars == self.nvars and (
                (x.num.variables() | x.den.variables()) <= set(self.variables))
        return isinstance(x, (int, Fraction))

    def __str__(self):
        if self.nvars is None:
            return "QQ"
        return "QQ(" + ",".join(f"z{i}" for i in self.variables) + ")"


QQ = Field()


def FunctionField(nvars: int, variables=None) -> Field:
    """``Q(z_i : i in variables)`` with elements stored over ``nvars`` ambient variables."""
    if variables is None:
        variables = range(nvars)
    return Field(nvars, tuple(sorted(variables)))


def is_zero(x: FieldElem) -> bool:
    return not x


def field_of(*elems) -> Field:
    """Smallest field (Q or an ambient function field) holding all ``elems``."""
    nv = None
    for x in elems:
        if isinstance(x, RatFunc):
            if nv is not None and nv != x.nvars:
                raise ValueError("elements of different function fields")
            nv = x.nvars
    return QQ if nv is None else FunctionField(nv)
