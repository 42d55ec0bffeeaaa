"""Homographies of the projective line over Q or a rational function field."""

from __future__ import annotations

from fractions import Fraction
from itertools import count
from math import gcd, lcm
from typing import Iterator, Sequence

from .algebra.gcd import _gcd_list, exact_divide
from .algebra.parse import ParseError, parse_expr
from .algebra.poly import MultiPoly
from .algebra.ratfunc import QQ, Field, FieldElem, FunctionField, RatFunc, field_of

__all__ = [
    "ProjPoint1", "Homography", "INF", "INFINITY", "apply", "is_involution_h",
    "through_three_points", "through_three_points_linear", "cross_ratio",
    "harmonic_conjugate", "two_involution_factorization", "parse_homography",
    "candidate_points", "HomographyError",
]


class HomographyError(ValueError):
    pass


class _Infinity:
    """Value of a cross ratio whose denominator vanishes."""

    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "INFINITY"

    __str__ = __repr__


INFINITY = _Infinity()


def _div(x, y):
    """Exact quotient; integer arguments give a Fraction, never a float."""
    if isinstance(x, int) and isinstance(y, int):
        q = Fraction(x, y)
        return q.numerator if q.denominator == 1 else q
    q = x / y
    if isinstance(q, Fraction) and q.denominator == 1:
        return q.numerator
    return q


class ProjPoint1:
    """A point ``(x : y)`` of the projective line, stored as ``(v : 1)`` or ``(1 : 0)``."""

    __slots__ = ("x", "y")

    def __init__(self, x, y=1):
        if not x and not y:
            raise HomographyError("(0:0) is not a point")
        if not y:
            self.x, self.y = x * 0 + 1, y
        elif y == 1:
            self.x, self.y = x, y
        else:
            self.x, self.y = _div(x, y), y * 0 + 1

    @property
    def is_infinity(self) -> bool:
        return not self.y

    def __eq__(self, other):
        if not isinstance(other, ProjPoint1):
            return NotImplemented
        return self.x * other.y == other.x * self.y

    def __hash__(self):
        return hash((self.x, self.y))

    def __str__(self):
        return "inf" if self.is_infinity else str(self.x)

    def __repr__(self):
        return f"ProjPoint1({self})"


INF = ProjPoint1(1, 0)


def _bracket(p: ProjPoint1, q: ProjPoint1):
    return p.x * q.y - q.x * p.y


def _canon_entries(entries: Sequence, field: Field) -> tuple:
    """Scale a nonzero 2x2 matrix to its primitive integral representative."""
    if field.is_rational:
        vals = [Fraction(e) for e in entries]
        den = 1
        for v in vals:
            den = lcm(den, v.denominator)
        ints = [int(v * den) for v in vals]
        g = 0
        for v in ints:
            g = gcd(g, v)
        first = next(v for v in ints if v)
        if first < 0:
            g = -g
        return tuple(v // g for v in ints)
    rats = [field(e) for e in entries]
    common = MultiPoly.one(field.nvars)
    for r in rats:
        if not r.den.is_constant():
            common = _lcm(common, r.den)
    polys = [r.num * exact_divide(common, r.den) for r in rats]
    nz = [p for p in polys if not p.is_zero()]
    g = _gcd_list(nz)
    if not g.is_constant():
        polys = [exact_divide(p, g) for p in polys]
    num, den = 0, 1
    for p in polys:
        for v in p.terms.values():
            if type(v) is int:
                num = gcd(num, v)
            else:
                num = gcd(num, v.numerator)
                den = lcm(den, v.denominator)
    scale = Fraction(den, num)
    if next(p for p in polys if not p.is_zero()).leading_coefficient() < 0:
        scale = -scale
    return tuple(RatFunc.from_poly(p.scale(scale)) for p in polys)


def _lcm(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    from .algebra.gcd import _gcd
    return exact_divide(a * b, _gcd(a, b))


class Homography:
    """An element of PGL(2, K) stored as the primitive matrix ``[[a, b], [c, d]]``.

    It acts on the line as ``z -> (a*z + b) / (c*z + d)``.
    """

    __slots__ = ("a", "b", "c", "d", "field")

    def __init__(self, a, b, c, d, field: Field | None = None):
        if field is None:
            field = field_of(a, b, c, d)
        ents = [field(x) for x in (a, b, c, d)]
        if not (ents[0] * ents[3] - ents[1] * ents[2]):
            raise HomographyError("singular matrix")
        self.a, self.b, self.c, self.d = _canon_entries(ents, field)
        self.field = field

    @classmethod
    def from_matrix(cls, m: Sequence[Sequence], field: Field | None = None) -> "Homography":
        (a, b), (c, d) = m
        return cls(a, b, c, d, field)

    @classmethod
    def identity(cls, field: Field = QQ) -> "Homography":
        return cls(1, 0, 0, 1, field)

    @property
    def matrix(self) -> tuple[tuple, tuple]:
        return ((self.a, self.b), (self.c, self.d))

    def det(self):
        return self.a * self.d - self.b * self.c

    def trace(self):
        return self.a + self.d

    def in_field(self, field: Field) -> "Homography":
        if field == self.field:
            return self
        return Homography(self.a, self.b, self.c, self.d, field)

    def __call__(self, p):
        return apply(self, p)

    def __mul__(self, other: "Homography") -> "Homography":
        """Composition: ``(self * other)(p) == self(other(p))``."""
        if not isinstance(other, Homography):
            return NotImplemented
        f = _common_field(self.field, other.field)
        a, b, c, d = (f(x) for x in (self.a, self.b, self.c, self.d))
        e, g, h, k = (f(x) for x in (other.a, other.b, other.c, other.d))
        return Homography(a * e + b * h, a * g + b * k, c * e + d * h, c * g + d * k, f)

    def inverse(self) -> "Homography":
        return Homography(self.d, -self.b, -self.c, self.a, self.field)

    def is_identity(self) -> bool:
        return not self.b and not self.c and self.a == self.d

    def square_is_scalar(self) -> bool:
        """Matrix-square test: ``M^2`` is a multiple of the identity."""
        a, b, c, d = self.a, self.b, self.c, self.d
        return not (a * b + b * d) and not (c * a + d * c) and (a * a + b * c) == (c * b + d * d)

    def __eq__(self, other):
        if not isinstance(other, Homography):
            return NotImplemented
        return (self.a, self.b, self.c, self.d) == (other.a, other.b, other.c, other.d)

    def __hash__(self):
        return hash((self.a, self.b, self.c, self.d))

    def __str__(self):
        return format_homography(self)

    def __repr__(self):
        return f"Homography([[{self.a}, {self.b}], [{self.c}, {self.d}]])"


def _common_field(f: Field, g: Field) -> Field:
    if f == g:
        return f
    if f.is_rational:
        return g
    if g.is_rational:
        return f
    if f.nvars != g.nvars:
        raise HomographyError(f"incompatible fields {f} and {g}")
    return FunctionField(f.nvars, sorted(set(f.variables) | set(g.variables)))


def _as_poly(x, nvars: int) -> MultiPoly:
    if isinstance(x, RatFunc):
        return x.as_poly()
    return MultiPoly.const(x, nvars)


def format_homography(h: Homography) -> str:
    """Text form ``(a*z0+b)/(c*z0+d)`` with polynomial coefficients expanded."""
    nv = h.field.nvars or 1
    z0 = MultiPoly.var(0, nv)
    num = _as_poly(h.a, nv) * z0 + _as_poly(h.b, nv)
    den = _as_poly(h.c, nv) * z0 + _as_poly(h.d, nv)
    return f"({num})/({den})"


def parse_homography(text: str) -> Homography:
    """Parse ``(a*z0+b)/(c*z0+d)``; coefficients may involve ``z1, z2, ...``."""
    from .algebra.parse import max_var_index
    nvars = max(max_var_index(text) + 1, 1)
    try:
        r = parse_expr(text, nvars)
    except ZeroDivisionError as exc:
        raise ParseError(str(exc)) from None
    if r.num.degree_in(0) > 1 or r.den.degree_in(0) > 1:
        raise ParseError(f"{text!r} is not a homography in z0")
    nc, dc = r.num.coeffs_in(0), r.den.coeffs_in(0)
    zero = MultiPoly.zero(nvars)
    a, b = nc.get(1, zero), nc.get(0, zero)
    c, d = dc.get(1, zero), dc.get(0, zero)
    if nvars == 1:
        field = QQ
        vals = [p.constant_value() if not p.is_zero() else 0 for p in (a, b, c, d)]
    else:
        field = FunctionField(nvars, range(1, nvars))
        vals = [RatFunc.from_poly(p) for p in (a, b, c, d)]
    try:
        return Homography(*vals, field=field)
    except HomographyError as exc:
        raise ParseError(f"{text!r}: {exc}") from None


def point(v, field: Field = QQ) -> ProjPoint1:
    return ProjPoint1(field(v), field(1))


def apply(nu: Homography, p: ProjPoint1) -> ProjPoint1:
    """Matrix-vector action on homogeneous coordinates."""
    return ProjPoint1(nu.a * p.x + nu.b * p.y, nu.c * p.x + nu.d * p.y)


def is_involution_h(nu: Homography) -> bool:
    """Identity or trace zero."""
    return nu.is_identity() or not nu.trace()


def candidate_points(field: Field = QQ) -> Iterator[ProjPoint1]:
    """The fixed scan order: inf, 0, 1, -1, 2, -2, 3, ..."""
    yield ProjPoint1(field(1), field(0))
    yield point(0, field)
    for k in count(1):
        yield point(k, field)
        yield point(-k, field)


def _distinct(*pts: ProjPoint1) -> bool:
    return all(pts[i] != pts[j] for i in range(len(pts)) for j in range(i + 1, len(pts)))


def _frame(p1: ProjPoint1, p2: ProjPoint1, p3: ProjPoint1, field: Field):
    """Matrix sending inf, 0, 1 to p1, p2, p3 (columns scaled by Cramer's rule)."""
    det12 = _bracket(p1, p2)
    l1 = _div(_bracket(p3, p2), det12)
    l2 = _div(_bracket(p1, p3), det12)
    return [[field(l1 * p1.x), field(l2 * p2.x)], [field(l1 * p1.y), field(l2 * p2.y)]]


def through_three_points(p1, p2, p3, q1, q2, q3) -> Homography:
    """The unique homography with ``p_i -> q_i``, built from two frame matrices."""
    if not _distinct(p1, p2, p3):
        raise HomographyError("source points must be pairwise distinct")
    if not _distinct(q1, q2, q3):
        raise HomographyError("target points must be pairwise distinct")
    field = field_of(p1.x, p1.y, p2.x, p2.y, p3.x, p3.y, q1.x, q1.y, q2.x, q2.y, q3.x, q3.y)
    ap = _frame(p1, p2, p3, field)
    aq = _frame(q1, q2, q3, field)
    # adjugate of ap stands in for its inverse projectively
    adj = [[ap[1][1], -ap[0][1]], [-ap[1][0], ap[0][0]]]
    m = [[sum(aq[i][k] * adj[k][j] for k in range(2)) for j in range(2)] for i in range(2)]
    return Homography.from_matrix(m, field)


def through_three_points_linear(p1, p2, p3, q1, q2, q3) -> Homography:
    """Same homography via the nullspace of the cross-multiplied 3x4 linear system."""
    if not _distinct(p1, p2, p3) or not _distinct(q1, q2, q3):
        raise HomographyError("points must be pairwise distinct")
    field = field_of(p1.x, p1.y, p2.x, p2.y, p3.x, p3.y, q1.x, q1.y, q2.x, q2.y, q3.x, q3.y)
    rows = []
    for p, q in ((p1, q1), (p2, q2), (p3, q3)):
        # (a x + b y) qy - (c x + d y) qx = 0
        rows.append([field(v) for v in (p.x * q.y, p.y * q.y, -p.x * q.x, -p.y * q.x)])
    return Homography(*_nullvector(rows, field), field=field)


def _nullvector(rows: list[list], field: Field) -> list:
    """A nonzero solution of a rank-3 homogeneous system in 4 unknowns."""
    m = [list(r) for r in rows]
    ncols = 4
    pivots = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][col]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = _div(1, m[r][col])
        m[r] = [field(x * inv) for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][col]:
                f = m[i][col]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
    free = [c for c in range(ncols) if c not in pivots]
    if len(free) != 1:
        raise HomographyError("interpolation system is degenerate")
    fc = free[0]
    sol = [field(0)] * ncols
    sol[fc] = field(1)
    for i, pc in enumerate(pivots):
        sol[pc] = -m[i][fc]
    return sol


def cross_ratio(p1, p2, p3, p4):
    """``[1,3][2,4] / ([1,4][2,3])`` with ``[p,q] = x_p y_q - x_q y_p``.

    Normalized so that ``cross_ratio(inf, 0, 1, t) == t``; returns
    :data:`INFINITY` when only the denominator vanishes.
    """
    num = _bracket(p1, p3) * _bracket(p2, p4)
    den = _bracket(p1, p4) * _bracket(p2, p3)
    if not den:
        if not num:
            raise HomographyError("cross ratio undefined for this configuration")
        return INFINITY
    return _div(num, den)


def harmonic_conjugate(m: ProjPoint1, q: ProjPoint1, r: ProjPoint1) -> ProjPoint1:
    """The point ``h`` with ``cross_ratio(m, h, q, r) == -1``."""
    if not _distinct(m, q, r):
        raise HomographyError("harmonic conjugate needs three distinct points")
    mq, mr = _bracket(m, q), _bracket(m, r)
    return ProjPoint1(mq * r.x + mr * q.x, mq * r.y + mr * q.y)


def two_involution_factorization(nu: Homography) -> list[Homography]:
    """Write ``nu`` as at most two involutions, listed in application order.

    For a non-involution the result ``[i1, i2]`` satisfies ``nu == i2 * i1``.
    """
    if nu.is_identity():
        return []
    if is_involution_h(nu):
        return [nu]
    field = nu.field
    cands = candidate_points(field)
    a = next(p for p in cands if apply(nu, p) != p)
    na = apply(nu, a)
    if apply(nu, na) == a:
        # nu swaps two points, hence it is an involution after all
        return [nu]
    b = next(p for p in candidate_points(field) if p != a and p != na and apply(nu, p) != p)
    nb = apply(nu, b)
    c = next(p for p in candidate_points(field) if p != a and p != b)
    i1 = through_three_points(a, b, na, nb, na, b)
    i2 = through_three_points(na, nb, apply(i1, c), nb, na, apply(nu, c))
    return [i1, i2]
