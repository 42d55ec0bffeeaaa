"""Rational self-maps of projective space as tuples of homogeneous polynomials."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

from .algebra.gcd import _gcd_list, exact_divide, lcm_poly
from .algebra.parse import ParseError, parse_tuple
from .algebra.poly import MultiPoly, _norm, format_poly, homogeneous_degree, substitute
from .algebra.ratfunc import RatFunc

__all__ = [
    "MapError", "InhomogeneousError", "DegreeMismatchError", "ZeroMapError",
    "DegenerateCompositionError", "ProjMap", "AffineMap", "InvolutionCheck", "parse_map",
    "parse_affine", "simplify", "compose", "compose_all", "degree", "proj_equal",
    "is_involution_map", "check_involution", "standard_involution", "identity",
    "to_affine_chart", "from_affine_chart", "conjugate", "linear_map", "matrix_of_linear",
    "is_linear",
]


class MapError(ValueError):
    """Base class for invalid map data."""


class InhomogeneousError(MapError):
    pass


class DegreeMismatchError(MapError):
    pass


class ZeroMapError(MapError):
    pass


class DegenerateCompositionError(MapError):
    """The inner map lands in the indeterminacy locus of the outer one."""


class ProjMap:
    """A rational map of P^n given by coprime homogeneous components.

    Instances are always simplified and in canonical scalar form, so two maps
    are projectively equal exactly when their components are identical.

    >>> str(parse_map("(2*z0*z2:2*z1*z2:2*z2^2)"))
    '(z0:z1:z2)'
    """

    __slots__ = ("components", "_degree", "_hash")

    def __init__(self, components: Sequence[MultiPoly]):
        s = simplify(components)
        self.components = s.components
        self._degree = s._degree
        self._hash = None

    @classmethod
    def _trusted(cls, comps: tuple[MultiPoly, ...], deg: int) -> "ProjMap":
        m = object.__new__(cls)
        m.components = comps
        m._degree = deg
        m._hash = None
        return m

    @property
    def n(self) -> int:
        return len(self.components) - 1

    @property
    def degree(self) -> int:
        return self._degree

    def __call__(self, other: "ProjMap") -> "ProjMap":
        return compose(self, other)

    def __matmul__(self, other: "ProjMap") -> "ProjMap":
        return compose(self, other)

    def is_identity(self) -> bool:
        return self._degree == 1 and all(
            c == MultiPoly.var(i, self.n + 1) for i, c in enumerate(self.components))

    def __eq__(self, other):
        if not isinstance(other, ProjMap):
            return NotImplemented
        return self.components == other.components

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.components)
        return self._hash

    def __str__(self):
        return "(" + ":".join(format_poly(c) for c in self.components) + ")"

    def __repr__(self):
        return f"ProjMap{self}"


def _canonical_scalar(comps: list[MultiPoly]) -> list[MultiPoly]:
    num, den = 0, 1
    for c in comps:
        for v in c.terms.values():
            if type(v) is int:
                num = gcd(num, v)
            else:
                num = gcd(num, v.numerator)
                den = lcm(den, v.denominator)
    scale = Fraction(den, num)
    first = next(c for c in comps if not c.is_zero())
    if first.leading_coefficient() < 0:
        scale = -scale
    if scale == 1:
        return comps
    return [c.scale(scale) for c in comps]


def simplify(components: Sequence[MultiPoly]) -> ProjMap:
    """Divide out the common factor of the components and fix the scalar."""
    comps = list(components)
    if len(comps) < 2:
        raise MapError("a map of P^n needs at least two components")
    nv = len(comps)
    if any(not isinstance(c, MultiPoly) for c in comps):
        raise TypeError("components must be MultiPoly")
    if any(c.nvars != nv for c in comps):
        raise MapError(f"components must be polynomials in z0..z{nv - 1}")
    nonzero = [c for c in comps if not c.is_zero()]
    if not nonzero:
        raise ZeroMapError("all components are zero")
    degs = set()
    for c in nonzero:
        d = homogeneous_degree(c)
        if d is None:
            raise InhomogeneousError(f"component {c} is not homogeneous")
        degs.add(d)
    if len(degs) > 1:
        raise DegreeMismatchError(f"components have different degrees {sorted(degs)}")
    deg = degs.pop()
    mono = list(nonzero[0].monomial_content())
    for c in nonzero[1:]:
        for i, x in enumerate(c.monomial_content()):
            if x < mono[i]:
                mono[i] = x
    if any(mono):
        m = tuple(mono)
        comps = [c.div_monomial(m) if not c.is_zero() else c for c in comps]
        deg -= sum(m)
        nonzero = [c for c in comps if not c.is_zero()]
    if deg > 0 and len(nonzero) > 1:
        g = _gcd_list(nonzero)
        if not g.is_constant():
            comps = [exact_divide(c, g) for c in comps]
            deg -= g.total_degree()
    elif deg > 0:
        # a single nonzero component: the map is constant, keep the bare form
        comps = [MultiPoly.one(nv) if not c.is_zero() else c for c in comps]
        deg = 0
    comps = _canonical_scalar(comps)
    return ProjMap._trusted(tuple(comps), deg)


def parse_map(text: str) -> ProjMap:
    """Parse ``(e0:e1:...:en)`` with variables ``z0..zn``.

    >>> parse_map("(z1*z2:z0*z2:z0*z1)").degree
    2
    """
    ncomp = len(_components_text(text))
    try:
        parts = parse_tuple(text, ":", nvars=ncomp)
    except ParseError:
        raise
    except ZeroDivisionError as exc:
        raise ParseError(str(exc)) from None
    polys = []
    for p in parts:
        if not p.is_polynomial():
            raise ParseError(f"map component {p} is not a polynomial")
        polys.append(p.as_poly())
    return simplify(polys)


def _components_text(text: str) -> list[str]:
    from .algebra.parse import _strip_outer, split_top_level
    return split_top_level(_strip_outer(text, "(", ")"), ":")


def compose(phi: ProjMap, psi: ProjMap) -> ProjMap:
    """``phi`` after ``psi``: substitute the components of ``psi`` into ``phi``."""
    if phi.n != psi.n:
        raise MapError(f"dimension mismatch: P^{phi.n} vs P^{psi.n}")
    if psi.is_identity():
        return phi
    if phi.is_identity():
        return psi
    comps = [substitute(c, psi.components) for c in phi.components]
    if all(c.is_zero() for c in comps):
        raise DegenerateCompositionError(f"{psi} lands in the indeterminacy locus of {phi}")
    return simplify(comps)


def compose_all(maps_in_application_order: Sequence[ProjMap], n: int | None = None) -> ProjMap:
    """Compose a sequence whose first element is applied first."""
    maps = list(maps_in_application_order)
    if not maps:
        if n is None:
            raise MapError("empty composition needs an explicit dimension")
        return identity(n)
    acc = maps[0]
    for m in maps[1:]:
        acc = compose(m, acc)
    return acc


def degree(phi: ProjMap) -> int:
    return phi.degree


def proj_equal(phi: ProjMap, psi: ProjMap) -> bool:
    """Equality up to a nonzero scalar, by vanishing of all cross products."""
    if phi.n != psi.n:
        raise MapError(f"dimension mismatch: P^{phi.n} vs P^{psi.n}")
    if phi.components == psi.components:
        return True
    if phi.degree != psi.degree:
        return False
    a, b = phi.components, psi.components
    for i in range(len(a)):
        for j in range(i + 1, len(a)):
            if a[i] * b[j] != a[j] * b[i]:
                return False
    return True


def identity(n: int) -> ProjMap:
    if n < 1:
        raise MapError("dimension must be at least 1")
    return ProjMap._trusted(tuple(MultiPoly.var(i, n + 1) for i in range(n + 1)), 1)


def standard_involution(n: int) -> ProjMap:
    """The map whose i-th component is the product of all coordinates but ``z_i``."""
    if n < 1:
        raise MapError("the standard involution needs n >= 1")
    comps = []
    for i in range(n + 1):
        e = [1] * (n + 1)
        e[i] = 0
        comps.append(MultiPoly.monomial(e))
    return ProjMap._trusted(tuple(comps), n)


@dataclass(frozen=True)
class InvolutionCheck:
    is_involution: bool
    trivial: bool = False
    diagnostic: str = ""

    def __bool__(self):
        return self.is_involution


def check_involution(phi: ProjMap) -> InvolutionCheck:
    """Self-composition test; the identity passes with ``trivial`` set."""
    if phi.is_identity():
        return InvolutionCheck(True, trivial=True)
    try:
        sq = compose(phi, phi)
    except DegenerateCompositionError as exc:
        return InvolutionCheck(False, diagnostic=str(exc))
    return InvolutionCheck(sq.is_identity())


def is_involution_map(phi: ProjMap) -> bool:
    return check_involution(phi).is_involution


def conjugate(psi: ProjMap, psi_inv: ProjMap, phi: ProjMap) -> ProjMap:
    """``psi o phi o psi_inv`` after checking that ``psi_inv`` is a two-sided inverse."""
    if not (compose(psi, psi_inv).is_identity() and compose(psi_inv, psi).is_identity()):
        raise MapError(f"{psi_inv} is not an inverse of {psi}")
    return compose(psi, compose(phi, psi_inv))


# -- linear maps ------------------------------------------------------------

def linear_map(matrix: Sequence[Sequence]) -> ProjMap:
    """The map ``z -> M z`` for a square matrix with rational entries."""
    n1 = len(matrix)
    comps = []
    for row in matrix:
        if len(row) != n1:
            raise MapError("matrix is not square")
        t = {}
        for j, a in enumerate(row):
            if isinstance(a, RatFunc):
                a = a.constant_value()
            if a:
                e = [0] * n1
                e[j] = 1
                t[tuple(e)] = a
        comps.append(MultiPoly(n1, t))
    return simplify(comps)


def is_linear(phi: ProjMap) -> bool:
    return phi.degree == 1


def matrix_of_linear(phi: ProjMap) -> list[list]:
    """Coefficient matrix of a degree-one map in its canonical scalar form."""
    if phi.degree != 1:
        raise MapError(f"{phi} is not linear")
    n1 = phi.n + 1
    rows = []
    for c in phi.components:
        row = [0] * n1
        for e, v in c.terms.items():
            row[e.index(1)] = v
        rows.append(row)
    return rows


# -- affine charts ----------------------------------------------------------

class AffineMap:
    """A rational map of affine n-space, components rational in ``z0..z{n-1}``."""

    __slots__ = ("components",)

    def __init__(self, components: Sequence[RatFunc | MultiPoly]):
        comps = []
        for c in components:
            if isinstance(c, MultiPoly):
                c = RatFunc.from_poly(c)
            comps.append(c)
        n = len(comps)
        if n < 1:
            raise MapError("affine map needs at least one component")
        if any(c.nvars != n for c in comps):
            raise MapError(f"components must be rational functions of z0..z{n - 1}")
        self.components = tuple(comps)

    @property
    def n(self) -> int:
        return len(self.components)

    def is_polynomial(self) -> bool:
        return all(c.is_polynomial() for c in self.components)

    def polys(self) -> list[MultiPoly]:
        return [c.as_poly() for c in self.components]

    def compose(self, other: "AffineMap") -> "AffineMap":
        """``self`` after ``other``."""
        return AffineMap([_ratsubst(c, other.components) for c in self.components])

    def __eq__(self, other):
        if not isinstance(other, AffineMap):
            return NotImplemented
        return self.components == other.components

    def __hash__(self):
        return hash(self.components)

    def __str__(self):
        return "(" + ", ".join(str(c) for c in self.components) + ")"

    def __repr__(self):
        return f"AffineMap{self}"


def _ratsubst(r: RatFunc, images: Sequence[RatFunc]) -> RatFunc:
    """Substitute rational images into a rational function."""
    if all(im.is_polynomial() for im in images):
        polys = [im.as_poly() for im in images]
        return RatFunc(substitute(r.num, polys), substitute(r.den, polys))
    return _eval_rat(r.num, images) / _eval_rat(r.den, images)


def _eval_rat(p: MultiPoly, images: Sequence[RatFunc]) -> RatFunc:
    # Horner-free expansion with a shared power cache
    nv = images[0].nvars
    acc = RatFunc.const(0, nv)
    cache: dict = {}
    for e, c in p.terms.items():
        t = RatFunc.const(c, nv)
        for i, k in enumerate(e):
            if k:
                key = (i, k)
                if key not in cache:
                    cache[key] = images[i] ** k
                t = t * cache[key]
        acc = acc + t
    return acc


def parse_affine(text: str) -> AffineMap:
    """Parse ``(e0, e1, ...)`` with variables ``z0..z{n-1}``."""
    from .algebra.parse import _strip_outer, split_top_level
    n = len(split_top_level(_strip_outer(text, "(", ")"), ","))
    try:
        parts = parse_tuple(text, ",", nvars=n)
    except ZeroDivisionError as exc:
        raise ParseError(str(exc)) from None
    return AffineMap(parts)


def _chart_images(n: int, k: int) -> list[MultiPoly]:
    """Images of projective variables when restricting to the chart ``z_k = 1``."""
    out = []
    for p in range(n + 1):
        if p == k:
            out.append(MultiPoly.one(n))
        else:
            out.append(MultiPoly.var(p if p < k else p - 1, n))
    return out


def to_affine_chart(phi: ProjMap, k: int) -> AffineMap:
    """Restrict ``phi`` to the chart ``z_k = 1`` and divide by the ``k``-th component."""
    n = phi.n
    if not 0 <= k <= n:
        raise MapError(f"chart index {k} out of range 0..{n}")
    if phi.components[k].is_zero():
        raise MapError(f"component {k} of {phi} is identically zero")
    imgs = _chart_images(n, k)
    den = substitute(phi.components[k], imgs)
    comps = [RatFunc(substitute(c, imgs), den) for i, c in enumerate(phi.components) if i != k]
    return AffineMap(comps)


def _homogenize(p: MultiPoly, n: int, k: int) -> tuple[MultiPoly, int]:
    d = p.total_degree()
    idx = [j if j < k else j + 1 for j in range(n)]
    out = {}
    for e, c in p.terms.items():
        e2 = [0] * (n + 1)
        for j, x in enumerate(e):
            e2[idx[j]] = x
        e2[k] = d - sum(e)
        out[tuple(e2)] = c
    return MultiPoly._make(n + 1, out), d


def from_affine_chart(psi: AffineMap, k: int) -> ProjMap:
    """Homogenize an affine map, viewing it in the chart ``z_k = 1`` of P^n."""
    n = psi.n
    if not 0 <= k <= n:
        raise MapError(f"chart index {k} out of range 0..{n}")
    zk = [0] * (n + 1)
    fracs = []
    for c in psi.components:
        if c.den.is_zero():
            raise MapError("zero denominator")
        num, a = _homogenize(c.num, n, k)
        den, b = _homogenize(c.den, n, k)
        if b > a:
            zk[k] = b - a
            num = num.mul_monomial(tuple(zk))
        elif a > b:
            zk[k] = a - b
            den = den.mul_monomial(tuple(zk))
        fracs.append((num, den))
    one = MultiPoly.one(n + 1)
    fracs.insert(k, (one, one))
    common = one
    for _, den in fracs:
        if not den.is_constant():
            common = lcm_poly(common, den)
    comps = [num * exact_divide(common, den) for num, den in fracs]
    return simplify(comps)


def chart_polys(phi: ProjMap, k: int) -> list[MultiPoly]:
    """Affine polynomial components in the chart ``z_k = 1``; errors if not polynomial."""
    a = to_affine_chart(phi, k)
    if not a.is_polynomial():
        raise MapError(f"{phi} is not polynomial in the chart z{k}=1")
    return a.polys()
