"""Polynomial automorphisms of C^n: classification, Henon factorization, reduced words.

Maps are given by their affine components in ``z0, ..., z_{n-1}``; they act
on P^n through the chart ``z_n = 1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import prod
from typing import Sequence

from ..algebra.poly import MultiPoly
from ..algebra.ratfunc import QQ, RatFunc
from ..certificate import INVOLUTION, Factor, FactorizationCertificate, make_certificate
from ..homography import Homography
from ..linear import mat_det
from ..maps import AffineMap, ProjMap, from_affine_chart, parse_affine
from .bounds import paper_bound
from .common import FactorizationError
from .jonquieres import FIBER_FIELD, Jonquieres2, factor_jonquieres2, fiber_factors

__all__ = [
    "PolyAut", "parse_polyaut", "classify_autc2", "henon_parts", "factor_henon",
    "factor_elementary_c2", "is_affine", "is_elementary", "in_h1", "in_h2",
    "in_h1_h2_normal_form", "ReducedWord", "ReducedWordError", "reduced_word_degree",
    "AFFINE", "ELEMENTARY", "HENON", "OTHER",
]

AFFINE, ELEMENTARY, HENON, OTHER = "affine", "elementary", "henon", "other"


class ReducedWordError(ValueError):
    pass


@dataclass(frozen=True)
class PolyAut:
    """A polynomial map of C^n with an optional claimed inverse."""

    components: tuple[MultiPoly, ...]
    inverse: tuple[MultiPoly, ...] | None = None

    def __post_init__(self):
        comps = tuple(self.components)
        n = len(comps)
        if n == 0 or any(c.nvars != n for c in comps):
            raise FactorizationError("components must be n polynomials in n variables")
        object.__setattr__(self, "components", comps)
        if self.inverse is not None:
            inv = tuple(self.inverse)
            object.__setattr__(self, "inverse", inv)
            ident = [MultiPoly.var(i, n) for i in range(n)]
            if len(inv) != n or [c.substitute(list(inv)) for c in comps] != ident or \
                    [c.substitute(list(comps)) for c in inv] != ident:
                raise FactorizationError("supplied inverse is not a two-sided inverse")

    @property
    def n(self) -> int:
        return len(self.components)

    @property
    def degree(self) -> int:
        return max(c.total_degree() for c in self.components)

    def __matmul__(self, other: "PolyAut") -> "PolyAut":
        """``self o other``."""
        return PolyAut(tuple(c.substitute(list(other.components)) for c in self.components))

    def linear_part(self) -> list[list]:
        n = self.n
        return [[c.terms.get(tuple(int(k == j) for k in range(n)), 0) for j in range(n)]
                for c in self.components]

    def to_affine(self) -> AffineMap:
        return AffineMap(self.components)

    def to_projmap(self) -> ProjMap:
        return from_affine_chart(self.to_affine(), self.n)

    def __str__(self):
        return "(" + ", ".join(str(c) for c in self.components) + ")"


def parse_polyaut(text: str) -> PolyAut:
    psi = parse_affine(text)
    if not psi.is_polynomial():
        raise FactorizationError(f"{text!r} is not polynomial")
    return PolyAut(tuple(psi.polys()))


def _linear(c: MultiPoly) -> bool:
    return c.total_degree() <= 1


def is_affine(phi: PolyAut) -> bool:
    return all(_linear(c) for c in phi.components) and bool(mat_det(phi.linear_part()))


def is_elementary(phi: PolyAut) -> bool:
    """Triangular: component i is ``a_i z_i + p_i(z_{i+1}, ...)`` with ``a_i != 0``."""
    for i, c in enumerate(phi.components):
        if any(v < i for v in c.variables()) or c.degree_in(i) != 1:
            return False
        lead = c.coeffs_in(i)[1]
        if not lead.is_constant():
            return False
    return True


def henon_parts(phi: PolyAut) -> tuple[Fraction | int, MultiPoly] | None:
    """``(delta, P)`` when ``phi = (z1, P(z1) - delta z0)``, else None."""
    if phi.n != 2:
        return None
    c0, c1 = phi.components
    if c0 != MultiPoly.var(1, 2) or c1.degree_in(0) != 1 or not c1.variables() <= {0, 1}:
        return None
    co = c1.coeffs_in(0)
    if not co[1].is_constant():
        return None
    return -co[1].constant_value(), co.get(0, MultiPoly.zero(2))


def classify_autc2(phi: PolyAut) -> str:
    """Syntactic tag by normal form; affine wins over elementary."""
    if phi.n != 2:
        raise FactorizationError("classification is for automorphisms of C^2")
    if is_affine(phi):
        return AFFINE
    if is_elementary(phi):
        return ELEMENTARY
    hp = henon_parts(phi)
    if hp is not None and hp[1].total_degree() >= 2:
        return HENON
    return OTHER


def _swap() -> ProjMap:
    return from_affine_chart(AffineMap([MultiPoly.var(1, 2), MultiPoly.var(0, 2)]), 2)


def factor_henon(phi: PolyAut) -> FactorizationCertificate:
    """Jacobian one: two involutions.  Otherwise the elementary part goes through the fiber route."""
    hp = henon_parts(phi)
    if hp is None:
        raise FactorizationError(f"{phi} is not a Henon map (z1, P(z1) - delta*z0)")
    delta, p = hp
    target = phi.to_projmap()
    if delta == 1:
        e = from_affine_chart(AffineMap([p - MultiPoly.var(0, 2), MultiPoly.var(1, 2)]), 2)
        return make_certificate(target, [Factor(e, INVOLUTION), Factor(_swap(), INVOLUTION)],
                                bound_class="henon_jac1", paper_bound=paper_bound("henon_jac1"))
    fiber = Homography(-delta, RatFunc.from_poly(p), 0, 1, FIBER_FIELD)
    maps = fiber_factors(fiber) + [_swap()]
    return make_certificate(target, [Factor(m, INVOLUTION) for m in maps],
                            bound_class="henon", paper_bound=paper_bound("henon"))


def factor_elementary_c2(phi: PolyAut) -> FactorizationCertificate:
    """``(alpha z0 + p(z1), beta z1 + gamma)`` as a de Jonquieres map."""
    if phi.n != 2 or not is_elementary(phi):
        raise FactorizationError(f"{phi} is not elementary")
    c0, c1 = phi.components
    co = c0.coeffs_in(0)
    alpha = co[1].constant_value()
    fiber = Homography(alpha, RatFunc.from_poly(co.get(0, MultiPoly.zero(2))), 0, 1, FIBER_FIELD)
    base = Homography(c1.terms.get((0, 1), 0), c1.constant_term(), 0, 1, QQ)
    cert = factor_jonquieres2(Jonquieres2(fiber, base))
    cert.bound_class, cert.paper_bound = "elementary_c2", paper_bound("elementary_c2")
    return cert


# -- the subgroups H1 and H2 of Aut(C^n), n >= 3 ---------------------------------

def _tail_affine(phi: PolyAut) -> bool:
    """Components 1.. are affine and free of z0 with invertible coefficient block."""
    rest = phi.components[1:]
    if not all(_linear(c) and 0 not in c.variables() for c in rest):
        return False
    return bool(mat_det([row[1:] for row in phi.linear_part()[1:]]))


def in_h1(phi: PolyAut) -> bool:
    """``(alpha z0 + p(z1), affine maps of z1.., ...)`` with ``alpha det(a) != 0``."""
    c0 = phi.components[0]
    if phi.n < 3 or not c0.variables() <= {0, 1} or c0.degree_in(0) != 1:
        return False
    co = c0.coeffs_in(0)
    return co[1].is_constant() and _tail_affine(phi)


def in_h2(phi: PolyAut) -> bool:
    """Affine, component 0 in ``z0, z1`` only, z0 allowed in component 1 only."""
    if phi.n < 3 or not all(_linear(c) for c in phi.components):
        return False
    if not phi.components[0].variables() <= {0, 1}:
        return False
    if any(0 in c.variables() for c in phi.components[2:]):
        return False
    return bool(mat_det(phi.linear_part()))


def in_h1_h2_normal_form(phi: PolyAut) -> bool:
    """``(alpha z0 + beta z1 + gamma, affine maps of z1.., ...)`` with invertible linear part."""
    if phi.n < 3 or not all(_linear(c) for c in phi.components):
        return False
    if not phi.components[0].variables() <= {0, 1}:
        return False
    if any(0 in c.variables() for c in phi.components[1:]):
        return False
    return bool(mat_det(phi.linear_part()))


# -- reduced words -------------------------------------------------------------

_GROUPS = {
    "A": (is_affine, lambda f: is_affine(f) and is_elementary(f)),
    "E": (is_elementary, lambda f: is_affine(f) and is_elementary(f)),
    "H1": (in_h1, in_h1_h2_normal_form),
    "H2": (in_h2, in_h1_h2_normal_form),
}


@dataclass(frozen=True)
class ReducedWord:
    """Tagged factors in application order: ``factors[0]`` acts first."""

    factors: tuple[tuple[str, PolyAut], ...]
    _checked: bool = field(default=False, repr=False, compare=False)

    def __post_init__(self):
        fs = tuple((t, f) for t, f in self.factors)
        object.__setattr__(self, "factors", fs)
        if not fs:
            raise ReducedWordError("empty word")
        regimes = {t in ("A", "E") for t, _ in fs}
        if len(regimes) > 1:
            raise ReducedWordError("cannot mix A/E tags with H1/H2 tags")
        n = fs[0][1].n
        for i, (tag, f) in enumerate(fs):
            if tag not in _GROUPS:
                raise ReducedWordError(f"unknown tag {tag!r}")
            if f.n != n:
                raise ReducedWordError("factors act on different dimensions")
            member, common = _GROUPS[tag]
            if not member(f):
                raise ReducedWordError(f"factor {i} {f} is not in {tag}")
            if common(f):
                raise ReducedWordError(f"factor {i} {f} lies in the common subgroup")
            if i and fs[i - 1][0] == tag:
                raise ReducedWordError(f"factors {i - 1} and {i} share the tag {tag}")

    def compose(self) -> PolyAut:
        acc = self.factors[0][1]
        for _, f in self.factors[1:]:
            acc = f @ acc
        return acc


def reduced_word_degree(w: ReducedWord | Sequence[tuple[str, PolyAut]], verify: bool = False) -> int:
    """Product of the factor degrees; with ``verify`` the word is composed and checked."""
    if not isinstance(w, ReducedWord):
        w = ReducedWord(tuple(w))
    d = prod(f.degree for _, f in w.factors)
    if verify:
        got = w.compose().degree
        if got != d:
            raise ReducedWordError(f"composed degree {got} differs from the product {d}")
    return d
