"""Multivariate polynomial gcd over Q by recursive primitive remainder sequences.

The driver peels off cheap structure before falling back to the recursive
algorithm: monomial content, variables present in only one argument,
homogeneity (one variable can be dehomogenized away) and a univariate image
that certifies coprimality in the common case.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable

from .poly import MultiPoly, _norm

__all__ = ["poly_gcd", "poly_gcd_many", "exact_divide", "divides", "content_in", "lcm_poly"]


def exact_divide(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    """Quotient ``a / b``; raises ``ArithmeticError`` when ``b`` does not divide ``a``."""
    q = _try_divide(a, b)
    if q is None:
        raise ArithmeticError(f"{b} does not divide {a}")
    return q


def divides(b: MultiPoly, a: MultiPoly) -> bool:
    return _try_divide(a, b) is not None


def _try_divide(a: MultiPoly, b: MultiPoly) -> MultiPoly | None:
    if b.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    n = a.nvars
    if a.is_zero():
        return MultiPoly.zero(n)
    if len(b) == 1:
        (mb, cb), = b.terms.items()
        out = {}
        inv = Fraction(1) / cb if type(cb) is int else 1 / cb
        for e, c in a.terms.items():
            q = tuple([x - y for x, y in zip(e, mb)])
            if min(q) < 0:
                return None
            out[q] = _norm(c * inv)
        return MultiPoly._make(n, out)
    bl = b.leading_monomial()
    bc = b.terms[bl]
    binv = Fraction(1) / bc
    if a.total_degree() < b.total_degree():
        return None
    rem = dict(a.terms)
    quot: dict = {}
    bterms = list(b.terms.items())
    key = lambda e: (sum(e), e)
    while rem:
        lm = max(rem, key=key)
        q = tuple([x - y for x, y in zip(lm, bl)])
        if min(q) < 0:
            return None
        c = _norm(rem[lm] * binv)
        quot[q] = c
        for e, v in bterms:
            e2 = tuple([x + y for x, y in zip(e, q)])
            s = rem.get(e2, 0) - c * v
            if s:
                rem[e2] = _norm(s)
            else:
                rem.pop(e2, None)
    return MultiPoly._make(n, quot)


# -- univariate helpers -----------------------------------------------------

def _to_dense(p: MultiPoly, v: int) -> list:
    """Coefficient list (low to high) of ``p``, which only involves ``z_v``."""
    d = p.degree_in(v)
    out = [0] * (d + 1)
    for e, c in p.terms.items():
        out[e[v]] = c
    return out


def _from_dense(coeffs: list, v: int, nvars: int) -> MultiPoly:
    out = {}
    for k, c in enumerate(coeffs):
        if c:
            e = [0] * nvars
            e[v] = k
            out[tuple(e)] = _norm(c)
    return MultiPoly._make(nvars, out)


def _dense_primitive(a: list) -> list:
    """Integer primitive part of a dense coefficient list (trailing zeros stripped)."""
    a = list(a)
    while a and not a[-1]:
        a.pop()
    den = 1
    for c in a:
        den = den * Fraction(c).denominator // gcd(den, Fraction(c).denominator)
    ints = [int(Fraction(c) * den) for c in a]
    g = 0
    for c in ints:
        g = gcd(g, c)
    return [c // g for c in ints] if g else ints


def _dense_prem(a: list, b: list) -> list:
    """Pseudo-remainder of integer lists, kept primitive after every step."""
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    while len(a) - 1 >= db and a:
        la, shift = a[-1], len(a) - 1 - db
        a = [lb * x for x in a]
        for i, bc in enumerate(b):
            a[shift + i] -= la * bc
        a = _dense_primitive(a)
    return a


def _dense_gcd(a: list, b: list) -> list:
    # primitive remainder sequence: integer coefficients stay small
    a, b = _dense_primitive(a), _dense_primitive(b)
    while b:
        a, b = b, _dense_prem(a, b)
    lead = a[-1]
    return [Fraction(c, lead) for c in a]


def _univariate_gcd(p: MultiPoly, q: MultiPoly, v: int) -> MultiPoly:
    g = _dense_gcd(_to_dense(p, v), _to_dense(q, v))
    return _from_dense(g, v, p.nvars)


# -- content helpers --------------------------------------------------------

def _coeffs_over(p: MultiPoly, vs: Iterable[int]) -> list[MultiPoly]:
    """Coefficients of ``p`` viewed as a polynomial in the variables ``vs``."""
    vs = tuple(vs)
    groups: dict = {}
    for e, c in p.terms.items():
        key = tuple(e[i] for i in vs)
        e2 = list(e)
        for i in vs:
            e2[i] = 0
        groups.setdefault(key, {})[tuple(e2)] = c
    return [MultiPoly._make(p.nvars, t) for t in groups.values()]


def content_in(p: MultiPoly, v: int) -> MultiPoly:
    """Gcd of the coefficients of ``p`` as a polynomial in ``z_v``."""
    return _gcd_list(list(p.coeffs_in(v).values()))


def _gcd_list(polys: list[MultiPoly]) -> MultiPoly:
    polys = sorted((q for q in polys if not q.is_zero()), key=len)
    if not polys:
        raise ValueError("gcd of an empty or all-zero list")
    g = polys[0]
    for q in polys[1:]:
        if g.is_constant():
            break
        g = _gcd(g, q)
    return g


# -- main recursion ---------------------------------------------------------

def _gcd(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    """A gcd of nonzero ``p`` and ``q``, determined up to a rational scalar."""
    n = p.nvars
    if p.is_constant() or q.is_constant():
        return MultiPoly.one(n)
    mp, mq = p.monomial_content(), q.monomial_content()
    m = tuple(min(a, b) for a, b in zip(mp, mq))
    if any(mp):
        p = p.div_monomial(mp)
    if any(mq):
        q = q.div_monomial(mq)
    g = _gcd_stripped(p, q)
    return g.mul_monomial(m) if any(m) else g


def _gcd_stripped(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    n = p.nvars
    if p.is_constant() or q.is_constant():
        return MultiPoly.one(n)
    if p == q:
        return p
    vp, vq = p.variables(), q.variables()
    common = vp & vq
    if not common:
        return MultiPoly.one(n)
    if _images_coprime(p, q, common):
        return MultiPoly.one(n)
    only_p, only_q = vp - common, vq - common
    if only_p:
        p = _gcd_list(_coeffs_over(p, sorted(only_p)))
    if only_q:
        q = _gcd_list(_coeffs_over(q, sorted(only_q)))
    if only_p or only_q:
        return _gcd(p, q)
    if len(common) == 1:
        return _univariate_gcd(p, q, next(iter(common)))
    if p.is_homogeneous() and q.is_homogeneous():
        return _gcd_homogeneous(p, q, common)
    return _gcd_recursive(p, q, common)


def _gcd_homogeneous(p: MultiPoly, q: MultiPoly, common: frozenset[int]) -> MultiPoly:
    # neither input is divisible by any variable, so dehomogenizing at w loses nothing
    w = max(common, key=lambda i: (p.degree_in(i) + q.degree_in(i), i))
    g = _gcd(p.subs({w: 1}), q.subs({w: 1}))
    d = g.total_degree()
    out = {}
    for e, c in g.terms.items():
        e2 = list(e)
        e2[w] = d - sum(e)
        out[tuple(e2)] = c
    return MultiPoly._make(p.nvars, out)


_EVAL_POINTS = (3, -2, 5, 7, -4, 11, 2, -3, 13, 6, -5, 17, 4, -7, 19, 8)


def _image_coprime(p: MultiPoly, q: MultiPoly, v: int, others: list[int]) -> bool:
    """True when a univariate image proves that the primitive parts share no factor."""
    point = {i: _EVAL_POINTS[k % len(_EVAL_POINTS)] + k // len(_EVAL_POINTS) for k, i in enumerate(others)}
    dp, dq = p.degree_in(v), q.degree_in(v)
    if p.coeffs_in(v)[dp].subs(point).is_zero() or q.coeffs_in(v)[dq].subs(point).is_zero():
        return False
    g = _univariate_gcd(p.subs(point), q.subs(point), v)
    return g.is_constant()


def _images_coprime(p: MultiPoly, q: MultiPoly, common: frozenset[int]) -> bool:
    """True when univariate images prove ``gcd(p, q)`` constant.

    If the leading coefficients in ``z_v`` survive the specialization of the
    other variables, the degree of the image gcd bounds the degree in ``z_v``
    of the true gcd from above.  A gcd of degree zero in every common
    variable is a constant.
    """
    n = p.nvars
    for v in sorted(common):
        others = [i for i in range(n) if i != v]
        dp, dq = p.degree_in(v), q.degree_in(v)
        lp, lq = p.coeffs_in(v)[dp], q.coeffs_in(v)[dq]
        for shift in range(3):
            point = {i: _EVAL_POINTS[(k + shift) % len(_EVAL_POINTS)] for k, i in enumerate(others)}
            if not lp.subs(point).is_zero() and not lq.subs(point).is_zero():
                break
        else:
            return False
        if not _univariate_gcd(p.subs(point), q.subs(point), v).is_constant():
            return False
    return True


def _prem(a: MultiPoly, b: MultiPoly, v: int) -> MultiPoly:
    """Pseudo-remainder of ``a`` by ``b`` with respect to ``z_v``."""
    db = b.degree_in(v)
    lcb = b.coeffs_in(v)[db]
    e = [0] * a.nvars
    while not a.is_zero():
        da = a.degree_in(v)
        if da < db:
            break
        lca = a.coeffs_in(v)[da]
        e[v] = da - db
        a = a * lcb - (lca * b).mul_monomial(tuple(e))
    return a


def _gcd_recursive(p: MultiPoly, q: MultiPoly, common: frozenset[int]) -> MultiPoly:
    v = min(common, key=lambda i: (max(p.degree_in(i), q.degree_in(i)), i))
    others = sorted(common - {v})
    cp, cq = content_in(p, v), content_in(q, v)
    if not cp.is_constant():
        p = exact_divide(p, cp)
    if not cq.is_constant():
        q = exact_divide(q, cq)
    c = _gcd(cp, cq)
    if _image_coprime(p, q, v, others):
        return c
    a, b = (p, q) if p.degree_in(v) >= q.degree_in(v) else (q, p)
    while True:
        r = _prem(a, b, v)
        if r.is_zero():
            g = b
            break
        if r.degree_in(v) <= 0:
            g = MultiPoly.one(p.nvars)
            break
        cr = content_in(r, v)
        r = exact_divide(r, cr) if not cr.is_constant() else r
        a, b = b, r
    cg = content_in(g, v)
    if not cg.is_constant():
        g = exact_divide(g, cg)
    return g * c


def poly_gcd(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    """Greatest common divisor in canonical form.

    >>> from cremona.algebra.parse import parse_poly
    >>> str(poly_gcd(parse_poly("z0^2-z1^2"), parse_poly("z0^2+2*z0*z1+z1^2")))
    'z0+z1'
    """
    if p.nvars != q.nvars:
        raise ValueError(f"variable count mismatch: {p.nvars} vs {q.nvars}")
    if p.is_zero():
        return q.canonical()
    if q.is_zero():
        return p.canonical()
    return _gcd(p, q).canonical()


def poly_gcd_many(polys: Iterable[MultiPoly]) -> MultiPoly:
    """Canonical gcd of a collection; zeros are ignored, all-zero gives zero."""
    polys = list(polys)
    if not polys:
        raise ValueError("gcd of an empty collection")
    nz = [q for q in polys if not q.is_zero()]
    if not nz:
        return MultiPoly.zero(polys[0].nvars)
    return _gcd_list(nz).canonical()


def lcm_poly(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    """Canonical least common multiple of two nonzero polynomials."""
    g = poly_gcd(p, q)
    return exact_divide(p * q, g).canonical()
