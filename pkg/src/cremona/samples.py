"""Seeded pseudo-random inputs for property checks.

Every generator takes a ``random.Random`` so runs are reproducible from a seed.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .algebra.poly import MultiPoly
from .algebra.ratfunc import QQ, FunctionField, RatFunc
from .homography import Homography
from .linear import mat_det, mat_mul

__all__ = [
    "rng", "random_int_matrix", "random_homography", "random_poly", "random_poly_homography",
    "random_jonquieres2", "random_henon", "random_reduced_word", "random_glnz",
]


def rng(seed: int | None) -> random.Random:
    return random.Random(seed)


def _nonzero(r: random.Random, h: int) -> int:
    v = 0
    while not v:
        v = r.randint(-h, h)
    return v


def random_int_matrix(r: random.Random, size: int = 2, height: int = 20,
                      trace_zero_rate: float = 0.0) -> list[list[int]]:
    """Nonsingular integer matrix; with probability ``trace_zero_rate`` (2 x 2 only) of trace zero."""
    while True:
        m = [[r.randint(-height, height) for _ in range(size)] for _ in range(size)]
        if size == 2 and r.random() < trace_zero_rate:
            m[1][1] = -m[0][0]
        if mat_det(m):
            return m


def random_homography(r: random.Random, height: int = 20) -> Homography:
    return Homography.from_matrix(random_int_matrix(r, 2, height), QQ)


def random_poly(r: random.Random, nvars: int, variables, max_degree: int = 3,
                terms: int = 3, height: int = 5) -> MultiPoly:
    """Sum of up to ``terms`` random monomials in ``variables``."""
    variables = list(variables)
    out = MultiPoly.zero(nvars)
    for _ in range(r.randint(1, terms)):
        d = r.randint(0, max_degree)
        e = [0] * nvars
        for _ in range(d):
            if variables:
                e[r.choice(variables)] += 1
        out = out + MultiPoly.monomial(e, r.randint(-height, height))
    return out


def random_poly_homography(r: random.Random, nvars: int, variables, max_degree: int = 3) -> Homography:
    """Element of PGL(2, Q[variables]) with polynomial entries, acting on ``z0``."""
    field = FunctionField(nvars, variables)
    while True:
        ents = [RatFunc.from_poly(random_poly(r, nvars, variables, max_degree)) for _ in range(4)]
        if r.random() < 0.3:
            # keep some triangular and diagonal shapes in the mix
            ents[2] = RatFunc.const(0, nvars)
            if r.random() < 0.5:
                ents[1] = RatFunc.const(0, nvars)
        if ents[0] * ents[3] - ents[1] * ents[2]:
            return Homography(*ents, field=field)


def random_jonquieres2(r: random.Random, max_degree: int = 3):
    from .factorizers.jonquieres import Jonquieres2
    return Jonquieres2(random_poly_homography(r, 2, (1,), max_degree), random_homography(r, 10))


def random_henon(r: random.Random, delta=None, min_degree: int = 2, max_degree: int = 5):
    """``(z1, P(z1) - delta z0)`` with ``min_degree <= deg P <= max_degree``."""
    from .factorizers.polyaut import PolyAut
    d = r.randint(min_degree, max_degree)
    p = random_poly(r, 2, (1,), d - 1, terms=3) + MultiPoly.monomial((0, d), _nonzero(r, 5))
    if delta is None:
        delta = Fraction(_nonzero(r, 5), r.randint(1, 3))
    return PolyAut((MultiPoly.var(1, 2), p - MultiPoly.var(0, 2) * delta))


def _affine(r: random.Random, n: int, shape) -> tuple[list[MultiPoly], list[list[int]]]:
    """Affine components; ``shape[i][j]`` says whether ``z_j`` may occur in component i."""
    while True:
        m = [[r.randint(-3, 3) if shape[i][j] else 0 for j in range(n)] for i in range(n)]
        if mat_det(m):
            break
    return [sum((MultiPoly.var(j, n) * m[i][j] for j in range(n)),
                MultiPoly.const(r.randint(-3, 3), n)) for i in range(n)], m


def random_reduced_word(r: random.Random, regime: str = "AE", max_length: int = 4,
                        max_degree: int = 3):
    """A reduced word in the A/E regime (n = 2) or the H1/H2 regime (n = 3)."""
    from .factorizers.polyaut import PolyAut, ReducedWord
    tags = ("A", "E") if regime == "AE" else ("H1", "H2")
    n = 2 if regime == "AE" else 3
    length = r.randint(1, max_length)
    first = r.randrange(2)
    out = []
    for k in range(length):
        tag = tags[(first + k) % 2]
        if tag == "A":
            while True:
                comps, m = _affine(r, 2, [[1, 1], [1, 1]])
                if m[1][0]:
                    break
        elif tag == "H2":
            while True:
                comps, m = _affine(r, 3, [[1, 1, 0], [1, 1, 1], [0, 1, 1]])
                if m[1][0]:
                    break
        else:
            d = r.randint(2, max_degree)
            p = random_poly(r, n, (1,), d - 1) + MultiPoly.monomial([0, d] + [0] * (n - 2), _nonzero(r, 3))
            c0 = MultiPoly.var(0, n) * _nonzero(r, 3) + p
            if tag == "E":
                c1 = MultiPoly.var(1, 2) * _nonzero(r, 3) + MultiPoly.const(r.randint(-3, 3), 2)
                comps = [c0, c1]
            else:
                tail, _ = _affine(r, 3, [[1, 0, 0], [0, 1, 1], [0, 1, 1]])
                comps = [c0] + tail[1:]
        out.append((tag, PolyAut(tuple(comps))))
    return ReducedWord(tuple(out))


def random_glnz(r: random.Random, n: int, steps: int | None = None, height: int = 2) -> list[list[int]]:
    """Random unimodular integer matrix from elementary operations and sign flips."""
    m = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(steps if steps is not None else 2 * n):
        i, j = r.sample(range(n), 2)
        e = [[int(a == b) for b in range(n)] for a in range(n)]
        e[i][j] = _nonzero(r, height)
        m = mat_mul(e, m)
    if r.random() < 0.5:
        k = r.randrange(n)
        m[k] = [-x for x in m[k]]
    return [[int(x) for x in row] for row in m]
