import random

import pytest
import sympy
from hypothesis import strategies as st

from cremona.algebra import MultiPoly, parse_poly


def P(text: str, nvars: int = 4) -> MultiPoly:
    return parse_poly(text, nvars)


def to_sympy(p: MultiPoly):
    if p.is_zero():
        return sympy.Integer(0)
    return sympy.sympify(str(p).replace("^", "**"))


def random_poly(rng: random.Random, nvars: int, degree: int, terms: int = 4, height: int = 10):
    t = {}
    for _ in range(terms):
        e = [0] * nvars
        for _ in range(rng.randint(0, degree)):
            e[rng.randrange(nvars)] += 1
        t[tuple(e)] = rng.randint(-height, height)
    return MultiPoly(nvars, t)


@st.composite
def polys(draw, nvars=3, max_degree=4, max_terms=4, height=10):
    n = draw(st.integers(1, max_terms))
    terms = {}
    for _ in range(n):
        e = tuple(draw(st.lists(st.integers(0, max_degree), min_size=nvars, max_size=nvars)))
        if sum(e) > max_degree:
            continue
        terms[e] = draw(st.integers(-height, height))
    return MultiPoly(nvars, terms)


@pytest.fixture
def rng():
    return random.Random(20240501)
