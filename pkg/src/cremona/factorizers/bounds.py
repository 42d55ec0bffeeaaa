"""Upper bounds on the number of involutions, one formula per map class."""

from __future__ import annotations

from math import ceil
from fractions import Fraction

__all__ = ["paper_bound", "BOUND_CLASSES", "BoundError"]


class BoundError(ValueError):
    pass


def _tame(n: int, d: int) -> int:
    return ceil(Fraction(d, 4) * (2 * n + 7)) + 10 * n + 32


# class tag -> (required parameters, formula)
BOUND_CLASSES: dict[str, tuple[tuple[str, ...], object]] = {
    "aut_p1n": (("n",), lambda n: 2 * n),
    "aut_pn": (("n",), lambda n: 2 * (n + 1)),
    "jonquieres_p2": ((), lambda: 10),
    "bir_p2": (("d",), lambda d: 10 * d - 2),
    "affine_c2": ((), lambda: 8),
    "elementary_c2": ((), lambda: 10),
    "henon_jac1": ((), lambda: 2),
    "henon": ((), lambda: 11),
    "autc2_prime": ((), lambda: 26),
    "autc2": (("d",), lambda d: ceil(Fraction(9 * d, 4)) + 44),
    "tame_affine": (("n",), lambda n: 2 * n + 4),
    "tame_elementary": (("n",), lambda n: 2 * n + 10),
    "tame": (("n", "d"), _tame),
    "bidegree_2l": (("l",), lambda l: 9 + 7 * l),
    "jonq_p3": (("d",), lambda d: 10 * d + 6),
    "monomial": (("n",), lambda n: 3 * n + 9),
    "jn": (("n",), lambda n: 4 * (2 * n - 1)),
    "pgl2_polyring": ((), lambda: 8),
    "pgl2_det_pm1": ((), lambda: 4),
}


def paper_bound(cls: str, **params: int) -> int:
    """Evaluate the bound for ``cls``; fractional formulas are rounded up.

    >>> paper_bound("bir_p2", d=3)
    28
    """
    if cls not in BOUND_CLASSES:
        raise BoundError(f"unknown bound class {cls!r}")
    names, formula = BOUND_CLASSES[cls]
    missing = [p for p in names if p not in params]
    if missing:
        raise BoundError(f"bound class {cls!r} needs parameter(s) {', '.join(missing)}")
    extra = set(params) - set(names)
    if extra:
        raise BoundError(f"bound class {cls!r} does not take {', '.join(sorted(extra))}")
    return int(formula(*(int(params[p]) for p in names)))
