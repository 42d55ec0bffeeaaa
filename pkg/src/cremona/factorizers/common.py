"""Helpers shared by the factorizers: homographies acting on one coordinate."""

from __future__ import annotations

from ..algebra.poly import MultiPoly
from ..algebra.ratfunc import RatFunc
from ..homography import Homography
from ..maps import AffineMap, ProjMap, from_affine_chart

__all__ = [
    "action", "coordinate_map", "lift_coordinate", "homography_in", "FactorizationError",
]


class FactorizationError(ValueError):
    """Input does not belong to the class a factorizer handles."""


def _entry(x, nvars: int) -> RatFunc:
    if isinstance(x, RatFunc):
        if x.nvars != nvars:
            raise FactorizationError(f"coefficient over {x.nvars} variables, expected {nvars}")
        return x
    return RatFunc.const(x, nvars)


def action(h: Homography, var: int, nvars: int) -> RatFunc:
    """``(a z_var + b) / (c z_var + d)`` as a rational function of ``nvars`` variables."""
    z = RatFunc.from_poly(MultiPoly.var(var, nvars))
    a, b, c, d = (_entry(x, nvars) for x in (h.a, h.b, h.c, h.d))
    return (a * z + b) / (c * z + d)


def coordinate_map(h: Homography, var: int, nvars: int) -> AffineMap:
    """Affine map acting by ``h`` on ``z_var`` and fixing the other coordinates."""
    comps = [RatFunc.from_poly(MultiPoly.var(i, nvars)) for i in range(nvars)]
    comps[var] = action(h, var, nvars)
    return AffineMap(comps)


def lift_coordinate(h: Homography, var: int, n: int) -> ProjMap:
    """The same map as a birational map of P^n, in the chart ``z_n = 1``."""
    return from_affine_chart(coordinate_map(h, var, n), n)


def homography_in(r: RatFunc, var: int, coeff_vars=()) -> Homography:
    """Read ``r`` as ``(a z_var + b) / (c z_var + d)`` with coefficients in ``coeff_vars``.

    Coefficients are polynomials in the listed variables; the field is Q when
    the list is empty.
    """
    from ..algebra.ratfunc import QQ, FunctionField
    nv = r.nvars
    allowed = set(coeff_vars) | {var}
    if not (r.num.variables() | r.den.variables()) <= allowed:
        raise FactorizationError(f"{r} involves variables outside z{var} and {sorted(coeff_vars)}")
    if r.num.degree_in(var) > 1 or r.den.degree_in(var) > 1:
        raise FactorizationError(f"{r} is not a homography in z{var}")
    zero = MultiPoly.zero(nv)
    nc, dc = r.num.coeffs_in(var), r.den.coeffs_in(var)
    ents = [nc.get(1, zero), nc.get(0, zero), dc.get(1, zero), dc.get(0, zero)]
    if not coeff_vars:
        vals = [p.constant_value() if not p.is_zero() else 0 for p in ents]
        return Homography(*vals, field=QQ)
    return Homography(*(RatFunc.from_poly(p) for p in ents), field=FunctionField(nv, coeff_vars))
