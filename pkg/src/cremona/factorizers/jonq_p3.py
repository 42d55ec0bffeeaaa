"""De Jonquieres maps of P^3 fixing a line pencil: ``(phi0(z0; z1, z2), psi(z1, z2))``.

The P^2 part ``psi`` must come already factored (or be a de Jonquieres map of
P^2, factored here); reducing a general plane map is not attempted.
"""

from __future__ import annotations

from typing import Sequence

from ..algebra.poly import MultiPoly
from ..algebra.ratfunc import FunctionField, RatFunc
from ..certificate import (
    INVOLUTION, LIFTED, LIFTED_LINEAR, Factor, FactorizationCertificate, make_certificate,
)
from ..homography import Homography
from ..linear import pgl2_polyring_factor
from ..maps import (
    AffineMap, ProjMap, check_involution, compose_all, from_affine_chart, identity, proj_equal,
    simplify, to_affine_chart,
)
from .bounds import paper_bound
from .common import FactorizationError, action, lift_coordinate
from .jonquieres import Jonquieres2, factor_jonquieres2

__all__ = ["lift_p2_to_p3", "unlift_p3_to_p2", "factor_jonq_p3", "FIBER_FIELD_P3"]

FIBER_FIELD_P3 = FunctionField(3, (1, 2))


def lift_p2_to_p3(psi: ProjMap) -> ProjMap:
    """``(z0 psi3 : z3 psi1 : z3 psi2 : z3 psi3)`` with ``psi`` read in ``z1, z2, z3``."""
    if psi.n != 2:
        raise FactorizationError(f"expected a map of P^2, got dimension {psi.n}")
    p1, p2, p3 = (c.remap(4, (1, 2, 3)) for c in psi.components)
    z0, z3 = MultiPoly.var(0, 4), MultiPoly.var(3, 4)
    return simplify([z0 * p3, z3 * p1, z3 * p2, z3 * p3])


def unlift_p3_to_p2(phi: ProjMap) -> ProjMap | None:
    """The plane map ``psi`` with ``lift_p2_to_p3(psi) == phi``, or None."""
    if phi.n != 3:
        return None
    rest = phi.components[1:]
    if any(0 in c.variables() for c in rest):
        return None
    psi = simplify([c.remap(3, (0, 0, 1, 2)) for c in rest])
    return psi if lift_p2_to_p3(psi) == phi else None


def _fiber3(h: Homography) -> Homography:
    f = h.field
    if f.is_rational:
        return h.in_field(FIBER_FIELD_P3)
    if not set(f.variables) <= {1, 2} or f.nvars > 3:
        raise FactorizationError(f"fiber coefficients must lie in Q(z1, z2), got {f}")
    ents = []
    for x in (h.a, h.b, h.c, h.d):
        r = x if isinstance(x, RatFunc) else RatFunc.const(x, f.nvars)
        idx = tuple(range(f.nvars))
        ents.append(RatFunc(r.num.remap(3, idx), r.den.remap(3, idx)))
    return Homography(*ents, field=FIBER_FIELD_P3)


def _assemble(phi0: Homography, psi: ProjMap) -> ProjMap:
    aff = to_affine_chart(psi, 2)
    moved = [RatFunc(r.num.remap(3, (1, 2)), r.den.remap(3, (1, 2))) for r in aff.components]
    return from_affine_chart(AffineMap([action(phi0, 0, 3)] + moved), 3)


def factor_jonq_p3(phi0: Homography, psi_factors: Sequence[ProjMap] | Jonquieres2 = (),
                   psi: ProjMap | None = None) -> FactorizationCertificate:
    """Fiber involutions first (chart ``z3 = 1``), then the lifted plane factors.

    ``psi_factors`` are in application order; when ``psi`` is given they must
    compose to it.
    """
    phi0 = _fiber3(phi0)
    if isinstance(psi_factors, Jonquieres2):
        j = psi_factors
        psi_factors = [f.map for f in factor_jonquieres2(j).factors]
        psi = psi or j.to_projmap()
    psi_factors = list(psi_factors)
    if any(f.n != 2 for f in psi_factors):
        raise FactorizationError("plane factors must be maps of P^2")
    product = compose_all(psi_factors, 2) if psi_factors else identity(2)
    if psi is None:
        psi = product
    elif not proj_equal(product, psi):
        raise FactorizationError("the plane factors do not compose to the given map")
    fs = [Factor(lift_coordinate(h, 0, 3), INVOLUTION) for h in pgl2_polyring_factor(phi0)]
    for f in psi_factors:
        if f.is_identity():
            continue
        lifted = lift_p2_to_p3(f)
        if check_involution(f).is_involution:
            fs.append(Factor(lifted, INVOLUTION))
        elif f.degree == 1:
            fs.append(Factor(lifted, LIFTED, LIFTED_LINEAR))
        else:
            raise FactorizationError(f"plane factor {f} is neither an involution nor linear")
    return make_certificate(_assemble(phi0, psi), fs, bound_class="jonq_p3",
                            paper_bound=paper_bound("jonq_p3", d=psi.degree))
