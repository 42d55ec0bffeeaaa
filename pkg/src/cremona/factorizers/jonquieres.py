"""De Jonquieres maps of P^2 and their involution factorization.

In the affine chart ``z2 = 1`` a de Jonquieres map is

    j(z0, z1) = (fiber(z0; z1), base(z1))

where ``fiber`` is a homography in ``z0`` with coefficients in Q(z1) and
``base`` a homography of the ``z1`` line over Q.  It splits as
``j = (z0, base(z1)) o (fiber(z0; z1), z1)``.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..algebra.ratfunc import QQ, FunctionField, RatFunc
from ..certificate import INVOLUTION, Factor, FactorizationCertificate, make_certificate
from ..homography import Homography, two_involution_factorization
from ..linear import pgl2_polyring_factor
from ..maps import AffineMap, ProjMap, from_affine_chart, parse_affine, to_affine_chart
from .bounds import paper_bound
from .common import FactorizationError, action, homography_in, lift_coordinate

__all__ = [
    "Jonquieres2", "FIBER_FIELD", "split_jonquieres2", "factor_jonquieres2", "parse_jonquieres2",
    "fiber_factors",
]

FIBER_FIELD = FunctionField(2, (1,))


@dataclass(frozen=True)
class Jonquieres2:
    fiber: Homography
    base: Homography

    def __post_init__(self):
        if not self.base.field.is_rational:
            raise FactorizationError("the base homography must have rational coefficients")
        f = self.fiber.field
        if not f.is_rational and (f.nvars != 2 or set(f.variables) - {1}):
            raise FactorizationError(f"fiber coefficients must lie in Q(z1), got {f}")
        object.__setattr__(self, "fiber", self.fiber.in_field(FIBER_FIELD))

    @classmethod
    def identity(cls) -> "Jonquieres2":
        return cls(Homography.identity(FIBER_FIELD), Homography.identity(QQ))

    def is_identity(self) -> bool:
        return self.fiber.is_identity() and self.base.is_identity()

    def to_affine(self) -> AffineMap:
        return AffineMap([action(self.fiber, 0, 2), action(self.base, 1, 2)])

    def to_projmap(self) -> ProjMap:
        return from_affine_chart(self.to_affine(), 2)

    @classmethod
    def from_affine(cls, psi: AffineMap) -> "Jonquieres2":
        if psi.n != 2:
            raise FactorizationError("a de Jonquieres map of P^2 has two affine components")
        c0, c1 = psi.components
        return cls(homography_in(c0, 0, (1,)), homography_in(c1, 1))

    @classmethod
    def from_projmap(cls, phi: ProjMap) -> "Jonquieres2":
        return cls.from_affine(to_affine_chart(phi, 2))

    def __str__(self):
        return str(self.to_affine())


def parse_jonquieres2(text: str) -> Jonquieres2:
    """Parse an affine pair ``"(expr, expr)"`` in ``z0, z1``."""
    psi = parse_affine(text)
    if psi.n != 2:
        raise FactorizationError(f"expected two components, got {psi.n}")
    return Jonquieres2.from_affine(psi)


def split_jonquieres2(j: Jonquieres2) -> tuple[Jonquieres2, Jonquieres2]:
    """``(vertical, fiberwise)`` with ``j = vertical o fiberwise``."""
    vertical = Jonquieres2(Homography.identity(FIBER_FIELD), j.base)
    fiberwise = Jonquieres2(j.fiber, Homography.identity(QQ))
    return vertical, fiberwise


def fiber_factors(fiber: Homography) -> list[ProjMap]:
    """Involutions of P^2, in application order, composing to ``(fiber(z0; z1), z1)``."""
    return [lift_coordinate(h, 0, 2) for h in pgl2_polyring_factor(fiber.in_field(FIBER_FIELD))]


def base_factors(base: Homography) -> list[ProjMap]:
    """At most two involutions of P^2 composing to ``(z0, base(z1))``."""
    return [lift_coordinate(h, 1, 2) for h in two_involution_factorization(base)]


def factor_jonquieres2(j: Jonquieres2) -> FactorizationCertificate:
    """At most ten involutions: fiber part first, then the base part."""
    maps = fiber_factors(j.fiber) + base_factors(j.base)
    return make_certificate(j.to_projmap(), [Factor(m, INVOLUTION) for m in maps],
                            bound_class="jonquieres_p2", paper_bound=paper_bound("jonquieres_p2"))
