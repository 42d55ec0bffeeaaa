"""Triangular birational maps of P^n: the group J_n.

In the chart ``z_n = 1`` an element is

    (h_0(z0; z1, ..., z_{n-1}), h_1(z1; z2, ...), ..., h_{n-1}(z_{n-1}))

with ``h_i`` a homography in ``z_i`` whose coefficients depend on the later
coordinates only.  It equals ``G_{n-1} o ... o G_0`` where ``G_i`` applies
``h_i`` to ``z_i`` and fixes everything else.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..algebra.ratfunc import QQ, FunctionField
from ..certificate import INVOLUTION, Factor, FactorizationCertificate, make_certificate
from ..homography import Homography, two_involution_factorization
from ..linear import pgl2_polyring_factor
from ..maps import AffineMap, ProjMap, from_affine_chart, parse_affine
from .bounds import paper_bound
from .common import FactorizationError, action, homography_in, lift_coordinate
from .jonquieres import Jonquieres2, factor_jonquieres2

__all__ = ["JnMap", "parse_jn", "factor_jn", "level_field"]


def level_field(i: int, n: int):
    return QQ if i == n - 1 else FunctionField(n, range(i + 1, n))


@dataclass(frozen=True)
class JnMap:
    """``levels[i]`` acts on ``z_i``; the last level is the base homography over Q."""

    levels: tuple[Homography, ...]

    def __post_init__(self):
        n = len(self.levels)
        if n < 1:
            raise FactorizationError("need at least one level")
        out = []
        for i, h in enumerate(self.levels):
            f = h.field
            if not f.is_rational and (f.nvars != n or not set(f.variables) <= set(range(i + 1, n))):
                raise FactorizationError(f"level {i} has coefficients in {f}; not triangular")
            if i == n - 1 and not f.is_rational:
                raise FactorizationError("the base level must have rational coefficients")
            out.append(h.in_field(level_field(i, n)))
        object.__setattr__(self, "levels", tuple(out))

    @property
    def n(self) -> int:
        return len(self.levels)

    def to_affine(self) -> AffineMap:
        return AffineMap([action(h, i, self.n) for i, h in enumerate(self.levels)])

    def to_projmap(self) -> ProjMap:
        return from_affine_chart(self.to_affine(), self.n)

    @classmethod
    def from_affine(cls, psi: AffineMap) -> "JnMap":
        n = psi.n
        return cls(tuple(homography_in(c, i, tuple(range(i + 1, n)))
                         for i, c in enumerate(psi.components)))


def parse_jn(text: str) -> JnMap:
    try:
        return JnMap.from_affine(parse_affine(text))
    except FactorizationError as exc:
        raise FactorizationError(f"not a triangular map: {exc}") from None


def factor_jn(phi: JnMap) -> FactorizationCertificate:
    """Levels ``z0, z1, ...`` in turn, each lifted to P^n fixing the other coordinates."""
    n = phi.n
    bound = paper_bound("jn", n=n)
    if n == 2:
        cert = factor_jonquieres2(Jonquieres2(phi.levels[0], phi.levels[1]))
        cert.bound_class, cert.paper_bound = "jn", bound
        return cert
    maps: list[ProjMap] = []
    for i, h in enumerate(phi.levels):
        hs = two_involution_factorization(h) if i == n - 1 else pgl2_polyring_factor(h)
        maps += [lift_coordinate(g, i, n) for g in hs]
    return make_certificate(phi.to_projmap(), [Factor(m, INVOLUTION) for m in maps],
                            bound_class="jn", paper_bound=bound)
