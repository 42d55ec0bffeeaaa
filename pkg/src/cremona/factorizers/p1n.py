"""Automorphisms of (P^1)^n: one homography per factor, optionally permuted.

In affine coordinates the map is ``x_i -> h_i(x_{perm[i]})``; it is treated as
a birational map of P^n through the chart ``z_n = 1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from ..algebra.poly import MultiPoly
from ..algebra.ratfunc import QQ
from ..certificate import INVOLUTION, Factor, FactorizationCertificate, make_certificate
from ..homography import Homography, two_involution_factorization
from ..maps import AffineMap, ProjMap, from_affine_chart
from .bounds import paper_bound
from .common import FactorizationError, action, lift_coordinate

__all__ = ["MultiP1Map", "factor_p1n", "permutation_map", "transpositions"]

PERMUTATION_FLAG = "coordinate permutation factored into transpositions (extension of the product case)"


@dataclass(frozen=True)
class MultiP1Map:
    homographies: tuple[Homography, ...]
    perm: tuple[int, ...] | None = None

    def __post_init__(self):
        hs = tuple(h if h.field.is_rational else None for h in self.homographies)
        if any(h is None for h in hs):
            raise FactorizationError("homographies must have rational coefficients")
        object.__setattr__(self, "homographies", hs)
        if self.perm is not None:
            p = tuple(int(i) for i in self.perm)
            if sorted(p) != list(range(self.n)):
                raise FactorizationError(f"{p} is not a permutation of 0..{self.n - 1}")
            object.__setattr__(self, "perm", None if p == tuple(range(self.n)) else p)

    @property
    def n(self) -> int:
        return len(self.homographies)

    def to_affine(self) -> AffineMap:
        perm = self.perm or tuple(range(self.n))
        return AffineMap([action(h, perm[i], self.n) for i, h in enumerate(self.homographies)])

    def to_projmap(self) -> ProjMap:
        return from_affine_chart(self.to_affine(), self.n)


def permutation_map(perm: Sequence[int]) -> ProjMap:
    """``x_i -> x_{perm[i]}`` on P^n, ``n = len(perm)``."""
    n = len(perm)
    return from_affine_chart(AffineMap([MultiPoly.var(perm[i], n) for i in range(n)]), n)


def transpositions(perm: Sequence[int]) -> list[tuple[int, int]]:
    """Swaps ``(i, j)`` whose coordinate maps, applied in order, give ``permutation_map(perm)``."""
    # permutation_map(s) o permutation_map(t) = permutation_map(t o s); sort a copy
    p = list(perm)
    out = []
    for i in range(len(p)):
        if p[i] != i:
            j = p.index(i)
            p[i], p[j] = p[j], p[i]
            out.append((i, j))
    return out[::-1]


def factor_p1n(phi: MultiP1Map) -> FactorizationCertificate:
    """Swaps first, then at most two involutions per coordinate."""
    n = phi.n
    maps: list[ProjMap] = []
    flags = []
    if phi.perm is not None:
        for i, j in transpositions(phi.perm):
            sw = list(range(n))
            sw[i], sw[j] = j, i
            maps.append(permutation_map(sw))
        flags.append(PERMUTATION_FLAG)
    for i, h in enumerate(phi.homographies):
        maps += [lift_coordinate(g, i, n) for g in two_involution_factorization(h.in_field(QQ))]
    return make_certificate(phi.to_projmap(), [Factor(m, INVOLUTION) for m in maps],
                            bound_class="aut_p1n", paper_bound=paper_bound("aut_p1n", n=n),
                            flags=flags)
