"""Products of linear conjugates of the standard involution.

A chain ``[A_0, ..., A_k]`` stands for
``(A_0 sigma_n A_0^-1) o (A_1 sigma_n A_1^-1) o ... o (A_k sigma_n A_k^-1)``;
every factor is an involution, so a map equal to such a chain comes with an
involution certificate for free.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from ..certificate import INVOLUTION, Factor, FactorizationCertificate, make_certificate
from ..linear import LinearAlgebraError, mat_det
from ..maps import ProjMap, compose_all, conjugate, linear_map, standard_involution

__all__ = ["conjugated_sigma", "sigma_chain", "sigma_chain_certificate", "chain_product"]


def _inverse(m: Sequence[Sequence]) -> list[list]:
    n = len(m)
    if not mat_det(m):
        raise LinearAlgebraError("singular matrix")
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(m)]
    for k in range(n):
        p = next(r for r in range(k, n) if a[r][k])
        a[k], a[p] = a[p], a[k]
        piv = a[k][k]
        a[k] = [x / piv for x in a[k]]
        for r in range(n):
            if r != k and a[r][k]:
                c = a[r][k]
                a[r] = [x - c * y for x, y in zip(a[r], a[k])]
    return [row[n:] for row in a]


def conjugated_sigma(a: Sequence[Sequence]) -> ProjMap:
    """``A o sigma_n o A^-1`` for an invertible ``(n+1) x (n+1)`` matrix ``A``."""
    n = len(a) - 1
    return conjugate(linear_map(a), linear_map(_inverse(a)), standard_involution(n))


def sigma_chain(mats: Sequence[Sequence[Sequence]]) -> list[ProjMap]:
    """The conjugates in application order: the last matrix acts first."""
    return [conjugated_sigma(a) for a in reversed(mats)]


def sigma_chain_certificate(target: ProjMap, mats: Sequence[Sequence[Sequence]]) -> FactorizationCertificate:
    """Check that ``target`` equals the chain; the certificate records the outcome."""
    factors = sigma_chain(mats)
    if any(f.n != target.n for f in factors):
        raise LinearAlgebraError("matrix size does not match the dimension of the target")
    return make_certificate(target, [Factor(f, INVOLUTION) for f in factors], bound_class=None)


def chain_product(mats: Sequence[Sequence[Sequence]]) -> ProjMap:
    fs = sigma_chain(mats)
    return compose_all(fs, len(mats[0]) - 1)
