"""Linear groups as products of involutions.

Factor lists returned by the matrix routines are in *product order*:
``M == F[0] @ F[1] @ ... @ F[-1]``.  :func:`pgl2_polyring_factor` works on
homographies and returns them in *application order* instead, matching the
rest of the map-level API.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .algebra.poly import MultiPoly
from .algebra.ratfunc import QQ, Field, RatFunc, field_of
from .homography import Homography, is_involution_h
from .maps import MapError, ProjMap, simplify

__all__ = [
    "Matrix", "LinearAlgebraError", "ScalarExtensionError", "Transvection", "identity_matrix",
    "mat_mul", "mat_prod", "mat_det", "mat_eq", "is_scalar_matrix", "is_matrix_involution",
    "sl_transvection_factor", "transvection_involutions", "pgl_involution_factor",
    "pgl2_polyring_factor", "glnz_involution_factor", "monomial_from_matrix",
    "elementary_matrix", "rational_root",
]

Matrix = list[list]


class LinearAlgebraError(ValueError):
    pass


class ScalarExtensionError(LinearAlgebraError):
    """The determinant has no n-th root in Q, so scaling into SL(n) needs a larger field."""


# -- matrix helpers ---------------------------------------------------------

def _elems(m: Sequence[Sequence]):
    return [x for row in m for x in row]


def _field(m: Sequence[Sequence]) -> Field:
    return field_of(*_elems(m))


def _norm(x):
    if isinstance(x, Fraction) and x.denominator == 1:
        return x.numerator
    return x


def _exact(x):
    # ints become Fractions so that "/" stays exact
    return Fraction(x) if isinstance(x, int) else x


def identity_matrix(n: int, field: Field = QQ) -> Matrix:
    return [[field(1) if i == j else field(0) for j in range(n)] for i in range(n)]


def elementary_matrix(n: int, i: int, j: int, a, field: Field = QQ) -> Matrix:
    """``I + a E_ij``."""
    m = identity_matrix(n, field)
    m[i][j] = field(a)
    return m


def mat_mul(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    n, k, p = len(a), len(b), len(b[0])
    if any(len(row) != k for row in a):
        raise LinearAlgebraError("shape mismatch")
    return [[_norm(sum((a[i][t] * b[t][j] for t in range(k)), 0 * a[i][0])) for j in range(p)]
            for i in range(n)]


def mat_prod(mats: Sequence[Sequence[Sequence]], n: int | None = None, field: Field = QQ) -> Matrix:
    """Ordered product ``mats[0] @ mats[1] @ ...``; empty product needs ``n``."""
    if not mats:
        if n is None:
            raise LinearAlgebraError("empty product needs a size")
        return identity_matrix(n, field)
    acc = [list(r) for r in mats[0]]
    for m in mats[1:]:
        acc = mat_mul(acc, m)
    return acc


def mat_det(m: Sequence[Sequence]):
    """Determinant by fraction-free cofactor-free elimination over the entry field."""
    n = len(m)
    a = [[x if not isinstance(x, int) else Fraction(x) for x in row] for row in m]
    det = Fraction(1)
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][k]), None)
        if piv is None:
            return _norm(0 * a[0][0])
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            det = -det
        det = det * a[k][k]
        inv = 1 / a[k][k]
        for i in range(k + 1, n):
            if a[i][k]:
                f = a[i][k] * inv
                a[i] = [x - f * y for x, y in zip(a[i], a[k])]
    return _norm(det)


def mat_eq(a: Sequence[Sequence], b: Sequence[Sequence]) -> bool:
    return len(a) == len(b) and all(
        len(r) == len(s) and all(x == y for x, y in zip(r, s)) for r, s in zip(a, b))


def is_scalar_matrix(m: Sequence[Sequence]) -> bool:
    n = len(m)
    return all((not m[i][j]) if i != j else m[i][i] == m[0][0] for i in range(n) for j in range(n)) \
        and bool(m[0][0])


def is_matrix_involution(m: Sequence[Sequence], projective: bool = True) -> bool:
    """``M^2`` is scalar (projective) or exactly the identity."""
    sq = mat_mul(m, m)
    if projective:
        return is_scalar_matrix(sq)
    return is_scalar_matrix(sq) and sq[0][0] == 1


def _scale(m: Matrix, c) -> Matrix:
    return [[_norm(x * c) for x in row] for row in m]


# -- transvections ----------------------------------------------------------

@dataclass(frozen=True)
class Transvection:
    """The elementary matrix ``I + a E_ij`` with ``i != j``."""

    n: int
    i: int
    j: int
    a: object

    def __post_init__(self):
        if self.i == self.j:
            raise LinearAlgebraError("a transvection needs i != j")

    def matrix(self, field: Field | None = None) -> Matrix:
        field = field or field_of(self.a)
        return elementary_matrix(self.n, self.i, self.j, self.a, field)

    def inverse(self) -> "Transvection":
        return Transvection(self.n, self.i, self.j, -self.a)


def transvection_involutions(t: Transvection, field: Field | None = None) -> tuple[Matrix, Matrix]:
    """``(D, S)`` with ``D = diag(.., -1 at i, ..)``, ``S = D T``; ``D S = T`` and both square to I."""
    field = field or field_of(t.a)
    d = identity_matrix(t.n, field)
    d[t.i][t.i] = field(-1)
    s = mat_mul(d, t.matrix(field))
    return d, s


def sl_transvection_factor(m: Sequence[Sequence], field: Field | None = None) -> list[Transvection]:
    """Write a determinant-one matrix as an ordered product of transvections.

    Row and column elimination reduces ``M`` to the identity; the recorded
    operations are inverted and reordered so that the product of the result
    equals ``M`` exactly.
    """
    field = field or _field(m)
    n = len(m)
    a = [[_exact(field(x)) for x in row] for row in m]
    if mat_det(a) != 1:
        raise LinearAlgebraError("matrix does not have determinant 1")
    left: list[Transvection] = []   # row operations, in the order applied
    right: list[Transvection] = []  # column operations, in the order applied

    def row_op(i, j, c):
        # row_i += c * row_j, i.e. left-multiply by I + c E_ij
        a[i] = [x + c * y for x, y in zip(a[i], a[j])]
        left.append(Transvection(n, i, j, _norm(c)))

    def col_op(i, j, c):
        # col_j += c * col_i, i.e. right-multiply by I + c E_ij
        for row in a:
            row[j] = row[j] + c * row[i]
        right.append(Transvection(n, i, j, _norm(c)))

    for k in range(n - 1):
        if a[k][k] != 1:
            r = next((r for r in range(k + 1, n) if a[r][k]), None)
            c = next((c for c in range(k + 1, n) if a[k][c]), None)
            if r is None and c is None:
                row_op(k + 1, k, field(1))
                r = k + 1
            if r is not None:
                row_op(k, r, (1 - a[k][k]) / a[r][k])
            else:
                col_op(c, k, (1 - a[k][k]) / a[k][c])
        for r in range(k + 1, n):
            if a[r][k]:
                row_op(r, k, -a[r][k])
        for c in range(k + 1, n):
            if a[k][c]:
                col_op(k, c, -a[k][c])
    # L_m ... L_1 M R_1 ... R_p = I
    return [t.inverse() for t in left] + [t.inverse() for t in reversed(right)]


def rational_root(x, n: int) -> Fraction | None:
    """Positive rational ``r`` with ``r**n == x`` (x > 0), or None."""
    x = Fraction(x)
    if x <= 0:
        return None
    num = _int_root(x.numerator, n)
    den = _int_root(x.denominator, n)
    if num is None or den is None:
        return None
    return Fraction(num, den)


def _int_root(v: int, n: int) -> int | None:
    lo, hi = 0, 1
    while hi ** n < v:
        hi *= 2
    while lo < hi:
        mid = (lo + hi) // 2
        if mid ** n < v:
            lo = mid + 1
        else:
            hi = mid
    return lo if lo ** n == v else None


def _sl_involutions(m: Matrix, field: Field) -> list[Matrix]:
    out = []
    for t in sl_transvection_factor(m, field):
        d, s = transvection_involutions(t, field)
        out += [d, s]
    return out


def pgl_involution_factor(m: Sequence[Sequence], field: Field | None = None) -> list[Matrix]:
    """Involutions of PGL(n) whose ordered product is a scalar multiple of ``M``."""
    field = field or _field(m)
    n = len(m)
    a = [[field(x) for x in row] for row in m]
    det = mat_det(a)
    if not det:
        raise LinearAlgebraError("singular matrix")
    if is_scalar_matrix(a):
        return []
    if is_matrix_involution(a):
        return [a]
    prefix: list[Matrix] = []
    if isinstance(det, RatFunc):
        if not det.is_constant():
            raise ScalarExtensionError("determinant is not a constant")
        det = det.constant_value()
    if det < 0:
        if n % 2:
            a = _scale(a, -1)
        else:
            sign = identity_matrix(n, field)
            sign[0][0] = field(-1)
            prefix = [sign]
            a = mat_mul(sign, a)
        det = abs(det)
    if det != 1:
        r = rational_root(det, n)
        if r is None:
            raise ScalarExtensionError(f"determinant {det} has no rational {n}-th root")
        a = _scale(a, 1 / r)
    return prefix + _sl_involutions(a, field)


def pgl2_polyring_factor(g: Homography) -> list[Homography]:
    """At most eight involutions, in application order, composing to ``g``."""
    if g.is_identity():
        return []
    if is_involution_h(g):
        return [g]
    field = g.field
    a, b, c, d = g.a, g.b, g.c, g.d
    if not b and not c:
        # z0 -> (a/d) z0 is (a/d)/z0 after 1/z0
        return [Homography(0, 1, 1, 0, field), Homography(0, a, d, 0, field)]
    p = g.det()
    mat = [[a, b], [c, d]]
    pc = p.constant_value() if isinstance(p, RatFunc) and p.is_constant() else (
        p if not isinstance(p, RatFunc) else None)
    if pc is not None and pc < 0:
        r = rational_root(-pc, 2)
        if r is not None:
            sign = [[field(-1), field(0)], [field(0), field(1)]]
            h = _scale(mat_mul(sign, mat), 1 / r)
            return _homs(_sl_involutions(h, field), field) + [Homography(-1, 0, 0, 1, field)]
    if pc is not None and pc > 0:
        r = rational_root(pc, 2)
        if r is not None:
            return _homs(_sl_involutions(_scale(mat, 1 / r), field), field)
    # det(g) = P: g = (1/(P z0)) o (1/z0) o h with h = diag(1, 1/P) g in SL(2)
    h = mat_mul([[field(1), field(0)], [field(0), field(Fraction(1) / p)]], mat)
    return _homs(_sl_involutions(h, field), field) + [
        Homography(0, 1, 1, 0, field), Homography(0, 1, p, 0, field)]


def _homs(mats_product_order: list[Matrix], field: Field) -> list[Homography]:
    return [Homography.from_matrix(m, field) for m in reversed(mats_product_order)]


# -- integer matrices -------------------------------------------------------

def glnz_involution_factor(m: Sequence[Sequence[int]]) -> list[Matrix]:
    """Integer involutions whose ordered product equals ``M`` exactly (det ``M = +-1``).

    Euclidean row elimination without row swaps: the pivot is the entry of
    least absolute value (ties go to the smaller row index).
    """
    n = len(m)
    a = [[int(x) for x in row] for row in m]
    if any(Fraction(x) != y for row, r2 in zip(a, m) for x, y in zip(row, r2)):
        raise LinearAlgebraError("matrix has non-integer entries")
    det = mat_det(a)
    if det not in (1, -1):
        raise LinearAlgebraError(f"determinant {det} is not +-1")
    if is_matrix_involution(a, projective=False):
        return [a]
    ops: list[Transvection] = []

    def row_op(i, j, c):
        a[i] = [x + c * y for x, y in zip(a[i], a[j])]
        ops.append(Transvection(n, i, j, c))

    for k in range(n):
        while True:
            rows = [r for r in range(k, n) if a[r][k]]
            if rows == [k]:
                break
            p = min(rows, key=lambda r: (abs(a[r][k]), r))
            if p != k and not a[k][k]:
                row_op(k, p, 1)
                continue
            for r in rows:
                if r == p:
                    continue
                q = a[r][k] // a[p][k]
                if r == k and a[r][k] - q * a[p][k] == 0:
                    q -= 1
                if q:
                    row_op(r, p, -q)
    for j in range(n - 1, 0, -1):
        for i in range(j):
            if a[i][j]:
                row_op(i, j, -a[i][j] * a[j][j])
    # L_m ... L_1 M = D
    out: list[Matrix] = []
    for t in ops:
        d, s = transvection_involutions(t.inverse())
        out += [d, s]
    if any(a[i][i] != 1 for i in range(n)):
        out.append([row[:] for row in a])
    return out


def monomial_from_matrix(m: Sequence[Sequence[int]]) -> ProjMap:
    """Homogenized torus map ``x_i -> prod_j x_j^{M_ij}`` on P^n (``x_i = z_i / z_n``)."""
    n = len(m)
    a = [[int(x) for x in row] for row in m]
    if mat_det(a) not in (1, -1):
        raise LinearAlgebraError("monomial maps need a unimodular matrix")
    exps = [list(row) + [-sum(row)] for row in a] + [[0] * (n + 1)]
    shift = [max(0, -min(e[j] for e in exps)) for j in range(n + 1)]
    comps = [MultiPoly.monomial([x + s for x, s in zip(e, shift)]) for e in exps]
    return simplify(comps)


def linear_projmap(m: Sequence[Sequence]) -> ProjMap:
    from .maps import linear_map
    return linear_map(m)


def homography_to_projmap(h: Homography) -> ProjMap:
    """Lift a homography over Q to a map of P^1."""
    if not h.field.is_rational:
        raise MapError("only homographies over Q lift to P^1")
    return linear_projmap(h.matrix)
