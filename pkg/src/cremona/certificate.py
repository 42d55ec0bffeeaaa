"""Factorization certificates: factor lists with evidence, counts and bounds.

Factors are always listed in application order, so the target equals
``factors[-1] o ... o factors[0]``.

Cost of a single factor (its contribution to the involution count):

* the identity costs 0 and any involution costs 1;
* a linear map that is a scalar multiple of a transvection costs 2;
* any other linear map of P^n costs ``2 (n + 2)``, the transvection bound for
  SL(n+1) doubled;
* a non-involutive monomial map costs the length of the integer involution
  factorization of its exponent matrix and is flagged;
* a lift to P^3 of a linear map of P^2 (source ``lifted-linear``) costs what
  that plane map costs;
* anything else cannot be costed and is flagged as a failure.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from typing import Sequence

from .linear import glnz_involution_factor, is_scalar_matrix, mat_det, mat_mul
from .maps import (
    DegenerateCompositionError, MapError, ProjMap, check_involution, compose, identity,
    matrix_of_linear, parse_map, proj_equal,
)

__all__ = [
    "Factor", "FactorizationCertificate", "VerificationReport", "FactorCheck", "classify_factor",
    "factor_cost", "count_plain", "count_orbit", "make_certificate", "verify_certificate",
    "monomial_exponent_matrix",
]

INVOLUTION = "involution"
LINEAR = "linear"
LIFTED = "lifted"
TAGS = (INVOLUTION, LINEAR, LIFTED)
# source of a lifted factor of P^3 that is linear on the plane it was lifted from
LIFTED_LINEAR = "lifted-linear"

# kinds reported per factor
KIND_IDENTITY = "identity"
KIND_INVOLUTION = "involution"
KIND_LINEAR = "linear-non-involution"
KIND_MONOMIAL = "monomial-non-involution"
KIND_FAIL = "FAIL"


def _is_transvection_multiple(m: list[list]) -> bool:
    n = len(m)
    # scale so that the trace is n, then test N = M - I for rank one and N^2 = 0
    tr = sum(m[i][i] for i in range(n))
    if not tr:
        return False
    from fractions import Fraction
    c = Fraction(tr) / n
    a = [[Fraction(x) / c for x in row] for row in m]
    nmat = [[a[i][j] - (1 if i == j else 0) for j in range(n)] for i in range(n)]
    if all(not x for row in nmat for x in row):
        return False
    if any(x for row in mat_mul(nmat, nmat) for x in row):
        return False
    nz = [row for row in nmat if any(row)]
    base = nz[0]
    k = next(j for j, x in enumerate(base) if x)
    return all(all(r[j] * base[k] == base[j] * r[k] for j in range(n)) for r in nz)


def monomial_exponent_matrix(phi: ProjMap, chart: int | None = None) -> list[list[int]] | None:
    """Exponent matrix of a monomial map in the chart ``z_chart = 1`` (default ``z_n``).

    Returns None when ``phi`` is not a monomial map with unimodular exponents.
    """
    if any(len(c) != 1 for c in phi.components):
        return None
    n = phi.n
    k = n if chart is None else chart
    exps = [next(iter(c.terms)) for c in phi.components]
    coeffs = [next(iter(c.terms.values())) for c in phi.components]
    if any(x != coeffs[0] for x in coeffs):
        return None
    idx = [j for j in range(n + 1) if j != k]
    # torus coordinates x_j = z_j / z_k: exponent of x_j in component i over component k
    m = [[exps[i][j] - exps[k][j] for j in idx] for i in idx]
    if mat_det(m) not in (1, -1):
        return None
    return m


def monomial_cost(phi: ProjMap) -> int | None:
    """Fewest integer involutions found over all standard charts, or None if not monomial."""
    best = None
    for k in range(phi.n + 1):
        m = monomial_exponent_matrix(phi, k)
        if m is None:
            return None
        c = len(glnz_involution_factor(m))
        best = c if best is None else min(best, c)
    return best


def classify_factor(phi: ProjMap) -> tuple[str, int, str]:
    """Return ``(kind, cost, diagnostic)`` for one factor of P^n."""
    if phi.is_identity():
        return KIND_IDENTITY, 0, ""
    chk = check_involution(phi)
    if chk.is_involution:
        return KIND_INVOLUTION, 1, ""
    if phi.degree == 1:
        m = matrix_of_linear(phi)
        if _is_transvection_multiple(m):
            return KIND_LINEAR, 2, "transvection"
        return KIND_LINEAR, 2 * (phi.n + 2), ""
    k = monomial_cost(phi)
    if k is not None:
        return KIND_MONOMIAL, k, f"non-involutive monomial map, costed as {k} monomial involutions"
    return KIND_FAIL, 0, chk.diagnostic or "nonlinear factor is not an involution"


def _classify_lifted_linear(phi: ProjMap) -> tuple[str, int, str]:
    """Cost a lift of a plane linear map as that linear map of P^2."""
    from .factorizers.jonq_p3 import unlift_p3_to_p2
    psi = unlift_p3_to_p2(phi)
    if psi is None or psi.degree != 1:
        return KIND_FAIL, 0, "not the lift of a linear map of P^2"
    kind, cost, diag = classify_factor(psi)
    return kind, cost, f"lift of the plane map {psi}" + (f", {diag}" if diag else "")


def factor_cost(phi: ProjMap) -> int:
    return classify_factor(phi)[1]


def count_plain(costs: Sequence[int]) -> int:
    return sum(costs)


def count_orbit(degrees: Sequence[int], costs: Sequence[int], n: int) -> int:
    """Count up to left-right linear equivalence.

    Leading and trailing runs of degree-one factors are absorbed into the two
    linear elements allowed on either side, each charged ``2 (n + 2)``; the
    interior factors are charged their own cost.
    """
    lo, hi = 0, len(degrees)
    while lo < hi and degrees[lo] <= 1:
        lo += 1
    while hi > lo and degrees[hi - 1] <= 1:
        hi -= 1
    return 2 * 2 * (n + 2) + sum(costs[lo:hi])


@dataclass
class Factor:
    """One factor of a certificate."""

    map: ProjMap
    tag: str = INVOLUTION
    source: str = ""

    def __post_init__(self):
        if self.tag not in TAGS:
            raise ValueError(f"unknown factor tag {self.tag!r}")

    def to_json(self) -> dict:
        d = {"map": str(self.map), "tag": self.tag}
        if self.source:
            d["source"] = self.source
        return d


@dataclass
class FactorCheck:
    index: int
    map: str
    tag: str
    kind: str
    cost: int
    passed: bool
    diagnostic: str = ""


@dataclass
class VerificationReport:
    composes: bool
    factors: list[FactorCheck]
    achieved_count: int
    paper_bound: int | None
    within_bound: bool | None
    verified: bool
    flags: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return asdict(self)


@dataclass
class FactorizationCertificate:
    target: ProjMap
    factors: list[Factor]
    paper_bound: int | None = None
    bound_class: str | None = None
    achieved_count: int = 0
    verified: bool = False
    counting: str = "plain"
    flags: list[str] = field(default_factory=list)

    @property
    def n(self) -> int:
        return self.target.n

    @property
    def maps(self) -> list[ProjMap]:
        return [f.map for f in self.factors]

    def to_json(self) -> dict:
        return {
            "target": str(self.target),
            "dimension": self.n,
            "orientation": "apply-order",
            "factors": [f.to_json() for f in self.factors],
            "achievedInvolutionCount": self.achieved_count,
            "paperBound": self.paper_bound,
            "boundClass": self.bound_class,
            "counting": self.counting,
            "verified": self.verified,
            "flags": list(self.flags),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)

    @classmethod
    def from_json(cls, data: dict | str) -> "FactorizationCertificate":
        if isinstance(data, str):
            data = json.loads(data)
        if data.get("orientation", "apply-order") != "apply-order":
            raise ValueError("only apply-order certificates are supported")
        factors = [Factor(parse_map(f["map"]), f.get("tag", INVOLUTION), f.get("source", ""))
                   for f in data["factors"]]
        return cls(
            target=parse_map(data["target"]),
            factors=factors,
            paper_bound=data.get("paperBound"),
            bound_class=data.get("boundClass"),
            achieved_count=data.get("achievedInvolutionCount", 0),
            verified=data.get("verified", False),
            counting=data.get("counting", "plain"),
            flags=list(data.get("flags", [])),
        )


def verify_certificate(cert: FactorizationCertificate) -> VerificationReport:
    """Recompose, re-check every factor and recount; failures become report entries."""
    n = cert.n
    flags: list[str] = []
    checks: list[FactorCheck] = []
    kinds, costs = [], []
    for i, f in enumerate(cert.factors):
        if f.map.n != n:
            checks.append(FactorCheck(i, str(f.map), f.tag, KIND_FAIL, 0, False, "dimension mismatch"))
            kinds.append(KIND_FAIL)
            costs.append(0)
            continue
        if f.source == LIFTED_LINEAR:
            kind, cost, diag = _classify_lifted_linear(f.map)
        else:
            kind, cost, diag = classify_factor(f.map)
        if f.tag == INVOLUTION:
            ok = kind in (KIND_INVOLUTION, KIND_IDENTITY)
            if not ok:
                diag = diag or "factor tagged involution is not an involution"
        elif f.tag == LINEAR:
            ok = f.map.degree == 1
            if not ok:
                diag = "factor tagged linear has degree > 1"
        else:
            ok = kind != KIND_FAIL
        if kind == KIND_MONOMIAL:
            flags.append(f"factor {i}: {diag}")
        checks.append(FactorCheck(i, str(f.map), f.tag, kind, cost, ok, diag))
        kinds.append(kind)
        costs.append(cost)
    try:
        composed = identity(n)
        for f in cert.factors:
            composed = compose(f.map, composed)
        composes = proj_equal(composed, cert.target)
    except (DegenerateCompositionError, MapError) as exc:
        composes = False
        flags.append(f"composition failed: {exc}")
    if cert.counting == "orbit":
        count = count_orbit([f.map.degree for f in cert.factors], costs, n)
    else:
        count = count_plain(costs)
    within = None if cert.paper_bound is None else count <= cert.paper_bound
    if within is False:
        flags.append(f"count {count} exceeds bound {cert.paper_bound}")
    verified = composes and all(c.passed for c in checks)
    return VerificationReport(composes, checks, count, cert.paper_bound, within, verified, flags)


def make_certificate(target: ProjMap, factors: Sequence[ProjMap | Factor], *,
                     bound_class: str | None = None, paper_bound: int | None = None,
                     counting: str = "plain", flags: Sequence[str] = ()) -> FactorizationCertificate:
    """Build a certificate, verify it and fill in the count and status."""
    fs = []
    for f in factors:
        if isinstance(f, ProjMap):
            tag = INVOLUTION if check_involution(f).is_involution else (
                LINEAR if f.degree == 1 else LIFTED)
            f = Factor(f, tag)
        fs.append(f)
    cert = FactorizationCertificate(target, fs, paper_bound, bound_class, counting=counting,
                                    flags=list(flags))
    rep = verify_certificate(cert)
    cert.achieved_count = rep.achieved_count
    cert.verified = rep.verified
    cert.flags += [fl for fl in rep.flags if fl not in cert.flags]
    return cert
