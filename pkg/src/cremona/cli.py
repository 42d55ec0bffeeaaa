"""Command line front end.

    cremona <verb> [args] [--json] [--seed N]

Exit status: 0 on success, 1 when a certificate or corpus entry fails to
verify, 2 on usage, parse or classification errors.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from typing import Callable, Sequence

from .algebra.parse import ParseError, parse_matrix
from .certificate import (
    INVOLUTION, LINEAR, Factor, FactorizationCertificate, make_certificate, verify_certificate,
)
from .corpus import certificate_for, entry_ids, load_entry, verify_all, verify_entry
from .factorizers import (
    BoundError, FactorizationError, JnMap, MultiP1Map, ReducedWordError, factor_henon, factor_jn,
    factor_jonq_p3, factor_jonquieres2, factor_p1n, paper_bound, parse_jonquieres2, parse_polyaut,
)
from .factorizers.common import lift_coordinate
from .homography import HomographyError, parse_homography, two_involution_factorization
from .linear import (
    LinearAlgebraError, glnz_involution_factor, homography_to_projmap, is_matrix_involution,
    monomial_from_matrix, pgl2_polyring_factor, pgl_involution_factor,
)
from .maps import (
    MapError, check_involution, compose_all, linear_map, parse_affine, parse_map,
)

__all__ = ["main", "run", "build_parser"]

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

_USER_ERRORS = (ParseError, FactorizationError, MapError, LinearAlgebraError, BoundError,
                HomographyError, ReducedWordError, KeyError, ValueError, OSError)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise _UsageError(f"{self.prog}: error: {message}")


class _UsageError(Exception):
    pass


def _common() -> argparse.ArgumentParser:
    p = _Parser(add_help=False)
    # SUPPRESS so a flag given before the verb is not reset by the subcommand
    p.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                   help="machine-readable output")
    p.add_argument("--seed", type=int, default=argparse.SUPPRESS,
                   help="seed for randomized commands")
    return p


# -- factor payloads ----------------------------------------------------------

def _factor_homography(a) -> FactorizationCertificate:
    h = parse_homography(a.payload)
    if not h.field.is_rational:
        raise FactorizationError("use 'factor pgl2poly' for polynomial coefficients")
    fs = [Factor(homography_to_projmap(g), INVOLUTION) for g in two_involution_factorization(h)]
    return make_certificate(homography_to_projmap(h), fs, bound_class="aut_p1n",
                            paper_bound=paper_bound("aut_p1n", n=1))


def _factor_sl(a) -> FactorizationCertificate:
    m = [[x.constant_value() if x.is_constant() else _bad_entry(x) for x in row]
         for row in parse_matrix(a.payload, 1)]
    mats = pgl_involution_factor(m)
    fs = [Factor(linear_map(x), INVOLUTION if is_matrix_involution(x) else LINEAR)
          for x in reversed(mats)]
    n = len(m) - 1
    return make_certificate(linear_map(m), fs, bound_class="aut_pn",
                            paper_bound=paper_bound("aut_pn", n=n))


def _bad_entry(x):
    raise ParseError(f"matrix entry {x} is not a rational constant")


def _factor_pgl2poly(a) -> FactorizationCertificate:
    h = parse_homography(a.payload)
    nv = max(h.field.nvars or 1, 1)
    det = h.det()
    unit = (det.is_constant() and abs(det.constant_value()) == 1) if hasattr(det, "is_constant") \
        else abs(det) == 1
    cls = "pgl2_det_pm1" if unit else "pgl2_polyring"
    gs = None
    if unit:
        # over the coefficient field two involutions suffice, inside the bound of 4
        try:
            gs = two_involution_factorization(h)
        except HomographyError:
            cls = "pgl2_polyring"
    if gs is None:
        gs = pgl2_polyring_factor(h)
    if nv == 1:
        target = homography_to_projmap(h)
        fs = [homography_to_projmap(g) for g in gs]
    else:
        target = lift_coordinate(h, 0, nv)
        fs = [lift_coordinate(g, 0, nv) for g in gs]
    return make_certificate(target, [Factor(f, INVOLUTION) for f in fs], bound_class=cls,
                            paper_bound=paper_bound(cls))


def _factor_monomial(a) -> FactorizationCertificate:
    m = [[x.constant_value() if x.is_constant() else _bad_entry(x) for x in row]
         for row in parse_matrix(a.payload, 1)]
    mats = glnz_involution_factor(m)
    # product order M = M1 ... Mk, so Mk acts first
    fs = [Factor(monomial_from_matrix(x), INVOLUTION) for x in reversed(mats)]
    n = len(m)
    return make_certificate(monomial_from_matrix(m), fs, bound_class="monomial",
                            paper_bound=paper_bound("monomial", n=n))


def _factor_henon(a) -> FactorizationCertificate:
    return factor_henon(parse_polyaut(a.payload))


def _factor_jonquieres2(a) -> FactorizationCertificate:
    return factor_jonquieres2(parse_jonquieres2(a.payload))


def _factor_jn(a) -> FactorizationCertificate:
    return factor_jn(JnMap.from_affine(parse_affine(a.payload)))


def _factor_jonq_p3(a) -> FactorizationCertificate:
    phi0 = parse_homography(a.payload)
    if a.psi_jonquieres:
        if a.psi:
            raise FactorizationError("give either --psi or --psi-jonquieres, not both")
        return factor_jonq_p3(phi0, parse_jonquieres2(a.psi_jonquieres))
    factors = [parse_map(t) for t in a.psi or ()]
    target = parse_map(a.psi_target) if a.psi_target else None
    return factor_jonq_p3(phi0, factors, target)


def _factor_p1n(a) -> FactorizationCertificate:
    hs = [parse_homography(t) for t in a.payload.split(";")]
    perm = tuple(int(x) for x in a.perm.split(",")) if a.perm else None
    return factor_p1n(MultiP1Map(tuple(hs), perm))


FACTOR_KINDS: dict[str, tuple[Callable, str]] = {
    "homography": (_factor_homography, "homography over Q in z0, e.g. \"(2*z0+1)/(z0+1)\""),
    "sl": (_factor_sl, "square rational matrix \"[a,b;c,d]\" as a linear map"),
    "pgl2poly": (_factor_pgl2poly, "homography in z0 with polynomial coefficients in z1, z2, ..."),
    "monomial": (_factor_monomial, "unimodular integer matrix \"[a,b;c,d]\""),
    "henon": (_factor_henon, "affine pair \"(z1, P(z1)-delta*z0)\""),
    "jonquieres2": (_factor_jonquieres2, "affine pair \"(fiber, base)\" in z0, z1"),
    "jn": (_factor_jn, "triangular affine tuple in z0..z{n-1}"),
    "jonq-p3": (_factor_jonq_p3, "fiber homography in z0 over Q[z1,z2]"),
    "p1n": (_factor_p1n, "homographies in z0 separated by ';'"),
}


# -- output ---------------------------------------------------------------------

def _emit(a, data, text: str) -> None:
    print(json.dumps(data, indent=2) if a.json else text)


def _cert_text(c: FactorizationCertificate) -> str:
    lines = [f"target: {c.target}", "factors (application order):"]
    for i, f in enumerate(c.factors, 1):
        src = f" [{f.source}]" if f.source else ""
        lines.append(f"  {i}. {f.tag}{src} {f.map}")
    bound = f" (bound {c.paper_bound}, {c.bound_class})" if c.paper_bound is not None else ""
    lines.append(f"count: {c.achieved_count}{bound}")
    lines.append(f"verified: {str(c.verified).lower()}")
    lines += [f"flag: {fl}" for fl in c.flags]
    return "\n".join(lines)


def _print_cert(a, c: FactorizationCertificate) -> int:
    _emit(a, c.to_json(), _cert_text(c))
    return EXIT_OK if c.verified else EXIT_FAIL


# -- verbs ----------------------------------------------------------------------

def cmd_degree(a) -> int:
    phi = parse_map(a.map)
    _emit(a, {"map": str(phi), "degree": phi.degree}, str(phi.degree))
    return EXIT_OK


def cmd_compose(a) -> int:
    maps = [parse_map(t) for t in a.maps]
    # written phi_1 o phi_2 o ... ; the last one acts first
    res = compose_all(maps[::-1])
    _emit(a, {"maps": [str(m) for m in maps], "result": str(res), "degree": res.degree}, str(res))
    return EXIT_OK


def cmd_involution(a) -> int:
    phi = parse_map(a.map)
    chk = check_involution(phi)
    data = {"map": str(phi), "involution": chk.is_involution, "identity": chk.trivial,
            "diagnostic": chk.diagnostic}
    _emit(a, data, str(chk.is_involution).lower())
    return EXIT_OK


def cmd_factor(a) -> int:
    return _print_cert(a, FACTOR_KINDS[a.kind][0](a))


def cmd_bound(a) -> int:
    params = {}
    for item in a.params:
        k, sep, v = item.partition("=")
        if not sep:
            raise BoundError(f"expected name=value, got {item!r}")
        params[k.strip()] = int(v)
    b = paper_bound(a.bound_class, **params)
    _emit(a, {"class": a.bound_class, "params": params, "bound": b}, str(b))
    return EXIT_OK


def cmd_corpus(a) -> int:
    if a.action == "list":
        ids = list(entry_ids())
        if a.json:
            _emit(a, [{"id": i, "bidegree": list(load_entry(i).bidegree), "bound": load_entry(i).bound}
                      for i in ids], "")
        else:
            print("\n".join(ids))
        return EXIT_OK
    if a.action == "export":
        data = [certificate_for(i).to_json() | {"id": i} for i in entry_ids()]
        print(json.dumps(data, indent=2))
        return EXIT_OK
    if a.all:
        if a.id:
            raise _UsageError("give an entry id or --all, not both")
        rep = verify_all(a.jobs)
        if a.json:
            _emit(a, rep.to_json(), "")
        else:
            for r in rep.rows:
                status = "ok" if r.composes else "FAIL"
                warn = "" if r.within_bound else "  (over bound)"
                print(f"{r.id:9} {status:4} count {r.computed_count:3} / {r.stated_bound}{warn}")
            print(rep.summary())
        return EXIT_OK if not rep.failures else EXIT_FAIL
    if not a.id:
        raise _UsageError("corpus verify needs an entry id or --all")
    r = verify_entry(a.id)
    text = "\n".join([f"id: {r.id}", f"composes: {str(r.composes).lower()}",
                      f"factors: {', '.join(r.factor_kinds)}",
                      f"count: {r.computed_count} (stated bound {r.stated_bound})"]
                     + [f"flag: {fl}" for fl in r.flags])
    _emit(a, r.to_json(), text)
    return EXIT_OK if r.composes else EXIT_FAIL


def _random_checks(kind: str, count: int, seed: int | None) -> tuple[int, list[str], str]:
    """Passed count, failing inputs and a digest of every generated input."""
    from . import samples
    from .factorizers.polyaut import reduced_word_degree
    r = samples.rng(seed)
    failures = []
    digest = hashlib.sha256()
    for k in range(count):
        if kind == "homography":
            h = samples.random_homography(r)
            ok = _factor_cert_ok(homography_to_projmap(h),
                                 [homography_to_projmap(g) for g in two_involution_factorization(h)])
            label = str(h)
        elif kind == "pgl2poly":
            h = samples.random_poly_homography(r, 2, (1,))
            ok = _factor_cert_ok(lift_coordinate(h, 0, 2),
                                 [lift_coordinate(g, 0, 2) for g in pgl2_polyring_factor(h)], 8)
            label = str(h)
        elif kind == "jonquieres2":
            j = samples.random_jonquieres2(r)
            c = factor_jonquieres2(j)
            ok, label = c.verified and c.achieved_count <= 10, str(j)
        elif kind == "henon":
            phi = samples.random_henon(r, delta=1 if k % 2 == 0 else None)
            c = factor_henon(phi)
            ok, label = c.verified and c.achieved_count <= c.paper_bound, str(phi)
        else:
            w = samples.random_reduced_word(r, "AE" if kind == "words" else "H")
            try:
                reduced_word_degree(w, verify=True)
                ok = True
            except ReducedWordError:
                ok = False
            label = " ; ".join(f"{t}:{f}" for t, f in w.factors)
        digest.update(label.encode() + b"\n")
        if not ok:
            failures.append(label)
    return count - len(failures), failures, digest.hexdigest()[:16]


def _factor_cert_ok(target, maps, limit=None) -> bool:
    c = make_certificate(target, [Factor(m, INVOLUTION) for m in maps])
    return c.verified and (limit is None or len(maps) <= limit)


RANDOM_KINDS = ("homography", "pgl2poly", "jonquieres2", "henon", "words", "words-h")


def cmd_verify(a) -> int:
    if a.random:
        if a.certificate:
            raise _UsageError("give a certificate file or --random, not both")
        passed, failures, digest = _random_checks(a.random, a.count, a.seed)
        data = {"kind": a.random, "count": a.count, "seed": a.seed, "passed": passed,
                "failures": failures, "inputDigest": digest}
        _emit(a, data, f"{passed}/{a.count} passed (inputs {digest})"
              + "".join(f"\nFAIL {f}" for f in failures))
        return EXIT_OK if not failures else EXIT_FAIL
    if not a.certificate:
        raise _UsageError("verify needs a certificate file ('-' for stdin) or --random")
    text = sys.stdin.read() if a.certificate == "-" else open(a.certificate).read()
    try:
        cert = FactorizationCertificate.from_json(text)
    except (json.JSONDecodeError, KeyError, TypeError) as exc:
        raise ParseError(f"malformed certificate: {exc}") from None
    rep = verify_certificate(cert)
    lines = [f"composes: {str(rep.composes).lower()}"]
    for fc in rep.factors:
        lines.append(f"  {fc.index + 1}. {'pass' if fc.passed else 'FAIL'} {fc.kind} cost {fc.cost}"
                     + (f" ({fc.diagnostic})" if fc.diagnostic else ""))
    bound = f" (bound {rep.paper_bound})" if rep.paper_bound is not None else ""
    lines += [f"count: {rep.achieved_count}{bound}", f"verified: {str(rep.verified).lower()}"]
    lines += [f"flag: {fl}" for fl in rep.flags]
    _emit(a, rep.to_json(), "\n".join(lines))
    return EXIT_OK if rep.verified else EXIT_FAIL


# -- parser ---------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = _common()
    p = _Parser(prog="cremona", description="Birational maps of projective space and their "
                "factorization into involutions.", parents=[common])
    sub = p.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    s = sub.add_parser("degree", parents=[common], help="degree of a map")
    s.add_argument("map")
    s.set_defaults(func=cmd_degree)

    s = sub.add_parser("compose", parents=[common], help="compose maps written left to right")
    s.add_argument("maps", nargs="+")
    s.set_defaults(func=cmd_compose)

    s = sub.add_parser("involution", parents=[common], help="is the map an involution")
    s.add_argument("map")
    s.set_defaults(func=cmd_involution)

    s = sub.add_parser("factor", parents=[common], help="factor into involutions")
    kinds = s.add_subparsers(dest="kind", required=True, parser_class=_Parser)
    for name, (_, helptext) in FACTOR_KINDS.items():
        k = kinds.add_parser(name, parents=[common], help=helptext)
        k.add_argument("payload")
        if name == "jonq-p3":
            k.add_argument("--psi", action="append", help="plane factor, in application order")
            k.add_argument("--psi-target", help="plane map the factors must compose to")
            k.add_argument("--psi-jonquieres", help="plane part as a de Jonquieres affine pair")
        if name == "p1n":
            k.add_argument("--perm", help="coordinate permutation, e.g. 1,0,2")
        k.set_defaults(func=cmd_factor)

    s = sub.add_parser("corpus", parents=[common], help="tabulated quadratic maps of P^3")
    acts = s.add_subparsers(dest="action", required=True, parser_class=_Parser)
    acts.add_parser("list", parents=[common]).set_defaults(func=cmd_corpus)
    v = acts.add_parser("verify", parents=[common])
    v.add_argument("id", nargs="?")
    v.add_argument("--all", action="store_true")
    v.add_argument("--jobs", type=int, default=None, help="worker processes")
    v.set_defaults(func=cmd_corpus)
    e = acts.add_parser("export", parents=[common])
    e.set_defaults(func=cmd_corpus)

    s = sub.add_parser("bound", parents=[common], help="evaluate a bound formula")
    s.add_argument("bound_class")
    s.add_argument("params", nargs="*", help="name=value")
    s.set_defaults(func=cmd_bound)

    s = sub.add_parser("verify", parents=[common], help="check a certificate or run random checks")
    s.add_argument("certificate", nargs="?")
    s.add_argument("--random", choices=RANDOM_KINDS)
    s.add_argument("--count", type=int, default=100)
    s.set_defaults(func=cmd_verify)
    return p


def run(argv: Sequence[str] | None = None) -> int:
    try:
        a = build_parser().parse_args(argv)
    except _UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    for attr, default in (("json", False), ("seed", None), ("all", False), ("id", None),
                          ("jobs", None)):
        if not hasattr(a, attr):
            setattr(a, attr, default)
    try:
        return a.func(a)
    except _UsageError as exc:
        print(f"cremona: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except _USER_ERRORS as exc:
        print(f"cremona: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
