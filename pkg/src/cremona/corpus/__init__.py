"""Tabulated quadratic maps of P^3 with their published involution decompositions.

Each entry lives in ``data/<bidegree>/<name>.txt``::

    id: 2_2/f_7
    bidegree: (2,2)
    bound: 23
    orientation: apply-order
    target: (...)
    factor1: (...)      # applied first
    factor2: (...)

Lines starting with ``#`` are comments.  Factors are stored in application
order, the reverse of the usual left-to-right composition notation.
"""

from __future__ import annotations

import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from functools import lru_cache
from importlib import resources

from ..certificate import (
    KIND_FAIL, KIND_IDENTITY, KIND_LINEAR, KIND_MONOMIAL, Factor, FactorizationCertificate,
    classify_factor, count_orbit, count_plain,
)
from ..maps import DegenerateCompositionError, ProjMap, compose, identity, parse_map, proj_equal

__all__ = [
    "CorpusEntry", "CorpusRow", "CorpusReport", "CorpusFormatError", "entry_ids", "load_entry",
    "load_all", "parse_entry", "format_entry", "verify_entry", "verify_all", "certificate_for",
]


class CorpusFormatError(ValueError):
    pass


@dataclass(frozen=True)
class CorpusEntry:
    id: str
    bidegree: tuple[int, int]
    bound: int
    target: ProjMap
    factors: tuple[ProjMap, ...]

    def composed(self) -> ProjMap:
        acc = identity(self.target.n)
        for f in self.factors:
            acc = compose(f, acc)
        return acc


_HEADER = re.compile(r"^(id|bidegree|bound|orientation|target|factor(\d+))\s*:\s*(.*)$")


def parse_entry(text: str) -> CorpusEntry:
    """Parse one entry file."""
    fields: dict[str, str] = {}
    factors: dict[int, str] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        m = _HEADER.match(line)
        if not m:
            raise CorpusFormatError(f"line {lineno}: cannot parse {raw!r}")
        key, num, value = m.group(1), m.group(2), m.group(3).strip()
        if num is not None:
            if int(num) in factors:
                raise CorpusFormatError(f"line {lineno}: duplicate factor{num}")
            factors[int(num)] = value
        else:
            if key in fields:
                raise CorpusFormatError(f"line {lineno}: duplicate {key}")
            fields[key] = value
    for key in ("id", "bidegree", "bound", "orientation", "target"):
        if key not in fields:
            raise CorpusFormatError(f"missing header {key!r}")
    if fields["orientation"] != "apply-order":
        raise CorpusFormatError(f"unsupported orientation {fields['orientation']!r}")
    if sorted(factors) != list(range(1, len(factors) + 1)):
        raise CorpusFormatError("factors must be numbered 1..k without gaps")
    bm = re.fullmatch(r"\(\s*(\d+)\s*,\s*(\d+)\s*\)", fields["bidegree"])
    if not bm:
        raise CorpusFormatError(f"bad bidegree {fields['bidegree']!r}")
    return CorpusEntry(
        id=fields["id"],
        bidegree=(int(bm.group(1)), int(bm.group(2))),
        bound=int(fields["bound"]),
        target=parse_map(fields["target"]),
        factors=tuple(parse_map(factors[k]) for k in sorted(factors)),
    )


def format_entry(e: CorpusEntry) -> str:
    """Canonical text of an entry (comments are not preserved)."""
    lines = [f"id: {e.id}", f"bidegree: ({e.bidegree[0]},{e.bidegree[1]})", f"bound: {e.bound}",
             "orientation: apply-order", f"target: {e.target}"]
    lines += [f"factor{i}: {f}" for i, f in enumerate(e.factors, 1)]
    return "\n".join(lines) + "\n"


def _data_root():
    return resources.files(__package__) / "data"


def _sort_key(eid: str):
    b, f = eid.split("/")
    return (b, int(f.split("_")[1]))


@lru_cache(maxsize=None)
def entry_ids() -> tuple[str, ...]:
    ids = []
    for d in _data_root().iterdir():
        if d.is_dir():
            ids += [f"{d.name}/{p.name[:-4]}" for p in d.iterdir() if p.name.endswith(".txt")]
    return tuple(sorted(ids, key=_sort_key))


def entry_text(eid: str) -> str:
    if eid not in entry_ids():
        raise KeyError(f"unknown corpus entry {eid!r}")
    b, f = eid.split("/")
    return (_data_root() / b / f"{f}.txt").read_text()


@lru_cache(maxsize=None)
def load_entry(eid: str) -> CorpusEntry:
    e = parse_entry(entry_text(eid))
    if e.id != eid:
        raise CorpusFormatError(f"file for {eid} declares id {e.id}")
    return e


def load_all() -> list[CorpusEntry]:
    return [load_entry(i) for i in entry_ids()]


@dataclass
class CorpusRow:
    id: str
    bidegree: tuple[int, int]
    composes: bool
    factor_kinds: list[str]
    factor_costs: list[int]
    nonlinear_involutive: bool
    computed_count: int
    plain_count: int
    stated_bound: int
    within_bound: bool
    flags: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        d = asdict(self)
        d["bidegree"] = list(self.bidegree)
        return d


@dataclass
class CorpusReport:
    rows: list[CorpusRow]

    @property
    def composed(self) -> int:
        return sum(r.composes for r in self.rows)

    @property
    def failures(self) -> list[str]:
        return [r.id for r in self.rows if not r.composes]

    @property
    def exceedances(self) -> list[str]:
        return [r.id for r in self.rows if not r.within_bound]

    @property
    def non_involutive(self) -> list[str]:
        return [r.id for r in self.rows if not r.nonlinear_involutive]

    def by_bidegree(self) -> dict[tuple[int, int], int]:
        out: dict[tuple[int, int], int] = {}
        for r in self.rows:
            out[r.bidegree] = out.get(r.bidegree, 0) + 1
        return out

    def summary(self) -> str:
        return f"{self.composed}/{len(self.rows)} composed, {len(self.failures)} failures"

    def to_json(self) -> dict:
        return {
            "entries": [r.to_json() for r in self.rows],
            "composed": self.composed,
            "total": len(self.rows),
            "failures": self.failures,
            "boundExceedances": self.exceedances,
            "nonInvolutiveNonlinearFactors": self.non_involutive,
        }


def _verify(e: CorpusEntry) -> CorpusRow:
    flags = []
    try:
        composes = proj_equal(e.composed(), e.target)
    except DegenerateCompositionError as exc:
        composes = False
        flags.append(str(exc))
    kinds, costs = [], []
    for i, f in enumerate(e.factors, 1):
        kind, cost, diag = classify_factor(f)
        kinds.append(kind)
        costs.append(cost)
        if kind in (KIND_MONOMIAL, KIND_FAIL):
            flags.append(f"factor{i} {f}: {diag}")
    nonlinear_ok = all(k not in (KIND_MONOMIAL, KIND_FAIL) for k in kinds)
    count = count_orbit([f.degree for f in e.factors], costs, e.target.n)
    within = count <= e.bound
    if not within:
        flags.append(f"count {count} exceeds stated bound {e.bound}")
    return CorpusRow(e.id, e.bidegree, composes, kinds, costs, nonlinear_ok, count,
                     count_plain(costs), e.bound, within, flags)


def verify_entry(entry: str | CorpusEntry) -> CorpusRow:
    """Recompose one entry and classify and count its factors."""
    e = load_entry(entry) if isinstance(entry, str) else entry
    return _verify(e)


def verify_all(jobs: int | None = None) -> CorpusReport:
    """Verify every entry, optionally across ``jobs`` worker processes; rows sorted by id."""
    ids = entry_ids()
    if jobs and jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            rows = list(ex.map(verify_entry, ids))
    else:
        rows = [verify_entry(i) for i in ids]
    return CorpusReport(rows)


def certificate_for(entry: str | CorpusEntry) -> FactorizationCertificate:
    """The published decomposition as a certificate under the orbit counting convention."""
    from ..certificate import INVOLUTION, LIFTED, LINEAR, make_certificate
    e = load_entry(entry) if isinstance(entry, str) else entry
    fs = []
    for f in e.factors:
        kind = classify_factor(f)[0]
        tag = INVOLUTION if kind in ("involution", KIND_IDENTITY) else (
            LINEAR if f.degree == 1 else LIFTED)
        fs.append(Factor(f, tag))
    return make_certificate(e.target, fs, bound_class=f"bidegree_2l", paper_bound=e.bound,
                            counting="orbit")
