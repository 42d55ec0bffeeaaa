import json
from importlib import resources

import jsonschema
import pytest

from cremona.corpus import (
    CorpusFormatError, certificate_for, entry_ids, entry_text, format_entry, load_all, load_entry,
    parse_entry, verify_all, verify_entry,
)
from cremona.maps import identity, is_involution_map, parse_map


@pytest.fixture(scope="module")
def report():
    return verify_all()


def test_ids_and_rollup(report):
    assert len(entry_ids()) == 30
    assert report.by_bidegree() == {(2, 2): 8, (2, 3): 11, (2, 4): 11}
    assert entry_ids()[0] == "2_2/f_1" and entry_ids()[-1] == "2_4/f_11"


def test_every_entry_composes(report):
    assert report.failures == []
    assert report.composed == 30


def test_counts_within_stated_bounds(report):
    assert report.exceedances == []


@pytest.mark.parametrize("eid, count", [("2_2/f_4", 23), ("2_2/f_5", 22), ("2_2/f_6", 21),
                                        ("2_2/f_7", 21)])
def test_worked_counts(eid, count):
    assert verify_entry(eid).computed_count == count


def test_canonical_round_trip():
    for e in load_all():
        text = format_entry(e)
        again = parse_entry(text)
        assert again == e
        assert format_entry(again) == text


def test_single_factor_entries_are_involutions():
    for eid in ("2_2/f_1", "2_2/f_2", "2_2/f_3"):
        e = load_entry(eid)
        assert len(e.factors) == 1 and is_involution_map(e.target)


def test_known_targets():
    assert load_entry("2_2/f_7").target == parse_map("(z0*z3-z1*z2 : z1*z3 : z2*z3 : z3^2)")
    assert load_entry("2_2/f_8").target == identity(3)
    assert load_entry("2_2/f_8").factors == ()
    assert load_entry("2_4/f_9").target == parse_map("(z3^2 : z1*z3 : z1^2-z2*z3 : z0*z3-z2^2)")


def test_corrupted_entry_fails_to_compose():
    e = load_entry("2_2/f_7")
    bad = parse_entry(format_entry(e).replace(str(e.factors[0]), "(z0:z1:z3:z2)", 1))
    assert not verify_entry(bad).composes


@pytest.mark.parametrize("text", [
    "id: x\nbidegree: (2,2)\nbound: 1\ntarget: (z0:z1)\n",
    "id: x\nbidegree: (2,2)\nbound: 1\norientation: product\ntarget: (z0:z1)\n",
    "id: x\nbidegree: (2,2)\nbound: 1\norientation: apply-order\ntarget: (z0:z1)\nfactor2: (z0:z1)\n",
    "id: x\nbidegree: 2,2\nbound: 1\norientation: apply-order\ntarget: (z0:z1)\n",
    "id: x\nnonsense line\n",
])
def test_malformed_entries(text):
    with pytest.raises(CorpusFormatError):
        parse_entry(text)


def test_unknown_entry():
    with pytest.raises(KeyError):
        entry_text("9_9/f_1")


def test_report_matches_schema(report):
    sch = json.loads((resources.files("cremona") / "schemas" / "corpus_report.schema.json").read_text())
    jsonschema.validate(report.to_json(), sch)


def test_parallel_matches_serial(report):
    assert verify_all(jobs=2).to_json() == report.to_json()


def test_certificates_compose():
    for eid in ("2_2/f_4", "2_3/f_6", "2_4/f_9"):
        cert = certificate_for(eid)
        assert cert.verified and cert.counting == "orbit"
        assert cert.achieved_count == verify_entry(eid).computed_count
