import json
import subprocess
import sys
from importlib import resources

import jsonschema
import pytest

from cremona.cli import run


def schema(name):
    return json.loads((resources.files("cremona") / "schemas" / name).read_text())


def call(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_degree(capsys):
    assert call(capsys, "degree", "(z1*z2:z0*z2:z0*z1)")[:2] == (0, "2\n")


def test_involution(capsys):
    assert call(capsys, "involution", "(z1:z2:z0)")[:2] == (0, "false\n")
    assert call(capsys, "involution", "(z1*z2:z0*z2:z0*z1)")[:2] == (0, "true\n")


def test_compose_order(capsys):
    # maps are written left to right as in f o g; the last one acts first
    code, out, _ = call(capsys, "compose", "(z0+z1:z1)", "(2*z0:z1)")
    assert code == 0 and out.strip() == "(2*z0+z1:z1)"


def test_corpus_verify_all(capsys):
    code, out, _ = call(capsys, "corpus", "verify", "--all")
    assert code == 0 and out.strip().splitlines()[-1] == "30/30 composed, 0 failures"


def test_corpus_report_json(capsys):
    code, out, _ = call(capsys, "corpus", "verify", "--all", "--json", "--jobs", "2")
    data = json.loads(out)
    jsonschema.validate(data, schema("corpus_report.schema.json"))
    assert [e["id"] for e in data["entries"]][:2] == ["2_2/f_1", "2_2/f_2"]


def test_corpus_single_entry(capsys):
    code, out, _ = call(capsys, "corpus", "verify", "2_2/f_4")
    assert code == 0 and "count: 23" in out


def test_factor_homography_json(capsys):
    code, out, _ = call(capsys, "factor", "homography", "(2*z0+1)/(z0+1)", "--json")
    data = json.loads(out)
    jsonschema.validate(data, schema("certificate.schema.json"))
    assert code == 0 and data["verified"] and len(data["factors"]) <= 2


def test_factor_henon(capsys):
    code, out, _ = call(capsys, "--json", "factor", "henon", "(z1, z1^2-z0)")
    data = json.loads(out)
    assert code == 0 and len(data["factors"]) == 2 and data["paperBound"] == 2


def test_factor_monomial(capsys):
    code, out, _ = call(capsys, "factor", "monomial", "[0,1;1,0]", "--json")
    assert code == 0 and len(json.loads(out)["factors"]) == 1


@pytest.mark.parametrize("argv", [
    ["factor", "homography", "(2*z0+1)/(z0+1)"],
    ["factor", "sl", "[2,1;1,1]"],
    ["factor", "pgl2poly", "(z1*z0+1)/(z0)"],
    ["factor", "pgl2poly", "(z1^2*z0+z1)/(3*z0+z1)"],
    ["factor", "monomial", "[1,1;0,1]"],
    ["factor", "henon", "(z1, z1^3-2*z0)"],
    ["factor", "jonquieres2", "((z1*z0+1)/z0, z1+1)"],
    ["factor", "jn", "(z0+z1*z2, z1+z2, z2+1)"],
    ["factor", "jonq-p3", "z1*z2*z0", "--psi", "(z1*z2:z0*z2:z0*z1)"],
    ["factor", "p1n", "z0+1; 2*z0"],
    ["factor", "p1n", "z0; z0; 1/z0", "--perm", "1,0,2"],
])
def test_text_and_json_agree(capsys, argv):
    code, text, _ = call(capsys, *argv)
    code_j, js, _ = call(capsys, *argv, "--json")
    data = json.loads(js)
    jsonschema.validate(data, schema("certificate.schema.json"))
    assert code == code_j == 0 and data["verified"]
    assert f"count: {data['achievedInvolutionCount']} " in text
    assert "verified: true" in text


def test_certificate_file_round_trip(capsys, tmp_path):
    _, out, _ = call(capsys, "factor", "jonquieres2", "((z1*z0+1)/z0, z1+1)", "--json")
    path = tmp_path / "cert.json"
    path.write_text(out)
    assert call(capsys, "verify", str(path))[0] == 0
    data = json.loads(out)
    data["factors"][0]["map"] = "(z1:z0:z2)"
    path.write_text(json.dumps(data))
    code, text, _ = call(capsys, "verify", str(path))
    assert code == 1 and "composes: false" in text


@pytest.mark.parametrize("argv", [
    ["nope"],
    ["degree"],
    ["degree", "(z0:z1", "--json"],
    ["degree", "(z0:z1)", "--bogus"],
    ["factor", "henon", "(z0+1, z1)"],
    ["factor", "monomial", "[2,0;0,1]"],
    ["corpus", "verify", "9_9/f_1"],
    ["corpus", "verify"],
    ["bound", "bir_p2"],
    ["bound", "nope", "d=1"],
    ["verify"],
])
def test_usage_errors_exit_2(capsys, argv):
    code, _, err = call(capsys, *argv)
    assert code == 2 and err


def test_bound(capsys):
    assert call(capsys, "bound", "bir_p2", "d=3")[:2] == (0, "28\n")
    assert call(capsys, "bound", "bidegree_2l", "l=4")[:2] == (0, "37\n")


@pytest.mark.parametrize("kind", ["homography", "pgl2poly", "henon", "words", "words-h"])
def test_random_verification_is_reproducible(capsys, kind):
    a = call(capsys, "verify", "--random", kind, "--count", "10", "--seed", "7", "--json")
    b = call(capsys, "verify", "--random", kind, "--count", "10", "--seed", "7", "--json")
    c = call(capsys, "verify", "--random", kind, "--count", "10", "--seed", "8", "--json")
    assert a == b and a[0] == 0
    assert json.loads(a[1])["inputDigest"] != json.loads(c[1])["inputDigest"]


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "cremona", "degree", "(z1*z2:z0*z2:z0*z1)"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "2\n"
