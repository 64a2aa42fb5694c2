import json

import pytest

from fewweight import cli, verifier
from fewweight.codes import CodeSummary


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_field_info(capsys, tmp_path):
    path = tmp_path / "f.json"
    code, out, _ = run(capsys, "field-info", "-p", "3", "-m", "4", "--json", str(path))
    assert code == 0 and "F_3^4" in out
    info = json.loads(path.read_text())
    assert info["q"] == 81 and info["modulus_coeffs"] == [1, 0, 1, 1, 1]
    assert [s["degree"] for s in info["subfields"]] == [1, 2, 4]


@pytest.mark.parametrize("argv", [
    ["field-info", "-p", "4", "-m", "2"],
    ["field-info", "-m", "4", "--modulus", "x^4+1"],
    ["field-info", "-m", "30", "--size-cap", "1000"],
    ["spectrum", "-m", "4", "--fn", "cubic lambda=1"],
    ["spectrum", "-m", "4", "--fn", "quadprod lambda=1"],
    ["spectrum", "-m", "4", "--fn", "table file=/nonexistent"],
    ["construct", "-m", "4", "--fn", "zero", "--set", "gold"],
    ["verify", "-m", "4", "--table", "T3"],
    ["verify", "-m", "4", "--table", "T99"],
    ["examples", "--only", "9.9"],
])
def test_configuration_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2


def test_spectrum_monomial(capsys):
    code, out, _ = run(capsys, "spectrum", "-m", "4", "--fn", "monomial24 lambda=1")
    assert code == 0
    assert "Parseval   ok" in out and "prediction four-value monomial distribution: match" in out


def test_spectrum_quadprod_and_gold(capsys):
    code, out, _ = run(capsys, "spectrum", "-m", "5", "--fn", "quadprod lambda=-1 u=-1 v=1")
    assert code == 0 and "case I): match" in out
    code, out, _ = run(capsys, "spectrum", "-m", "8", "--fn", "gold lambda=1 h=2")
    assert code == 0 and "Weil-sum closed form: match" in out


def test_spectrum_table_file(capsys, tmp_path):
    path = tmp_path / "f.txt"
    path.write_text(" ".join(["0"] * 9))
    code, out, _ = run(capsys, "spectrum", "-m", "2", "--fn", "table file=%s" % path)
    assert code == 0 and "degenerate" in out


def test_construct_db(capsys, tmp_path):
    path = tmp_path / "c.json"
    code, out, _ = run(capsys, "construct", "-m", "4", "--fn", "monomial24 lambda=1",
                       "--set", "Db b=1", "--check-direct", "--json", str(path))
    assert code == 0
    assert "[20, 4, 12]" in out and "Griesmer-optimal" in out and "direct     agrees" in out
    payload = json.loads(path.read_text())
    assert payload["enumerator"] == "1 + 60z^12 + 20z^18" and payload["route"] == "walsh"


def test_construct_halfset_and_gold(capsys):
    code, out, _ = run(capsys, "construct", "-m", "4", "--fn", "quadprod lambda=1 u=-1 v=1",
                       "--set", "halfset")
    assert code == 0 and "[13, 4, 6]" in out
    code, out, _ = run(capsys, "construct", "-p", "5", "-m", "6", "--modulus", "x^6+x^4-x^3+x^2+2",
                       "--fn", "gold lambda=a^3 h=1")
    assert code == 0 and "1 + 144z^2500 + 15000z^2900 + 480z^3000" in out


def test_construct_empty_set(capsys):
    code, out, _ = run(capsys, "construct", "-m", "3", "--fn", "zero", "--set", "Db b=1")
    assert code == 0 and "empty" in out


def test_verify_pass(capsys):
    code, out, _ = run(capsys, "verify", "-m", "4", "--table", "T2", "--exhaustive")
    assert code == 0 and "72/72" in out
    code, out, _ = run(capsys, "verify", "-p", "5", "-m", "6", "--table", "T12", "--samples", "3")
    assert code == 0 and "moment-solved" in out


def test_verify_mismatch_exit_1(capsys, monkeypatch):
    real = verifier.build_code_direct

    def skewed(D):
        cs = real(D)
        w = min(cs.weight_dist)
        dist = dict(cs.weight_dist)
        dist[w] -= 1
        dist[w + 1] = 1
        return CodeSummary(cs.n, cs.p, cs.dimension, dist, cs.injective)

    monkeypatch.setattr(verifier, "build_code_direct", skewed)
    code, out, _ = run(capsys, "verify", "-m", "5", "--table", "T9", "--samples", "2")
    assert code == 1 and "COUNTEREXAMPLE distribution-mismatch" in out


def test_verify_json_independent_of_jobs(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    run(capsys, "verify", "-m", "5", "--table", "T5", "--samples", "6", "--jobs", "1", "--json", str(a))
    run(capsys, "verify", "-m", "5", "--table", "T5", "--samples", "6", "--jobs", "2", "--json", str(b))
    assert a.read_bytes() == b.read_bytes()


def test_examples_only(capsys, tmp_path):
    path = tmp_path / "e.json"
    code, out, _ = run(capsys, "examples", "--only", "2.13", "--only", "3.7,2.16", "--json", str(path))
    assert code == 0 and "3/3 examples match" in out
    assert "stated optimality not confirmed" in out
    payload = json.loads(path.read_text())
    assert payload["matched"] == 3 and all(r["match"] for r in payload["results"])
