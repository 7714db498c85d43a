import json

import pytest

from tangent_slopes.cli import main
from tangent_slopes.corpus import bundled_corpus_dir, ingest_corpus
from tangent_slopes.errors import CertificationError, TranslateOfSubtorus
from tangent_slopes.poly import parse_poly
from tangent_slopes.report import (BRANCH_TANGENT, SCOPE_WARNING, TANGENT_SUBTORUS,
                                   dehn_exclusion_report, recertify_report)
from tangent_slopes.verify import run_verification_suite

from conftest import NODE, P


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_report_line():
    rep = dehn_exclusion_report(P("x + y - 2"), 5, 4)
    doc = rep.to_json()
    assert [e["slope"] for e in doc["excluded_slopes"]] == [[1, 1]]
    assert doc["excluded_slopes"][0]["reasons"][0]["kind"] == TANGENT_SUBTORUS
    assert doc["curve_singularities"] == []
    assert doc["theoretical_log_bound"]["const"] == "600001"
    assert SCOPE_WARNING in doc["warnings"]
    assert recertify_report(doc) == 1


def test_report_node(node):
    doc = dehn_exclusion_report(node, 5, 6).to_json()
    slopes = {tuple(e["slope"]) for e in doc["excluded_slopes"]}
    assert slopes == {(1, 1), (-1, 1)}
    assert all(r["kind"] == BRANCH_TANGENT for e in doc["excluded_slopes"] for r in e["reasons"])
    assert any("torsion of order 1" in w for w in doc["warnings"])
    assert doc["torsion_diagnostics"][0]["hypothesis_violated"]


def test_report_translate():
    with pytest.raises(TranslateOfSubtorus):
        dehn_exclusion_report(P("x^2*y^3 - 5"), 5, 4)


def test_report_monotone_in_radius():
    f = P("x^2*y + x*y^2 - 5*x*y + 2")
    small = {tuple(e["slope"]) for e in dehn_exclusion_report(f, 2, 2).to_json()["excluded_slopes"]}
    big = {tuple(e["slope"]) for e in dehn_exclusion_report(f, 3, 2).to_json()["excluded_slopes"]}
    assert small <= big
    assert all(max(abs(p), abs(q)) <= 2 for p, q in small)


def test_recertify_detects_tampering():
    doc = dehn_exclusion_report(P("x + y - 2"), 2, 2).to_json()
    doc["curve"]["poly"] = "x + y - 3"
    with pytest.raises(CertificationError):
        recertify_report(doc)


def test_cli_exit_codes(capsys, tmp_path):
    assert run(capsys, "analyze", "--expr", "x + y - 2")[0] == 0
    assert run(capsys, "analyze", "--expr", "x + w")[0] == 2
    assert run(capsys, "analyze", "--expr", "x^2 - 2*x*y + y^2")[0] == 2
    assert run(capsys, "analyze", "--poly", str(tmp_path / "missing.txt"))[0] == 2
    code, out = run(capsys, "scan", "--expr", "x^2*y^3 - 5", "--max-slope", "5", "--json")
    assert code == 3 and json.loads(out)["error"]["slope"] == [2, 3]
    assert run(capsys, "scan", "--expr", "x + y", "--max-slope", "0")[0] == 2


def test_cli_reads_file_and_stdin(capsys, tmp_path, monkeypatch):
    path = tmp_path / "f.txt"
    path.write_text("x + y - 2\n")
    a = run(capsys, "analyze", "--poly", str(path), "--json")[1]
    import io
    monkeypatch.setattr("sys.stdin", io.StringIO("x + y - 2"))
    b = run(capsys, "analyze", "--poly", "-", "--json")[1]
    assert a == b
    doc = json.loads(a)
    assert doc["degree"] == 1 and doc["height"] == {"kind": "exact-log", "arg": "2"}


def test_cli_json_has_no_floats(capsys):
    _, out = run(capsys, "report", "--expr", NODE, "--max-slope", "3", "--torsion", "4", "--json")

    def walk(v):
        assert not isinstance(v, float)
        if isinstance(v, dict):
            for x in v.values():
                walk(x)
        elif isinstance(v, list):
            for x in v:
                walk(x)
    walk(json.loads(out))


def test_cli_deterministic_serial_vs_parallel(capsys):
    args = ["scan", "--expr", "x^2*y + x*y^2 - 3*x*y + 1", "--max-slope", "3", "--any-translate", "--json"]
    a = run(capsys, *args, "--workers", "1")[1]
    b = run(capsys, *args, "--workers", "2")[1]
    c = run(capsys, *args, "--workers", "1")[1]
    assert a == b == c


def test_cli_singular(capsys):
    code, out = run(capsys, "singular", "--expr", NODE, "--json")
    doc = json.loads(out)
    assert code == 0 and len(doc["singular_points"]) == 1
    assert sorted(doc["singular_points"][0]["tangent_slopes"]) == [[-1, 1], [1, 1]]


def test_cli_verify(capsys):
    code, out = run(capsys, "verify", "--seed", "5", "--samples", "10", "--json")
    assert code == 0 and json.loads(out)["passed"]


def test_verify_suite_detects_corrupted_kernel():
    from tangent_slopes.poly import resultant

    def off_by_sign(f, g, v="y"):
        r = resultant(f, g, v)
        return type(r)(tuple(-c for c in r.as_list()), r.var)
    rep = run_verification_suite(3, 10, kernels={"resultant": off_by_sign})
    assert not rep.passed
    bad = next(r for r in rep.results if r.name == "resultant_matches_sylvester")
    assert bad.failures > 0 and "f" in bad.counterexample

    def lose_a_root(u, width=None):
        from tangent_slopes.roots import isolate_roots
        return isolate_roots(u, width)[1:]
    rep = run_verification_suite(3, 10, kernels={"isolate_roots": lose_a_root})
    assert not next(r for r in rep.results if r.name == "root_isolation_disjoint").passed


def test_verify_outcome_independent_of_seed():
    for seed in (1, 2, 42):
        assert run_verification_suite(seed, 15).passed
    assert run_verification_suite(9, 12).to_json() == run_verification_suite(9, 12).to_json()


def test_corpus_bundled():
    entries, errors = ingest_corpus()
    assert errors == []
    (fig8,) = [e for e in entries if e.name == "figure-eight"]
    assert (fig8.poly.degree, fig8.poly.degree_x, fig8.poly.degree_y) == (9, 8, 2)
    assert fig8.summary()["height"] == {"kind": "exact-log", "arg": "2"}
    assert bundled_corpus_dir().is_dir()


def test_corpus_empty_and_bad(tmp_path):
    assert ingest_corpus(tmp_path) == ([], [])
    (tmp_path / "a_ok.json").write_text(json.dumps({"name": "line", "source": "made up", "poly": "x + y - 2"}))
    (tmp_path / "b_square.json").write_text(json.dumps({"name": "sq", "source": "s", "poly": "x^2 - 2*x*y + y^2"}))
    (tmp_path / "c_parse.json").write_text(json.dumps({"name": "bad", "source": "s", "poly": "x + q"}))
    (tmp_path / "d_json.json").write_text("{not json")
    (tmp_path / "e_field.json").write_text(json.dumps({"name": "nofield", "poly": "x + y"}))
    entries, errors = ingest_corpus(tmp_path)
    assert [e.name for e in entries] == ["line"]
    reasons = {e.file: e.reason for e in errors}
    assert set(reasons) == {"b_square.json", "c_parse.json", "d_json.json", "e_field.json"}
    assert "squarefree" in reasons["b_square.json"]


def test_cli_corpus(capsys, tmp_path):
    code, out = run(capsys, "corpus", "list", "--json")
    assert code == 0 and json.loads(out)["entries"][0]["name"] == "figure-eight"
    (tmp_path / "line.json").write_text(json.dumps({"name": "line", "source": "s", "poly": "x + y - 2"}))
    code, out = run(capsys, "corpus", "run", str(tmp_path), "--max-slope", "2", "--torsion", "2", "--json")
    doc = json.loads(out)
    assert code == 0 and doc["runs"][0]["report"]["excluded_slopes"][0]["slope"] == [1, 1]
