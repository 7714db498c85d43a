"""One test per acceptance criterion; ``pytest -v`` prints a PASS/FAIL line for each."""

import json
import random
import time
from fractions import Fraction

import pytest

from tangent_slopes import dense
from tangent_slopes.algebraic import AlgebraicPoint, monomial_value, solve_system
from tangent_slopes.bounds import (BoundInputs, audit_point, bezout_degree_bound,
                                   habegger_height_bound, theorem_slope_bound_log, verify_lemma31)
from tangent_slopes.cli import main
from tangent_slopes.corpus import ingest_corpus
from tangent_slopes.errors import TranslateOfSubtorus
from tangent_slopes.heights import ExactNumber, LessOrEqual, compare
from tangent_slopes.oracles import (brute_force_tangencies, numeric_torus_solutions,
                                    sylvester_resultant)
from tangent_slopes.poly import parse_poly, resultant
from tangent_slopes.report import BRANCH_TANGENT, TANGENT_SUBTORUS, recertify_report
from tangent_slopes.roots import isolate_roots
from tangent_slopes.tangency import (AnyTranslate, Slope, TorsionUpTo, Unit, branch_tangents,
                                     canonical_slopes, curve_singular_points, slope_scan,
                                     tangency_locus, tangency_poly)
from tangent_slopes.verify import random_poly

from conftest import NODE

FIG8_BUDGET = 300.0  # seconds


def cli_json(capsys, *argv):
    code = main(list(argv) + ["--json"])
    return code, capsys.readouterr().out


def close(a, b, tol=1e-8):
    return abs(complex(a[0]) - complex(b[0])) + abs(complex(a[1]) - complex(b[1])) < tol


def same_numeric(points, numeric):
    mine = [P.approx(25) for P in points]
    if len(mine) != len(numeric):
        return False
    return all(any(close(m, n) for n in numeric) for m in mine)


@pytest.fixture(scope="module")
def fig8():
    (entry,) = [e for e in ingest_corpus()[0] if e.name == "figure-eight"]
    return entry


@pytest.fixture(scope="module")
def fig8_report(fig8):
    """Serial and forced-parallel runs of ``report --max-slope 10 --torsion 12``."""
    from io import StringIO
    import contextlib

    out = {}
    for workers in ("1", "2"):
        buf = StringIO()
        start = time.perf_counter()
        with contextlib.redirect_stdout(buf):
            code = main(["report", "--expr", fig8.text, "--max-slope", "10", "--torsion", "12",
                         "--workers", workers, "--json"])
        out[workers] = (code, buf.getvalue(), time.perf_counter() - start)
    return out


# 1 -------------------------------------------------------------------------------


def test_criterion_01_line_hyperbola_tangency(capsys):
    f = parse_poly("x + y - 2")
    code, out = cli_json(capsys, "scan", "--expr", "x + y - 2", "--max-slope", "5")
    doc = json.loads(out)
    assert code == 0
    assert [(s["p"], s["q"]) for s in doc["slopes"]] == [(1, 1)]
    (entry,) = doc["slopes"]
    assert [AlgebraicPoint.from_json(p).rational_coordinates() for p in entry["points"]] == [(1, 1)]
    assert entry["coset_value"][0]["order"] == 1
    (P,) = [AlgebraicPoint.from_json(p) for p in entry["points"]]
    assert monomial_value(P, 1, 1).is_one()
    # independent oracle over every canonical slope of size <= 5
    for s in canonical_slopes(5):
        numeric = brute_force_tangencies(f, s.p, s.q)
        expected = [(1, 1)] if s == Slope(1, 1) else []
        assert [(round(float(complex(x).real)), round(float(complex(y).real))) for x, y in numeric] == expected


# 2 -------------------------------------------------------------------------------


def test_criterion_02_translate_detection(capsys):
    f = parse_poly("x^2*y^3 - 5")
    assert tangency_poly(f, Slope(2, 3)).is_zero()
    with pytest.raises(TranslateOfSubtorus) as info:
        tangency_locus(f, Slope(2, 3))
    assert info.value.slope == Slope(2, 3)
    with pytest.raises(TranslateOfSubtorus):
        BoundInputs.from_poly(f)
    code, out = cli_json(capsys, "scan", "--expr", "x^2*y^3 - 5", "--max-slope", "5")
    assert code == 3 and json.loads(out)["error"]["slope"] == [2, 3]
    code, _ = cli_json(capsys, "analyze", "--expr", "x^2*y^3 - 5")
    assert code == 3


# 3 -------------------------------------------------------------------------------


def test_criterion_03_torsion_translate_discrimination(capsys):
    f = parse_poly("x + y - 1")
    (P,) = tangency_locus(f, Slope(1, 1)).points
    assert P.rational_coordinates() == (Fraction(1, 2), Fraction(1, 2))
    mv = monomial_value(P, 1, 1)
    assert list(mv.minpoly.integer_coefficients()) == [-1, 4]  # value 1/4
    for target in (Unit(), TorsionUpTo(100)):
        assert slope_scan(f, 5, target).hits == []
    code, out = cli_json(capsys, "scan", "--expr", "x + y - 1", "--max-slope", "5", "--any-translate")
    doc = json.loads(out)
    # every slope meets some coset tangentially, except where g_{p,q} is x, y or x + y:
    # (1,0) and (0,1) put the point on an axis and (-1,1) gives x + y = 0 against x + y = 1
    missing = {(1, 0), (0, 1), (-1, 1)}
    assert {(s["p"], s["q"]) for s in doc["slopes"]} == {
        (s.p, s.q) for s in canonical_slopes(5)} - missing
    (entry,) = [s for s in doc["slopes"] if (s["p"], s["q"]) == (1, 1)]
    assert entry["coset_value"][0]["is_torsion"] is False
    assert [AlgebraicPoint.from_json(p).rational_coordinates() for p in entry["points"]] == [
        (Fraction(1, 2), Fraction(1, 2))]


# 4 -------------------------------------------------------------------------------


def test_criterion_04_value_height_inequality_suite():
    rng = random.Random(31)
    held = total = 0
    while total < 1000:
        f1, f2 = random_poly(rng, 5, 10, 0.4), random_poly(rng, 5, 10, 0.4)
        P = (Fraction(rng.randint(-10**6, 10**6), rng.randint(1, 10**6)),
             Fraction(rng.randint(-10**6, 10**6), rng.randint(1, 10**6)))
        if f1.is_zero() or f2.is_zero() or (f1.evaluate(*P) == 0 and f2.evaluate(*P) == 0):
            continue
        r = verify_lemma31(f1, f2, P)
        # both sides are single exact logs, so the comparison is integer arithmetic
        assert r.lhs.kind == "exact-log" and r.rhs.kind == "exact-log"
        total += 1
        held += r.holds
    assert held == total == 1000


# 5 -------------------------------------------------------------------------------


def test_criterion_05_bound_calculators(capsys):
    b = BoundInputs.from_poly(parse_poly("x + y - 2"))
    assert habegger_height_bound(b) == ExactNumber(300000)
    assert theorem_slope_bound_log(b) == ExactNumber(600001)
    assert bezout_degree_bound(b) == 1
    code, out = cli_json(capsys, "analyze", "--expr", "x + y - 2")
    bounds = json.loads(out)["bounds"]
    assert bounds["habegger"] == {"kind": "exact-sum", "const": "300000", "logs": []}
    assert bounds["theorem_log"] == {"kind": "exact-sum", "const": "600001", "logs": []}
    assert bounds["bezout_degree"] == 1


# 6 -------------------------------------------------------------------------------


def test_criterion_06_audit_invariant(fig8_report):
    audited = 0
    for text, target in (("x + y - 2", Unit()), ("x + y - 1", AnyTranslate()),
                         ("x + y - 1", TorsionUpTo(100))):
        f = parse_poly(text)
        b = BoundInputs.from_poly(f)
        for r in slope_scan(f, 5, target).hits:
            for si in r.intersections:
                assert audit_point(si.point, b, si.slope).passed
                audited += 1
    assert audited == 1 + (len(canonical_slopes(5)) - 3)
    code, out, _ = fig8_report["1"]
    doc = json.loads(out)
    assert doc["audit"]["failures"] == 0
    f = parse_poly(doc["curve"]["poly"])
    b = BoundInputs.from_poly(f)
    points = [(Slope(*e["slope"]), r["points"]) for e in doc["excluded_slopes"] for r in e["reasons"]
              if r["kind"] == TANGENT_SUBTORUS]
    points += [(Slope(*t["slope"]), [t["point"]]) for t in doc["torsion_translates"]]
    n = 0
    for s, pts in points:
        for pj in pts:
            assert audit_point(AlgebraicPoint.from_json(pj), b, s).passed
            n += 1
    assert n == doc["audit"]["points_audited"]


# 7 -------------------------------------------------------------------------------


def test_criterion_07_singular_branch_fixture(capsys):
    f = parse_poly(NODE)
    (P,) = curve_singular_points(f)
    assert P.rational_coordinates() == (1, 1)
    # (1,-1) and (-1,1) name the same subtorus; the canonical form keeps q > 0
    assert set(branch_tangents(f, P).slopes) == {Slope(1, 1), Slope(1, -1)}
    code, out = cli_json(capsys, "report", "--expr", NODE, "--max-slope", "5", "--torsion", "6")
    doc = json.loads(out)
    assert code == 0
    excluded = {tuple(e["slope"]): {r["kind"] for r in e["reasons"]} for e in doc["excluded_slopes"]}
    assert excluded == {(-1, 1): {BRANCH_TANGENT}, (1, 1): {BRANCH_TANGENT}}
    assert len(doc["torsion_diagnostics"]) == 1 and doc["torsion_diagnostics"][0]["hypothesis_violated"]
    assert any("(1, 1) is torsion of order 1" in w for w in doc["warnings"])


# 8 -------------------------------------------------------------------------------


def test_criterion_08_figure_eight_corpus(fig8, fig8_report):
    code, out, elapsed = fig8_report["1"]
    assert code == 0
    assert elapsed < FIG8_BUDGET
    doc = json.loads(out)
    assert doc["max_slope"] == 10 and doc["torsion_cap"] == 12
    assert doc["audit"]["failures"] == 0
    assert recertify_report(doc) >= len(doc["curve_singularities"])
    f = fig8.poly
    for s in canonical_slopes(5):
        # unit-coset tangencies: the triple-system oracle against the report
        numeric = brute_force_tangencies(f, s.p, s.q)
        certified = [AlgebraicPoint.from_json(pj) for e in doc["excluded_slopes"]
                     if Slope(*e["slope"]) == s for r in e["reasons"] if r["kind"] == TANGENT_SUBTORUS
                     for pj in r["points"]]
        assert same_numeric(certified, numeric)
        # the whole tangency locus against an independent numeric solve
        loc = tangency_locus(f, s)
        assert same_numeric(loc.points + loc.excluded_singular,
                            numeric_torus_solutions(f, tangency_poly(f, s)))
    # torsion translates really sit on roots of unity of the reported order
    for t in doc["torsion_translates"]:
        x, y = AlgebraicPoint.from_json(t["point"]).approx(30)
        p, q = t["slope"]
        m = complex(x) ** p * complex(y) ** q
        assert abs(m ** t["order"] - 1) < 1e-12
        assert all(abs(m ** k - 1) > 1e-6 for k in range(1, t["order"]))


# 9 -------------------------------------------------------------------------------


def test_criterion_09_kernel_oracles():
    rng = random.Random(9)
    checked = 0
    while checked < 100:
        f, g = random_poly(rng, 6, 6, 0.3), random_poly(rng, 6, 6, 0.3)
        if f.degree_y < 1 or g.degree_y < 1:
            continue
        assert resultant(f, g, "y").as_list() == dense.strip(sylvester_resultant(f, g, "y"))
        checked += 1
    for _ in range(100):
        c = [rng.randint(-20, 20) for _ in range(rng.randint(2, 16))]
        while dense.degree(dense.strip(c)) < 1:
            c = [rng.randint(-20, 20) for _ in range(rng.randint(2, 16))]
        boxes = isolate_roots(c)
        assert len(boxes) == dense.degree(dense.squarefree_part(c))
        assert not any(a.intersects(b) for i, a in enumerate(boxes) for b in boxes[i + 1:])


# 10 ------------------------------------------------------------------------------


def test_criterion_10_determinism(capsys, fig8_report):
    runs = {}
    for args in (["scan", "--expr", "x^2*y + x*y^2 - 3*x*y + 1", "--max-slope", "4", "--any-translate"],
                 ["report", "--expr", NODE, "--max-slope", "4", "--torsion", "6"],
                 ["verify", "--seed", "42", "--samples", "20"],
                 ["analyze", "--expr", "x + y - 2"]):
        outs = set()
        for workers in (["--workers", "1"], ["--workers", "2"], []):
            if args[0] in ("verify", "analyze") and workers:
                continue
            outs.add(cli_json(capsys, *args, *workers)[1])
        outs.add(cli_json(capsys, *args)[1])
        assert len(outs) == 1
        runs[args[0]] = outs.pop()
    assert fig8_report["1"][1] == fig8_report["2"][1]
