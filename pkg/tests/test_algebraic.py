import random
from fractions import Fraction

import pytest

from tangent_slopes import dense
from tangent_slopes.algebraic import (AlgebraicPoint, is_root_of_unity, monomial_value,
                                      point_degree, points_from_field, recertify, solve_system,
                                      torsion_point_test)
from tangent_slopes.errors import CertificationError, InfiniteIntersection
from tangent_slopes.numberfield import NumberField
from tangent_slopes.oracles import newton_root
from tangent_slopes.roots import isolate_roots

from conftest import P


def _center(b):
    return complex(float((b.re_lo + b.re_hi) / 2), float((b.im_lo + b.im_hi) / 2))


def _contains(b, z):
    return (float(b.re_lo) <= z.real <= float(b.re_hi)) and (float(b.im_lo) <= z.imag <= float(b.im_hi))


def test_isolate_sqrt2():
    boxes = isolate_roots([-2, 0, 1])
    assert len(boxes) == 2
    for b in boxes:
        # Newton oracle from the box centre converges into the same box
        r = complex(newton_root([-2, 0, 1], _center(b)))
        assert abs(abs(r) - 2 ** 0.5) < 1e-12
        assert _contains(b, r)


def test_isolate_i_and_double_root():
    boxes = isolate_roots([1, 0, 1])
    assert sorted(round(_center(b).imag) for b in boxes) == [-1, 1]
    assert len(isolate_roots([1, -2, 1])) == 1


def test_isolation_random_counts_disjoint():
    rng = random.Random(7)
    for _ in range(40):
        c = [rng.randint(-6, 6) for _ in range(rng.randint(2, 9))]
        if dense.degree(dense.strip(c)) < 1:
            continue
        boxes = isolate_roots(c, Fraction(1, 1 << 30))
        assert len(boxes) == dense.degree(dense.squarefree_part(c))
        for i, a in enumerate(boxes):
            assert a.width <= Fraction(1, 1 << 30)
            assert not any(a.intersects(b) for b in boxes[i + 1:])


def _rational(points):
    return sorted(p.rational_coordinates() for p in points)


def test_solve_linear():
    assert _rational(solve_system(P("x + y - 2"), P("x - y"))) == [(1, 1)]
    assert _rational(solve_system(P("x + y - 1"), P("x - y"))) == [(Fraction(1, 2), Fraction(1, 2))]
    assert _rational(solve_system(P("x*y - 1"), P("x - y"))) == [(-1, -1), (1, 1)]


def test_solve_excludes_axes():
    # (0, 1) and (1, 0) are off the torus
    pts = solve_system(P("x + y - 1"), P("x*y"))
    assert pts == []


def test_solve_quadratic_points():
    pts = solve_system(P("x^2 - 2"), P("y^2 - 2"))
    assert len(pts) == 4
    assert all(p.degree == 2 for p in pts)
    for p in pts:
        recertify(p, [P("x^2 - 2"), P("y^2 - 2")])


def test_solve_common_component():
    with pytest.raises(InfiniteIntersection):
        solve_system(P("x^2 - y^2"), P("x*y - y^2"))


def test_json_round_trip_and_recertify():
    f, g = P("x^2 + y^2 - 3"), P("x*y - 1")
    pts = solve_system(f, g)
    assert len(pts) == 4
    for p in pts:
        q = AlgebraicPoint.from_json(p.to_json())
        recertify(q, [f, g])
        with pytest.raises(CertificationError):
            recertify(q, [P("x - y")])


def test_monomial_values():
    (p,) = solve_system(P("x + y - 2"), P("x - y"))
    assert monomial_value(p, 1, 1).is_one()
    (h,) = solve_system(P("x + y - 1"), P("x - y"))
    mv = monomial_value(h, 1, 1)
    assert not mv.is_one()
    assert list(mv.minpoly.integer_coefficients()) == [-1, 4]
    m, _ = sorted(solve_system(P("x*y - 1"), P("x - y")))
    assert m.rational_coordinates() == (-1, -1)
    assert monomial_value(m, 1, 1).is_one()
    assert monomial_value(m, -3, 1).is_one()


def test_roots_of_unity():
    for b in isolate_roots([1, 1, 1]):
        c = is_root_of_unity([1, 1, 1], b)
        assert c.is_torsion and c.order == 3
    (b,) = isolate_roots([-1, 4])
    assert not is_root_of_unity([-1, 4], b).is_torsion
    (b,) = isolate_roots([1, 1])
    assert is_root_of_unity([1, 1], b).order == 2


def test_unit_circle_but_not_torsion():
    # 5 t^2 - 6 t + 5 has roots (3 +- 4i)/5 on the unit circle, of infinite order
    for b in isolate_roots([5, -6, 5]):
        assert not is_root_of_unity([5, -6, 5], b).is_torsion
    # monic, reciprocal, not cyclotomic: t^4 - 2t^3 - 2t + 1 ... has roots off the circle
    for b in isolate_roots([1, -2, 0, -2, 1]):
        assert not is_root_of_unity([1, -2, 0, -2, 1], b).is_torsion


def test_torsion_point_test():
    (p,) = points_from_field(NumberField([0, 1]), [Fraction(1)], [Fraction(-1)])
    c = torsion_point_test(p)
    assert c.is_torsion and c.order == 2
    (h,) = solve_system(P("x + y - 1"), P("x - y"))
    assert not torsion_point_test(h).is_torsion
    Ki = NumberField([1, 0, 1])
    s = Ki.generator()
    pts = points_from_field(Ki, s, Ki.neg(s))
    assert all(torsion_point_test(q).order == 4 for q in pts)


def test_torsion_orders_lcm():
    for a, b in [(2, 3), (4, 6), (5, 1), (12, 8)]:
        from math import lcm
        n = lcm(a, b)
        K = NumberField(dense.cyclotomic(n))
        z = K.generator()
        for q in points_from_field(K, K.power(z, n // a), K.power(z, n // b)):
            assert torsion_point_test(q).order == n


def test_point_degree():
    (p,) = solve_system(P("x + y - 2"), P("x - y"))
    (h,) = solve_system(P("x + y - 1"), P("x - y"))
    assert point_degree(p) == 1 and point_degree(h) == 1
    pts = solve_system(P("x^2 - 2"), P("x - y"))
    assert [point_degree(q) for q in pts] == [2, 2]


def test_solver_against_numeric_oracle():
    rng = random.Random(3)
    for _ in range(10):
        f = P(f"x^2 + {rng.randint(1, 5)}*x*y - {rng.randint(1, 5)}*y^2 + {rng.randint(1, 9)}")
        g = P(f"x*y - {rng.randint(2, 7)}*x + y")
        pts = solve_system(f, g)
        for q in pts:
            x, y = q.approx(30)
            fx = sum(complex(c) * x ** a * y ** b for (a, b), c in f.items())
            gx = sum(complex(c) * x ** a * y ** b for (a, b), c in g.items())
            assert abs(fx) < 1e-12 and abs(gx) < 1e-12
