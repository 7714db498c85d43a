"""Exact solutions of bivariate polynomial systems as certified algebraic points.

A zero-dimensional system ``f = g = 0`` is solved by eliminating ``y`` after a
shear ``x -> x - k*y``, factoring the eliminant over the integers and, for each
irreducible factor ``r``, computing ``gcd(F(s, y), G(s, y))`` over the residue
field ``Q[s]/(r)``.  A linear gcd gives the point ``(s - k*Y, Y)`` with
coordinates in that field; every complex root of ``r`` is one conjugate.  If a
gcd has degree two or more the shear is not generic and the next ``k`` is tried.
"""

from dataclasses import dataclass, field, replace
from fractions import Fraction
from math import gcd as igcd

import sympy

from . import dense
from .errors import CertificationError, DegreeError, InfiniteIntersection
from .intervals import Box
from .numberfield import NumberField, element_to_text
from .poly import SparsePoly, UniPoly, gcd, parse_unipoly, resultant
from .roots import START_BITS, isolate_roots, refine_root, roots_meeting

MAX_SHEAR = 64


def factor_integer_poly(coeffs):
    """Distinct irreducible factors (primitive ints, lowest first) in a fixed order."""
    coeffs = dense.to_primitive_int(coeffs)
    if dense.degree(coeffs) < 1:
        return []
    t = sympy.Symbol("t")
    _, facs = sympy.Poly(list(reversed(coeffs)), t, domain="ZZ").factor_list()
    out = []
    for fac, _mult in facs:
        c = dense.to_primitive_int([int(v) for v in reversed(fac.all_coeffs())])
        if dense.degree(c) >= 1:
            out.append(tuple(c))
    return sorted(set(out), key=lambda c: (len(c), c))


# -- polynomials in y over a residue field -----------------------------------


def _over_field(K, F):
    """``F(s, y)`` as a list (by powers of ``y``) of field elements."""
    rows = {}
    for (a, b), c in F.items():
        rows.setdefault(b, {})[a] = c
    n = F.degree_y
    out = []
    for b in range(n + 1):
        d = rows.get(b, {})
        dense_row = [Fraction(0)] * (max(d) + 1 if d else 0)
        for a, c in d.items():
            dense_row[a] = c
        out.append(K.reduce(dense_row))
    while out and not out[-1]:
        out.pop()
    return out


def _rem_field(K, A, B):
    A = list(A)
    inv = K.inverse(B[-1])
    while len(A) >= len(B):
        k = len(A) - len(B)
        q = K.mul(A[-1], inv)
        for i, c in enumerate(B):
            A[i + k] = K.sub(A[i + k], K.mul(q, c))
        A.pop()
        while A and not A[-1]:
            A.pop()
    return A


def _divmod_field(K, A, B):
    A = list(A)
    inv = K.inverse(B[-1])
    Q = [K.zero()] * max(0, len(A) - len(B) + 1)
    while len(A) >= len(B):
        k = len(A) - len(B)
        q = K.mul(A[-1], inv)
        Q[k] = q
        for i, c in enumerate(B):
            A[i + k] = K.sub(A[i + k], K.mul(q, c))
        A.pop()
        while A and not A[-1]:
            A.pop()
    return Q, A


def _squarefree_field(K, A):
    """Monic squarefree part of ``A`` over the field."""
    dA = [K.scale(c, i) for i, c in enumerate(A)][1:]
    while dA and not dA[-1]:
        dA.pop()
    if not dA:
        return _gcd_field(K, A, [])
    g = _gcd_field(K, A, dA)
    q, r = _divmod_field(K, A, g)
    if r:
        raise CertificationError("inexact division in the residue field")
    return _gcd_field(K, q, [])


def _gcd_field(K, A, B):
    while B:
        A, B = B, _rem_field(K, A, B)
    if not A:
        return A
    inv = K.inverse(A[-1])
    return [K.mul(c, inv) for c in A]


# -- the point type -----------------------------------------------------------


def _locate(K, s_box, elem, mp):
    """Isolating box for the value of ``elem`` under the embedding given by ``s_box``.

    Returns ``(box, s_box)`` where ``s_box`` may have been refined on the way.
    The box isolates the value among the roots of ``mp`` and avoids zero unless
    the value is zero.
    """
    coeffs = mp.integer_coefficients()
    if mp.degree == 1:
        return isolate_roots(coeffs)[0], s_box
    while True:
        enc = K.enclose(elem, s_box).to_box()
        hits = roots_meeting(coeffs, enc)
        if len(hits) == 1:
            box = hits[0]
            while box.contains_zero() and coeffs[0] != 0:
                box = refine_root(coeffs, box, box.width / 2**16)
            return box, s_box
        width = s_box.width / 2**16 if s_box.width else Fraction(1, 1 << START_BITS)
        s_box = refine_root(K.modulus, s_box, width)


@dataclass(frozen=True)
class AlgebraicPoint:
    """A point with algebraic coordinates, carried exactly in ``Q[s]/(r)``.

    ``x`` and ``y`` are field elements; ``s_box`` picks the embedding.  The
    minimal polynomials and isolating boxes are derived data kept for output.
    """

    field: NumberField
    s_box: Box
    x: tuple
    y: tuple
    x_minpoly: UniPoly
    y_minpoly: UniPoly
    x_box: Box
    y_box: Box
    certified: tuple = field(default=())

    @classmethod
    def build(cls, K, s_box, X, Y, certified=()):
        xm, ym = K.minpoly(X).with_var("t"), K.minpoly(Y).with_var("t")
        x_box, s_box = _locate(K, s_box, X, xm)
        y_box, s_box = _locate(K, s_box, Y, ym)
        return cls(K, s_box, X, Y, xm, ym, x_box, y_box, tuple(certified))

    def sort_key(self):
        return (self.x_box, self.y_box)

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def is_rational(self):
        return self.field.is_rational(self.x) and self.field.is_rational(self.y)

    def rational_coordinates(self):
        if not self.is_rational():
            raise ValueError("point is not rational")
        return self.field.rational_value(self.x), self.field.rational_value(self.y)

    @property
    def degree(self):
        return point_degree(self)

    def element(self, poly):
        """Field value of a bivariate polynomial at this point."""
        return self.field.evaluate(poly, self.x, self.y)

    def vanishes(self, poly):
        return not self.element(poly)

    def enclose(self, elem):
        return self.field.enclose(elem, self.s_box)

    def refined(self, width):
        """Same point with coordinate and field boxes of width at most ``width``."""
        K = self.field
        s_box = refine_root(K.modulus, self.s_box, width) if self.s_box.width > width else self.s_box
        xb = self.x_box if self.x_box.width <= width else refine_root(
            self.x_minpoly.integer_coefficients(), self.x_box, width)
        yb = self.y_box if self.y_box.width <= width else refine_root(
            self.y_minpoly.integer_coefficients(), self.y_box, width)
        return replace(self, s_box=s_box, x_box=xb, y_box=yb)

    def approx(self, dps=30):
        import mpmath

        with mpmath.workdps(dps):
            def num(v):
                return mpmath.mpf(v.numerator) / v.denominator

            def mid(b):
                return mpmath.mpc(num((b.re_lo + b.re_hi) / 2), num((b.im_lo + b.im_hi) / 2))
            p = self.refined(Fraction(1, 2 ** int(dps * 3.4 + 8)))
            return mid(p.x_box), mid(p.y_box)

    def to_json(self):
        return {
            "x_minpoly": str(self.x_minpoly),
            "y_minpoly": str(self.y_minpoly),
            "x_box": self.x_box.to_json(),
            "y_box": self.y_box.to_json(),
            "degree": self.degree,
            "certified": list(self.certified),
            "field": {
                "modulus": str(UniPoly(self.field.modulus, "s")),
                "s_box": self.s_box.to_json(),
                "x": element_to_text(self.x),
                "y": element_to_text(self.y),
            },
        }

    @classmethod
    def from_json(cls, data):
        fd = data["field"]
        K = NumberField(parse_unipoly(fd["modulus"], "s").coeffs)
        X = K.reduce(parse_unipoly(fd["x"], "s").coeffs)
        Y = K.reduce(parse_unipoly(fd["y"], "s").coeffs)
        return cls(K, Box.from_json(fd["s_box"]), X, Y,
                   parse_unipoly(data["x_minpoly"], "t"), parse_unipoly(data["y_minpoly"], "t"),
                   Box.from_json(data["x_box"]), Box.from_json(data["y_box"]),
                   tuple(data.get("certified", ())))

    def __repr__(self):
        if self.is_rational():
            x, y = self.rational_coordinates()
            return f"AlgebraicPoint({x}, {y})"
        return f"AlgebraicPoint(x: {self.x_minpoly}, y: {self.y_minpoly})"


def recertify(point, polys):
    """Check from scratch that ``point`` is consistent and lies on every polynomial.

    Verifies that ``s_box`` isolates a root of the modulus, that the coordinate
    boxes isolate roots of the stated minimal polynomials, that these are the
    minimal polynomials of the field elements, that the boxes agree with the
    embedding, and that each polynomial vanishes exactly.
    """
    K = point.field
    if len(factor_integer_poly(K.modulus)) != 1 or dense.degree(
            factor_integer_poly(K.modulus)[0]) != K.degree:
        raise CertificationError("field modulus is not irreducible")
    if len([b for b in isolate_roots(K.modulus) if b.intersects(point.s_box)]) < 1:
        raise CertificationError("s_box does not meet a root of the modulus")
    s_hits = roots_meeting(K.modulus, point.s_box) if point.s_box.width else None
    if s_hits is not None and len(s_hits) != 1:
        raise CertificationError("s_box does not isolate a root of the modulus")
    for elem, mp, box in ((point.x, point.x_minpoly, point.x_box), (point.y, point.y_minpoly, point.y_box)):
        if K.minpoly(elem).integer_coefficients() != mp.integer_coefficients():
            raise CertificationError("stated minimal polynomial does not match the field element")
        roots = isolate_roots(mp.integer_coefficients())
        if not any(box.intersects(r) for r in roots):
            raise CertificationError("coordinate box meets no root of its minimal polynomial")
        expected, _ = _locate(K, point.s_box, elem, mp)
        if not expected.intersects(box):
            raise CertificationError("coordinate box disagrees with the embedding")
    for f in polys:
        if not point.vanishes(f):
            raise CertificationError(f"{f} does not vanish at the point")
    return True


# -- solving ------------------------------------------------------------------


def _eliminant(F, G):
    if F.degree_y >= 1 and G.degree_y >= 1:
        return resultant(F, G, eliminate="y").as_list()
    if F.degree_y < 1 and G.degree_y < 1:
        return dense.gcd_q([F.coefficient(i, 0) for i in range(F.degree_x + 1)],
                           [G.coefficient(i, 0) for i in range(G.degree_x + 1)])
    H = F if F.degree_y < 1 else G
    return [H.coefficient(i, 0) for i in range(H.degree_x + 1)]


def _solve_sheared(f, g, k):
    F, G = f.shear(k), g.shear(k)
    R = _eliminant(F, G)
    if not dense.strip(R):
        return None
    found = []
    for r in factor_integer_poly(R):
        K = NumberField(r)
        h = _gcd_field(K, _over_field(K, F), _over_field(K, G))
        if len(h) > 2:
            h = _squarefree_field(K, h)
        if len(h) <= 1:
            continue
        if len(h) > 2:
            return None
        s = K.generator()
        Y = K.neg(h[0])
        X = K.sub(s, K.scale(Y, k))
        if not X or not Y:
            continue
        found.append((K, X, Y))
    return found


def solve_system(f, g, labels=()):
    """All common zeros of ``f`` and ``g`` in the torus, as certified points.

    Raises :class:`InfiniteIntersection` when ``f`` and ``g`` share a factor.
    Each point is re-checked by exact substitution into ``f`` and ``g``.
    """
    if f.is_constant() or g.is_constant():
        if (f.is_constant() and not f.is_zero()) or (g.is_constant() and not g.is_zero()):
            return []
        raise DegreeError("solve_system needs nonconstant polynomials")
    common = gcd(f, g)
    if not common.is_constant():
        raise InfiniteIntersection(common)
    for k in range(MAX_SHEAR):
        found = _solve_sheared(f, g, k)
        if found is not None:
            break
    else:
        raise CertificationError("no separating shear found")
    points = []
    for K, X, Y in found:
        if K.evaluate(f, X, Y) or K.evaluate(g, X, Y):
            raise CertificationError("lifted point does not satisfy the system")
        for s_box in isolate_roots(K.modulus):
            points.append(AlgebraicPoint.build(K, s_box, X, Y, labels))
    return sorted(points, key=AlgebraicPoint.sort_key)


def point_degree(P):
    """``[Q(x, y) : Q]`` for the point, certified via primitive elements ``x + k*y``."""
    K = P.field
    dx, dy = P.x_minpoly.degree, P.y_minpoly.degree
    cap = min(K.degree, dx * dy)
    if cap == max(dx, dy):
        return cap
    best = max(dx, dy)
    # at most cap*(cap-1)/2 values of k fail to give a primitive element
    for k in range(1, cap * (cap - 1) // 2 + 2):
        d = K.minpoly(K.add(P.x, K.scale(P.y, k))).degree
        best = max(best, d)
        if best == cap:
            break
    return best


# -- monomial values and roots of unity ---------------------------------------


@dataclass(frozen=True)
class MonomialValue:
    """The value ``x^p y^q`` at a point, as a field element with an isolating box."""

    point: AlgebraicPoint
    p: int
    q: int
    element: tuple
    annihilator: UniPoly
    minpoly: UniPoly
    box: Box

    def is_one(self):
        return self.element == self.point.field.one()

    def to_json(self):
        return {"p": self.p, "q": self.q, "annihilator": str(self.annihilator),
                "minpoly": str(self.minpoly), "box": self.box.to_json()}


def monomial_value(P, p, q, over=None):
    """``x^p y^q`` at ``P``; the annihilator is its characteristic polynomial over ``Q``."""
    K = P.field
    m = K.mul(K.power(P.x, p), K.power(P.y, q))
    T = UniPoly(tuple(K.charpoly(m)), "t")
    mp = K.minpoly(m).with_var("t")
    box, _ = _locate(K, P.s_box, m, mp)
    return MonomialValue(P, p, q, m, T, mp, box)


@dataclass(frozen=True)
class TorsionCertificate:
    is_torsion: bool
    order: int
    witness: dict

    def to_json(self):
        return {"is_torsion": self.is_torsion, "order": self.order, "witness": self.witness}


def _cyclotomic_bound(D):
    """Largest ``n`` with ``phi(n) <= D`` is below ``2 * D**2`` for ``D >= 1``."""
    return max(2, 2 * D * D)


def _in_factor(G, H, box):
    """Decide whether the unique root of ``G*H`` in ``box`` is a root of ``G``."""
    target = box.width / 4 if box.width else Fraction(1, 1 << START_BITS)
    while True:
        hg = [b for b in isolate_roots(G, target) if b.intersects(box)] if dense.degree(G) > 0 else []
        hh = [b for b in isolate_roots(H, target) if b.intersects(box)] if dense.degree(H) > 0 else []
        if len(hg) + len(hh) == 1:
            return bool(hg)
        if len(hg) + len(hh) == 0:
            raise CertificationError("box contains no root of the annihilator")
        target /= 2**8


def is_root_of_unity(T, box):
    """Certify whether the root of ``T`` isolated by ``box`` is a root of unity.

    ``T`` is any nonzero integer polynomial (it is made squarefree first).
    """
    coeffs = dense.squarefree_part(T.as_list() if hasattr(T, "as_list") else list(T))
    D = dense.degree(coeffs)
    if D < 1:
        raise ValueError("annihilator must have positive degree")
    lo, hi = box.abs_squared_range()
    if hi < 1 or lo > 1:
        return TorsionCertificate(False, 0, {"kind": "modulus", "abs_squared": [str(lo), str(hi)]})
    if D == 1:
        v = Fraction(-coeffs[0], coeffs[1])
        if v in (1, -1):
            return TorsionCertificate(True, 1 if v == 1 else 2, {"kind": "rational", "value": str(v)})
        return TorsionCertificate(False, 0, {"kind": "rational", "value": str(v)})
    mod = [Fraction(c) for c in coeffs]
    power = [Fraction(1)]
    for n in range(1, _cyclotomic_bound(D) + 1):
        power = dense.rem_q(dense.shift(power, 1), mod)
        if dense.euler_phi(n) > D:
            continue
        G = dense.gcd_q(mod, dense.sub(power, [Fraction(1)]))
        if dense.degree(G) < 1:
            continue
        Gi = dense.to_primitive_int(G)
        H = dense.to_primitive_int(dense.exact_div(mod, G))
        if _in_factor(Gi, H, box):
            return TorsionCertificate(True, n, {"kind": "cyclotomic-gcd", "n": n,
                                                "gcd": str(UniPoly(tuple(Gi)))})
    return TorsionCertificate(False, 0, {"kind": "exhaustive", "degree": D,
                                         "searched_up_to": _cyclotomic_bound(D)})


def element_torsion(P, elem):
    """Torsion certificate for a field element at the embedding of ``P``."""
    K = P.field
    mp = K.minpoly(elem).with_var("t")
    box, _ = _locate(K, P.s_box, elem, mp)
    return is_root_of_unity(mp, box)


def torsion_point_test(P):
    """Whether both coordinates of ``P`` are roots of unity; order is the lcm."""
    cx = is_root_of_unity(P.x_minpoly, P.x_box)
    cy = is_root_of_unity(P.y_minpoly, P.y_box)
    if cx.is_torsion and cy.is_torsion:
        order = cx.order * cy.order // igcd(cx.order, cy.order)
        return TorsionCertificate(True, order, {"kind": "coordinates", "x": cx.witness, "y": cy.witness})
    bad = cx if not cx.is_torsion else cy
    return TorsionCertificate(False, 0, {"kind": "coordinates", "failing": bad.witness})


def points_from_field(K, X, Y, polys=(), labels=()):
    """All conjugate points ``(X, Y)`` for a field element pair, after exact checks."""
    for f in polys:
        if K.evaluate(f, X, Y):
            raise CertificationError(f"{f} does not vanish")
    return sorted((AlgebraicPoint.build(K, b, X, Y, labels) for b in isolate_roots(K.modulus)),
                  key=AlgebraicPoint.sort_key)


__all__ = [
    "AlgebraicPoint", "MonomialValue", "TorsionCertificate", "factor_integer_poly",
    "is_root_of_unity", "monomial_value", "point_degree", "points_from_field",
    "recertify", "solve_system", "torsion_point_test", "element_torsion",
]
