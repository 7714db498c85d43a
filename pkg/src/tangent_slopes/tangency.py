"""Tangency of a curve f = 0 in the torus with subtori x^p y^q = 1 and their translates.

In logarithmic coordinates the coset ``x^p y^q = c`` has normal ``(p, q)``, and
the curve has normal ``(x f_x, y f_y)``.  Tangency at a smooth point therefore
means ``q x f_x - p y f_y = 0``; the coset through the point is then the one
with ``c = x^p y^q``.
"""

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from math import gcd as igcd

from . import dense
from .algebraic import (AlgebraicPoint, TorsionCertificate, _gcd_field, factor_integer_poly,
                        is_root_of_unity, monomial_value, solve_system)
from .errors import (CertificationError, InfiniteIntersection, NotSingular, SingularPointOfCurve,
                     TranslateOfSubtorus)
from .poly import SparsePoly, gcd


@dataclass(frozen=True, order=True)
class Slope:
    """Coprime ``(p, q)`` with ``q > 0``, or ``(1, 0)``; names the subtorus ``x^p y^q = 1``."""

    p: int
    q: int

    def __post_init__(self):
        p, q = int(self.p), int(self.q)
        if igcd(p, q) != 1:
            raise ValueError(f"slope ({p}, {q}) is not a coprime pair")
        if q < 0 or (q == 0 and p < 0):
            p, q = -p, -q
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)

    @classmethod
    def from_ratio(cls, a, b):
        """Slope through the rational projective point ``(a : b)``."""
        a, b = Fraction(a), Fraction(b)
        if a == 0 and b == 0:
            raise ValueError("(0 : 0) is not a projective point")
        den = a.denominator * b.denominator // igcd(a.denominator, b.denominator)
        p, q = int(a * den), int(b * den)
        g = igcd(p, q)
        return cls(p // g, q // g)

    @property
    def size(self):
        return max(abs(self.p), abs(self.q))

    def sort_key(self):
        return (self.size, self.p, self.q)

    def to_json(self):
        return [self.p, self.q]

    def __str__(self):
        return f"({self.p},{self.q})"


def canonical_slopes(radius):
    """All canonical slopes with ``max(|p|, |q|) <= radius``, by size then ``p`` then ``q``."""
    out = []
    for q in range(0, radius + 1):
        for p in range(-radius, radius + 1):
            if igcd(p, q) == 1 and (q > 0 or p == 1):
                out.append(Slope(p, q))
    return sorted(out, key=Slope.sort_key)


# -- targets ------------------------------------------------------------------


@dataclass(frozen=True)
class Unit:
    name = "unit"

    def keeps(self, cert):
        return cert.is_torsion and cert.order == 1


@dataclass(frozen=True)
class TorsionUpTo:
    M: int
    name = "torsion"

    def __post_init__(self):
        if self.M < 1:
            raise ValueError("torsion order cap must be positive")

    def keeps(self, cert):
        return cert.is_torsion and cert.order <= self.M


@dataclass(frozen=True)
class AnyTranslate:
    name = "any-translate"

    def keeps(self, cert):
        return True


def target_label(target):
    return f"torsion<={target.M}" if isinstance(target, TorsionUpTo) else target.name


# -- basic maps -----------------------------------------------------------------

X = SparsePoly({(1, 0): 1})
Y = SparsePoly({(0, 1): 1})


def tangency_poly(f, s):
    """``q*x*f_x - p*y*f_y`` in canonical form (zero stays zero)."""
    g = X * f.derivative("x") * s.q - Y * f.derivative("y") * s.p
    return g.canonicalize()


def subtorus_direction(f):
    """If ``f`` is a polynomial in a single monomial ``x^p y^q`` (times a monomial), that slope."""
    monos = list(f.terms)
    if len(monos) < 2:
        return None
    a0, b0 = monos[0]
    direction = None
    for a, b in monos[1:]:
        da, db = a - a0, b - b0
        if direction is None:
            k = igcd(da, db)
            direction = (da // k, db // k)
        elif da * direction[1] != db * direction[0]:
            return None
    return Slope(*direction)


def check_not_translate(f):
    """Raise :class:`TranslateOfSubtorus` when the zero set is a union of cosets of one subtorus."""
    s = subtorus_direction(f)
    if s is not None:
        raise TranslateOfSubtorus(s, f)


@dataclass(frozen=True)
class ProjectivePair:
    """``(a : b)`` with entries in the residue field of a point."""

    point: AlgebraicPoint
    a: tuple
    b: tuple

    def slope(self):
        """The slope if the ratio is rational, else ``None``."""
        K = self.point.field
        if not self.b:
            return Slope(1, 0)
        r = K.div(self.a, self.b)
        if not K.is_rational(r):
            return None
        return Slope.from_ratio(K.rational_value(r), 1)

    def equals(self, s):
        K = self.point.field
        return not K.sub(K.scale(self.a, s.q), K.scale(self.b, s.p))


def sigma_C(f, P):
    """Tangent direction ``(x f_x : y f_y)`` of the curve at the smooth point ``P``."""
    K = P.field
    fx, fy = P.element(f.derivative("x")), P.element(f.derivative("y"))
    if not fx and not fy:
        raise SingularPointOfCurve(P)
    return ProjectivePair(P, K.mul(P.x, fx), K.mul(P.y, fy))


def is_smooth(f, P):
    return bool(P.element(f.derivative("x"))) or bool(P.element(f.derivative("y")))


# -- loci ---------------------------------------------------------------------


@dataclass(frozen=True)
class TangencyLocus:
    slope: Slope
    points: tuple
    excluded_singular: tuple

    def to_json(self):
        return {"p": self.slope.p, "q": self.slope.q,
                "points": [P.to_json() for P in self.points],
                "excluded_singular": [P.to_json() for P in self.excluded_singular]}


def tangency_locus(f, s):
    """Certified ``V(f, g_{p,q})`` in the torus, split by smoothness of the curve."""
    check_not_translate(f)
    g = tangency_poly(f, s)
    if g.is_zero():
        raise TranslateOfSubtorus(s, g)
    common = gcd(f, g)
    if not common.is_constant():
        raise TranslateOfSubtorus(s, common)
    try:
        pts = solve_system(f, g, labels=("f", "g"))
    except InfiniteIntersection as exc:
        raise TranslateOfSubtorus(s, exc.common_factor) from exc
    if len(pts) > f.degree ** 2:
        raise CertificationError("tangency fibre exceeds the Bezout ceiling")
    smooth, singular = [], []
    for P in pts:
        (smooth if is_smooth(f, P) else singular).append(P)
    return TangencyLocus(s, tuple(smooth), tuple(singular))


@dataclass(frozen=True)
class SingularIntersection:
    slope: Slope
    translate: TorsionCertificate
    point: AlgebraicPoint
    value: object = field(compare=False)

    def to_json(self):
        return {"point": self.point.to_json(), "coset_value": {
            **self.value.to_json(), **self.translate.to_json()}}


def coset_certificate(mv):
    if mv.is_one():
        return TorsionCertificate(True, 1, {"kind": "exact", "value": "1"})
    return is_root_of_unity(mv.minpoly, mv.box)


def singular_intersections(f, s, target, locus=None):
    """Points where the curve is tangent to a translate of ``H_{p,q}`` allowed by ``target``."""
    locus = locus or tangency_locus(f, s)
    out = []
    for P in locus.points:
        mv = monomial_value(P, s.p, s.q)
        if isinstance(target, Unit):
            cert = TorsionCertificate(True, 1, {"kind": "exact", "value": "1"}) if mv.is_one() else \
                TorsionCertificate(False, 0, {"kind": "exact", "value": "not 1"})
        else:
            cert = coset_certificate(mv)
        if target.keeps(cert):
            out.append(SingularIntersection(s, cert, P, mv))
    return out


# -- scanning -------------------------------------------------------------------


@dataclass(frozen=True)
class SlopeResult:
    slope: Slope
    locus: TangencyLocus
    intersections: tuple

    def to_json(self, target):
        return {"p": self.slope.p, "q": self.slope.q, "target": target_label(target),
                "points": [si.point.to_json() for si in self.intersections],
                "coset_value": [{**si.value.to_json(), **si.translate.to_json()}
                                for si in self.intersections]}


@dataclass
class ScanReport:
    f: SparsePoly
    radius: int
    target: object
    results: list
    scanned: int
    bounds: object = None

    @property
    def hits(self):
        return [r for r in self.results if r.intersections]

    def slopes(self):
        return [r.slope for r in self.hits]

    def to_json(self):
        out = {"poly": str(self.f), "radius": self.radius, "target": target_label(self.target),
               "scanned_slopes": self.scanned,
               "slopes": [r.to_json(self.target) for r in self.hits]}
        if self.bounds is not None:
            out["theorem_log_bound"] = self.bounds.theorem_log.to_json()
        return out


def _scan_one(args):
    f, s, target = args
    locus = tangency_locus(f, s)
    return SlopeResult(s, locus, tuple(singular_intersections(f, s, target, locus)))


def default_workers():
    env = os.environ.get("TANGENT_SLOPES_WORKERS")
    if env:
        return max(1, int(env))
    return 1


def slope_scan(f, radius, target=None, workers=None, attach_bounds=True):
    """Run :func:`singular_intersections` over every canonical slope up to ``radius``.

    Results are merged in canonical slope order, so ``workers`` never affects output.
    """
    if radius < 1:
        raise ValueError("radius must be at least 1")
    target = target or Unit()
    check_not_translate(f)
    slopes = canonical_slopes(radius)
    workers = default_workers() if workers is None else workers
    tasks = [(f, s, target) for s in slopes]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_scan_one, tasks, chunksize=max(1, len(tasks) // (4 * workers))))
    else:
        results = [_scan_one(t) for t in tasks]
    results.sort(key=lambda r: r.slope.sort_key())
    report = ScanReport(f, radius, target, results, len(slopes))
    if attach_bounds:
        from .bounds import BoundInputs, bound_report

        report.bounds = bound_report(BoundInputs.from_poly(f), f)
    return report


# -- singular points of the curve -----------------------------------------------


def _same_points(a, b):
    if len(a) != len(b):
        return False
    for P in a:
        if not any(P.x_minpoly == Q.x_minpoly and P.y_minpoly == Q.y_minpoly
                   and P.x_box.intersects(Q.x_box) and P.y_box.intersects(Q.y_box) for Q in b):
            return False
    return True


def curve_singular_points(f):
    """Certified ``V(f, f_x, f_y)`` in the torus."""
    fx, fy = f.derivative("x"), f.derivative("y")
    usable = []
    for a, b in ((fx, fy), (fy, fx)):
        if not a.is_zero() and gcd(f, a).is_constant():
            usable.append((a, b))
    if not usable:
        raise ValueError("polynomial is not squarefree")
    found = []
    for a, b in usable:
        pts = solve_system(f, a, labels=("f", "f_x", "f_y"))
        found.append([P for P in pts if P.vanishes(b)])
    if len(found) == 2 and not _same_points(found[0], found[1]):
        raise CertificationError("singular point computations disagree")
    return found[0]


# -- branch tangents --------------------------------------------------------------


@dataclass(frozen=True)
class BranchTangents:
    point: AlgebraicPoint
    slopes: tuple
    irrational_directions: int
    multiplicity: int

    def to_json(self):
        return {"point": self.point.to_json(),
                "tangent_slopes": [s.to_json() for s in self.slopes],
                "irrational_directions": self.irrational_directions,
                "multiplicity": self.multiplicity}


def tangent_cone(f, P):
    """Lowest homogeneous part of ``f`` at ``P`` in the frame ``u = x0 U, v = y0 V``.

    Returns ``(m, d)`` with ``d[i]`` the field coefficient of ``U^i V^(m-i)``.
    """
    K = P.field
    acc = {}
    xp, yp = {}, {}

    def pw(cache, base, n):
        if n not in cache:
            cache[n] = K.power(base, n)
        return cache[n]

    for (a, b), c in f.items():
        for i in range(a + 1):
            ci = K.scale(pw(xp, P.x, a - i), c * comb(a, i))
            for j in range(b + 1):
                term = K.mul(ci, K.scale(pw(yp, P.y, b - j), comb(b, j)))
                acc[(i, j)] = K.add(acc.get((i, j), K.zero()), term)
    acc = {k: v for k, v in acc.items() if v}
    if not acc:
        raise ValueError("zero polynomial")
    m = min(i + j for i, j in acc)
    d = []
    for i in range(m + 1):
        c = acc.get((i, m - i), K.zero())
        # u^i v^(m-i) = x0^i y0^(m-i) U^i V^(m-i)
        d.append(K.mul(c, K.mul(pw(xp, P.x, i), pw(yp, P.y, m - i))) if c else c)
    return m, d


def branch_tangents(f, P):
    """Tangent directions of the branches at a singular point, in the log frame.

    A linear factor ``p U + q V`` of the cone is the direction of ``H_{p,q}``;
    rational ones come back as slopes, the rest are only counted.
    """
    if P.element(f):
        raise ValueError("point is not on the curve")
    if is_smooth(f, P):
        raise NotSingular(P)
    K = P.field
    m, d = tangent_cone(f, P)
    h = list(d)
    while h and not h[-1]:
        h.pop()
    slopes = set()
    at_infinity = len(h) - 1 < m
    if at_infinity:
        slopes.add(Slope(0, 1))
    # a rational root t of h(t) = H(t, 1) gives the factor U - t V, i.e. p = 1, q = -t
    coords = max((len(c) for c in h), default=0)
    G = []
    for k in range(coords):
        hk = [c[k] if k < len(c) else Fraction(0) for c in h]
        G = dense.gcd_q(G, hk) if G else dense.strip(hk)
    if dense.degree(G) >= 1:
        for r in factor_integer_poly(G):
            if len(r) == 2:
                t = Fraction(-r[0], r[1])
                slopes.add(Slope.from_ratio(1, -t))
    # distinct projective roots of the cone over the algebraic closure
    distinct = 0
    if len(h) > 1:
        dh = [K.scale(c, i) for i, c in enumerate(h)][1:]
        while dh and not dh[-1]:
            dh.pop()
        g = _gcd_field(K, h, dh) if dh else h
        distinct = (len(h) - 1) - (len(g) - 1)
    distinct += 1 if at_infinity else 0
    ordered = tuple(sorted(slopes, key=Slope.sort_key))
    return BranchTangents(P, ordered, distinct - len(ordered), m)


__all__ = [
    "AnyTranslate", "BranchTangents", "ProjectivePair", "ScanReport", "SingularIntersection",
    "Slope", "SlopeResult", "TangencyLocus", "TorsionUpTo", "Unit", "branch_tangents",
    "canonical_slopes", "check_not_translate", "curve_singular_points", "sigma_C",
    "singular_intersections", "slope_scan", "tangency_locus", "tangency_poly", "tangent_cone",
]
