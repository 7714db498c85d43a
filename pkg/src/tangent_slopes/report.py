"""The slope-exclusion report and its self-contained re-verification."""

from dataclasses import dataclass, field

from .algebraic import AlgebraicPoint, monomial_value, recertify, torsion_point_test
from .bounds import BoundInputs, audit_point, bound_report
from .errors import CertificationError, DegreeError
from .heights import poly_height
from .poly import parse_poly, squarefree_check
from .tangency import (Slope, TorsionUpTo, branch_tangents, curve_singular_points, slope_scan,
                       tangency_poly)

SCOPE_WARNING = ("torsion diagnostics only cover singular points of the curve itself; "
                 "the character variety behind it is not examined")
IRREDUCIBILITY_WARNING = ("irreducibility of f is assumed, not verified; for a reducible input "
                          "the results describe the union of its components")

TANGENT_SUBTORUS = "tangent-subtorus"
BRANCH_TANGENT = "singular-branch-tangent"


@dataclass
class ExclusionReport:
    f: object
    radius: int
    torsion_cap: int
    excluded: dict
    torsion_translates: list
    singularities: list
    diagnostics: list
    bounds: object
    audits: list
    warnings: list = field(default_factory=list)

    def excluded_slopes(self):
        return sorted(self.excluded, key=Slope.sort_key)

    def to_json(self):
        f = self.f
        return {
            "curve": {"poly": str(f), "degree": f.degree, "degree_x": f.degree_x,
                      "degree_y": f.degree_y, "height": poly_height(f).to_json()},
            "max_slope": self.radius,
            "torsion_cap": self.torsion_cap,
            "excluded_slopes": [{"slope": s.to_json(), "reasons": self.excluded[s]}
                                for s in self.excluded_slopes()],
            "torsion_translates": self.torsion_translates,
            "curve_singularities": self.singularities,
            "torsion_diagnostics": self.diagnostics,
            "theoretical_log_bound": self.bounds.theorem_log.to_json(),
            "bounds": self.bounds.to_json(),
            "audit": {"points_audited": len(self.audits),
                      "failures": sum(1 for a in self.audits if not a.passed)},
            "warnings": self.warnings,
        }


def dehn_exclusion_report(f, N, M, workers=None):
    """Slopes that cannot be certified transversal: tangent subtori up to ``N``
    plus rational branch tangents at singular points, with torsion diagnostics."""
    if N < 1 or M < 1:
        raise ValueError("N and M must be positive")
    if f.is_constant():
        raise DegreeError("the curve polynomial must be nonconstant")
    b = BoundInputs.from_poly(f)
    if not squarefree_check(f):
        raise ValueError("f is not squarefree")
    bounds = bound_report(b, f)
    scan = slope_scan(f, N, TorsionUpTo(M), workers=workers, attach_bounds=False)
    excluded, translates, audits = {}, [], []
    for res in scan.hits:
        unit = [si for si in res.intersections if si.translate.order == 1]
        other = [si for si in res.intersections if si.translate.order != 1]
        for si in res.intersections:
            audits.append(audit_point(si.point, b, si.slope))
        if unit:
            excluded.setdefault(res.slope, []).append(
                {"kind": TANGENT_SUBTORUS, "points": [si.point.to_json() for si in unit]})
        for si in other:
            translates.append({"slope": res.slope.to_json(), "order": si.translate.order,
                               "point": si.point.to_json(),
                               "coset_value": {**si.value.to_json(), **si.translate.to_json()}})
    singularities, diagnostics = [], []
    warnings = [SCOPE_WARNING, IRREDUCIBILITY_WARNING]
    for P in curve_singular_points(f):
        bt = branch_tangents(f, P)
        singularities.append(bt.to_json())
        for s in bt.slopes:
            excluded.setdefault(s, []).append({"kind": BRANCH_TANGENT, "point": P.to_json()})
        cert = torsion_point_test(P)
        diagnostics.append({"point": P.to_json(), "torsion": cert.to_json(),
                            "hypothesis_violated": cert.is_torsion})
        if cert.is_torsion:
            warnings.append(f"singular point {_describe(P)} is torsion of order {cert.order}: "
                            "the non-torsion hypothesis on singular points fails")
    return ExclusionReport(f, N, M, excluded, translates, singularities, diagnostics, bounds,
                           audits, warnings)


def _describe(P):
    if P.is_rational():
        x, y = P.rational_coordinates()
        return f"({x}, {y})"
    return f"(x: {P.x_minpoly}, y: {P.y_minpoly})"


def recertify_report(data):
    """Re-check every point in a serialized report against its own curve.

    Tangent-subtorus points must lie on ``f`` and ``g_{p,q}`` with ``x^p y^q = 1``
    exactly; singular points must annihilate ``f`` and both partials.  Returns
    the number of points checked.
    """
    f = parse_poly(data["curve"]["poly"])
    fx, fy = f.derivative("x"), f.derivative("y")
    checked = 0
    for entry in data["excluded_slopes"]:
        s = Slope(*entry["slope"])
        for reason in entry["reasons"]:
            if reason["kind"] == TANGENT_SUBTORUS:
                g = tangency_poly(f, s)
                for pj in reason["points"]:
                    P = AlgebraicPoint.from_json(pj)
                    recertify(P, [f, g])
                    if not monomial_value(P, s.p, s.q).is_one():
                        raise CertificationError(f"coset value is not 1 on slope {s}")
                    checked += 1
            elif reason["kind"] == BRANCH_TANGENT:
                P = AlgebraicPoint.from_json(reason["point"])
                recertify(P, [f, fx, fy])
                if s not in branch_tangents(f, P).slopes:
                    raise CertificationError(f"slope {s} is not a branch tangent")
                checked += 1
            else:
                raise CertificationError(f"unknown exclusion reason {reason['kind']!r}")
    for item in data["curve_singularities"]:
        recertify(AlgebraicPoint.from_json(item["point"]), [f, fx, fy])
        checked += 1
    return checked
