"""Explicit height, slope and degree bounds, and the audit that checks points against them.

All bounds are kept in natural-log scale; nothing is ever exponentiated.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from .errors import AuditFailure
from .heights import (CoefficientFamily, ExactLog, ExactNumber, Greater, HeightValue, LessOrEqual,
                      Undecided, ZERO, compare, family_height, fold, point_height, poly_height,
                      proj_height_rational)

HABEGGER_C = 300_000
THEOREM_C = 600_001


@dataclass(frozen=True)
class BoundInputs:
    delta: int
    delta_x: int
    delta_y: int
    hf: HeightValue
    field_degree: int = 1

    def __post_init__(self):
        if not (max(self.delta_x, self.delta_y) >= 1 and self.delta >= max(self.delta_x, self.delta_y)):
            raise ValueError("need delta >= max(delta_x, delta_y) >= 1")
        if self.delta > self.delta_x + self.delta_y:
            raise ValueError("need delta <= delta_x + delta_y")
        if self.field_degree < 1:
            raise ValueError("field degree must be positive")

    @classmethod
    def from_poly(cls, f, field_degree=1):
        """Inputs for the curve ``f = 0``; refuses translates of subtori."""
        from .tangency import check_not_translate

        check_not_translate(f)
        return cls(f.degree, f.degree_x, f.degree_y, poly_height(f), field_degree)


def _max_term(b):
    """``max(delta_x * delta_y, h(f))`` compared as real numbers."""
    dd = ExactNumber(b.delta_x * b.delta_y)
    order = compare(b.hf, dd)
    if order is LessOrEqual:
        return dd
    if order is Greater:
        return b.hf
    return dd + b.hf  # undecided: an upper bound for the max


def lemma31_rhs(N, hP, hF):
    """``N h(x:y:1) + h(F) + log binom(N+2, 2)``."""
    if N < 0:
        raise ValueError("N must be nonnegative")
    return fold(N * hP + hF + ExactLog(comb(N + 2, 2)))


@dataclass(frozen=True)
class LemmaCheck:
    holds: bool
    lhs: HeightValue
    rhs: HeightValue
    slack: object

    def to_json(self):
        return {"holds": self.holds, "lhs": self.lhs.to_json(), "rhs": self.rhs.to_json(),
                "slack": self.slack.to_json() if isinstance(self.slack, HeightValue) else str(self.slack)}


def verify_lemma31(f1, f2, P):
    """Check the projective-value height inequality exactly at a rational point."""
    x, y = (Fraction(v) for v in P)
    v1, v2 = f1.evaluate(x, y), f2.evaluate(x, y)
    if v1 == 0 and v2 == 0:
        raise ValueError("both polynomials vanish at the point")
    lhs = proj_height_rational([v1, v2])
    N = max(f1.degree, f2.degree, 0)
    family = CoefficientFamily.of_polys(f1, f2, provenance="f1,f2")
    rhs = lemma31_rhs(N, proj_height_rational([x, y, 1]), family_height(family))
    holds = compare(lhs, rhs) is LessOrEqual
    la, ra = lhs.log_argument, rhs.log_argument
    if holds and la is not None and ra is not None:
        slack = ExactLog(ra / la)
    else:
        slack = Fraction(rhs.bounds()[0]) - Fraction(lhs.bounds()[1])
    return LemmaCheck(holds, lhs, rhs, slack)


def habegger_height_bound(b):
    """``3*10^5 * delta^3 * max(delta_x delta_y, h(f))``."""
    return (HABEGGER_C * b.delta ** 3) * _max_term(b)


def theorem_slope_bound_log(b):
    """Log of the slope bound: ``3 log delta + (6*10^5 + 1) delta^4 max(delta_x delta_y, h(f))``."""
    return ExactLog(b.delta ** 3) + (THEOREM_C * b.delta ** 4) * _max_term(b)


def upI_bound(b, hP):
    """``delta h(x:y:1) + h(f) + log(delta^2 (delta+1) / 2)``."""
    return b.delta * hP + b.hf + ExactLog(Fraction(b.delta ** 2 * (b.delta + 1), 2))


def bezout_degree_bound(b):
    return b.delta ** 2 * b.field_degree


@dataclass(frozen=True)
class BoundReport:
    inputs: BoundInputs
    lemma31_constant: HeightValue
    upI_constant: HeightValue
    habegger: HeightValue
    theorem_log: HeightValue
    bezout_degree: int

    def to_json(self):
        b = self.inputs
        return {
            "lemma31_rhs": {"hP_coefficient": b.delta, "constant": self.lemma31_constant.to_json(),
                            "formula": "delta*h(x:y:1) + h(F) + log(binom(delta+2, 2))"},
            "upI": {"hP_coefficient": b.delta, "constant": self.upI_constant.to_json(),
                    "formula": "delta*h(x:y:1) + h(f) + log(delta^2*(delta+1)/2)"},
            "habegger": self.habegger.to_json(),
            "theorem_log": self.theorem_log.to_json(),
            "bezout_degree": self.bezout_degree,
            "constants": {"habegger_c": str(HABEGGER_C), "theorem_c": str(THEOREM_C)},
        }


def bound_report(b, f=None):
    """All bounds for the inputs; ``f`` (if given) supplies the partials' family for the lemma."""
    if f is not None:
        hF = family_height(CoefficientFamily.of_polys(f.derivative("x"), f.derivative("y"),
                                                      provenance="f_x,f_y"))
    else:
        hF = b.hf
    return BoundReport(b, lemma31_rhs(b.delta, ZERO, hF), upI_bound(b, ZERO),
                       habegger_height_bound(b), theorem_slope_bound_log(b), bezout_degree_bound(b))


# -- auditing --------------------------------------------------------------------


@dataclass(frozen=True)
class AuditCheck:
    name: str
    measured: object
    bound: object
    passed: bool
    detail: str = ""

    def to_json(self):
        def enc(v):
            return v.to_json() if isinstance(v, HeightValue) else str(v)
        return {"name": self.name, "measured": enc(self.measured), "bound": enc(self.bound),
                "passed": self.passed}


@dataclass(frozen=True)
class AuditRecord:
    slope: object
    checks: tuple = field(default=())

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    def to_json(self):
        return {"slope": self.slope.to_json(), "passed": self.passed,
                "checks": [c.to_json() for c in self.checks]}


def _le(a, b):
    r = compare(a, b)
    return r is LessOrEqual, ("" if not isinstance(r, Undecided) else str(r))


def audit_point(P, b, slope, heights=None, raise_on_failure=True):
    """Check a certified point against the height, slope and degree bounds.

    The measured side is taken at its upper end and the bound at its lower
    end, so a pass is a proof.  ``heights`` overrides ``(h_m(x), h_m(y), h(x:y:1))``.
    """
    from .algebraic import point_degree

    if heights is None:
        hx, hy = point_height(P, "multiplicative")
        hP = point_height(P, "affine")
    else:
        hx, hy, hP = heights
    checks = []
    hab = habegger_height_bound(b)
    for name, h in (("habegger_x", hx), ("habegger_y", hy)):
        ok, why = _le(h, hab)
        checks.append(AuditCheck(name, h, hab, ok, why))
    hpq = proj_height_rational([slope.p, slope.q])
    rhs = upI_bound(b, hP)
    ok, why = _le(hpq, rhs)
    checks.append(AuditCheck("upI", hpq, rhs, ok, why))
    tl = theorem_slope_bound_log(b)
    ok, why = _le(hpq, tl)
    checks.append(AuditCheck("theorem_log", hpq, tl, ok, why))
    deg, cap = point_degree(P), bezout_degree_bound(b)
    checks.append(AuditCheck("degree", deg, cap, deg <= cap))
    record = AuditRecord(slope, tuple(checks))
    if raise_on_failure and not record.passed:
        bad = ", ".join(c.name for c in checks if not c.passed)
        raise AuditFailure(f"point {P!r} on slope {slope} violates: {bad}")
    return record


__all__ = [
    "AuditCheck", "AuditRecord", "BoundInputs", "BoundReport", "HABEGGER_C", "LemmaCheck",
    "THEOREM_C", "audit_point", "bezout_degree_bound", "bound_report", "habegger_height_bound",
    "lemma31_rhs", "theorem_slope_bound_log", "upI_bound", "verify_lemma31",
]
