"""Seeded property checks over all kernels, packaged for the ``verify`` command."""

import random
from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from . import dense
from .algebraic import points_from_field, torsion_point_test
from .bounds import (BoundInputs, habegger_height_bound, lemma31_rhs, theorem_slope_bound_log,
                     upI_bound, verify_lemma31)
from .heights import ExactLog, LessOrEqual, compare, proj_height_rational
from .numberfield import NumberField
from .oracles import sylvester_resultant
from .poly import SparsePoly, parse_poly, resultant
from .roots import isolate_roots


@dataclass
class PropertyResult:
    name: str
    samples: int
    failures: int
    counterexample: object = None

    @property
    def passed(self):
        return self.failures == 0

    def to_json(self):
        out = {"name": self.name, "samples": self.samples, "failures": self.failures,
               "passed": self.passed}
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        return out


@dataclass
class SuiteReport:
    seed: int
    samples: int
    results: list

    @property
    def passed(self):
        return all(r.passed for r in self.results)

    def to_json(self):
        return {"seed": self.seed, "samples": self.samples, "passed": self.passed,
                "properties": [r.to_json() for r in self.results]}


def random_poly(rng, max_deg, coeff=5, density=0.6):
    terms = {}
    for a in range(max_deg + 1):
        for b in range(max_deg + 1 - a):
            if rng.random() < density:
                terms[(a, b)] = rng.randint(-coeff, coeff)
    return SparsePoly(terms)


def _random_rational(rng, bound):
    return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))


def _size(f, v):
    return f.degree_in(v)


def _check(name, n, trial):
    failures, example = 0, None
    for i in range(n):
        bad = trial(i)
        if bad is not None:
            failures += 1
            if example is None or len(str(bad)) < len(str(example)):
                example = bad
    return PropertyResult(name, n, failures, example)


def run_verification_suite(seed=0, samples=100, kernels=None):
    """Run every property on ``samples`` seeded inputs; ``kernels`` can swap implementations."""
    k = {"resultant": resultant, "isolate_roots": isolate_roots, "verify_lemma31": verify_lemma31}
    k.update(kernels or {})
    rng = random.Random(seed)
    results = []

    def res_oracle(i):
        f, g = random_poly(rng, 4, 4), random_poly(rng, 4, 4)
        if _size(f, "y") < 1 or _size(g, "y") < 1:
            return None
        mine = k["resultant"](f, g, "y").as_list()
        ref = dense.strip(sylvester_resultant(f, g, "y"))
        if list(mine) != list(ref):
            return {"f": str(f), "g": str(g)}
        return None
    results.append(_check("resultant_matches_sylvester", samples, res_oracle))

    def res_antisym(i):
        f, g = random_poly(rng, 3, 4), random_poly(rng, 3, 4)
        if _size(f, "y") < 1 or _size(g, "y") < 1:
            return None
        a, b = k["resultant"](f, g, "y").as_list(), k["resultant"](g, f, "y").as_list()
        sign = -1 if (f.degree_y * g.degree_y) % 2 else 1
        if a != dense.scale(b, sign):
            return {"f": str(f), "g": str(g)}
        return None
    results.append(_check("resultant_antisymmetry", samples, res_antisym))

    def res_mult(i):
        f, g1, g2 = (random_poly(rng, 3, 3) for _ in range(3))
        if min(_size(p, "y") for p in (f, g1, g2)) < 1:
            return None
        lhs = k["resultant"](f, g1 * g2, "y").as_list()
        rhs = dense.mul(k["resultant"](f, g1, "y").as_list(), k["resultant"](f, g2, "y").as_list())
        if lhs != dense.strip(rhs):
            return {"f": str(f), "g1": str(g1), "g2": str(g2)}
        return None
    results.append(_check("resultant_multiplicativity", max(1, samples // 4), res_mult))

    def roundtrip(i):
        f = random_poly(rng, 5, 20).canonicalize()
        if f.is_zero():
            return None
        if parse_poly(str(f)) != f or parse_poly(str(f)).to_string() != str(f):
            return {"f": str(f)}
        lam = _random_rational(rng, 50) or Fraction(1)
        if (f * lam).canonicalize() != f:
            return {"f": str(f), "lambda": str(lam)}
        return None
    results.append(_check("parse_print_canonical", samples, roundtrip))

    def roots(i):
        c = [rng.randint(-9, 9) for _ in range(rng.randint(2, 13))]
        if not dense.strip(c) or dense.degree(c) < 1:
            return None
        boxes = k["isolate_roots"](c)
        n = dense.degree(dense.squarefree_part(c))
        if len(boxes) != n or any(boxes[a].intersects(boxes[b])
                                  for a in range(len(boxes)) for b in range(a + 1, len(boxes))):
            return {"coeffs": c}
        return None
    results.append(_check("root_isolation_disjoint", samples, roots))

    def proj(i):
        v = [_random_rational(rng, 100) for _ in range(rng.randint(2, 4))]
        if not any(v):
            return None
        lam = _random_rational(rng, 30) or Fraction(3)
        h = proj_height_rational(v)
        if h != proj_height_rational([lam * c for c in v]) or h != proj_height_rational(v[::-1]):
            return {"v": [str(c) for c in v]}
        return None
    results.append(_check("projective_height_invariance", samples, proj))

    def lemma(i):
        f1, f2 = random_poly(rng, 5, 10, 0.4), random_poly(rng, 5, 10, 0.4)
        P = (Fraction(rng.randint(-10**6, 10**6), rng.randint(1, 10**6)),
             Fraction(rng.randint(-10**6, 10**6), rng.randint(1, 10**6)))
        if f1.is_zero() or f2.is_zero() or (f1.evaluate(*P) == 0 and f2.evaluate(*P) == 0):
            return None
        if not k["verify_lemma31"](f1, f2, P).holds:
            return {"f1": str(f1), "f2": str(f2), "P": [str(P[0]), str(P[1])]}
        return None
    results.append(_check("value_height_inequality", samples, lemma))

    def mono(i):
        d = rng.randint(1, 6)
        dx = rng.randint(1, d)
        dy = rng.randint(max(1, d + 1 - dx), d)  # room to raise delta by one
        hf = ExactLog(rng.randint(1, 50))
        a = BoundInputs(d, dx, dy, hf)
        bigger = [BoundInputs(d + 1, dx, dy, hf), BoundInputs(d, dx, dy, hf + ExactLog(2))]
        hP = ExactLog(rng.randint(1, 20))
        for b in bigger:
            for fn in (habegger_height_bound, theorem_slope_bound_log):
                if compare(fn(a), fn(b)) is not LessOrEqual:
                    return {"inputs": [d, dx, dy, str(hf)], "bound": fn.__name__}
            if compare(upI_bound(a, hP), upI_bound(b, hP)) is not LessOrEqual:
                return {"inputs": [d, dx, dy, str(hf)], "bound": "upI_bound"}
        if compare(upI_bound(a, hP), upI_bound(a, hP + ExactLog(3))) is not LessOrEqual:
            return {"inputs": [d, dx, dy], "bound": "upI_bound in hP"}
        if compare(lemma31_rhs(d, hP, hf), lemma31_rhs(d + 1, hP, hf)) is not LessOrEqual:
            return {"inputs": [d], "bound": "lemma31_rhs"}
        return None
    results.append(_check("bound_monotonicity", samples, mono))

    def torsion(i):
        a, b = rng.randint(1, 12), rng.randint(1, 12)
        # the point (zeta_a^i, zeta_b^j) lives in Q(zeta_lcm)
        n = lcm(a, b)
        K = NumberField(dense.cyclotomic(n))
        z = K.generator()
        X, Y = K.power(z, n // a), K.power(z, n // b)
        P = points_from_field(K, X, Y)[0]
        cert = torsion_point_test(P)
        if not cert.is_torsion or cert.order != n:
            return {"a": a, "b": b, "order": cert.order}
        return None
    results.append(_check("torsion_order_lcm", max(1, samples // 4), torsion))

    return SuiteReport(seed, samples, results)
