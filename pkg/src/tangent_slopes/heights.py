"""Logarithmic Weil heights with exact and certified-interval values.

A :class:`HeightValue` is the real number

    const + sum(c_i * log(r_i)) + sum(k_j * E_j)

with rational ``const >= 0``, rational ``r_i >= 1``, nonnegative rational
coefficients, and certified enclosures ``E_j`` (refinable intervals).  Values
without enclosure parts are exact; the bound formulas stay exact this way even
when their constants are in the hundreds of thousands.  Logs are only
evaluated, with outward rounding, when a comparison needs them.
"""

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import gcd as igcd

from mpmath import iv

from . import dense
from .intervals import (_iv_from_fracs, ceil_dyadic, dyadic_str, eval_poly, floor_dyadic,
                        interval_precision, iv_bounds, parse_dyadic)
from .roots import isolate_roots

DEFAULT_BITS = 64
COMPARE_BUDGET = 4096


def _bits_for(width):
    width = Fraction(width)
    if width <= 0:
        return DEFAULT_BITS
    return max(DEFAULT_BITS, width.denominator.bit_length() - width.numerator.bit_length() + 8)


class Enclosure:
    """A real number known through rigorous intervals ``[lo, hi]``.

    ``refine(width)`` returns a tighter pair; ``floor`` is the smallest width
    the refiner can reach (zero for fully refinable quantities).
    """

    def __init__(self, lo, hi, refine=None, floor=Fraction(0), label=""):
        lo, hi = Fraction(lo), Fraction(hi)
        if lo > hi:
            raise ValueError("empty enclosure")
        self._cache = {None: (lo, hi)}
        self._refine = refine
        self.floor = Fraction(floor)
        self.label = label

    @property
    def lo(self):
        return self._cache[None][0]

    @property
    def hi(self):
        return self._cache[None][1]

    def at(self, width):
        lo, hi = self._cache[None]
        if self._refine is None or hi - lo <= width + self.floor:
            return lo, hi
        key = Fraction(width)
        if key not in self._cache:
            nlo, nhi = self._refine(key)
            # intersecting keeps every answer consistent with earlier ones
            self._cache[key] = (max(lo, nlo), min(hi, nhi))
        return self._cache[key]

    def __repr__(self):
        return f"Enclosure([{float(self.lo):.6g}, {float(self.hi):.6g}]{', ' + self.label if self.label else ''})"


class HeightValue:
    __slots__ = ("const", "logs", "encs")

    def __init__(self, const=0, logs=(), encs=()):
        const = Fraction(const)
        merged = {}
        for arg, c in logs:
            arg, c = Fraction(arg), Fraction(c)
            if arg < 1 or c < 0:
                raise ValueError("heights need log arguments >= 1 and nonnegative coefficients")
            if arg != 1 and c:
                merged[arg] = merged.get(arg, 0) + c
        if const < 0:
            raise ValueError("negative constant term")
        enc = []
        for e, c in encs:
            c = Fraction(c)
            if c < 0:
                raise ValueError("negative enclosure coefficient")
            if c:
                enc.append((e, c))
        self.const = const
        self.logs = tuple(sorted(merged.items()))
        self.encs = tuple(enc)

    # -- classification ---------------------------------------------------
    @property
    def kind(self):
        if self.encs:
            return "enclosure"
        if self.const == 0 and len(self.logs) <= 1 and all(c == 1 for _, c in self.logs):
            return "exact-log"
        return "exact-sum"

    @property
    def is_exact(self):
        return not self.encs

    @property
    def log_argument(self):
        """``r`` when the value is exactly ``log r``; otherwise ``None``."""
        if self.kind != "exact-log":
            return None
        return self.logs[0][0] if self.logs else Fraction(1)

    def is_zero(self):
        return self.is_exact and self.const == 0 and not self.logs

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = HeightValue(other)
        if not isinstance(other, HeightValue):
            return NotImplemented
        return HeightValue(self.const + other.const, self.logs + other.logs, self.encs + other.encs)

    __radd__ = __add__

    def __mul__(self, k):
        if not isinstance(k, (int, Fraction)):
            return NotImplemented
        k = Fraction(k)
        return HeightValue(self.const * k, [(a, c * k) for a, c in self.logs],
                           [(e, c * k) for e, c in self.encs])

    __rmul__ = __mul__

    def __eq__(self, other):
        # exact values compare after folding, so 3 log 4 == log 64
        if not (isinstance(other, HeightValue) and self.is_exact and other.is_exact):
            return False
        a, b = fold(self), fold(other)
        return a.const == b.const and a.logs == b.logs

    def __hash__(self):
        a = fold(self) if self.is_exact else self
        return hash((a.const, a.logs, len(self.encs)))

    # -- evaluation -------------------------------------------------------
    def bounds(self, bits=DEFAULT_BITS):
        """Rigorous rational ``(lo, hi)``, roughly ``2**-bits`` wide for exact parts."""
        width = Fraction(1, 1 << bits)
        lo = hi = self.const
        if self.logs:
            with interval_precision(bits + 32):
                acc = iv.mpf(0)
                for arg, c in self.logs:
                    acc += _iv_from_fracs(c, c) * iv.log(_iv_from_fracs(arg, arg))
                a, b = iv_bounds(acc)
            lo, hi = lo + a, hi + b
        n = max(1, len(self.encs))
        for e, c in self.encs:
            a, b = e.at(width / (n * c))
            lo, hi = lo + c * a, hi + c * b
        return max(lo, Fraction(0)), hi

    @property
    def lower(self):
        return self.bounds()[0]

    @property
    def upper(self):
        return self.bounds()[1]

    def __float__(self):
        lo, hi = self.bounds(53)
        return float((lo + hi) / 2)

    # -- output -------------------------------------------------------------
    def to_json(self, bits=DEFAULT_BITS):
        kind = self.kind
        if kind == "exact-log":
            return {"kind": "exact-log", "arg": str(self.log_argument)}
        if kind == "exact-sum":
            return {"kind": "exact-sum", "const": str(self.const),
                    "logs": [{"coef": str(c), "arg": str(a)} for a, c in self.logs]}
        lo, hi = self.bounds(bits)
        lo, hi = floor_dyadic(lo, bits), ceil_dyadic(hi, bits)
        return {"kind": "enclosure", "lo": dyadic_str(lo), "hi": dyadic_str(hi)}

    @classmethod
    def from_json(cls, data):
        kind = data["kind"]
        if kind == "exact-log":
            return ExactLog(Fraction(data["arg"]))
        if kind == "exact-sum":
            return cls(Fraction(data["const"]),
                       [(Fraction(t["arg"]), Fraction(t["coef"])) for t in data["logs"]])
        if kind == "enclosure":
            return from_enclosure(parse_dyadic(data["lo"]), parse_dyadic(data["hi"]))
        raise ValueError(f"unknown height kind {kind!r}")

    def formula(self):
        parts = []
        if self.const:
            parts.append(str(self.const))
        for a, c in self.logs:
            parts.append(f"log({a})" if c == 1 else f"{c}*log({a})")
        for e, c in self.encs:
            parts.append(f"[{float(e.lo):.6g}, {float(e.hi):.6g}]" if c == 1 else f"{c}*[{float(e.lo):.6g}, {float(e.hi):.6g}]")
        return " + ".join(parts) or "0"

    def __repr__(self):
        return f"HeightValue({self.formula()})"


def fold(value, max_bits=1 << 16):
    """Rewrite the logs of an exact value with integer coefficients as a single ``log``."""
    if not value.is_exact or not all(c.denominator == 1 for _, c in value.logs):
        return value
    size = sum(int(c) * (a.numerator.bit_length() + a.denominator.bit_length()) for a, c in value.logs)
    if size > max_bits:
        return value
    out = Fraction(1)
    for a, c in value.logs:
        out *= a ** int(c)
    return HeightValue(value.const, [(out, 1)])


def ExactLog(arg):
    """``log(arg)`` for rational ``arg >= 1``; ``ExactLog(1)`` is zero."""
    return HeightValue(0, [(Fraction(arg), 1)])


def ExactNumber(value):
    return HeightValue(Fraction(value))


ZERO = ExactLog(1)


def from_enclosure(lo, hi, refine=None, floor=0, label=""):
    return HeightValue(0, (), [(Enclosure(lo, hi, refine, floor, label), 1)])


# -- comparison ------------------------------------------------------------


class Order(Enum):
    LESS_OR_EQUAL = "LessOrEqual"
    GREATER = "Greater"

    def __str__(self):
        return self.value


LessOrEqual = Order.LESS_OR_EQUAL
Greater = Order.GREATER


@dataclass(frozen=True)
class Undecided:
    width: Fraction

    def __str__(self):
        return f"Undecided({float(self.width):.3g})"


def _exact_log_sign(a, b):
    """Sign of ``a - b`` for exact values with equal constants, by integer powering."""
    diff = {}
    for arg, c in a.logs:
        diff[arg] = diff.get(arg, 0) + c
    for arg, c in b.logs:
        diff[arg] = diff.get(arg, 0) - c
    diff = {k: v for k, v in diff.items() if v}
    if not diff:
        return 0
    den = 1
    for v in diff.values():
        den = den * v.denominator // igcd(den, v.denominator)
    cost = sum(abs(v * den) * (k.numerator.bit_length() + k.denominator.bit_length())
               for k, v in diff.items())
    if cost > 1 << 22:
        return None
    num, dd = 1, 1
    for k, v in diff.items():
        e = int(v * den)
        if e > 0:
            num *= k.numerator ** e
            dd *= k.denominator ** e
        else:
            num *= k.denominator ** -e
            dd *= k.numerator ** -e
    return (num > dd) - (num < dd)


def compare(a, b, budget=COMPARE_BUDGET):
    """``LessOrEqual`` if ``a <= b``, ``Greater`` if ``a > b``, else ``Undecided``.

    Exact values with equal rational parts are compared by exact integer
    powering.  Everything else uses outward-rounded intervals refined until
    they separate or ``budget`` bits are spent.
    """
    if a.is_exact and b.is_exact:
        if a == b:
            return LessOrEqual
        if a.const == b.const:
            s = _exact_log_sign(a, b)
            if s is not None:
                return LessOrEqual if s <= 0 else Greater
    bits = DEFAULT_BITS
    while True:
        alo, ahi = a.bounds(bits)
        blo, bhi = b.bounds(bits)
        if ahi <= blo:
            return LessOrEqual
        if alo > bhi:
            return Greater
        if bits >= budget:
            return Undecided(max(ahi - alo, bhi - blo))
        bits *= 2


def certify_le(a, b, budget=COMPARE_BUDGET):
    return compare(a, b, budget) is LessOrEqual


# -- projective heights of rational data ------------------------------------


@dataclass(frozen=True)
class CoefficientFamily:
    values: tuple
    provenance: str = ""

    def __post_init__(self):
        vals = tuple(Fraction(v) for v in self.values)
        if not vals or not any(vals):
            raise ValueError("coefficient family must contain a nonzero value")
        object.__setattr__(self, "values", vals)

    @classmethod
    def of_polys(cls, *polys, provenance=""):
        vals = []
        for f in polys:
            vals.extend(f.coefficients())
        return cls(tuple(vals), provenance)


def proj_height_rational(coords):
    """Height of the projective point with rational coordinates ``coords``."""
    coords = [Fraction(c) for c in coords]
    if not coords or not any(coords):
        raise ValueError("projective point needs a nonzero coordinate")
    den = 1
    for c in coords:
        den = den * c.denominator // igcd(den, c.denominator)
    ints = [int(c * den) for c in coords]
    g = 0
    for v in ints:
        g = igcd(g, v)
    return ExactLog(max(abs(v) // g for v in ints))


def poly_height(f):
    if f.is_zero():
        raise ValueError("the zero polynomial has no height")
    return proj_height_rational(f.coefficients())


def family_height(family):
    return proj_height_rational(family.values)


# -- algebraic numbers --------------------------------------------------------


def _is_cyclotomic(coeffs):
    D = dense.degree(coeffs)
    if coeffs[-1] != 1 or abs(coeffs[0]) != 1:
        return False
    for n in range(1, 2 * D * D + 3):
        if dense.euler_phi(n) == D and tuple(dense.cyclotomic(n)) == tuple(coeffs):
            return True
    return False


def _log_plus_interval(lo2, hi2):
    """Interval for ``log+ |z|`` given ``|z|^2`` in ``[lo2, hi2]``."""
    a = _iv_from_fracs(max(Fraction(1), lo2), max(Fraction(1), hi2))
    return iv.log(a) / 2


def mahler_height(minpoly, box=None):
    """Height of an algebraic number from its integer minimal polynomial.

    Rationals and roots of unity are exact.  Otherwise the result encloses
    ``(log|lead| + sum log+|conjugates|) / d`` and refines on demand.
    """
    coeffs = dense.to_primitive_int(minpoly.as_list() if hasattr(minpoly, "as_list") else list(minpoly))
    d = dense.degree(coeffs)
    if d < 1:
        raise ValueError("minimal polynomial must have positive degree")
    if dense.degree(dense.gcd_q(coeffs, dense.derivative(coeffs))) > 0:
        raise ValueError("minimal polynomial is not squarefree, so it is reducible")
    if box is not None and not any(r.intersects(box) for r in isolate_roots(coeffs)):
        raise ValueError("box does not meet a root of the minimal polynomial")
    if d == 1:
        return proj_height_rational([-coeffs[0], coeffs[1]])
    if _is_cyclotomic(coeffs):
        return ZERO
    lead = abs(coeffs[-1])

    def refine(width):
        boxes = isolate_roots(coeffs, width)
        with interval_precision(_bits_for(width) + 32):
            acc = iv.log(iv.mpf(lead))
            for b in boxes:
                acc += _log_plus_interval(*b.abs_squared_range())
            return iv_bounds(acc / d)

    lo, hi = refine(Fraction(1, 1 << 20))
    return from_enclosure(lo, hi, refine, label=f"h_m root of {coeffs}")


def _nonarch(mp):
    c = mp.integer_coefficients()
    return HeightValue(0, [(abs(c[-1]), Fraction(1, len(c) - 1))])


def point_height(P, mode="affine"):
    """Height of an algebraic point.

    ``mode="affine"`` gives ``h(x:y:1)``; ``mode="multiplicative"`` gives the
    pair ``(h_m(x), h_m(y))``.
    """
    if mode in ("multiplicative", "multiplicative-per-coordinate"):
        return (mahler_height(P.x_minpoly, P.x_box), mahler_height(P.y_minpoly, P.y_box))
    if mode not in ("affine", "affine-with-1"):
        raise ValueError(f"unknown height mode {mode!r}")
    if P.is_rational():
        x, y = P.rational_coordinates()
        return proj_height_rational([x, y, 1])
    K = P.field
    n = K.degree

    # Non-archimedean part: bounded below by that of any Z-combination of x, y
    # (ultrametric inequality) and above by the sum of the coordinates' parts.
    candidates = [P.x_minpoly, P.y_minpoly,
                  K.minpoly(K.add(P.x, P.y)), K.minpoly(K.sub(P.x, P.y))]
    na_lo = max(_nonarch(m).lower for m in candidates)
    na_hi = (_nonarch(P.x_minpoly) + _nonarch(P.y_minpoly)).upper
    hx, hy = point_height(P, "multiplicative")
    mult_hi = (hx + hy).upper

    def arch(width):
        boxes = isolate_roots(K.modulus, width)
        bits = _bits_for(width) + 32
        with interval_precision(bits):
            acc = iv.mpf(0)
            for b in boxes:
                z = b.as_cinterval()
                x2 = iv_bounds(eval_poly(P.x, z).abs_squared())
                y2 = iv_bounds(eval_poly(P.y, z).abs_squared())
                acc += _log_plus_interval(max(x2[0], y2[0]), max(x2[1], y2[1]))
            return iv_bounds(acc / n)

    def refine(width):
        a, b = arch(width / 2)
        return a + na_lo, min(b + na_hi, mult_hi)

    lo, hi = refine(Fraction(1, 1 << 20))
    return from_enclosure(lo, hi, refine, floor=na_hi - na_lo, label="h(x:y:1)")


__all__ = [
    "CoefficientFamily", "Enclosure", "ExactLog", "fold", "ExactNumber", "Greater", "HeightValue",
    "LessOrEqual", "Order", "Undecided", "ZERO", "certify_le", "compare", "family_height",
    "from_enclosure", "mahler_height", "point_height", "poly_height", "proj_height_rational",
]
