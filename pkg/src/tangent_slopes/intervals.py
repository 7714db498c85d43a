"""Dyadic boxes in the complex plane and rigorous complex interval evaluation."""

from contextlib import contextmanager
from dataclasses import dataclass
from fractions import Fraction

import mpmath
from mpmath import iv, libmp


@contextmanager
def interval_precision(bits):
    """Temporarily raise the working precision of ``mpmath.iv``."""
    old = iv.prec
    iv.prec = max(old, int(bits))
    try:
        yield
    finally:
        iv.prec = old


def is_dyadic(q):
    q = Fraction(q)
    d = q.denominator
    return d & (d - 1) == 0


def dyadic_str(q):
    """Format a dyadic rational as ``"m*2^e"`` with ``m`` odd (or zero)."""
    q = Fraction(q)
    if not is_dyadic(q):
        raise ValueError(f"{q} is not dyadic")
    if q == 0:
        return "0*2^0"
    m, e = q.numerator, -(q.denominator.bit_length() - 1)
    while m % 2 == 0:
        m //= 2
        e += 1
    return f"{m}*2^{e}"


def parse_dyadic(text):
    m, e = text.split("*2^")
    return Fraction(int(m)) * Fraction(2) ** int(e)


def floor_dyadic(q, bits):
    q = Fraction(q)
    return Fraction((q.numerator << bits) // q.denominator, 1 << bits)


def ceil_dyadic(q, bits):
    q = Fraction(q)
    return Fraction(-((-q.numerator << bits) // q.denominator), 1 << bits)


@dataclass(frozen=True, order=True)
class Box:
    """Closed rectangle ``[re_lo, re_hi] x [im_lo, im_hi]`` with dyadic corners."""

    re_lo: Fraction
    re_hi: Fraction
    im_lo: Fraction
    im_hi: Fraction

    @classmethod
    def point(cls, value):
        value = Fraction(value)
        return cls(value, value, Fraction(0), Fraction(0))

    @property
    def width(self):
        return max(self.re_hi - self.re_lo, self.im_hi - self.im_lo)

    @property
    def is_real(self):
        return self.im_lo == 0 and self.im_hi == 0

    def intersects(self, other):
        return not (self.re_hi < other.re_lo or other.re_hi < self.re_lo
                    or self.im_hi < other.im_lo or other.im_hi < self.im_lo)

    def contains(self, other):
        return (self.re_lo <= other.re_lo and other.re_hi <= self.re_hi
                and self.im_lo <= other.im_lo and other.im_hi <= self.im_hi)

    def strictly_contains(self, other):
        return (self.re_lo < other.re_lo and other.re_hi < self.re_hi
                and (self.im_lo < other.im_lo or self.im_lo == other.im_lo == 0 == self.im_hi)
                and (other.im_hi < self.im_hi or self.im_hi == other.im_hi == 0 == self.im_lo))

    def contains_zero(self):
        return self.re_lo <= 0 <= self.re_hi and self.im_lo <= 0 <= self.im_hi

    def abs_squared_range(self):
        """Exact range ``[lo, hi]`` of ``|z|^2`` over the box."""
        def sq_range(lo, hi):
            if lo <= 0 <= hi:
                return Fraction(0), max(lo * lo, hi * hi)
            a, b = lo * lo, hi * hi
            return min(a, b), max(a, b)
        r0, r1 = sq_range(self.re_lo, self.re_hi)
        i0, i1 = sq_range(self.im_lo, self.im_hi)
        return r0 + i0, r1 + i1

    def to_json(self):
        return [dyadic_str(v) for v in (self.re_lo, self.re_hi, self.im_lo, self.im_hi)]

    @classmethod
    def from_json(cls, items):
        return cls(*(parse_dyadic(v) for v in items))

    def as_cinterval(self):
        return CInterval(_iv_from_fracs(self.re_lo, self.re_hi), _iv_from_fracs(self.im_lo, self.im_hi))


def _iv_from_fracs(lo, hi):
    lo, hi = Fraction(lo), Fraction(hi)
    a = libmp.from_rational(lo.numerator, lo.denominator, iv.prec, libmp.round_floor)
    b = libmp.from_rational(hi.numerator, hi.denominator, iv.prec, libmp.round_ceiling)
    return iv.make_mpf((a, b))


def _iv_from_fraction(q):
    return _iv_from_fracs(q, q)


def _raw_to_fraction(raw):
    sign, man, exp, _ = raw
    if not man:
        if raw != libmp.fzero:
            raise OverflowError("interval endpoint is not finite")
        return Fraction(0)
    v = Fraction(man << exp) if exp >= 0 else Fraction(man, 1 << -exp)
    return -v if sign else v


def mpf_to_fraction(x):
    """Exact rational value of an ``mpf`` or of a degenerate ``iv.mpf``."""
    if hasattr(x, "_mpi_"):
        return _raw_to_fraction(x._mpi_[0])
    return _raw_to_fraction(mpmath.mpf(x)._mpf_)


def iv_bounds(x):
    """Exact rational endpoints of an ``iv.mpf``."""
    lo, hi = x._mpi_
    return _raw_to_fraction(lo), _raw_to_fraction(hi)


class CInterval:
    """Rectangular complex interval built on mpmath's real interval type."""

    __slots__ = ("re", "im")

    def __init__(self, re, im=None):
        self.re = re
        self.im = iv.mpf(0) if im is None else im

    @classmethod
    def from_fraction(cls, q):
        return cls(_iv_from_fraction(q))

    def __add__(self, other):
        return CInterval(self.re + other.re, self.im + other.im)

    def __sub__(self, other):
        return CInterval(self.re - other.re, self.im - other.im)

    def __mul__(self, other):
        if isinstance(other, CInterval):
            return CInterval(self.re * other.re - self.im * other.im,
                             self.re * other.im + self.im * other.re)
        other = _iv_from_fraction(other)
        return CInterval(self.re * other, self.im * other)

    def abs_squared(self):
        return self.re * self.re + self.im * self.im

    def inverse(self):
        d = self.abs_squared()
        if iv_bounds(d)[0] <= 0:
            raise ZeroDivisionError("interval may contain zero")
        return CInterval(self.re / d, -self.im / d)

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        out = CInterval(iv.mpf(1))
        base = self
        while n:
            if n & 1:
                out = out * base
            n >>= 1
            if n:
                base = base * base
        return out

    def to_box(self):
        return Box(*iv_bounds(self.re), *iv_bounds(self.im))


def eval_poly(coeffs, z):
    """Enclosure of ``sum c_i z^i`` for rational coefficients (lowest first)."""
    acc = CInterval(iv.mpf(0))
    for c in reversed(list(coeffs)):
        acc = acc * z + CInterval.from_fraction(c)
    return acc
