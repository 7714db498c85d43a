"""Arithmetic in residue fields Q[s]/(r(s)) for irreducible integer ``r``.

Elements are tuples of ``Fraction`` (lowest power first) reduced modulo ``r``.
"""

from fractions import Fraction
from functools import cached_property

from . import dense
from .intervals import eval_poly, interval_precision
from .poly import SparsePoly, UniPoly, resultant


class NumberField:
    def __init__(self, modulus):
        mod = dense.to_primitive_int(modulus)
        if dense.degree(mod) < 1:
            raise ValueError("modulus must have positive degree")
        self.modulus = tuple(mod)

    def __eq__(self, other):
        return isinstance(other, NumberField) and self.modulus == other.modulus

    def __hash__(self):
        return hash(self.modulus)

    def __repr__(self):
        return f"NumberField({UniPoly(self.modulus, 's')})"

    @property
    def degree(self):
        return len(self.modulus) - 1

    @cached_property
    def _mod_q(self):
        return [Fraction(c) for c in self.modulus]

    def reduce(self, p):
        p = dense.strip([Fraction(c) for c in p])
        if len(p) > self.degree:
            p = dense.rem_q(p, self._mod_q)
        return tuple(p)

    def element(self, value):
        if isinstance(value, (int, Fraction)):
            return self.reduce([value])
        return self.reduce(value)

    def generator(self):
        return self.reduce([0, 1])

    def one(self):
        return (Fraction(1),)

    def zero(self):
        return ()

    def add(self, a, b):
        return tuple(dense.add(list(a), list(b)))

    def sub(self, a, b):
        return tuple(dense.sub(list(a), list(b)))

    def neg(self, a):
        return tuple(-c for c in a)

    def mul(self, a, b):
        return self.reduce(dense.mul(list(a), list(b)))

    def scale(self, a, c):
        return tuple(dense.scale(list(a), Fraction(c)))

    def inverse(self, a):
        if not a:
            raise ZeroDivisionError("zero has no inverse")
        g, s, _ = dense.xgcd_q(list(a), self._mod_q)
        if dense.degree(g) != 0:
            raise ZeroDivisionError("element is a zero divisor; modulus is reducible")
        return self.reduce(s)

    def div(self, a, b):
        return self.mul(a, self.inverse(b))

    def power(self, a, n):
        if n < 0:
            return self.power(self.inverse(a), -n)
        out, base = self.one(), a
        while n:
            if n & 1:
                out = self.mul(out, base)
            n >>= 1
            if n:
                base = self.mul(base, base)
        return out

    def is_zero(self, a):
        return not a

    def is_rational(self, a):
        return len(a) <= 1

    def rational_value(self, a):
        return a[0] if a else Fraction(0)

    def evaluate(self, f, X, Y):
        """Exact value of the bivariate ``f`` at ``(X, Y)``."""
        xp, yp = {0: self.one()}, {0: self.one()}

        def pw(cache, base, n):
            if n not in cache:
                cache[n] = self.power(base, n)
            return cache[n]

        total = self.zero()
        for (a, b), c in f.items():
            term = self.mul(pw(xp, X, a), pw(yp, Y, b))
            total = self.add(total, self.scale(term, c))
        return total

    def charpoly(self, a):
        """Integer polynomial proportional to the characteristic polynomial of ``a``."""
        if self.is_rational(a):
            c = self.rational_value(a)
            lin = [-c.numerator, c.denominator]
            return dense.power(lin, self.degree)
        num, den = dense.clear_denominators(list(a))
        r = SparsePoly.from_univariate(self.modulus, "x")
        h = SparsePoly({(0, 1): den}) - SparsePoly.from_univariate(num, "x")
        return dense.to_primitive_int(resultant(r, h, eliminate="x").as_list())

    def minpoly(self, a):
        """Minimal polynomial of ``a`` (primitive, positive leading coefficient)."""
        if self.is_rational(a):
            c = self.rational_value(a)
            return UniPoly((-c.numerator, c.denominator))
        return UniPoly(tuple(dense.squarefree_part(self.charpoly(a))))

    def enclose(self, a, s_box):
        """Interval enclosure of the embedding ``s -> root in s_box`` applied to ``a``."""
        with interval_precision(working_precision(s_box)):
            return eval_poly(a, s_box.as_cinterval())


def working_precision(box):
    """Interval precision comfortably finer than the box itself."""
    w = box.width
    bits = 64 if not w else max(64, w.denominator.bit_length() - w.numerator.bit_length() + 64)
    return bits


def element_to_text(a, var="s"):
    return SparsePoly.from_univariate(list(a)).to_string((var, "_"))
