"""Exact sparse bivariate polynomials over the rationals.

``SparsePoly`` maps exponent pairs ``(a, b)`` (for ``x**a * y**b``) to nonzero
``Fraction`` coefficients.  Values are immutable; every operation returns a
new polynomial.  Resultants and gcds run on integer recursive-dense copies so
the heavy loops only touch Python ints.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd as igcd

from . import dense
from .errors import DegreeError, ExponentOverflow, ParseError, UnknownVariable

MAX_EXPONENT = 2**31 - 1
VARIABLES = ("x", "y")


def _check_exponent(e, position=None):
    if e > MAX_EXPONENT:
        raise ExponentOverflow(f"exponent {e} exceeds {MAX_EXPONENT}", position)
    return e


def _order_key(mono):
    a, b = mono
    return (a + b, a, b)


class SparsePoly:
    """Polynomial in ``x`` and ``y`` with rational coefficients."""

    __slots__ = ("_terms", "canonical")

    def __init__(self, terms=None, canonical=False):
        clean = {}
        for (a, b), c in (terms or {}).items():
            if a < 0 or b < 0:
                raise ValueError("negative exponents are not supported")
            _check_exponent(a)
            _check_exponent(b)
            c = Fraction(c)
            if c:
                clean[(int(a), int(b))] = c
        self._terms = clean
        self.canonical = canonical and self._is_canonical()

    # -- construction ------------------------------------------------------
    @classmethod
    def constant(cls, c):
        return cls({(0, 0): c})

    @classmethod
    def var(cls, name):
        return cls({(1, 0): 1} if name == "x" else {(0, 1): 1})

    @classmethod
    def from_univariate(cls, coeffs, var="x"):
        if var == "x":
            return cls({(i, 0): c for i, c in enumerate(coeffs)})
        return cls({(0, i): c for i, c in enumerate(coeffs)})

    # -- basic queries -----------------------------------------------------
    @property
    def terms(self):
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def coefficient(self, a, b):
        return self._terms.get((a, b), Fraction(0))

    def is_zero(self):
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def is_constant(self):
        return all(m == (0, 0) for m in self._terms)

    @property
    def degree(self):
        return max((a + b for a, b in self._terms), default=-1)

    @property
    def degree_x(self):
        return max((a for a, _ in self._terms), default=-1)

    @property
    def degree_y(self):
        return max((b for _, b in self._terms), default=-1)

    def degree_in(self, var):
        return self.degree_x if var == "x" else self.degree_y

    def leading_monomial(self):
        return max(self._terms, key=_order_key)

    def leading_coefficient(self):
        return self._terms[self.leading_monomial()] if self._terms else Fraction(0)

    def coefficients(self):
        """Coefficients in descending graded-lex order."""
        return [self._terms[m] for m in sorted(self._terms, key=_order_key, reverse=True)]

    # -- arithmetic --------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = SparsePoly.constant(other)
        if not isinstance(other, SparsePoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def _coerce(self, other):
        if isinstance(other, SparsePoly):
            return other
        if isinstance(other, (int, Fraction)):
            return SparsePoly.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for m, c in other._terms.items():
            out[m] = out.get(m, 0) + c
        return SparsePoly(out)

    __radd__ = __add__

    def __neg__(self):
        return SparsePoly({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = {}
        for (a, b), c in self._terms.items():
            for (d, e), k in other._terms.items():
                m = (a + d, b + e)
                out[m] = out.get(m, 0) + c * k
        return SparsePoly(out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative powers are not supported")
        out, base = SparsePoly.constant(1), self
        while n:
            if n & 1:
                out = out * base
            n >>= 1
            if n:
                base = base * base
        return out

    def monomial_multiply(self, a, b):
        return SparsePoly({(i + a, j + b): c for (i, j), c in self._terms.items()})

    # -- calculus and evaluation -------------------------------------------
    def derivative(self, var):
        if var == "x":
            return SparsePoly({(a - 1, b): a * c for (a, b), c in self._terms.items() if a})
        if var == "y":
            return SparsePoly({(a, b - 1): b * c for (a, b), c in self._terms.items() if b})
        raise ValueError(f"unknown variable {var!r}")

    def evaluate(self, x, y):
        total = Fraction(0)
        for (a, b), c in self._terms.items():
            total += c * Fraction(x) ** a * Fraction(y) ** b
        return total

    def __call__(self, x, y):
        return self.evaluate(x, y)

    def shear(self, k):
        """Return ``f(x - k*y, y)``."""
        if k == 0:
            return self
        out = SparsePoly()
        lin = SparsePoly({(1, 0): 1, (0, 1): -k})
        powers = {0: SparsePoly.constant(1)}
        for (a, b), c in self._terms.items():
            if a not in powers:
                powers[a] = lin ** a
            out = out + powers[a].monomial_multiply(0, b) * c
        return out

    def swap_variables(self):
        return SparsePoly({(b, a): c for (a, b), c in self._terms.items()})

    # -- normal form and printing ------------------------------------------
    def _is_canonical(self):
        if not self._terms:
            return True
        vals = list(self._terms.values())
        if any(v.denominator != 1 for v in vals):
            return False
        g = 0
        for v in vals:
            g = igcd(g, v.numerator)
        return g == 1 and self.leading_coefficient() > 0

    def canonicalize(self):
        """Integer coefficients with gcd 1 and positive graded-lex leading coefficient."""
        if not self._terms:
            return SparsePoly(canonical=True)
        den = 1
        for c in self._terms.values():
            den = den * c.denominator // igcd(den, c.denominator)
        ints = {m: int(c * den) for m, c in self._terms.items()}
        g = 0
        for v in ints.values():
            g = igcd(g, v)
        if ints[self.leading_monomial()] < 0:
            g = -g
        return SparsePoly({m: Fraction(v // g) for m, v in ints.items()}, canonical=True)

    def to_string(self, names=VARIABLES):
        if not self._terms:
            return "0"
        pieces = []
        for m in sorted(self._terms, key=_order_key, reverse=True):
            c = self._terms[m]
            factors = []
            for name, e in zip(names, m):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            mag = abs(c)
            if factors and mag == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(mag)] + factors)
            pieces.append(("-" if c < 0 else "+", body))
        sign, body = pieces[0]
        out = ("-" if sign == "-" else "") + body
        for sign, body in pieces[1:]:
            out += f" {sign} {body}"
        return out

    def __str__(self):
        return self.to_string()

    def __repr__(self):
        return f"SparsePoly({self.to_string()!r})"


@dataclass(frozen=True)
class UniPoly:
    """Dense univariate polynomial with exact rational coefficients (lowest first)."""

    coeffs: tuple
    var: str = "t"

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in dense.strip(self.coeffs)))

    @classmethod
    def from_list(cls, coeffs, var="t"):
        return cls(tuple(coeffs), var)

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def __call__(self, value):
        return dense.evaluate(self.coeffs, value)

    def as_list(self):
        return list(self.coeffs)

    def integer_coefficients(self):
        """Primitive integer coefficients with positive leading coefficient."""
        return dense.to_primitive_int(self.coeffs)

    def primitive(self):
        return UniPoly(tuple(self.integer_coefficients()), self.var)

    def squarefree(self):
        return UniPoly(tuple(dense.squarefree_part(self.coeffs)), self.var)

    def with_var(self, var):
        return UniPoly(self.coeffs, var)

    def to_sparse(self, var="x"):
        return SparsePoly.from_univariate(self.coeffs, var)

    def __str__(self):
        return SparsePoly.from_univariate(self.coeffs).to_string((self.var, "_"))


# -- parsing ------------------------------------------------------------------


class _Parser:
    def __init__(self, text, variables):
        self.text = text
        self.variables = tuple(variables)
        self.pos = 0

    def error(self, message, expected=(), cls=ParseError):
        raise cls(message, self.pos, expected)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self, ch):
        if self.peek() == ch:
            self.pos += 1
            return True
        return False

    def uint(self):
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            self.error("expected an unsigned integer", ["digit"])
        return int(self.text[start:self.pos])

    def coeff(self):
        if self.take("("):
            sign = 1
            if self.take("-"):
                sign = -1
            else:
                self.take("+")
            value = sign * self.coeff()
            if not self.take(")"):
                self.error("unbalanced parenthesis", ["')'"])
            return value
        num = self.uint()
        if self.take("/"):
            start = self.pos
            den = self.uint()
            if den == 0:
                self.pos = start
                self.error("zero denominator", ["nonzero integer"])
            return Fraction(num, den)
        return Fraction(num)

    def factor(self):
        self.skip()
        start = self.pos
        name = ""
        while self.pos < len(self.text) and self.text[self.pos].isalpha():
            name += self.text[self.pos]
            self.pos += 1
        if not name:
            self.error("expected a variable", [repr(v) for v in self.variables])
        if name not in self.variables:
            self.pos = start
            self.error(f"unknown variable {name!r}", [repr(v) for v in self.variables],
                       cls=UnknownVariable)
        exp = 1
        if self.take("^"):
            at = self.pos
            exp = self.uint()
            if exp > MAX_EXPONENT:
                self.pos = at
                self.error(f"exponent {exp} exceeds {MAX_EXPONENT}", cls=ExponentOverflow)
        return self.variables.index(name), exp

    def term(self):
        ch = self.peek()
        coeff = Fraction(1)
        mono = [0, 0]
        if ch.isdigit() or ch == "(":
            coeff = self.coeff()
            if not self.take("*"):
                return coeff, tuple(mono)
        while True:
            at = self.pos
            idx, exp = self.factor()
            mono[idx] += exp
            if mono[idx] > MAX_EXPONENT:
                self.pos = at
                self.error("combined exponent overflows", cls=ExponentOverflow)
            if not self.take("*"):
                return coeff, tuple(mono)

    def expr(self):
        terms = {}
        sign = 1
        if self.take("-"):
            sign = -1
        else:
            self.take("+")
        while True:
            c, m = self.term()
            terms[m] = terms.get(m, 0) + sign * c
            ch = self.peek()
            if ch == "+":
                sign = 1
            elif ch == "-":
                sign = -1
            elif ch == "":
                return terms
            else:
                self.error(f"unexpected character {ch!r}", ["'+'", "'-'", "'*'", "end of input"])
            self.pos += 1


def parse_poly(text, variables=VARIABLES, canonical=True):
    """Parse a polynomial expression; returns the canonical form by default."""
    parser = _Parser(text, variables)
    if not parser.peek():
        parser.error("empty expression", ["term"])
    terms = parser.expr()
    poly = SparsePoly(terms)
    return poly.canonicalize() if canonical else poly


def parse_unipoly(text, var="t"):
    poly = parse_poly(text, (var,), canonical=False)
    coeffs = [0] * (poly.degree_x + 1)
    for (a, _), c in poly.items():
        coeffs[a] = c
    return UniPoly(tuple(coeffs), var)


# -- recursive integer representation -----------------------------------------


def to_recursive(f, main):
    """Integer recursive-dense form in ``main`` plus the denominator that was cleared.

    Returns ``(R, d)`` where ``R[i]`` is the dense integer coefficient (in the other
    variable) of ``main**i`` and ``R == d * f``.
    """
    den = 1
    for c in f._terms.values():
        den = den * c.denominator // igcd(den, c.denominator)
    n = f.degree_in(main)
    rec = [[] for _ in range(n + 1)]
    acc = [dict() for _ in range(n + 1)]
    for (a, b), c in f._terms.items():
        i, j = (a, b) if main == "x" else (b, a)
        acc[i][j] = int(c * den)
    for i, d in enumerate(acc):
        if d:
            row = [0] * (max(d) + 1)
            for j, v in d.items():
                row[j] = v
            rec[i] = row
    return rec, den


def from_recursive(rec, main):
    terms = {}
    for i, row in enumerate(rec):
        for j, v in enumerate(row):
            if v:
                terms[(i, j) if main == "x" else (j, i)] = v
    return SparsePoly(terms)


def _rdeg(R):
    return len(R) - 1


def _rstrip(R):
    R = list(R)
    while R and not R[-1]:
        R.pop()
    return R


def _rprem(A, B):
    """Pseudo-remainder for polynomials with Z[t] coefficients."""
    da, db = _rdeg(A), _rdeg(B)
    if da < db:
        return list(A)
    lb = B[-1]
    R = [list(c) for c in A]
    e = da - db + 1
    while R and _rdeg(R) >= db:
        k = _rdeg(R) - db
        top = R[-1]
        R = [dense.mul(c, lb) for c in R]
        for i, c in enumerate(B):
            R[i + k] = dense.sub(R[i + k], dense.mul(top, c))
        R = _rstrip(R)
        e -= 1
    if e:
        f = dense.power(lb, e)
        R = [dense.mul(c, f) for c in R]
    return R


def _rdiv(R, d):
    return [dense.exact_div(c, d) for c in R]


def subresultant(A, B):
    """Resultant of recursive integer polynomials by the subresultant PRS.

    Follows the classical Collins/Brown-Traub scheme (Cohen, GTM 138, Alg. 3.3.7)
    with the content extraction step omitted.  Returns a dense Z[t] list.
    """
    if not A or not B:
        return []
    da, db = _rdeg(A), _rdeg(B)
    s = 1
    if da < db:
        A, B = B, A
        if da % 2 and db % 2:
            s = -1
    if _rdeg(B) == 0:
        return dense.scale(dense.power(B[0], _rdeg(A)), s)
    g, h = [1], [1]
    while True:
        delta = _rdeg(A) - _rdeg(B)
        if _rdeg(A) % 2 and _rdeg(B) % 2:
            s = -s
        R = _rprem(A, B)
        A = B
        B = _rdiv(R, dense.mul(g, dense.power(h, delta))) if R else []
        g = A[-1]
        if delta:
            h = dense.exact_div(dense.power(g, delta), dense.power(h, delta - 1))
        if not B:
            return []
        if _rdeg(B) == 0:
            break
    n = _rdeg(A)
    h = dense.exact_div(dense.power(B[0], n), dense.power(h, n - 1))
    return dense.scale(h, s)


def resultant(f, g, eliminate="y"):
    """Resultant of ``f`` and ``g`` with respect to ``eliminate``.

    The result is a :class:`UniPoly` in the remaining variable and equals the
    Sylvester determinant over the rational function field.
    """
    other = "x" if eliminate == "y" else "y"
    m, n = f.degree_in(eliminate), g.degree_in(eliminate)
    if m < 1 or n < 1:
        raise DegreeError(f"resultant needs positive degree in {eliminate} for both inputs")
    F, df = to_recursive(f, eliminate)
    G, dg = to_recursive(g, eliminate)
    res = subresultant(F, G)
    scale = Fraction(1, df ** n * dg ** m)
    return UniPoly(tuple(Fraction(c) * scale for c in res), other)


# -- gcd and squarefreeness ----------------------------------------------------


def _content(R):
    g = []
    for c in R:
        if c:
            g = dense.gcd_z(g, c) if g else dense.primitive(c)
            if dense.degree(g) == 0:
                return [1]
    return g


def _primpart(R):
    R = _rstrip(R)
    c = _content(R)
    out = _rdiv(R, c)
    return out if dense.lc(out[-1]) > 0 else [dense.neg(r) for r in out]


def gcd(f, g):
    """Canonical-form gcd of two bivariate polynomials over the rationals."""
    if f.is_zero():
        return g.canonicalize()
    if g.is_zero():
        return f.canonicalize()
    if f.degree_y <= 0 and g.degree_y <= 0:
        F, _ = to_recursive(f, "y")
        G, _ = to_recursive(g, "y")
        return SparsePoly.from_univariate(dense.gcd_z(F[0], G[0]), "x").canonicalize()
    F, _ = to_recursive(f, "y")
    G, _ = to_recursive(g, "y")
    cont = dense.gcd_z(_content(F), _content(G))
    A, B = _primpart(F), _primpart(G)
    if _rdeg(A) < _rdeg(B):
        A, B = B, A
    while B and _rdeg(B) > 0:
        R = _rprem(A, B)
        A, B = B, (_primpart(R) if _rstrip(R) else [])
    if B:  # nonzero constant remainder in y: primitive parts are coprime
        A = [[1]]
    out = from_recursive([dense.mul(c, cont) for c in A], "y")
    return out.canonicalize()


def partial_derivative(f, var):
    return f.derivative(var)


def evaluate(f, point):
    return f.evaluate(*point)


def squarefree_check(f):
    """True iff ``f`` has no repeated factor."""
    if f.is_constant():
        raise DegreeError("squarefree_check needs a nonconstant polynomial")
    gx = gcd(f, f.derivative("x"))
    gy = gcd(f, f.derivative("y"))
    return gx.degree_x <= 0 and gy.degree_y <= 0
