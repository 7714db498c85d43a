"""Independent reference computations used to cross-check the exact kernels.

Nothing here shares code with the production paths beyond ``SparsePoly``
construction: resultants come from plain Sylvester determinants evaluated at
integer points and interpolated, and the slope-scan oracle solves the full
triple system numerically before filtering candidates.
"""

from fractions import Fraction

import mpmath
import sympy


def det(matrix):
    """Determinant of a square matrix of rationals by Gaussian elimination."""
    m = [[Fraction(v) for v in row] for row in matrix]
    n = len(m)
    sign, out = 1, Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col]), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            sign = -sign
        p = m[col][col]
        out *= p
        for r in range(col + 1, n):
            if m[r][col]:
                k = m[r][col] / p
                for c in range(col, n):
                    m[r][c] -= k * m[col][c]
    return sign * out


def sylvester_matrix(a, b):
    """Sylvester matrix of coefficient lists ``a`` and ``b`` (lowest degree first).

    The formal degrees are ``len(a) - 1`` and ``len(b) - 1`` even when the
    leading entries vanish.
    """
    m, n = len(a) - 1, len(b) - 1
    size = m + n
    rows = []
    for i in range(n):
        row = [0] * size
        for j, c in enumerate(reversed(a)):
            row[i + j] = c
        rows.append(row)
    for i in range(m):
        row = [0] * size
        for j, c in enumerate(reversed(b)):
            row[i + j] = c
        rows.append(row)
    return rows


def _specialize(f, var, value):
    """Coefficient list of ``f`` in ``var`` after substituting the other variable."""
    n = f.degree_in(var)
    out = [Fraction(0)] * (n + 1)
    for (a, b), c in f.items():
        i, j = (a, b) if var == "x" else (b, a)
        out[i] += c * Fraction(value) ** j
    return out


def interpolate(xs, ys):
    """Coefficients (lowest first) of the interpolating polynomial."""
    n = len(xs)
    coef = [Fraction(y) for y in ys]
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    out = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        # out = out * (t - xs[i]) + coef[i]
        nxt = [Fraction(0)] * n
        for k in range(n - 1):
            nxt[k + 1] += out[k]
        for k in range(n):
            nxt[k] -= xs[i] * out[k]
        nxt[0] += coef[i]
        out = nxt
    while out and not out[-1]:
        out.pop()
    return out


def sylvester_resultant(f, g, eliminate="y"):
    """Resultant via dense Sylvester determinants at integer points."""
    other = "x" if eliminate == "y" else "y"
    m, n = f.degree_in(eliminate), g.degree_in(eliminate)
    bound = m * max(g.degree_in(other), 0) + n * max(f.degree_in(other), 0)
    xs = [Fraction(k) for k in range(bound + 1)]
    ys = [det(sylvester_matrix(_specialize(f, eliminate, v), _specialize(g, eliminate, v)))
          for v in xs]
    return interpolate(xs, ys)


def torus_equation(p, q):
    """``x^p y^q - 1`` with negative exponents cleared, as a sympy expression."""
    x, y = sympy.symbols("x y")
    lhs = x ** max(p, 0) * y ** max(q, 0)
    rhs = x ** max(-p, 0) * y ** max(-q, 0)
    return sympy.expand(lhs - rhs)


def brute_force_tangencies(f, p, q, digits=60, tol=None):
    """Numerically solve ``f = g = x^p y^q - 1 = 0`` in the torus, smooth on C.

    Eliminates ``y`` from each pair with Sylvester determinants, takes the gcd
    of the three eliminants with sympy, then finds every root numerically and
    keeps candidates whose residuals vanish to ``tol``.  Returns a list of
    ``(x, y)`` complex approximations.
    """
    from .poly import SparsePoly  # local import keeps the oracle self-contained

    x, y = sympy.symbols("x y")
    fe = sum(sympy.Rational(c.numerator, c.denominator) * x**a * y**b for (a, b), c in f.items())
    ge = sympy.expand(q * x * sympy.diff(fe, x) - p * y * sympy.diff(fe, y))
    he = torus_equation(p, q)
    polys = [_sparse_from_expr(e, SparsePoly) for e in (fe, ge, he)]
    if any(P.is_zero() for P in polys[1:]):
        raise ValueError("degenerate system")
    elims = []
    for a, b in ((0, 1), (0, 2), (1, 2)):
        A, B = polys[a], polys[b]
        if A.degree_y >= 1 and B.degree_y >= 1:
            r = sylvester_resultant(A, B, "y")
        elif A.degree_y < 1:
            r = [A.coefficient(i, 0) for i in range(A.degree_x + 1)]
        else:
            r = [B.coefficient(i, 0) for i in range(B.degree_x + 1)]
        elims.append(sympy.Poly(list(reversed(r)), x))
    common = elims[0]
    for e in elims[1:]:
        common = sympy.gcd(common, e)
    common = sympy.Poly(common, x)
    while common.degree() > 0 and common.eval(0) == 0:
        common = sympy.Poly(sympy.quo(common, sympy.Poly(x, x)), x)
    if common.degree() <= 0:
        return []
    tol = tol or mpmath.mpf(10) ** (-(digits // 3))
    out = []
    with mpmath.workdps(digits):
        coeffs = [mpmath.mpf(sympy.Rational(c).p) / sympy.Rational(c).q for c in common.all_coeffs()]
        for x0 in mpmath.polyroots(coeffs, maxsteps=500, extraprec=4 * digits):
            fy = sympy.Poly(fe, y)
            ycoeffs = [complex_eval(sympy.Poly(c, x), x0) for c in fy.all_coeffs()]
            while ycoeffs and abs(ycoeffs[0]) < tol:
                ycoeffs = ycoeffs[1:]
            if len(ycoeffs) < 2:
                continue
            for y0 in mpmath.polyroots(ycoeffs, maxsteps=500, extraprec=4 * digits):
                if abs(y0) < tol:
                    continue
                vals = [_eval(e, x, y, x0, y0) for e in (fe, ge, he)]
                if max(abs(v) for v in vals) > tol:
                    continue
                fx = _eval(sympy.diff(fe, x), x, y, x0, y0)
                fy_ = _eval(sympy.diff(fe, y), x, y, x0, y0)
                if abs(fx) < tol and abs(fy_) < tol:
                    continue
                if not any(abs(x0 - a) < tol and abs(y0 - b) < tol for a, b in out):
                    out.append((x0, y0))
    return out


def complex_eval(poly, value):
    acc = mpmath.mpc(0)
    for c in poly.all_coeffs():
        c = sympy.Rational(c)
        acc = acc * value + mpmath.mpf(c.p) / c.q
    return acc


def _eval(expr, x, y, x0, y0):
    total = mpmath.mpc(0)
    for (a, b), c in sympy.Poly(expr, x, y).terms():
        c = sympy.Rational(c)
        total += (mpmath.mpf(c.p) / c.q) * x0**a * y0**b
    return total


def _sparse_from_expr(expr, cls):
    x, y = sympy.symbols("x y")
    terms = {}
    for (a, b), c in sympy.Poly(expr, x, y).terms():
        c = sympy.Rational(c)
        terms[(a, b)] = Fraction(int(c.p), int(c.q))
    return cls(terms)


def canonical_slopes(radius):
    """Canonical coprime slopes with ``max(|p|, |q|) <= radius`` (oracle copy)."""
    from math import gcd

    out = []
    for p in range(-radius, radius + 1):
        for q in range(0, radius + 1):
            if gcd(abs(p), q) != 1:
                continue
            if q == 0 and p != 1:
                continue
            out.append((p, q))
    return sorted(out, key=lambda s: (max(abs(s[0]), s[1]), s[0], s[1]))


def newton_root(coeffs, start, digits=50):
    """Polish an approximate root with mpmath's Newton iteration."""
    with mpmath.workdps(digits):
        poly = lambda t: mpmath.polyval([mpmath.mpf(int(c)) for c in reversed(coeffs)], t)
        return mpmath.findroot(poly, start)


def numeric_torus_solutions(f, g, digits=80, tol=None):
    """Numeric points of ``f = g = 0`` with both coordinates nonzero.

    Uses sympy's resultant and ``mpmath.polyroots`` only, so it shares no code
    with the certified solver.
    """
    x, y = sympy.symbols("x y")

    def expr(P):
        return sum(sympy.Rational(c.numerator, c.denominator) * x**a * y**b for (a, b), c in P.items())

    fe, ge = expr(f), expr(g)
    res = sympy.Poly(sympy.resultant(fe, ge, y), x)
    if res.is_zero:
        raise ValueError("common component")
    res = sympy.Poly(sympy.sqf_part(res), x)
    while res.degree() > 0 and res.eval(0) == 0:
        res = sympy.Poly(sympy.quo(res, sympy.Poly(x, x)), x)
    if res.degree() <= 0:
        return []
    tol = tol or mpmath.mpf(10) ** (-(digits // 4))
    out = []
    with mpmath.workdps(digits):
        coeffs = [mpmath.mpf(int(c)) for c in res.all_coeffs()]
        for x0 in mpmath.polyroots(coeffs, maxsteps=2000, extraprec=8 * digits):
            fy = sympy.Poly(fe, y)
            ycoeffs = [complex_eval(sympy.Poly(c, x), x0) for c in fy.all_coeffs()]
            while ycoeffs and abs(ycoeffs[0]) < tol:
                ycoeffs = ycoeffs[1:]
            if len(ycoeffs) < 2:
                continue
            for y0 in mpmath.polyroots(ycoeffs, maxsteps=2000, extraprec=8 * digits):
                if abs(y0) < tol or abs(_eval(ge, x, y, x0, y0)) > tol:
                    continue
                if not any(abs(x0 - a) < tol and abs(y0 - b) < tol for a, b in out):
                    out.append((x0, y0))
    return out
