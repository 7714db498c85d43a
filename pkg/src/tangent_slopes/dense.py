"""Dense univariate polynomial helpers.

A polynomial is a list of coefficients ``[c0, c1, ..., cn]`` (lowest degree
first) with ``cn != 0``; the zero polynomial is ``[]``.  Coefficients are
Python ints or :class:`fractions.Fraction`.  These functions never mutate
their arguments.
"""

from fractions import Fraction
from functools import lru_cache
from math import gcd as igcd


def strip(p):
    p = list(p)
    while p and not p[-1]:
        p.pop()
    return p


def degree(p):
    return len(p) - 1 if p else -1


def lc(p):
    return p[-1] if p else 0


def add(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return strip(out)


def neg(a):
    return [-c for c in a]


def sub(a, b):
    return add(a, neg(b))


def scale(a, c):
    if not c:
        return []
    return [c * x for x in a]


def mul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return strip(out)


def shift(a, k):
    """Multiply by ``t**k``."""
    return [0] * k + list(a) if a else []


def power(a, n):
    out = [1]
    base = list(a)
    while n:
        if n & 1:
            out = mul(out, base)
        n >>= 1
        if n:
            base = mul(base, base)
    return out


def evaluate(p, x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def derivative(p):
    return strip([i * c for i, c in enumerate(p)][1:])


def divmod_q(a, b):
    """Euclidean division over the rationals."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = [Fraction(c) for c in a]
    db, lb = degree(b), Fraction(b[-1])
    q = [Fraction(0)] * max(len(a) - db, 0)
    while len(a) - 1 >= db and a:
        k = len(a) - 1 - db
        c = a[-1] / lb
        q[k] = c
        for i, y in enumerate(b):
            a[i + k] -= c * y
        a = strip(a)
    return strip(q), a


def rem_q(a, b):
    return divmod_q(a, b)[1]


def exact_div(a, b):
    """Exact division in Z[t] (or Q[t]); raises ArithmeticError otherwise."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    db, lb = degree(b), b[-1]
    if degree(a) < db:
        if a:
            raise ArithmeticError("inexact polynomial division")
        return []
    q = [0] * (len(a) - db)
    integral = all(isinstance(c, int) for c in a) and all(isinstance(c, int) for c in b)
    while a and len(a) - 1 >= db:
        k = len(a) - 1 - db
        top = a[-1]
        if integral:
            c, r = divmod(top, lb)
            if r:
                raise ArithmeticError("inexact polynomial division")
        else:
            c = Fraction(top) / lb
        q[k] = c
        for i, y in enumerate(b):
            a[i + k] -= c * y
        a = strip(a)
    if a:
        raise ArithmeticError("inexact polynomial division")
    return strip(q)


def prem(a, b):
    """Pseudo-remainder of ``a`` by ``b`` (coefficients stay in the base ring)."""
    da, db = degree(a), degree(b)
    if db < 0:
        raise ZeroDivisionError("pseudo-remainder by zero")
    if da < db:
        return list(a)
    lb = b[-1]
    r = list(a)
    e = da - db + 1
    while r and degree(r) >= db:
        k = degree(r) - db
        top = r[-1]
        r = [c * lb for c in r]
        for i, y in enumerate(b):
            r[i + k] -= top * y
        r = strip(r)
        e -= 1
    return [c * lb ** e for c in r] if e else r


def content(p):
    g = 0
    for c in p:
        g = igcd(g, c)
        if g == 1:
            break
    return g


def primitive(p):
    """Integer primitive part with positive leading coefficient."""
    p = strip(p)
    if not p:
        return []
    g = content(p)
    if p[-1] < 0:
        g = -g
    return [c // g for c in p]


def clear_denominators(p):
    """Return ``(ints, d)`` with ``ints == d * p`` and ``d`` a positive integer."""
    d = 1
    for c in p:
        if isinstance(c, Fraction):
            d = d * c.denominator // igcd(d, c.denominator)
    return [int(c * d) for c in p], d


def to_primitive_int(p):
    """Primitive integer polynomial proportional to the rational polynomial ``p``."""
    return primitive(clear_denominators(strip(p))[0])


def monic(p):
    p = strip(p)
    if not p:
        return []
    c = Fraction(p[-1])
    return [Fraction(x) / c for x in p]


def gcd_q(a, b):
    """Monic gcd over the rationals, computed on primitive integer remainders."""
    a, b = to_primitive_int(a), to_primitive_int(b)
    while b:
        a, b = b, primitive(prem(a, b))
    return monic(a)


def gcd_z(a, b):
    """Primitive gcd of integer polynomials (content ignored)."""
    return to_primitive_int(gcd_q(a, b))


def squarefree_part(p):
    """Primitive squarefree part of a nonzero rational polynomial."""
    p = to_primitive_int(p)
    if degree(p) <= 0:
        return p
    g = gcd_z(p, derivative(p))
    return primitive(exact_div(p, g)) if degree(g) > 0 else p


def xgcd_q(a, b):
    """Return ``(g, s, t)`` with ``s*a + t*b == g`` monic over the rationals."""
    r0, r1 = [Fraction(c) for c in strip(a)], [Fraction(c) for c in strip(b)]
    s0, s1 = [Fraction(1)], []
    t0, t1 = [], [Fraction(1)]
    while r1:
        q, r = divmod_q(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, sub(s0, mul(q, s1))
        t0, t1 = t1, sub(t0, mul(q, t1))
    if not r0:
        return [], [], []
    c = r0[-1]
    return [x / c for x in r0], [x / c for x in s0], [x / c for x in t0]


def powmod_q(base, n, mod):
    out = [Fraction(1)]
    base = rem_q(base, mod)
    while n:
        if n & 1:
            out = rem_q(mul(out, base), mod)
        n >>= 1
        if n:
            base = rem_q(mul(base, base), mod)
    return out


def reverse(p):
    """Reciprocal polynomial ``t**deg * p(1/t)`` (trailing zeros dropped)."""
    p = strip(p)
    while p and not p[0]:
        p = p[1:]
    return list(reversed(p))


def cyclotomic(n):
    """Integer coefficients of the n-th cyclotomic polynomial."""
    return list(_cyclotomic(n))


@lru_cache(maxsize=None)
def _cyclotomic(n):
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            num = exact_div(num, list(_cyclotomic(d)))
    return tuple(num)


def euler_phi(n):
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result
