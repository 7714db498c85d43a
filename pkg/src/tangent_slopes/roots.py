"""Certified isolation of the complex roots of integer polynomials.

Approximations come from mpmath's Durand-Kerner solver.  They are only a
starting point: each candidate is rounded to a dyadic Gaussian rational and
the inclusion radius ``n * |p(z_i) / (lc * prod_{j != i} (z_i - z_j))|`` is
computed exactly in integer arithmetic.  Discs of that radius cover all
roots and every connected component of ``k`` discs holds exactly ``k`` roots
(Smith's theorem), so pairwise disjoint discs certify one root each.  Boxes
are the circumscribed dyadic squares, required to be pairwise disjoint.
Candidates snapped onto the real axis give self-conjugate discs; a
self-conjugate disc holding a single root holds a real root, which is then
reported with an exact zero imaginary part.
"""

from fractions import Fraction
from functools import lru_cache
from math import isqrt

import mpmath

from . import dense
from .errors import PrecisionExhausted
from .intervals import Box, ceil_dyadic, floor_dyadic

START_BITS = 64
MAX_BITS = 16384


def _ceil_sqrt_fraction(num, den, bits):
    """Dyadic upper bound (at ``2**-bits`` resolution) for ``sqrt(num/den)``."""
    scaled = num << (2 * bits)
    m = -(-scaled // den)
    r = isqrt(m)
    if r * r < m:
        r += 1
    return Fraction(r, 1 << bits)


def _approximate(coeffs, bits):
    dps = max(30, int(bits * 0.31) + 10)
    with mpmath.workdps(dps):
        poly = [mpmath.mpf(c) for c in reversed(coeffs)]
        try:
            return mpmath.polyroots(poly, maxsteps=max(100, 4 * len(coeffs)),
                                    extraprec=bits, error=False)
        except mpmath.libmp.NoConvergence:
            return None


def _certify(coeffs, approx, bits):
    """Return certified boxes for the approximations, or ``None`` if they do not isolate."""
    n = len(coeffs) - 1
    lead = coeffs[-1]
    scale = 1 << bits
    pts = []
    with mpmath.workprec(bits + 32):
        for z in approx:
            z = mpmath.mpc(z)
            re = int(mpmath.nint(z.real * scale))
            im = int(mpmath.nint(z.imag * scale))
            if abs(z.imag) <= mpmath.mpf(2) ** (-(bits // 2)) * max(1, abs(z)):
                im = 0
            pts.append((re, im))
    if len(set(pts)) != n:
        return None
    radii = []
    for i, (a, b) in enumerate(pts):
        # p(z) * 2^(bits*n) as a Gaussian integer, by Horner.
        vr, vi = coeffs[-1], 0
        pw = 1
        for c in reversed(coeffs[:-1]):
            pw *= scale
            vr, vi = vr * a - vi * b + c * pw, vr * b + vi * a
        dr, di = 1, 0
        for j, (c, d) in enumerate(pts):
            if j != i:
                er, ei = a - c, b - d
                dr, di = dr * er - di * ei, dr * ei + di * er
        den_abs = dr * dr + di * di
        if den_abs == 0:
            return None
        # radius^2 = n^2 |P|^2 / (lead^2 |D|^2 4^bits), everything over 2^bits scale.
        num = n * n * (vr * vr + vi * vi)
        den = lead * lead * den_abs * scale * scale
        radii.append(_ceil_sqrt_fraction(num, den, bits + 8))
    boxes = []
    for (a, b), r in zip(pts, radii):
        cr, ci = Fraction(a, scale), Fraction(b, scale)
        boxes.append((Box(cr - r, cr + r, ci - r, ci + r), b == 0))
    for i in range(n):
        for j in range(i + 1, n):
            if boxes[i][0].intersects(boxes[j][0]):
                return None
    out = []
    for box, real in boxes:
        if real:
            box = Box(box.re_lo, box.re_hi, Fraction(0), Fraction(0))
        out.append(box)
    return out


def _linear_box(coeffs, width):
    root = Fraction(-coeffs[0], coeffs[1])
    bits = START_BITS
    while Fraction(1, 1 << bits) > width:
        bits *= 2
    if root.denominator & (root.denominator - 1) == 0:
        return Box.point(root)
    return Box(floor_dyadic(root, bits), ceil_dyadic(root, bits), Fraction(0), Fraction(0))


@lru_cache(maxsize=4096)
def _isolate(coeffs, width):
    coeffs = list(coeffs)
    n = len(coeffs) - 1
    if n <= 0:
        return ()
    if n == 1:
        return (_linear_box(coeffs, width if width is not None else Fraction(1, 1 << START_BITS)),)
    bits = START_BITS
    while bits <= MAX_BITS:
        approx = _approximate(coeffs, bits)
        if approx is not None:
            boxes = _certify(coeffs, approx, bits)
            if boxes is not None and (width is None or all(b.width <= width for b in boxes)):
                return tuple(sorted(boxes))
        bits *= 2
    raise PrecisionExhausted(f"root isolation did not converge within {MAX_BITS} bits")


def isolate_roots(u, width=None):
    """Pairwise disjoint boxes, one per distinct complex root of ``u``.

    ``u`` is a :class:`UniPoly` or a coefficient list (lowest degree first).
    The squarefree part is taken first.  ``width`` optionally caps box width.
    """
    coeffs = u.as_list() if hasattr(u, "as_list") else list(u)
    if not dense.strip(coeffs):
        raise ValueError("the zero polynomial has no isolated roots")
    sqf = tuple(dense.squarefree_part(coeffs))
    return list(_isolate(sqf, Fraction(width) if width is not None else None))


def refine_root(u, box, width):
    """Narrow ``box`` (which isolates one root of ``u``) to width at most ``width``."""
    target = Fraction(width)
    while True:
        hits = [b for b in isolate_roots(u, target) if b.intersects(box)]
        if len(hits) == 1:
            return hits[0]
        if target < Fraction(1, 1 << MAX_BITS):
            raise PrecisionExhausted("could not separate the root from its box neighbours")
        target /= 2**16


def roots_meeting(u, box):
    """Isolated root boxes of ``u`` meeting ``box``, refined to a quarter of its width.

    When ``box`` is known to contain a root of ``u`` a single hit identifies it;
    several hits mean the caller has to shrink ``box`` first.
    """
    target = box.width / 4 if box.width else Fraction(1, 1 << START_BITS)
    target = max(target, Fraction(1, 1 << MAX_BITS))
    return [b for b in isolate_roots(u, target) if b.intersects(box)]
