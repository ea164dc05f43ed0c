"""Dense univariate polynomials over Q and exact real-root isolation.

Polynomials are tuples of :class:`fractions.Fraction`, lowest degree first,
with no trailing zeros (the zero polynomial is the empty tuple).
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

RatPoly = tuple  # tuple[Fraction, ...]


def make(coeffs: Iterable) -> RatPoly:
    out = [Fraction(c) for c in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def degree(f: RatPoly) -> int:
    return len(f) - 1


def add(f: RatPoly, g: RatPoly) -> RatPoly:
    n = max(len(f), len(g))
    return make((f[i] if i < len(f) else 0) + (g[i] if i < len(g) else 0) for i in range(n))


def sub(f: RatPoly, g: RatPoly) -> RatPoly:
    n = max(len(f), len(g))
    return make((f[i] if i < len(f) else 0) - (g[i] if i < len(g) else 0) for i in range(n))


def scale(f: RatPoly, c) -> RatPoly:
    return make(a * c for a in f)


def mul(f: RatPoly, g: RatPoly) -> RatPoly:
    if not f or not g:
        return ()
    out = [Fraction(0)] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return make(out)


def divmod_(f: RatPoly, g: RatPoly) -> tuple[RatPoly, RatPoly]:
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(f)
    dg = len(g) - 1
    lead = g[-1]
    q = [Fraction(0)] * max(len(f) - dg, 1)
    while len(r) - 1 >= dg and r:
        c = r[-1] / lead
        shift = len(r) - 1 - dg
        q[shift] = c
        for i, b in enumerate(g):
            r[shift + i] -= c * b
        while r and r[-1] == 0:
            r.pop()
    return make(q), make(r)


def monic(f: RatPoly) -> RatPoly:
    return scale(f, 1 / f[-1]) if f else f


def gcd(f: RatPoly, g: RatPoly) -> RatPoly:
    while g:
        f, g = g, divmod_(f, g)[1]
    return monic(f)


def xgcd(f: RatPoly, g: RatPoly) -> tuple[RatPoly, RatPoly, RatPoly]:
    """Return (d, s, t) with s*f + t*g = d, d monic."""
    r0, r1 = f, g
    s0, s1 = (Fraction(1),), ()
    t0, t1 = (), (Fraction(1),)
    while r1:
        q, r = divmod_(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, sub(s0, mul(q, s1))
        t0, t1 = t1, sub(t0, mul(q, t1))
    if not r0:
        return (), (), ()
    c = 1 / r0[-1]
    return scale(r0, c), scale(s0, c), scale(t0, c)


def derivative(f: RatPoly) -> RatPoly:
    return make(i * f[i] for i in range(1, len(f)))


def evaluate(f: RatPoly, x):
    acc = Fraction(0) if isinstance(x, (int, Fraction)) else 0
    for c in reversed(f):
        acc = acc * x + c
    return acc


def squarefree_part(f: RatPoly) -> RatPoly:
    g = gcd(f, derivative(f))
    return monic(divmod_(f, g)[0])


def discriminant(f: RatPoly) -> Fraction:
    """Discriminant via the resultant with the derivative (degree >= 1)."""
    n = degree(f)
    if n < 1:
        raise ValueError("discriminant of a constant")
    res = resultant(f, derivative(f))
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return sign * res / f[-1]


def resultant(f: RatPoly, g: RatPoly) -> Fraction:
    # Euclidean algorithm over a field
    if not f or not g:
        return Fraction(0)
    m, n = degree(f), degree(g)
    if n == 0:
        return g[0] ** m
    if m == 0:
        return f[0] ** n
    r = divmod_(f, g)[1]
    if not r:
        return Fraction(0)
    sign = -1 if (m * n) % 2 else 1
    return sign * g[-1] ** (m - degree(r)) * resultant(g, r)


def squarefree_integer_part(x: Fraction) -> int:
    """Squarefree integer s with x = s * (rational)^2."""
    x = Fraction(x)
    if x == 0:
        return 0
    n = x.numerator * x.denominator
    sign = -1 if n < 0 else 1
    n = abs(n)
    out = 1
    d = 2
    while d * d <= n:
        while n % (d * d) == 0:
            n //= d * d
        if n % d == 0:
            out *= d
            n //= d
        d += 1
    return sign * out * n


# ---------------------------------------------------------------- Sturm chains


def sturm_sequence(f: RatPoly) -> list[RatPoly]:
    seq = [f, derivative(f)]
    while seq[-1]:
        r = divmod_(seq[-2], seq[-1])[1]
        if not r:
            break
        seq.append(scale(r, -1))
    return [p for p in seq if p]


def _variations(seq: Sequence[RatPoly], x: Fraction) -> int:
    signs = []
    for p in seq:
        v = evaluate(p, x)
        if v:
            signs.append(v > 0)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _variations_at_infinity(seq: Sequence[RatPoly], positive: bool) -> int:
    signs = []
    for p in seq:
        lead = p[-1] > 0
        if not positive and degree(p) % 2:
            lead = not lead
        signs.append(lead)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_real_roots(f: RatPoly, lo: Fraction | None = None, hi: Fraction | None = None) -> int:
    """Distinct real roots of f in (lo, hi]; the whole line when bounds are None."""
    f = make(f)
    if degree(f) < 1:
        return 0
    seq = sturm_sequence(f)
    v_lo = _variations_at_infinity(seq, False) if lo is None else _variations(seq, Fraction(lo))
    v_hi = _variations_at_infinity(seq, True) if hi is None else _variations(seq, Fraction(hi))
    return v_lo - v_hi


def root_bound(f: RatPoly) -> Fraction:
    lead = abs(f[-1])
    return 1 + max(abs(c) / lead for c in f[:-1]) if len(f) > 1 else Fraction(1)


def isolate_real_roots(f: RatPoly) -> list[tuple[Fraction, Fraction]]:
    """Isolating intervals (a, b) for the distinct real roots, ascending.

    Each interval holds exactly one root; if the root is rational and was hit
    by bisection, the interval is degenerate (a == b).
    """
    f = make(f)
    if degree(f) < 1:
        return []
    seq = sturm_sequence(f)
    bound = root_bound(f)
    out: list[tuple[Fraction, Fraction]] = []

    def count(a: Fraction, b: Fraction) -> int:
        return _variations(seq, a) - _variations(seq, b)

    stack = [(-bound, bound)]
    while stack:
        a, b = stack.pop()
        k = count(a, b)
        if k == 0:
            continue
        if k == 1:
            out.append((a, b))
            continue
        m = (a + b) / 2
        stack.append((m, b))
        stack.append((a, m))
    out.sort()
    # count() is over (a, b]; a root at b belongs to this interval.
    return [(a, b) if evaluate(f, b) != 0 else (b, b) for a, b in out]


def refine_root(f: RatPoly, a: Fraction, b: Fraction, width: Fraction) -> tuple[Fraction, Fraction]:
    """Bisect an isolating interval (a, b) until b - a <= width.

    The bisection is deterministic, so smaller widths give nested intervals.
    """
    if a == b:
        return a, b
    fb = evaluate(f, b)
    while b - a > width:
        m = (a + b) / 2
        fm = evaluate(f, m)
        if fm == 0:
            return m, m
        if (fm > 0) == (fb > 0):
            b, fb = m, fm
        else:
            a = m
    return a, b

