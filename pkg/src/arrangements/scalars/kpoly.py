"""Univariate polynomials over a number field K, plus factoring and extensions.

Coefficients are NumberFieldElements, lowest degree first, with no trailing
zeros.  Factoring over Q is delegated to sympy; over K = Q(a) it follows
Trager's norm method (shift until the norm is squarefree, factor the norm
over Q, pull the factors back with gcds over K).
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

from . import ratpoly
from .number_field import QQ, NumberField, NumberFieldElement, complex_root, nf_make, real_root


class KPoly:
    __slots__ = ("field", "c")

    def __init__(self, field: NumberField, coeffs: Sequence):
        c = [x if isinstance(x, NumberFieldElement) else field(x) for x in coeffs]
        while c and not c[-1]:
            c.pop()
        self.field, self.c = field, tuple(c)

    @classmethod
    def const(cls, a: NumberFieldElement) -> "KPoly":
        return cls(a.field, (a,))

    @classmethod
    def var(cls, field: NumberField) -> "KPoly":
        return cls(field, (field.zero, field.one))

    @property
    def degree(self) -> int:
        return len(self.c) - 1

    def __bool__(self) -> bool:
        return bool(self.c)

    def is_constant(self) -> bool:
        return len(self.c) <= 1

    def constant(self) -> NumberFieldElement:
        return self.c[0] if self.c else self.field.zero

    def lead(self) -> NumberFieldElement:
        return self.c[-1]

    def _lift(self, b) -> "KPoly":
        if isinstance(b, KPoly):
            return b
        if isinstance(b, NumberFieldElement):
            return KPoly(self.field, (b,))
        if isinstance(b, (int, Fraction)):
            return KPoly(self.field, (self.field(b),))
        return NotImplemented

    def __add__(self, b):
        b = self._lift(b)
        if b is NotImplemented:
            return b
        x, y = self.c, b.c
        if len(x) < len(y):
            x, y = y, x
        return KPoly(self.field, [x[i] + y[i] if i < len(y) else x[i] for i in range(len(x))])

    __radd__ = __add__

    def __neg__(self):
        return KPoly(self.field, [-a for a in self.c])

    def __sub__(self, b):
        b = self._lift(b)
        if b is NotImplemented:
            return b
        return self + (-b)

    def __rsub__(self, b):
        return (-self) + b

    def __mul__(self, b):
        b = self._lift(b)
        if b is NotImplemented:
            return b
        if not self.c or not b.c:
            return KPoly(self.field, ())
        out = [self.field.zero] * (len(self.c) + len(b.c) - 1)
        for i, a in enumerate(self.c):
            if a:
                for j, d in enumerate(b.c):
                    if d:
                        out[i + j] = out[i + j] + a * d
        return KPoly(self.field, out)

    __rmul__ = __mul__

    def __eq__(self, b):
        b = self._lift(b)
        if b is NotImplemented:
            return b
        return self.c == b.c

    def __hash__(self):
        return hash(self.c)

    def __repr__(self) -> str:
        if not self.c:
            return "0"
        terms = []
        for i, a in enumerate(self.c):
            if a:
                terms.append(f"({a})" + ("" if i == 0 else "*t" if i == 1 else f"*t^{i}"))
        return " + ".join(reversed(terms))

    def scale(self, a: NumberFieldElement) -> "KPoly":
        return KPoly(self.field, [x * a for x in self.c])

    def monic(self) -> "KPoly":
        if not self.c:
            return self
        return self.scale(self.lead().inv())

    def divmod(self, g: "KPoly") -> tuple["KPoly", "KPoly"]:
        if not g.c:
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.c)
        inv = g.lead().inv()
        dg = g.degree
        q = [self.field.zero] * max(0, len(r) - dg)
        while len(r) - 1 >= dg and r:
            k = len(r) - 1 - dg
            coef = r[-1] * inv
            q[k] = coef
            for i, b in enumerate(g.c):
                r[k + i] = r[k + i] - coef * b
            r.pop()
            while r and not r[-1]:
                r.pop()
        return KPoly(self.field, q), KPoly(self.field, r)

    def __call__(self, x):
        """Horner evaluation at x (a field element, or anything with * and +)."""
        out = None
        for a in reversed(self.c):
            out = a if out is None else out * x + a
        return self.field.zero if out is None else out

    def derivative(self) -> "KPoly":
        return KPoly(self.field, [a * i for i, a in enumerate(self.c)][1:])

    def compose(self, g: "KPoly") -> "KPoly":
        out = KPoly(self.field, ())
        for a in reversed(self.c):
            out = out * g + a
        return out

    def map_coeffs(self, phi, field: NumberField) -> "KPoly":
        return KPoly(field, [phi(a) for a in self.c])

    def to_ratpoly(self) -> tuple:
        if any(not a.is_rational() for a in self.c):
            raise ValueError("coefficients are not rational")
        return ratpoly.make([a.coeffs[0] for a in self.c])

    def to_json(self) -> list:
        return [[f"{x.numerator}/{x.denominator}" for x in a.coeffs] for a in self.c]

    @classmethod
    def from_json(cls, field: NumberField, obj) -> "KPoly":
        return cls(field, [field.from_coeffs([Fraction(s) for s in a]) for a in obj])


def kgcd(f: KPoly, g: KPoly) -> KPoly:
    while g:
        f, g = g, f.divmod(g)[1]
    return f.monic()


def squarefree(f: KPoly) -> KPoly:
    g = kgcd(f, f.derivative())
    return f.divmod(g)[0].monic() if g.degree > 0 else f.monic()


def content_strip(polys: Sequence[KPoly]) -> list[KPoly]:
    """Divide a tuple of polynomials by their common polynomial factor."""
    g = None
    for p in polys:
        if p:
            g = p if g is None else kgcd(g, p)
            if g.degree == 0:
                break
    if g is None or g.degree <= 0:
        return list(polys)
    return [p.divmod(g)[0] for p in polys]


# ---------------------------------------------------------------- sympy bridge


def _sym():
    import sympy

    return sympy, sympy.Symbol("t"), sympy.Symbol("y")


def _element_expr(a: NumberFieldElement, y):
    import sympy

    return sum(sympy.Rational(c.numerator, c.denominator) * y**i for i, c in enumerate(a.coeffs))


def _bivariate(f: KPoly, t, y):
    return sum(_element_expr(a, y) * t**i for i, a in enumerate(f.c))


def _minpoly_expr(K: NumberField, y):
    import sympy

    return sum(sympy.Rational(c.numerator, c.denominator) * y**i for i, c in enumerate(K.minpoly))


def _from_sympy_q(poly, K: NumberField) -> KPoly:
    coeffs = list(reversed(poly.all_coeffs()))
    return KPoly(K, [K(Fraction(int(c.p), int(c.q))) for c in coeffs])


def norm(f: KPoly):
    """Res_y(m(y), f(t, y)) as a sympy Poly over QQ in t."""
    sympy, t, y = _sym()
    K = f.field
    if K.degree == 1:
        return sympy.Poly(_bivariate(f, t, y).subs(y, 0), t, domain="QQ")
    res = sympy.resultant(_minpoly_expr(K, y), _bivariate(f, t, y), y)
    return sympy.Poly(res, t, domain="QQ")


def factor(f: KPoly) -> list[tuple[KPoly, int]]:
    """Monic irreducible factors over K with multiplicities."""
    if f.degree < 1:
        return []
    K = f.field
    sympy, t, y = _sym()
    if K.degree == 1:
        poly = sympy.Poly(_bivariate(f, t, y).subs(y, 0), t, domain="QQ")
        _, facs = sympy.factor_list(poly)
        return [(_from_sympy_q(p, K).monic(), m) for p, m in facs]
    out = []
    remaining = f.monic()
    # multiplicities by repeated division of the squarefree factors
    for g in _trager(squarefree(f)):
        m = 0
        while remaining.degree >= g.degree:
            qt, r = remaining.divmod(g)
            if r:
                break
            remaining, m = qt, m + 1
        out.append((g, max(m, 1)))
    return out


def _trager(f: KPoly) -> list[KPoly]:
    K = f.field
    alpha = K.gen
    tvar = KPoly.var(K)
    for s in (0, 1, -1, 2, -2, 3, -3, 4, -4, 5):
        shifted = f.compose(tvar - KPoly.const(alpha * s))  # h(t) = f(t - s a)
        N = norm(shifted)
        if N.degree() < 1:
            continue
        import sympy

        if sympy.gcd(N, N.diff()).degree() > 0:
            continue
        _, facs = sympy.factor_list(N)
        out = []
        back = tvar + KPoly.const(alpha * s)
        for p, _m in facs:
            g = kgcd(shifted, _from_sympy_q(p, K))
            if g.degree > 0:
                out.append(g.compose(back).monic())
        return out
    raise ArithmeticError("no squarefree norm found for Trager factoring")


# ---------------------------------------------------------------- field construction


def default_selector(minpoly) -> object:
    n_real = ratpoly.count_real_roots(ratpoly.make(minpoly))
    return real_root(0) if n_real else complex_root(0)


def field_from_minpoly(f: Sequence[Fraction]) -> NumberField:
    f = ratpoly.make(f)
    return nf_make(f, default_selector(f))


class Extension:
    """L = K(b) for b a root of an irreducible g over K, with the map K -> L."""

    def __init__(self, L: NumberField, image_of_gen: NumberFieldElement, root: NumberFieldElement, K: NumberField):
        self.L, self.image_of_gen, self.root, self.K = L, image_of_gen, root, K

    def embed(self, a: NumberFieldElement) -> NumberFieldElement:
        if self.K.degree == 1:
            return self.L(a.coeffs[0])
        out = self.L.zero
        for c in reversed(a.coeffs):
            out = out * self.image_of_gen + c
        return out


def integral_minpoly(f) -> tuple[tuple, int]:
    """Monic integral f_D(x) = D^n f(x/D) for a small D; returns (f_D, D)."""
    f = ratpoly.make(f)
    n = len(f) - 1
    D = 1
    for i, c in enumerate(f[:-1]):
        # least e with denominator(c) | e^(n-i)
        d = c.denominator
        k = n - i
        e = 1
        for p, mult in _factorize(d).items():
            e *= p ** (-(-mult // k))
        D = D * e // math.gcd(D, e)
    return tuple(c * D ** (n - i) for i, c in enumerate(f)), D


def _factorize(n: int) -> dict[int, int]:
    import sympy

    return {int(p): int(m) for p, m in sympy.factorint(n).items()}


def extend(K: NumberField, g: KPoly) -> Extension:
    """Adjoin a root of the irreducible (over K) polynomial g."""
    g = g.monic()
    if K.degree == 1:
        f, D = integral_minpoly(g.to_ratpoly())
        L = field_from_minpoly(f)
        return Extension(L, L.zero, L.gen * Fraction(1, D), K)
    sympy, t, y = _sym()
    m = _minpoly_expr(K, y)
    G = _bivariate(g, t, y)
    for c in (1, -1, 2, -2, 3, -3, 4, -4):
        # gamma = b + c*a has minimal polynomial Res_y(m(y), g(x - c y, y))
        N = sympy.Poly(sympy.resultant(m, G.subs(t, t - c * y), y), t, domain="QQ")
        if sympy.gcd(N, N.diff()).degree() > 0:
            continue
        monic_N = [Fraction(int(a.p), int(a.q)) for a in reversed(N.monic().all_coeffs())]
        f, D = integral_minpoly(monic_N)
        L = field_from_minpoly(f)
        gamma = L.gen * Fraction(1, D)
        # a is the common root of m(y) and g(gamma - c y, y) over L
        m_L = KPoly(L, [L(cf) for cf in K.minpoly])
        yv = KPoly.var(L)
        arg = KPoly.const(gamma) - yv * c
        acc = KPoly(L, ())
        for i, coef in enumerate(g.c):
            coef_L = KPoly(L, ())
            for j, q in enumerate(coef.coeffs):
                if q:
                    coef_L = coef_L + (kpow(yv, j) * L(q))
            acc = acc + coef_L * kpow(arg, i)
        h = kgcd(m_L, acc)
        if h.degree != 1:
            continue
        a_L = -h.c[0]
        return Extension(L, a_L, gamma - a_L * c, K)
    raise ArithmeticError("no primitive element found")


def kpow(p: KPoly, k: int) -> KPoly:
    out = KPoly(p.field, (p.field.one,))
    for _ in range(k):
        out = out * p
    return out
