"""Algebraic number fields Q[x]/(f) with a designated embedding.

Elements are stored densely as integer numerators over one positive common
denominator (lowest terms), which keeps the 7-digit coordinates of the larger
datasets fast to multiply.  The embedding (which root of f the generator
stands for) belongs to the field descriptor, so the same coordinates can be
read under either real root of a quadratic.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable

import mpmath

from . import ratpoly
from .finite import FieldMismatchError

REAL_BY_INDEX = "real-root-by-index"
UNIQUE_REAL = "unique-real-root"
COMPLEX_BY_INDEX = "complex-pair-by-index"


@dataclass(frozen=True)
class RootSelector:
    """Which root of the minimal polynomial the generator denotes.

    Real roots are indexed 0, 1, ... in ascending order; non-real roots are
    indexed in ascending (real part, imaginary part) order.
    """

    kind: str
    index: int = 0

    def __post_init__(self):
        if self.kind not in (REAL_BY_INDEX, UNIQUE_REAL, COMPLEX_BY_INDEX):
            raise ValueError(f"unknown selector kind {self.kind!r}")
        if self.index < 0:
            raise ValueError("selector index must be >= 0")

    @property
    def is_real(self) -> bool:
        return self.kind != COMPLEX_BY_INDEX

    def to_json(self) -> dict:
        if self.kind == UNIQUE_REAL:
            return {"kind": self.kind}
        return {"kind": self.kind, "index": self.index}

    @classmethod
    def from_json(cls, obj) -> "RootSelector":
        if isinstance(obj, str):
            return cls(obj)
        return cls(obj["kind"], int(obj.get("index", 0)))


def real_root(index: int) -> RootSelector:
    return RootSelector(REAL_BY_INDEX, index)


def unique_real_root() -> RootSelector:
    return RootSelector(UNIQUE_REAL)


def complex_root(index: int) -> RootSelector:
    return RootSelector(COMPLEX_BY_INDEX, index)


def is_irreducible_over_q(f) -> bool:
    import sympy

    x = sympy.Symbol("x")
    poly = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(f)], x, domain="QQ")
    return poly.degree() >= 1 and poly.is_irreducible


@dataclass(frozen=True)
class NumberField:
    minpoly: tuple  # tuple[Fraction, ...], monic, lowest degree first
    selector: RootSelector

    @property
    def degree(self) -> int:
        return len(self.minpoly) - 1

    def __repr__(self) -> str:
        return f"NumberField({poly_str(self.minpoly)}, {self.selector.kind}:{self.selector.index})"

    # -- arithmetic kernel ---------------------------------------------------

    @cached_property
    def _modulus(self) -> tuple[list[int], int]:
        den = math.lcm(*(c.denominator for c in self.minpoly))
        return [int(c * den) for c in self.minpoly], den

    def _reduce(self, num: list[int], den: int) -> "NumberFieldElement":
        d = self.degree
        mn, md = self._modulus
        while len(num) > d:
            top = num.pop()
            if top:
                shift = len(num) - d
                if md != 1:
                    num = [c * md for c in num]
                    den *= md
                for i in range(d):
                    num[shift + i] -= top * mn[i]
        num = num + [0] * (d - len(num))
        return NumberFieldElement._make(self, num, den)

    # -- embeddings ----------------------------------------------------------

    @cached_property
    def real_root_intervals(self) -> list[tuple[Fraction, Fraction]]:
        return ratpoly.isolate_real_roots(self.minpoly)

    @property
    def real_root_count(self) -> int:
        return len(self.real_root_intervals)

    @cached_property
    def _root_interval(self) -> tuple[Fraction, Fraction]:
        sel = self.selector
        roots = self.real_root_intervals
        if sel.kind == UNIQUE_REAL:
            if len(roots) != 1:
                raise ValueError(f"{poly_str(self.minpoly)} has {len(roots)} real roots, not exactly one")
            return roots[0]
        if sel.kind == REAL_BY_INDEX:
            if sel.index >= len(roots):
                raise ValueError(f"{poly_str(self.minpoly)} has no real root with index {sel.index}")
            return roots[sel.index]
        raise ValueError("selector designates a complex embedding")

    @cached_property
    def _bisections(self) -> list[tuple[Fraction, Fraction]]:
        # grows on demand; entry k has width (b0 - a0) / 2**k
        return [self._root_interval]

    def _root_interval_at(self, k: int) -> tuple[Fraction, Fraction]:
        chain = self._bisections
        f = self.minpoly
        while len(chain) <= k:
            a, b = chain[-1]
            if a == b:
                chain.append((a, b))
                continue
            m = (a + b) / 2
            fm = ratpoly.evaluate(f, m)
            fb = ratpoly.evaluate(f, b)
            if fm == 0:
                chain.append((m, m))
            elif (fm > 0) == (fb > 0):
                chain.append((a, m))
            else:
                chain.append((m, b))
        return chain[k]

    def complex_roots(self, dps: int = 50) -> list:
        """Non-real roots at the given decimal precision, in selector order."""
        with mpmath.workdps(dps + 10):
            coeffs = [mpmath.mpf(c.numerator) / c.denominator for c in reversed(self.minpoly)]
            if self.degree == 1:
                return []
            roots = mpmath.polyroots(coeffs, maxsteps=200 + 10 * dps, extraprec=4 * dps)
            nonreal = [r for r in roots if abs(mpmath.im(r)) > mpmath.mpf(10) ** (-(dps // 2))]
            nonreal.sort(key=lambda r: (float(mpmath.re(r)), float(mpmath.im(r))))
            if len(nonreal) != self.degree - self.real_root_count:
                raise ArithmeticError("complex root separation failed; raise dps")
            return nonreal

    def embedding_root(self, dps: int = 50):
        """The designated root as an mpmath number."""
        if self.selector.is_real:
            a, b = self._root_interval_at(4 * dps)
            with mpmath.workdps(dps + 10):
                return (mpmath.mpf(a.numerator) / a.denominator + mpmath.mpf(b.numerator) / b.denominator) / 2
        roots = self.complex_roots(dps)
        if self.selector.index >= len(roots):
            raise ValueError(f"{poly_str(self.minpoly)} has no complex root with index {self.selector.index}")
        return roots[self.selector.index]

    def validate_selector(self) -> None:
        if self.selector.is_real:
            self._root_interval
        else:
            n_complex = self.degree - self.real_root_count
            if self.selector.index >= n_complex:
                raise ValueError(f"{poly_str(self.minpoly)} has {n_complex} non-real roots; no index {self.selector.index}")

    def all_selectors(self) -> list[RootSelector]:
        n_real = self.real_root_count
        return [real_root(i) for i in range(n_real)] + [complex_root(i) for i in range(self.degree - n_real)]

    def with_selector(self, selector: RootSelector) -> "NumberField":
        out = NumberField(self.minpoly, selector)
        out.validate_selector()
        return out

    # -- element constructors -------------------------------------------------

    def __call__(self, value) -> "NumberFieldElement":
        if isinstance(value, NumberFieldElement):
            if value.field != self:
                raise FieldMismatchError(f"{value.field} vs {self}")
            return value
        if isinstance(value, (int, Fraction)):
            v = Fraction(value)
            return NumberFieldElement._make(self, [v.numerator] + [0] * (self.degree - 1), v.denominator)
        if isinstance(value, str):
            v = Fraction(value)
            return self(v)
        return self.from_coeffs(value)

    def from_coeffs(self, coeffs: Iterable) -> "NumberFieldElement":
        cs = [Fraction(c) for c in coeffs]
        if not cs:
            cs = [Fraction(0)]
        den = math.lcm(*(c.denominator for c in cs))
        num = [int(c * den) for c in cs]
        return self._reduce(num, den)

    @property
    def zero(self) -> "NumberFieldElement":
        return self(0)

    @property
    def one(self) -> "NumberFieldElement":
        return self(1)

    @property
    def gen(self) -> "NumberFieldElement":
        return self.from_coeffs([0, 1])


def poly_str(f, var: str = "x") -> str:
    parts = []
    for i in range(len(f) - 1, -1, -1):
        c = Fraction(f[i])
        if not c:
            continue
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        mag = abs(c)
        coef = str(mag) if (mag != 1 or i == 0) else ""
        sign = "-" if c < 0 else "+"
        parts.append((sign, coef + mono))
    if not parts:
        return "0"
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def nf_make(minpoly, selector: RootSelector) -> NumberField:
    """Validated field descriptor; `minpoly` is lowest degree first."""
    f = ratpoly.make(minpoly)
    if len(f) < 2:
        raise ValueError("minimal polynomial must have degree >= 1")
    if f[-1] != 1:
        raise ValueError("minimal polynomial must be monic")
    if not is_irreducible_over_q(f):
        raise ValueError(f"{poly_str(f)} is reducible over Q")
    field = NumberField(f, selector)
    field.validate_selector()
    return field


QQ = NumberField((Fraction(0), Fraction(1)), unique_real_root())


class NumberFieldElement:
    __slots__ = ("field", "num", "den")

    def __init__(self, field: NumberField, coeffs: Iterable):
        other = field.from_coeffs(coeffs)
        self.field, self.num, self.den = field, other.num, other.den

    @classmethod
    def _make(cls, field: NumberField, num: list[int], den: int) -> "NumberFieldElement":
        g = math.gcd(den, *num)
        if den < 0:
            g = -g
        if g != 1:
            num = [c // g for c in num]
            den //= g
        out = object.__new__(cls)
        out.field, out.num, out.den = field, tuple(num), den
        return out

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self.den) for c in self.num)

    def is_zero(self) -> bool:
        return not any(self.num)

    def __bool__(self) -> bool:
        return any(self.num)

    def is_rational(self) -> bool:
        return not any(self.num[1:])

    def _coerce(self, b) -> "NumberFieldElement":
        if isinstance(b, NumberFieldElement):
            if b.field is not self.field and b.field != self.field:
                raise FieldMismatchError(f"{self.field} vs {b.field}")
            return b
        if isinstance(b, (int, Fraction)):
            return self.field(b)
        return NotImplemented

    def __add__(self, b):
        b = self._coerce(b)
        if b is NotImplemented:
            return b
        d1, d2 = self.den, b.den
        if d1 == d2:
            return NumberFieldElement._make(self.field, [x + y for x, y in zip(self.num, b.num)], d1)
        return NumberFieldElement._make(self.field, [x * d2 + y * d1 for x, y in zip(self.num, b.num)], d1 * d2)

    __radd__ = __add__

    def __neg__(self):
        return NumberFieldElement._make(self.field, [-x for x in self.num], self.den)

    def __sub__(self, b):
        b = self._coerce(b)
        if b is NotImplemented:
            return b
        return self + (-b)

    def __rsub__(self, b):
        return (-self) + b

    def __mul__(self, b):
        b = self._coerce(b)
        if b is NotImplemented:
            return b
        x, y = self.num, b.num
        if not any(y[1:]):
            return NumberFieldElement._make(self.field, [c * y[0] for c in x], self.den * b.den)
        if not any(x[1:]):
            return NumberFieldElement._make(self.field, [c * x[0] for c in y], self.den * b.den)
        prod = [0] * (len(x) + len(y) - 1)
        for i, a in enumerate(x):
            if a:
                for j, c in enumerate(y):
                    if c:
                        prod[i + j] += a * c
        return self.field._reduce(prod, self.den * b.den)

    __rmul__ = __mul__

    def inv(self) -> "NumberFieldElement":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a number field")
        if self.is_rational():
            return self.field(Fraction(self.den, self.num[0]))
        d, s, _ = ratpoly.xgcd(ratpoly.make(self.coeffs), self.field.minpoly)
        if d != (Fraction(1),):
            raise ArithmeticError("element shares a factor with the modulus; minpoly not irreducible")
        return self.field.from_coeffs(s)

    def __truediv__(self, b):
        b = self._coerce(b)
        if b is NotImplemented:
            return b
        return self * b.inv()

    def __rtruediv__(self, b):
        return self.inv() * b

    def __pow__(self, k: int):
        if k < 0:
            return self.inv() ** (-k)
        out, base = self.field.one, self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, b):
        if isinstance(b, NumberFieldElement):
            return self.num == b.num and self.den == b.den and (self.field is b.field or self.field == b.field)
        if isinstance(b, (int, Fraction)):
            v = Fraction(b)
            return self.is_rational() and Fraction(self.num[0], self.den) == v
        return NotImplemented

    def __hash__(self):
        if self.is_rational():
            return hash(Fraction(self.num[0], self.den))
        return hash((self.num, self.den))

    def __repr__(self) -> str:
        return to_string(self)

    def content(self) -> tuple[int, int]:
        """(gcd of numerators, denominator)."""
        return math.gcd(*self.num), self.den


def to_string(a: NumberFieldElement, var: str = "x") -> str:
    return poly_str(a.coeffs, var)


def nf_op(op: str, a: NumberFieldElement, b: NumberFieldElement | None = None) -> NumberFieldElement:
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "neg":
        return -a
    if op == "inv":
        return a.inv()
    raise ValueError(f"unknown operation {op!r}")


# ---------------------------------------------------------------- embeddings


def _interval_horner(coeffs, lo: Fraction, hi: Fraction) -> tuple[Fraction, Fraction]:
    acc_lo = acc_hi = Fraction(0)
    for c in reversed(coeffs):
        prods = (acc_lo * lo, acc_lo * hi, acc_hi * lo, acc_hi * hi)
        acc_lo, acc_hi = min(prods) + c, max(prods) + c
    return acc_lo, acc_hi


def nf_approx(a: NumberFieldElement, eps) -> tuple:
    """Enclosure of the image of `a` under the field's embedding.

    Real embeddings give a rational interval (lo, hi) with hi - lo <= eps.
    Complex embeddings give a pair of such intervals (real part, imaginary
    part).  Smaller eps yields nested intervals in the real case.
    """
    eps = Fraction(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    field = a.field
    if a.is_rational():
        v = Fraction(a.num[0], a.den)
        return ((v, v), (Fraction(0), Fraction(0))) if not field.selector.is_real else (v, v)
    coeffs = a.coeffs
    if field.selector.is_real:
        k = 0
        while True:
            lo, hi = field._root_interval_at(k)
            r = _interval_horner(coeffs, lo, hi)
            if r[1] - r[0] <= eps:
                return r
            k += 1
    return _complex_enclosure(a, eps)


def _complex_enclosure(a: NumberFieldElement, eps: Fraction):
    field = a.field
    f = field.minpoly
    n = field.degree
    dps = max(30, int(-math.log10(float(eps)) + 20)) if eps < 1 else 30
    while True:
        with mpmath.workdps(dps + 10):
            z = field.embedding_root(dps)
            fz = mpmath.polyval([mpmath.mpf(c.numerator) / c.denominator for c in reversed(f)], z)
            dfz = mpmath.polyval([mpmath.mpf(c.numerator) / c.denominator for c in reversed(ratpoly.derivative(f))], z)
            # some root lies within n |f/f'| of z; roots are far apart, so it is ours
            r = n * abs(fz) / abs(dfz) + mpmath.mpf(10) ** (-dps)
            cs = [mpmath.mpf(c.numerator) / c.denominator for c in a.coeffs]
            lip = sum(i * abs(c) * (abs(z) + r) ** (i - 1) for i, c in enumerate(cs) if i)
            err = r * lip
            val = mpmath.polyval(list(reversed(cs)), z)
            half = Fraction(eps) / 2
            if err < mpmath.mpf(half.numerator) / half.denominator / 2:
                re = Fraction(mpmath.nstr(mpmath.re(val), dps, min_fixed=-mpmath.inf, max_fixed=mpmath.inf, strip_zeros=False))
                im = Fraction(mpmath.nstr(mpmath.im(val), dps, min_fixed=-mpmath.inf, max_fixed=mpmath.inf, strip_zeros=False))
                return (re - half, re + half), (im - half, im + half)
        dps *= 2


def nf_sign(a: NumberFieldElement) -> int:
    """Exact sign of `a` under a real embedding."""
    if not a.field.selector.is_real:
        raise ValueError("sign is undefined under a complex embedding")
    if a.is_zero():
        return 0
    if a.is_rational():
        return 1 if a.num[0] > 0 else -1
    field = a.field
    k = 0
    coeffs = a.coeffs
    while True:
        lo, hi = _interval_horner(coeffs, *field._root_interval_at(k))
        if lo > 0:
            return 1
        if hi < 0:
            return -1
        k += 1


def to_float(a: NumberFieldElement, eps: Fraction = Fraction(1, 10**18)) -> float:
    lo, hi = nf_approx(a, eps)
    return float((lo + hi) / 2)


def to_complex(a: NumberFieldElement, eps: Fraction = Fraction(1, 10**18)) -> complex:
    if a.field.selector.is_real:
        return complex(to_float(a, eps))
    (rl, rh), (il, ih) = nf_approx(a, eps)
    return complex(float((rl + rh) / 2), float((il + ih) / 2))
