"""Prime-power finite fields F_q with integer-encoded elements.

An element of F_{p^e} is a coefficient vector (c_0, ..., c_{e-1}) over F_p in
the basis 1, x, ..., x^{e-1}; it is encoded as the integer sum c_i p^i.  The
hot loops (group sweeps, census over F_q) work on these integers through
precomputed tables; :class:`FiniteFieldElement` is the public wrapper.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product


class FieldMismatchError(ValueError):
    """Operands live in different fields."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def _polymod_p(a: list[int], m: list[int], p: int) -> list[int]:
    a = [c % p for c in a]
    dm = len(m) - 1
    inv_lead = pow(m[-1], -1, p)
    while len(a) - 1 >= dm and any(a):
        while a and a[-1] == 0:
            a.pop()
        if len(a) - 1 < dm:
            break
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - dm
        for i, b in enumerate(m):
            a[shift + i] = (a[shift + i] - c * b) % p
    while a and a[-1] == 0:
        a.pop()
    return a


def _is_irreducible_mod_p(f: list[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg(f)/2."""
    n = len(f) - 1
    if n <= 1:
        return n == 1
    for d in range(1, n // 2 + 1):
        for low in product(range(p), repeat=d):
            g = list(low) + [1]
            if not _polymod_p(list(f), g, p):
                return False
    return True


def least_irreducible(p: int, e: int) -> tuple[int, ...]:
    """Lexicographically least monic irreducible of degree e over F_p.

    Coefficients are compared from the highest degree down, which is the
    same as ordering by the integer encoding sum c_i p^i.
    """
    if e == 1:
        return (0, 1)
    for code in range(p**e):
        low = [(code // p**i) % p for i in range(e)]
        f = low + [1]
        if _is_irreducible_mod_p(f, p):
            return tuple(f)
    raise RuntimeError(f"no irreducible polynomial of degree {e} over F_{p}")


@dataclass(frozen=True)
class PrimePowerField:
    p: int
    e: int
    modulus: tuple[int, ...]

    @property
    def q(self) -> int:
        return self.p**self.e

    @property
    def order(self) -> int:
        return self.q

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.e})" if self.e > 1 else f"GF({self.p})"

    # -- integer-level kernel ------------------------------------------------

    def _digits(self, v: int) -> list[int]:
        p = self.p
        out = []
        for _ in range(self.e):
            out.append(v % p)
            v //= p
        return out

    def _encode(self, digits) -> int:
        v = 0
        for c in reversed(list(digits)):
            v = v * self.p + (c % self.p)
        return v

    @cached_property
    def add_table(self) -> list[list[int]]:
        q, p = self.q, self.p
        if self.e == 1:
            return [[(a + b) % p for b in range(q)] for a in range(q)]
        digits = [self._digits(v) for v in range(q)]
        return [[self._encode(x + y for x, y in zip(digits[a], digits[b])) for b in range(q)] for a in range(q)]

    @cached_property
    def neg_table(self) -> list[int]:
        return [self._encode(-c for c in self._digits(v)) for v in range(self.q)]

    @cached_property
    def mul_table(self) -> list[list[int]]:
        q, p = self.q, self.p
        if self.e == 1:
            return [[a * b % p for b in range(q)] for a in range(q)]
        digits = [self._digits(v) for v in range(q)]
        mod = list(self.modulus)
        table = [[0] * q for _ in range(q)]
        for a in range(q):
            for b in range(a, q):
                prod = [0] * (2 * self.e - 1)
                for i, x in enumerate(digits[a]):
                    if x:
                        for j, y in enumerate(digits[b]):
                            prod[i + j] += x * y
                r = _polymod_p(prod, mod, p)
                table[a][b] = table[b][a] = self._encode(r + [0] * (self.e - len(r)))
        return table

    @cached_property
    def inv_table(self) -> list[int]:
        inv = [0] * self.q
        mt = self.mul_table
        for a in range(1, self.q):
            row = mt[a]
            for b in range(1, self.q):
                if row[b] == 1:
                    inv[a] = b
                    break
        return inv

    def sub_int(self, a: int, b: int) -> int:
        return self.add_table[a][self.neg_table[b]]

    # -- public element constructors ----------------------------------------

    def __call__(self, value) -> "FiniteFieldElement":
        if isinstance(value, FiniteFieldElement):
            if value.field != self:
                raise FieldMismatchError(f"{value.field} vs {self}")
            return value
        if isinstance(value, int):
            return FiniteFieldElement(self, value % self.p)
        return FiniteFieldElement(self, self._encode(value))

    def from_coeffs(self, coeffs) -> "FiniteFieldElement":
        coeffs = list(coeffs)
        if len(coeffs) > self.e:
            raise ValueError("too many coefficients")
        return FiniteFieldElement(self, self._encode(coeffs + [0] * (self.e - len(coeffs))))

    @property
    def zero(self) -> "FiniteFieldElement":
        return FiniteFieldElement(self, 0)

    @property
    def one(self) -> "FiniteFieldElement":
        return FiniteFieldElement(self, 1)

    @property
    def gen(self) -> "FiniteFieldElement":
        """The class of x (equal to 0 in a prime field, by the x-modulus convention)."""
        return FiniteFieldElement(self, self.p % self.q if self.e > 1 else 0)

    def elements(self) -> list["FiniteFieldElement"]:
        return [FiniteFieldElement(self, v) for v in range(self.q)]


def ff_make(p: int, e: int = 1) -> PrimePowerField:
    """Build F_{p^e} with the deterministic least irreducible modulus."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if e < 1:
        raise ValueError("extension degree must be >= 1")
    return PrimePowerField(p, e, least_irreducible(p, e))


def field_of_order(q: int) -> PrimePowerField:
    for p in range(2, q + 1):
        if q % p == 0:
            e, r = 0, q
            while r % p == 0:
                r //= p
                e += 1
            if r != 1:
                break
            return ff_make(p, e)
    raise ValueError(f"{q} is not a prime power")


class FiniteFieldElement:
    __slots__ = ("field", "value")

    def __init__(self, field: PrimePowerField, value: int):
        if not 0 <= value < field.q:
            raise ValueError("encoded value out of range")
        self.field = field
        self.value = value

    @property
    def coeffs(self) -> tuple[int, ...]:
        return tuple(self.field._digits(self.value))

    def _other(self, b) -> int:
        if isinstance(b, FiniteFieldElement):
            if b.field is not self.field and b.field != self.field:
                raise FieldMismatchError(f"{self.field} vs {b.field}")
            return b.value
        if isinstance(b, int):
            return b % self.field.p
        return NotImplemented

    def __add__(self, b):
        v = self._other(b)
        if v is NotImplemented:
            return v
        return FiniteFieldElement(self.field, self.field.add_table[self.value][v])

    __radd__ = __add__

    def __neg__(self):
        return FiniteFieldElement(self.field, self.field.neg_table[self.value])

    def __sub__(self, b):
        v = self._other(b)
        if v is NotImplemented:
            return v
        return FiniteFieldElement(self.field, self.field.sub_int(self.value, v))

    def __rsub__(self, b):
        return (-self) + b

    def __mul__(self, b):
        v = self._other(b)
        if v is NotImplemented:
            return v
        return FiniteFieldElement(self.field, self.field.mul_table[self.value][v])

    __rmul__ = __mul__

    def inv(self) -> "FiniteFieldElement":
        if self.value == 0:
            raise ZeroDivisionError("inverse of zero in a finite field")
        return FiniteFieldElement(self.field, self.field.inv_table[self.value])

    def __truediv__(self, b):
        v = self._other(b)
        if v is NotImplemented:
            return v
        return self * FiniteFieldElement(self.field, v).inv()

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
        if isinstance(b, FiniteFieldElement):
            return self.value == b.value and (self.field is b.field or self.field == b.field)
        if isinstance(b, int):
            return self.value == b % self.field.p
        return NotImplemented

    def __hash__(self):
        return hash((self.field.p, self.field.e, self.value))

    def __bool__(self):
        return self.value != 0

    def is_zero(self) -> bool:
        return self.value == 0

    def __repr__(self) -> str:
        if self.field.e == 1:
            return str(self.value)
        parts = []
        for i, c in reversed(list(enumerate(self.coeffs))):
            if not c:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            coef = str(c) if (c != 1 or i == 0) else ""
            parts.append(coef + ("*" if coef and mono else "") + mono)
        return " + ".join(parts) or "0"


def ff_op(op: str, a: FiniteFieldElement, b: FiniteFieldElement | None = None) -> FiniteFieldElement:
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "neg":
        return -a
    if op == "inv":
        return a.inv()
    raise ValueError(f"unknown operation {op!r}")
