"""Points, lines and projectivities of the projective plane over a field."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .scalars import FieldMismatchError, NumberField, NumberFieldElement, PrimePowerField
from .scalars.finite import FiniteFieldElement

POINT = "point"
LINE = "line"


class DegenerateError(ValueError):
    """Zero vector, equal inputs to meet/join, or a singular matrix."""


def field_of(x):
    return x.field


def _coerce(field, v):
    return field(v)


def _clear_number_field(coords: Sequence[NumberFieldElement]) -> tuple:
    """Scale a triple whose first nonzero entry is a positive rational to a primitive integral vector."""
    field = coords[0].field
    den = math.lcm(*(c.den for c in coords))
    nums = [[x * (den // c.den) for x in c.num] for c in coords]
    g = math.gcd(*(x for n in nums for x in n))
    return tuple(NumberFieldElement._make(field, [x // g for x in n], 1) for n in nums)


def normalize_coords(coords: Sequence) -> tuple:
    for c in coords:
        if c:
            lead = c
            break
    else:
        raise DegenerateError("the zero triple is not a projective element")
    if isinstance(lead, NumberFieldElement):
        # positive rational rescaling does not change the primitive vector
        if not lead.is_rational():
            inv = lead.inv()
            coords = [c * inv for c in coords]
        elif lead.num[0] < 0:
            coords = [-c for c in coords]
        return _clear_number_field(coords)
    if lead == 1:
        return tuple(coords)
    inv = lead.inv()
    return tuple(c * inv for c in coords)


@dataclass(frozen=True)
class HomogeneousTriple:
    """A projective point or line (a:b:c) in canonical normalization.

    Build instances with :func:`point` / :func:`line` (or :func:`normalize`),
    which bring the coordinates into canonical form so that equality and
    hashing are projective equality.
    """

    kind: str
    coords: tuple

    @property
    def field(self):
        return self.coords[0].field

    def __repr__(self) -> str:
        return f"{self.kind}({' : '.join(map(repr, self.coords))})"

    def __iter__(self):
        return iter(self.coords)


def _make(kind: str, coords, field=None) -> HomogeneousTriple:
    if len(coords) != 3:
        raise ValueError("homogeneous triples have exactly 3 coordinates")
    if field is not None:
        coords = [_coerce(field, c) for c in coords]
    return HomogeneousTriple(kind, tuple(normalize_coords(coords)))


def point(field, *coords) -> HomogeneousTriple:
    if len(coords) == 1:
        coords = tuple(coords[0])
    return _make(POINT, coords, field)


def line(field, *coords) -> HomogeneousTriple:
    if len(coords) == 1:
        coords = tuple(coords[0])
    return _make(LINE, coords, field)


def normalize(t: HomogeneousTriple) -> HomogeneousTriple:
    return _make(t.kind, t.coords)


def dual_of(t: HomogeneousTriple) -> HomogeneousTriple:
    """(a:b:c) as the other kind."""
    return HomogeneousTriple(LINE if t.kind == POINT else POINT, t.coords)


def _check_same_field(a, b) -> None:
    fa, fb = a.coords[0].field, b.coords[0].field
    if fa is not fb and fa != fb:
        raise FieldMismatchError(f"{fa} vs {fb}")


def dot(u: Sequence, v: Sequence):
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]


def cross(u: Sequence, v: Sequence) -> tuple:
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


def det3(a: Sequence, b: Sequence, c: Sequence):
    return dot(cross(a, b), c)


def incident(p: HomogeneousTriple, l: HomogeneousTriple) -> bool:
    if {p.kind, l.kind} != {POINT, LINE}:
        raise ValueError("incidence is between a point and a line")
    _check_same_field(p, l)
    return not dot(p.coords, l.coords)


def meet(l1: HomogeneousTriple, l2: HomogeneousTriple) -> HomogeneousTriple:
    """The common point of two distinct lines."""
    if l1.kind != LINE or l2.kind != LINE:
        raise ValueError("meet takes two lines")
    _check_same_field(l1, l2)
    c = cross(l1.coords, l2.coords)
    if not any(c):
        raise DegenerateError("meet of equal lines")
    return HomogeneousTriple(POINT, tuple(normalize_coords(c)))


def join(p1: HomogeneousTriple, p2: HomogeneousTriple) -> HomogeneousTriple:
    """The line through two distinct points."""
    if p1.kind != POINT or p2.kind != POINT:
        raise ValueError("join takes two points")
    _check_same_field(p1, p2)
    c = cross(p1.coords, p2.coords)
    if not any(c):
        raise DegenerateError("join of equal points")
    return HomogeneousTriple(LINE, tuple(normalize_coords(c)))


# ---------------------------------------------------------------- projectivities


def _cofactor(m: Sequence) -> tuple:
    a, b, c, d, e, f, g, h, i = m
    return (
        e * i - f * h, f * g - d * i, d * h - e * g,
        c * h - b * i, a * i - c * g, b * g - a * h,
        b * f - c * e, c * d - a * f, a * e - b * d,
    )


def _matmul(x: Sequence, y: Sequence) -> tuple:
    return tuple(
        x[3 * r] * y[c] + x[3 * r + 1] * y[3 + c] + x[3 * r + 2] * y[6 + c] for r in range(3) for c in range(3)
    )


def _matvec(m: Sequence, v: Sequence) -> tuple:
    return tuple(m[3 * r] * v[0] + m[3 * r + 1] * v[1] + m[3 * r + 2] * v[2] for r in range(3))


@dataclass(frozen=True)
class Projectivity:
    """An element of PGL_3 as a row-major 3x3 matrix, first nonzero entry 1."""

    matrix: tuple

    @classmethod
    def from_rows(cls, field, rows) -> "Projectivity":
        entries = [field(x) for row in rows for x in row]
        if len(entries) != 9:
            raise ValueError("a projectivity is a 3x3 matrix")
        if not _det(entries):
            raise DegenerateError("singular matrix")
        return cls(tuple(normalize_coords(entries)))

    @classmethod
    def identity(cls, field) -> "Projectivity":
        return cls.from_rows(field, [[1, 0, 0], [0, 1, 0], [0, 0, 1]])

    @property
    def field(self):
        return self.matrix[0].field

    def rows(self) -> list[list]:
        m = self.matrix
        return [list(m[0:3]), list(m[3:6]), list(m[6:9])]

    def __matmul__(self, other: "Projectivity") -> "Projectivity":
        return Projectivity(tuple(normalize_coords(_matmul(self.matrix, other.matrix))))

    def inverse(self) -> "Projectivity":
        # adjugate = transpose of the cofactor matrix
        c = _cofactor(self.matrix)
        adj = (c[0], c[3], c[6], c[1], c[4], c[7], c[2], c[5], c[8])
        return Projectivity(tuple(normalize_coords(adj)))

    def is_identity(self) -> bool:
        m = self.matrix
        return all((m[k] == 1) if k in (0, 4, 8) else not m[k] for k in range(9))


def _det(m: Sequence):
    a, b, c, d, e, f, g, h, i = m
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)


def apply(m: Projectivity, t: HomogeneousTriple) -> HomogeneousTriple:
    """Points map by the matrix, lines by its inverse transpose."""
    fa, fb = m.matrix[0].field, t.coords[0].field
    if fa is not fb and fa != fb:
        raise FieldMismatchError(f"{fa} vs {fb}")
    if t.kind == POINT:
        v = _matvec(m.matrix, t.coords)
    else:
        v = _matvec(_cofactor(m.matrix), t.coords)
    return HomogeneousTriple(t.kind, tuple(normalize_coords(v)))


# ---------------------------------------------------------------- F_q enumeration
# Integer-encoded kernel: a triple is a tuple of field codes (see scalars.finite).


def fq_normalize(F: PrimePowerField, t: Sequence[int]) -> tuple[int, int, int]:
    mt = F.mul_table
    for c in t:
        if c:
            if c == 1:
                return tuple(t)
            row = mt[F.inv_table[c]]
            return (row[t[0]], row[t[1]], row[t[2]])
    raise DegenerateError("the zero triple is not a projective element")


def fq_cross(F: PrimePowerField, u: Sequence[int], v: Sequence[int]) -> tuple[int, int, int]:
    mt, sub = F.mul_table, F.sub_int
    return (
        sub(mt[u[1]][v[2]], mt[u[2]][v[1]]),
        sub(mt[u[2]][v[0]], mt[u[0]][v[2]]),
        sub(mt[u[0]][v[1]], mt[u[1]][v[0]]),
    )


def fq_dot(F: PrimePowerField, u: Sequence[int], v: Sequence[int]) -> int:
    mt, at = F.mul_table, F.add_table
    return at[at[mt[u[0]][v[0]]][mt[u[1]][v[1]]]][mt[u[2]][v[2]]]


def fq_triples(F: PrimePowerField) -> list[tuple[int, int, int]]:
    q = F.q
    out = [(0, 0, 1)]
    out += [(0, 1, c) for c in range(q)]
    out += [(1, b, c) for b in range(q) for c in range(q)]
    return out


def to_codes(t: HomogeneousTriple) -> tuple[int, int, int]:
    return tuple(c.value for c in t.coords)


def from_codes(F: PrimePowerField, kind: str, codes: Sequence[int]) -> HomogeneousTriple:
    return HomogeneousTriple(kind, tuple(FiniteFieldElement(F, c) for c in fq_normalize(F, codes)))


def plane_elements(F, kind: str = LINE) -> list[HomogeneousTriple]:
    """All q^2+q+1 points (or lines) of F_q P^2 in a fixed order."""
    if not isinstance(F, PrimePowerField):
        raise TypeError("plane_elements needs a finite field")
    if kind not in (POINT, LINE):
        raise ValueError(f"unknown kind {kind!r}")
    return [HomogeneousTriple(kind, tuple(FiniteFieldElement(F, c) for c in t)) for t in fq_triples(F)]


def is_number_field(field) -> bool:
    return isinstance(field, NumberField)
