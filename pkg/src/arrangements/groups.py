"""Elements, subgroups and orbits in PGL_3(F_q).

Matrices are handled as 9-tuples of integer field codes (row-major, first
nonzero entry 1) so that the element sweeps stay cheap; the public
:class:`Subgroup` converts to :class:`~arrangements.projective.Projectivity`
on request.
"""
from __future__ import annotations

import logging
import math
import random
from dataclasses import dataclass, field as dc_field
from functools import cached_property
from itertools import product
from typing import Iterable, Sequence

from .projective import (
    LINE,
    POINT,
    HomogeneousTriple,
    Projectivity,
    apply,
    fq_normalize,
    fq_triples,
    from_codes,
    to_codes,
)
from .scalars import FieldMismatchError, PrimePowerField, field_of_order
from .scalars.finite import FiniteFieldElement

log = logging.getLogger(__name__)

Mat = tuple  # 9 field codes
EXHAUSTIVE_LIMIT = 10**6
EXHAUSTIVE = "exhaustive"
GENERATED_PAIRS = "generated-pairs"


def group_order(q: int) -> int:
    """|PGL_3(F_q)| = q^3 (q^3 - 1)(q^2 - 1)."""
    return q**3 * (q**3 - 1) * (q**2 - 1)


class MatrixKernel:
    """Integer-code arithmetic for 3x3 matrices over one finite field."""

    def __init__(self, F: PrimePowerField):
        self.F = F
        self.mt = F.mul_table
        self.at = F.add_table
        self.neg = F.neg_table
        self.inv = F.inv_table
        self.identity: Mat = (1, 0, 0, 0, 1, 0, 0, 0, 1)

    def normalize(self, m: Sequence[int]) -> Mat:
        for c in m:
            if c:
                if c == 1:
                    return tuple(m)
                row = self.mt[self.inv[c]]
                return tuple(row[x] for x in m)
        raise ValueError("zero matrix")

    def mul(self, x: Sequence[int], y: Sequence[int]) -> Mat:
        mt, at = self.mt, self.at
        out = []
        for r in range(3):
            x0, x1, x2 = mt[x[3 * r]], mt[x[3 * r + 1]], mt[x[3 * r + 2]]
            for c in range(3):
                out.append(at[at[x0[y[c]]][x1[y[3 + c]]]][x2[y[6 + c]]])
        return self.normalize(out)

    def det(self, m: Sequence[int]) -> int:
        mt, at, neg = self.mt, self.at, self.neg
        a, b, c, d, e, f, g, h, i = m

        def s(u, v):
            return at[u][neg[v]]

        t1 = mt[a][s(mt[e][i], mt[f][h])]
        t2 = mt[b][s(mt[d][i], mt[f][g])]
        t3 = mt[c][s(mt[d][h], mt[e][g])]
        return at[s(t1, t2)][t3]

    def cofactor(self, m: Sequence[int]) -> Mat:
        mt, at, neg = self.mt, self.at, self.neg
        a, b, c, d, e, f, g, h, i = m

        def s(u, v):
            return at[u][neg[v]]

        return (
            s(mt[e][i], mt[f][h]), s(mt[f][g], mt[d][i]), s(mt[d][h], mt[e][g]),
            s(mt[c][h], mt[b][i]), s(mt[a][i], mt[c][g]), s(mt[b][g], mt[a][h]),
            s(mt[b][f], mt[c][e]), s(mt[c][d], mt[a][f]), s(mt[a][e], mt[b][d]),
        )

    def inverse(self, m: Sequence[int]) -> Mat:
        c = self.cofactor(m)
        return self.normalize((c[0], c[3], c[6], c[1], c[4], c[7], c[2], c[5], c[8]))

    def power(self, m: Mat, k: int) -> Mat:
        out, base = self.identity, m
        while k:
            if k & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            k >>= 1
        return out

    def order(self, m: Mat, limit: int | None = None) -> int:
        k, x = 1, m
        while x != self.identity:
            x = self.mul(x, m)
            k += 1
            if limit is not None and k > limit:
                return 0
        return k

    def act_point(self, m: Sequence[int], v: Sequence[int]) -> tuple:
        mt, at = self.mt, self.at
        return fq_normalize(
            self.F,
            tuple(at[at[mt[m[3 * r]][v[0]]][mt[m[3 * r + 1]][v[1]]]][mt[m[3 * r + 2]][v[2]]] for r in range(3)),
        )

    def act_line(self, m: Sequence[int], v: Sequence[int]) -> tuple:
        return self.act_point(self.cofactor(m), v)

    def closure(self, gens: Iterable[Mat], limit: int | None = None) -> frozenset | None:
        """The generated subgroup, or None once it exceeds `limit` elements."""
        gens = [g for g in gens if g != self.identity]
        elems = {self.identity}
        frontier = [self.identity]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = self.mul(x, g)
                    if y not in elems:
                        elems.add(y)
                        nxt.append(y)
                        if limit is not None and len(elems) > limit:
                            return None
            frontier = nxt
        return frozenset(elems)

    def random_element(self, rng: random.Random) -> Mat:
        q = self.F.q
        while True:
            m = tuple(rng.randrange(q) for _ in range(9))
            if any(m) and self.det(m):
                return self.normalize(m)

    def all_elements(self) -> list[Mat]:
        q = self.F.q
        vectors = list(product(range(q), repeat=3))
        out = []
        for r1 in fq_triples(self.F):
            for r2 in vectors:
                for r3 in vectors:
                    m = r1 + r2 + r3
                    if self.det(m):
                        out.append(m)
        return out


def element_order(g: Projectivity, limit: int = 10_000) -> int:
    """Least k >= 1 with g^k the identity of PGL_3."""
    F = g.field
    if isinstance(F, PrimePowerField):
        kern = MatrixKernel(F)
        return kern.order(tuple(c.value for c in g.matrix))
    x, k = g, 1
    while not x.is_identity():
        x = x @ g
        k += 1
        if k > limit:
            raise ValueError(f"no finite order found below {limit}")
    return k


@dataclass(frozen=True)
class Subgroup:
    """A finite subgroup of PGL_3(F_q), stored as its full element set."""

    field: PrimePowerField
    codes: frozenset
    generators: tuple = dc_field(default=(), compare=False)

    @property
    def order(self) -> int:
        return len(self.codes)

    def __len__(self) -> int:
        return len(self.codes)

    @cached_property
    def kernel(self) -> MatrixKernel:
        return MatrixKernel(self.field)

    @property
    def elements(self) -> list[Projectivity]:
        F = self.field
        return [Projectivity(tuple(FiniteFieldElement(F, c) for c in m)) for m in sorted(self.codes)]

    @property
    def generator_projectivities(self) -> list[Projectivity]:
        F = self.field
        return [Projectivity(tuple(FiniteFieldElement(F, c) for c in m)) for m in self.generators]

    def is_closed(self) -> bool:
        k = self.kernel
        if k.identity not in self.codes:
            return False
        for x in self.codes:
            if k.inverse(x) not in self.codes:
                return False
            for y in self.codes:
                if k.mul(x, y) not in self.codes:
                    return False
        return True

    def element_orders(self) -> list[int]:
        k = self.kernel
        return sorted(k.order(m) for m in self.codes)

    def orbit_sizes(self, kind: str = POINT) -> list[int]:
        k = self.kernel
        act = k.act_point if kind == POINT else k.act_line
        seen: set = set()
        sizes = []
        for t in fq_triples(self.field):
            if t in seen:
                continue
            orbit = {act(m, t) for m in self.codes}
            seen |= orbit
            sizes.append(len(orbit))
        return sorted(sizes)

    @cached_property
    def invariant(self) -> tuple:
        """Conjugacy invariant: element-order multiset plus point-orbit sizes."""
        return (self.order, tuple(self.element_orders()), tuple(self.orbit_sizes(POINT)))

    def sort_key(self) -> tuple:
        return (self.invariant, tuple(sorted(self.codes)))


def subgroup_from_generators(F: PrimePowerField, gens: Sequence[Projectivity]) -> Subgroup:
    kern = MatrixKernel(F)
    codes = [kern.normalize([c.value for c in g.matrix]) for g in gens]
    return Subgroup(F, kern.closure(codes), tuple(codes))


# ---------------------------------------------------------------- enumeration


def _dedup_by_invariant(groups: Iterable[Subgroup]) -> list[Subgroup]:
    best: dict = {}
    for g in sorted(groups, key=Subgroup.sort_key):
        best.setdefault(g.invariant, g)
    return sorted(best.values(), key=Subgroup.sort_key)


def _exhaustive(F: PrimePowerField, n: int) -> list[Subgroup]:
    kern = MatrixKernel(F)
    elems = kern.all_elements()
    candidates = []
    for m in elems:
        o = kern.order(m, limit=n)
        if o > 1 and n % o == 0:
            candidates.append(m)
    trivial = frozenset({kern.identity})
    found: dict[frozenset, tuple] = {trivial: ()}
    frontier = [trivial]
    while frontier:
        nxt = []
        for S in frontier:
            if len(S) == n:
                continue
            gens = found[S]
            for g in candidates:
                if g in S:
                    continue
                T = kern.closure(gens + (g,), limit=n)
                if T is None or n % len(T) or T in found:
                    continue
                found[T] = gens + (g,)
                nxt.append(T)
        frontier = nxt
    return [Subgroup(F, S, gens) for S, gens in found.items() if len(S) == n]


def class_representatives(F: PrimePowerField) -> list[Mat]:
    """Projective images of the rational canonical forms of GL_3(F_q)."""
    kern = MatrixKernel(F)
    q, neg = F.q, F.neg_table
    reps = set()
    for c0, c1, c2 in product(range(q), repeat=3):
        if c0 == 0:
            continue
        # companion of x^3 + c2 x^2 + c1 x + c0
        reps.add(kern.normalize((0, 0, neg[c0], 1, 0, neg[c1], 0, 1, neg[c2])))
    mt, at = F.mul_table, F.add_table
    for a in range(1, q):
        for b in range(1, q):
            # a (+) companion((x - a)(x - b)) = x^2 - (a + b) x + ab
            s, p = at[a][b], mt[a][b]
            reps.add(kern.normalize((a, 0, 0, 0, 0, neg[p], 0, 1, s)))
    reps.discard(kern.identity)
    return sorted(reps)


def _nullspace(F: PrimePowerField, rows: list[list[int]], ncols: int) -> list[list[int]]:
    mt, at, neg, inv = F.mul_table, F.add_table, F.neg_table, F.inv_table
    rows = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        s = inv[rows[r][c]]
        rows[r] = [mt[s][x] for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = neg[rows[i][c]]
                rows[i] = [at[x][mt[f][y]] for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * ncols
        v[fc] = 1
        for i, pc in enumerate(pivots):
            v[pc] = neg[rows[i][fc]]
        basis.append(v)
    return basis


def _normalizer_candidates(kern: MatrixKernel, g: Mat, n: int, rng: random.Random, samples: int) -> list[Mat]:
    """Invertible X with X g X^-1 a power of g (projectively)."""
    F = kern.F
    mt, at = F.mul_table, F.add_table
    og = kern.order(g)
    out = set()
    cap = max(samples, 1)
    for k in range(1, og + 1):
        if math.gcd(k, og) != 1:
            continue
        h = kern.power(g, k)
        for lam in range(1, F.q):
            rows = []
            for i in range(3):
                for j in range(3):
                    row = [0] * 9
                    for b in range(3):
                        row[3 * i + b] = at[row[3 * i + b]][g[3 * b + j]]
                    for a in range(3):
                        row[3 * a + j] = F.sub_int(row[3 * a + j], mt[lam][h[3 * i + a]])
                    rows.append(row)
            basis = _nullspace(F, rows, 9)
            if not basis:
                continue
            dim = len(basis)
            if F.q**dim <= cap:
                combos: Iterable = product(range(F.q), repeat=dim)
            else:
                combos = (tuple(rng.randrange(F.q) for _ in range(dim)) for _ in range(cap))
            for coeffs in combos:
                x = [0] * 9
                for c, v in zip(coeffs, basis):
                    if c:
                        x = [at[a][mt[c][b]] for a, b in zip(x, v)]
                if any(x) and kern.det(x):
                    m = kern.normalize(x)
                    o = kern.order(m, limit=n)
                    if o and n % o == 0:
                        out.add(m)
    out.discard(kern.identity)
    return sorted(out)


def _generated_pairs(F: PrimePowerField, n: int, seed: int, samples: int) -> list[Subgroup]:
    kern = MatrixKernel(F)
    rng = random.Random(seed)
    reps = [m for m in class_representatives(F) if (o := kern.order(m, limit=n)) and n % o == 0]
    found: dict[frozenset, tuple] = {}
    for g1 in reps:
        o1 = kern.order(g1)
        if o1 == n:
            found.setdefault(kern.closure([g1]), (g1,))
            continue
        seconds = _normalizer_candidates(kern, g1, n, rng, samples)
        for r2 in reps:
            for _ in range(samples):
                c = kern.random_element(rng)
                seconds.append(kern.mul(kern.mul(c, r2), kern.inverse(c)))
        for g2 in seconds:
            H = kern.closure([g1, g2], limit=n)
            if H is not None and len(H) == n and H not in found:
                found[H] = (g1, g2)
    return [Subgroup(F, S, gens) for S, gens in found.items()]


def enumerate_subgroups(
    q: int | PrimePowerField,
    n: int,
    mode: str = EXHAUSTIVE,
    *,
    dedup: bool = True,
    seed: int = 0,
    samples: int = 64,
) -> list[Subgroup]:
    """Subgroups H <= PGL_3(F_q) with |H| = n.

    ``exhaustive`` finds every subgroup (allowed while |PGL_3(F_q)| <= 10^6).
    ``generated-pairs`` builds groups from one or two generators taken from
    rational-canonical-form class representatives, normalizer solutions and
    sampled conjugates; it can miss groups.  With ``dedup`` the result keeps
    one group per conjugacy invariant (which may keep non-conjugate pairs
    apart only when the invariant separates them).
    """
    F = q if isinstance(q, PrimePowerField) else field_of_order(q)
    if n < 1:
        raise ValueError("subgroup order must be >= 1")
    total = group_order(F.q)
    if total % n:
        return []
    if n == 1:
        kern = MatrixKernel(F)
        groups = [Subgroup(F, frozenset({kern.identity}), ())]
    elif mode == EXHAUSTIVE:
        if total > EXHAUSTIVE_LIMIT:
            raise ValueError(f"exhaustive mode needs |PGL_3(F_{F.q})| <= {EXHAUSTIVE_LIMIT}, got {total}")
        groups = _exhaustive(F, n)
    elif mode == GENERATED_PAIRS:
        groups = _generated_pairs(F, n, seed, samples)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    log.debug("q=%d n=%d mode=%s: %d subgroups before dedup", F.q, n, mode, len(groups))
    if dedup:
        return _dedup_by_invariant(groups)
    return sorted(groups, key=Subgroup.sort_key)


def act_on_lines(H: Subgroup, lines: Iterable[HomogeneousTriple]) -> list[HomogeneousTriple]:
    """The H-orbit of a line set, as a sorted list of distinct lines."""
    lines = list(lines)
    F = H.field
    for l in lines:
        if l.field != F:
            raise FieldMismatchError(f"{l.field} vs {F}")
    codes = orbit_codes(H, [to_codes(l) for l in lines])
    return [from_codes(F, LINE, c) for c in codes]


def orbit_codes(H: Subgroup, lines: Iterable[Sequence[int]]) -> list[tuple]:
    kern = H.kernel
    cofs = [kern.cofactor(m) for m in H.codes]
    out = set()
    for l in lines:
        for c in cofs:
            out.add(kern.act_point(c, l))
    return sorted(out)


def act_generic(elements: Iterable[Projectivity], lines: Iterable[HomogeneousTriple]) -> list[HomogeneousTriple]:
    out = {apply(g, l) for g in elements for l in lines}
    return sorted(out, key=lambda t: tuple(repr(c) for c in t.coords))
