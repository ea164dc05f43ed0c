"""Line arrangements: intersection census, (n_k) configurations, duality."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from math import comb
from typing import Iterable, Sequence

from .projective import (
    LINE,
    POINT,
    HomogeneousTriple,
    cross,
    dot,
    dual_of,
    fq_cross,
    fq_normalize,
    from_codes,
    line as make_line,
    normalize_coords,
    to_codes,
)
from .scalars import FieldMismatchError, PrimePowerField


class DuplicateLineError(ValueError):
    pass


@dataclass(frozen=True)
class Arrangement:
    field: object
    lines: tuple

    def __post_init__(self):
        lines = tuple(self.lines)
        object.__setattr__(self, "lines", lines)
        for l in lines:
            if l.kind != LINE:
                raise ValueError("arrangements hold lines")
            if l.field is not self.field and l.field != self.field:
                raise FieldMismatchError(f"{l.field} vs {self.field}")
        if len(set(lines)) != len(lines):
            seen = set()
            dup = next(l for l in lines if l in seen or seen.add(l))
            raise DuplicateLineError(f"duplicate line {dup!r}")

    @classmethod
    def from_coords(cls, field, coords: Iterable[Sequence]) -> "Arrangement":
        return cls(field, tuple(make_line(field, c) for c in coords))

    def __len__(self) -> int:
        return len(self.lines)

    def __iter__(self):
        return iter(self.lines)

    def index(self, l: HomogeneousTriple) -> int:
        return self.lines.index(l)


@dataclass(frozen=True)
class CensusPoint:
    point: HomogeneousTriple
    lines: tuple  # sorted incident line indices

    @property
    def multiplicity(self) -> int:
        return len(self.lines)


@dataclass(frozen=True)
class IncidenceCensus:
    n_lines: int
    points: tuple  # of CensusPoint, by descending multiplicity then line indices

    def multiplicity_counts(self) -> dict[int, int]:
        c = Counter(p.multiplicity for p in self.points)
        return dict(sorted(c.items(), reverse=True))

    def count(self, multiplicity: int) -> int:
        return sum(1 for p in self.points if p.multiplicity == multiplicity)

    def with_multiplicity(self, multiplicity: int) -> list[CensusPoint]:
        return [p for p in self.points if p.multiplicity == multiplicity]

    def pair_total(self) -> int:
        return sum(comb(p.multiplicity, 2) for p in self.points)

    def satisfies_double_counting(self) -> bool:
        return self.pair_total() == comb(self.n_lines, 2)

    def profile(self, i: int) -> dict[int, int]:
        c = Counter(p.multiplicity for p in self.points if i in p.lines)
        return dict(sorted(c.items(), reverse=True))

    def profiles(self) -> list[dict[int, int]]:
        per = [Counter() for _ in range(self.n_lines)]
        for p in self.points:
            for i in p.lines:
                per[i][p.multiplicity] += 1
        return [dict(sorted(c.items(), reverse=True)) for c in per]


def _group_finite(A: Arrangement) -> dict:
    F: PrimePowerField = A.field
    codes = [to_codes(l) for l in A.lines]
    groups: dict = {}
    for i in range(len(codes)):
        u = codes[i]
        for j in range(i + 1, len(codes)):
            p = fq_normalize(F, fq_cross(F, u, codes[j]))
            s = groups.get(p)
            if s is None:
                groups[p] = {i, j}
            else:
                s.add(i)
                s.add(j)
    return {from_codes(F, POINT, p): s for p, s in groups.items()}


def _group_generic(A: Arrangement) -> dict:
    coords = [l.coords for l in A.lines]
    n = len(coords)
    groups: dict = {}
    done: set = set()
    for i in range(n):
        for j in range(i + 1, n):
            if (i, j) in done:
                continue
            c = cross(coords[i], coords[j])
            if not any(c):
                raise DuplicateLineError(f"lines {i} and {j} coincide")
            members = {i, j}
            # collect every other line through this point in one pass
            for k in range(n):
                if k != i and k != j and not dot(c, coords[k]):
                    members.add(k)
            for a in members:
                for b in members:
                    if a < b:
                        done.add((a, b))
            p = HomogeneousTriple(POINT, tuple(normalize_coords(c)))
            groups[p] = members
    return groups


def census(A: Arrangement) -> IncidenceCensus:
    """All intersection points of the arrangement with their incident lines."""
    if len(A) < 2:
        raise ValueError("census needs at least two lines")
    groups = _group_finite(A) if isinstance(A.field, PrimePowerField) else _group_generic(A)
    pts = [CensusPoint(p, tuple(sorted(s))) for p, s in groups.items()]
    pts.sort(key=lambda cp: (-cp.multiplicity, cp.lines))
    return IncidenceCensus(len(A), tuple(pts))


def line_profile(A: Arrangement, i: int, cen: IncidenceCensus | None = None) -> dict[int, int]:
    """Multiplicity -> number of census points on line i."""
    if not 0 <= i < len(A):
        raise IndexError(f"line index {i} out of range")
    cen = cen or census(A)
    return cen.profile(i)


# ---------------------------------------------------------------- configurations


@dataclass(frozen=True)
class Configuration:
    """n lines and n points, every element incident to exactly k of the other kind.

    ``incidence[i][j]`` is 1 when point ``j`` lies on line ``i``.
    """

    n: int
    k: int
    line_indices: tuple
    lines: tuple
    points: tuple
    incidence: tuple

    def is_valid(self) -> bool:
        if len(self.lines) != self.n or len(self.points) != self.n:
            return False
        for i, l in enumerate(self.lines):
            for j, p in enumerate(self.points):
                if bool(self.incidence[i][j]) != (not dot(l.coords, p.coords)):
                    return False
        rows_ok = all(sum(r) == self.k for r in self.incidence)
        cols_ok = all(sum(r[j] for r in self.incidence) == self.k for j in range(self.n))
        return rows_ok and cols_ok


def _build_configuration(A: Arrangement, k: int, chosen: Sequence[CensusPoint]) -> Configuration:
    pts = tuple(cp.point for cp in chosen)
    inc = tuple(tuple(1 if i in cp.lines else 0 for cp in chosen) for i in range(len(A)))
    return Configuration(len(A), k, tuple(range(len(A))), A.lines, pts, inc)


def find_nk(A: Arrangement, k: int, *, all_solutions: bool = False, cen: IncidenceCensus | None = None) -> list[Configuration]:
    """Point subsets making A an (n_k) configuration with n = #lines.

    Candidates are census points on exactly k lines (a point on more lines
    would be incident to more than k of them).  Backtracking picks, for the
    line with the least slack, whether to take its next candidate point.
    """
    if k < 3:
        raise ValueError("k must be >= 3")
    n = len(A)
    if n < 2:
        return []
    cen = cen or census(A)
    cands = cen.with_multiplicity(k)
    on_line: list[list[int]] = [[] for _ in range(n)]
    for idx, cp in enumerate(cands):
        for i in cp.lines:
            on_line[i].append(idx)
    if any(len(c) < k for c in on_line):
        return []

    need = [k] * n
    avail = [len(c) for c in on_line]
    state = [0] * len(cands)  # 0 undecided, 1 taken, -1 rejected
    chosen: list[int] = []
    results: list[Configuration] = []

    def take(idx: int) -> bool:
        ok = True
        for i in cands[idx].lines:
            need[i] -= 1
            avail[i] -= 1
            ok = ok and need[i] >= 0
        state[idx] = 1
        chosen.append(idx)
        return ok

    def untake(idx: int) -> None:
        for i in cands[idx].lines:
            need[i] += 1
            avail[i] += 1
        state[idx] = 0
        chosen.pop()

    def reject(idx: int) -> bool:
        ok = True
        for i in cands[idx].lines:
            avail[i] -= 1
            ok = ok and avail[i] >= need[i]
        state[idx] = -1
        return ok

    def unreject(idx: int) -> None:
        for i in cands[idx].lines:
            avail[i] += 1
        state[idx] = 0

    def search() -> bool:
        best, slack = -1, None
        for i in range(n):
            if need[i] > 0:
                s = avail[i] - need[i]
                if slack is None or s < slack:
                    best, slack = i, s
        if best < 0:
            pts = sorted(chosen)
            results.append(_build_configuration(A, k, [cands[j] for j in pts]))
            return not all_solutions
        idx = next(j for j in on_line[best] if state[j] == 0)
        if take(idx) and search():
            untake(idx)
            return True
        untake(idx)
        if reject(idx) and search():
            unreject(idx)
            return True
        unreject(idx)
        return False

    search()
    return results


def dual(C) -> Arrangement:
    """The arrangement whose lines are the points of C (same coordinates)."""
    if isinstance(C, Configuration):
        pts = C.points
    elif isinstance(C, HomogeneousTriple):
        pts = (C,)
    else:
        pts = tuple(C)
    lines = tuple(dual_of(p) if p.kind == POINT else p for p in pts)
    return Arrangement(lines[0].field, lines)


def dual_configuration(C: Configuration) -> Configuration:
    """Swap the roles of points and lines; incidence is transposed."""
    new_lines = tuple(dual_of(p) for p in C.points)
    new_points = tuple(dual_of(l) for l in C.lines)
    inc = tuple(tuple(C.incidence[i][j] for i in range(C.n)) for j in range(C.n))
    return Configuration(C.n, C.k, tuple(range(C.n)), new_lines, new_points, inc)


def incidence_isomorphic(C1: Configuration, C2: Configuration) -> bool:
    """Same coordinates up to reordering of lines and of points, same incidences."""
    if (C1.n, C1.k) != (C2.n, C2.k):
        return False
    li = {l: i for i, l in enumerate(C2.lines)}
    pj = {p: j for j, p in enumerate(C2.points)}
    try:
        lmap = [li[l] for l in C1.lines]
        pmap = [pj[p] for p in C1.points]
    except KeyError:
        return False
    return all(C1.incidence[i][j] == C2.incidence[lmap[i]][pmap[j]] for i in range(C1.n) for j in range(C1.n))
