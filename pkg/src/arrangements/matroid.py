"""Rank-3 matroids of line arrangements: canonical labels and automorphisms.

A simple rank-3 matroid on lines is recorded by its flats of size >= 3 (the
maximal sets of concurrent lines); every other pair of lines meets in a
double point, so nothing else needs storing.

Canonical labeling follows the individualization/refinement scheme: colour
the elements by how they sit in the flats, refine until stable, and branch on
the first non-singleton cell.  The canonical form is the least relabeled
flat list over all leaves.  Children that are images of an explored child
under an already-found automorphism fixing the current prefix are skipped.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .arrangement import Arrangement, IncidenceCensus, census


@dataclass(frozen=True)
class Rank3Matroid:
    n: int
    flats: frozenset

    def __post_init__(self):
        flats = frozenset(frozenset(f) for f in self.flats)
        object.__setattr__(self, "flats", flats)
        for f in flats:
            if len(f) < 3:
                raise ValueError(f"flat {sorted(f)} has fewer than 3 elements")
            if not all(0 <= e < self.n for e in f):
                raise ValueError(f"flat {sorted(f)} leaves the ground set 0..{self.n - 1}")
        for a, b in combinations(flats, 2):
            if len(a & b) > 1:
                raise ValueError(f"flats {sorted(a)} and {sorted(b)} share more than one element")

    @classmethod
    def from_flats(cls, n: int, flats: Iterable[Iterable[int]]) -> "Rank3Matroid":
        return cls(n, frozenset(frozenset(f) for f in flats))

    def sorted_flats(self) -> list[list[int]]:
        return sorted(sorted(f) for f in self.flats)

    def is_dependent(self, triple: Iterable[int]) -> bool:
        t = set(triple)
        return any(t <= f for f in self.flats)

    def permute(self, sigma: Sequence[int]) -> "Rank3Matroid":
        """Relabel element e as sigma[e]."""
        return Rank3Matroid(self.n, frozenset(frozenset(sigma[e] for e in f) for f in self.flats))

    def to_json(self) -> dict:
        return {"n": self.n, "flats": self.sorted_flats()}

    @classmethod
    def from_json(cls, obj: dict) -> "Rank3Matroid":
        return cls.from_flats(int(obj["n"]), obj["flats"])


def matroid_of(A: Arrangement, cen: IncidenceCensus | None = None) -> Rank3Matroid:
    if len(A) < 3:
        raise ValueError("a rank-3 matroid needs at least 3 lines")
    cen = cen or census(A)
    return Rank3Matroid(len(A), frozenset(frozenset(p.lines) for p in cen.points if p.multiplicity >= 3))


def fano() -> Rank3Matroid:
    return Rank3Matroid.from_flats(7, [(0, 1, 2), (0, 3, 4), (0, 5, 6), (1, 3, 5), (1, 4, 6), (2, 3, 6), (2, 4, 5)])


def uniform(n: int) -> Rank3Matroid:
    return Rank3Matroid(n, frozenset())


def pencil(n: int) -> Rank3Matroid:
    return Rank3Matroid.from_flats(n, [range(n)])


# ---------------------------------------------------------------- canonical form


@dataclass(frozen=True)
class CanonicalForm:
    permutation: tuple  # element e gets canonical label permutation[e]
    key: bytes

    @property
    def hex(self) -> str:
        return self.key.hex()


def encode_key(n: int, flats: Sequence[Sequence[int]]) -> bytes:
    out = bytearray(n.to_bytes(2, "big") + len(flats).to_bytes(2, "big"))
    for f in flats:
        out.append(len(f))
        for e in f:
            out += e.to_bytes(2, "big")
    return bytes(out)


class _Search:
    def __init__(self, M: Rank3Matroid):
        self.n = M.n
        self.flats = [tuple(sorted(f)) for f in sorted(M.flats, key=sorted)]
        self.elem_flats: list[list[int]] = [[] for _ in range(M.n)]
        for i, f in enumerate(self.flats):
            for e in f:
                self.elem_flats[e].append(i)
        self.first: tuple | None = None  # (key, labels)
        self.best: tuple | None = None
        self.generators: list[tuple] = []
        self.leaves = 0

    def refine(self, colors: list) -> list[int]:
        ranks = {c: i for i, c in enumerate(sorted(set(colors)))}
        colors = [ranks[c] for c in colors]
        ncells = len(ranks)
        while True:
            fsig = [tuple(sorted(colors[e] for e in f)) for f in self.flats]
            sig = [(colors[v], tuple(sorted(fsig[i] for i in self.elem_flats[v]))) for v in range(self.n)]
            ranks = {s: i for i, s in enumerate(sorted(set(sig)))}
            if len(ranks) == ncells:
                return colors
            colors = [ranks[s] for s in sig]
            ncells = len(ranks)

    def leaf_key(self, labels: Sequence[int]) -> tuple:
        return tuple(sorted(tuple(sorted(labels[e] for e in f)) for f in self.flats))

    def _automorphism(self, labels_a: Sequence[int], labels_b: Sequence[int]) -> tuple:
        inv = [0] * self.n
        for v, l in enumerate(labels_a):
            inv[l] = v
        return tuple(inv[labels_b[v]] for v in range(self.n))

    def _add_generator(self, sigma: tuple) -> None:
        if any(sigma[v] != v for v in range(self.n)) and sigma not in self.generators:
            self.generators.append(sigma)

    def _orbit_roots(self, prefix: Sequence[int]) -> list[int]:
        parent = list(range(self.n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for g in self.generators:
            if all(g[p] == p for p in prefix):
                for v in range(self.n):
                    a, b = find(v), find(g[v])
                    if a != b:
                        parent[max(a, b)] = min(a, b)
        return [find(v) for v in range(self.n)]

    def run(self, colors: list, prefix: list[int]) -> None:
        colors = self.refine(colors)
        ncells = max(colors) + 1
        if ncells == self.n:
            self.leaves += 1
            key = self.leaf_key(colors)
            labels = tuple(colors)
            if self.first is None:
                self.first = self.best = (key, labels)
                return
            if key == self.first[0]:
                self._add_generator(self._automorphism(self.first[1], labels))
            if key == self.best[0]:
                self._add_generator(self._automorphism(self.best[1], labels))
            elif key < self.best[0]:
                self.best = (key, labels)
            return
        sizes = [0] * ncells
        for c in colors:
            sizes[c] += 1
        target = next(c for c in range(ncells) if sizes[c] > 1)
        cell = [v for v in range(self.n) if colors[v] == target]
        explored: list[int] = []
        for v in cell:
            if explored:
                roots = self._orbit_roots(prefix)
                if any(roots[v] == roots[u] for u in explored):
                    continue
            child = [(c, 0) if (c != target or u == v) else (c, 1) for u, c in enumerate(colors)]
            self.run(child, prefix + [v])
            explored.append(v)


def _search(M: Rank3Matroid) -> _Search:
    s = _Search(M)
    s.run([0] * M.n, [])
    return s


def canonical_label(M: Rank3Matroid) -> CanonicalForm:
    if M.n == 0:
        return CanonicalForm((), encode_key(0, []))
    s = _search(M)
    key, labels = s.best
    return CanonicalForm(labels, encode_key(M.n, key))


def is_isomorphic(M1: Rank3Matroid, M2: Rank3Matroid) -> bool:
    if M1.n != M2.n or len(M1.flats) != len(M2.flats):
        return False
    if sorted(map(len, M1.flats)) != sorted(map(len, M2.flats)):
        return False
    return canonical_label(M1).key == canonical_label(M2).key


@dataclass(frozen=True)
class AutomorphismGroup:
    n: int
    generators: tuple
    order: int

    def elements(self, limit: int = 100_000) -> list[tuple]:
        """All group elements by closure (small groups only)."""
        ident = tuple(range(self.n))
        seen = {ident}
        frontier = [ident]
        while frontier:
            nxt = []
            for x in frontier:
                for g in self.generators:
                    y = tuple(g[x[v]] for v in range(self.n))
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
                        if len(seen) > limit:
                            raise ValueError(f"group larger than {limit}")
            frontier = nxt
        return sorted(seen)


def permutation_order(sigma: Sequence[int]) -> int:
    from math import lcm

    seen = [False] * len(sigma)
    out = 1
    for v in range(len(sigma)):
        if not seen[v]:
            k, x = 0, v
            while not seen[x]:
                seen[x] = True
                x = sigma[x]
                k += 1
            out = lcm(out, k)
    return out


def automorphism_group(M: Rank3Matroid) -> AutomorphismGroup:
    """Permutations of the ground set mapping the flat set onto itself."""
    if M.n == 0:
        return AutomorphismGroup(0, (), 1)
    s = _search(M)
    gens = tuple(s.generators)
    if not gens:
        return AutomorphismGroup(M.n, (), 1)
    from sympy.combinatorics import Permutation, PermutationGroup

    order = int(PermutationGroup([Permutation(list(g)) for g in gens]).order())
    return AutomorphismGroup(M.n, gens, order)


def preserves_flats(M: Rank3Matroid, sigma: Sequence[int]) -> bool:
    return M.permute(sigma).flats == M.flats
