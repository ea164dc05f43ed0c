"""Orbit search for arrangements over F_q with a prescribed census property.

For each subgroup H of PGL_3(F_q) of order n and each seed line set A0, the
candidate arrangement is the orbit H.A0.  Candidates passing a census
predicate are reduced to their rank-3 matroids and deduplicated by canonical
key.  Every result carries the witness (generators of H, A0) that replays to
its key.
"""
from __future__ import annotations

import logging
import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from itertools import combinations
from math import comb
from typing import Iterator, Sequence

from .arrangement import Arrangement, IncidenceCensus, census
from .groups import EXHAUSTIVE, MatrixKernel, Subgroup, enumerate_subgroups, orbit_codes
from .matroid import Rank3Matroid, canonical_label, matroid_of
from .projective import LINE, fq_cross, fq_dot, fq_normalize, fq_triples, from_codes, to_codes
from .scalars import PrimePowerField, field_of_order

log = logging.getLogger(__name__)

EXHAUSTIVE_SMALL = "exhaustive-small"
FORCED_QUADS = "random-with-forced-quads"
EXHAUSTIVE_SEED_LIMIT = 10**6

MIN_QUADS = "min-quadruple-points"
NK_CANDIDATE = "is-nk-candidate"
CENSUS_SHAPE = "custom-census-shape"


# ---------------------------------------------------------------- property P


@dataclass(frozen=True)
class PropertyP:
    """A census predicate.

    * ``min-quadruple-points``: at least ``t`` points of multiplicity exactly 4.
    * ``is-nk-candidate``: ``m`` lines, and every line carries at least ``k``
      census points of multiplicity exactly ``k`` (the candidates
      :func:`~arrangements.arrangement.find_nk` selects from).
    * ``custom-census-shape``: for each multiplicity in ``shape`` at least
      that many points (exactly that many when ``exact``).
    """

    kind: str
    t: int = 0
    m: int = 0
    k: int = 0
    shape: tuple = ()  # ((multiplicity, count), ...)
    exact: bool = False

    def __post_init__(self):
        if self.kind not in (MIN_QUADS, NK_CANDIDATE, CENSUS_SHAPE):
            raise ValueError(f"unknown property kind {self.kind!r}")
        if self.kind == NK_CANDIDATE and (self.m < 1 or self.k < 3):
            raise ValueError("is-nk-candidate needs m >= 1 and k >= 3")
        if self.t < 0:
            raise ValueError("t must be >= 0")

    @classmethod
    def min_quadruple_points(cls, t: int) -> "PropertyP":
        return cls(MIN_QUADS, t=t)

    @classmethod
    def nk_candidate(cls, m: int, k: int) -> "PropertyP":
        return cls(NK_CANDIDATE, m=m, k=k)

    @classmethod
    def census_shape(cls, shape: dict, exact: bool = False) -> "PropertyP":
        return cls(CENSUS_SHAPE, shape=tuple(sorted(shape.items())), exact=exact)

    def holds(self, cen: IncidenceCensus) -> bool:
        if self.kind == MIN_QUADS:
            return cen.count(4) >= self.t
        if self.kind == NK_CANDIDATE:
            if cen.n_lines != self.m:
                return False
            per = [0] * cen.n_lines
            for p in cen.points:
                if p.multiplicity == self.k:
                    for i in p.lines:
                        per[i] += 1
            return all(c >= self.k for c in per)
        counts = cen.multiplicity_counts()
        if self.exact:
            return all(counts.get(mult, 0) == c for mult, c in self.shape)
        return all(counts.get(mult, 0) >= c for mult, c in self.shape)

    def to_json(self) -> dict:
        if self.kind == MIN_QUADS:
            return {"kind": self.kind, "t": self.t}
        if self.kind == NK_CANDIDATE:
            return {"kind": self.kind, "m": self.m, "k": self.k}
        return {"kind": self.kind, "shape": {str(a): b for a, b in self.shape}, "exact": self.exact}


def property_eval(P: PropertyP, A: Arrangement) -> bool:
    if len(A) < 2:
        # no intersection points at all
        return P.kind == MIN_QUADS and P.t == 0 or (P.kind == CENSUS_SHAPE and not any(c for _, c in P.shape))
    return P.holds(census(A))


# ---------------------------------------------------------------- seeds


@dataclass(frozen=True)
class SeedStrategy:
    kind: str = EXHAUSTIVE_SMALL
    count: int = 0  # forced quadruple points
    trials: int = 200  # attempts per emitted seed

    def __post_init__(self):
        if self.kind not in (EXHAUSTIVE_SMALL, FORCED_QUADS):
            raise ValueError(f"unknown seed strategy {self.kind!r}")


def min_lines_for_quads(count: int) -> int:
    """Fewest lines carrying `count` points of multiplicity 4.

    Two points share at most one line, so the j-th point (j = 1, 2, ...)
    brings at least max(0, 5 - j) new lines.
    """
    return sum(max(0, 5 - j) for j in range(1, count + 1))


def _random_seed(F: PrimePowerField, size: int, count: int, rng: random.Random) -> list[tuple] | None:
    pts = fq_triples(F)
    chosen: list[tuple] = []
    centers: list[tuple] = []
    for _ in range(count):
        # bias towards existing intersections so small seeds stay reachable
        if len(chosen) >= 2 and rng.random() < 0.7:
            a, b = rng.sample(chosen, 2)
            P = fq_normalize(F, fq_cross(F, a, b))
        else:
            P = rng.choice(pts)
        if P in centers:
            return None
        through = [l for l in chosen if not fq_dot(F, l, P)]
        if len(through) > 4:
            return None
        pencil = [l for l in pts if not fq_dot(F, l, P) and l not in chosen]
        need = 4 - len(through)
        if need > len(pencil) or len(chosen) + need > size:
            return None
        chosen += rng.sample(pencil, need)
        centers.append(P)
    rest = [l for l in pts if l not in chosen]
    chosen += rng.sample(rest, size - len(chosen))
    return chosen


def make_seeds(
    q: int | PrimePowerField,
    strategy: SeedStrategy | str,
    size: int,
    *,
    rng_seed: int = 0,
    limit: int | None = None,
) -> Iterator[Arrangement]:
    """Seed line sets A0 of the given size.

    ``exhaustive-small`` yields every size-subset of the q^2+q+1 lines in
    lexicographic order.  ``random-with-forced-quads`` yields random seeds
    whose census has at least ``strategy.count`` points of multiplicity 4;
    ``limit`` caps how many are produced (default 100).
    """
    F = q if isinstance(q, PrimePowerField) else field_of_order(q)
    if isinstance(strategy, str):
        strategy = SeedStrategy(strategy)
    total = F.q**2 + F.q + 1
    if size < 1:
        raise ValueError("seed size must be >= 1")
    if size > total:
        raise ValueError(f"seed size {size} exceeds the {total} lines of the plane")
    lines = fq_triples(F)
    if strategy.kind == EXHAUSTIVE_SMALL:
        if comb(total, size) > EXHAUSTIVE_SEED_LIMIT:
            raise ValueError(f"C({total},{size}) seeds exceed the exhaustive bound {EXHAUSTIVE_SEED_LIMIT}")
        for i, sub in enumerate(combinations(lines, size)):
            if limit is not None and i >= limit:
                return
            yield Arrangement(F, tuple(from_codes(F, LINE, c) for c in sub))
        return
    need = min_lines_for_quads(strategy.count)
    if size < need:
        raise ValueError(f"{strategy.count} quadruple points need at least {need} lines, seed size is {size}")
    if strategy.count and F.q + 1 < 4:
        raise ValueError(f"a point of F_{F.q}P^2 lies on only {F.q + 1} lines")
    rng = random.Random(rng_seed)
    emitted = 0
    limit = 100 if limit is None else limit
    while emitted < limit:
        for _ in range(strategy.trials):
            codes = _random_seed(F, size, strategy.count, rng)
            if codes is None:
                continue
            A = Arrangement(F, tuple(from_codes(F, LINE, c) for c in codes))
            if size < 2 or census(A).count(4) >= strategy.count:
                break
        else:
            log.warning("no seed found in %d trials; stopping after %d seeds", strategy.trials, emitted)
            return
        emitted += 1
        yield A


# ---------------------------------------------------------------- run


@dataclass(frozen=True)
class SearchSpec:
    q: int
    n: int
    seed_size: int
    prop: PropertyP
    strategy: SeedStrategy = SeedStrategy()
    target_lines: int | None = None
    mode: str = EXHAUSTIVE
    max_seeds: int = 100
    max_subgroups: int = 1000
    time_budget: float = 60.0
    rng_seed: int = 0

    def __post_init__(self):
        if self.n < 1 or self.q < 2:
            raise ValueError("q >= 2 and n >= 1 required")
        if self.target_lines is not None and self.target_lines < 1:
            raise ValueError("target line count must be >= 1")
        if self.max_seeds < 1 or self.max_subgroups < 1 or self.time_budget <= 0:
            raise ValueError("limits must be positive")

    def to_json(self) -> dict:
        return {
            "q": self.q,
            "n": self.n,
            "seed_size": self.seed_size,
            "property": self.prop.to_json(),
            "strategy": {"kind": self.strategy.kind, "count": self.strategy.count},
            "target_lines": self.target_lines,
            "mode": self.mode,
            "max_seeds": self.max_seeds,
            "max_subgroups": self.max_subgroups,
            "time_budget": self.time_budget,
            "rng_seed": self.rng_seed,
        }


@dataclass(frozen=True)
class SearchResult:
    matroid: Rank3Matroid
    key: str
    q: int
    generators: tuple  # matrices as 9-tuples of field codes
    seed: tuple  # seed lines as code triples
    lines: tuple  # orbit lines as code triples
    multiplicities: dict = dc_field(compare=False)

    def field(self) -> PrimePowerField:
        return field_of_order(self.q)

    def arrangement(self) -> Arrangement:
        F = self.field()
        return Arrangement(F, tuple(from_codes(F, LINE, c) for c in self.lines))

    def to_json(self) -> dict:
        F = self.field()
        return {
            "key": self.key,
            "matroid": self.matroid.to_json(),
            "q": self.q,
            "field": {"p": F.p, "e": F.e, "modulus": list(F.modulus)},
            "generators": [[list(m[0:3]), list(m[3:6]), list(m[6:9])] for m in self.generators],
            "seed": [list(c) for c in self.seed],
            "lines": [list(c) for c in self.lines],
            "multiplicities": {str(k): v for k, v in self.multiplicities.items()},
        }

    @classmethod
    def from_json(cls, obj: dict) -> "SearchResult":
        gens = tuple(tuple(x for row in m for x in row) for m in obj["generators"])
        return cls(
            Rank3Matroid.from_json(obj["matroid"]),
            obj["key"],
            int(obj["q"]),
            gens,
            tuple(tuple(c) for c in obj["seed"]),
            tuple(tuple(c) for c in obj["lines"]),
            {int(k): v for k, v in obj.get("multiplicities", {}).items()},
        )


def replay(result: SearchResult) -> tuple[str, Arrangement]:
    """Rebuild H from its generators, recompute the orbit and its canonical key."""
    F = result.field()
    kern = MatrixKernel(F)
    H = Subgroup(F, kern.closure(result.generators), result.generators)
    A = Arrangement(F, tuple(from_codes(F, LINE, c) for c in orbit_codes(H, result.seed)))
    return canonical_label(matroid_of(A)).hex, A


@dataclass
class SearchOutcome:
    results: list
    truncated: bool
    stats: dict

    def jsonl(self) -> str:
        import json

        return "".join(json.dumps(r.to_json()) + "\n" for r in self.results)


def _evaluate(
    H: Subgroup, seeds: Sequence[tuple], spec: SearchSpec, deadline: float
) -> tuple[list[SearchResult], int, bool]:
    F = H.field
    out: list[SearchResult] = []
    evaluated = 0
    for seed in seeds:
        if time.monotonic() > deadline:
            return out, evaluated, True
        evaluated += 1
        codes = orbit_codes(H, seed)
        if spec.target_lines is not None and len(codes) != spec.target_lines:
            continue
        if len(codes) < 3:
            continue
        A = Arrangement(F, tuple(from_codes(F, LINE, c) for c in codes))
        cen = census(A)
        if not spec.prop.holds(cen):
            continue
        M = matroid_of(A, cen)
        key = canonical_label(M).hex
        out.append(
            SearchResult(M, key, F.q, tuple(H.generators), tuple(seed), tuple(codes), cen.multiplicity_counts())
        )
    return out, evaluated, False


def _worker(args):
    H, seeds, spec, deadline = args
    return _evaluate(H, seeds, spec, deadline)


def worker_count() -> int:
    try:
        return max(1, int(os.environ.get("ARRANGE_THREADS", "1")))
    except ValueError:
        return 1


def run(spec: SearchSpec, *, workers: int | None = None) -> SearchOutcome:
    """Steps 1-3 of the orbit enumeration: seeds x subgroups -> filtered matroids.

    Results are deduplicated by canonical key and sorted by it.  When the time
    budget or a limit cuts the sweep short, ``truncated`` is set.
    """
    start = time.monotonic()
    deadline = start + spec.time_budget
    F = field_of_order(spec.q)
    groups = enumerate_subgroups(F, spec.n, spec.mode, seed=spec.rng_seed)
    truncated = len(groups) > spec.max_subgroups
    groups = groups[: spec.max_subgroups]
    seeds = [
        tuple(to_codes(l) for l in A.lines)
        for A in make_seeds(F, spec.strategy, spec.seed_size, rng_seed=spec.rng_seed, limit=spec.max_seeds)
    ]
    if spec.strategy.kind == EXHAUSTIVE_SMALL and comb(F.q**2 + F.q + 1, spec.seed_size) > spec.max_seeds:
        truncated = True
    workers = workers or worker_count()
    tasks = [(H, seeds, spec, deadline) for H in groups]
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_worker, tasks))
    else:
        parts = []
        for t in tasks:
            parts.append(_worker(t))
            if parts[-1][2]:
                break
    best: dict[str, SearchResult] = {}
    evaluated = 0
    for found, count, cut in parts:
        evaluated += count
        truncated = truncated or cut
        for r in found:
            best.setdefault(r.key, r)
    if len(parts) < len(tasks):
        truncated = True
    results = [best[k] for k in sorted(best)]
    stats = {
        "subgroups": len(groups),
        "seeds": len(seeds),
        "evaluated": evaluated,
        "results": len(results),
        "seconds": round(time.monotonic() - start, 3),
    }
    log.info("search q=%d n=%d: %s", spec.q, spec.n, stats)
    return SearchOutcome(results, truncated, stats)


def merge(*outcomes: SearchOutcome) -> list[SearchResult]:
    """Union of several runs with duplicates (same canonical key) removed."""
    best: dict[str, SearchResult] = {}
    for o in outcomes:
        for r in o.results:
            best.setdefault(r.key, r)
    return [best[k] for k in sorted(best)]
