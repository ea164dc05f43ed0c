"""Exact realizations of rank-3 matroids of lines over number fields.

The solver works in the dual picture: each ground element is a point of the
plane and each flat is a line through its elements (coordinates are reused
verbatim for the lines of the arrangement, since three triples are dependent
iff their determinant vanishes either way).

Starting from four elements in general position fixed to the standard
projective basis, it runs a straight-line *program*:

* ``join``  - the line of a flat through two placed elements,
* ``meet``  - an element lying on two placed flats,
* ``ppoint``/``pline`` - an element on a placed flat, or a flat through a
  placed element, with one free parameter ``t``,
* ``check`` - a placed element must lie on a placed flat.

Checks are polynomials in the active parameter.  A nonzero constant kills
the branch; a nonconstant one is factored over the current field and the
solver branches on its irreducible factors, adjoining a root when the factor
is not linear.  Every finished branch is re-executed with exact values and
verified, so ``realized`` never rests on anything but exact arithmetic.
"""
from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from itertools import combinations, islice
from typing import Sequence

from .matroid import Rank3Matroid
from .projective import cross, dot, normalize_coords
from .scalars import QQ, NumberField, NumberFieldElement, nf_approx
from .scalars import ratpoly
from .scalars.kpoly import Extension, KPoly, content_strip, extend, factor

log = logging.getLogger(__name__)

REALIZED = "realized"
NOT_REALIZABLE = "not-realizable"
UNDECIDED = "undecided"

MAX_FIELD_DEGREE = 12
MAX_FACTOR_DEGREE = 4
BASIS_COORDS = ((1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1))


class Contradiction(Exception):
    def __init__(self, reason: dict):
        super().__init__(reason.get("kind", "contradiction"))
        self.reason = reason


# ---------------------------------------------------------------- verification


def _pair_flats(M: Rank3Matroid) -> dict:
    out = {}
    for f in M.flats:
        for a, b in combinations(sorted(f), 2):
            out[(a, b)] = f
    return out


def verify_realization(M: Rank3Matroid, coords: Sequence[Sequence]) -> bool:
    """Exactly the flats' triples are dependent (determinant zero)."""
    if len(coords) != M.n:
        raise ValueError(f"{len(coords)} coordinate triples for a matroid on {M.n} elements")
    return first_violation(M, coords) is None


def first_violation(M: Rank3Matroid, coords: Sequence[Sequence]) -> tuple | None:
    """The first triple (a, b, c) whose dependence disagrees with M, or None."""
    pf = _pair_flats(M)
    n = M.n
    for a in range(n):
        for b in range(a + 1, n):
            p = cross(coords[a], coords[b])
            if not any(p):
                c = next((c for c in range(n) if c not in (a, b)), None)
                return (a, b, c)
            f = pf.get((a, b))
            for c in range(b + 1, n):
                zero = not dot(p, coords[c])
                if zero != (f is not None and c in f):
                    return (a, b, c)
    return None


# ---------------------------------------------------------------- programs


class _Program:
    """Straight-line construction with at most one symbolic parameter."""

    def __init__(self, M: Rank3Matroid):
        self.M = M
        self.flats = [tuple(sorted(f)) for f in sorted(M.flats, key=sorted)]
        self.elem_flats: list[list[int]] = [[] for _ in range(M.n)]
        for i, f in enumerate(self.flats):
            for e in f:
                self.elem_flats[e].append(i)


def _poly_triple(K: NumberField, coords) -> tuple:
    return tuple(KPoly(K, (K(c),)) for c in coords)


def _strip(v: Sequence[KPoly]) -> tuple:
    if all(p.is_constant() for p in v):
        lead = next((p.constant() for p in v if p), None)
        if lead is None:
            return tuple(v)
        inv = lead.inv()
        return tuple(p.scale(inv) for p in v)
    v = content_strip(v)
    lead = next(p.lead() for p in v if p)
    inv = lead.inv()
    return tuple(p.scale(inv) for p in v)


class _Env:
    """Values of a program over K, with parameter values (None = symbolic t)."""

    def __init__(self, K: NumberField, params: list):
        self.K = K
        self.params = params
        self.pts: dict[int, tuple] = {}
        self.lines: dict[int, tuple] = {}
        self.t = KPoly.var(K)

    def param(self, i: int) -> KPoly:
        v = self.params[i]
        return self.t if v is None else KPoly(self.K, (v,))

    def const(self, coords) -> tuple:
        return _poly_triple(self.K, coords)

    def strip(self, v) -> tuple:
        return _strip(v)

    def run(self, step: tuple, idx: int):
        """Execute one step; returns the check polynomial for ``check`` steps."""
        op = step[0]
        if op in ("basis", "free", "guess"):
            _, e, c = step
            self.pts[e] = self.const(c)
        elif op == "join":
            _, f, a, b = step
            v = cross(self.pts[a], self.pts[b])
            if not any(v):
                raise Contradiction({"kind": "coincident-points", "step": idx, "elements": [a, b]})
            self.lines[f] = self.strip(v)
        elif op == "meet":
            _, e, f, g = step
            v = cross(self.lines[f], self.lines[g])
            if not any(v):
                raise Contradiction({"kind": "coincident-flats", "step": idx, "flats": [f, g]})
            self.pts[e] = self.strip(v)
        elif op == "ppoint":
            _, e, a, b, pi = step
            t = self.param(pi)
            v = tuple(x + t * y for x, y in zip(self.pts[a], self.pts[b]))
            if not any(v):
                raise Contradiction({"kind": "degenerate-parameter", "step": idx})
            self.pts[e] = self.strip(v)
        elif op == "pline":
            _, f, a, u, w, pi = step
            t = self.param(pi)
            r = tuple(x + t * y for x, y in zip(self.pts[u], self.pts[w]))
            v = cross(self.pts[a], r)
            if not any(v):
                raise Contradiction({"kind": "degenerate-parameter", "step": idx})
            self.lines[f] = self.strip(v)
        elif op == "check":
            _, f, e = step
            return dot(self.lines[f], self.pts[e])
        else:
            raise ValueError(f"unknown step {op!r}")
        return None


def execute(M: Rank3Matroid, K: NumberField, steps: Sequence[tuple], params: list) -> _Env:
    """Run a whole program; raises Contradiction on a degenerate or failed step."""
    env = _Env(K, params)
    for i, s in enumerate(steps):
        c = env.run(s, i)
        if c is not None and c and c.is_constant():
            raise Contradiction({"kind": "nonzero-constant", "step": i, "flat": s[1], "element": s[2], "value": _scalar_json(c.constant())})
    return env


def _scalar_json(a: NumberFieldElement) -> list:
    return [f"{x.numerator}/{x.denominator}" for x in a.coeffs]


# ---------------------------------------------------------------- results


@dataclass
class RealizationResult:
    status: str
    field: NumberField | None = None
    coordinates: list | None = None  # one triple of NumberFieldElements per element
    certificate: dict | None = None
    reason: str = ""
    branches: int = 0  # realized leaves (distinct solutions up to Galois action)
    uniqueness: str = "unverified"  # unique | not-unique | unverified
    leaves: list = dc_field(default_factory=list, repr=False)

    @property
    def galois_branches(self) -> int:
        return self.field.degree if self.status == REALIZED else 0

    def to_json(self) -> dict:
        from .serialize import field_to_json, scalar_to_json

        out: dict = {"status": self.status}
        if self.status == REALIZED:
            out["field"] = field_to_json(self.field)
            out["coordinates"] = [
                {"kind": "line", "coords": [scalar_to_json(c) for c in t]} for t in self.coordinates
            ]
            out["branches"] = self.branches
            out["galois_branches"] = self.galois_branches
            out["uniqueness"] = self.uniqueness
        if self.certificate is not None:
            out["certificate"] = self.certificate
        if self.reason:
            out["reason"] = self.reason
        return out


def from_coordinates(M: Rank3Matroid, coords: Sequence[Sequence]) -> RealizationResult:
    """Wrap given coordinates as a realized result after exact verification."""
    if not verify_realization(M, coords):
        raise ValueError("coordinates do not realize the matroid")
    K = coords[0][0].field
    return RealizationResult(REALIZED, K, [tuple(t) for t in coords], branches=1)


@dataclass(frozen=True)
class Budget:
    seconds: float = 120.0
    max_leaves: int = 64
    generic_tries: int = 40


# ---------------------------------------------------------------- the solver


def general_position_quadruples(M: Rank3Matroid, limit: int = 5000):
    pf = _pair_flats(M)

    def dependent(a, b, c):
        a, b, c = sorted((a, b, c))
        f = pf.get((a, b))
        return f is not None and c in f

    count = 0
    for quad in combinations(range(M.n), 4):
        if not any(dependent(*tr) for tr in combinations(quad, 3)):
            yield quad
            count += 1
            if count >= limit:
                return


def _closure(prog: _Program, pts: set, lines: set) -> tuple[set, set]:
    pts, lines = set(pts), set(lines)
    changed = True
    while changed:
        changed = False
        for i, f in enumerate(prog.flats):
            if i not in lines and sum(1 for e in f if e in pts) >= 2:
                lines.add(i)
                changed = True
        for e in range(prog.M.n):
            if e not in pts and sum(1 for i in prog.elem_flats[e] if i in lines) >= 2:
                pts.add(e)
                changed = True
    return pts, lines


def choose_basis(M: Rank3Matroid) -> tuple | None:
    """The general-position quadruple whose closure places the most elements."""
    prog = _Program(M)
    best, score = None, -1
    for quad in general_position_quadruples(M):
        s = len(_closure(prog, set(quad), set())[0])
        if s > score:
            best, score = quad, s
            if s == M.n:
                break
    return best


@dataclass
class _State:
    K: NumberField
    steps: list
    params: list
    pts: set
    lines: set
    guessed: bool = False


def _generic_values():
    yield from (Fraction(v) for v in (2, 3, -2, 5, -3, 7, Fraction(1, 2), 11, -5, 13, Fraction(3, 2), 17))
    k = 19
    while True:
        yield Fraction(k)
        yield Fraction(-k, 3)
        k += 2


class _Solver:
    def __init__(self, M: Rank3Matroid, budget: Budget):
        self.M = M
        self.prog = _Program(M)
        self.budget = budget
        self.deadline = time.monotonic() + budget.seconds
        self.realized: list[tuple] = []  # (K, coords, free-dimension flag, guessed)
        self.undecided: list[str] = []
        self.leaves = 0

    # -- helpers --------------------------------------------------------------

    def _dead(self, st: _State, reason: dict) -> dict | None:
        self.leaves += 1
        if st.guessed:
            self.undecided.append(f"contradiction after a guessed parameter ({reason['kind']})")
            return None
        from .serialize import field_to_json

        return {
            "kind": "contradiction",
            "field": field_to_json(st.K),
            "steps": [list(s) if s[0] not in ("basis", "free", "guess") else [s[0], s[1], list(s[2])] for s in st.steps],
            "params": [None if v is None else _scalar_json(v) for v in st.params],
            "reason": reason,
        }

    def _over_budget(self) -> bool:
        return time.monotonic() > self.deadline or self.leaves >= self.budget.max_leaves

    def _active(self, st: _State) -> int | None:
        for i, v in enumerate(st.params):
            if v is None:
                return i
        return None

    # -- main recursion -------------------------------------------------------

    def solve(self, st: _State) -> dict | None:
        """Explore one branch.  Returns a certificate node when the branch is
        contradictory for all parameter values, else None."""
        if self._over_budget():
            self.undecided.append("budget exhausted")
            return None
        try:
            env = execute(self.M, st.K, st.steps, st.params)
        except Contradiction as c:
            return self._dead(st, c.reason)
        while True:
            if self._over_budget():
                self.undecided.append("budget exhausted")
                return None
            step = self._next_forced(st)
            if step is not None:
                for s in step:
                    try:
                        val = env.run(s, len(st.steps))
                    except Contradiction as c:
                        st.steps.append(s)
                        return self._dead(st, c.reason)
                    st.steps.append(s)
                    if s[0] == "join":
                        st.lines.add(s[1])
                    elif s[0] == "meet":
                        st.pts.add(s[1])
                    if val is not None and val:
                        if val.is_constant():
                            return self._dead(
                                st,
                                {
                                    "kind": "nonzero-constant",
                                    "step": len(st.steps) - 1,
                                    "flat": s[1],
                                    "element": s[2],
                                    "value": _scalar_json(val.constant()),
                                },
                            )
                        return self._split(st, val)
                continue
            if len(st.pts) == self.M.n:
                return self._finish(st, env)
            if self._active(st) is not None:
                # a second simultaneous parameter is needed
                return self._multi(st)
            new = self._parameter_step(st)
            if new is None:
                return self._finish(st, env)
            st.params.append(None)
            try:
                env.params = st.params
                env.run(new, len(st.steps))
            except Contradiction as c:
                st.steps.append(new)
                return self._dead(st, c.reason)
            st.steps.append(new)
            if new[0] == "ppoint":
                st.pts.add(new[1])
            elif new[0] == "pline":
                st.lines.add(new[1])
            else:
                st.pts.add(new[1])

    def _next_forced(self, st: _State) -> list | None:
        prog = self.prog
        for i, f in enumerate(prog.flats):
            if i in st.lines:
                continue
            known = [e for e in f if e in st.pts]
            if len(known) >= 2:
                a, b = known[0], known[1]
                return [("join", i, a, b)] + [("check", i, e) for e in known[2:]]
        for e in range(self.M.n):
            if e in st.pts:
                continue
            known = [i for i in prog.elem_flats[e] if i in st.lines]
            if len(known) >= 2:
                f, g = known[0], known[1]
                return [("meet", e, f, g)] + [("check", h, e) for h in known[2:]]
        return None

    def _parameter_step(self, st: _State) -> tuple | None:
        prog = self.prog
        cands = []
        for e in range(self.M.n):
            if e in st.pts:
                continue
            for i in prog.elem_flats[e]:
                if i in st.lines:
                    a, b = self._definers(st, i)
                    cands.append(("ppoint", e, a, b, len(st.params)))
                    break
        for i, f in enumerate(prog.flats):
            if i in st.lines:
                continue
            known = [e for e in f if e in st.pts]
            if len(known) == 1:
                a = known[0]
                others = [u for u in sorted(st.pts) if u not in f]
                pair = self._free_pair(a, others)
                if pair:
                    cands.append(("pline", i, a, pair[0], pair[1], len(st.params)))
        if not cands:
            # an element of some flat with nothing placed nearby: a guessed point
            for e in range(self.M.n):
                if e not in st.pts and prog.elem_flats[e]:
                    st.guessed = True
                    return ("guess", e, self._generic_point(st, e))
            return None

        def gain(c):
            if c[0] == "ppoint":
                pts, lines = _closure(prog, st.pts | {c[1]}, st.lines)
            else:
                pts, lines = _closure(prog, st.pts, st.lines | {c[1]})
            return len(pts) + len(lines)

        return max(cands, key=lambda c: (gain(c), -cands.index(c)))

    def _definers(self, st: _State, i: int) -> tuple:
        for s in st.steps:
            if s[0] == "join" and s[1] == i:
                return s[2], s[3]
        raise KeyError(i)

    def _free_pair(self, a: int, others: list) -> tuple | None:
        pf = _pair_flats(self.M)
        for u, w in combinations(others, 2):
            tr = tuple(sorted((a, u, w)))
            f = pf.get(tr[:2])
            if f is None or tr[2] not in f:
                return (u, w)
        return None

    def _generic_point(self, st: _State, e: int) -> tuple:
        k = 2 + e
        return (1, k, k * k + 1)

    def _split(self, st: _State, constraint: KPoly) -> dict | None:
        pi = self._active(st)
        K = st.K
        try:
            facs = factor(constraint)
        except ArithmeticError as exc:
            self.undecided.append(f"factoring failed: {exc}")
            return None
        facs.sort(key=lambda fm: (fm[0].degree, [tuple(a.coeffs) for a in fm[0].c]))
        from .serialize import field_to_json

        node = {
            "kind": "split",
            "field": field_to_json(K),
            "steps": [list(s) if s[0] not in ("basis", "free", "guess") else [s[0], s[1], list(s[2])] for s in st.steps],
            "params": [None if v is None else _scalar_json(v) for v in st.params],
            "param": pi,
            "constraint": constraint.to_json(),
            "factors": [],
        }
        all_dead = not st.guessed
        for g, mult in facs:
            d = g.degree
            if d == 1:
                ext = None
                L = K
                root = -g.c[0]
            elif d > MAX_FACTOR_DEGREE or K.degree * d > MAX_FIELD_DEGREE:
                self.undecided.append(f"root of a degree-{d} factor over a degree-{K.degree} field exceeds the degree cap")
                all_dead = False
                continue
            else:
                ext = extend(K, g)
                L, root = ext.L, ext.root
            params = [ext.embed(v) if (ext and v is not None) else v for v in st.params]
            params[pi] = root
            child = _State(L, list(st.steps), params, set(st.pts), set(st.lines), st.guessed)
            sub = self.solve(child)
            entry = {"factor": g.to_json(), "multiplicity": mult, "field": field_to_json(L)}
            if ext is not None:
                entry["embedding"] = _scalar_json(ext.image_of_gen)
            entry["root"] = _scalar_json(root)
            if sub is None:
                all_dead = False
            else:
                entry["child"] = sub
            node["factors"].append(entry)
        return node if all_dead else None

    def _finish(self, st: _State, env: _Env) -> dict | None:
        pi = self._active(st)
        free_param = pi is not None
        values = [None] if pi is None else list(islice(_generic_values(), self.budget.generic_tries))
        failure = None
        for v in values:
            params = list(st.params)
            if pi is not None:
                params[pi] = st.K(v)
            try:
                env2 = execute(self.M, st.K, st.steps, params)
            except Contradiction as c:
                failure = c.reason
                continue
            coords = self._complete(st, env2)
            if coords is None:
                failure = {"kind": "no-generic-free-point"}
                continue
            bad = first_violation(self.M, coords)
            if bad is None:
                self.leaves += 1
                free_elems = any(s[0] == "free" for s in st.steps)
                self.realized.append((st.K, coords, free_param or free_elems, st.guessed))
                return None
            failure = {"kind": "dependent-triple", "triple": list(bad)}
            if pi is None and not self._has_free(st):
                break
        # with a symbolic parameter, decide whether the failure holds identically
        if failure and failure.get("kind") == "dependent-triple" and pi is None and not self._has_free(st):
            return self._dead(st, failure)
        if failure and failure.get("kind") == "dependent-triple" and pi is not None:
            a, b, c = failure["triple"]
            try:
                pts = self._symbolic_points(st)
                det = dot(cross(pts[a], pts[b]), pts[c])
            except (Contradiction, KeyError):
                det = True
            if not det:
                return self._dead(st, {"kind": "dependent-triple", "triple": [a, b, c], "identically": True})
        self.undecided.append(f"no generic completion found ({failure})")
        return None

    # -- several simultaneous parameters ---------------------------------------

    def _multi(self, st: _State) -> None:
        """Finish the branch with several symbolic parameters and elimination.

        Only realizations come out of this stage: contradictions found here
        are reported as undecided rather than certified.
        """
        if st.K.degree != 1:
            self.undecided.append("several simultaneous parameters over an extension field")
            return None
        ms = _MultiStage(self, st)
        try:
            ms.run()
        except _GiveUp as exc:
            self.undecided.append(str(exc))
        return None

    def _has_free(self, st: _State) -> bool:
        return any(e not in st.pts for e in range(self.M.n))

    def _symbolic_points(self, st: _State) -> dict:
        return execute(self.M, st.K, st.steps, st.params).pts

    def _complete(self, st: _State, env: _Env) -> list | None:
        """Constant coordinates for every element, placing free elements generically."""
        K = st.K
        pts = {e: tuple(p.constant() for p in v) for e, v in env.pts.items()}
        missing = [e for e in range(self.M.n) if e not in pts]
        for e in missing:
            placed = False
            for k in range(2, 400):
                cand = (K(1), K(k), K(k * k + 3 * e + 1))
                if self._generic_against(pts, cand):
                    pts[e] = cand
                    st_free = ("free", e, (1, k, k * k + 3 * e + 1))
                    st.steps.append(st_free)
                    st.pts.add(e)
                    placed = True
                    break
            if not placed:
                return None
        return [tuple(normalize_coords(pts[e])) for e in range(self.M.n)]

    def _generic_against(self, pts: dict, cand: tuple) -> bool:
        keys = list(pts)
        for a, b in combinations(keys, 2):
            if not dot(cross(pts[a], pts[b]), cand):
                return False
        return all(any(cross(pts[a], cand)) for a in keys)


class _GiveUp(Exception):
    pass


MAX_PARAMS = 4
MAX_COMPONENTS = 64


class _SymEnv(_Env):
    """Program values as sympy polynomials over Q in several parameters."""

    def __init__(self, params: list, gens: tuple, symbol_of: dict):
        super().__init__(QQ, params)
        import sympy

        self.sympy = sympy
        self.gens = gens
        self.symbol_of = symbol_of
        self.contents: list = []  # stripped common factors (degenerate loci)

    def _p(self, x):
        return self.sympy.Poly(x, *self.gens, domain="QQ")

    def param(self, i: int):
        v = self.params[i]
        if v is None:
            return self._p(self.symbol_of[i])
        c = v.coeffs[0]
        return self._p(self.sympy.Rational(c.numerator, c.denominator))

    def const(self, coords) -> tuple:
        return tuple(self._p(self.sympy.Rational(Fraction(c).numerator, Fraction(c).denominator)) for c in coords)

    def strip(self, v) -> tuple:
        nz = [p for p in v if not p.is_zero]
        g = nz[0]
        for p in nz[1:]:
            g = self.sympy.gcd(g, p)
        if g.total_degree() > 0:
            self.contents.append(g)
            v = [p.exquo(g) for p in v]
        lc = next(p for p in v if not p.is_zero).LC()
        return tuple(p.quo_ground(lc) for p in v)


class _MultiStage:
    def __init__(self, solver: "_Solver", st: _State):
        import sympy

        self.sympy = sympy
        self.solver = solver
        self.st = st
        self.gens = sympy.symbols(f"t0:{MAX_PARAMS}")
        self.symbol_of: dict = {}
        self.forbidden: list = []
        self.constraints: list = []

    def _symbol(self, pi: int):
        if pi not in self.symbol_of:
            if len(self.symbol_of) >= MAX_PARAMS:
                raise _GiveUp(f"more than {MAX_PARAMS} simultaneous parameters")
            self.symbol_of[pi] = self.gens[len(self.symbol_of)]
        return self.symbol_of[pi]

    def _record(self, val) -> None:
        if val is None or val.is_zero:
            return
        if val.is_ground:
            raise _GiveUp("contradiction in the multi-parameter stage (not certified)")
        self.constraints.append(val)

    def run(self) -> None:
        solver, st = self.solver, self.st
        for i, v in enumerate(st.params):
            if v is None:
                self._symbol(i)
        env = _SymEnv(st.params, self.gens, self.symbol_of)
        try:
            for i, s in enumerate(st.steps):
                self._record(env.run(s, i))
            while len(st.pts) < solver.M.n:
                if solver._over_budget():
                    raise _GiveUp("budget exhausted")
                step = solver._next_forced(st)
                if step is None:
                    new = solver._parameter_step(st)
                    if new is None or new[0] == "guess":
                        raise _GiveUp("no parameter step available")
                    st.params.append(None)
                    self._symbol(len(st.params) - 1)
                    step = [new]
                for s in step:
                    self._record(env.run(s, len(st.steps)))
                    st.steps.append(s)
                    if s[0] in ("meet", "ppoint"):
                        st.pts.add(s[1])
                    else:
                        st.lines.add(s[1])
        except Contradiction as c:
            raise _GiveUp(f"contradiction in the multi-parameter stage ({c.reason['kind']}, not certified)")
        syms = [self.symbol_of[i] for i in sorted(self.symbol_of)]
        self.forbidden = [self.sympy.Poly(x, *syms) for x in syms]
        for g in env.contents:
            for fac, _ in self.sympy.factor_list(g.as_expr())[1]:
                if fac.free_symbols:
                    self.forbidden.append(self.sympy.Poly(fac, *syms))
        order = list(reversed(syms))  # lex with the first parameter smallest
        comps = self._split([c.as_expr() for c in self.constraints], order, 0)
        log.debug("multi-parameter stage: %d parameters, %d components", len(syms), len(comps))
        for G in comps:
            for K, values in self._solutions(G, syms):
                if solver._over_budget():
                    raise _GiveUp("budget exhausted")
                self._try(K, values)

    def _is_forbidden(self, fac) -> bool:
        syms = [self.symbol_of[i] for i in sorted(self.symbol_of)]
        p = self.sympy.Poly(fac, *syms).monic()
        return any(p == f.monic() for f in self.forbidden)

    def _factors_of(self, G) -> list | None:
        for g in G.exprs:
            facs = self.sympy.factor_list(g)[1]
            if len(facs) > 1 or facs[0][1] > 1:
                return facs
        return None

    def _split(self, polys: list, order: list, depth: int) -> list:
        """Lex Groebner bases of the pieces obtained by splitting on factors.

        Bases are computed in grevlex (cheap) and converted to lex only when
        no grevlex element factors; lex elements often do factor, so the
        split continues from there.
        """
        sympy = self.sympy
        if self.solver._over_budget():
            raise _GiveUp("budget exhausted")
        if not polys:
            return [[]]
        G = sympy.groebner(polys, *order, order="grevlex")
        if list(G.exprs) == [1]:
            return []
        facs = self._factors_of(G)
        if facs is None:
            G = G.fglm("lex") if G.is_zero_dimensional else sympy.groebner(G.exprs, *order, order="lex")
            facs = self._factors_of(G)
            if facs is None:
                return [list(G.exprs)]
        out = []
        for fac, _ in facs:
            if not fac.free_symbols or self._is_forbidden(fac):
                continue
            out += self._split(list(G.exprs) + [fac], order, depth + 1)
            if len(out) > MAX_COMPONENTS:
                raise _GiveUp("too many solution components")
        return out

    def _solutions(self, G: list, syms: list):
        """Exact parameter assignments solving the triangular system G."""
        sympy = self.sympy

        def rec(j: int, K: NumberField, vals: list):
            if j == len(syms):
                yield K, vals
                return
            v = syms[j]
            allowed = set(syms[: j + 1])
            rows = [g for g in G if v in g.free_symbols and g.free_symbols <= allowed]
            polys = [self._univariate(g, syms[: j + 1], K, vals) for g in rows]
            acc = None
            for p in polys:
                if p:
                    acc = p if acc is None else _kgcd(acc, p)
            if acc is None:
                # free in this component: generic values
                for x in islice(_generic_values(), 3):
                    yield from rec(j + 1, K, vals + [K(x)])
                return
            if acc.degree < 1:
                return
            for g, _m in factor(acc):
                d = g.degree
                if d == 1:
                    yield from rec(j + 1, K, vals + [-g.c[0]])
                elif d <= MAX_FACTOR_DEGREE and K.degree * d <= MAX_FIELD_DEGREE:
                    ext = extend(K, g)
                    yield from rec(j + 1, ext.L, [ext.embed(x) for x in vals] + [ext.root])
                else:
                    self.solver.undecided.append(f"degree-{d} factor over a degree-{K.degree} field exceeds the degree cap")

        yield from rec(0, QQ, [])

    def _univariate(self, g, syms: list, K: NumberField, vals: list) -> KPoly:
        poly = self.sympy.Poly(g, *syms)
        tv = KPoly.var(K)
        out = KPoly(K, ())
        for monom, coeff in poly.terms():
            term = KPoly(K, (K(Fraction(int(coeff.p), int(coeff.q))),))
            for x, e in zip(vals, monom[:-1]):
                if e:
                    term = term.scale(x**e)
            for _ in range(monom[-1]):
                term = term * tv
            out = out + term
        return out

    def _try(self, K: NumberField, values: list) -> None:
        solver, st = self.solver, self.st
        params = []
        for i, v in enumerate(st.params):
            if i in self.symbol_of:
                params.append(values[sorted(self.symbol_of).index(i)])
            else:
                params.append(K(v.coeffs[0]))
        try:
            env = execute(solver.M, K, st.steps, params)
        except Contradiction:
            return
        sub = _State(K, list(st.steps), params, set(st.pts), set(st.lines), st.guessed)
        coords = solver._complete(sub, env)
        if coords is None or first_violation(solver.M, coords) is not None:
            return
        solver.leaves += 1
        free = any(s[0] == "free" for s in sub.steps)
        solver.realized.append((K, coords, free, st.guessed))


def _kgcd(f: KPoly, g: KPoly) -> KPoly:
    from .scalars.kpoly import kgcd

    return kgcd(f, g)


def realize(M: Rank3Matroid, budget: Budget | None = None, basis: Sequence[int] | None = None) -> RealizationResult:
    """Search for coordinates over a number field realizing M."""
    budget = budget or Budget()
    if basis is None:
        basis = choose_basis(M)
        if basis is None:
            raise ValueError("the matroid has no 4 elements in general position")
    else:
        basis = tuple(basis)
        if basis not in set(general_position_quadruples(M, limit=10**9)):
            raise ValueError(f"elements {basis} are not in general position")
    solver = _Solver(M, budget)
    steps = [("basis", e, c) for e, c in zip(basis, BASIS_COORDS)]
    st = _State(QQ, steps, [], set(basis), set())
    cert = solver.solve(st)
    if solver.realized:
        solver.realized.sort(key=lambda r: (r[0].degree, r[2], r[3]))
        K, coords, free, guessed = solver.realized[0]
        if len(solver.realized) == 1 and not free and not guessed and not solver.undecided:
            uniq = "unique"
        elif any(r[2] for r in solver.realized) or len(solver.realized) > 1:
            uniq = "not-unique"
        else:
            uniq = "unverified"
        return RealizationResult(
            REALIZED,
            K,
            coords,
            branches=len(solver.realized),
            uniqueness=uniq,
            leaves=[(r[0], r[1]) for r in solver.realized],
            reason="; ".join(sorted(set(solver.undecided))),
        )
    if cert is not None and not solver.undecided:
        cert = {"basis": list(basis), "tree": cert}
        return RealizationResult(NOT_REALIZABLE, certificate=cert)
    return RealizationResult(UNDECIDED, reason="; ".join(sorted(set(solver.undecided))) or "no branch resolved")


# ---------------------------------------------------------------- certificates


def replay_certificate(M: Rank3Matroid, cert: dict) -> bool:
    """Re-derive every contradiction in a not-realizable certificate exactly."""
    from .serialize import field_from_json

    def steps_of(node):
        out = []
        for s in node["steps"]:
            if s[0] in ("basis", "free", "guess"):
                out.append((s[0], s[1], tuple(s[2])))
            else:
                out.append(tuple(s))
        return out

    def params_of(K, node):
        return [None if v is None else K.from_coeffs([Fraction(x) for x in v]) for v in node["params"]]

    def check(node) -> bool:
        K = field_from_json(node["field"])
        steps = steps_of(node)
        params = params_of(K, node)
        if steps[:4] != [("basis", e, c) for e, c in zip(cert["basis"], BASIS_COORDS)]:
            return False
        if node["kind"] == "contradiction":
            reason = node["reason"]
            kind = reason["kind"]
            try:
                env = _Env(K, params)
                for i, s in enumerate(steps):
                    val = env.run(s, i)
                    if kind == "nonzero-constant" and i == reason["step"]:
                        return val is not None and bool(val) and val.is_constant()
            except Contradiction as c:
                return c.reason["kind"] == kind and c.reason.get("step") == reason.get("step")
            if kind == "dependent-triple":
                a, b, c = reason["triple"]
                pf = _pair_flats(M)
                x, y, z = sorted((a, b, c))
                f = pf.get((x, y))
                if f is not None and z in f:
                    return False
                p = env.pts
                if not all(k in p for k in (a, b, c)):
                    return False
                return not dot(cross(p[a], p[b]), p[c])
            return False
        # split: the constraint equals the product of its factors (up to a unit)
        env = _Env(K, params)
        val = None
        for i, s in enumerate(steps):
            val = env.run(s, i)
        if val is None or val.is_constant():
            return False
        constraint = KPoly.from_json(K, node["constraint"])
        if val.monic() != constraint.monic():
            return False
        prod = KPoly(K, (K.one,))
        for entry in node["factors"]:
            g = KPoly.from_json(K, entry["factor"])
            for _ in range(entry["multiplicity"]):
                prod = prod * g
            if "child" not in entry:
                return False
            child = entry["child"]
            L = field_from_json(entry["field"])
            if "embedding" in entry:
                img = L.from_coeffs([Fraction(x) for x in entry["embedding"]])
                emb = Extension(L, img, L.zero, K).embed
            else:
                emb = lambda a: a  # noqa: E731
            root = L.from_coeffs([Fraction(x) for x in entry["root"]])
            if g.map_coeffs(emb, L)(root):
                return False
            cparams = params_of(L, child)
            if cparams[node["param"]] != root:
                return False
            if child["steps"][: len(node["steps"])] != node["steps"]:
                return False
            if not check(child):
                return False
        return prod.monic() == constraint.monic()

    try:
        return check(cert["tree"])
    except (KeyError, ValueError, ZeroDivisionError, IndexError, TypeError):
        return False


# ---------------------------------------------------------------- Galois classification


REAL = "real"
COMPLEX_ONLY = "complex-only"


def galois_classify(result: RealizationResult | NumberField) -> list[dict]:
    """One report per root of the field's minimal polynomial."""
    if isinstance(result, RealizationResult):
        if result.status != REALIZED:
            raise ValueError("galois_classify needs a realized result")
        K = result.field
    else:
        K = result
    out = []
    for sel in K.all_selectors():
        L = K.with_selector(sel)
        if sel.is_real:
            lo, hi = nf_approx(L.gen, Fraction(1, 10**12))
            approx = float((lo + hi) / 2)
        else:
            z = L.embedding_root(30)
            approx = [float(z.real), float(z.imag)]
        out.append({"selector": sel.to_json(), "embedding": REAL if sel.is_real else COMPLEX_ONLY, "root": approx})
    return out


def discriminant_squarefree_part(K: NumberField) -> int:
    return ratpoly.squarefree_integer_part(ratpoly.discriminant(K.minpoly))
