"""Independent reference computations used by the tests.

None of these call into the package: they rebuild the answer from scratch
with numpy or sympy so that agreement means something.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import combinations, product

import numpy as np
import sympy


@lru_cache(maxsize=None)
def _gl3_f2() -> tuple:
    out = []
    for bits in product((0, 1), repeat=9):
        m = np.array(bits, dtype=np.int64).reshape(3, 3)
        if round(np.linalg.det(m)) % 2:
            out.append(m)
    return tuple(out)


def gl3_f2() -> list[np.ndarray]:
    """All 168 invertible 3x3 matrices over F_2 (PGL_3(F_2) = GL_3(F_2))."""
    return list(_gl3_f2())


@lru_cache(maxsize=None)
def _table() -> np.ndarray:
    """Multiplication table of GL_3(F_2) on element indices."""
    elems = gl3_f2()
    index = {m.tobytes(): i for i, m in enumerate(elems)}
    stack = np.stack(elems)
    prods = np.einsum("aij,bjk->abik", stack, stack) % 2
    return np.array([[index[prods[x, y].tobytes()] for y in range(len(elems))] for x in range(len(elems))])


def _closure(table: np.ndarray, gens: tuple, ident: int) -> frozenset:
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = int(table[x, g])
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(seen)


@lru_cache(maxsize=None)
def _generated_subgroups() -> tuple:
    table = _table()
    n = len(table)
    ident = next(i for i, m in enumerate(gl3_f2()) if (m == np.eye(3, dtype=np.int64)).all())
    found = {_closure(table, (a,), ident) for a in range(n)}
    found |= {_closure(table, (a, b), ident) for a, b in combinations(range(n), 2)}
    return tuple(found)


def subgroups_f2(order: int) -> set[frozenset]:
    """Subgroups of GL_3(F_2) of the given order generated by at most two elements.

    Every group of order 2, 3, 4 or 7 is generated by two elements, so for
    those orders this is the full list.  Elements are returned as row-major
    9-tuples of 0/1 entries.
    """
    elems = [tuple(int(x) for x in m.reshape(-1)) for m in gl3_f2()]
    return {frozenset(elems[i] for i in S) for S in _generated_subgroups() if len(S) == order}


# ---------------------------------------------------------------- Fano


FANO_LINES = [(0, 1, 2), (0, 3, 4), (0, 5, 6), (1, 3, 5), (1, 4, 6), (2, 3, 6), (2, 4, 5)]


def fano_char0_ideal_is_trivial() -> bool:
    """Fano has no realization in characteristic 0, by a Groebner computation.

    Fix the four general-position points 0, 1, 3, 6 to the projective
    basis; the others are determined up to three unknowns through the
    lines 012, 034 and 135.  The remaining line conditions give polynomial
    equations, and a, b, c != 0 (the new points are not basis points) is
    imposed with a Rabinowitsch variable.
    The ideal over Q is the unit ideal exactly when no realization exists.
    """
    a, b, c, s = sympy.symbols("a b c s")
    P = {
        0: sympy.Matrix([1, 0, 0]),
        1: sympy.Matrix([0, 1, 0]),
        3: sympy.Matrix([0, 0, 1]),
        6: sympy.Matrix([1, 1, 1]),
    }
    # point 2 on line 0-1, point 4 on line 0-3, point 5 on line 1-3
    P[2] = sympy.Matrix([1, a, 0])
    P[4] = sympy.Matrix([1, 0, b])
    P[5] = sympy.Matrix([0, 1, c])
    eqs = []
    for l in FANO_LINES:
        eqs.append(sympy.expand(sympy.Matrix.hstack(*(P[i] for i in l)).det()))
    # all three new points are off the coordinate lines: a, b, c nonzero
    eqs.append(sympy.expand(s * a * b * c - 1))
    G = sympy.groebner([e for e in eqs if e != 0], s, a, b, c, order="lex")
    return list(G.exprs) == [1]


def fano_char2_has_solution() -> bool:
    """The same system over F_2 is consistent (the Fano plane itself)."""
    a, b, c = 1, 1, 1
    P = {0: (1, 0, 0), 1: (0, 1, 0), 3: (0, 0, 1), 6: (1, 1, 1), 2: (1, a, 0), 4: (1, 0, b), 5: (0, 1, c)}
    for l in FANO_LINES:
        if round(np.linalg.det(np.array([P[i] for i in l], dtype=float))) % 2:
            return False
    return True
