import random
from functools import lru_cache

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from arrangements.groups import (
    GENERATED_PAIRS,
    MatrixKernel,
    act_on_lines,
    element_order,
    enumerate_subgroups,
    group_order,
    subgroup_from_generators,
)
from arrangements.projective import LINE, Projectivity, apply, plane_elements
from arrangements.scalars import ff_make

import oracles
from conftest import F19

F2 = ff_make(2)
F3 = ff_make(3)
F7 = ff_make(7)


@lru_cache(maxsize=None)
def order4_over_f3():
    return enumerate_subgroups(3, 4, dedup=False)


def test_group_order():
    assert group_order(2) == 168
    assert group_order(3) == 5616
    assert group_order(19) == 6859 * 6858 * 360


def test_element_orders():
    assert element_order(Projectivity.identity(F19)) == 1
    assert element_order(Projectivity.from_rows(F19, [[1, 0, 0], [0, 1, 0], [0, 0, -1]])) == 2
    assert element_order(Projectivity.from_rows(F19, [[0, 1, 0], [0, 0, 1], [1, 0, 0]])) == 3
    # a scalar matrix is the identity of PGL
    assert element_order(Projectivity.from_rows(F19, [[5, 0, 0], [0, 5, 0], [0, 0, 5]])) == 1


def test_kernel_enumerates_pgl3_f2():
    assert len(MatrixKernel(F2).all_elements()) == 168


@pytest.mark.parametrize("n", [2, 3, 4, 7])
def test_exhaustive_matches_bruteforce_oracle(n):
    ours = {S.codes for S in enumerate_subgroups(2, n, dedup=False)}
    assert ours == oracles.subgroups_f2(n)


def test_frozen_subgroup_counts():
    counts = {n: len(enumerate_subgroups(2, n, dedup=False)) for n in (1, 2, 3, 4, 7)}
    assert counts == {1: 1, 2: 21, 3: 28, 4: 35, 7: 8}
    # one conjugacy class each for the cyclic orders
    assert [len(enumerate_subgroups(2, n)) for n in (2, 3, 7)] == [1, 1, 1]


def test_lagrange():
    assert enumerate_subgroups(2, 5) == []
    assert enumerate_subgroups(3, 7) == []


def test_exhaustive_bound():
    with pytest.raises(ValueError):
        enumerate_subgroups(19, 4)
    with pytest.raises(ValueError):
        enumerate_subgroups(2, 0)


@pytest.mark.parametrize("q,n", [(2, 4), (3, 3), (3, 4)])
def test_subgroups_are_closed(q, n):
    groups = enumerate_subgroups(q, n, dedup=False)
    assert groups
    for H in groups:
        assert H.order == n
        assert H.is_closed()


def test_generated_pairs_finds_order_four_over_f19():
    groups = enumerate_subgroups(19, 4, GENERATED_PAIRS, seed=1)
    assert groups
    for H in groups:
        assert H.order == 4 and H.is_closed()
        assert group_order(19) % H.order == 0


def test_generated_pairs_is_subset_of_exhaustive():
    exhaustive = {S.codes for S in order4_over_f3()}
    pairs = enumerate_subgroups(3, 4, GENERATED_PAIRS, dedup=False, seed=0)
    assert pairs and all(H.codes in exhaustive for H in pairs)


def test_action_examples():
    lines = plane_elements(F7, LINE)[:5]
    trivial = enumerate_subgroups(7, 1)[0]
    assert act_on_lines(trivial, lines) == sorted(lines, key=lambda l: tuple(c.value for c in l.coords))
    H = order4_over_f3()[0]
    seed = plane_elements(F3, LINE)[:5]
    orbit = act_on_lines(H, seed)
    assert 5 <= len(orbit) <= 20
    assert act_on_lines(H, orbit) == orbit


@settings(max_examples=25)
@given(seed=st.integers(0, 10**6), size=st.integers(1, 6))
def test_orbits_are_invariant(seed, size):
    rng = random.Random(seed)
    H = rng.choice(order4_over_f3())
    lines = rng.sample(plane_elements(F3, LINE), size)
    orbit = act_on_lines(H, lines)
    assert set(lines) <= set(orbit)
    for g in H.elements:
        assert {apply(g, l) for l in orbit} == set(orbit)


def test_subgroup_from_generators():
    g = Projectivity.from_rows(F7, [[0, 1, 0], [0, 0, 1], [1, 0, 0]])
    H = subgroup_from_generators(F7, [g])
    assert H.order == 3 and H.is_closed()
