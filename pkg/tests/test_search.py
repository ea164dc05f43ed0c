import json
import time

import pytest

from arrangements.arrangement import Arrangement, census
from arrangements.groups import GENERATED_PAIRS, MatrixKernel, Subgroup
from arrangements.matroid import canonical_label, matroid_of
from arrangements.projective import LINE, from_codes
from arrangements.scalars import QQ, field_of_order
from arrangements.search import (
    EXHAUSTIVE_SMALL,
    FORCED_QUADS,
    PropertyP,
    SearchResult,
    SearchSpec,
    SeedStrategy,
    make_seeds,
    merge,
    min_lines_for_quads,
    property_eval,
    replay,
    run,
)

SMOKE = dict(
    q=7,
    n=3,
    seed_size=3,
    prop=PropertyP.min_quadruple_points(2),
    mode=GENERATED_PAIRS,
    max_seeds=200,
    rng_seed=1,
    time_budget=30.0,
)


def test_exhaustive_seed_count():
    assert len(list(make_seeds(2, EXHAUSTIVE_SMALL, 3))) == 35


def test_seed_size_errors():
    with pytest.raises(ValueError):
        list(make_seeds(2, EXHAUSTIVE_SMALL, 0))
    with pytest.raises(ValueError):
        list(make_seeds(2, EXHAUSTIVE_SMALL, 8))
    with pytest.raises(ValueError):
        list(make_seeds(19, EXHAUSTIVE_SMALL, 5))  # C(381, 5) is far past the bound


def test_forced_quads_need_enough_lines():
    assert min_lines_for_quads(1) == 4
    assert min_lines_for_quads(2) == 7
    assert min_lines_for_quads(3) == 9
    with pytest.raises(ValueError):
        list(make_seeds(19, SeedStrategy(FORCED_QUADS, 2), 5))


def test_forced_quad_seeds():
    seeds = list(make_seeds(19, SeedStrategy(FORCED_QUADS, 2), 7, rng_seed=3, limit=10))
    assert len(seeds) == 10
    for A in seeds:
        assert len(A) == 7
        assert census(A).count(4) >= 2
    again = list(make_seeds(19, SeedStrategy(FORCED_QUADS, 2), 7, rng_seed=3, limit=10))
    assert again == seeds


def test_property_examples(a22_pos):
    pencil = Arrangement.from_coords(QQ, [[1, 0, 0], [0, 1, 0], [1, 1, 0], [1, 2, 0]])
    tri = Arrangement.from_coords(QQ, [[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    assert property_eval(PropertyP.min_quadruple_points(1), pencil)
    assert not property_eval(PropertyP.min_quadruple_points(1), tri)
    assert property_eval(PropertyP.nk_candidate(22, 4), a22_pos)
    assert not property_eval(PropertyP.nk_candidate(21, 4), a22_pos)
    assert property_eval(PropertyP.census_shape({4: 22, 2: 99}, exact=True), a22_pos)
    assert not property_eval(PropertyP.census_shape({4: 23}), a22_pos)


def test_trivial_group_emits_seed_matroids():
    spec = SearchSpec(q=2, n=1, seed_size=3, prop=PropertyP.min_quadruple_points(0), max_seeds=1000)
    out = run(spec, workers=1)
    expected = {canonical_label(matroid_of(A)).hex for A in make_seeds(2, EXHAUSTIVE_SMALL, 3)}
    assert {r.key for r in out.results} == expected
    assert not out.truncated


def test_smoke_search_replays():
    start = time.monotonic()
    out = run(SearchSpec(**SMOKE), workers=1)
    assert time.monotonic() - start < SMOKE["time_budget"]
    assert out.results
    keys = [r.key for r in out.results]
    assert keys == sorted(set(keys))
    P = SMOKE["prop"]
    for r in out.results:
        key, A = replay(r)
        assert key == r.key
        assert P.holds(census(A))


def test_orbits_are_group_invariant():
    out = run(SearchSpec(**SMOKE), workers=1)
    for r in out.results:
        F = field_of_order(r.q)
        kern = MatrixKernel(F)
        H = Subgroup(F, kern.closure(r.generators), r.generators)
        lines = set(r.lines)
        for m in H.codes:
            cof = kern.cofactor(m)
            assert {kern.act_point(cof, l) for l in lines} == lines


def test_deterministic_and_dedup():
    a = run(SearchSpec(**SMOKE), workers=1)
    b = run(SearchSpec(**SMOKE), workers=1)
    assert a.jsonl() == b.jsonl()
    merged = merge(a, b)
    assert [r.key for r in merged] == [r.key for r in a.results]


def test_parallel_matches_serial():
    a = run(SearchSpec(**SMOKE), workers=1)
    b = run(SearchSpec(**SMOKE), workers=2)
    assert a.jsonl() == b.jsonl()


def test_monotone_filtering():
    weak = run(SearchSpec(**{**SMOKE, "prop": PropertyP.min_quadruple_points(1)}), workers=1)
    strong = run(SearchSpec(**SMOKE), workers=1)
    assert {r.key for r in strong.results} <= {r.key for r in weak.results}


def test_result_json_round_trip():
    out = run(SearchSpec(**SMOKE), workers=1)
    for r in out.results:
        back = SearchResult.from_json(json.loads(json.dumps(r.to_json())))
        assert back == r
        assert replay(back)[0] == r.key


def test_target_line_count():
    out = run(SearchSpec(**{**SMOKE, "target_lines": 9}), workers=1)
    assert all(len(r.lines) == 9 for r in out.results)


def test_q19_order4_respects_budget():
    spec = SearchSpec(
        q=19,
        n=4,
        seed_size=7,
        prop=PropertyP.min_quadruple_points(2),
        strategy=SeedStrategy(FORCED_QUADS, 2),
        mode=GENERATED_PAIRS,
        max_seeds=20,
        max_subgroups=4,
        time_budget=20.0,
        rng_seed=5,
    )
    start = time.monotonic()
    out = run(spec, workers=1)
    assert time.monotonic() - start < spec.time_budget + 5
    assert out.stats["subgroups"] <= 4
    for r in out.results:
        assert replay(r)[0] == r.key
        assert len(r.lines) <= 4 * 7


def test_spec_validation():
    with pytest.raises(ValueError):
        SearchSpec(q=7, n=0, seed_size=3, prop=PropertyP.min_quadruple_points(1))
    with pytest.raises(ValueError):
        SearchSpec(q=7, n=3, seed_size=3, prop=PropertyP.min_quadruple_points(1), max_seeds=0)
    with pytest.raises(ValueError):
        PropertyP.nk_candidate(22, 2)
