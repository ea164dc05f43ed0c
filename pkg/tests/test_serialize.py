import json

from hypothesis import given, settings
from hypothesis import strategies as st

from arrangements.arrangement import census, find_nk
from arrangements.projective import LINE, POINT, plane_elements
from arrangements.scalars import QQ, ff_make
from arrangements.serialize import (
    arrangement_from_json,
    arrangement_to_json,
    census_to_json,
    configuration_to_json,
    dump_json,
    field_from_json,
    field_to_json,
    load_json,
    profile_key,
    scalar_from_json,
    scalar_to_json,
    triple_from_json,
    triple_to_json,
)

from conftest import F8, F19, QI, QW, QW_NEG, QZ, finite_elements, nf_elements

FIELDS = [QQ, QW, QW_NEG, QZ, QI, F8, F19, ff_make(3, 2)]


def roundtrip(obj):
    return json.loads(json.dumps(obj))


def test_fields_round_trip():
    for F in FIELDS:
        G = field_from_json(roundtrip(field_to_json(F)))
        assert field_to_json(G) == field_to_json(F)
    # the selector survives, so the two real embeddings stay distinct
    assert field_to_json(QW) != field_to_json(QW_NEG)


@settings(max_examples=40)
@given(st.data())
def test_scalars_round_trip(data):
    for K in (QW, QZ, QI):
        a = data.draw(nf_elements(K))
        assert scalar_from_json(K, roundtrip(scalar_to_json(a))) == a
    for F in (F8, F19):
        a = data.draw(finite_elements(F))
        assert scalar_from_json(F, roundtrip(scalar_to_json(a))) == a


def test_scalar_shorthands():
    assert scalar_from_json(QW, "3/2") == QW(3) / QW(2)
    assert scalar_from_json(F19, 5) == F19(5)


def test_triples_round_trip():
    for F in (F8, ff_make(5)):
        for t in plane_elements(F, POINT)[:20]:
            assert triple_from_json(F, roundtrip(triple_to_json(t))) == t


def test_dataset_arrangements_round_trip(a22_pos, a26, a23):
    for A in (a22_pos, a26, a23):
        B = arrangement_from_json(roundtrip(arrangement_to_json(A)))
        assert B.lines == A.lines
        assert field_to_json(B.field) == field_to_json(A.field)


def test_finite_arrangement_file_round_trip(tmp_path):
    from arrangements.arrangement import Arrangement

    A = Arrangement(F8, tuple(plane_elements(F8, LINE)[:9]))
    path = tmp_path / "a.json"
    dump_json(arrangement_to_json(A), path)
    assert arrangement_from_json(load_json(path)).lines == A.lines


def test_census_and_configuration_json(a22_pos):
    cen = roundtrip(census_to_json(census(a22_pos)))
    assert cen["multiplicities"] == {"4": 22, "2": 99}
    assert cen["double_counting"] and cen["pair_total"] == 231
    (C,) = find_nk(a22_pos, 4)
    out = roundtrip(configuration_to_json(C))
    assert out["n"] == 22 and out["k"] == 4
    assert all(sum(row) == 4 for row in out["incidence"])


def test_profile_key():
    assert profile_key({4: 4, 2: 9}) == "4x4,2x9"
    assert profile_key({2: 7, 3: 1, 4: 4}) == "4x4,3x1,2x7"
