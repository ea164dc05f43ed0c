"""JSON encodings for scalars, fields, triples, arrangements and reports.

Finite-field elements are coefficient arrays (lowest power first);
number-field elements are arrays of "num/den" strings.  Field descriptors
are ``{"p", "e", "modulus"}`` or ``{"minpoly", "selector"}``.
"""
from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any

from .arrangement import Arrangement, Configuration, IncidenceCensus
from .projective import LINE, POINT, HomogeneousTriple, normalize_coords
from .scalars import (
    FiniteFieldElement,
    NumberField,
    NumberFieldElement,
    PrimePowerField,
    RootSelector,
    ff_make,
    nf_make,
)


def _frac_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _frac(x) -> Fraction:
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise ValueError(f"not a rational: {x!r}")


def _jsonable_rational(x: Fraction):
    return x.numerator if x.denominator == 1 else _frac_str(x)


# ---------------------------------------------------------------- fields


def field_to_json(F) -> dict:
    if isinstance(F, PrimePowerField):
        return {"p": F.p, "e": F.e, "modulus": list(F.modulus)}
    if isinstance(F, NumberField):
        return {"minpoly": [_jsonable_rational(c) for c in F.minpoly], "selector": F.selector.to_json()}
    raise TypeError(f"unsupported field {F!r}")


def field_from_json(obj: dict):
    if "p" in obj:
        F = ff_make(int(obj["p"]), int(obj.get("e", 1)))
        if "modulus" in obj and tuple(obj["modulus"]) != tuple(F.modulus):
            F = PrimePowerField(F.p, F.e, tuple(int(c) for c in obj["modulus"]))
        return F
    if "minpoly" in obj:
        return nf_make([_frac(c) for c in obj["minpoly"]], RootSelector.from_json(obj["selector"]))
    raise ValueError("field descriptor needs 'p' or 'minpoly'")


# ---------------------------------------------------------------- scalars


def scalar_to_json(x) -> list:
    if isinstance(x, FiniteFieldElement):
        return list(x.coeffs)
    if isinstance(x, NumberFieldElement):
        return [_frac_str(c) for c in x.coeffs]
    raise TypeError(f"unsupported scalar {x!r}")


def scalar_from_json(F, obj):
    if isinstance(F, PrimePowerField):
        if isinstance(obj, int):
            return F(obj)
        return F.from_coeffs([int(c) for c in obj])
    if isinstance(obj, (int, str)):
        obj = [obj]
    return F.from_coeffs([_frac(c) for c in obj])


# ---------------------------------------------------------------- triples and arrangements


def triple_to_json(t: HomogeneousTriple) -> dict:
    return {"kind": t.kind, "coords": [scalar_to_json(c) for c in t.coords]}


def triple_from_json(F, obj, kind: str = LINE) -> HomogeneousTriple:
    if isinstance(obj, dict):
        kind = obj.get("kind", kind)
        obj = obj["coords"]
    if kind not in (POINT, LINE):
        raise ValueError(f"unknown kind {kind!r}")
    if len(obj) != 3:
        raise ValueError("homogeneous triples have exactly 3 coordinates")
    return HomogeneousTriple(kind, tuple(normalize_coords([scalar_from_json(F, c) for c in obj])))


def arrangement_to_json(A: Arrangement) -> dict:
    return {"field": field_to_json(A.field), "lines": [triple_to_json(l) for l in A.lines]}


def arrangement_from_json(obj: dict) -> Arrangement:
    F = field_from_json(obj["field"])
    return Arrangement(F, tuple(triple_from_json(F, l, LINE) for l in obj["lines"]))


def census_to_json(cen: IncidenceCensus) -> dict:
    return {
        "lines": cen.n_lines,
        "points": len(cen.points),
        "multiplicities": {str(m): c for m, c in cen.multiplicity_counts().items()},
        "pair_total": cen.pair_total(),
        "double_counting": cen.satisfies_double_counting(),
        "census": [{"point": triple_to_json(p.point), "lines": list(p.lines)} for p in cen.points],
    }


def profile_key(profile: dict) -> str:
    """{4: 4, 2: 9} -> "4x4,2x9" (multiplicity x count, descending)."""
    return ",".join(f"{m}x{c}" for m, c in sorted(profile.items(), reverse=True))


def configuration_to_json(C: Configuration) -> dict:
    return {
        "n": C.n,
        "k": C.k,
        "lines": [triple_to_json(l) for l in C.lines],
        "points": [triple_to_json(p) for p in C.points],
        "incidence": [list(r) for r in C.incidence],
    }


def matrices_to_json(matrices) -> list:
    """Projectivities as nested 3x3 arrays of scalar encodings."""
    return [[[scalar_to_json(x) for x in row] for row in m.rows()] for m in matrices]


# ---------------------------------------------------------------- files


def load_json(path: str | Path) -> Any:
    with open(path) as fh:
        return json.load(fh)


def dump_json(obj: Any, path: str | Path | None = None, indent: int | None = 2) -> str:
    text = json.dumps(obj, indent=indent, sort_keys=False)
    if path is not None:
        Path(path).write_text(text + "\n")
    return text
