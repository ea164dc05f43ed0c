"""The embedded (22_4), (26_4) and (23_4) line arrangements."""
from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .arrangement import Arrangement
from .scalars import NumberField, complex_root, nf_make, real_root, unique_real_root

_TERM = re.compile(r"([+-]?)(\d*)([a-z])?(?:\^(\d+))?")


def parse_element(field: NumberField, text: str, var: str):
    """Parse a polynomial expression in one generator, e.g. ``-5w - 13``."""
    s = text.replace(" ", "").replace("*", "")
    if not s:
        raise ValueError("empty expression")
    coeffs: dict[int, Fraction] = {}
    pos = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse {text!r} at {s[pos:]!r}")
        sign, digits, sym, power = m.groups()
        if sym is not None and sym != var:
            raise ValueError(f"unexpected symbol {sym!r} in {text!r}")
        if not digits and sym is None:
            raise ValueError(f"cannot parse {text!r}")
        c = Fraction(int(digits) if digits else 1) * (-1 if sign == "-" else 1)
        deg = 0 if sym is None else int(power or 1)
        coeffs[deg] = coeffs.get(deg, Fraction(0)) + c
        pos = m.end()
    top = max(coeffs)
    return field.from_coeffs([coeffs.get(i, 0) for i in range(top + 1)])


A22_4 = """
(1:0:0),(0:1:0),(0:0:1),(1:1:1),(24:-5w-13:0),
(24:5w+13:24w),(1:0:w),(2:0:w),
(24:-5w-13:-4w+52),(24:5w+13:28w-52),
(6:-w+13:-w+13),(24:-5w-13:16w+104),
(48:w+65:24w),(24:5w+13:-32w+104),
(18:-w+13:4w+26),(12:-w+13:0),
(96:w+65:56w-104),(48:w+65:-8w+104),
(48:w+65:20w+52),(39:-w+52:-w+52),
(4:w+13:4w),(24:w+26:12w)
"""

A26_4 = """
(1:0:0),(0:1:0),(0:0:1),(1:1:1),
(1:-z^2-2z:z),(z:-z^2-2z:z),(-1:-z:-z),
(2z^2+2z:-6z^2-14z:-5z^2-4z+21),
(10z^2+12z-14:-6z^2-56z-98:16z^2+24z-28),
(6z^2-14:-2z^2-12z+14:-16z^2-20z+56),
(68z^2+56z-196:20z^2+72z-84:84z^2+100z-280),
(-24z^2-60z-28:0:-26z^2-40z+14),
(-256z^2-112z+784:-352z^2-624z+336:-264z^2-224z+392),
(0:-16z^2+4z+28:-2z^2+12z-14),
(68z^2+56z-196:20z^2+72z-84:20z^2+72z-84),
(-1136z^2-256z+3696:-3152z^2-2560z+7952:-1840z^2-528z+4928),
(-608z^2-1760z+1792:1120z^2-1824z-8064:-2624z^2-4064z+6048),
(0:-1120z^2+1824z+8064:-1872z^2-1120z+7056),
(-12864z^2-14976z+48832:-23616z^2-35968z+90048:-27584z^2-19200z+88256),
(4288z^2+37888z+61376:-44736z^2-170752z-157248:-2656z^2+19712z+48608),
(8z^2+136z-224:-304z^2-392z+1176:-412z^2-632z+1652),
(-784z^2-608z+2800:-272z^2-288z-1232:-1136z^2-256z+3696),
(11264z^2+30464z-75264:-193536z^2-190208z+637952:-123776z^2-57344z+307328),
(-65984z^2-13056z+231616:-55360z^2-91904z+37184:448z^2+55808z-20160),
(8192z^2-31232z-155904:55808z^2+147712z-57344:-54912z^2-36096z+17024),
(627968z^2+367104z-1732864:2495232z^2+3188224z-9105152:1453568z^2+1928704z-5465600)
"""

A23_4 = """
(0:0:1),(0:1:0),(1:0:0),(2:0:1),(1:0:1),
(1:-1:1),(1:1:1),(2:2:i+1),(1:1:i),(1:-i:0),
(2:-2i:i+1),(1:-i:i+1),(1:-i+2:i),
(5:-3i+4:i+2),(2:-i+1:i+1),(5:-2i+1:i+2),
(5:-i-2:i+2),(5:-i+2:-i+2),(5:-i+2:i+3),
(5:-i+2:3i+4),(1:i:0),(1:i:-i),(1:i:i)
"""


def parse_triples(text: str) -> list[tuple[str, str, str]]:
    out = []
    for body in re.findall(r"\(([^()]*)\)", text):
        parts = [p.strip() for p in body.split(":")]
        if len(parts) != 3:
            raise ValueError(f"bad triple ({body})")
        out.append(tuple(parts))
    return out


@dataclass(frozen=True)
class Dataset:
    id: str
    minpoly: tuple
    selector: object
    var: str
    text: str
    expected: dict = dc_field(default_factory=dict)
    description: str = ""

    @property
    def field(self) -> NumberField:
        return nf_make(self.minpoly, self.selector)

    def coordinate_strings(self) -> list[tuple[str, str, str]]:
        return parse_triples(self.text)

    def arrangement(self) -> Arrangement:
        K = self.field
        coords = [[parse_element(K, c, self.var) for c in t] for t in self.coordinate_strings()]
        return Arrangement.from_coords(K, coords)


_W = (-26, 7, 1)
_Z = (-7, -1, 3, 1)
_I = (1, 0, 1)

_E22 = {
    "lines": 22,
    "multiplicities": {4: 22, 2: 99},
    "line_profiles": {"4x4,2x9": 22},
    "nk": 4,
}

DATASETS: dict[str, Dataset] = {
    "a22_4_pos": Dataset("a22_4_pos", _W, real_root(1), "w", A22_4, _E22, "(22_4), w = (-7 + 3 sqrt 17)/2"),
    "a22_4_neg": Dataset("a22_4_neg", _W, real_root(0), "w", A22_4, _E22, "(22_4), w = (-7 - 3 sqrt 17)/2"),
    "a26_4": Dataset(
        "a26_4",
        _Z,
        unique_real_root(),
        "z",
        A26_4,
        {"lines": 26, "nk": 4},
        "(26_4), z the real root of x^3 + 3x^2 - x - 7",
    ),
    "a23_4": Dataset(
        "a23_4",
        _I,
        complex_root(1),
        "i",
        A23_4,
        {"lines": 23, "quadruple_points": 25, "nk": 4},
        "(23_4) over Q(i)",
    ),
}


def load_dataset(dataset_id: str) -> Arrangement:
    try:
        return DATASETS[dataset_id].arrangement()
    except KeyError:
        raise KeyError(f"unknown dataset {dataset_id!r}; known: {', '.join(DATASETS)}") from None
