"""Exact scalars: prime-power finite fields and algebraic number fields."""
from .finite import (
    FieldMismatchError,
    FiniteFieldElement,
    PrimePowerField,
    ff_make,
    ff_op,
    field_of_order,
    is_prime,
)
from .number_field import (
    COMPLEX_BY_INDEX,
    QQ,
    REAL_BY_INDEX,
    UNIQUE_REAL,
    NumberField,
    NumberFieldElement,
    RootSelector,
    complex_root,
    nf_approx,
    nf_make,
    nf_op,
    nf_sign,
    poly_str,
    real_root,
    to_complex,
    to_float,
    unique_real_root,
)

__all__ = [
    "COMPLEX_BY_INDEX",
    "QQ",
    "REAL_BY_INDEX",
    "UNIQUE_REAL",
    "FieldMismatchError",
    "FiniteFieldElement",
    "NumberField",
    "NumberFieldElement",
    "PrimePowerField",
    "RootSelector",
    "complex_root",
    "ff_make",
    "ff_op",
    "field_of_order",
    "is_prime",
    "nf_approx",
    "nf_make",
    "nf_op",
    "nf_sign",
    "poly_str",
    "real_root",
    "to_complex",
    "to_float",
    "unique_real_root",
]
