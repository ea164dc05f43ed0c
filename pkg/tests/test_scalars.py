import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from arrangements.scalars import (
    FieldMismatchError,
    complex_root,
    ff_make,
    ff_op,
    field_of_order,
    nf_approx,
    nf_make,
    nf_op,
    nf_sign,
    real_root,
    unique_real_root,
)
from arrangements.scalars import ratpoly

from conftest import F8, F19, QI, QW, QW_NEG, QZ, W_POLY, Z_POLY, finite_elements, nf_elements


def bisect(f, lo: Fraction, hi: Fraction, width: Fraction) -> tuple[Fraction, Fraction]:
    """Plain bisection on a sign change; the oracle for root enclosures."""
    flo = f(lo)
    assert flo * f(hi) < 0
    while hi - lo > width:
        mid = (lo + hi) / 2
        fm = f(mid)
        if fm == 0:
            return mid, mid
        if (fm < 0) == (flo < 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return lo, hi


# ---------------------------------------------------------------- finite fields


def test_prime_field_construction():
    assert F19.q == 19 and F19.e == 1
    assert len(F19.elements()) == 19


def test_f8_has_eight_elements_and_least_modulus():
    assert F8.q == 8
    assert F8.modulus == (1, 1, 0, 1)  # x^3 + x + 1
    assert len(set(F8.elements())) == 8


def test_non_prime_rejected():
    with pytest.raises(ValueError):
        ff_make(4)


def test_field_of_order():
    assert field_of_order(9).q == 9
    with pytest.raises(ValueError):
        field_of_order(6)


def test_finite_examples():
    assert ff_op("inv", F19(3)) == F19(13)
    assert ff_op("add", F19(18), F19(1)) == F19(0)
    x = F8.gen
    assert ff_op("mul", x, x).coeffs == (0, 0, 1)
    assert (x**3).coeffs == (1, 1, 0)


def test_finite_errors():
    with pytest.raises(ZeroDivisionError):
        ff_op("inv", F19(0))
    with pytest.raises(FieldMismatchError):
        F19(1) + ff_make(7)(1)


@pytest.mark.parametrize("F", [F19, F8, ff_make(3, 2)])
def test_multiplicative_group_is_complete(F):
    nonzero = [a for a in F.elements() if a]
    assert all(a * a.inv() == F(1) for a in nonzero)
    assert len({a.inv() for a in nonzero}) == F.q - 1


@pytest.mark.parametrize("F", [F19, F8])
@given(data=st.data())
def test_finite_field_axioms(F, data):
    a, b, c = (data.draw(finite_elements(F)) for _ in range(3))
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + (-a) == F(0)
    if a:
        assert a * a.inv() == F(1)


# ---------------------------------------------------------------- number fields


def test_w_field_selectors():
    w = QW.gen
    assert nf_sign(w) == 1
    assert nf_sign(QW_NEG.gen) == -1
    # closed forms (-7 +- 3 sqrt 17) / 2 of the two roots
    lo, _ = nf_approx(w, Fraction(1, 10**9))
    assert abs(float(lo) - (-7 + 3 * math.sqrt(17)) / 2) < 1e-8
    lo, _ = nf_approx(QW_NEG.gen, Fraction(1, 10**9))
    assert abs(float(lo) - (-7 - 3 * math.sqrt(17)) / 2) < 1e-8


def test_number_field_examples():
    w = QW.gen
    assert w * w == QW.from_coeffs([26, -7])
    assert nf_op("inv", w) == QW.from_coeffs([Fraction(7, 26), Fraction(1, 26)])
    assert w * nf_op("inv", w) == QW(1)
    i = QI.gen
    assert nf_op("mul", i, i) == QI(-1)


def test_nf_make_errors():
    with pytest.raises(ValueError):
        nf_make((-2, 0, 1), unique_real_root())  # two real roots
    with pytest.raises(ValueError):
        nf_make((-1, 0, 1), real_root(0))  # reducible
    with pytest.raises(ValueError):
        nf_make((1, 0, 1), real_root(0))  # no real roots
    with pytest.raises(ValueError):
        nf_make((1, 0, 1), complex_root(2))


def test_inverse_of_zero():
    with pytest.raises(ZeroDivisionError):
        QW(0).inv()


def test_sturm_counts():
    assert ratpoly.count_real_roots(ratpoly.make(W_POLY)) == 2
    assert ratpoly.count_real_roots(ratpoly.make(Z_POLY)) == 1
    assert ratpoly.count_real_roots(ratpoly.make((1, 0, 1))) == 0
    assert QZ.real_root_count == 1


def test_w_enclosure_matches_bisection():
    f = lambda x: x * x + 7 * x - 26
    lo, hi = nf_approx(QW.gen, Fraction(1, 10**6))
    assert hi - lo <= Fraction(1, 10**6)
    blo, bhi = bisect(f, Fraction(2), Fraction(3), Fraction(1, 10**7))
    assert lo <= bhi and blo <= hi
    assert abs(float(lo) - 2.684658) < 1e-6


def test_z_enclosure_matches_bisection():
    f = lambda x: x**3 + 3 * x**2 - x - 7
    assert f(Fraction(1)) == -4 and f(Fraction(2)) == 11
    lo, hi = nf_approx(QZ.gen, Fraction(1, 10**6))
    assert 1 < lo <= hi < 2
    blo, bhi = bisect(f, Fraction(1), Fraction(2), Fraction(1, 10**7))
    assert lo <= bhi and blo <= hi


def test_rational_enclosure_is_exact():
    assert nf_approx(QW(Fraction(3, 2)), Fraction(1, 10)) == (Fraction(3, 2), Fraction(3, 2))


def test_complex_enclosure():
    (rl, rh), (il, ih) = nf_approx(QI.gen, Fraction(1, 10**6))
    assert rl <= 0 <= rh
    assert il <= 1 <= ih
    with pytest.raises(ValueError):
        nf_sign(QI.gen)


def test_sign_zero_and_rationals():
    assert nf_sign(QW(0)) == 0
    assert nf_sign(QW(-3)) == -1
    # w - 2 > 0 > w - 3 for the positive root
    assert nf_sign(QW.gen - 2) == 1
    assert nf_sign(QW.gen - 3) == -1


@pytest.mark.parametrize("K", [QW, QZ, QI])
@given(data=st.data())
def test_number_field_axioms(K, data):
    a, b, c = (data.draw(nf_elements(K)) for _ in range(3))
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    if a:
        assert a * a.inv() == K(1)
    # reduction is idempotent: rebuilding from the canonical coefficients changes nothing
    p = a * b
    assert K.from_coeffs(p.coeffs) == p
    assert len(p.coeffs) <= K.degree


@given(x=st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=5), min_size=2, max_size=2))
def test_enclosures_nest(x):
    a = QW.from_coeffs(x)
    eps = Fraction(1, 1000)
    lo1, hi1 = nf_approx(a, eps)
    lo2, hi2 = nf_approx(a, eps / 2)
    assert hi1 - lo1 <= eps and hi2 - lo2 <= eps / 2
    assert lo1 <= lo2 <= hi2 <= hi1


@given(x=st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=5), min_size=3, max_size=3))
def test_sign_agrees_with_enclosure(x):
    a = QZ.from_coeffs(x)
    s = nf_sign(a)
    lo, hi = nf_approx(a, Fraction(1, 10**6))
    if s > 0:
        assert hi > 0
    elif s < 0:
        assert lo < 0
    else:
        assert not a
