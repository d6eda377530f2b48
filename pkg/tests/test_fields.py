"""Field tower arithmetic: axioms, square roots, widening, ordering."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from foliation_lab import (FieldDescriptor, FieldError, FieldExtensionError,
                           WidenRequest)
from foliation_lab.fields import (coerce, ratio_in_positive_rationals,
                                  sort_key, sqrt_in_tower, sqrt_or_widen)

Q = FieldDescriptor()
Q2 = FieldDescriptor(quadratic_extension=2)

_fracs = st.fractions(min_value=-50, max_value=50, max_denominator=12)


def _el2(a, b):
    return (Q2.rational(a) + Q2.rational(b) * Q2.sqrt_gen())


_elements = st.tuples(_fracs, _fracs).map(lambda t: _el2(*t))


@settings(max_examples=60, deadline=None)
@given(_elements, _elements, _elements)
def test_ring_axioms(x, y, z):
    assert ((x + y) + z - (x + (y + z))).is_zero()
    assert ((x * y) * z - (x * (y * z))).is_zero()
    assert (x * (y + z) - (x * y + x * z)).is_zero()
    assert (x + y - (y + x)).is_zero()
    assert (x * y - y * x).is_zero()


@settings(max_examples=60, deadline=None)
@given(_elements)
def test_field_inverses(x):
    if x.is_zero():
        with pytest.raises(ZeroDivisionError):
            x.inverse()
    else:
        assert (x * x.inverse() - Q2.one()).is_zero()


@settings(max_examples=60, deadline=None)
@given(_elements)
def test_conjugate_norm_is_rational(x):
    assert (x * x.conjugate()).is_rational()


def test_power_matches_repeated_product():
    x = _el2(Fraction(2), Fraction(1))
    acc = Q2.one()
    for k in range(6):
        assert (x ** k - acc).is_zero()
        acc = acc * x


def test_sqrt_in_tower():
    assert sqrt_in_tower(Q.rational(Fraction(9, 4))).as_fraction() \
        == Fraction(3, 2)
    r = sqrt_in_tower(Q2.rational(2))
    assert (r * r - Q2.rational(2)).is_zero()
    assert sqrt_in_tower(Q.rational(2)) is None


def test_sqrt_or_widen_requests_extension():
    with pytest.raises(WidenRequest) as exc:
        sqrt_or_widen(Q.rational(3))
    assert exc.value.m == 3


def test_widening_is_idempotent_and_exclusive():
    assert Q.widened(2) == Q2
    assert Q2.widened(2) == Q2
    assert Q.widened(8) == Q2  # squarefree part
    with pytest.raises(FieldExtensionError):
        Q2.widened(3)


def test_coerce_embeds_rationals():
    x = Q.rational(Fraction(5, 7))
    y = coerce(x, Q2)
    assert y.desc == Q2 and y.as_fraction() == Fraction(5, 7)


def test_sort_key_is_deterministic_total_order():
    els = [_el2(Fraction(1), Fraction(0)), _el2(Fraction(0), Fraction(1)),
           _el2(Fraction(-1), Fraction(2)), Q2.zero()]
    once = sorted(els, key=sort_key)
    twice = sorted(list(reversed(els)), key=sort_key)
    assert [e.render() for e in once] == [e.render() for e in twice]


def test_ratio_in_positive_rationals():
    # diag(1, 2): tr = 3, det = 2, quotient 2 in Q_{>0}
    assert ratio_in_positive_rationals(Q.rational(3), Q.rational(2)) == "yes"
    # diag(1, -2): quotient -2
    assert ratio_in_positive_rationals(Q.rational(-1), Q.rational(-2)) == "no"
    # diag(1, rt(2)): irrational quotient
    r2 = Q2.sqrt_gen()
    assert ratio_in_positive_rationals(Q2.one() + r2, r2) == "no"
    # degenerate linear parts
    assert ratio_in_positive_rationals(Q.one(), Q.zero()) == "zero-eigenvalue"
    assert ratio_in_positive_rationals(Q.zero(), Q.zero()) == "nilpotent"


def test_negative_extension_supports_imaginary_arithmetic():
    Qi = FieldDescriptor(quadratic_extension=-1)
    i = Qi.sqrt_gen()
    assert (i * i + Qi.one()).is_zero()


def test_parameter_field_arithmetic():
    Qt = FieldDescriptor(parameter="s")
    s = Qt.param_gen()
    x = (s + Qt.one()) * (s - Qt.one())
    assert (x - (s * s - Qt.one())).is_zero()
    assert not s.is_rational()
