from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from qes_nbody import EXACT, ExactnessError, ScalarMode, ScalarModeError

F128 = ScalarMode.floating(128)

fractions = st.fractions(
    min_value=Fraction(-100), max_value=Fraction(100), max_denominator=64
)


def test_exact_construction_forms():
    assert EXACT.scalar(3).value == Fraction(3)
    assert EXACT.scalar("1/64").value == Fraction(1, 64)
    assert EXACT.scalar(Fraction(2, 7)).value == Fraction(2, 7)


def test_exact_rejects_floats():
    with pytest.raises(ScalarModeError):
        EXACT.scalar(0.1)


@given(a=fractions, b=fractions)
def test_exact_field_ops_are_error_free(a, b):
    x, y = EXACT.scalar(a), EXACT.scalar(b)
    assert (x + y).value == a + b
    assert (x - y).value == a - b
    assert (x * y).value == a * b
    if b != 0:
        assert (x / y).value == a / b


def test_mode_mixing_is_an_error_not_a_promotion():
    x = EXACT.scalar(1)
    y = F128.scalar(1)
    with pytest.raises(ScalarModeError):
        x + y
    with pytest.raises(ScalarModeError):
        y * x
    # two different float widths are two different modes
    z = ScalarMode.floating(64).scalar(1)
    with pytest.raises(ScalarModeError):
        y + z


def test_int_coercion_is_allowed_in_both_modes():
    assert (EXACT.scalar("1/3") * 3).value == 1
    assert float(F128.scalar("1/2") + 1) == 1.5


def test_float_mode_precision_is_uniform():
    # 128-bit arithmetic resolves differences far below double precision
    x = F128.scalar(Fraction(1, 3))
    y = x * 3 - 1
    assert abs(float(y)) < 1e-37
    assert float(y) != 0.0 or abs(float(x * 3 - 1)) < 1e-37


def test_sqrt_exact_perfect_square():
    assert EXACT.scalar("9/4").sqrt().value == Fraction(3, 2)


def test_sqrt_exact_irrational_raises():
    with pytest.raises(ExactnessError):
        EXACT.scalar(2).sqrt()


def test_sqrt_negative_raises():
    with pytest.raises(ExactnessError):
        EXACT.scalar(-1).sqrt()


def test_sqrt_float_128_bits():
    r = F128.scalar(2).sqrt()
    assert abs(float(r * r - 2)) < 1e-37


def test_negation_keeps_full_precision():
    x = F128.scalar(153).sqrt()
    assert (-(-x)) == x
    assert abs(float((-x) + x)) == 0.0


def test_comparisons_and_sign():
    assert EXACT.scalar("1/2") < 1
    assert EXACT.scalar("1/2") > 0
    assert EXACT.scalar(0).sign() == 0
    assert EXACT.scalar(-3).sign() == -1


def test_decimal_rendering_has_requested_digits():
    s = EXACT.scalar(Fraction(1, 3)).decimal_str(20)
    assert s.startswith("0.3333333333333333333")


def test_scalars_are_immutable_and_hashable():
    x = EXACT.scalar(2)
    with pytest.raises(AttributeError):
        x.value = 3
    assert hash(EXACT.scalar(2)) == hash(EXACT.scalar(2))
