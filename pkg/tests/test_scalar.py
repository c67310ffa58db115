import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quadmaps.errors import InexactValue, NegativeInput
from quadmaps.scalar import (
    EXACT,
    FLOAT,
    SQRT2,
    SQRT3,
    SQRT6,
    Backend,
    Surd,
    format_rational,
    parse_rational,
    surd_inv,
    surd_mul,
    surd_sqrt_if_exact,
    surd_to_float,
)

rationals = st.fractions(min_value=-50, max_value=50, max_denominator=40)
surds = st.builds(Surd, rationals, rationals, rationals, rationals)
nonzero_surds = surds.filter(bool)


def test_sqrt2_squared():
    assert SQRT2 * SQRT2 == 2
    assert SQRT3 * SQRT3 == 3
    assert SQRT2 * SQRT3 == SQRT6
    assert SQRT6 * SQRT6 == 6


def test_normalization_shares_denominator():
    x = Surd(Fraction(1, 2), Fraction(1, 3))
    assert x.components() == (Fraction(1, 2), Fraction(1, 3), 0, 0)
    assert Surd(Fraction(2, 4)) == Surd(Fraction(1, 2))
    assert hash(Surd(3)) == hash(3) == hash(Fraction(3))


def test_inverse_of_one_plus_sqrt2():
    assert (1 + SQRT2).inverse() == SQRT2 - 1


def test_inverse_full_element():
    x = Surd(1, 1, 1, 1)
    assert x * x.inverse() == 1
    assert surd_mul(x, surd_inv(x)) == 1


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        Surd(1) / 0
    with pytest.raises(ZeroDivisionError):
        Surd(0).inverse()


def test_float_known_values():
    assert float(SQRT2) == math.sqrt(2)
    assert surd_to_float(SQRT6) == math.sqrt(6)
    assert float(Surd(Fraction(1, 2), 0, 0, 0)) == 0.5


def test_float_under_cancellation():
    # 99 - 70 sqrt2 ~ 0.00505; naive evaluation loses most digits
    x = Surd(99, -70)
    assert float(x) == pytest.approx(99 - 70 * math.sqrt(2), rel=1e-12)
    assert float(x) == pytest.approx(1 / (99 + 70 * math.sqrt(2)), rel=1e-15)


def test_sign_and_order():
    assert Surd(99, -70).sign() == 1
    assert Surd(-99, 70).sign() == -1
    assert SQRT2 < Surd(Fraction(3, 2))
    assert abs(Surd(-1, 0, 1)) == Surd(-1, 0, 1)
    assert abs(Surd(1, 0, -1)) == Surd(-1, 0, 1)


def test_str_and_repr():
    assert str(SQRT2 / 2) == "(1/2)√2"
    assert str(Surd(1, -1)) == "1 - √2"
    assert str(Surd(0)) == "0"
    assert repr(Surd(3)) == "Surd('3')"
    assert repr(Surd(0, 0, 1)) == "Surd('0', '0', '1')"


def test_pow():
    assert SQRT2 ** 4 == 4
    assert SQRT2 ** -2 == Fraction(1, 2)
    assert Surd(7) ** 0 == 1


@pytest.mark.parametrize("value,root", [
    (Surd(4), Surd(2)),
    (Surd(8), 2 * SQRT2),
    (Surd(Fraction(1, 2)), SQRT2 / 2),
    (Surd(Fraction(3, 4)), SQRT3 / 2),
    (Surd(24), 2 * SQRT6),
    (Surd(0), Surd(0)),
])
def test_sqrt_if_exact(value, root):
    assert surd_sqrt_if_exact(value) == root


def test_sqrt_if_exact_misses():
    assert surd_sqrt_if_exact(Surd(5)) is None
    assert surd_sqrt_if_exact(Surd(3, 2)) is None  # (1 + sqrt2)^2, outside the searched shapes


def test_sqrt_negative():
    with pytest.raises(NegativeInput):
        surd_sqrt_if_exact(Surd(-2))


def test_backend_sqrt():
    assert EXACT.sqrt(18) == 3 * SQRT2
    with pytest.raises(InexactValue):
        EXACT.sqrt(5)
    assert FLOAT.sqrt(2.0) == math.sqrt(2)
    assert FLOAT.sqrt(-1e-12) == 0.0
    with pytest.raises(NegativeInput):
        FLOAT.sqrt(-1.0)


def test_float_backend_equality_rule():
    be = Backend(exact=False, tol=1e-6)
    assert be.eq(1e6, 1e6 + 0.5)
    assert not be.eq(1.0, 1.0 + 1e-5)
    assert be.is_zero(1e-7)
    assert be.sign(-1e-7) == 0
    assert be.name == "float" and EXACT.name == "exact"


@pytest.mark.parametrize("text,value", [
    ("3", Fraction(3)),
    ("-3/4", Fraction(-3, 4)),
    ("+6/8", Fraction(3, 4)),
])
def test_parse_rational(text, value):
    assert parse_rational(text) == value


@pytest.mark.parametrize("text", ["1//2", "1/0", "0.5", "", "1/-2", " 1"])
def test_parse_rational_rejects(text):
    with pytest.raises(ValueError):
        parse_rational(text)


def test_format_rational():
    assert format_rational(Fraction(6, 3)) == "2"
    assert format_rational(Fraction(-1, 2)) == "-1/2"


# properties -----------------------------------------------------------

@settings(max_examples=1000, deadline=None)
@given(surds, surds, surds)
def test_field_axioms(x, y, z):
    assert x + y == y + x
    assert x * y == y * x
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x + 0 == x and x * 1 == x
    assert x - x == 0
    if x:
        assert x * x.inverse() == 1
        assert (y / x) * x == y


@settings(max_examples=300, deadline=None)
@given(surds, surds)
def test_float_is_a_homomorphism(x, y):
    fx, fy = float(x), float(y)
    scale = max(1.0, abs(fx), abs(fy))
    assert float(x + y) == pytest.approx(fx + fy, abs=1e-12 * scale)
    assert float(x * y) == pytest.approx(fx * fy, abs=1e-12 * scale * scale)


@settings(max_examples=300, deadline=None)
@given(st.tuples(rationals, rationals, rationals, rationals),
       st.tuples(rationals, rationals, rationals, rationals))
def test_representation_is_unique(c1, c2):
    assert (Surd(*c1) == Surd(*c2)) == (c1 == c2)
    if c1 == c2:
        assert hash(Surd(*c1)) == hash(Surd(*c2))


@settings(max_examples=300, deadline=None)
@given(nonzero_surds)
def test_nonzero_sign_matches_float(x):
    assert x.sign() == (1 if float(x) > 0 else -1)


@settings(max_examples=200, deadline=None)
@given(rationals.filter(lambda r: r > 0), st.sampled_from([1, 2, 3, 6]))
def test_sqrt_of_square_shapes(c, k):
    basis = {1: Surd(1), 2: SQRT2, 3: SQRT3, 6: SQRT6}[k]
    root = basis * c
    assert surd_sqrt_if_exact(root * root) == root
