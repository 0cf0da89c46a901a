from decimal import Decimal, localcontext
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nested_pi.digits import coinciding_digits
from nested_pi.precision import DomainError, HPReal, make_context, render_decimal
from nested_pi.radicals import arctan_argument
from nested_pi.series import (
    SeriesParams,
    arctan_nested,
    arctan_nested_complex,
    arctan_nested_general,
    arctan_taylor,
    inverse_odd_power,
    machin_pi,
)

PI_52 = "3.141592653589793238462643383279502884197169399375106"
QUARTER_PI_16 = "0.7853981633974483"
ATAN_FIFTH = "0.1973955598498807583700497651947902934476"
ATAN_239TH = "0.004184076002074723864538214959285452741048"


def test_machin_fifty_digits():
    assert render_decimal(machin_pi(make_context(50)), 50) == "3.1415926535897932384626433832795028841971693993751"


def test_taylor_values():
    ctx = make_context(40)
    assert render_decimal(arctan_taylor(HPReal.of(1, ctx), ctx), 16) == QUARTER_PI_16
    assert render_decimal(arctan_taylor(HPReal.of(Fraction(1, 5), ctx), ctx), 40) == ATAN_FIFTH
    assert render_decimal(arctan_taylor(HPReal.of(Fraction(1, 239), ctx), ctx), 40) == ATAN_239TH


@pytest.mark.parametrize("x", [0, -1, "1.0000001"])
def test_taylor_domain(x):
    ctx = make_context(10)
    with pytest.raises(DomainError):
        arctan_taylor(HPReal.of(x, ctx), ctx)


def test_nested_domain():
    ctx = make_context(10)
    with pytest.raises(DomainError):
        arctan_nested(HPReal.of(0, ctx), 3, ctx)
    with pytest.raises(ValueError):
        SeriesParams(m_max=0)
    with pytest.raises(ValueError):
        SeriesParams(m_max=3, L=0)


def test_nested_at_one_converges_to_quarter_pi():
    ctx = make_context(60)
    quarter = machin_pi(ctx) / 4
    got = arctan_nested(HPReal.of(1, ctx), 60, ctx)
    # tail ~ 5^-60
    assert abs(float(got - quarter)) < 1e-40


def test_general_L_digits():
    ctx = make_context(100)
    quarter = machin_pi(ctx) / 4
    one = HPReal.of(1, ctx)
    counts = {L: coinciding_digits(arctan_nested_general(one, SeriesParams(120, L), ctx), quarter).coinciding_digits
              for L in (1, 2, 3)}
    assert counts == {1: 87, 2: 100, 3: 100}
    l2 = arctan_nested_general(one, SeriesParams(60, 2), ctx)
    assert coinciding_digits(l2, quarter).coinciding_digits == 76


def test_general_large_L_single_term():
    ctx = make_context(30)
    got = arctan_nested_general(HPReal.of(1, ctx), SeriesParams(1, 100), ctx)
    assert render_decimal(got, 9) == "0.785400247"
    assert abs(float(got) - 0.7853981633974483) / 0.7853981633974483 < 1e-4


@settings(max_examples=25, deadline=None)
@given(
    x=st.fractions(min_value=Fraction(1, 1000), max_value=1),
    L=st.integers(1, 3),
    m=st.integers(1, 12),
)
def test_real_form_equals_complex_form(x, L, m):
    ctx = make_context(40)
    hx = HPReal.of(x, ctx)
    fast = arctan_nested_general(hx, SeriesParams(m, L), ctx)
    slow = arctan_nested_complex(hx, m, ctx, L)
    # imaginary part of the full complex sum vanishes; real parts agree
    assert abs(slow.im.value) < Decimal(10) ** -60
    with localcontext() as c:
        c.prec = 80
        assert abs(fast.value - slow.re.value) < Decimal(10) ** -(ctx.working_digits - 8)


@pytest.mark.parametrize("m", [1, 7, 64])
@pytest.mark.parametrize("L,ell", [(1, 1), (3, 2)])
def test_recurrence_matches_exponentiation(m, L, ell):
    ctx = make_context(60)
    x = HPReal.of(Fraction(3, 7), ctx)
    got = inverse_odd_power(x, m, ctx, ell=ell, L=L)
    from nested_pi.precision import HPComplex
    z = HPComplex(HPReal.of(2 * ell - 1, ctx), (2 * L) / x)
    want = z ** (-(2 * m - 1))
    scale = abs(float(want.re)) + abs(float(want.im))
    assert abs(float(got.re - want.re)) <= scale * 1e-60 + 1e-85
    assert abs(float(got.im - want.im)) <= scale * 1e-60 + 1e-85


def test_nested_identity_at_k1():
    ctx = make_context(80, 1)
    from nested_pi.formulas import pi_nested_arctan
    assert arctan_argument(1, ctx).argument.value == 1
    r = pi_nested_arctan(1, 30, ctx)
    assert r.value == arctan_nested(HPReal.of(1, ctx), 30, ctx) * 4


def test_recompute_with_more_guard_digits_agrees():
    ctx = make_context(120, 10)
    x = arctan_argument(10, ctx).argument
    a = arctan_nested(x, 10, ctx)
    b = arctan_nested(x.with_context(ctx.widened()), 10, ctx.widened())
    assert coinciding_digits(a, b.with_context(ctx)).coinciding_digits >= 119


def test_machin_on_pure_backend(pure_kernels):
    from nested_pi import kernels

    assert kernels.atan_taylor.__module__ == "nested_pi._pykernels"
    ctx = make_context(300)
    assert render_decimal(machin_pi.__wrapped__(ctx), 52) == PI_52
