from decimal import Decimal
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nested_pi.precision import (
    DomainError,
    HPComplex,
    HPReal,
    PrecisionContext,
    PrecisionError,
    from_fixed,
    hp_sqrt,
    make_context,
    render_decimal,
    significant_digits,
    to_fixed,
)

SQRT2_40 = "1.414213562373095048801688724209698078570"


def test_guard_policy():
    ctx = make_context(2200, 20)
    assert ctx.guard_digits == 45
    assert ctx.working_digits == 2245
    assert make_context(10).guard_digits == 32
    assert make_context(100, 1).guard_digits == 33


@pytest.mark.parametrize("bad", [(0, 0), (-5, 0), (10, -1)])
def test_make_context_rejects(bad):
    with pytest.raises(ValueError):
        make_context(*bad)


def test_context_rejects_other_rounding():
    with pytest.raises(ValueError):
        PrecisionContext(10, 5, rounding="ROUND_UP")


def test_widened_keeps_target():
    ctx = make_context(50, 3)
    wide = ctx.widened()
    assert wide.target_digits == 50
    assert wide.guard_digits == ctx.guard_digits + 16


def test_sqrt_two_matches_oracle():
    ctx = make_context(40)
    assert render_decimal(hp_sqrt(2, ctx), 40) == SQRT2_40


def test_sqrt_negative_raises():
    with pytest.raises(DomainError):
        hp_sqrt(-1, make_context(10))


def test_render_examples():
    ctx = make_context(20)
    assert render_decimal(HPReal.of(3, ctx), 1) == "3"
    assert render_decimal(HPReal.of(2, ctx), 5) == "2.0000"
    assert render_decimal(HPReal.of("1.9285849e-1564", ctx), 6) == "1.92858e-1564"
    assert render_decimal(HPReal.of(12345, ctx), 3) == "1.23e+4"
    assert render_decimal(HPReal.of("-0.00125", ctx), 2) == "-0.0012"  # half-even


def test_render_beyond_target_raises():
    with pytest.raises(PrecisionError):
        render_decimal(HPReal.of(1, make_context(10)), 11)


@settings(max_examples=50, deadline=None)
@given(st.fractions(min_value=Fraction(1, 10**6), max_value=10**6), st.integers(2, 30))
def test_render_is_prefix_monotone(value, n):
    # more digits never change the value the shorter rendering rounds to
    ctx = make_context(40)
    x = HPReal.of(value, ctx)
    short = Decimal(render_decimal(x, n - 1))
    long_ = Decimal(render_decimal(x, n))
    ulp = Decimal(1).scaleb(significant_digits(x, n - 1)[1] - (n - 2))
    assert abs(long_ - short) <= ulp / 2 + Decimal(1).scaleb(significant_digits(x, n)[1] - (n - 1))


def test_arithmetic_uses_coarser_context():
    fine, coarse = make_context(60), make_context(10)
    x = HPReal.of(1, fine) / 3
    y = HPReal.of(1, coarse) / 3
    assert (x + y).ctx == coarse
    assert str((x * 3).value).startswith("0.99999999999")


def test_comparisons_and_float():
    ctx = make_context(20)
    a, b = HPReal.of(Fraction(1, 3), ctx), HPReal.of("0.5", ctx)
    assert a < b and b > a and a <= a and float(b) == 0.5
    assert (-a).sign() == -1 and not HPReal.of(0, ctx)


def test_complex_power_matches_repeated_product():
    ctx = make_context(30)
    z = HPComplex.of(1, 3, ctx)
    p = z ** 5
    q = z * z * z * z * z
    assert abs(float(p.re - q.re)) < 1e-30 and abs(float(p.im - q.im)) < 1e-30
    # (1+3i)^5 = 316 - 12i... check exactly via Python complex
    w = complex(1, 3) ** 5
    assert float(p.re) == w.real and float(p.im) == w.imag


def test_complex_negative_power_is_reciprocal():
    ctx = make_context(30)
    z = HPComplex.of(2, -1, ctx)
    r = z ** -3
    w = complex(2, -1) ** -3
    assert abs(float(r.re) - w.real) < 1e-15 and abs(float(r.im) - w.imag) < 1e-15
    one = r * (z ** 3)
    assert abs(float(one.re) - 1) < 1e-28 and abs(float(one.im)) < 1e-28


@settings(max_examples=50, deadline=None)
@given(st.fractions(min_value=-100, max_value=100), st.integers(40, 400))
def test_fixed_round_trip(value, bits):
    ctx = make_context(20)
    x = HPReal.of(value, ctx)
    back = from_fixed(to_fixed(x, bits), bits, ctx)
    assert abs(back.value - x.value) <= Decimal(2) ** -bits + Decimal(10) ** -(ctx.working_digits - 3)
