import os
import subprocess
import sys

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nested_pi import _pykernels, kernels

compiled = pytest.importorskip("nested_pi._ckernels")

BITS = st.integers(min_value=8, max_value=900)


def fixed(frac_num, frac_den, bits):
    return (frac_num << bits) // frac_den


def test_backend_selected():
    assert kernels.BACKEND == "gmp"


def test_env_forces_pure_python():
    env = dict(os.environ, NESTED_PI_KERNEL="python")
    out = subprocess.run(
        [sys.executable, "-c", "from nested_pi import kernels; print(kernels.BACKEND)"],
        env=env, capture_output=True, text=True, check=True,
    )
    assert out.stdout.strip() == "python"


@settings(max_examples=60, deadline=None)
@given(a=st.integers(-(10**300), 10**300), b=st.integers(-(10**300), 10**300), bits=BITS)
def test_mul_parity(a, b, bits):
    assert compiled.fixed_mul(a, b, bits) == _pykernels.fixed_mul(a, b, bits)


@settings(max_examples=60, deadline=None)
@given(a=st.integers(-(10**300), 10**300), b=st.integers(1, 10**300), bits=BITS)
def test_div_parity(a, b, bits):
    assert compiled.fixed_div(a, b, bits) == _pykernels.fixed_div(a, b, bits)


@settings(max_examples=60, deadline=None)
@given(v=st.integers(0, 10**400), bits=BITS)
def test_sqrt_parity(v, bits):
    assert compiled.fixed_sqrt(v, bits) == _pykernels.fixed_sqrt(v, bits)


@settings(max_examples=30, deadline=None)
@given(k=st.integers(1, 80), bits=BITS)
def test_radical_chain_parity(k, bits):
    chain = _pykernels.radical_chain(k, bits)
    assert compiled.radical_chain(k, bits) == chain
    assert compiled.half_product(chain[1:], bits) == _pykernels.half_product(chain[1:], bits)


@settings(max_examples=40, deadline=None)
@given(
    num=st.integers(1, 1000), den=st.integers(1, 1000),
    L=st.integers(1, 4), m=st.integers(1, 40), bits=st.integers(64, 700),
)
def test_series_parity(num, den, L, m, bits):
    x = fixed(num, den, bits)
    assert compiled.conjugate_pair_sum(x, L, m, bits) == _pykernels.conjugate_pair_sum(x, L, m, bits)
    ell = 1 + (m % L)
    assert compiled.inverse_odd_power(x, ell, L, m, bits) == _pykernels.inverse_odd_power(x, ell, L, m, bits)


@settings(max_examples=40, deadline=None)
@given(num=st.integers(1, 1000), den=st.integers(1, 1000), bits=st.integers(16, 900))
def test_atan_parity(num, den, bits):
    x = fixed(min(num, den), den, bits)
    assert compiled.atan_taylor(x, bits) == _pykernels.atan_taylor(x, bits)


def test_zero_and_negative_values_round_trip():
    assert compiled.fixed_mul(0, 123, 10) == 0
    assert compiled.fixed_mul(-(1 << 20), 1 << 10, 10) == -(1 << 20)
    with pytest.raises(ValueError):
        compiled.fixed_sqrt(-1, 10)
    with pytest.raises(ZeroDivisionError):
        compiled.fixed_div(1, 0, 10)


def test_fixed_sqrt_rounds_to_nearest():
    bits = 0 + 4
    # sqrt(2) * 16 = 22.627 -> 23
    assert _pykernels.fixed_sqrt(2 << bits, bits) == 23
    assert _pykernels.fixed_sqrt(4 << bits, bits) == 2 << bits


def test_atan_taylor_of_one_is_quarter_pi():
    bits = 200
    got = _pykernels.atan_taylor(1 << bits, bits)
    # pi/4 to 200 bits, from the known decimal expansion
    from fractions import Fraction
    pi = Fraction("3.14159265358979323846264338327950288419716939937510582097494459230781640628620899")
    want = int(pi / 4 * (1 << bits))
    assert abs(got - want) < 16


def test_benchmark_script_runs():
    from pathlib import Path

    script = Path(__file__).resolve().parents[1] / "benchmarks" / "bench_kernels.py"
    out = subprocess.run([sys.executable, str(script), "--repeat", "1", "--json"],
                         capture_output=True, text=True, check=True)
    assert "speedup" in out.stdout
