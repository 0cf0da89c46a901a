"""Pure-Python fixed-point kernels.

Every value is a Python int holding ``round(v * 2**bits)``.  Rounding is
half-up through floor division/shift, which is exactly what the GMP kernels
do with ``mpz_fdiv_q`` / ``mpz_fdiv_q_2exp``; both backends must return
identical integers for identical inputs.
"""

from __future__ import annotations

from math import isqrt

__all__ = [
    "fixed_mul",
    "fixed_div",
    "fixed_sqrt",
    "radical_chain",
    "half_product",
    "inverse_odd_power",
    "conjugate_pair_sum",
    "atan_taylor",
]


def fixed_mul(a: int, b: int, bits: int) -> int:
    return (a * b + (1 << (bits - 1))) >> bits


def fixed_div(a: int, b: int, bits: int) -> int:
    if b <= 0:
        raise ZeroDivisionError("fixed_div needs a positive divisor")
    return ((a << bits) + (b >> 1)) // b


def fixed_sqrt(v: int, bits: int) -> int:
    if v < 0:
        raise ValueError("fixed_sqrt of a negative value")
    return (isqrt(v << (bits + 2)) + 1) >> 1


def radical_chain(k: int, bits: int) -> list[int]:
    """Return ``[a_0, a_1, ..., a_k]`` with ``a_0 = 0`` and ``a_j = sqrt(2 + a_{j-1})``."""
    two = 2 << bits
    chain = [0]
    a = 0
    for _ in range(k):
        a = (isqrt((two + a) << (bits + 2)) + 1) >> 1
        chain.append(a)
    return chain


def half_product(values: list[int], bits: int) -> int:
    """Running product of ``v / 2`` over ``values``."""
    p = 1 << bits
    half = 1 << bits
    shift = bits + 1
    for v in values:
        p = (p * v + half) >> shift
    return p


def _reciprocal(x: int, ell: int, L: int, bits: int) -> tuple[int, int]:
    # 1 / ((2l-1) + 2iL/x) = ((2l-1) x^2 - 2iLx) / ((2l-1)^2 x^2 + 4L^2)
    one = 1 << bits
    half = 1 << (bits - 1)
    c = 2 * ell - 1
    x2 = (x * x + half) >> bits
    den = c * c * x2 + 4 * L * L * one
    hd = den >> 1
    re = ((c * x2 << bits) + hd) // den
    im = -(((2 * L * x << bits) + hd) // den)
    return re, im


def inverse_odd_power(x: int, ell: int, L: int, m: int, bits: int) -> tuple[int, int]:
    """``z**-(2m-1)`` for ``z = (2l-1) + 2iL/x`` via the ``w * z**-2`` recurrence."""
    half = 1 << (bits - 1)
    wr, wi = _reciprocal(x, ell, L, bits)
    qr = (wr * wr - wi * wi + half) >> bits
    qi = (2 * wr * wi + half) >> bits
    for _ in range(m - 1):
        wr, wi = (wr * qr - wi * qi + half) >> bits, (wr * qi + wi * qr + half) >> bits
    return wr, wi


def conjugate_pair_sum(x: int, L: int, m_max: int, bits: int) -> int:
    """Sum over l <= L, m <= m_max of ``-2 Im(z**-(2m-1)) / (2m-1)``."""
    half = 1 << (bits - 1)
    total = 0
    for ell in range(1, L + 1):
        wr, wi = _reciprocal(x, ell, L, bits)
        qr = (wr * wr - wi * wi + half) >> bits
        qi = (2 * wr * wi + half) >> bits
        for m in range(1, m_max + 1):
            d = 2 * m - 1
            total += (-2 * wi + (d >> 1)) // d
            if m == m_max or (wr == 0 and wi == 0):
                break
            wr, wi = (wr * qr - wi * qi + half) >> bits, (wr * qi + wi * qr + half) >> bits
    return total


def atan_taylor(x: int, bits: int) -> int:
    """Maclaurin arctangent for ``0 <= x``; halves the argument until ``x <= 1/4``."""
    one = 1 << bits
    half = 1 << (bits - 1)
    quarter = one >> 2
    halvings = 0
    while x > quarter:
        x2 = (x * x + half) >> bits
        root = (isqrt((one + x2) << (bits + 2)) + 1) >> 1
        den = one + root
        x = ((x << bits) + (den >> 1)) // den
        halvings += 1
    x2 = (x * x + half) >> bits
    total = 0
    p = x
    n = 0
    while p:
        d = 2 * n + 1
        term = (p + (d >> 1)) // d
        total = total - term if n & 1 else total + term
        p = (p * x2 + half) >> bits
        n += 1
    return total << halvings
