"""Conjugate-pair arctangent series and the Maclaurin/Machin oracles.

The series evaluates ``i * sum_l sum_m [z**-(2m-1) - conj(z)**-(2m-1)] / (2m-1)``
with ``z = (2l-1) + 2iL/x`` in its real form ``-2 Im(z**-(2m-1)) / (2m-1)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import kernels
from .precision import (
    DomainError,
    HPComplex,
    HPReal,
    PrecisionContext,
    from_fixed,
    to_fixed,
)

__all__ = [
    "SeriesParams",
    "arctan_nested",
    "arctan_nested_general",
    "arctan_nested_complex",
    "inverse_odd_power",
    "arctan_taylor",
    "machin_pi",
]


@dataclass(frozen=True)
class SeriesParams:
    """Outer bound ``L`` and inner truncation ``m_max``."""

    m_max: int
    L: int = 1

    def __post_init__(self) -> None:
        if self.L < 1 or self.m_max < 1:
            raise ValueError(f"L and m_max must be >= 1, got L={self.L}, m_max={self.m_max}")


def _check_positive(x: HPReal) -> None:
    if x <= 0:
        raise DomainError(f"arctangent series needs x > 0, got {x}")


def arctan_nested_general(x: HPReal, params: SeriesParams, ctx: PrecisionContext) -> HPReal:
    _check_positive(x)
    bits = ctx.working_bits
    total = kernels.conjugate_pair_sum(to_fixed(x, bits), params.L, params.m_max, bits)
    return from_fixed(total, bits, ctx)


def arctan_nested(x: HPReal, m_max: int, ctx: PrecisionContext) -> HPReal:
    """arctan(x) from the first ``m_max`` conjugate-pair terms (``L = 1``).

    The tail after ``m_max`` terms shrinks like ``|1 + 2i/x|**-(2 m_max + 1)``.
    """
    return arctan_nested_general(x, SeriesParams(m_max=m_max), ctx)


def inverse_odd_power(x: HPReal, m: int, ctx: PrecisionContext, ell: int = 1, L: int = 1) -> HPComplex:
    """``z**-(2m-1)`` as produced inside the series recurrence."""
    _check_positive(x)
    bits = ctx.working_bits
    re, im = kernels.inverse_odd_power(to_fixed(x, bits), ell, L, m, bits)
    return HPComplex(from_fixed(re, bits, ctx), from_fixed(im, bits, ctx))


def arctan_nested_complex(x: HPReal, m_max: int, ctx: PrecisionContext, L: int = 1) -> HPComplex:
    """Same series in full complex arithmetic, both conjugate terms kept.

    Slow reference path; the imaginary part of the result should vanish.
    """
    _check_positive(x)
    total = HPComplex.of(0, 0, ctx)
    for ell in range(1, L + 1):
        z = HPComplex(HPReal.of(2 * ell - 1, ctx), (2 * L) / x.with_context(ctx))
        zc = z.conj()
        for m in range(1, m_max + 1):
            n = 2 * m - 1
            total = total + (z ** (-n) - zc ** (-n)) / n
    return total.times_i()


def arctan_taylor(x: HPReal, ctx: PrecisionContext) -> HPReal:
    """arctan(x) for ``0 < x <= 1`` by the Maclaurin series with argument halving."""
    if not (0 < x <= 1):
        raise DomainError(f"arctan_taylor needs 0 < x <= 1, got {x}")
    bits = ctx.working_bits
    return from_fixed(kernels.atan_taylor(to_fixed(x, bits), bits), bits, ctx)


@lru_cache(maxsize=16)
def machin_pi(ctx: PrecisionContext) -> HPReal:
    """pi = 16 arctan(1/5) - 4 arctan(1/239)."""
    a = arctan_taylor(HPReal.of(Fraction(1, 5), ctx), ctx)
    b = arctan_taylor(HPReal.of(Fraction(1, 239), ctx), ctx)
    return 16 * a - 4 * b
