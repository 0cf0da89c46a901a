"""Nested radicals a_k = sqrt(2 + a_{k-1}) and the arctangent argument they yield."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from . import kernels
from .precision import (
    DomainError,
    HPReal,
    PrecisionContext,
    PrecisionPolicyError,
    from_fixed,
)

__all__ = [
    "RadicalState",
    "radical_prefix",
    "nested_radical",
    "radical_complement",
    "arctan_argument",
]


@dataclass(frozen=True)
class RadicalState:
    """``a_k``, ``sqrt(2 - a_{k-1})`` and their ratio ``x_k = tan(pi / 2**(k+1))``."""

    k: int
    a_k: HPReal
    complement: HPReal
    argument: HPReal


@lru_cache(maxsize=64)
def _fixed_chain(k: int, bits: int) -> tuple[int, ...]:
    return tuple(kernels.radical_chain(k, bits))


def _check_k(k: int) -> None:
    if k < 1:
        raise DomainError(f"k must be >= 1, got {k}")


def _check_policy(k: int, ctx: PrecisionContext) -> None:
    if ctx.k_hint < k:
        raise PrecisionPolicyError(
            f"context sized for k <= {ctx.k_hint}; k={k} would lose digits to cancellation in 2 - a_(k-1)"
        )


def _fixed_parts(k: int, ctx: PrecisionContext) -> tuple[int, int, int]:
    bits = ctx.working_bits
    chain = _fixed_chain(k, bits)
    a_k = chain[k]
    complement = kernels.fixed_sqrt((2 << bits) - chain[k - 1], bits)
    return a_k, complement, kernels.fixed_div(complement, a_k, bits)


def radical_prefix(k: int, ctx: PrecisionContext) -> list[HPReal]:
    """``[a_1, ..., a_k]``, all from one pass of the recurrence."""
    _check_k(k)
    bits = ctx.working_bits
    return [from_fixed(a, bits, ctx) for a in _fixed_chain(k, bits)[1:]]


def nested_radical(k: int, ctx: PrecisionContext) -> HPReal:
    _check_k(k)
    bits = ctx.working_bits
    return from_fixed(_fixed_chain(k, bits)[k], bits, ctx)


def radical_complement(k: int, ctx: PrecisionContext) -> HPReal:
    """``sqrt(2 - a_{k-1})`` by direct subtraction; ``a_0 = 0``."""
    _check_k(k)
    _check_policy(k, ctx)
    return from_fixed(_fixed_parts(k, ctx)[1], ctx.working_bits, ctx)


def arctan_argument(k: int, ctx: PrecisionContext) -> RadicalState:
    _check_k(k)
    _check_policy(k, ctx)
    bits = ctx.working_bits
    a_k, complement, argument = _fixed_parts(k, ctx)
    return RadicalState(
        k=k,
        a_k=from_fixed(a_k, bits, ctx),
        complement=from_fixed(complement, bits, ctx),
        argument=from_fixed(argument, bits, ctx),
    )
