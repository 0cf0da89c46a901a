"""The pi engines and fixed-m_max sweeps.

Every result carries its error ``epsilon = reference - value`` against the
Machin oracle evaluated with 16 extra guard digits.
"""

from __future__ import annotations

import math
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from decimal import localcontext
from enum import Enum

from . import kernels
from .digits import DigitComparison, coinciding_digits
from .precision import (
    DomainError,
    HPReal,
    PrecisionContext,
    PrecisionError,
    from_fixed,
    make_context,
)
from .radicals import _fixed_chain, arctan_argument, radical_complement
from .series import arctan_nested, machin_pi

__all__ = [
    "Formula",
    "PiResult",
    "pi_nested_arctan",
    "pi_viete",
    "pi_classic_radical",
    "pi_machin",
    "pi_fixed_mmax_sweep",
    "reference_pi",
    "compare_to_reference",
    "predicted_digits_per_term",
    "required_target_digits",
    "predicted_accuracy",
    "worker_count",
]

_MARGIN = 50


class Formula(str, Enum):
    NESTED_ARCTAN = "nested-arctan"
    VIETE = "viete"
    CLASSIC_RADICAL = "classic-radical"
    MACHIN = "machin"


@dataclass(frozen=True)
class PiResult:
    value: HPReal
    formula: Formula
    epsilon: HPReal
    coinciding_digits: int
    k: int | None = None
    m_max: int | None = None
    K: int | None = None
    argument: HPReal | None = None
    wall_time_ms: float = 0.0

    @property
    def ctx(self) -> PrecisionContext:
        return self.value.ctx

    @property
    def abs_epsilon(self) -> HPReal:
        return abs(self.epsilon)


def reference_pi(ctx: PrecisionContext) -> HPReal:
    """The Machin oracle for ``ctx``, computed with 16 extra guard digits."""
    return machin_pi(ctx.widened())


def compare_to_reference(result: PiResult) -> DigitComparison:
    ctx = result.ctx
    return coinciding_digits(result.value, reference_pi(ctx).with_context(ctx), ctx.target_digits)


def _finish(value: HPReal, formula: Formula, started: float, **params) -> PiResult:
    ctx = value.ctx
    wide = ctx.widened()
    reference = reference_pi(ctx)
    with localcontext(wide.decimal_context()):
        eps = HPReal(reference.value - value.value, ctx)
    digits = coinciding_digits(value, reference.with_context(ctx), ctx.target_digits)
    return PiResult(
        value=value,
        formula=formula,
        epsilon=eps,
        coinciding_digits=digits.coinciding_digits,
        wall_time_ms=(time.perf_counter() - started) * 1e3,
        **params,
    )


def _check_positive(name: str, v: int) -> None:
    if v < 1:
        raise DomainError(f"{name} must be >= 1, got {v}")


def pi_nested_arctan(k: int, m_max: int, ctx: PrecisionContext) -> PiResult:
    """``2**(k+1) * arctan(x_k)`` with the arctangent truncated after ``m_max`` pair terms."""
    _check_positive("k", k)
    _check_positive("m_max", m_max)
    t0 = time.perf_counter()
    state = arctan_argument(k, ctx)
    value = arctan_nested(state.argument, m_max, ctx) * (2 ** (k + 1))
    return _finish(value, Formula.NESTED_ARCTAN, t0, k=k, m_max=m_max, argument=state.argument)


def pi_viete(K: int, ctx: PrecisionContext) -> PiResult:
    """``2 / prod_{k<=K} (a_k / 2)``."""
    _check_positive("K", K)
    t0 = time.perf_counter()
    bits = ctx.working_bits
    product = kernels.half_product(_fixed_chain(K, bits)[1:], bits)
    value = from_fixed(kernels.fixed_div(2 << bits, product, bits), bits, ctx)
    return _finish(value, Formula.VIETE, t0, K=K)


def pi_classic_radical(k: int, ctx: PrecisionContext) -> PiResult:
    """``2**k * sqrt(2 - a_{k-1})``."""
    _check_positive("k", k)
    t0 = time.perf_counter()
    value = radical_complement(k, ctx) * (2**k)
    return _finish(value, Formula.CLASSIC_RADICAL, t0, k=k)


def pi_machin(ctx: PrecisionContext) -> PiResult:
    t0 = time.perf_counter()
    return _finish(machin_pi(ctx), Formula.MACHIN, t0)


def predicted_digits_per_term(argument: HPReal) -> float:
    """``log10(1 + 4 / x**2)``: digits gained per extra pair term at argument ``x``."""
    with localcontext() as c:
        c.prec = 40
        x = +argument.value
        return float((1 + 4 / (x * x)).log10())


def _argument_estimate(k: int) -> HPReal:
    return arctan_argument(k, make_context(30, k)).argument


def required_target_digits(k: int, m_max: int) -> int:
    """Target digits that keep the truncation error of (k, m_max) resolvable."""
    return math.ceil(m_max * predicted_digits_per_term(_argument_estimate(k))) + _MARGIN


def predicted_accuracy(formula: Formula | str, *, k: int | None = None, m_max: int | None = None,
                       K: int | None = None) -> int | None:
    """Expected correct digits of a run, or None when the formula is exact (Machin)."""
    formula = Formula(formula)
    if formula is Formula.NESTED_ARCTAN:
        return math.ceil(m_max * predicted_digits_per_term(_argument_estimate(k)))
    if formula in (Formula.VIETE, Formula.CLASSIC_RADICAL):
        n = K if formula is Formula.VIETE else k
        # error ~ pi**3 / (6 * 4**(n+1))
        return max(1, math.ceil((n + 1) * math.log10(4) + math.log10(6 / math.pi**3)))
    return None


def worker_count(requested: int | None = None) -> int:
    if requested is not None:
        return max(1, requested)
    env = os.environ.get("NESTED_PI_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def pi_fixed_mmax_sweep(k_from: int, k_to: int, m_max: int, ctx: PrecisionContext,
                        workers: int | None = None) -> list[PiResult]:
    """``pi_nested_arctan(k, m_max)`` for ``k_from <= k <= k_to``, in k order.

    Rejects contexts too narrow to resolve the error of the last run.
    """
    _check_positive("k_from", k_from)
    _check_positive("m_max", m_max)
    if k_from > k_to:
        raise ValueError(f"empty range {k_from}:{k_to}")
    needed = required_target_digits(k_to, m_max)
    if ctx.target_digits < needed:
        raise PrecisionError(f"sweep to k={k_to} with m_max={m_max} needs >= {needed} target digits")
    reference_pi(ctx)
    ks = range(k_from, k_to + 1)
    n = min(worker_count(workers), len(ks))
    if n == 1:
        return [pi_nested_arctan(k, m_max, ctx) for k in ks]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(lambda k: pi_nested_arctan(k, m_max, ctx), ks))
