"""Coinciding-digit counts between an approximation and a reference value."""

from __future__ import annotations

from dataclasses import dataclass
from decimal import Context, Decimal, localcontext

from .precision import HPReal, PrecisionError, significant_digits, truncated_digits

__all__ = ["DigitComparison", "coinciding_digits", "NEIGHBORHOOD"]

NEIGHBORHOOD = 10


@dataclass(frozen=True)
class DigitComparison:
    """Where two significant-digit streams part ways.

    ``first_mismatch_index`` is the 0-based position of the first differing
    digit in the truncated streams (leading digit included, decimal point
    excluded).  ``coinciding_digits`` equals it, plus one when a non-empty
    common prefix is followed by a digit the approximation gets right by
    rounding: its rounded display reproduces the reference digit and its
    error is under half a unit there.
    """

    coinciding_digits: int
    first_mismatch_index: int
    approx_prefix: str
    approx_continuation: str
    reference_continuation: str

    def neighborhood(self) -> str:
        return f"...{self.approx_prefix} | {self.approx_continuation}..."


def coinciding_digits(approx: HPReal, reference: HPReal, max_digits: int | None = None) -> DigitComparison:
    if max_digits is None:
        max_digits = min(approx.ctx.target_digits, reference.ctx.target_digits)
    if max_digits < 1:
        raise ValueError("max_digits must be positive")
    for name, v in (("approximation", approx), ("reference", reference)):
        if v.ctx.target_digits < max_digits:
            raise PrecisionError(
                f"{name} carries {v.ctx.target_digits} digits, {max_digits} needed for the comparison"
            )

    a_sign, a_exp, a_ds = truncated_digits(approx, max_digits)
    r_sign, r_exp, r_ds = truncated_digits(reference, max_digits)
    p = 0
    if a_sign == r_sign and a_exp == r_exp:
        while p < max_digits and a_ds[p] == r_ds[p]:
            p += 1

    count = p
    if 0 < p < max_digits and significant_digits(approx, p + 1) == (r_sign, r_exp, r_ds[: p + 1]):
        prec = max(approx.ctx.working_digits, reference.ctx.working_digits) + 2
        with localcontext(Context(prec=prec, Emin=-(10**9), Emax=10**9)):
            err = abs(approx.value - reference.value)
            if err < Decimal(5).scaleb(r_exp - p - 1):
                count = p + 1

    return DigitComparison(
        coinciding_digits=count,
        first_mismatch_index=p,
        approx_prefix=a_ds[max(0, p - NEIGHBORHOOD) : p],
        approx_continuation=a_ds[p : p + NEIGHBORHOOD],
        reference_continuation=r_ds[p : p + NEIGHBORHOOD],
    )
