"""Convergence metrology: per-term digit rates and serialized run reports."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .digits import DigitComparison, coinciding_digits
from .formulas import (
    Formula,
    PiResult,
    pi_nested_arctan,
    predicted_digits_per_term,
    required_target_digits,
)
from .precision import HPReal, PrecisionContext, PrecisionError, make_context, significant_digits

__all__ = [
    "DigitComparison",
    "coinciding_digits",
    "digits_per_term",
    "rate_context",
    "epsilon_parts",
    "ConvergenceReport",
    "build_report",
    "emit_report",
    "RUN_FIELDS",
    "DERIVED_FIELDS",
]

RUN_FIELDS = (
    "formula",
    "k",
    "m_max",
    "K",
    "target_digits",
    "epsilon_mantissa",
    "epsilon_exponent",
    "epsilon_sign",
    "coinciding_digits",
    "wall_time_ms",
)
DERIVED_FIELDS = ("digits_per_k", "digits_per_term", "predicted_digits_per_term")
MANTISSA_DIGITS = 6


def _resolved_log10(eps: HPReal) -> float:
    if not eps:
        raise PrecisionError("error term is zero at this precision")
    lg = eps.log10_abs()
    if lg <= -eps.ctx.target_digits:
        raise PrecisionError(f"|eps| ~ 1e{lg:.0f} is below the {eps.ctx.target_digits}-digit floor")
    return lg


def rate_context(k: int, m_probe: int) -> PrecisionContext:
    """Smallest policy context that resolves the error at ``m_probe + 1``."""
    return make_context(required_target_digits(k, m_probe + 1), k)


def digits_per_term(k: int, m_probe: int, ctx: PrecisionContext) -> tuple[float, float]:
    """Measured and predicted digits gained by raising m_max from ``m_probe`` to ``m_probe + 1``."""
    lo = pi_nested_arctan(k, m_probe, ctx)
    hi = pi_nested_arctan(k, m_probe + 1, ctx)
    measured = _resolved_log10(lo.epsilon) - _resolved_log10(hi.epsilon)
    return measured, predicted_digits_per_term(lo.argument)


def epsilon_parts(eps: HPReal) -> tuple[str, int | None, int]:
    """``(mantissa, exponent, sign)`` of ``eps`` with a 6-digit mantissa of ``|eps|``."""
    sign, exp, ds = significant_digits(eps, MANTISSA_DIGITS)
    if not sign:
        return "0." + "0" * (MANTISSA_DIGITS - 1), None, 0
    return f"{ds[0]}.{ds[1:]}", exp, sign


def _row(r: PiResult) -> dict:
    mantissa, exponent, sign = epsilon_parts(r.epsilon)
    return {
        "formula": Formula(r.formula).value,
        "k": r.k,
        "m_max": r.m_max,
        "K": r.K,
        "target_digits": r.ctx.target_digits,
        "epsilon_mantissa": mantissa,
        "epsilon_exponent": exponent,
        "epsilon_sign": sign,
        "coinciding_digits": r.coinciding_digits,
        "wall_time_ms": round(r.wall_time_ms, 3),
    }


def _slope(points: list[tuple[int, PiResult]]) -> float | None:
    points = sorted(points, key=lambda p: p[0])
    (x0, first), (x1, last) = points[0], points[-1]
    if x1 == x0 or not first.epsilon or not last.epsilon:
        return None
    return (first.epsilon.log10_abs() - last.epsilon.log10_abs()) / (x1 - x0)


def _derived(runs: Sequence[PiResult]) -> dict:
    out = dict.fromkeys(DERIVED_FIELDS)
    if any(r.formula is not Formula.NESTED_ARCTAN for r in runs):
        return out
    ks = {r.k for r in runs}
    ms = {r.m_max for r in runs}
    if len(ms) == 1 and len(ks) > 1:
        out["digits_per_k"] = _slope([(r.k, r) for r in runs])
    if len(ks) == 1:
        if len(ms) > 1:
            out["digits_per_term"] = _slope([(r.m_max, r) for r in runs])
        out["predicted_digits_per_term"] = predicted_digits_per_term(runs[0].argument)
    return {key: (None if v is None else round(v, 6)) for key, v in out.items()}


@dataclass
class ConvergenceReport:
    runs: list[dict]
    derived: dict = field(default_factory=lambda: dict.fromkeys(DERIVED_FIELDS))

    def to_json(self) -> str:
        return json.dumps({"runs": self.runs, "derived": self.derived}, indent=2) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(RUN_FIELDS + DERIVED_FIELDS)
        for row in self.runs:
            cells = [row[f] for f in RUN_FIELDS] + [self.derived[f] for f in DERIVED_FIELDS]
            writer.writerow("" if c is None else c for c in cells)
        return buf.getvalue()

    def to_text(self) -> str:
        lines = []
        for row in self.runs:
            params = " ".join(f"{f}={row[f]}" for f in ("k", "m_max", "K") if row[f] is not None)
            eps = (
                "0"
                if row["epsilon_exponent"] is None
                else f"{row['epsilon_mantissa']}e{row['epsilon_exponent']}"
            )
            lines.append(
                f"{row['formula']:<16} {params:<18} digits={row['target_digits']:<6} "
                f"|eps|={eps:<18} coinciding={row['coinciding_digits']}"
            )
        for key in DERIVED_FIELDS:
            if self.derived[key] is not None:
                lines.append(f"{key} = {self.derived[key]}")
        return "\n".join(lines) + "\n"


def build_report(runs: Iterable[PiResult]) -> ConvergenceReport:
    runs = list(runs)
    if not runs:
        raise ValueError("a report needs at least one run")
    return ConvergenceReport(runs=[_row(r) for r in runs], derived=_derived(runs))


def emit_report(runs: Iterable[PiResult], format: str = "json") -> bytes:
    report = build_report(runs)
    if format == "json":
        return report.to_json().encode()
    if format == "csv":
        return report.to_csv().encode()
    if format == "text":
        return report.to_text().encode()
    raise ValueError(f"unknown report format {format!r}")
