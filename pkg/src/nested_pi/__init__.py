"""Nested-radical arctangent formulas for pi at arbitrary precision."""

from .analysis import (
    ConvergenceReport,
    build_report,
    digits_per_term,
    emit_report,
    rate_context,
)
from .digits import DigitComparison, coinciding_digits
from .formulas import (
    Formula,
    PiResult,
    pi_classic_radical,
    pi_fixed_mmax_sweep,
    pi_machin,
    pi_nested_arctan,
    pi_viete,
    required_target_digits,
)
from .kernels import BACKEND
from .precision import (
    DomainError,
    HPComplex,
    HPReal,
    PrecisionContext,
    PrecisionError,
    PrecisionPolicyError,
    hp_sqrt,
    make_context,
    render_decimal,
)
from .radicals import RadicalState, arctan_argument, nested_radical, radical_complement
from .series import (
    SeriesParams,
    arctan_nested,
    arctan_nested_general,
    arctan_taylor,
    machin_pi,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "ConvergenceReport",
    "DigitComparison",
    "DomainError",
    "Formula",
    "HPComplex",
    "HPReal",
    "PiResult",
    "PrecisionContext",
    "PrecisionError",
    "PrecisionPolicyError",
    "RadicalState",
    "SeriesParams",
    "arctan_argument",
    "arctan_nested",
    "arctan_nested_general",
    "arctan_taylor",
    "build_report",
    "coinciding_digits",
    "digits_per_term",
    "emit_report",
    "hp_sqrt",
    "machin_pi",
    "make_context",
    "nested_radical",
    "pi_classic_radical",
    "pi_fixed_mmax_sweep",
    "pi_machin",
    "pi_nested_arctan",
    "pi_viete",
    "radical_complement",
    "rate_context",
    "render_decimal",
    "required_target_digits",
]
