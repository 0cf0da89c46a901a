"""Precision contexts and arbitrary-precision real/complex values.

Values are backed by :class:`decimal.Decimal` rounded half-even to the
context's working precision.  The fixed-point kernels exchange data with
this layer through :func:`to_fixed` and :func:`from_fixed`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import ROUND_DOWN, ROUND_HALF_EVEN, Context, Decimal, localcontext
from fractions import Fraction
from numbers import Rational
from typing import Union

__all__ = [
    "PrecisionError",
    "PrecisionPolicyError",
    "DomainError",
    "PrecisionContext",
    "HPReal",
    "HPComplex",
    "make_context",
    "hp_sqrt",
    "render_decimal",
    "significant_digits",
    "to_fixed",
    "from_fixed",
]

# Magnitudes below this render in scientific form.
SCIENTIFIC_BELOW = Decimal("1e-6")

# Cancellation in 2 - a_{k-1} costs log10(4) ~ 0.602 digits per nested root.
_GUARD_PER_K = Fraction(602, 1000)
_GUARD_BASE = 32
_GUARD_BITS = 16


class PrecisionError(ArithmeticError):
    """A result was requested beyond what its context guarantees."""


class PrecisionPolicyError(PrecisionError):
    """A context is too narrow for the cancellation an operation incurs."""


class DomainError(ValueError):
    """An argument lies outside an operation's mathematical domain."""


@dataclass(frozen=True)
class PrecisionContext:
    target_digits: int
    guard_digits: int
    k_hint: int = 0
    rounding: str = ROUND_HALF_EVEN

    def __post_init__(self) -> None:
        if self.target_digits < 1:
            raise ValueError(f"target_digits must be positive, got {self.target_digits}")
        if self.guard_digits < 0:
            raise ValueError(f"guard_digits must be non-negative, got {self.guard_digits}")
        if self.rounding != ROUND_HALF_EVEN:
            raise ValueError("only round-half-even is supported")

    @property
    def working_digits(self) -> int:
        return self.target_digits + self.guard_digits

    @property
    def working_bits(self) -> int:
        """Fraction bits of the fixed-point kernels at this precision."""
        return math.ceil(self.working_digits * math.log2(10)) + _GUARD_BITS

    def decimal_context(self) -> Context:
        return Context(prec=self.working_digits, rounding=self.rounding, Emin=-(10**9), Emax=10**9)

    def widened(self, extra: int = 16) -> PrecisionContext:
        """Same target, ``extra`` more guard digits."""
        return PrecisionContext(self.target_digits, self.guard_digits + extra, self.k_hint, self.rounding)


def make_context(target_digits: int, k_hint: int = 0) -> PrecisionContext:
    """Context for ``target_digits`` correct digits after ``k_hint`` nested roots.

    >>> make_context(2200, 20).working_digits
    2245
    """
    if target_digits < 1:
        raise ValueError(f"target_digits must be positive, got {target_digits}")
    if k_hint < 0:
        raise ValueError(f"k_hint must be non-negative, got {k_hint}")
    guard = math.ceil(_GUARD_PER_K * k_hint) + _GUARD_BASE
    return PrecisionContext(target_digits, guard, k_hint)


Number = Union[int, str, Decimal, Fraction, "HPReal"]


def _to_decimal(value: Number, dctx: Context) -> Decimal:
    if isinstance(value, HPReal):
        return dctx.plus(value.value)
    if isinstance(value, (int, str, Decimal)):
        return dctx.create_decimal(value)
    if isinstance(value, Rational):
        return dctx.divide(Decimal(value.numerator), Decimal(value.denominator))
    raise TypeError(f"cannot convert {type(value).__name__} to HPReal")


@dataclass(frozen=True)
class HPReal:
    """A finite real number carried at its context's working precision."""

    value: Decimal
    ctx: PrecisionContext

    def __post_init__(self) -> None:
        if not self.value.is_finite():
            raise DomainError(f"non-finite value {self.value}")

    @classmethod
    def of(cls, value: Number, ctx: PrecisionContext) -> HPReal:
        return cls(_to_decimal(value, ctx.decimal_context()), ctx)

    @property
    def context_digits(self) -> int:
        return self.ctx.working_digits

    def _pair(self, other: Number) -> tuple[Decimal, Decimal, PrecisionContext]:
        if isinstance(other, HPReal):
            ctx = self.ctx if self.ctx.working_digits <= other.ctx.working_digits else other.ctx
            return self.value, other.value, ctx
        return self.value, _to_decimal(other, self.ctx.decimal_context()), self.ctx

    def _binary(self, other: Number, op: str, reflected: bool = False) -> HPReal:
        try:
            a, b, ctx = self._pair(other)
        except TypeError:
            return NotImplemented
        if reflected:
            a, b = b, a
        dctx = ctx.decimal_context()
        if op == "/" and not b:
            raise ZeroDivisionError("HPReal division by zero")
        result = {"+": dctx.add, "-": dctx.subtract, "*": dctx.multiply, "/": dctx.divide}[op](a, b)
        return HPReal(result, ctx)

    def __add__(self, other: Number) -> HPReal:
        return self._binary(other, "+")

    def __radd__(self, other: Number) -> HPReal:
        return self._binary(other, "+", reflected=True)

    def __sub__(self, other: Number) -> HPReal:
        return self._binary(other, "-")

    def __rsub__(self, other: Number) -> HPReal:
        return self._binary(other, "-", reflected=True)

    def __mul__(self, other: Number) -> HPReal:
        return self._binary(other, "*")

    def __rmul__(self, other: Number) -> HPReal:
        return self._binary(other, "*", reflected=True)

    def __truediv__(self, other: Number) -> HPReal:
        return self._binary(other, "/")

    def __rtruediv__(self, other: Number) -> HPReal:
        return self._binary(other, "/", reflected=True)

    def __neg__(self) -> HPReal:
        return HPReal(self.value.copy_negate(), self.ctx)

    def __abs__(self) -> HPReal:
        return HPReal(self.value.copy_abs(), self.ctx)

    def _cmp_value(self, other: Number) -> Decimal:
        if isinstance(other, HPReal):
            return other.value
        return _to_decimal(other, self.ctx.decimal_context())

    def __lt__(self, other: Number) -> bool:
        return self.value < self._cmp_value(other)

    def __le__(self, other: Number) -> bool:
        return self.value <= self._cmp_value(other)

    def __gt__(self, other: Number) -> bool:
        return self.value > self._cmp_value(other)

    def __ge__(self, other: Number) -> bool:
        return self.value >= self._cmp_value(other)

    def __float__(self) -> float:
        return float(self.value)

    def __bool__(self) -> bool:
        return bool(self.value)

    def sign(self) -> int:
        return (self.value > 0) - (self.value < 0)

    def log10_abs(self) -> float:
        """``log10(|x|)`` as a float; only the magnitude has to fit."""
        if not self.value:
            raise DomainError("log10 of zero")
        with localcontext(Context(prec=30)):
            return float(abs(self.value).log10())

    def with_context(self, ctx: PrecisionContext) -> HPReal:
        return HPReal(ctx.decimal_context().plus(self.value), ctx)

    def __repr__(self) -> str:
        return f"HPReal({render_decimal(self, min(20, self.ctx.target_digits))}, digits={self.ctx.target_digits})"


@dataclass(frozen=True)
class HPComplex:
    re: HPReal
    im: HPReal

    @classmethod
    def of(cls, re: Number, im: Number, ctx: PrecisionContext) -> HPComplex:
        return cls(HPReal.of(re, ctx), HPReal.of(im, ctx))

    def conj(self) -> HPComplex:
        return HPComplex(self.re, -self.im)

    def abs2(self) -> HPReal:
        return self.re * self.re + self.im * self.im

    def __add__(self, other: HPComplex) -> HPComplex:
        return HPComplex(self.re + other.re, self.im + other.im)

    def __sub__(self, other: HPComplex) -> HPComplex:
        return HPComplex(self.re - other.re, self.im - other.im)

    def __mul__(self, other: HPComplex | HPReal | int) -> HPComplex:
        if isinstance(other, HPComplex):
            return HPComplex(
                self.re * other.re - self.im * other.im,
                self.re * other.im + self.im * other.re,
            )
        return HPComplex(self.re * other, self.im * other)

    __rmul__ = __mul__

    def __truediv__(self, other: HPReal | int) -> HPComplex:
        return HPComplex(self.re / other, self.im / other)

    def reciprocal(self) -> HPComplex:
        n = self.abs2()
        if not n:
            raise ZeroDivisionError("reciprocal of complex zero")
        return HPComplex(self.re / n, -self.im / n)

    def __pow__(self, n: int) -> HPComplex:
        """Integer power by binary exponentiation."""
        if n < 0:
            return self.reciprocal() ** (-n)
        ctx = self.re.ctx
        result = HPComplex.of(1, 0, ctx)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def times_i(self) -> HPComplex:
        return HPComplex(-self.im, self.re)


def hp_sqrt(x: HPReal | Number, ctx: PrecisionContext) -> HPReal:
    """Correctly rounded square root at ``ctx`` working precision."""
    dctx = ctx.decimal_context()
    v = _to_decimal(x, dctx)
    if v < 0:
        raise DomainError(f"square root of negative value {v}")
    return HPReal(dctx.sqrt(v), ctx)


def significant_digits(x: HPReal, n: int, rounding: str = ROUND_HALF_EVEN) -> tuple[int, int, str]:
    """``(sign, exponent, digits)`` of ``x`` kept to ``n`` significant digits.

    ``exponent`` is the power of ten of the leading digit.  Zero gives
    ``(0, 0, "0" * n)``.
    """
    if not x.value:
        return 0, 0, "0" * n
    with localcontext(Context(prec=n, rounding=rounding, Emin=-(10**9), Emax=10**9)) as c:
        r = c.plus(x.value)
    sign, coeff, _ = r.as_tuple()
    digits = "".join(map(str, coeff)).ljust(n, "0")
    return (-1 if sign else 1), r.adjusted(), digits


def render_decimal(x: HPReal, digits: int) -> str:
    """Round ``x`` half-even to ``digits`` significant digits.

    Fixed notation ``d.ddd`` unless ``|x| < 1e-6`` or the integer part has more
    than ``digits`` digits, in which case ``d.ddde<exp>`` is used.
    """
    if digits < 1:
        raise ValueError("digits must be positive")
    if digits > x.ctx.target_digits:
        raise PrecisionError(f"{digits} digits requested, context guarantees {x.ctx.target_digits}")
    sign, exp, ds = significant_digits(x, digits)
    prefix = "-" if sign < 0 else ""
    if sign and (abs(x.value) < SCIENTIFIC_BELOW or exp >= digits):
        mantissa = ds[0] + ("." + ds[1:] if digits > 1 else "")
        return f"{prefix}{mantissa}e{exp:+d}" if exp > 0 else f"{prefix}{mantissa}e{exp}"
    if exp >= 0:
        whole, frac = ds[: exp + 1], ds[exp + 1 :]
    else:
        whole, frac = "0", "0" * (-exp - 1) + ds
    return prefix + whole + ("." + frac if frac else "")


def to_fixed(x: HPReal, bits: int) -> int:
    """``round(x * 2**bits)`` (half-up)."""
    num, den = x.value.as_integer_ratio()
    return ((num << bits) + (den >> 1)) // den


def from_fixed(n: int, bits: int, ctx: PrecisionContext) -> HPReal:
    return HPReal(ctx.decimal_context().divide(Decimal(n), Decimal(1 << bits)), ctx)


def truncated_digits(x: HPReal, n: int) -> tuple[int, int, str]:
    return significant_digits(x, n, ROUND_DOWN)
