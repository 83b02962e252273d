"""Precision-configurable scalar arithmetic and gamma-function helpers.

Every numerical routine in the package takes a ``prec`` argument (an ``int``
number of significant decimal digits or a :class:`Precision`).  15-17 digits
select native floats through :data:`mpmath.fp`; anything larger selects an
:class:`mpmath.MPContext` fixed at that many digits.  Contexts are cached per
digit count and never mutated after creation, so they are safe to share.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Sequence

import mpmath

__all__ = [
    "Precision",
    "DomainError",
    "DegreeOverflowError",
    "ConvergenceError",
    "ConsistencyError",
    "SingularityError",
    "DEFAULT_DIGITS",
    "SWEEP_DIGITS",
    "as_precision",
    "context",
    "guard_context",
    "is_native",
    "require_finite",
    "log_gamma",
    "gamma_ratio",
    "windowed_median",
    "scaled_exp",
]

DEFAULT_DIGITS = 64
SWEEP_DIGITS = 16
_NATIVE_MAX = 17


class DomainError(ValueError):
    """An argument lies outside the domain of the operation."""


class DegreeOverflowError(ArithmeticError):
    """A value left the representable range of the working scalar type."""

    def __init__(self, degree: int, message: str | None = None):
        self.degree = degree
        super().__init__(message or f"overflow at degree {degree}")


class ConvergenceError(ArithmeticError):
    """An iteration did not converge within its budget."""

    def __init__(self, index: int, message: str | None = None):
        self.index = index
        super().__init__(message or f"no convergence at index {index}")


class ConsistencyError(ArithmeticError):
    """A computed quantity violates an invariant it must satisfy."""


class SingularityError(ZeroDivisionError):
    """A ratio recurrence hit an exact zero."""


@dataclass(frozen=True)
class Precision:
    decimal_digits: int = DEFAULT_DIGITS

    def __post_init__(self) -> None:
        if not isinstance(self.decimal_digits, int) or self.decimal_digits < 15:
            raise DomainError(
                f"precision must be an integer >= 15 digits, got {self.decimal_digits!r}"
            )

    @property
    def native(self) -> bool:
        return self.decimal_digits <= _NATIVE_MAX

    @property
    def context(self):
        return context(self.decimal_digits)

    @property
    def eps(self) -> float:
        return 10.0 ** (-self.decimal_digits)


def as_precision(prec: "int | Precision | None") -> Precision:
    if prec is None:
        return Precision(DEFAULT_DIGITS)
    if isinstance(prec, Precision):
        return prec
    return Precision(int(prec))


@lru_cache(maxsize=None)
def _mp_context(digits: int) -> mpmath.MPContext:
    ctx = mpmath.MPContext()
    ctx.dps = digits
    return ctx


def context(prec: "int | Precision | None" = None):
    """Return the mpmath context for ``prec`` (``mpmath.fp`` when native)."""
    p = as_precision(prec)
    if p.native:
        return mpmath.fp
    return _mp_context(p.decimal_digits)


def guard_context(ctx, extra_digits: int | None = None):
    """A context carrying ``extra_digits`` more digits than ``ctx``.

    By default the guard context doubles the digit count.
    """
    digits = digits_of(ctx)
    extra = digits if extra_digits is None else extra_digits
    return _mp_context(max(digits + extra, 34))


def digits_of(ctx) -> int:
    if ctx is mpmath.fp:
        return 16
    return int(ctx.dps)


def is_native(ctx) -> bool:
    return ctx is mpmath.fp


def require_finite(value: Any, name: str = "value") -> Any:
    """Reject NaN and infinities (real or complex) with :class:`DomainError`."""
    try:
        bad = mpmath.isnan(value) or mpmath.isinf(value)
    except (TypeError, ValueError) as exc:
        raise DomainError(f"{name} is not a number: {value!r}") from exc
    if bad:
        raise DomainError(f"{name} must be finite, got {value!r}")
    return value


def to_scalar(ctx, value: Any, name: str = "value"):
    """Convert ``value`` (int, float, str, Fraction, mpf, complex) into ``ctx``."""
    try:
        out = ctx.convert(value)
    except (TypeError, ValueError) as exc:
        raise DomainError(f"{name} is not a number: {value!r}") from exc
    return require_finite(out, name)


def log_gamma(x: Any, prec: "int | Precision | None" = None):
    """ln Gamma(x) for real ``x > 0`` at the working precision."""
    ctx = context(prec)
    xv = to_scalar(ctx, x, "x")
    if ctx.im(xv) != 0:
        raise DomainError("log_gamma takes a real argument")
    xv = ctx.re(xv)
    if xv <= 0:
        raise DomainError(f"log_gamma requires x > 0, got {x!r}")
    if is_native(ctx):
        return math.lgamma(float(xv))
    return ctx.loggamma(xv)


def gamma_ratio(n: int, alpha: Any, prec: "int | Precision | None" = None):
    """Gamma(n+1)/Gamma(n+alpha) through a log-gamma difference.

    ``gamma_ratio(n, alpha) * n**(alpha - 1)`` tends to 1 as ``n`` grows.
    """
    ctx = context(prec)
    if int(n) != n or n < 1:
        raise DomainError(f"gamma_ratio requires an integer n >= 1, got {n!r}")
    a = to_scalar(ctx, alpha, "alpha")
    if n + a <= 0:
        raise DomainError(f"gamma_ratio requires n + alpha > 0, got n={n}, alpha={alpha!r}")
    return ctx.exp(log_gamma(n + 1, prec) - log_gamma(n + a, prec))


def windowed_median(values: Sequence[Any]) -> float:
    """Median of a window of real values, returned as a float."""
    vals = sorted(float(v) for v in values)
    if not vals:
        raise DomainError("empty window")
    m = len(vals)
    mid = m // 2
    if m % 2:
        return vals[mid]
    return 0.5 * (vals[mid - 1] + vals[mid])


def scaled_exp(ctx, value, log_scale):
    """``value * exp(log_scale)`` without overflowing native floats.

    In the native context a result beyond the float range comes back as a
    16-digit :class:`mpmath.mpf` instead of ``inf``.
    """
    if not is_native(ctx):
        return value * ctx.exp(log_scale)
    if value == 0:
        return 0.0 * value
    if float(log_scale) + math.log(abs(value)) < 700.0:
        return value * math.exp(log_scale)
    wide = _mp_context(16)
    return wide.convert(value) * wide.exp(log_scale)
