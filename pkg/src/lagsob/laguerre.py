"""Classical Laguerre polynomials: monic and orthonormal evaluation.

Monic polynomials satisfy

    x L_k(x) = L_{k+1}(x) + beta_k L_k(x) + gamma_k L_{k-1}(x),
    beta_k = 2k + alpha + 1,   gamma_k = k (k + alpha),

with squared norms Gamma(k+1) Gamma(k+alpha+1) for the weight
x**alpha * exp(-x) on (0, inf).  The orthonormal values
l_k = L_k / ||L_k|| obey the symmetric form of the same recurrence and stay
O(1) in magnitude, which is what the large-degree code paths use.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, Literal, NamedTuple, Sequence

from .numerics import (
    DegreeOverflowError,
    DomainError,
    SingularityError,
    context,
    is_native,
    log_gamma,
    to_scalar,
)

__all__ = [
    "RecurrenceCoeffs",
    "LaguerreSeq",
    "OscillatoryPhase",
    "FejerEstimate",
    "recurrence_coeffs",
    "eval_monic_seq",
    "eval_orthonormal_seq",
    "eval_ratio",
    "ratio_seq",
    "derivative_monic",
    "log_norm_sq",
    "oscillatory_phase",
    "perron_estimate",
    "log_perron_estimate",
    "fejer_estimate",
    "monic_coefficients",
    "orthonormal_values",
    "orthonormal_derivative_values",
]


class RecurrenceCoeffs(NamedTuple):
    beta_n: Any
    gamma_n: Any


@dataclass(frozen=True)
class LaguerreSeq:
    """Values of L_0..L_n at one point.

    ``log_norms[k]`` is ``0.5*log(Gamma(k+1) Gamma(k+alpha+1))`` and is
    ``None`` when ``alpha <= -1`` (no finite norm).
    """

    basis: Literal["monic", "orthonormal"]
    alpha: Any
    x: Any
    values: tuple
    log_norms: tuple | None


class OscillatoryPhase(NamedTuple):
    sigma: Any
    phase: Any


@dataclass(frozen=True)
class FejerEstimate:
    """Leading Fejer term for the monic polynomial, kept in log form.

    The estimate equals ``sign * exp(log_amplitude) * cos(phase.phase)``.
    """

    n: int
    log_amplitude: Any
    sign: int
    phase: OscillatoryPhase

    def value(self):
        try:
            amp = math.exp(float(self.log_amplitude))
        except OverflowError as exc:
            raise DegreeOverflowError(self.n, "Fejer amplitude overflows native floats") from exc
        return self.sign * amp * math.cos(float(self.phase.phase))


def _alpha(ctx, alpha, strict: bool):
    a = to_scalar(ctx, alpha, "alpha")
    if ctx.im(a) != 0:
        raise DomainError("alpha must be real")
    a = ctx.re(a)
    if strict and a <= -1:
        raise DomainError(f"alpha must exceed -1, got {alpha!r}")
    return a


def _check_degree(n: int, name: str = "n", minimum: int = 0) -> int:
    if int(n) != n or n < minimum:
        raise DomainError(f"{name} must be an integer >= {minimum}, got {n!r}")
    return int(n)


def recurrence_coeffs(n: int, alpha: Any, prec=None) -> RecurrenceCoeffs:
    ctx = context(prec)
    n = _check_degree(n)
    a = _alpha(ctx, alpha, strict=False)
    return RecurrenceCoeffs(2 * n + a + 1, n * (n + a))


def _log_norms(ctx, n_max: int, a) -> tuple | None:
    if a <= -1:
        return None
    if is_native(ctx):
        lg = math.lgamma
        return tuple(0.5 * (lg(k + 1) + lg(k + a + 1)) for k in range(n_max + 1))
    return tuple((ctx.loggamma(k + 1) + ctx.loggamma(k + a + 1)) / 2 for k in range(n_max + 1))


def _monic_values(ctx, n_max: int, a, x) -> list:
    vals = [ctx.one, x - (a + 1)]
    native = is_native(ctx)
    for k in range(1, n_max):
        nxt = (x - (2 * k + a + 1)) * vals[k] - k * (k + a) * vals[k - 1]
        if native and (math.isinf(abs(nxt)) or nxt != nxt):
            raise DegreeOverflowError(k + 1, f"monic Laguerre value overflows at degree {k + 1}")
        vals.append(nxt)
    return vals[: n_max + 1]


def eval_monic_seq(n_max: int, alpha: Any, x: Any, prec=None) -> LaguerreSeq:
    """Monic values L_0(x)..L_{n_max}(x) by forward recurrence.

    In native precision this raises :class:`DegreeOverflowError` instead of
    returning infinities; use :func:`eval_orthonormal_seq` or
    :func:`eval_ratio` for large degrees.
    """
    ctx = context(prec)
    n_max = _check_degree(n_max, "n_max")
    a = _alpha(ctx, alpha, strict=False)
    xv = to_scalar(ctx, x, "x")
    vals = _monic_values(ctx, n_max, a, xv)
    return LaguerreSeq("monic", a, xv, tuple(vals), _log_norms(ctx, n_max, a))


def orthonormal_values(ctx, n_max: int, a, x) -> list:
    """Orthonormal values l_0..l_{n_max} at ``x`` (already converted to ``ctx``)."""
    sqrt = math.sqrt if is_native(ctx) else ctx.sqrt
    if is_native(ctx):
        l0 = math.exp(-0.5 * math.lgamma(a + 1))
    else:
        l0 = ctx.exp(-ctx.loggamma(a + 1) / 2)
    out = [l0]
    prev, cur = 0 * l0, l0
    a_k = 0 * l0  # sqrt(gamma_k)
    for k in range(n_max):
        a_next = sqrt((k + 1) * (k + 1 + a))
        nxt = ((x - (2 * k + a + 1)) * cur - a_k * prev) / a_next
        prev, cur, a_k = cur, nxt, a_next
        out.append(cur)
    return out


def orthonormal_derivative_values(ctx, n_max: int, a, x, order: int = 1) -> list:
    """Derivatives d^j/dx^j l_k(x) for k = 0..n_max, with j = ``order``.

    Uses l_k^{(j)} = sqrt(k (k-1) ... (k-j+1)) * l_{k-j}^{(alpha+j)}, which
    follows from Hahn's identity and the norm ratio of the shifted family.
    """
    if order == 0:
        return orthonormal_values(ctx, n_max, a, x)
    sqrt = math.sqrt if is_native(ctx) else ctx.sqrt
    shifted = orthonormal_values(ctx, max(n_max - order, 0), a + order, x)
    zero = 0 * shifted[0]
    out = [zero] * min(order, n_max + 1)
    for k in range(order, n_max + 1):
        falling = 1
        for i in range(order):
            falling *= k - i
        out.append(sqrt(falling) * shifted[k - order])
    return out


def eval_orthonormal_seq(n_max: int, alpha: Any, x: Any, prec=None) -> LaguerreSeq:
    """Orthonormal values l_k(x) = L_k(x)/||L_k|| for k = 0..n_max."""
    ctx = context(prec)
    n_max = _check_degree(n_max, "n_max")
    a = _alpha(ctx, alpha, strict=True)
    xv = to_scalar(ctx, x, "x")
    vals = orthonormal_values(ctx, n_max, a, xv)
    return LaguerreSeq("orthonormal", a, xv, tuple(vals), _log_norms(ctx, n_max, a))


def _off_positive_axis(ctx, xv, name: str = "x"):
    if ctx.im(xv) == 0 and ctx.re(xv) >= 0:
        raise DomainError(f"{name} must lie off the positive real semiaxis, got {xv}")
    return ctx.mpc(xv)


def ratio_seq(ctx, n_max: int, a, x) -> list:
    """Ratios L_{k-1}(x)/L_k(x) for k = 0..n_max (index 0 holds ``None``)."""
    r = x - (a + 1)
    out = [None]
    for k in range(1, n_max + 1):
        if r == 0:
            raise SingularityError(f"L_{k} vanishes at x={x}")
        out.append(1 / r)
        r = (x - (2 * k + a + 1)) - k * (k + a) / r
    return out


def eval_ratio(n: int, alpha: Any, x: Any, prec=None):
    """L_{n-1}(x)/L_n(x) for x off [0, inf), free of overflow for any n."""
    ctx = context(prec)
    n = _check_degree(n, "n", 1)
    a = _alpha(ctx, alpha, strict=False)
    xv = _off_positive_axis(ctx, to_scalar(ctx, x, "x"))
    return ratio_seq(ctx, n, a, xv)[n]


def derivative_monic(n: int, k: int, alpha: Any, x: Any, prec=None):
    """k-th derivative of the monic L_n, via n!/(n-k)! * L_{n-k}^{(alpha+k)}."""
    ctx = context(prec)
    n = _check_degree(n)
    k = _check_degree(k, "k")
    a = _alpha(ctx, alpha, strict=False)
    xv = to_scalar(ctx, x, "x")
    if k > n:
        return 0 * xv
    falling = 1
    for i in range(k):
        falling *= n - i
    return falling * _monic_values(ctx, n - k, a + k, xv)[n - k]


def log_norm_sq(n: int, alpha: Any, prec=None):
    """log(Gamma(n+1) Gamma(n+alpha+1)), the log squared norm of the monic L_n."""
    ctx = context(prec)
    n = _check_degree(n)
    a = _alpha(ctx, alpha, strict=True)
    return log_gamma(n + 1, prec) + log_gamma(n + a + 1, prec)


def log_perron_estimate(n: int, alpha: Any, x: Any, prec=None):
    """Complex log of the leading Perron term for L_n^{(alpha)}(x).

    Real part is the log-amplitude, imaginary part the phase.  The branch of
    (-x)**(1/2) is the principal one, real and positive for x < 0.
    """
    ctx = context(prec)
    n = _check_degree(n, "n", 1)
    a = _alpha(ctx, alpha, strict=False)
    xv = _off_positive_axis(ctx, to_scalar(ctx, x, "x"))
    mx = -xv
    return (
        ctx.log(ctx.mpf(0.5))
        - ctx.log(ctx.pi) / 2
        + xv / 2
        + (-a / 2 - ctx.mpf(0.25)) * ctx.log(mx)
        + (a / 2 - ctx.mpf(0.25)) * ctx.log(n)
        + 2 * ctx.sqrt(n * mx)
    )


def perron_estimate(n: int, alpha: Any, x: Any, prec=None):
    """Leading Perron term for L_n^{(alpha)}(x) off the positive semiaxis."""
    ctx = context(prec)
    return ctx.exp(log_perron_estimate(n, alpha, x, prec))


def oscillatory_phase(n: int, alpha: Any, x: Any, prec=None) -> OscillatoryPhase:
    """sigma(x) = pi^{-1/2} e^{x/2} x^{-alpha/2-1/4} and 2 sqrt(nx) - alpha pi/2 - pi/4."""
    ctx = context(prec)
    n = _check_degree(n)
    a = _alpha(ctx, alpha, strict=False)
    xv = ctx.re(to_scalar(ctx, x, "x"))
    if xv <= 0:
        raise DomainError(f"the oscillatory phase needs x > 0, got {x!r}")
    sigma = ctx.exp(xv / 2) * ctx.power(xv, -a / 2 - ctx.mpf(0.25)) / ctx.sqrt(ctx.pi)
    phase = 2 * ctx.sqrt(n * xv) - a * ctx.pi / 2 - ctx.pi / 4
    return OscillatoryPhase(sigma, phase)


def fejer_estimate(n: int, alpha: Any, x: Any, prec=None) -> FejerEstimate:
    """Leading Fejer term (-1)^n n! n^{alpha/2-1/4} sigma(x) cos(phi_n(x)) for x > 0."""
    ctx = context(prec)
    n = _check_degree(n, "n", 1)
    a = _alpha(ctx, alpha, strict=False)
    ph = oscillatory_phase(n, a, x, prec)
    log_amp = log_gamma(n + 1, prec) + (a / 2 - ctx.mpf(0.25)) * ctx.log(n) + ctx.log(ph.sigma)
    return FejerEstimate(n, log_amp, -1 if n % 2 else 1, ph)


def monic_coefficients(n_max: int, alpha: Any, ctx) -> list[list]:
    """Power-basis coefficients (ascending) of the monic L_0..L_{n_max}.

    The recurrence only adds terms of equal sign, so coefficients are
    accurate to a few ulps of ``ctx``.
    """
    a = alpha
    rows: list[list] = [[ctx.one]]
    if n_max >= 1:
        rows.append([-(a + 1), ctx.one])
    for k in range(1, n_max):
        b = 2 * k + a + 1
        g = k * (k + a)
        cur, prev = rows[k], rows[k - 1]
        nxt = [0 * ctx.one] * (k + 2)
        for i, v in enumerate(cur):
            nxt[i + 1] += v
            nxt[i] -= b * v
        for i, v in enumerate(prev):
            nxt[i] -= g * v
        rows.append(nxt)
    return rows


def horner(coeffs: Sequence, x):
    acc = 0 * x
    for cf in reversed(coeffs):
        acc = acc * x + cf
    return acc
