"""Laguerre Dirichlet kernels and their partial derivatives on the diagonal.

Indexing: :func:`kernel_xy` takes ``n`` and returns K_n(x, y), the sum over
degrees 0..n.  Every diagonal routine (:func:`kernel_cc`,
:func:`kernel_partials_cc`, :func:`confluent_sums`) takes ``n`` and returns
K_{n-1}(c, c) and friends, i.e. sums over degrees 0..n-1, because that is
the form the Sobolev-type connection formulas consume.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import accumulate
from typing import Any, Literal

from .laguerre import _alpha, _check_degree, orthonormal_derivative_values, orthonormal_values
from .numerics import ConsistencyError, DomainError, context, digits_of, to_scalar

__all__ = [
    "KernelValuesCC",
    "KernelAsymptotics",
    "ConfluentSums",
    "kernel_xy",
    "kernel_cc",
    "kernel_partials_cc",
    "kernel_asymptotic_prediction",
    "confluent_sums",
]

Method = Literal["summed", "closed_form"]


@dataclass(frozen=True)
class KernelValuesCC:
    """K_{n-1}(c,c) and its (0,1), (1,0), (1,1) partial derivatives."""

    n: int
    K: Any
    K01: Any
    K10: Any
    K11: Any
    method: str


@dataclass(frozen=True)
class KernelAsymptotics:
    K_pred: Any
    K01_pred: Any
    K11_pred: Any


@dataclass(frozen=True)
class ConfluentSums:
    """Orthonormal data at one point c and running kernel sums.

    ``u[k] = l_k(c)``, ``v[k] = l_k'(c)`` for k = 0..n_max, and
    ``K[n] = sum_{k<n} u_k^2`` (so ``K[n]`` is K_{n-1}(c,c)); ``K01`` and
    ``K11`` are the analogous sums of ``u*v`` and ``v*v``.
    """

    alpha: Any
    c: Any
    u: list
    v: list
    K: list
    K01: list
    K11: list


def confluent_sums(n_max: int, alpha: Any, c: Any, prec=None) -> ConfluentSums:
    ctx = context(prec)
    n_max = _check_degree(n_max, "n_max")
    a = _alpha(ctx, alpha, strict=True)
    cv = ctx.re(to_scalar(ctx, c, "c"))
    return _confluent_sums(ctx, n_max, a, cv)


def _confluent_sums(ctx, n_max: int, a, c) -> ConfluentSums:
    u = orthonormal_values(ctx, n_max, a, c)
    v = orthonormal_derivative_values(ctx, n_max, a, c, order=1)
    zero = 0 * u[0]
    K = list(accumulate((x * x for x in u[:n_max]), initial=zero))
    K01 = list(accumulate((x * y for x, y in zip(u[:n_max], v)), initial=zero))
    K11 = list(accumulate((y * y for y in v[:n_max]), initial=zero))
    return ConfluentSums(a, c, u, v, K, K01, K11)


def _closed_form(ctx, n: int, a, c):
    # Taylor coefficients of the Christoffel-Darboux quotient at x = y = c,
    # with every derivative scaled by the norm of its own polynomial.
    p = [orthonormal_derivative_values(ctx, n, a, c, j)[n] for j in range(4)]
    q = [orthonormal_derivative_values(ctx, n - 1, a, c, j)[n - 1] for j in range(4)]
    r = ctx.sqrt(n * (n + a))
    K = r * (p[1] * q[0] - q[1] * p[0])
    K01 = r * (q[0] * p[2] - p[0] * q[2]) / 2
    K11 = r * (q[0] * p[3] + 3 * q[1] * p[2] - p[0] * q[3] - 3 * p[1] * q[2]) / 6
    return K, K01, K11


def kernel_partials_cc(n: int, alpha: Any, c: Any, method: Method = "summed", prec=None) -> KernelValuesCC:
    """K_{n-1}(c,c), K^{(0,1)}, K^{(1,0)}, K^{(1,1)} at (c, c).

    ``summed`` adds orthonormal terms l_k(c) l_k'(c) etc. for k < n;
    ``closed_form`` uses the Christoffel-Darboux derivative formulas in
    L_n and L_{n-1} up to third derivatives, scaled to avoid overflow.
    """
    ctx = context(prec)
    n = _check_degree(n, "n", 1)
    a = _alpha(ctx, alpha, strict=True)
    cv = ctx.re(to_scalar(ctx, c, "c"))
    if method == "summed":
        s = _confluent_sums(ctx, n, a, cv)
        K, K01, K11 = s.K[n], s.K01[n], s.K11[n]
    elif method == "closed_form":
        K, K01, K11 = _closed_form(ctx, n, a, cv)
    else:
        raise DomainError(f"unknown kernel method {method!r}")
    return KernelValuesCC(n, K, K01, K01, K11, method)


def kernel_cc(n: int, alpha: Any, c: Any, prec=None):
    """K_{n-1}(c,c) by orthonormal summation.

    For n <= 60 the confluent Christoffel-Darboux form is evaluated as a
    cross-check and a disagreement raises :class:`ConsistencyError`.
    """
    ctx = context(prec)
    n = _check_degree(n, "n", 1)
    a = _alpha(ctx, alpha, strict=True)
    cv = ctx.re(to_scalar(ctx, c, "c"))
    u = orthonormal_values(ctx, n - 1, a, cv)
    K = ctx.fsum(x * x for x in u)
    if n <= 60:
        closed = _closed_form(ctx, n, a, cv)[0]
        tol = 10.0 ** (-(digits_of(ctx) - 10))
        if abs(closed - K) > tol * abs(K):
            raise ConsistencyError(f"confluent kernel mismatch at n={n}: {K} vs {closed}")
    return K


def kernel_xy(n: int, alpha: Any, x: Any, y: Any, prec=None, method: str = "christoffel_darboux"):
    """K_n(x, y) = sum_{k<=n} L_k(x) L_k(y) / ||L_k||^2 for real x, y.

    ``christoffel_darboux`` (default) uses the two-term quotient, switching
    to the confluent form when x == y; ``summed`` adds the terms directly.
    Arguments are put in a canonical order, so the result is exactly
    symmetric in (x, y).
    """
    ctx = context(prec)
    n = _check_degree(n)
    a = _alpha(ctx, alpha, strict=True)
    xv = ctx.re(to_scalar(ctx, x, "x"))
    yv = ctx.re(to_scalar(ctx, y, "y"))
    if yv < xv:
        xv, yv = yv, xv
    if method == "summed":
        lx = orthonormal_values(ctx, n, a, xv)
        ly = orthonormal_values(ctx, n, a, yv)
        return ctx.fsum(p * q for p, q in zip(lx, ly))
    if method != "christoffel_darboux":
        raise DomainError(f"unknown kernel method {method!r}")
    r = ctx.sqrt((n + 1) * (n + 1 + a))
    if xv == yv:
        lv = orthonormal_values(ctx, n + 1, a, xv)
        dv = orthonormal_derivative_values(ctx, n + 1, a, xv, 1)
        return r * (dv[n + 1] * lv[n] - dv[n] * lv[n + 1])
    lx = orthonormal_values(ctx, n + 1, a, xv)
    ly = orthonormal_values(ctx, n + 1, a, yv)
    return r * (lx[n + 1] * ly[n] - lx[n] * ly[n + 1]) / (xv - yv)


def kernel_asymptotic_prediction(n: int, alpha: Any, c: Any, prec=None) -> KernelAsymptotics:
    """Large-n magnitudes of K_{n-1}(c,c), K^{(0,1)}_{n-1}(c,c), K^{(1,1)}_{n-1}(c,c)."""
    ctx = context(prec)
    n = _check_degree(n, "n", 1)
    a = _alpha(ctx, alpha, strict=True)
    cv = ctx.re(to_scalar(ctx, c, "c"))
    if cv <= 0:
        raise DomainError(f"the kernel asymptotics need c > 0, got {c!r}")
    base = ctx.exp(cv) * ctx.power(cv, -a - ctx.mpf(0.5)) / ctx.pi
    K_pred = base * ctx.sqrt(n)
    K11_pred = base * ctx.power(n, ctx.mpf(1.5)) / (3 * cv)
    return KernelAsymptotics(K_pred, K_pred, K11_pred)

