"""Gauss-Laguerre rules (Golub-Welsch) and exact moments of x^alpha e^-x."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, Callable

from .laguerre import _alpha, _check_degree
from .numerics import (
    ConvergenceError,
    DegreeOverflowError,
    context,
    digits_of,
    guard_context,
    is_native,
)

__all__ = [
    "QuadratureRule",
    "IntegrandError",
    "gauss_laguerre",
    "integrate",
    "weight_moment",
    "tridiagonal_eigen_first_row",
]

MAX_SWEEPS = 60


class IntegrandError(ArithmeticError):
    def __init__(self, index: int, node, cause: BaseException):
        self.index = index
        self.node = node
        super().__init__(f"integrand failed at node {index} (x={node}): {cause!r}")


@dataclass(frozen=True)
class QuadratureRule:
    alpha: Any
    m: int
    nodes: tuple
    weights: tuple
    digits: int

    @property
    def exact_degree(self) -> int:
        return 2 * self.m - 1


def tridiagonal_eigen_first_row(ctx, diag: list, off: list, rtol=None):
    """Eigenvalues and first eigenvector components of a symmetric tridiagonal matrix.

    Implicit-shift QL with Wilkinson-type shifts; only the first row of the
    eigenvector matrix is accumulated.  ``off[i]`` couples rows i and i+1.
    Deflation happens when ``|off[i]| <= rtol * (|d_i| + |d_{i+1}|)``.
    """
    n = len(diag)
    d = list(diag)
    e = list(off) + [0 * d[0]]
    z = [0 * d[0] for _ in range(n)]
    z[0] = ctx.one
    if rtol is None:
        rtol = ctx.mpf(10) ** (-(digits_of(ctx) - 4)) if not is_native(ctx) else 4 * 2.0 ** -52
    hypot = math.hypot if is_native(ctx) else ctx.hypot
    for l in range(n):
        sweeps = 0
        while True:
            m = l
            while m < n - 1:
                if abs(e[m]) <= rtol * (abs(d[m]) + abs(d[m + 1])):
                    break
                m += 1
            if m == l:
                break
            sweeps += 1
            if sweeps > MAX_SWEEPS:
                raise ConvergenceError(l, f"QL iteration stuck at off-diagonal {l}")
            g = (d[l + 1] - d[l]) / (2 * e[l])
            r = hypot(g, 1)
            g = d[m] - d[l] + e[l] / (g + (r if g >= 0 else -r))
            s = c = ctx.one
            p = 0 * d[0]
            underflow = False
            for i in range(m - 1, l - 1, -1):
                f = s * e[i]
                b = c * e[i]
                r = hypot(f, g)
                e[i + 1] = r
                if r == 0:
                    d[i + 1] -= p
                    e[m] = 0 * r
                    underflow = True
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
                f = z[i + 1]
                z[i + 1] = s * z[i] + c * f
                z[i] = c * z[i] - s * f
            if underflow:
                continue
            d[l] -= p
            e[l] = g
            e[m] = 0 * g
    order = sorted(range(n), key=lambda k: d[k])
    return [d[k] for k in order], [z[k] for k in order]


def gauss_laguerre(m: int, alpha: Any, prec=None) -> QuadratureRule:
    """m-point Gauss rule for the weight x^alpha e^{-x} on (0, inf).

    Nodes are the eigenvalues of the Jacobi matrix (diagonal 2k+alpha+1,
    off-diagonal sqrt((k+1)(k+1+alpha))); weights are Gamma(alpha+1) times
    the squared first eigenvector components.

    The iteration runs with doubled digits: eigenvector components are only
    accurate in absolute terms, and the small weights at the largest nodes
    would otherwise lose most of their relative precision.
    """
    ctx = context(prec)
    m = _check_degree(m, "m", 1)
    a = _alpha(ctx, alpha, strict=True)
    wide = guard_context(ctx)
    aw = wide.convert(a)
    diag = [2 * k + aw + 1 for k in range(m)]
    off = [wide.sqrt((k + 1) * (k + 1 + aw)) for k in range(m - 1)]
    nodes, first = tridiagonal_eigen_first_row(wide, diag, off)
    mass = wide.gamma(aw + 1)
    weights = [ctx.convert(mass * v * v) for v in first]
    nodes = [ctx.convert(x) for x in nodes]
    return QuadratureRule(a, m, tuple(nodes), tuple(weights), digits_of(ctx))


def integrate(f: Callable[[Any], Any], rule: QuadratureRule):
    """Sum of w_i f(x_i) over the rule."""
    total = 0 * rule.weights[0]
    for i, (x, w) in enumerate(zip(rule.nodes, rule.weights)):
        try:
            total += w * f(x)
        except Exception as exc:  # noqa: BLE001 - re-raised with the node index
            raise IntegrandError(i, x, exc) from exc
    return total


def weight_moment(k: int, alpha: Any, prec=None):
    """Gamma(alpha + k + 1), the k-th moment of x^alpha e^{-x}."""
    ctx = context(prec)
    k = _check_degree(k, "k")
    a = _alpha(ctx, alpha, strict=True)
    if is_native(ctx):
        try:
            return math.exp(math.lgamma(a + k + 1))
        except OverflowError as exc:
            raise DegreeOverflowError(k, f"moment {k} overflows native floats") from exc
    return ctx.gamma(a + k + 1)
