"""Monic polynomials orthogonal for a Laguerre-Sobolev inner product.

The inner product is

    <f, g>_S = int_0^inf f g x^alpha e^{-x} dx + M f(c) g(c) + N f'(c) g'(c)

with alpha > -1, c > 0 and M, N >= 0.  Its monic orthogonal polynomials
S_n are computed from the Laguerre kernels at (c, c): the two values S_n(c)
and S_n'(c) solve a 2x2 linear system, and everything else (connection
coefficients, norms, values at any x) follows from them.

All per-degree quantities are carried in orthonormal scaling: ``sigma`` is
S_n(c)/||L_n|| and ``tau`` is S_n'(c)/||L_n||, where L_n is the monic
Laguerre polynomial.  The connection coefficients are scale-free already.
Monic values are recovered through log-norm bookkeeping, so sweeps to very
large degrees stay finite in native floats.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Any, NamedTuple, Sequence

from .kernels import _confluent_sums
from .laguerre import (
    _alpha,
    _check_degree,
    _log_norms,
    _monic_values,
    _off_positive_axis,
    horner,
    monic_coefficients,
    orthonormal_derivative_values,
    orthonormal_values,
    ratio_seq,
)
from .numerics import (
    SWEEP_DIGITS,
    ConsistencyError,
    DegreeOverflowError,
    DomainError,
    context,
    digits_of,
    guard_context,
    scaled_exp,
    to_scalar,
)

__all__ = [
    "SobolevParams",
    "ChristoffelParams",
    "ConnectionCoeffs",
    "SobolevValuesAtC",
    "SobolevFamily",
    "SobolevPolynomial",
    "CoeffAsymptoticsRow",
    "sobolev_family",
    "inner_product",
    "inner_product_matrix",
    "christoffel_inner",
    "sobolev_values_at_c",
    "connection_coeffs",
    "eval_sobolev",
    "eval_sobolev_derivative",
    "sobolev_norm_sq",
    "log_sobolev_norm_sq",
    "sobolev_coefficient_rows",
    "coeff_asymptotics",
    "relative_asymptotics",
    "relative_asymptotics_seq",
    "switch_radius",
]

_CHECK_CTX = context(34)


def _real(value, name):
    v = to_scalar(_CHECK_CTX, value, name)
    if _CHECK_CTX.im(v) != 0:
        raise DomainError(f"{name} must be real, got {value!r}")
    return _CHECK_CTX.re(v)


@dataclass(frozen=True)
class SobolevParams:
    """Parameters (alpha, c, M, N) of the inner product, validated on creation.

    Values are stored as given (ints, floats, strings or mpf) and converted
    to the working context on use, so one instance serves every precision.
    """

    alpha: Any
    c: Any
    M: Any = 0
    N: Any = 0

    def __post_init__(self) -> None:
        if not _real(self.alpha, "alpha") > -1:
            raise DomainError(f"alpha must exceed -1, got {self.alpha!r}")
        if not _real(self.c, "c") > 0:
            raise DomainError(f"c must be positive, got {self.c!r}")
        if _real(self.M, "M") < 0 or _real(self.N, "N") < 0:
            raise DomainError(f"M and N must be non-negative, got M={self.M!r}, N={self.N!r}")

    @property
    def classical(self) -> bool:
        """True when both masses vanish and the inner product is the Laguerre one."""
        return _real(self.M, "M") == 0 and _real(self.N, "N") == 0

    def scalars(self, ctx):
        return tuple(ctx.re(ctx.convert(v)) for v in (self.alpha, self.c, self.M, self.N))


class ChristoffelParams(NamedTuple):
    """Weight exponent and shift for (x - c)^k x^alpha e^{-x}; c may be any real."""

    alpha: Any
    c: Any


class ConnectionCoeffs(NamedTuple):
    """(x-c)^2 S_n = ((x-c)^2 + A1 (x-c) + A0) L_n + (B1 (x-c) + B0) L_{n-1}."""

    n: int
    A1: Any
    A0: Any
    B1: Any
    B0: Any


class SobolevValuesAtC(NamedTuple):
    n: int
    S_c: Any
    dS_c: Any
    denom: Any


class CoeffAsymptoticsRow(NamedTuple):
    n: int
    A1: Any
    A0_n_quarter: Any
    B1_over_n: Any
    B0_n_minus_quarter: Any
    B0_n_minus_three_quarters: Any


@dataclass(frozen=True)
class SobolevFamily:
    """Normalized data for S_0..S_{n_max} at one parameter set and precision.

    Index n of every list refers to degree n.  ``sigma[n]`` and ``tau[n]``
    are S_n(c) and S_n'(c) divided by ||L_n||; ``rho[n]`` is
    ||S_n||_S^2 / ||L_n||^2; ``log_h[n]`` is log ||L_n||.
    """

    params: SobolevParams
    digits: int
    n_max: int
    alpha: Any
    c: Any
    M: Any
    N: Any
    u: list
    v: list
    K: list
    K01: list
    K11: list
    denom: list
    sigma: list
    tau: list
    rho: list
    A1: list
    A0: list
    B1: list
    B0: list
    log_h: tuple

    @property
    def ctx(self):
        return context(self.digits)

    def _check(self, n: int) -> int:
        n = _check_degree(n)
        if n > self.n_max:
            raise DomainError(f"degree {n} beyond this family (n_max={self.n_max})")
        return n

    def connection(self, n: int) -> ConnectionCoeffs:
        n = self._check(n)
        return ConnectionCoeffs(n, self.A1[n], self.A0[n], self.B1[n], self.B0[n])

    def values_at_c(self, n: int) -> SobolevValuesAtC:
        n = self._check(n)
        ctx = self.ctx
        return SobolevValuesAtC(
            n,
            scaled_exp(ctx, self.sigma[n], self.log_h[n]),
            scaled_exp(ctx, self.tau[n], self.log_h[n]),
            self.denom[n],
        )

    def log_norm_sq(self, n: int):
        n = self._check(n)
        rho = self.rho[n]
        if not rho > 0:
            raise ConsistencyError(f"non-positive Sobolev norm at degree {n}: ratio {rho}")
        log = math.log if self.digits <= 17 else self.ctx.log
        return 2 * self.log_h[n] + log(rho)

    def norm_sq(self, n: int):
        n = self._check(n)
        if not self.rho[n] > 0:
            raise ConsistencyError(f"non-positive Sobolev norm at degree {n}: ratio {self.rho[n]}")
        return scaled_exp(self.ctx, self.rho[n], 2 * self.log_h[n])

    def eval_normalized(self, n: int, x):
        """S_n(x)/||L_n|| by the quotient form, or the kernel form near c."""
        n = self._check(n)
        ctx = self.ctx
        if n == 0:
            return self.u[0] + 0 * x
        t = x - self.c
        if abs(t) > switch_radius(self.c):
            l = orthonormal_values(ctx, n, self.alpha, x)
            hr = ctx.sqrt(n * (n + self.alpha))
            A = t * t + self.A1[n] * t + self.A0[n]
            B = self.B1[n] * t + self.B0[n]
            return (A * l[n] + B * l[n - 1] / hr) / (t * t)
        return self._kernel_form(n, orthonormal_values(ctx, n, self.alpha, x))

    def eval_all_normalized(self, n_max: int, x) -> list:
        """S_k(x)/||L_k|| for k = 0..n_max by the kernel form, in one pass."""
        n_max = self._check(n_max)
        l = orthonormal_values(self.ctx, n_max, self.alpha, x)
        out = []
        k0 = k1 = 0 * l[0]
        for k in range(n_max + 1):
            out.append(l[k] - self.M * self.sigma[k] * k0 - self.N * self.tau[k] * k1)
            k0 += l[k] * self.u[k]
            k1 += l[k] * self.v[k]
        return out

    def eval_derivative_normalized(self, n: int, x):
        """S_n'(x)/||L_n|| from the kernel form."""
        n = self._check(n)
        ctx = self.ctx
        if n == 0:
            return 0 * x
        return self._kernel_form(n, orthonormal_derivative_values(ctx, n, self.alpha, x, 1))

    def _kernel_form(self, n, l):
        ctx = self.ctx
        # K_{n-1}(x, c) and its derivative in the second argument, orthonormal terms
        k0 = ctx.fdot(l[:n], self.u[:n])
        k1 = ctx.fdot(l[:n], self.v[:n])
        return l[n] - self.M * self.sigma[n] * k0 - self.N * self.tau[n] * k1


def switch_radius(c) -> float:
    """Radius around c inside which evaluation uses the kernel form."""
    return 1e-3 * max(1.0, abs(float(c)))


def _build_family(params: SobolevParams, n_max: int, digits: int) -> SobolevFamily:
    ctx = context(digits)
    a, c, M, N = params.scalars(ctx)
    s = _confluent_sums(ctx, n_max, a, c)
    sqrt = ctx.sqrt
    zero = 0 * s.u[0]
    classical = M == 0 and N == 0
    denom, sigma, tau, rho, A1, A0, B1, B0 = ([] for _ in range(8))
    for n in range(n_max + 1):
        un, vn = s.u[n], s.v[n]
        K, K01, K11 = s.K[n], s.K01[n], s.K11[n]
        D = (1 + M * K) * (1 + N * K11) - M * N * K01 * K01
        sig = (un * (1 + N * K11) - N * K01 * vn) / D
        ta = ((1 + M * K) * vn - M * K01 * un) / D
        denom.append(D)
        sigma.append(sig)
        tau.append(ta)
        if classical or n == 0:
            rho.append(1 + M * sig * un + N * ta * vn)
            A1.append(zero)
            A0.append(zero)
            B1.append(zero)
            B0.append(zero)
            continue
        g = n * (n + a)
        hr = sqrt(g)
        P = M * sig * un + N * ta * vn
        rho.append(1 + P)
        A1.append(-hr * (M * sig * s.u[n - 1] + N * ta * s.v[n - 1]))
        A0.append(-hr * N * ta * s.u[n - 1])
        B1.append(g * P)
        B0.append(g * N * ta * un)
    return SobolevFamily(
        params, digits, n_max, a, c, M, N, s.u, s.v, s.K, s.K01, s.K11,
        denom, sigma, tau, rho, A1, A0, B1, B0, _log_norms(ctx, n_max, a),
    )


@lru_cache(maxsize=64)
def _cached_family(params: SobolevParams, n_max: int, digits: int) -> SobolevFamily:
    return _build_family(params, n_max, digits)


def sobolev_family(params: SobolevParams, n_max: int, prec=None) -> SobolevFamily:
    """The memoized :class:`SobolevFamily` covering degrees 0..n_max.

    Small requests are rounded up to a multiple of 64 so repeated
    single-degree calls share one table.
    """
    n_max = _check_degree(n_max, "n_max")
    digits = digits_of(context(prec))
    return _cached_family(params, max(64, -(-n_max // 64) * 64), digits)


def sobolev_values_at_c(n: int, params: SobolevParams, prec=None) -> SobolevValuesAtC:
    """S_n(c), S_n'(c) and the shared determinant of the 2x2 system."""
    n = _check_degree(n, "n", 1)
    return sobolev_family(params, n, prec).values_at_c(n)


def connection_coeffs(n: int, params: SobolevParams, prec=None) -> ConnectionCoeffs:
    n = _check_degree(n, "n", 1)
    return sobolev_family(params, n, prec).connection(n)


def sobolev_norm_sq(n: int, params: SobolevParams, prec=None):
    """||S_n||_S^2 = ||L_n||^2 + B1 ||L_{n-1}||^2."""
    n = _check_degree(n)
    return sobolev_family(params, n, prec).norm_sq(n)


def log_sobolev_norm_sq(n: int, params: SobolevParams, prec=None):
    n = _check_degree(n)
    return sobolev_family(params, n, prec).log_norm_sq(n)


def eval_sobolev(n: int, params: SobolevParams, x: Any, prec=None):
    """Monic S_n(x) for real or complex x."""
    n = _check_degree(n)
    fam = sobolev_family(params, n, prec)
    xv = to_scalar(fam.ctx, x, "x")
    if params.classical:
        # exact Laguerre values; avoids the quotient form's division by (x-c)^2
        return _monic_values(fam.ctx, n, fam.alpha, xv)[n]
    return scaled_exp(fam.ctx, fam.eval_normalized(n, xv), fam.log_h[n])


def eval_sobolev_derivative(n: int, params: SobolevParams, x: Any, prec=None):
    n = _check_degree(n)
    fam = sobolev_family(params, n, prec)
    xv = to_scalar(fam.ctx, x, "x")
    return scaled_exp(fam.ctx, fam.eval_derivative_normalized(n, xv), fam.log_h[n])


# ---------------------------------------------------------------------------
# power basis and the moments engine


def _poly_mul(f: Sequence, g: Sequence) -> list:
    out = [0 * f[0]] * (len(f) + len(g) - 1)
    for i, fi in enumerate(f):
        if fi == 0:
            continue
        for j, gj in enumerate(g):
            out[i + j] += fi * gj
    return out


def _poly_deriv(f: Sequence) -> list:
    if len(f) <= 1:
        return [0 * f[0]]
    return [k * f[k] for k in range(1, len(f))]


def _shift_power(ctx, c, k: int) -> list:
    """Ascending coefficients of (x - c)^k."""
    out = [ctx.one]
    for _ in range(k):
        out = _poly_mul(out, [-c, ctx.one])
    return out


_MOMENTS: dict = {}


def _weight_moments(ctx, a, count: int) -> list:
    key = (digits_of(ctx), a)
    have = _MOMENTS.get(key)
    if have is None:
        have = [ctx.gamma(a + 1)]
        _MOMENTS[key] = have
    while len(have) < count:
        k = len(have)
        have.append(have[-1] * (a + k))
    return have[:count]


def sobolev_coefficient_rows(n_max: int, params: SobolevParams, prec=None) -> list[list]:
    """Ascending power-basis coefficients of S_0..S_{n_max}.

    Rows are built from the kernel form at twice the working digit count and
    returned in that guard context: the monomial basis loses roughly as many
    digits as the coefficients grow, and the guard keeps moment-based inner
    products accurate at the working precision.
    """
    n_max = _check_degree(n_max, "n_max")
    gctx = guard_context(context(prec))
    fam = sobolev_family(params, n_max, digits_of(gctx))
    L = monic_coefficients(n_max, fam.alpha, gctx)
    inv_h = [gctx.exp(-lh) for lh in fam.log_h[: n_max + 1]]
    zero = 0 * gctx.one
    prefix_u = [zero] * (n_max + 1)  # sum_{k<n} u_k l_k
    prefix_v = [zero] * (n_max + 1)  # sum_{k<n} v_k l_k
    rows = []
    for n in range(n_max + 1):
        ln = [cf * inv_h[n] for cf in L[n]]
        h = 1 / inv_h[n]
        row = [
            h * (ln[i] - fam.M * fam.sigma[n] * prefix_u[i] - fam.N * fam.tau[n] * prefix_v[i])
            for i in range(n + 1)
        ]
        row[n] = gctx.one
        rows.append(row)
        for i in range(n + 1):
            prefix_u[i] += fam.u[n] * ln[i]
            prefix_v[i] += fam.v[n] * ln[i]
    return rows


def _as_coeffs(ctx, f, name: str) -> list:
    if hasattr(f, "coefficients"):
        f = f.coefficients()
    if callable(f):
        raise DomainError(f"{name}: the moments method needs power-basis coefficients")
    try:
        out = [to_scalar(ctx, v, name) for v in f]
    except TypeError as exc:
        raise DomainError(f"{name} must be a coefficient sequence or polynomial object") from exc
    if not out:
        raise DomainError(f"{name} has no coefficients")
    return out


def _point_terms(ctx, f, g, c, M, N):
    out = 0 * ctx.one
    if M != 0:
        out += M * horner(f, c) * horner(g, c)
    if N != 0:
        out += N * horner(_poly_deriv(f), c) * horner(_poly_deriv(g), c)
    return out


def _weighted_integral(ctx, f, g, a):
    p = _poly_mul(f, g)
    return ctx.fdot(p, _weight_moments(ctx, a, len(p)))


def _callable_parts(ctx, f, name):
    deriv = getattr(f, "deriv", None)
    degree = getattr(f, "degree", None)
    if deriv is None or degree is None:
        raise DomainError(f"{name}: callables need 'deriv' and 'degree' attributes")
    return f, deriv, int(degree)


def inner_product(f, g, params: SobolevParams, method: str = "moments", prec=None, rule=None):
    """<f, g>_S for polynomials f, g.

    ``f`` and ``g`` are ascending coefficient sequences or objects with a
    ``coefficients()`` method.  With ``method="quadrature"`` they may also
    be callables exposing ``deriv`` (a callable) and ``degree``; a Gauss
    rule of sufficient exactness is built unless ``rule`` is supplied.

    The moments method works at twice the requested digits and rounds once
    at the end.
    """
    ctx = context(prec)
    if method == "moments":
        gctx = guard_context(ctx)
        a, c, M, N = params.scalars(gctx)
        fc = _as_coeffs(gctx, f, "f")
        gc = _as_coeffs(gctx, g, "g")
        val = _weighted_integral(gctx, fc, gc, a) + _point_terms(gctx, fc, gc, c, M, N)
        return ctx.convert(val)
    if method != "quadrature":
        raise DomainError(f"unknown inner-product method {method!r}")
    from .quadrature import gauss_laguerre, integrate

    a, c, M, N = params.scalars(ctx)
    parts = []
    for obj, name in ((f, "f"), (g, "g")):
        if callable(obj) and not isinstance(obj, (list, tuple)):
            parts.append(_callable_parts(ctx, obj, name))
        else:
            cf = _as_coeffs(ctx, obj, name)
            dcf = _poly_deriv(cf)
            parts.append(((lambda x, cf=cf: horner(cf, x)), (lambda x, d=dcf: horner(d, x)), len(cf) - 1))
    (fv, fd, fdeg), (gv, gd, gdeg) = parts
    need = fdeg + gdeg
    if rule is None:
        rule = gauss_laguerre(max(1, need // 2 + 1), params.alpha, digits_of(ctx))
    if rule.exact_degree < need:
        raise DegreeOverflowError(need, f"a {rule.m}-point rule is exact only to degree {rule.exact_degree}, need {need}")
    val = integrate(lambda x: fv(x) * gv(x), rule)
    return val + M * fv(c) * gv(c) + N * fd(c) * gd(c)


def inner_product_matrix(rows: Sequence[Sequence], params: SobolevParams, prec=None) -> list[list]:
    """All pairwise <row_i, row_j>_S by the moments method, in the guard context.

    Equivalent to calling :func:`inner_product` on every pair but shares the
    Hankel moment products between rows.
    """
    gctx = guard_context(context(prec))
    a, c, M, N = params.scalars(gctx)
    coeffs = [_as_coeffs(gctx, r, "row") for r in rows]
    size = max(len(r) for r in coeffs)
    mom = _weight_moments(gctx, a, 2 * size)
    applied = [[gctx.fdot(r, mom[i: i + len(r)]) for i in range(size)] for r in coeffs]
    at_c = [horner(r, c) for r in coeffs]
    d_at_c = [horner(_poly_deriv(r), c) for r in coeffs]
    out = []
    for i, ri in enumerate(coeffs):
        row = []
        for j in range(len(coeffs)):
            val = gctx.fdot(ri, applied[j][: len(ri)]) + M * at_c[i] * at_c[j] + N * d_at_c[i] * d_at_c[j]
            row.append(val)
        out.append(row)
    return out


def christoffel_inner(f, g, k: int, params, method: str = "moments", prec=None):
    """int_0^inf (x - c)^k f g x^alpha e^{-x} dx for k in {1, 2}.

    ``params`` needs only ``alpha`` and ``c``; a :class:`ChristoffelParams`
    allows c <= 0.
    """
    if k not in (1, 2):
        raise DomainError(f"k must be 1 or 2, got {k!r}")
    ctx = context(prec)
    wctx = guard_context(ctx) if method == "moments" else ctx
    a = _alpha(wctx, params.alpha, strict=True)
    c = wctx.re(to_scalar(wctx, params.c, "c"))
    fc = _as_coeffs(wctx, f, "f")
    gc = _as_coeffs(wctx, g, "g")
    fk = _poly_mul(_shift_power(wctx, c, k), fc)
    if method == "moments":
        return ctx.convert(_weighted_integral(wctx, fk, gc, a))
    if method != "quadrature":
        raise DomainError(f"unknown method {method!r}")
    from .quadrature import gauss_laguerre, integrate

    deg = len(fk) + len(gc) - 2
    rule = gauss_laguerre(deg // 2 + 1, params.alpha, digits_of(ctx))
    return integrate(lambda x: horner(fk, x) * horner(gc, x), rule)


class SobolevPolynomial:
    """Monic S_n as an evaluable object with derivative and power-basis access."""

    def __init__(self, n: int, params: SobolevParams, prec=None):
        self.n = _check_degree(n)
        self.params = params
        self.prec = prec
        self.family = sobolev_family(params, self.n, prec)

    @property
    def degree(self) -> int:
        return self.n

    @property
    def connection(self) -> ConnectionCoeffs:
        return self.family.connection(self.n)

    def __call__(self, x):
        return eval_sobolev(self.n, self.params, x, self.prec)

    def deriv(self, x):
        return eval_sobolev_derivative(self.n, self.params, x, self.prec)

    def coefficients(self) -> list:
        return sobolev_coefficient_rows(self.n, self.params, self.prec)[self.n]

    def __repr__(self) -> str:
        p = self.params
        return f"SobolevPolynomial(n={self.n}, alpha={p.alpha}, c={p.c}, M={p.M}, N={p.N})"


# ---------------------------------------------------------------------------
# large-degree behaviour


def coeff_asymptotics(n_list: Sequence[int], params: SobolevParams, prec=SWEEP_DIGITS) -> list[CoeffAsymptoticsRow]:
    """Connection coefficients scaled by the powers of n that make them O(1)."""
    ns = [_check_degree(n, "n", 2) for n in n_list]
    if not ns:
        return []
    fam = sobolev_family(params, max(ns), prec)
    ctx = fam.ctx
    out = []
    for n in ns:
        q = ctx.power(n, ctx.mpf(0.25)) if digits_of(ctx) > 17 else n ** 0.25
        out.append(
            CoeffAsymptoticsRow(
                n, fam.A1[n], fam.A0[n] * q, fam.B1[n] / n, fam.B0[n] / q, fam.B0[n] / (q * q * q)
            )
        )
    return out


def _ratio_from(fam: SobolevFamily, n: int, t, r):
    return 1 + fam.A1[n] / t + fam.A0[n] / (t * t) + (fam.B1[n] / t + fam.B0[n] / (t * t)) * r


def relative_asymptotics(n: int, params: SobolevParams, x: Any, prec=None):
    """S_n(x)/L_n(x) for x off [0, inf), without forming either polynomial."""
    n = _check_degree(n, "n", 2)
    return relative_asymptotics_seq(n, params, x, prec)[n]


def relative_asymptotics_seq(n_max: int, params: SobolevParams, x: Any, prec=None) -> list:
    """S_n(x)/L_n(x) for n = 0..n_max (entries 0 and 1 are ``None``)."""
    n_max = _check_degree(n_max, "n_max", 2)
    fam = sobolev_family(params, n_max, prec)
    ctx = fam.ctx
    xv = _off_positive_axis(ctx, to_scalar(ctx, x, "x"))
    if params.classical:
        return [None, None] + [ctx.mpc(1) for _ in range(2, n_max + 1)]
    ratios = ratio_seq(ctx, n_max, fam.alpha, xv)
    t = xv - fam.c
    return [None, None] + [_ratio_from(fam, n, t, ratios[n]) for n in range(2, n_max + 1)]
