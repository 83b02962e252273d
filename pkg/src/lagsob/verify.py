"""Verification checks shared by the ``lagsob verify`` command and the test suite.

Every check returns :class:`CheckResult` records carrying the measured
value and the threshold it was held to.  Exactness checks run at the
configured precision; large-degree trend checks always run in native floats.
"""

from __future__ import annotations

import inspect
import json
import math
import random
from dataclasses import asdict, dataclass, field
from functools import lru_cache
from itertools import product
from typing import Callable, Sequence

from .kernels import _closed_form as _kernel_closed_form
from .kernels import confluent_sums, kernel_asymptotic_prediction
from .laguerre import _monic_values, orthonormal_values
from .numerics import SWEEP_DIGITS, context, scaled_exp, windowed_median
from .oracle import oracle_basis, oracle_eval, oracle_eval_derivative
from .quadrature import gauss_laguerre, integrate, weight_moment
from .recurrence import (
    _closed_form as _lambda_closed_form,
    discrepancy_report,
    five_term_table,
    lambda_asymptotics,
    tilde_residual,
)
from .sobolev import (
    SobolevParams,
    _poly_mul,
    _shift_power,
    christoffel_inner,
    coeff_asymptotics,
    inner_product,
    inner_product_matrix,
    relative_asymptotics_seq,
    sobolev_coefficient_rows,
    sobolev_family,
    switch_radius,
)

__all__ = [
    "CheckResult",
    "VerificationReport",
    "STANDARD_GRID",
    "ASYMPTOTIC_PARAMS",
    "SUITES",
    "run_suite",
    "exact_tolerance",
]

ALPHAS = (-0.5, 0.0, 1.5)
CS = (0.5, 1.0, 4.0)
MASSES = ((1.0, 0.0), (0.0, 1.0), (1.0, 1.0), (10.0, 0.1))
STANDARD_GRID = tuple(SobolevParams(a, c, M, N) for a, c, (M, N) in product(ALPHAS, CS, MASSES))
ASYMPTOTIC_PARAMS = SobolevParams(0, 1, 1, 1)
TREND_GRID = tuple(product((0.0, 0.5), (0.5, 1.0, 2.0)))
COMPLEX_POINTS = (complex(-1, 0), complex(2, 3))
SWEEP = (100, 1000, 10000)


def exact_tolerance(digits: int) -> float:
    """Relative tolerance for identities that hold exactly: 10**-(digits-14)."""
    return 10.0 ** (-(digits - 14))


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    measured: float
    threshold: str
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        tail = f"  [{self.detail}]" if self.detail else ""
        return f"{status}  {self.name}: measured {self.measured:.3e}, threshold {self.threshold}{tail}"


@dataclass
class VerificationReport:
    suite: str
    digits: int
    seed: int
    checks: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "precision": self.digits,
            "seed": self.seed,
            "passed": self.passed,
            "checks": [asdict(c) for c in self.checks],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def lines(self) -> list[str]:
        verdict = "PASS" if self.passed else "FAIL"
        return [c.line() for c in self.checks] + [f"{verdict}  suite {self.suite} ({len(self.checks)} checks)"]


def _below(name, measured, tol, detail="") -> CheckResult:
    m = float(measured)
    return CheckResult(name, m < tol, m, f"< {tol:.1e}", detail)


def _sample_points(seed: int, count: int = 20, lo: float = 0.0, hi: float = 20.0) -> list[float]:
    rng = random.Random(seed)
    return [rng.uniform(lo, hi) for _ in range(count)]


@lru_cache(maxsize=64)
def _oracle(params: SobolevParams, n_max: int, digits: int):
    return oracle_basis(n_max, params, 2 * digits)


@lru_cache(maxsize=64)
def _projection_table(params: SobolevParams, n_max: int, digits: int):
    return tuple(five_term_table(n_max, params, digits))


# ---------------------------------------------------------------------------
# exactness checks


def check_orthogonality(digits: int, seed: int = 1, grid: Sequence[SobolevParams] = STANDARD_GRID, n_max: int = 40):
    """Normalized off-diagonal Sobolev products of S_0..S_{n_max}, moments method."""
    worst, where = 0.0, None
    for p in grid:
        rows = sobolev_coefficient_rows(n_max, p, digits)
        G = inner_product_matrix(rows, p, digits)
        for i in range(n_max + 1):
            for j in range(i):
                v = float(abs(G[i][j]) / (G[i][i] * G[j][j]) ** 0.5)
                if v > worst:
                    worst, where = v, (p, i, j)
    detail = f"{len(grid)} configs, n <= {n_max}"
    if where:
        detail += f"; worst at {_fmt(where[0])} n={where[1]} m={where[2]}"
    return [_below("orthogonality", worst, exact_tolerance(digits), detail)]


def _fmt(p: SobolevParams) -> str:
    return f"alpha={p.alpha} c={p.c} M={p.M} N={p.N}"


def check_oracle_equivalence(digits: int, seed: int = 1, grid: Sequence[SobolevParams] = STANDARD_GRID, n_max: int = 40):
    """Kernel-based S_n(c), S_n'(c), ||S_n||^2 against Gram-Schmidt at twice the digits."""
    worst = {"S(c)": 0.0, "S'(c)": 0.0, "norm": 0.0}
    for p in grid:
        basis = _oracle(p, n_max, digits)
        fam = sobolev_family(p, n_max, digits)
        for n in range(1, n_max + 1):
            vc = fam.values_at_c(n)
            scale = basis.norms_sq[n] ** 0.5
            worst["S(c)"] = max(worst["S(c)"], float(abs(oracle_eval(basis, n, p.c) - vc.S_c) / scale))
            worst["S'(c)"] = max(worst["S'(c)"], float(abs(oracle_eval_derivative(basis, n, p.c) - vc.dS_c) / scale))
            worst["norm"] = max(worst["norm"], float(abs(basis.norms_sq[n] / fam.norm_sq(n) - 1)))
    tol = exact_tolerance(digits)
    return [_below(f"oracle {k}", v, tol, f"{len(grid)} configs, n <= {n_max}") for k, v in worst.items()]


def check_connection_residual(digits: int, seed: int = 1, grid: Sequence[SobolevParams] = STANDARD_GRID, n_max: int = 38):
    """(x-c)^2 S_n(x) against A(n;x) L_n(x) + B(n;x) L_{n-1}(x), S_n from the oracle."""
    ctx = context(digits)
    xs = [ctx.convert(x) for x in _sample_points(seed)]
    worst = 0.0
    for p in grid:
        basis = _oracle(p, n_max, digits)
        fam = sobolev_family(p, n_max, digits)
        c = fam.c
        for x in xs:
            L = _monic_values(ctx, n_max, fam.alpha, x)
            t = x - c
            for n in range(1, n_max + 1):
                lhs = t * t * ctx.convert(oracle_eval(basis, n, x))
                a_term = (t * t + fam.A1[n] * t + fam.A0[n]) * L[n]
                b_term = (fam.B1[n] * t + fam.B0[n]) * L[n - 1]
                scale = max(abs(lhs), abs(a_term), abs(b_term))
                worst = max(worst, float(abs(lhs - a_term - b_term) / scale))
    return [_below("connection residual", worst, exact_tolerance(digits), f"{len(grid)} configs, 20 x, n <= {n_max}")]


def _five_term_worst(digits, seed, grid, n_max, pick: Callable):
    ctx = context(digits)
    xs = [ctx.convert(x) for x in _sample_points(seed)]
    worst = 0.0
    for p in grid:
        table = pick(p)
        fam = sobolev_family(p, n_max + 2, digits)
        for x in xs:
            norm_vals = fam.eval_all_normalized(n_max + 2, x)
            S = [scaled_exp(ctx, v, lh) for v, lh in zip(norm_vals, fam.log_h)]
            t2 = (x - fam.c) ** 2
            for n in range(2, n_max + 1):
                lam = table[n]
                lhs = t2 * S[n]
                terms = [S[n + 2], lam.l_p1 * S[n + 1], lam.l_0 * S[n], lam.l_m1 * S[n - 1], lam.l_m2 * S[n - 2]]
                scale = max([abs(lhs)] + [abs(v) for v in terms])
                worst = max(worst, float(abs(lhs - ctx.fsum(terms)) / scale))
    return worst


def check_five_term_residual(digits: int, seed: int = 1, grid: Sequence[SobolevParams] = STANDARD_GRID, n_max: int = 38):
    """Recurrence defect with projection coefficients at seeded x in [0, 20]."""
    worst = _five_term_worst(digits, seed, grid, n_max, lambda p: _projection_table(p, n_max, digits))
    return [_below("five-term residual (projection)", worst, exact_tolerance(digits), f"{len(grid)} configs, 20 x, n <= {n_max}")]


def check_norm_ratio_identity(digits: int, seed: int = 1, grid: Sequence[SobolevParams] = STANDARD_GRID, n_max: int = 38):
    """Projection l_m2 equals ||S_n||^2/||S_{n-2}||^2 and is positive."""
    worst, positive = 0.0, True
    for p in grid:
        table = _projection_table(p, n_max, digits)
        fam = sobolev_family(p, n_max, digits)
        for n in range(2, n_max + 1):
            lam = table[n]
            positive &= bool(lam.l_m2 > 0)
            ratio = fam.norm_sq(n) / fam.norm_sq(n - 2)
            worst = max(worst, float(abs(lam.l_m2 / ratio - 1)))
    res = _below("l_m2 norm-ratio identity", worst, exact_tolerance(digits))
    if not positive:
        res = CheckResult(res.name, False, res.measured, res.threshold, "non-positive l_m2")
    return [res]


def check_closed_form_lambda(digits: int, seed: int = 1, grid: Sequence[SobolevParams] = STANDARD_GRID, n_max: int = 38):
    """Normalized closed-form coefficients against projection."""
    worst = 0.0
    for p in grid:
        table = _projection_table(p, n_max, digits)
        fam = sobolev_family(p, n_max + 1, digits)
        for n in range(2, n_max + 1):
            ref, cf = table[n], _lambda_closed_form(fam, n)
            for a, b in zip(ref[1:5], cf[1:5]):
                worst = max(worst, float(abs(a - b) / abs(a)))
    return [_below("closed-form coefficients vs projection", worst, exact_tolerance(digits))]


def check_tilde_residual(digits: int, seed: int = 1, grid: Sequence[SobolevParams] = STANDARD_GRID[:12], n_max: int = 40):
    xs = _sample_points(seed)
    worst = 0.0
    for p in grid:
        for n in (1, 2, 5, 17, n_max):
            worst = max(worst, float(tilde_residual(n, p, xs, digits)))
    return [_below("Laguerre expansion residual", worst, exact_tolerance(digits))]


def check_discrepancy_report(digits: int, seed: int = 1, grid: Sequence[SobolevParams] = (ASYMPTOTIC_PARAMS,), n_max: int = 38):
    """Generate the closed-form discrepancy report; it passes when well formed."""
    text = discrepancy_report(list(grid), n_max, digits, as_json=True)
    report = json.loads(text)
    matches = report["matching_variants"]
    ok = all(coef in report["coefficients"] for coef in ("l_p1", "l_0", "l_m1", "l_m2"))
    ok &= all("projection" != v for vs in matches.values() for v in vs)
    summary = "; ".join(f"{k}: {', '.join(v) or 'none'}" for k, v in sorted(matches.items()))
    return [CheckResult("discrepancy report generated", ok, float(len(text)), "well-formed JSON", summary)]


def check_branch_consistency(digits: int, seed: int = 1, grid: Sequence[SobolevParams] = STANDARD_GRID, n_max: int = 40):
    """Quotient and kernel forms agree on the switch circle around c."""
    worst = 0.0
    ctx = context(digits)
    for p in grid[::3]:
        fam = sobolev_family(p, n_max, digits)
        r = ctx.convert(switch_radius(p.c))
        for x in (fam.c + r * 1.0000001, fam.c - r * 1.0000001):
            for n in (1, 7, n_max):
                q = fam.eval_normalized(n, x)  # just outside the circle: quotient form
                k = fam._kernel_form(n, orthonormal_values(ctx, n, fam.alpha, x))
                worst = max(worst, float(abs(q - k) / max(abs(k), abs(fam.u[n]))))
    tol = 10.0 ** (-(digits - 15))
    return [_below("evaluation branch consistency", worst, tol)]


def check_symmetry_identities(digits: int, seed: int = 1, grid: Sequence[SobolevParams] = STANDARD_GRID[::5], degree: int = 8):
    """<(x-c)^2 f, g>_S = <f, (x-c)^2 g>_S = <f, g>_[2] for random f, g."""
    rng = random.Random(seed)
    worst = 0.0
    for p in grid:
        gctx = context(2 * digits)
        shift = _shift_power(gctx, gctx.convert(p.c), 2)
        for _ in range(4):
            f = [rng.uniform(-1, 1) for _ in range(degree + 1)]
            g = [rng.uniform(-1, 1) for _ in range(degree + 1)]
            left = inner_product(_poly_mul(shift, [gctx.convert(v) for v in f]), g, p, prec=digits)
            right = inner_product(f, _poly_mul(shift, [gctx.convert(v) for v in g]), p, prec=digits)
            chris = christoffel_inner(f, g, 2, p, prec=digits)
            scale = abs(christoffel_inner(f, f, 2, p, prec=digits) * christoffel_inner(g, g, 2, p, prec=digits)) ** 0.5
            worst = max(worst, float(abs(left - right) / scale), float(abs(left - chris) / scale))
    return [_below("symmetry of multiplication by (x-c)^2", worst, 10.0 ** (-(digits - 12)))]


def check_quadrature_exactness(digits: int, seed: int = 1, m: int = 20):
    """m-point rules integrate x^k exactly for k <= 2m-1."""
    worst = 0.0
    for a in ALPHAS:
        rule = gauss_laguerre(m, a, digits)
        for k in range(2 * m):
            exact = weight_moment(k, a, digits)
            worst = max(worst, float(abs(integrate(lambda x: x ** k, rule) / exact - 1)))
    return [_below("quadrature moments", worst, exact_tolerance(digits), f"m={m}, alpha in {ALPHAS}")]


def check_moments_vs_quadrature(digits: int, seed: int = 1, degree: int = 10, pairs: int = 8):
    rng = random.Random(seed)
    worst = 0.0
    for a in ALPHAS:
        p = SobolevParams(a, 1.0, 1.0, 1.0)
        for _ in range(pairs):
            f = [rng.uniform(-1, 1) for _ in range(rng.randint(0, degree) + 1)]
            g = [rng.uniform(-1, 1) for _ in range(rng.randint(0, degree) + 1)]
            mom = inner_product(f, g, p, "moments", digits)
            quad = inner_product(f, g, p, "quadrature", digits)
            scale = abs(inner_product(f, f, p, prec=digits) * inner_product(g, g, p, prec=digits)) ** 0.5
            worst = max(worst, float(abs(mom - quad) / scale))
    return [_below("moments vs quadrature", worst, exact_tolerance(digits), f"degree <= {degree}")]


def check_kernel_dual_method(digits: int, seed: int = 1, n_range=(2, 60)):
    """Summed vs confluent Christoffel-Darboux kernels at (c, c)."""
    ctx = context(digits)
    worst = {"K": 0.0, "K01": 0.0, "K11": 0.0}
    lo, hi = n_range
    for a, c in product(ALPHAS, CS):
        av, cv = ctx.convert(a), ctx.convert(c)
        s = confluent_sums(hi, a, c, digits)
        for n in range(lo, hi + 1):
            K, K01, K11 = _kernel_closed_form(ctx, n, av, cv)
            cs = (s.K[n] * s.K11[n]) ** 0.5  # Cauchy-Schwarz scale for the mixed kernel
            worst["K"] = max(worst["K"], float(abs(K - s.K[n]) / s.K[n]))
            worst["K01"] = max(worst["K01"], float(abs(K01 - s.K01[n]) / cs))
            worst["K11"] = max(worst["K11"], float(abs(K11 - s.K11[n]) / s.K11[n]))
    tol = exact_tolerance(digits)
    return [_below(f"kernel dual method {k}", v, tol, f"{lo} <= n <= {hi}") for k, v in worst.items()]


# ---------------------------------------------------------------------------
# large-degree trends (native floats)


def _window(n: int) -> range:
    return range(n, int(1.2 * n) + 1)


def check_kernel_trends(digits: int = SWEEP_DIGITS, seed: int = 1, trend_grid=TREND_GRID, small: int = 1000, large: int = 100000):
    """Windowed medians of kernel / predicted magnitude near 1, improving with n."""
    top = int(1.2 * large)
    devs = {"K": [], "K01": [], "K11": []}
    ok = {"K": True, "K01": True, "K11": True}
    for a, c in trend_grid:
        s = confluent_sums(top, a, c, SWEEP_DIGITS)
        per = {}
        for N in (small, large):
            w = _window(N)
            base = kernel_asymptotic_prediction(1, a, c, SWEEP_DIGITS).K_pred
            med = {
                "K": windowed_median([s.K[n] / (base * math.sqrt(n)) for n in w]),
                "K01": windowed_median([s.K01[n] / (base * math.sqrt(n)) for n in w]),
                "K11": windowed_median([s.K11[n] / (base * n ** 1.5 / (3 * c)) for n in w]),
            }
            per[N] = {k: abs(v - 1) for k, v in med.items()}
        for k in devs:
            d_small, d_large = per[small][k], per[large][k]
            devs[k].append((a, c, d_small, d_large))
            ok[k] &= d_small <= 0.15 and d_large <= 0.05 and d_large < d_small
    out = []
    for k, rows in devs.items():
        worst = max(r[3] for r in rows)
        detail = " ".join(f"(a={a},c={c}: {s:.3f}->{l:.3f})" for a, c, s, l in rows)
        out.append(CheckResult(f"kernel trend {k}", ok[k], worst, "<= 0.15 at 1e3, <= 0.05 at 1e5, decreasing", detail))
    return out


def check_relative_asymptotics(digits: int = SWEEP_DIGITS, seed: int = 1, params: SobolevParams = ASYMPTOTIC_PARAMS):
    out = []
    top = int(1.2 * SWEEP[-1])
    for x in COMPLEX_POINTS:
        seq = relative_asymptotics_seq(top, params, x, SWEEP_DIGITS)
        meds = [windowed_median([abs(seq[n] - 1) for n in _window(N)]) for N in SWEEP]
        ok = meds[-1] < 0.05 and all(b < a for a, b in zip(meds, meds[1:]))
        detail = " -> ".join(f"{m:.4f}" for m in meds)
        out.append(CheckResult(f"S_n/L_n -> 1 at x={x}", ok, meds[-1], "< 0.05 at 1e4, decreasing", detail))
    return out


def check_coefficient_asymptotics(digits: int = SWEEP_DIGITS, seed: int = 1, params: SobolevParams = ASYMPTOTIC_PARAMS):
    rows = {N: coeff_asymptotics(list(_window(N)), params, SWEEP_DIGITS) for N in SWEEP}
    out = []
    for label, get in (
        ("|A0| n^(1/4)", lambda r: abs(r.A0_n_quarter)),
        ("|B0| n^(-3/4)", lambda r: abs(r.B0_n_minus_three_quarters)),
    ):
        env = [max(get(r) for r in rows[N]) for N in SWEEP]
        ok = env[-1] < 1 and all(b < a for a, b in zip(env, env[1:]))
        out.append(CheckResult(label, ok, env[-1], "window max decreasing, final < 1", " -> ".join(f"{v:.3f}" for v in env)))
    a1 = windowed_median([r.A1 for r in rows[SWEEP[-1]]])
    out.append(CheckResult("A1 windowed median", abs(a1 - 1) <= 0.25, a1, "within 0.25 of 1",
                           " ".join(f"{N}: {windowed_median([r.A1 for r in rows[N]]):.3f}" for N in SWEEP)))
    b1 = [float(r.B1_over_n) for N in SWEEP for r in rows[N]]
    lo, hi = min(b1), max(b1)
    out.append(CheckResult("B1/n bounded", 0.2 <= lo and hi <= 5, hi, "within [0.2, 5]", f"range [{lo:.3f}, {hi:.3f}]"))
    return out


def check_lambda_asymptotics(digits: int = SWEEP_DIGITS, seed: int = 1, params: SobolevParams = ASYMPTOTIC_PARAMS):
    rows = {r.n: r for r in lambda_asymptotics([1000, 10000], params, SWEEP_DIGITS)}
    out = []
    for col in ("l_p1_over_4n", "l_0_over_6n2", "l_m1_over_4n3", "l_m2_over_n4"):
        d3, d4 = abs(getattr(rows[1000], col) - 1), abs(getattr(rows[10000], col) - 1)
        ok = d3 <= 0.1 and d4 <= 0.03
        out.append(CheckResult(f"lambda {col}", ok, d4, "|dev| <= 0.1 at 1e3, <= 0.03 at 1e4", f"{d3:.2e} -> {d4:.2e}"))
    return out


# ---------------------------------------------------------------------------

_CORE_GRID = tuple(SobolevParams(0.0, 1.0, M, N) for M, N in MASSES)


def _core_orthogonality(digits, seed, grid=_CORE_GRID):
    return check_orthogonality(digits, seed, grid, 20)


def _core_oracle(digits, seed, grid=_CORE_GRID):
    return check_oracle_equivalence(digits, seed, grid, 20)


SUITES: dict[str, tuple] = {
    "core": (check_quadrature_exactness, check_moments_vs_quadrature, check_kernel_dual_method,
             _core_orthogonality, _core_oracle),
    "kernels": (check_kernel_dual_method, check_kernel_trends),
    "sobolev": (check_orthogonality, check_oracle_equivalence, check_connection_residual,
                check_branch_consistency, check_symmetry_identities),
    "recurrence": (check_five_term_residual, check_norm_ratio_identity, check_closed_form_lambda,
                   check_tilde_residual, check_discrepancy_report),
    "asymptotics": (check_kernel_trends, check_relative_asymptotics, check_coefficient_asymptotics,
                    check_lambda_asymptotics),
}


def _overrides(params: SobolevParams | None) -> dict:
    if params is None:
        return {}
    return {"grid": (params,), "params": params, "trend_grid": ((params.alpha, params.c),)}


def run_suite(name: str, digits: int = 64, seed: int = 1, params: SobolevParams | None = None) -> VerificationReport:
    """Run a named suite; ``params`` replaces the built-in parameter grids."""
    if name == "all":
        checks = []
        for suite in ("core", "kernels", "sobolev", "recurrence", "asymptotics"):
            checks.extend(c for c in SUITES[suite] if c not in checks)
    elif name in SUITES:
        checks = list(SUITES[name])
    else:
        raise KeyError(name)
    extra = _overrides(params)
    report = VerificationReport(name, digits, seed)
    for check in checks:
        accepted = inspect.signature(check).parameters
        report.checks.extend(check(digits, seed, **{k: v for k, v in extra.items() if k in accepted}))
    return report
