"""Command-line interface: ``lagsob table``, ``lagsob asymptotics``, ``lagsob verify``.

Exit codes: 0 success / all checks pass, 1 a verification check failed,
2 usage or domain error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass
from typing import Sequence

from mpmath.libmp import to_str

from . import kernels, laguerre, recurrence, sobolev, verify
from .numerics import (
    DEFAULT_DIGITS,
    SWEEP_DIGITS,
    ConsistencyError,
    DegreeOverflowError,
    DomainError,
    Precision,
    context,
    scaled_exp,
)

TABLES = ("laguerre", "kernels", "connection", "values_at_c", "lambda", "norms")
SUITE_NAMES = ("core", "kernels", "sobolev", "recurrence", "asymptotics", "all")
PROJECTION_MAX_DEGREE = 58


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    params: sobolev.SobolevParams
    params_given: bool
    ns: tuple
    precision: Precision
    fmt: str
    out: str | None
    seed: int
    x: complex | None
    what: str | None
    suite: str | None


# ---------------------------------------------------------------------------
# formatting


def format_number(value, digits: int) -> str:
    """Scientific notation with ``digits`` significant digits."""
    if value is None:
        return "nan"
    mpf = getattr(value, "_mpf_", None)
    if mpf is None:
        v = float(value)
        if math.isnan(v) or math.isinf(v):
            return str(v)
        return f"{v:.{digits - 1}e}"
    text = to_str(mpf, digits, strip_zeros=False, min_fixed=1, max_fixed=0)
    if text in ("0.0", "-0.0"):
        return f"{0.0:.{digits - 1}e}"
    mant, _, exp = text.partition("e")
    return f"{mant}e{int(exp or 0):+03d}"


def emit(config: RunConfig, columns: Sequence[str], rows: Sequence[Sequence]) -> str:
    digits = config.precision.decimal_digits
    p = config.params
    cells = [[r[0]] + [format_number(v, digits) for v in r[1:]] for r in rows]
    if config.fmt == "json":
        doc = {
            "params": {"alpha": str(p.alpha), "c": str(p.c), "M": str(p.M), "N": str(p.N), "precision": digits},
            "columns": list(columns),
            "rows": cells,
        }
        return json.dumps(doc, indent=1) + "\n"
    lines = [
        f"# params: alpha={p.alpha},c={p.c},M={p.M},N={p.N},precision={digits}",
        ",".join(columns),
    ]
    lines += [",".join(str(c) for c in row) for row in cells]
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# commands


def _ns(config: RunConfig, minimum: int) -> list[int]:
    ns = [n for n in config.ns if n >= minimum]
    if not ns:
        raise UsageError(f"--what {config.what} needs degrees >= {minimum}")
    return ns


def _table_rows(config: RunConfig):
    p, prec = config.params, config.precision
    ctx = context(prec)
    what = config.what
    if what == "laguerre":
        ns = _ns(config, 0)
        x = p.c if config.x is None else _real_x(config.x)
        a = laguerre._alpha(ctx, p.alpha, strict=True)
        xv = ctx.convert(x)
        l = laguerre.orthonormal_values(ctx, max(ns), a, xv)
        logs = laguerre._log_norms(ctx, max(ns), a)
        cols = ["n", "monic", "orthonormal", "log_norm_sq"]
        return cols, [[n, scaled_exp(ctx, l[n], logs[n]), l[n], 2 * logs[n]] for n in ns]
    if what == "kernels":
        ns = _ns(config, 1)
        s = kernels.confluent_sums(max(ns), p.alpha, p.c, prec)
        return ["n", "K", "K01", "K11"], [[n, s.K[n], s.K01[n], s.K11[n]] for n in ns]
    fam = sobolev.sobolev_family(p, max(config.ns) + 1, prec)
    if what == "connection":
        ns = _ns(config, 1)
        return ["n", "A1", "A0", "B1", "B0"], [[n, fam.A1[n], fam.A0[n], fam.B1[n], fam.B0[n]] for n in ns]
    if what == "values_at_c":
        ns = _ns(config, 1)
        rows = []
        for n in ns:
            v = fam.values_at_c(n)
            rows.append([n, v.S_c, v.dS_c, v.denom])
        return ["n", "S_c", "dS_c", "denom"], rows
    if what == "norms":
        ns = _ns(config, 0)
        return ["n", "norm_sq", "log_norm_sq"], [[n, fam.norm_sq(n), fam.log_norm_sq(n)] for n in ns]
    if what == "lambda":
        ns = _ns(config, 2)
        proj_max = min(max(ns), PROJECTION_MAX_DEGREE)
        table = recurrence.five_term_table(proj_max, p, prec) if proj_max >= 2 else []
        cols = ["n"]
        for method in ("projection", "closed_form", "paper_formula"):
            cols += [f"{method}_{k}" for k in ("l_p1", "l_0", "l_m1", "l_m2")]
        rows = []
        for n in ns:
            proj = list(table[n][1:5]) if n <= proj_max else [None] * 4
            cf = recurrence.five_term_coeffs(n, p, "closed_form", prec)
            pf = recurrence.five_term_coeffs(n, p, "paper_formula", prec)
            rows.append([n] + proj + list(cf[1:5]) + list(pf[1:5]))
        return cols, rows
    raise UsageError(f"unknown table {what!r}")


def _real_x(x: complex):
    if x.imag != 0:
        raise UsageError("--what laguerre takes a real point (omit --x-im)")
    return x.real


def _asymptotics_rows(config: RunConfig):
    p = config.params
    prec = config.precision
    ns = _ns(config, 2)
    if list(ns) != sorted(ns):
        raise UsageError("--n-list must be ascending")
    x = complex(-1.0, 0.0) if config.x is None else config.x
    top = max(ns)
    s = kernels.confluent_sums(top, p.alpha, p.c, prec)
    pred_k = kernels.kernel_asymptotic_prediction(1, p.alpha, p.c, prec)
    coeffs = {r.n: r for r in sobolev.coeff_asymptotics(ns, p, prec)}
    lam = {r.n: r for r in recurrence.lambda_asymptotics(ns, p, prec)}
    ratio = sobolev.relative_asymptotics_seq(top, p, x, prec)
    ctx = context(prec)
    cols = ["n", "K_ratio", "K01_ratio", "K11_ratio", "A1", "A0_n_quarter", "B1_over_n",
            "B0_n_minus_three_quarters", "ratio_re", "ratio_im", "ratio_dev",
            "l_p1_over_4n", "l_0_over_6n2", "l_m1_over_4n3", "l_m2_over_n4"]
    rows = []
    c = ctx.convert(p.c)
    for n in ns:
        root = ctx.sqrt(n)
        k_pred = pred_k.K_pred * root
        k11_pred = pred_k.K_pred * root * n / (3 * c)
        r = ratio[n]
        cf, lm = coeffs[n], lam[n]
        rows.append([
            n, s.K[n] / k_pred, s.K01[n] / k_pred, s.K11[n] / k11_pred,
            cf.A1, cf.A0_n_quarter, cf.B1_over_n, cf.B0_n_minus_three_quarters,
            ctx.re(r), ctx.im(r), abs(r - 1),
            lm.l_p1_over_4n, lm.l_0_over_6n2, lm.l_m1_over_4n3, lm.l_m2_over_n4,
        ])
    return cols, rows


def _write(config: RunConfig, text: str) -> None:
    if config.out:
        with open(config.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_table(config: RunConfig) -> int:
    cols, rows = _table_rows(config)
    _write(config, emit(config, cols, rows))
    return 0


def cmd_asymptotics(config: RunConfig) -> int:
    cols, rows = _asymptotics_rows(config)
    _write(config, emit(config, cols, rows))
    return 0


def cmd_verify(config: RunConfig) -> int:
    params = config.params if config.params_given else None
    report = verify.run_suite(config.suite, config.precision.decimal_digits, config.seed, params)
    text = report.to_json() + "\n" if config.fmt == "json" else "\n".join(report.lines()) + "\n"
    _write(config, text)
    return 0 if report.passed else 1


# ---------------------------------------------------------------------------
# argument handling


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--alpha", type=float, default=None, help="Laguerre parameter, > -1 (default 0)")
    common.add_argument("--c", type=float, default=None, help="mass point, > 0 (default 1)")
    common.add_argument("--M", type=float, default=None, help="mass on f(c) (default 0)")
    common.add_argument("--N", type=float, default=None, help="mass on f'(c) (default 0)")
    degrees = common.add_mutually_exclusive_group()
    degrees.add_argument("--n-max", type=int, default=None)
    degrees.add_argument("--n-list", type=str, default=None, help="comma-separated degrees")
    common.add_argument("--precision", type=int, default=None, help="significant decimal digits")
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--out", default=None, help="output file (default stdout)")
    common.add_argument("--seed", type=int, default=1)
    common.add_argument("--x-re", type=float, default=None)
    common.add_argument("--x-im", type=float, default=None)

    parser = argparse.ArgumentParser(prog="lagsob", description="Laguerre-Sobolev-type polynomial tables and checks.")
    sub = parser.add_subparsers(dest="command", required=True)
    t = sub.add_parser("table", parents=[common], help="tabulate a quantity against n")
    t.add_argument("--what", choices=TABLES, required=True)
    sub.add_parser("asymptotics", parents=[common], help="normalized large-n ratios for plotting")
    v = sub.add_parser("verify", parents=[common], help="run a verification suite")
    v.add_argument("--suite", choices=SUITE_NAMES, default="core")
    return parser


def _parse_ns(args) -> tuple:
    if args.n_list is not None:
        try:
            ns = tuple(int(s) for s in args.n_list.split(",") if s.strip())
        except ValueError as exc:
            raise UsageError(f"bad --n-list {args.n_list!r}") from exc
        if not ns or min(ns) < 0:
            raise UsageError("--n-list needs non-negative integers")
        return ns
    n_max = 10 if args.n_max is None else args.n_max
    if n_max < 0:
        raise UsageError("--n-max must be non-negative")
    return tuple(range(n_max + 1))


def make_config(args) -> RunConfig:
    given = any(getattr(args, k) is not None for k in ("alpha", "c", "M", "N"))
    params = sobolev.SobolevParams(
        0.0 if args.alpha is None else args.alpha,
        1.0 if args.c is None else args.c,
        0.0 if args.M is None else args.M,
        0.0 if args.N is None else args.N,
    )
    default_digits = SWEEP_DIGITS if args.command == "asymptotics" else DEFAULT_DIGITS
    precision = Precision(default_digits if args.precision is None else args.precision)
    if args.command == "asymptotics" and args.n_list is None and args.n_max is None:
        raise UsageError("asymptotics needs --n-list (or --n-max)")
    ns = _parse_ns(args)
    x = None
    if args.x_re is not None or args.x_im is not None:
        x = complex(args.x_re or 0.0, args.x_im or 0.0)
    return RunConfig(
        args.command, params, given, ns, precision, args.format, args.out, args.seed, x,
        getattr(args, "what", None), getattr(args, "suite", None),
    )


COMMANDS = {"table": cmd_table, "asymptotics": cmd_asymptotics, "verify": cmd_verify}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = make_config(args)
        return COMMANDS[config.command](config)
    except (UsageError, DomainError) as exc:
        print(f"lagsob: error: {exc}", file=sys.stderr)
        return 2
    except (DegreeOverflowError, ConsistencyError) as exc:
        print(f"lagsob: numerical failure: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"lagsob: I/O error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
