"""Command-line front end: tabulate densities, characteristic functions and moments,
run the verification suite, study R -> infinity limits, and evaluate the
Berezin-Lieb bound.

Exit codes: 0 success, 1 verification failures, 2 bad usage or parameters,
3 numerical failure (non-convergence, quadrature failure, violated check).
"""

import argparse
import contextlib
import csv
import io
import json
import os
import sys
import warnings

import numpy as np

from .coherent import ModelParams
from .errors import DivergenceError, DomainError, MomentMismatchError, NoConvergenceError, ParameterError, QuadratureError
from .husimi_mixed import (
    MixedStateSpec,
    berezin_lieb_lower_bound,
    cf_mixed,
    cf_mixed_euclid_limit,
    mean_mixed,
    q_mixed_closed,
    q_mixed_euclid,
    radial_density_mixed,
    var_mixed,
)
from .husimi_pure import (
    PureStateSpec,
    cf_pure,
    cf_pure_euclid,
    moments,
    q_pure,
    q_pure_euclid,
    radial_density,
)
from .specfun import SeriesConfig, series_config
from .verify import cf_moments, cf_oracle, limit_rate, moment_oracle

EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2, 3
NUMERIC_ERRORS = (NoConvergenceError, QuadratureError, DivergenceError, MomentMismatchError)


class UsageError(Exception):
    pass


class CheckFailed(Exception):
    """A property the command asserts (negative slope, nonnegative gap) did not hold."""


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("model")
    g.add_argument("--B", type=float, default=1.0, help="field strength (default 1)")
    g.add_argument("--R", type=float, default=1.5, help="disk radius (default 1.5)")
    g.add_argument("--m", type=int, default=0, help="Landau level (default 0)")
    g.add_argument("--j", type=int, default=0, help="number state for pure-state commands (default 0)")
    g.add_argument("--beta", type=float, default=0.7, help="inverse temperature (default 0.7)")
    g.add_argument("--epsilon", type=float, default=1.0, help="fugacity for the bound (default 1)")
    g = p.add_argument_group("grids and output")
    g.add_argument("--u-min", type=float, default=0.0)
    g.add_argument("--u-max", type=float, default=5.0)
    g.add_argument("--u-steps", type=int, default=11)
    g.add_argument("--grid", type=int, default=101, help="number of lambda points on [0, R^2]")
    g.add_argument("--format", choices=("csv", "json"), default="csv")
    g.add_argument("--out", default=None, help="output file (default stdout)")
    g.add_argument("--tol", type=float, default=None, help="series rel_tol (overrides HYP_TOL)")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="hyperhusimi", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    d = sub.add_parser("density", parents=[common], help="radial density of lambda = |z|^2")
    d.add_argument("kind", choices=("pure", "mixed"))

    c = sub.add_parser("cf", parents=[common], help="characteristic function on a u grid")
    c.add_argument("kind", choices=("pure", "mixed"))
    c.add_argument("--oracle", action="store_true", help="add the quadrature oracle and its error")

    mo = sub.add_parser("moments", parents=[common], help="mean and variance, closed form and oracles")
    mo.add_argument("kind", choices=("pure", "mixed"))

    v = sub.add_parser("verify", parents=[common], help="run the verification suite")
    v.add_argument("--check-tol", type=float, default=None, help="replace every check's tolerance")

    li = sub.add_parser("limit", parents=[common], help="error against the flat-space limit as R grows")
    li.add_argument("kind", choices=("pure-q", "pure-cf", "mixed-q", "mixed-cf"))
    li.add_argument("--Rs", default="5,20,100", help="comma-separated radii (at least three)")
    li.add_argument("--z", type=float, default=0.5, help="|z| for the Q limits")
    li.add_argument("--u", type=float, default=0.5, help="u for the CF limits (must be < 2B)")

    sub.add_parser("bound", parents=[common], help="Berezin-Lieb lower bound swept over m")
    return parser


# ---------------------------------------------------------------------------
# parameter checks


def _params(args, R=None) -> ModelParams:
    try:
        return ModelParams(args.B, args.R if R is None else R, args.m)
    except ParameterError as exc:
        raise UsageError(str(exc)) from None


def _pure(args) -> PureStateSpec:
    if args.j < 0:
        raise UsageError(f"--j must be >= 0, got {args.j}")
    return PureStateSpec(args.j, _params(args))


def _mixed(args) -> MixedStateSpec:
    try:
        return MixedStateSpec(args.beta, _params(args), args.epsilon)
    except ParameterError as exc:
        raise UsageError(str(exc)) from None


def _u_grid(args):
    if args.u_steps < 1:
        raise UsageError(f"--u-steps must be >= 1, got {args.u_steps}")
    if args.u_steps == 1:
        return [args.u_min]
    return [float(u) for u in np.linspace(args.u_min, args.u_max, args.u_steps)]


def _config(args) -> dict:
    keys = ("B", "R", "m", "j", "beta", "epsilon", "u_min", "u_max", "u_steps", "grid", "tol")
    out = {k: getattr(args, k) for k in keys}
    for extra in ("kind", "oracle", "Rs", "z", "u", "check_tol"):
        if hasattr(args, extra):
            out[extra] = getattr(args, extra)
    return out


# ---------------------------------------------------------------------------
# commands; each returns (columns, rows, extra header items)


def cmd_density(args):
    if args.grid < 2:
        raise UsageError(f"--grid must be >= 2, got {args.grid}")
    d = radial_density(_pure(args)) if args.kind == "pure" else radial_density_mixed(_mixed(args))
    lams = np.linspace(0.0, d.support_end, args.grid)
    rows = [{"lambda": float(x), "density": d(float(x))} for x in lams]
    return ["lambda", "density"], rows, {}


def cmd_cf(args):
    if args.kind == "pure":
        s = _pure(args)
        f, d = (lambda u: cf_pure(s, u)), radial_density(s)
    else:
        ms = _mixed(args)
        f, d = (lambda u: cf_mixed(ms, u)), radial_density_mixed(ms)
    cols = ["u", "re", "im"] + (["oracle_re", "oracle_im", "abs_err"] if args.oracle else [])
    rows = []
    for u in _u_grid(args):
        v = f(u)
        row = {"u": u, "re": v.real, "im": v.imag}
        if args.oracle:
            o = cf_oracle(d, u)
            row.update(oracle_re=o.real, oracle_im=o.imag, abs_err=abs(v - o))
        rows.append(row)
    return cols, rows, {}


def cmd_moments(args):
    if args.kind == "pure":
        s = _pure(args)
        mean, var = moments(s)
        d, f = radial_density(s), (lambda u: cf_pure(s, u))
    else:
        ms = _mixed(args)
        mean, var = mean_mixed(ms), var_mixed(ms)
        d, f = radial_density_mixed(ms), (lambda u: cf_mixed(ms, u))
    m1, m2 = moment_oracle(d, 1), moment_oracle(d, 2)
    fd1, fd2 = cf_moments(f)
    row = {
        "mean": mean,
        "variance": var,
        "mean_quadrature": m1,
        "variance_quadrature": m2 - m1 * m1,
        "mean_cf_difference": fd1,
        "variance_cf_difference": fd2 - fd1 * fd1,
    }
    return list(row), [row], {}


def cmd_verify(args):
    from .verify.suite import run_suite

    reports = run_suite(tol=args.check_tol)
    rows = [r.to_dict() for r in reports]
    cols = list(rows[0]) if rows else []
    failed = sum(not r.passed for r in reports)
    return cols, rows, {"checks": len(reports), "failed": failed}


def _limit_error(args, R):
    p = _params(args, R)
    B, m, j = args.B, args.m, args.j
    if args.kind == "pure-q":
        return abs(q_pure(PureStateSpec(j, p), args.z) - q_pure_euclid(j, m, B, args.z))
    if args.kind == "pure-cf":
        return abs(cf_pure(PureStateSpec(j, p), args.u) - cf_pure_euclid(j, m, B, args.u))
    ms = MixedStateSpec(args.beta, p)
    if args.kind == "mixed-q":
        return abs(q_mixed_closed(ms, args.z) - q_mixed_euclid(args.beta, B, m, args.z))
    return abs(cf_mixed(ms, args.u) - cf_mixed_euclid_limit(args.beta, B, m, args.u))


def cmd_limit(args):
    try:
        Rs = [float(r) for r in args.Rs.split(",") if r.strip()]
    except ValueError:
        raise UsageError(f"--Rs must be comma-separated numbers, got {args.Rs!r}") from None
    if len(Rs) < 3:
        raise UsageError(f"--Rs needs at least three radii, got {len(Rs)}")
    if args.kind.endswith("cf") and not args.u < 2 * args.B:
        raise UsageError(f"the CF limits hold for u < 2B = {2 * args.B:g}, got --u {args.u}")
    if args.kind.endswith("-q") and not all(args.z < R for R in Rs):
        raise UsageError("--z must be smaller than every radius")
    if args.beta <= 0 and args.kind.startswith("mixed"):
        raise UsageError(f"--beta must be positive, got {args.beta}")
    errors = {R: _limit_error(args, R) for R in Rs}
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        slope = limit_rate(errors.get, Rs)
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    rows = [{"R": R, "error": e} for R, e in errors.items()]
    if not slope < 0:
        raise CheckFailed(f"fitted slope {slope:.3f} is not negative")
    return ["R", "error"], rows, {"slope": slope}


def cmd_bound(args):
    if args.beta <= 0 or args.epsilon <= 0:
        raise UsageError("--beta and --epsilon must be positive")
    _params(args)  # rejects 2BR^2 <= 1 with the admissible range
    res = berezin_lieb_lower_bound(args.beta, args.epsilon, args.B, args.R)
    if min(res.gap) < 0:
        raise CheckFailed(f"bound exceeds the grand potential: gaps {res.gap}")
    record = res.as_dict()
    rows = [
        {"m": m, "bound": b, "literal": lit, "theta": t, "gap": g}
        for m, b, lit, t, g in zip(res.levels, res.forced, res.literal, res.theta, res.gap)
    ]
    return ["m", "bound", "literal", "theta", "gap"], rows, {"m_star": record["m_star"], "bound": record["bound"]}


COMMANDS = {
    "density": cmd_density,
    "cf": cmd_cf,
    "moments": cmd_moments,
    "verify": cmd_verify,
    "limit": cmd_limit,
    "bound": cmd_bound,
}


# ---------------------------------------------------------------------------
# output


def _cell(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return f"{v:.17g}"
    return str(v)


def render_csv(command, config, columns, rows, extra) -> str:
    buf = io.StringIO()
    buf.write(f"# hyperhusimi {command}\n")
    for k, v in config.items():
        buf.write(f"# {k}={_cell(v)}\n")
    for k, v in extra.items():
        buf.write(f"# {k}={_cell(v)}\n")
    buf.write(f"# columns: {','.join(columns)}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for row in rows:
        w.writerow([_cell(row[c]) for c in columns])
    return buf.getvalue()


def render_json(command, config, columns, rows, extra) -> str:
    doc = {"command": command, "config": config, **extra, "columns": columns, "rows": rows}
    return json.dumps(doc, indent=1) + "\n"


def _tolerance(args):
    if args.tol is not None:
        return args.tol
    env = os.environ.get("HYP_TOL")
    if env:
        try:
            return float(env)
        except ValueError:
            raise UsageError(f"HYP_TOL must be a number, got {env!r}") from None
    return None


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        tol = _tolerance(args)
        args.tol = tol
        scope = series_config(SeriesConfig(rel_tol=tol)) if tol is not None else contextlib.nullcontext()
        with scope:
            columns, rows, extra = COMMANDS[args.command](args)
    except (UsageError, ParameterError, DomainError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NUMERIC_ERRORS as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except CheckFailed as exc:
        print(f"check failed: {exc}", file=sys.stderr)
        return EXIT_NUMERIC

    render = render_json if args.format == "json" else render_csv
    text = render(args.command, _config(args), columns, rows, extra)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if args.command == "verify" and extra["failed"]:
        return EXIT_FAILED
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
