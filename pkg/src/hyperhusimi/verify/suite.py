"""The shipped verification suite: every closed form against its oracle on standard cases."""

import cmath

from ..coherent import ModelParams
from ..husimi_mixed import (
    MixedStateSpec,
    cf_mixed,
    heat_kernel,
    mean_mixed,
    q_mixed_closed,
    radial_density_mixed,
    var_mixed,
)
from ..husimi_pure import PureStateSpec, cf_pure, mean_pure, radial_density, var_pure
from .oracles import cf_oracle, heat_kernel_spectral_sum, moment_oracle, q_mixed_series
from .quadrature import integrate_radial
from .report import timed_check

PURE_CASES = [(1, 1.5, 0, 2), (1, 1.5, 1, 1), (1, 1.5, 1, 2), (1, 2, 2, 3)]
MIXED_CASES = [(1, 1.5, 0, 0.7), (1, 1.5, 1, 0.7), (1, 2, 2, 1.5)]
U_VALUES = (0.5, 1.0, 3.0)


def _variance_oracle(d):
    m1 = moment_oracle(d, 1)
    return moment_oracle(d, 2) - m1 * m1


def run_suite(tol: float | None = None) -> list:
    """Run every check; ``tol`` replaces each check's default tolerance when given."""

    def t(default):
        return default if tol is None else tol

    out = []
    for B, R, m, j in PURE_CASES:
        s = PureStateSpec(j, ModelParams(B, R, m))
        d = radial_density(s)
        tag = f"pure(B={B},R={R},m={m},j={j})"
        out.append(timed_check(f"{tag} normalization", lambda: 1.0, lambda d=d: integrate_radial(d, d.support_end), t(1e-7)))
        for u in U_VALUES:
            out.append(timed_check(f"{tag} cf u={u}", lambda s=s, u=u: cf_pure(s, u), lambda d=d, u=u: cf_oracle(d, u), t(1e-6)))
        out.append(timed_check(f"{tag} mean", lambda s=s: mean_pure(s), lambda d=d: moment_oracle(d, 1), t(1e-6)))
        out.append(timed_check(f"{tag} variance", lambda s=s: var_pure(s), lambda d=d: _variance_oracle(d), t(1e-6)))

    for B, R, m, beta in MIXED_CASES:
        p = ModelParams(B, R, m)
        ms = MixedStateSpec(beta, p)
        d = radial_density_mixed(ms)
        tag = f"mixed(B={B},R={R},m={m},beta={beta})"
        out.append(timed_check(f"{tag} normalization", lambda: 1.0, lambda d=d: integrate_radial(d, d.support_end), t(1e-7)))
        for u in U_VALUES:
            out.append(timed_check(f"{tag} cf u={u}", lambda ms=ms, u=u: cf_mixed(ms, u), lambda d=d, u=u: cf_oracle(d, u), t(1e-6)))
        out.append(timed_check(f"{tag} mean", lambda ms=ms: mean_mixed(ms), lambda d=d: moment_oracle(d, 1), t(1e-6)))
        out.append(timed_check(f"{tag} variance", lambda ms=ms: var_mixed(ms), lambda d=d: _variance_oracle(d), t(1e-6)))
        for frac in (0.0, 0.4, 0.9):
            z = frac * R * cmath.exp(0.3j)
            out.append(
                timed_check(
                    f"{tag} closed vs series |z|={frac}R",
                    lambda ms=ms, z=z: q_mixed_closed(ms, z),
                    lambda p=p, z=z, beta=beta: q_mixed_series(beta, p, z),
                    t(1e-8),
                )
            )

    p = ModelParams(1, 1.5, 1)
    for r, rho, beta in [(1.0, 1.3, 0.8), (0.5, 2.0, 1.5)]:
        out.append(
            timed_check(
                f"heat kernel r={r} rho={rho} beta={beta}",
                lambda r=r, rho=rho, beta=beta: heat_kernel(MixedStateSpec(beta, p), r, rho),
                lambda r=r, rho=rho, beta=beta: heat_kernel_spectral_sum(beta, p, r, rho, n_terms=80),
                t(1e-8),
            )
        )
    return out


def all_passed(reports) -> bool:
    return all(r.passed for r in reports)


def _fmt(r) -> str:
    mark = "PASS" if r.passed else "FAIL"
    return f"{mark} {r.label}: abs={r.abs_err:.2e} rel={r.rel_err:.2e} tol={r.tol:.0e}"


def summary_lines(reports) -> list[str]:
    return [_fmt(r) for r in reports]


__all__ = ["run_suite", "all_passed", "summary_lines"]
