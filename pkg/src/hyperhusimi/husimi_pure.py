"""Husimi distribution of a number state |j> in the m-th level coherent-state family.

Q_j(z) = |<kappa~_z|j>|^2 lives on the disk |z| < R. In lam = |z|^2 it becomes
a probability density on [0, R^2]; this module gives that density, its CDF,
characteristic function and first two moments, plus the flat-space limits.
"""

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Callable

from .coherent import DiskPoint, ModelParams, disk_ratio
from .errors import DomainError, MomentMismatchError
from .specfun import (
    KdFParams,
    beta_fn,
    gamma_ratio,
    hyp_pFq,
    jacobi_P,
    jacobi_zeros,
    kampe_de_feriet,
    laguerre_L,
    log_gamma_ratio,
    pochhammer,
)
from .verify.quadrature import QuadratureSpec, integrate_radial


@dataclass(frozen=True)
class PureStateSpec:
    j: int
    params: ModelParams

    def __post_init__(self):
        if int(self.j) != self.j or self.j < 0:
            raise DomainError(f"j must be a nonnegative integer, got {self.j}")
        object.__setattr__(self, "j", int(self.j))

    @property
    def lo(self) -> int:
        return min(self.j, self.params.m)

    @property
    def hi(self) -> int:
        return max(self.j, self.params.m)

    @property
    def gap(self) -> int:
        return abs(self.j - self.params.m)


@dataclass(frozen=True)
class RadialDensity:
    """Probability density on [0, support_end]."""

    support_end: float
    eval: Callable[[float], float]
    meta: Any

    def __call__(self, lam: float) -> float:
        return self.eval(lam)


def tau_factor(s: PureStateSpec) -> float:
    """(m^j)! Gamma(alpha+1+m v j) / ((m v j)! Gamma(alpha+1+m^j))."""
    a1 = s.params.alpha + 1
    return gamma_ratio(s.lo + 1, s.hi + 1) * gamma_ratio(a1 + s.hi, a1 + s.lo)


def _log_q(s: PureStateSpec, x: float) -> tuple[float, float]:
    # (log of everything except the Jacobi square, Jacobi value)
    p = s.params
    a1 = p.alpha + 1
    log_tau = log_gamma_ratio(s.lo + 1, s.hi + 1)[1] + log_gamma_ratio(a1 + s.hi, a1 + s.lo)[1]
    log_rest = log_tau + a1 * math.log1p(-x)
    if s.gap:
        log_rest += s.gap * math.log(x) if x > 0 else -math.inf
    return log_rest, jacobi_P(s.lo, s.gap, p.alpha, 1 - 2 * x)


def q_pure(s: PureStateSpec, pt) -> float:
    """Q_j(z); depends on z only through |z|."""
    _, x = disk_ratio(pt, s.params.R)
    log_rest, jac = _log_q(s, x)
    if log_rest == -math.inf or jac == 0:
        return 0.0
    return math.exp(log_rest + 2 * math.log(abs(jac)))


def q_pure_euclid(j: int, m: int, B: float, z) -> float:
    """Flat-space Husimi function of |j> in the m-th Landau level."""
    if B <= 0:
        raise DomainError(f"B must be positive, got {B}")
    lo, hi = min(m, j), max(m, j)
    t = 2 * B * abs(complex(z)) ** 2
    lag = laguerre_L(lo, hi - lo, t)
    return gamma_ratio(lo + 1, hi + 1) * math.exp(-t) * t ** (hi - lo) * lag * lag


def _density_value(s: PureStateSpec, lam: float) -> float:
    p = s.params
    R2 = p.R**2
    if not 0 <= lam <= R2:
        raise DomainError(f"lambda must lie in [0, {R2:g}], got {lam}")
    if lam == R2:
        # the density behaves like (1 - lam/R^2)^(alpha-1) at the rim
        if p.alpha > 1:
            return 0.0
        if p.alpha < 1:
            return math.inf
        return tau_factor(s) / R2 * jacobi_P(s.lo, s.gap, p.alpha, -1.0) ** 2
    x = lam / R2
    log_rest, jac = _log_q(s, x)
    if log_rest == -math.inf or jac == 0:
        return 0.0
    return math.exp(math.log(p.alpha / R2) - 2 * math.log1p(-x) + log_rest + 2 * math.log(abs(jac)))


def radial_density(s: PureStateSpec) -> RadialDensity:
    """Density of lam = |z|^2 on [0, R^2] induced by Q_j and the invariant measure."""
    return RadialDensity(s.params.R**2, lambda lam: _density_value(s, lam), s)


# plain QUADPACK: its extrapolation already resolves the algebraic behaviour at
# both ends, while lam = R^2(1 - e^{-t}) would round away the right edge
_CDF_QUADRATURE = QuadratureSpec(abs_tol=1e-12, rel_tol=1e-10)


def cdf_lambda(s: PureStateSpec, r2: float, q: QuadratureSpec = _CDF_QUADRATURE) -> float:
    R2 = s.params.R**2
    if not 0 <= r2 <= R2:
        raise DomainError(f"r^2 must lie in [0, {R2:g}], got {r2}")
    if r2 == 0:
        return 0.0
    val = integrate_radial(lambda lam: _density_value(s, lam), r2, q)
    return min(1.0, max(0.0, val))


def _coefficient(s: PureStateSpec, k: int, shape: float) -> float:
    # shared by the exact coefficient (shape = 2(BR^2-m)) and its large-R form
    l, a = s.lo, s.gap
    m, j = s.params.m, s.j
    n = 2 * l
    S = shape + a
    head = math.factorial(n) * pochhammer(a + 1, n) * (pochhammer(S, n) / pochhammer(S, l)) ** 2 / math.factorial(l) ** 2
    body = (-1) ** k * pochhammer(S - 1, k) * (2 * k + S - 1)
    body /= math.factorial(n - k) * pochhammer(a + 1, k) * pochhammer(S - 1, n + k + 1)
    low = -shape - m - j + 1
    kdf = KdFParams(
        a_top=(-n + k, low - k),
        b_top=(-m, -j),
        c_top=(-m, -j),
        alpha_bot=(-n, -m - j),
        beta_bot=(low,),
        gamma_bot=(low,),
    )
    return head * body * kampe_de_feriet(kdf, 1.0, 1.0)


@lru_cache(maxsize=4096)
def _cjk_cached(s: PureStateSpec, k: int) -> float:
    return _coefficient(s, k, 2 * (s.params.tau - s.params.m))


def cjk_coeff(s: PureStateSpec, k: int) -> float:
    """Coefficient C_{j,k} of the k-th term in the characteristic function.

    Evaluated from its closed form with a terminating Kampe de Feriet factor.
    These are the coefficients of (P_l^{(a,alpha)})^2 in the basis
    P_k^{(a,alpha-1)}, with l = min(m,j), a = |m-j|.
    """
    if not 0 <= k <= 2 * s.lo:
        raise IndexError(f"k must lie in 0..{2 * s.lo}, got {k}")
    return _cjk_cached(s, k)


def cjk_coeff_limit(s: PureStateSpec, k: int) -> float:
    """Large-R value of cjk_coeff (the Kampe de Feriet loses its R-dependent pair)."""
    if not 0 <= k <= 2 * s.lo:
        raise IndexError(f"k must lie in 0..{2 * s.lo}, got {k}")
    l, a = s.lo, s.gap
    n = 2 * l
    pref = math.factorial(n) / math.factorial(l) ** 2 * pochhammer(a + 1, n) * (-1) ** k
    pref /= math.factorial(n - k) * pochhammer(a + 1, k)
    m, j = s.params.m, s.j
    kdf = KdFParams(a_top=(-n + k,), b_top=(-m, -j), c_top=(-m, -j), alpha_bot=(-n, -m - j))
    return pref * kampe_de_feriet(kdf, 1.0, 1.0)


def cf_pure(s: PureStateSpec, u: float) -> complex:
    """Characteristic function of lam = |z|^2 under the radial density, as a finite sum of 1F1 terms."""
    p = s.params
    a, al = s.gap, p.alpha
    R2 = p.R**2
    z = 1j * u * R2
    total = 0j
    for k in range(2 * s.lo + 1):
        c = al + 1 + a + 2 * k
        # Gamma(alpha+k) Gamma(a+k+1) / Gamma(alpha+1+a+2k) is a Beta function
        weight = beta_fn(al + k, a + k + 1) * (-z) ** k / math.factorial(k)
        total += cjk_coeff(s, k) * weight * hyp_pFq([a + k + 1], [c], z)
    return tau_factor(s) * al * total


def cf_pure_euclid(j: int, m: int, B: float, u: float) -> complex:
    """Large-R limit of cf_pure in the same variable u (the flat CF at u/(2B))."""
    if B <= 0:
        raise DomainError(f"B must be positive, got {B}")
    v = 1j * u / (2 * B)
    poly = sum(math.comb(m, k) * math.comb(j, k) * v ** (2 * k) for k in range(min(m, j) + 1))
    return (1 - v) ** (-(m + j + 1)) * poly


def _moment_parts(s: PureStateSpec):
    p = s.params
    a, al = s.gap, p.alpha
    A = al + 1
    t = tau_factor(s)
    C = [cjk_coeff(s, k) if k <= 2 * s.lo else 0.0 for k in range(3)]
    mean = t * p.R**2 * math.factorial(a + 1) * gamma_ratio(A, A + a + 1) * (C[0] - al * C[1] / (A + a + 1))
    second = (
        p.R**4
        * t
        * math.factorial(a + 2)
        * gamma_ratio(A, A + a + 2)
        * (C[0] - 2 * al * C[1] / (A + a + 2) + al * A * C[2] / ((A + a + 2) * (A + a + 3)))
    )
    return mean, second


def mean_pure(s: PureStateSpec) -> float:
    return _moment_parts(s)[0]


def var_pure(s: PureStateSpec) -> float:
    mean, second = _moment_parts(s)
    return max(second - mean * mean, 0.0)


def moments(s: PureStateSpec, h: float = 1e-4, tol: float = 1e-5) -> tuple[float, float]:
    """(mean, variance) from the closed forms, cross-checked against CF differences.

    Raises MomentMismatchError when the two routes disagree by more than ``tol``
    (relative) instead of returning either one.
    """
    mean, var = mean_pure(s), var_pure(s)
    plus, minus = cf_pure(s, h), cf_pure(s, -h)
    fd_mean = ((plus - minus) / (2j * h)).real
    fd_second = (-(plus - 2 + minus) / h**2).real
    if abs(fd_mean - mean) > tol * abs(mean):
        raise MomentMismatchError(f"mean: closed form {mean!r} vs CF difference {fd_mean!r}")
    second = var + mean * mean
    if abs(fd_second - second) > tol * abs(second):
        raise MomentMismatchError(f"second moment: closed form {second!r} vs CF difference {fd_second!r}")
    return mean, var


def zeros_of_q(s: PureStateSpec) -> list[float]:
    """Radii in (0, R) of the circles where Q_j vanishes, ascending.

    They come from the zeros x_i of the Jacobi factor via 1 - 2 r^2/R^2 = x_i.
    """
    if s.lo == 0:
        return []
    xs = jacobi_zeros(s.lo, s.gap, s.params.alpha)
    return sorted(s.params.R * math.sqrt((1 - x) / 2) for x in xs)


__all__ = [
    "DiskPoint",
    "PureStateSpec",
    "RadialDensity",
    "cdf_lambda",
    "cf_pure",
    "cf_pure_euclid",
    "cjk_coeff",
    "cjk_coeff_limit",
    "mean_pure",
    "moments",
    "q_pure",
    "q_pure_euclid",
    "radial_density",
    "tau_factor",
    "var_pure",
    "zeros_of_q",
]
