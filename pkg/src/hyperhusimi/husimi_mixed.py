"""Husimi distribution of the thermal state of the isotonic oscillator.

The oscillator H is diagonal in the number states |j> of the m-th level family.
Its Gibbs state e^{-beta H}/Z has a Husimi function Q_beta on the disk that
is a geometric mixture of the pure-state Q_j. This module gives its closed
form, radial law, characteristic function and moments, the flat-space limits,
and a Berezin-Lieb lower bound on the grand potential.

Two energy conventions appear. ``eigenvalue_eta`` is the unit-spaced ladder
used by Z, Q_beta, the grand potential and the bound. ``isotonic_energy`` is
the actual spectrum of the differential operator, which the Bessel heat
kernel reproduces.
"""

import math
from dataclasses import dataclass, field
from typing import Callable

from .coherent import ModelParams, admissible_levels, disk_ratio
from .errors import DomainError, ParameterError
from .husimi_pure import RadialDensity
from .specfun import beta_fn, binomial_general, humbert_phi1, hyp_pFq, jacobi_P, laguerre_L, log_bessel_I
from .verify.quadrature import DEFAULT_QUADRATURE, QuadratureSpec, integrate_radial


@dataclass(frozen=True)
class MixedStateSpec:
    """Inverse temperature beta, model parameters, and the fugacity used by the bound."""

    beta: float
    params: ModelParams
    epsilon: float = 1.0

    def __post_init__(self):
        if not self.beta > 0:
            raise ParameterError(f"beta must be positive, got {self.beta}")
        if not self.epsilon > 0:
            raise ParameterError(f"epsilon must be positive, got {self.epsilon}")

    @property
    def xi(self) -> float:
        return math.exp(-self.beta)


@dataclass(frozen=True)
class SpectrumView:
    eta: Callable[[int], float]
    tau: float


def eigenvalue_eta(j: int, p: ModelParams) -> float:
    """Unit-spaced level j + 4(BR^2 - m) - 1."""
    if j < 0:
        raise DomainError(f"j must be >= 0, got {j}")
    return j + 4 * (p.tau - p.m) - 1


def isotonic_energy(j: int, p: ModelParams) -> float:
    """Eigenvalue of the isotonic oscillator on |j>: 2j + 2(BR^2 - m)."""
    if j < 0:
        raise DomainError(f"j must be >= 0, got {j}")
    return 2 * j + 2 * (p.tau - p.m)


def spectrum(p: ModelParams) -> SpectrumView:
    return SpectrumView(lambda j: eigenvalue_eta(j, p), p.tau)


def partition_Z(ms: MixedStateSpec) -> float:
    p = ms.params
    return math.exp(-(4 * (p.tau - p.m) - 1) * ms.beta) / -math.expm1(-ms.beta)


def heat_kernel(ms: MixedStateSpec, r: float, rho: float) -> float:
    """Bessel (Hille-Hardy) kernel of e^{-beta H} on L^2(R+, dxi), in log domain."""
    if not (r > 0 and rho > 0):
        raise DomainError(f"r and rho must be positive, got {r}, {rho}")
    b = ms.beta
    one_minus = -math.expm1(-2 * b)
    arg = 2 * r * rho * math.exp(-b) / one_minus
    log_w = (
        math.log(2)
        + 0.5 * math.log(r * rho)
        - b
        - math.log(one_minus)
        - 0.5 * (r * r + rho * rho) / math.tanh(b)
        + log_bessel_I(ms.params.alpha, arg)
    )
    return math.exp(log_w)


def _mixture_terms(ms: MixedStateSpec, x: float) -> float:
    # sum_k C(m+alpha,k) C(m,k) xi^{m-k} (1-xi)^{2k} (x/(1-x)^2)^k: every term >= 0
    p = ms.params
    xi = ms.xi
    one_minus_xi = -math.expm1(-ms.beta)
    ratio = x / (1 - x) ** 2
    total = 0.0
    for k in range(p.m + 1):
        total += (
            binomial_general(p.m + p.alpha, k)
            * math.comb(p.m, k)
            * xi ** (p.m - k)
            * one_minus_xi ** (2 * k)
            * ratio**k
        )
    return total


def _log_envelope(ms: MixedStateSpec, x: float) -> float:
    # log of (1-xi) ((1-x)/(1-x xi))^{2BR^2}
    xi = ms.xi
    return math.log(-math.expm1(-ms.beta)) + 2 * ms.params.tau * (math.log1p(-x) - math.log1p(-x * xi))


def q_mixed_closed(ms: MixedStateSpec, pt) -> float:
    """Q_beta(z), with the m-th power and the Jacobi factor expanded into a positive sum."""
    _, x = disk_ratio(pt, ms.params.R)
    return math.exp(_log_envelope(ms, x)) * _mixture_terms(ms, x)


def q_mixed_literal(ms: MixedStateSpec, pt) -> float:
    """Q_beta(z) as the factored product with a Jacobi polynomial P_m^{(alpha,0)}.

    Singular (0/0) on the circle |z|^2 = R^2 e^{-beta}; kept as a cross-check
    of q_mixed_closed away from it.
    """
    p = ms.params
    _, x = disk_ratio(pt, p.R)
    xi = ms.xi
    base = (x - xi) * (1 - x * xi)
    if base == 0:
        raise DomainError("the factored form is 0/0 on |z|^2 = R^2 e^{-beta}")
    arg = 1 + 2 * xi * (1 - x) ** 2 / base
    power = (base / (1 - x) ** 2) ** p.m
    return math.exp(_log_envelope(ms, x)) * power * jacobi_P(p.m, p.alpha, 0, arg)


def q_mixed_euclid(beta: float, B: float, m: int, z) -> float:
    """Flat-space thermal Husimi function of the m-th Landau level."""
    if not beta > 0:
        raise ParameterError(f"beta must be positive, got {beta}")
    lam = 2 * B * abs(complex(z)) ** 2
    one_minus = -math.expm1(-beta)
    return one_minus * math.exp(-beta * m - lam * one_minus) * laguerre_L(m, 0, -4 * lam * math.sinh(beta / 2) ** 2)


def laguerre_photon_pmf(m: int, lam: float, beta: float) -> float:
    """Probability of m photons in a displaced thermal state (Laguerre law)."""
    if m < 0 or int(m) != m:
        raise DomainError(f"m must be a nonnegative integer, got {m}")
    if lam < 0:
        raise DomainError(f"lambda must be >= 0, got {lam}")
    if not beta > 0:
        raise DomainError(f"beta must be positive, got {beta}")
    n_t = 1 / math.expm1(beta)
    head = math.exp(m * math.log(n_t) - (m + 1) * math.log1p(n_t))
    return head * math.exp(-lam / (1 + n_t)) * laguerre_L(int(m), 0, -lam / (n_t * (1 + n_t)))


def _density_value(ms: MixedStateSpec, lam: float) -> float:
    p = ms.params
    R2 = p.R**2
    if not 0 <= lam <= R2:
        raise DomainError(f"lambda must lie in [0, {R2:g}], got {lam}")
    if lam == R2:
        return 0.0
    x = lam / R2
    return p.alpha / R2 / (1 - x) ** 2 * math.exp(_log_envelope(ms, x)) * _mixture_terms(ms, x)


def radial_density_mixed(ms: MixedStateSpec) -> RadialDensity:
    return RadialDensity(ms.params.R**2, lambda lam: _density_value(ms, lam), ms)


def _weights(ms: MixedStateSpec):
    # (k, C(2BR^2-m-1,k) C(m,k) ((1-xi)^2/xi)^k) for k = 0..m
    p = ms.params
    q = (-math.expm1(-ms.beta)) ** 2 / ms.xi
    return [(k, binomial_general(2 * p.tau - p.m - 1, k) * math.comb(p.m, k) * q**k) for k in range(p.m + 1)]


def _prefactor(ms: MixedStateSpec) -> float:
    p = ms.params
    return p.alpha * -math.expm1(-ms.beta) * math.exp(-p.m * ms.beta)


def cf_mixed(ms: MixedStateSpec, u: float) -> complex:
    """Characteristic function of the thermal radial law: a finite sum of Beta x Phi_1 terms."""
    p = ms.params
    T = 2 * p.tau
    z = 1j * u * p.R**2
    total = 0j
    for k, w in _weights(ms):
        total += w * beta_fn(k + 1, T - 2 * k - 1) * humbert_phi1(k + 1, T, T - k, ms.xi, z)
    return _prefactor(ms) * total


def _raw_moment(ms: MixedStateSpec, order: int) -> float:
    p = ms.params
    T = 2 * p.tau
    total = 0.0
    for k, w in _weights(ms):
        total += w * beta_fn(k + 1 + order, T - 2 * k - 1) * hyp_pFq([k + 1 + order, T], [T - k + order], ms.xi)
    return p.R ** (2 * order) * _prefactor(ms) * total


def mean_mixed(ms: MixedStateSpec) -> float:
    return _raw_moment(ms, 1)


def var_mixed(ms: MixedStateSpec) -> float:
    mean = _raw_moment(ms, 1)
    return max(_raw_moment(ms, 2) - mean * mean, 0.0)


def cf_mixed_euclid_limit(beta: float, B: float, m: int, u: float) -> complex:
    """Large-R limit of cf_mixed at fixed u < 2B."""
    if not u < 2 * B:
        raise DomainError(f"the limit is established for u < 2B = {2 * B:g}, got u={u}")
    xi = math.exp(-beta)
    v = 1j * u / (2 * B)
    den = 1 - xi - v
    return (1 - xi) / den * ((1 - xi - v * xi) / den) ** m


def thermo_trace(ms: MixedStateSpec, tail_tol: float = 1e-14) -> float:
    """Grand potential Theta = -(1/beta) sum_j log(1 + eps e^{-beta eta_j}).

    Truncated once eps e^{-beta eta_J}/(1-e^{-beta}), which bounds the
    remaining sum, drops below ``tail_tol``.
    """
    p = ms.params
    one_minus = -math.expm1(-ms.beta)
    total = 0.0
    j = 0
    while True:
        t = ms.epsilon * math.exp(-ms.beta * eigenvalue_eta(j, p))
        if t / one_minus < tail_tol:
            break
        total += math.log1p(t)
        j += 1
    return -total / ms.beta


def _disk_average(ms: MixedStateSpec, f, q: QuadratureSpec) -> float:
    # int over the disk of f(Q_beta) d mu, reduced to lam = |z|^2 in [0, R^2]
    p = ms.params
    R2 = p.R**2

    def integrand(lam):
        if lam >= R2:
            return 0.0
        x = lam / R2
        qv = math.exp(_log_envelope(ms, x)) * _mixture_terms(ms, x)
        return f(qv) * p.alpha / (R2 * (1 - x) ** 2)

    return integrate_radial(integrand, R2, q)


@dataclass
class BoundResult:
    """Outcome of the Berezin-Lieb sweep over levels m.

    ``forced[m]`` uses the lower symbol Z*Q_beta of e^{-beta H} (the variant
    the inequality covers); ``literal[m]`` uses the normalized Q_beta itself.
    """

    beta: float
    epsilon: float
    B: float
    R: float
    levels: list[int] = field(default_factory=list)
    forced: list[float] = field(default_factory=list)
    literal: list[float] = field(default_factory=list)
    theta: list[float] = field(default_factory=list)

    @property
    def gap(self) -> list[float]:
        return [t - f for t, f in zip(self.theta, self.forced)]

    @property
    def argmax(self) -> int:
        return self.levels[max(range(len(self.forced)), key=self.forced.__getitem__)]

    @property
    def bound(self) -> float:
        return max(self.forced)

    def as_dict(self) -> dict:
        return {
            "beta": self.beta,
            "epsilon": self.epsilon,
            "B": self.B,
            "R": self.R,
            "m_star": self.argmax,
            "bound": self.bound,
            "levels": self.levels,
            "bound_per_m": self.forced,
            "literal_per_m": self.literal,
            "theta_exact_per_m": self.theta,
            "gap": self.gap,
        }


def berezin_lieb_lower_bound(
    beta: float, epsilon: float, B: float, R: float, q: QuadratureSpec = DEFAULT_QUADRATURE
) -> BoundResult:
    """Lower bounds (1/beta) int log(1/(1+eps S)) d mu_m <= Theta_m over every admissible m."""
    out = BoundResult(beta, epsilon, B, R)
    for m in admissible_levels(B, R):
        ms = MixedStateSpec(beta, ModelParams(B, R, m), epsilon)
        Z = partition_Z(ms)
        out.levels.append(m)
        out.forced.append(_disk_average(ms, lambda s: -math.log1p(epsilon * Z * s), q) / beta)
        out.literal.append(_disk_average(ms, lambda s: -math.log1p(epsilon * s), q) / beta)
        out.theta.append(thermo_trace(ms))
    return out
