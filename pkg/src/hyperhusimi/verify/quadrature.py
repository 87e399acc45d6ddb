"""Adaptive quadrature used as the independent reference for every closed form.

The integrator is QUADPACK (scipy.integrate.quad: Gauss-Kronrod 21-point
rules with Wynn epsilon extrapolation, which copes with integrable algebraic
endpoint singularities). Optional variable changes push an endpoint to
infinity when the integrand is steep there.

The right-edge map lam = hi - w e^{-t} rounds lam near hi, so hi - lam keeps
only about half the digits deep in the tail; use it for integrands that
decay at the right end, not for ones that blow up there.
"""

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from ..errors import QuadratureError

SUBSTITUTIONS = ("none", "log_left", "exp_right", "both")


@dataclass(frozen=True)
class QuadratureSpec:
    """Tolerances for one adaptive integral.

    ``max_depth`` bounds the refinement: QUADPACK may use up to
    10 * max_depth subintervals.
    """

    abs_tol: float = 1e-10
    rel_tol: float = 1e-9
    max_depth: int = 40
    endpoint_substitution: str = "none"

    def __post_init__(self):
        if not (self.abs_tol > 0 and self.rel_tol > 0):
            raise ValueError("quadrature tolerances must be positive")
        if self.max_depth < 1:
            raise ValueError(f"max_depth must be >= 1, got {self.max_depth}")
        if self.endpoint_substitution not in SUBSTITUTIONS:
            raise ValueError(f"endpoint_substitution must be one of {SUBSTITUTIONS}")


DEFAULT_QUADRATURE = QuadratureSpec()


def _quad_real(f, a, b, q: QuadratureSpec, points=None):
    kw = dict(epsabs=q.abs_tol, epsrel=q.rel_tol, limit=10 * q.max_depth, points=points)
    with warnings.catch_warnings():
        warnings.simplefilter("error", integrate.IntegrationWarning)
        try:
            val, err = integrate.quad(f, a, b, **kw)
        except integrate.IntegrationWarning as exc:
            warnings.simplefilter("ignore", integrate.IntegrationWarning)
            val, err = integrate.quad(f, a, b, **kw)
            raise QuadratureError(f"quadrature did not reach tolerance: {exc}", estimate=val, abserr=err) from None
    return val, err


def _quad(f, a, b, q, is_complex, points=None):
    if not is_complex:
        return _quad_real(lambda t: float(f(t)), a, b, q, points)
    re, e1 = _quad_real(lambda t: complex(f(t)).real, a, b, q, points)
    im, e2 = _quad_real(lambda t: complex(f(t)).imag, a, b, q, points)
    return complex(re, im), math.hypot(e1, e2)


def _left_map(f, lo, width):
    # lam = lo + width * e^{-t}, t in [0, inf)
    def g(t):
        jac = width * math.exp(-t)
        if jac == 0:
            return 0.0
        return f(lo + jac) * jac

    return g


def _right_map(f, hi, width):
    # lam = hi - width * e^{-t}, t in [0, inf)
    def g(t):
        jac = width * math.exp(-t)
        if jac == 0:
            return 0.0
        return f(hi - jac) * jac

    return g


def integrate_radial_with_error(f, L: float, q: QuadratureSpec = DEFAULT_QUADRATURE):
    """(value, error estimate) of the integral of f over [0, L]."""
    if L <= 0:
        raise ValueError(f"interval length must be positive, got {L}")
    is_complex = isinstance(f(0.5 * L), complex)
    sub = q.endpoint_substitution
    if sub == "none":
        return _quad(f, 0.0, L, q, is_complex)
    if sub == "log_left":
        return _quad(_left_map(f, 0.0, L), 0.0, np.inf, q, is_complex)
    if sub == "exp_right":
        return _quad(_right_map(f, L, L), 0.0, np.inf, q, is_complex)
    v1, e1 = _quad(_left_map(f, 0.0, L / 2), 0.0, np.inf, q, is_complex)
    v2, e2 = _quad(_right_map(f, L, L / 2), 0.0, np.inf, q, is_complex)
    return v1 + v2, e1 + e2


def integrate_radial(f, L: float, q: QuadratureSpec = DEFAULT_QUADRATURE):
    """Integral of f over [0, L]; complex integrands are split into real and imaginary parts."""
    return integrate_radial_with_error(f, L, q)[0]


def integrate_disk_radialized(g, weight, R: float, q: QuadratureSpec = DEFAULT_QUADRATURE) -> float:
    """Integral of a radial function over the disk |z| < R against a radial weight.

    2 pi int_0^R g(r) w(r) r dr, computed in the variable lam = r^2 as
    pi int_0^{R^2} g(sqrt lam) w(sqrt lam) d lam.
    """
    return math.pi * integrate_radial(lambda lam: g(math.sqrt(lam)) * weight(math.sqrt(lam)), R * R, q)


def integrate_disk_polar(f, R: float, q: QuadratureSpec = DEFAULT_QUADRATURE, n_theta: int = 64):
    """Lebesgue integral of a general f(z) over |z| < R.

    The angle uses the trapezoid rule (exact for trigonometric polynomials of
    degree < n_theta); the radius, in lam = r^2, uses adaptive quadrature.
    """
    thetas = 2 * math.pi * np.arange(n_theta) / n_theta
    phases = np.exp(1j * thetas)

    def ring(lam):
        r = math.sqrt(lam)
        return sum(f(r * e) for e in phases) * (math.pi / n_theta)

    return integrate_radial(ring, R * R, q)


def integrate_halfline(f, q: QuadratureSpec = DEFAULT_QUADRATURE):
    """Integral of f over (0, inf) in the variable xi = e^t.

    This resolves power-law behavior at 0 and Gaussian tails at infinity.
    The range is clipped to e^-300 < xi < e^40, so xi f(xi) must be
    negligible outside it (true for every wavefunction in this package).
    """

    def g(t):
        xi = math.exp(t)
        return f(xi) * xi

    is_complex = isinstance(f(1.0), complex)
    return _quad(g, -300.0, 40.0, q, is_complex, points=(-40.0, -10.0, -3.0, 0.0, 2.0, 4.0, 10.0))[0]
