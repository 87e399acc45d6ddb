"""Reference values computed without the closed forms they are compared against.

Series oracles here re-derive every Pochhammer product and polynomial with
their own loops, so a slip in the special-function layer cannot cancel out.
"""

import cmath
import math
import warnings

import numpy as np

from ..coherent import ModelParams, disk_ratio, number_state
from .quadrature import DEFAULT_QUADRATURE, QuadratureSpec, integrate_radial


class NonMonotoneErrorWarning(UserWarning):
    """Errors in a limit study did not decrease with R."""


def cf_oracle(d, u: float, q: QuadratureSpec = DEFAULT_QUADRATURE) -> complex:
    """int_0^L e^{i u lam} d(lam) dlam for a radial density d."""
    if u == 0:
        return complex(integrate_radial(d, d.support_end, q))
    return integrate_radial(lambda lam: cmath.exp(1j * u * lam) * d(lam), d.support_end, q)


def moment_oracle(d, k: int, q: QuadratureSpec = DEFAULT_QUADRATURE) -> float:
    if k not in (1, 2):
        raise ValueError(f"moment order must be 1 or 2, got {k}")
    return integrate_radial(lambda lam: lam**k * d(lam), d.support_end, q)


def cf_moments(cf, h: float = 1e-4) -> tuple[float, float]:
    """(first, second) raw moments from central differences of a characteristic function."""
    plus, minus = cf(h), cf(-h)
    first = ((plus - minus) / (2j * h)).real
    second = (-(plus - 2 * cf(0) + minus) / (h * h)).real
    return first, second


def _rising(a, k):
    out = 1.0
    for i in range(k):
        out *= a + i
    return out


def _jacobi_direct(n, a, b, x):
    # explicit binomial sum, binomials as falling products
    total = 0.0
    for k in range(n + 1):
        c1 = _rising(n + a - k + 1, k) / math.factorial(k)
        c2 = _rising(b + k + 1, n - k) / math.factorial(n - k)
        total += c1 * c2 * ((x - 1) / 2) ** (n - k) * ((x + 1) / 2) ** k
    return total


def q_pure_series_term(j: int, p: ModelParams, x: float) -> float:
    """Q_j at |z|^2/R^2 = x from the factored definition, all Gamma ratios as loops."""
    m = p.m
    lo, hi = min(m, j), max(m, j)
    a = hi - lo
    A = p.alpha + 1
    # tau_j = lo!/hi! * (A+lo)_{a}
    tau_j = _rising(A + lo, a) / _rising(lo + 1, a)
    P = _jacobi_direct(lo, a, p.alpha, 1 - 2 * x)
    return tau_j * (1 - x) ** A * x**a * P * P


def q_mixed_series(beta: float, p: ModelParams, pt, tail_tol: float = 1e-13) -> float:
    """(1-e^{-beta}) sum_j e^{-beta j} Q_j(z), truncated once the geometric tail is below tail_tol."""
    _, x = disk_ratio(pt, p.R)
    xi = math.exp(-beta)
    # Q_j <= 1, so the tail after J is at most xi^J
    J = max(1, math.ceil(math.log(tail_tol) / math.log(xi)))
    total = math.fsum(xi**j * q_pure_series_term(j, p, x) for j in range(J + 1))
    return (1 - xi) * total


def heat_kernel_spectral_sum(beta: float, p: ModelParams, r: float, rho: float, n_terms: int = 80, energy=None) -> float:
    """sum_j e^{-beta E_j} <r|j><rho|j> over the number states.

    ``energy`` maps j to E_j; the default is the oscillator spectrum 2j + 2(BR^2 - m).
    """
    if energy is None:
        def energy(j):
            return 2 * j + 2 * (p.tau - p.m)
    return math.fsum(math.exp(-beta * energy(j)) * number_state(j, p, r) * number_state(j, p, rho) for j in range(n_terms))


def rayleigh_energy(j: int, p: ModelParams, xi_max: float = 14.0, n_grid: int = 40001) -> float:
    """<j|H|j> for the isotonic oscillator, with d^2/dxi^2 by central differences.

    H = -1/2 d^2/dxi^2 + ((2(BR^2-m)-1)^2 - 1/4)/(2 xi^2) + xi^2/2.
    """
    xs = np.linspace(0.0, xi_max, n_grid)
    h = xs[1] - xs[0]
    psi = np.array([number_state(j, p, float(x)) if x > 0 else 0.0 for x in xs])
    inner = xs[1:-1]
    second = (psi[2:] - 2 * psi[1:-1] + psi[:-2]) / (h * h)
    pot = (p.alpha**2 - 0.25) / (2 * inner**2) + inner**2 / 2
    h_psi = -0.5 * second + pot * psi[1:-1]
    num = np.trapezoid(psi[1:-1] * h_psi, inner)
    den = np.trapezoid(psi**2, xs)
    return float(num / den)


def limit_rate(err, Rs, noise_floor: float = 1e-15) -> float:
    """Least-squares slope of log(error) against log(R).

    ``err`` maps R to a positive error. Points whose error is below
    1e3 * noise_floor are dropped so the fit does not chase round-off.
    Warns (NonMonotoneErrorWarning) when the kept errors do not decrease.
    """
    pts = [(R, float(err(R))) for R in Rs]
    kept = [(R, e) for R, e in pts if e > 1e3 * noise_floor]
    if len(kept) < 2:
        raise ValueError(f"need at least two errors above the noise floor, got {pts}")
    errs = [e for _, e in kept]
    if any(b >= a for a, b in zip(errs, errs[1:])):
        warnings.warn(f"errors are not decreasing in R: {kept}", NonMonotoneErrorWarning, stacklevel=2)
    lx = np.log([R for R, _ in kept])
    ly = np.log(errs)
    slope, _ = np.polyfit(lx, ly, 1)
    return float(slope)
