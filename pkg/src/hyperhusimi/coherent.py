"""Generalized coherent states attached to hyperbolic Landau levels.

Wavefunctions live either on L^2(R+, xi^-1 dxi) (labels in the upper half-plane
or the unit disk) or, after the rescaling xi -> xi^2, on L^2(R+, dxi) with
labels in the disk of radius R.
"""

import cmath
import math
from dataclasses import dataclass

from .errors import DomainError, ParameterError
from .specfun import gamma_ratio, hyp_pFq, jacobi_P, laguerre_L, log_gamma_ratio


@dataclass(frozen=True)
class ModelParams:
    """Field strength B, disk radius R and Landau level m.

    Admissible when 2BR^2 > 1 and the Laguerre order 2(BR^2 - m) - 1 is
    positive, i.e. m runs over 0..floor(BR^2 - 1/2).
    """

    B: float
    R: float
    m: int

    def __post_init__(self):
        if not (self.B > 0 and self.R > 0):
            raise ParameterError(f"B and R must be positive, got B={self.B}, R={self.R}")
        if int(self.m) != self.m or self.m < 0:
            raise ParameterError(f"m must be a nonnegative integer, got {self.m}")
        object.__setattr__(self, "m", int(self.m))
        if 2 * self.tau <= 1:
            raise ParameterError(f"need 2*B*R^2 > 1, got {2 * self.tau:g}")
        if self.alpha <= 0:
            top = max_level(self.B, self.R)
            raise ParameterError(
                f"m={self.m} is not an admissible level for B*R^2={self.tau:g}; allowed m = 0..{top}"
            )

    @property
    def tau(self) -> float:
        return self.B * self.R**2

    @property
    def alpha(self) -> float:
        return 2 * (self.tau - self.m) - 1


def max_level(B: float, R: float) -> int:
    """Largest m with 2(BR^2 - m) - 1 > 0."""
    top = math.floor(B * R**2 - 0.5)
    if 2 * (B * R**2 - top) - 1 <= 0:
        top -= 1
    return top


def admissible_levels(B: float, R: float) -> range:
    if 2 * B * R**2 <= 1:
        raise ParameterError(f"need 2*B*R^2 > 1, got {2 * B * R**2:g}")
    return range(max_level(B, R) + 1)


@dataclass(frozen=True)
class DiskPoint:
    # |z| < R is checked by each operation, so one point serves many radii
    z: complex


@dataclass(frozen=True)
class HalfPlanePoint:
    x: float
    y: float

    def __post_init__(self):
        if not self.y > 0:
            raise DomainError(f"half-plane point needs y > 0, got {self.y}")

    @property
    def w(self) -> complex:
        return complex(self.x, self.y)


def as_complex(pt) -> complex:
    if isinstance(pt, DiskPoint):
        return complex(pt.z)
    if isinstance(pt, HalfPlanePoint):
        return pt.w
    return complex(pt)


def disk_ratio(pt, R: float) -> tuple[complex, float]:
    """(z, |z|^2/R^2) after checking |z| < R."""
    z = as_complex(pt)
    x = abs(z) ** 2 / R**2
    if not x < 1:
        raise DomainError(f"|z|={abs(z):g} must be < R={R:g}")
    return z, x


def _check_level(B, m):
    if not 2 * B - m > 0 or m < 0:
        raise DomainError(f"need 2B - m > 0 and m >= 0, got B={B}, m={m}")


def _log_norm(B, m):
    # log (Gamma(2B-m)/m!)^(-1/2)
    return -0.5 * (math.lgamma(2 * B - m) - math.lgamma(m + 1))


def phi_admissible(B: float, m: int, xi: float) -> float:
    """Admissible vector phi_{B,m}(xi) in L^2(R+, xi^-1 dxi)."""
    _check_level(B, m)
    if xi <= 0:
        raise DomainError(f"xi must be positive, got {xi}")
    lag = laguerre_L(m, 2 * (B - m) - 1, xi)
    return math.exp(_log_norm(B, m) + (B - m) * math.log(xi) - xi / 2) * lag


def tau_wavefunction(p: HalfPlanePoint, B: float, m: int, xi: float) -> complex:
    """<xi|tau_{(x,y),B,m}>, the admissible vector moved by the affine group."""
    _check_level(B, m)
    if xi <= 0:
        raise DomainError(f"xi must be positive, got {xi}")
    t = xi * p.y
    lag = laguerre_L(m, 2 * (B - m) - 1, t)
    return cmath.exp(_log_norm(B, m) + (B - m) * math.log(t) - xi * (p.y - 1j * p.x) / 2) * lag


def inverse_cayley(z) -> HalfPlanePoint:
    z = as_complex(z)
    if abs(z) >= 1:
        raise DomainError(f"inverse Cayley transform needs |z| < 1, got {abs(z):g}")
    d = abs(1 - z) ** 2
    return HalfPlanePoint(-2 * z.imag / d, (1 - abs(z) ** 2) / d)


def kappa_wavefunction(z, B: float, m: int, xi: float) -> complex:
    """<xi|kappa_{z,B,m}> for |z| < 1, principal branch for (1-z)^(2B)."""
    z = as_complex(z)
    _check_level(B, m)
    if abs(z) >= 1:
        raise DomainError(f"need |z| < 1, got {abs(z):g}")
    if xi <= 0:
        raise DomainError(f"xi must be positive, got {xi}")
    one_minus = 1 - z
    s = 1 - abs(z) ** 2
    lag = laguerre_L(m, 2 * (B - m) - 1, xi * s / abs(one_minus) ** 2)
    expo = (
        _log_norm(B, m)
        + 2 * m * math.log(abs(one_minus))
        - 2 * B * cmath.log(one_minus)
        + (B - m) * math.log(s * xi)
        - xi / 2 * (1 + z) / one_minus
    )
    return cmath.exp(expo) * lag


def kappa_tilde_wavefunction(pt, p: ModelParams, xi: float) -> complex:
    """<xi|kappa~_{z,B,R,m}> = sqrt(2/xi) <xi^2|kappa_{z/R, BR^2, m}>, a unit vector of L^2(R+, dxi)."""
    z, _ = disk_ratio(pt, p.R)
    return math.sqrt(2 / xi) * kappa_wavefunction(z / p.R, p.tau, p.m, xi * xi)


def number_state(j: int, p: ModelParams, xi: float) -> float:
    """Orthonormal basis function <xi|j> of L^2(R+, dxi)."""
    if j < 0:
        raise DomainError(f"j must be >= 0, got {j}")
    if xi <= 0:
        raise DomainError(f"xi must be positive, got {xi}")
    a = p.alpha
    lag = laguerre_L(j, a, xi * xi)
    if lag == 0:
        return 0.0
    log_mod = 0.5 * (math.log(2) + math.lgamma(j + 1) - math.lgamma(a + 1 + j)) + (a + 0.5) * math.log(xi) - xi * xi / 2
    return math.copysign(math.exp(log_mod + math.log(abs(lag))), lag)


def gamma_coeff(j: int, p: ModelParams, pt) -> complex:
    """Expansion coefficient gamma_j(z) of kappa~ on the number states (before 1/sqrt(N))."""
    z, x = disk_ratio(pt, p.R)
    m = p.m
    lo, hi = min(m, j), max(m, j)
    gap = hi - lo
    # the two Gamma ratios are individually huge for large j; combine in logs
    log_tau = log_gamma_ratio(lo + 1, hi + 1)[1] + log_gamma_ratio(p.alpha + 1 + hi, p.alpha + 1 + lo)[1]
    sign = (-1) ** (m + lo)
    phase = cmath.exp(-1j * (m - j) * cmath.phase(z)) if z != 0 else 1.0
    if x == 0:
        if gap:
            return 0j
        log_x = 0.0
    else:
        log_x = math.log(x)
    radial = math.exp(0.5 * (math.log(p.alpha / math.pi) + log_tau + gap * log_x) - m * math.log1p(-x))
    return sign * radial * phase * jacobi_P(lo, gap, p.alpha, 1 - 2 * x)


def normalization_N(p: ModelParams, pt) -> float:
    _, x = disk_ratio(pt, p.R)
    return p.alpha / math.pi * math.exp(-2 * p.tau * math.log1p(-x))


def measure_density(p: ModelParams, pt) -> float:
    """Density of d mu_{B,R,m} with respect to Lebesgue measure on the disk."""
    _, x = disk_ratio(pt, p.R)
    return p.alpha / (math.pi * p.R**2 * (1 - x) ** 2)


def _principal_power(base: complex, e: float) -> complex:
    return cmath.exp(e * cmath.log(base))


def kernel_halfplane(w, zeta, B: float, m: int, form: str = "corrected") -> complex:
    """Reproducing kernel K(w, zeta) = <tau_zeta|tau_w> of the m-th level on the half-plane.

    ``form="corrected"`` uses 2F1(-m, 2B-m; 2(B-m) | t), which equals the
    numerically integrated overlap and has K(w,w)=1. ``form="printed"`` keeps
    the upper parameter -m-2B; it only agrees for m = 0.
    """
    w, zeta = as_complex(w), as_complex(zeta)
    _check_level(B, m)
    if w.imag <= 0 or zeta.imag <= 0:
        raise DomainError("kernel_halfplane needs points with positive imaginary part")
    if form == "corrected":
        upper = 2 * B - m
    elif form == "printed":
        upper = -m - 2 * B
    else:
        raise ValueError(f"unknown form {form!r}")
    d = abs(w - zeta.conjugate()) ** 2
    t = 4 * w.imag * zeta.imag / d
    alpha_bm = (-1) ** m * gamma_ratio(2 * B - m, 2 * B - 2 * m) / math.factorial(m)
    ratio = (zeta - w.conjugate()) / (w - zeta.conjugate())
    return alpha_bm * t ** (B - m) * _principal_power(ratio, B) * hyp_pFq([-m, upper], [2 * (B - m)], t)


def kernel_disk(z, w, B: float, m: int) -> complex:
    """Reproducing kernel K_{B,m}(z, w) on the unit disk."""
    z, w = as_complex(z), as_complex(w)
    _check_level(B, m)
    if abs(z) >= 1 or abs(w) >= 1:
        raise DomainError("kernel_disk needs |z|, |w| < 1")
    c = 2 * (B - m) - 1
    cross = 1 - z * w.conjugate()
    sz, sw = 1 - abs(z) ** 2, 1 - abs(w) ** 2
    ratio = abs(cross) ** 2 / (sz * sw)
    return c / math.pi * _principal_power(cross, -2 * B) * ratio**m * jacobi_P(m, 0, c, 2 / ratio - 1)
