"""One-variable hypergeometric series and the modified Bessel function."""

import cmath
import math
from contextlib import contextmanager
from contextvars import ContextVar
from dataclasses import dataclass, replace

import mpmath

from ..errors import DivergenceError, DomainError, NoConvergenceError, PoleError
from .gamma import is_nonpositive_integer


@dataclass(frozen=True)
class SeriesConfig:
    """Stopping rule shared by every infinite series in the package.

    A sum stops once ``consecutive_small`` successive terms are each below
    ``rel_tol`` times the running partial sum.
    """

    rel_tol: float = 1e-12
    max_terms: int = 10_000
    consecutive_small: int = 3

    def __post_init__(self):
        if not self.rel_tol > 0:
            raise ValueError(f"rel_tol must be positive, got {self.rel_tol}")
        if self.max_terms < 1:
            raise ValueError(f"max_terms must be >= 1, got {self.max_terms}")
        if self.consecutive_small < 1:
            raise ValueError(f"consecutive_small must be >= 1, got {self.consecutive_small}")

    def tighter(self, factor: float = 10.0) -> "SeriesConfig":
        return replace(self, rel_tol=self.rel_tol / factor)


DEFAULT_CONFIG = SeriesConfig()

_ACTIVE: ContextVar[SeriesConfig] = ContextVar("series_config", default=DEFAULT_CONFIG)


def current_config() -> SeriesConfig:
    """Stopping rule used when a series function is called without ``cfg``."""
    return _ACTIVE.get()


@contextmanager
def series_config(cfg: SeriesConfig):
    """Make ``cfg`` the default stopping rule inside the block."""
    token = _ACTIVE.set(cfg)
    try:
        yield cfg
    finally:
        _ACTIVE.reset(token)


def termination_index(params) -> int | None:
    """Largest index with a nonzero term when some parameter is 0, -1, -2, ..."""
    stops = [int(-p.real if isinstance(p, complex) else -p) for p in params if is_nonpositive_integer(p)]
    return min(stops) if stops else None


def check_denominators(bottom, last_index: int | None, what: str = "series"):
    """Raise PoleError if a bottom parameter vanishes before the series ends.

    A bottom parameter -n only enters the denominators of terms k > n.
    """
    for c in bottom:
        if is_nonpositive_integer(c):
            n = int(-c.real if isinstance(c, complex) else -c)
            if last_index is None or last_index > n:
                raise PoleError(f"{what}: denominator parameter {c} hits a pole before termination")


# bits carried by a float, and the most extra precision a cancelling sum may ask for
_FLOAT_BITS = 53
_MAX_BITS = 1024


def bits_needed(total, mass, rel_tol: float) -> int:
    """Working precision for which a sum of |terms| = ``mass`` still meets ``rel_tol``."""
    size = abs(total)
    if size == 0:
        return _MAX_BITS if mass else 0
    lost = float(mpmath.log(mass, 2) - mpmath.log(size, 2)) if mass > size else 0.0
    return math.ceil(lost + math.log2(1 / rel_tol)) + 4


def resum_extended(run, total, mass, rel_tol: float):
    """Repeat ``run`` on mpmath numbers until cancellation no longer eats ``rel_tol``.

    ``run()`` must return ``(total, mass)`` computed from mpmath-typed inputs.
    The result has the Python type of ``total``.
    """
    cast = type(total)
    bits = _FLOAT_BITS
    while bits < _MAX_BITS:
        need = bits_needed(total, mass, rel_tol)
        if need <= bits:
            break
        # the float estimate of the cancellation is optimistic, so overshoot
        bits = min(need + 32, _MAX_BITS)
        with mpmath.workprec(bits):
            total, mass = run()
    return cast(total) if cast is float else complex(total)


def pfq_sum(a, c, z, one, cfg: SeriesConfig, last):
    """Raw pFq summation returning (sum, sum of |terms|); ``one`` fixes the number type."""
    term = one
    total = one
    mass = abs(one)
    small = 0
    n_max = last if last is not None else cfg.max_terms
    for k in range(n_max):
        num = 1.0
        for ai in a:
            num *= ai + k
        den = float(k + 1)
        for ci in c:
            den *= ci + k
        term = term * num / den * z
        total += term
        mass += abs(term)
        if last is not None:
            continue
        if abs(term) <= cfg.rel_tol * abs(total):
            small += 1
            if small >= cfg.consecutive_small:
                return total, mass
        else:
            small = 0
    if last is not None:
        return total, mass
    raise NoConvergenceError(f"hyp_pFq: no convergence after {cfg.max_terms} terms", partial=total)


def hyp_pFq(a, c, z, cfg: SeriesConfig | None = None):
    """Generalized hypergeometric series pFq(a; c | z).

    Terminating series (some a_i a nonpositive integer) are summed exactly to
    their last term. Otherwise the series is summed until the stopping rule in
    ``cfg`` fires. When the terms cancel badly (large |z| off the positive
    axis, alternating polynomials) the same sum is redone in extended precision.
    """
    cfg = cfg or current_config()
    a = list(a)
    c = list(c)
    last = termination_index(a)
    check_denominators(c, last, f"{len(a)}F{len(c)}")
    if z == 0 or last == 0:
        return 1.0 + 0 * z
    if last is None:
        p, q = len(a), len(c)
        if p > q + 1:
            raise DivergenceError(f"{p}F{q} diverges for z != 0")
        if p == q + 1 and abs(z) >= 1:
            raise DivergenceError(f"{p}F{q} needs |z| < 1 when it does not terminate, got |z|={abs(z)}")

    total, mass = pfq_sum(a, c, z, 1.0 + 0 * z, cfg, last)
    if bits_needed(total, mass, cfg.rel_tol) <= _FLOAT_BITS:
        return total

    def run():
        mz = mpmath.mpmathify(z)
        return pfq_sum([mpmath.mpmathify(x) for x in a], [mpmath.mpmathify(x) for x in c], mz, mz**0, cfg, last)

    return resum_extended(run, total, mass, cfg.rel_tol)


def gauss_2F1_euler(a, b, c, z, cfg: SeriesConfig | None = None):
    """2F1(a,b;c|z) through Euler's transformation (1-z)^(c-a-b) 2F1(c-a,c-b;c|z)."""
    cfg = cfg or current_config()
    z = complex(z)
    if z.imag == 0 and z.real >= 1:
        raise DomainError(f"z={z.real} lies on the branch cut [1, inf)")
    return (1 - z) ** (c - a - b) * hyp_pFq([c - a, c - b], [c], z, cfg)


def bessel_I(a: float, z, cfg: SeriesConfig | None = None):
    """Modified Bessel function I_a(z) from its power series."""
    cfg = cfg or current_config()
    if a <= -1:
        raise DomainError(f"bessel_I needs order a > -1, got {a}")
    if z == 0:
        return 1.0 if a == 0 else 0.0
    half = z / 2
    if isinstance(z, complex):
        lead = cmath.exp(a * cmath.log(half) - math.lgamma(a + 1))
    elif z > 0:
        lead = math.exp(a * math.log(half) - math.lgamma(a + 1))
    else:
        lead = cmath.exp(a * cmath.log(half) - math.lgamma(a + 1))
    return lead * hyp_pFq([], [a + 1], half * half, cfg)


def log_bessel_I(a: float, x: float, cfg: SeriesConfig | None = None) -> float:
    """log I_a(x) for real x > 0, avoiding overflow of the power prefactor."""
    cfg = cfg or current_config()
    if x <= 0:
        raise DomainError(f"log_bessel_I needs x > 0, got {x}")
    if a <= -1:
        raise DomainError(f"bessel order must exceed -1, got {a}")
    series = hyp_pFq([], [a + 1], x * x / 4, cfg)
    return a * math.log(x / 2) - math.lgamma(a + 1) + math.log(series)
