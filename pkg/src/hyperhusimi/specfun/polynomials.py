"""Jacobi and Laguerre polynomials, plus Jacobi zeros."""

import math

import numpy as np

from ..errors import DomainError
from .gamma import binomial_general, pochhammer

# above this cancellation ratio (sum of |terms| over |sum|) the explicit sums
# hand over to the three-term recurrence
CONDITION_LIMIT = 1e6
DIRECT_MAX_DEGREE = 30


def _jacobi_terms(n, a, b, x):
    """Summands of the binomial form, grouped as ((x+1)/2)^k ((x-1)/2)^(n-k)."""
    up = (x + 1) / 2
    dn = (x - 1) / 2
    return [binomial_general(n + a, k) * binomial_general(n + b, n - k) * up**k * dn ** (n - k) for k in range(n + 1)]


def _jacobi_hyp_terms(n, a, b, x):
    # the terminating 2F1 form: same summands reached through Pochhammer ratios
    lead = pochhammer(b + 1, n) / math.factorial(n)
    up = (x + 1) / 2
    dn = (x - 1) / 2
    out = []
    for k in range(n + 1):
        coef = lead * pochhammer(-n, k) * pochhammer(-a - n, k) / (pochhammer(b + 1, k) * math.factorial(k))
        out.append(coef * up**k * dn ** (n - k))
    return out


def _jacobi_recurrence(n, a, b, x):
    p_prev, p = 1.0, (a + 1) + (a + b + 2) * (x - 1) / 2
    if n == 0:
        return p_prev
    for k in range(2, n + 1):
        s = 2 * k + a + b
        c0 = 2 * k * (k + a + b) * (s - 2)
        c1 = (s - 1) * (s * (s - 2) * x + a * a - b * b)
        c2 = 2 * (k + a - 1) * (k + b - 1) * s
        p_prev, p = p, (c1 * p - c2 * p_prev) / c0
    return p


def _condition(terms):
    total = math.fsum(terms)
    mass = math.fsum(abs(t) for t in terms)
    if total == 0:
        return math.inf if mass else 1.0
    return mass / abs(total)


def jacobi_P(n: int, a: float, b: float, x: float, method: str = "auto") -> float:
    """Jacobi polynomial P_n^{(a,b)}(x).

    ``method``: "sum" (binomial sum), "hyp" (terminating 2F1 form),
    "recurrence", or "auto", which uses the binomial sum unless n is large or
    the sum cancels badly, then falls back to the recurrence.
    """
    if n < 0:
        raise DomainError(f"degree must be >= 0, got {n}")
    if n == 0:
        return 1.0
    if method == "recurrence":
        return _jacobi_recurrence(n, a, b, x)
    if method == "hyp":
        return math.fsum(_jacobi_hyp_terms(n, a, b, x))
    terms = _jacobi_terms(n, a, b, x)
    if method == "sum":
        return math.fsum(terms)
    if method != "auto":
        raise ValueError(f"unknown method {method!r}")
    if n < DIRECT_MAX_DEGREE and _condition(terms) <= CONDITION_LIMIT:
        return math.fsum(terms)
    if a <= -1 or b <= -1:
        # the recurrence needs a, b > -1; the sum is still a valid polynomial
        return math.fsum(terms)
    return _jacobi_recurrence(n, a, b, x)


def laguerre_L(n: int, a: float, x: float, method: str = "auto") -> float:
    """Generalized Laguerre polynomial L_n^{(a)}(x)."""
    if n < 0:
        raise DomainError(f"degree must be >= 0, got {n}")
    if n == 0:
        return 1.0
    terms = []
    t = binomial_general(n + a, n)
    for k in range(n + 1):
        terms.append(t)
        # ratio of consecutive summands
        t *= -x * (n - k) / ((k + 1) * (a + k + 1)) if k < n else 0.0
    use_sum = method == "sum" or (
        method == "auto" and (n < DIRECT_MAX_DEGREE or a <= -1) and _condition(terms) <= CONDITION_LIMIT
    )
    if use_sum or a <= -1:
        return math.fsum(terms)
    p_prev, p = 1.0, 1 + a - x
    for k in range(2, n + 1):
        p_prev, p = p, ((2 * k - 1 + a - x) * p - (k - 1 + a) * p_prev) / k
    return p


def jacobi_zeros(n: int, a: float, b: float, tol: float = 1e-14) -> list[float]:
    """Zeros of P_n^{(a,b)} on (-1, 1), ascending.

    Sign changes are located on a grid that is uniform in the bulk and
    geometric towards both endpoints (zeros crowd an endpoint when a or b is
    large), then each bracket is narrowed by bisection and polished by secant
    steps that are only accepted inside the bracket.
    """
    if n < 1:
        raise DomainError(f"need n >= 1, got {n}")

    def p(x):
        return jacobi_P(n, a, b, x)

    edge = 1 - np.logspace(-1, -15, 57)
    brackets = []
    for size in (64 * n, 512 * n, 4096 * n):
        grid = np.unique(np.concatenate([np.linspace(-1, 1, size + 1)[1:-1], edge, -edge]))
        vals = [p(float(x)) for x in grid]
        brackets = []
        for i in range(len(grid) - 1):
            if vals[i] == 0:
                brackets.append((float(grid[i]), float(grid[i])))
            elif vals[i] * vals[i + 1] < 0:
                brackets.append((float(grid[i]), float(grid[i + 1])))
        if len(brackets) == n:
            break
    if len(brackets) != n:
        raise ArithmeticError(f"found {len(brackets)} sign changes for P_{n}^({a},{b}), expected {n}")

    roots = []
    for lo, hi in brackets:
        if lo == hi:
            roots.append(lo)
            continue
        flo = p(lo)
        while hi - lo > 1e-8 * max(1.0, abs(lo)):
            mid = 0.5 * (lo + hi)
            fm = p(mid)
            if fm == 0:
                lo = hi = mid
                break
            if (fm < 0) == (flo < 0):
                lo, flo = mid, fm
            else:
                hi = mid
        x0, x1 = lo, hi
        f0, f1 = p(x0), p(x1)
        for _ in range(50):
            if f1 == f0 or abs(x1 - x0) <= tol * max(1.0, abs(x1)):
                break
            x2 = x1 - f1 * (x1 - x0) / (f1 - f0)
            if not lo <= x2 <= hi:
                x2 = 0.5 * (lo + hi)
            x0, f0 = x1, f1
            x1, f1 = x2, p(x2)
            if f1 == 0:
                break
        roots.append(x1)
    return sorted(roots)
