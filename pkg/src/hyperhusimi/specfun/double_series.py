"""Two-variable hypergeometric series and the identities built on them."""

import cmath
import math
from dataclasses import dataclass, replace

import mpmath

from ..errors import DomainError, NoConvergenceError, PoleError
from .gamma import is_nonpositive_integer, pochhammer
from .polynomials import laguerre_L
from .series import (
    SeriesConfig,
    pfq_sum,
    bits_needed,
    check_denominators,
    current_config,
    hyp_pFq,
    resum_extended,
    termination_index,
)


@dataclass(frozen=True)
class KdFParams:
    """Parameter groups of a Kampe de Feriet function F^{p:q:k}_{l:m:n}.

    ``a_top``/``alpha_bot`` couple the two indices through (.)_{r+s};
    ``b_top``/``beta_bot`` belong to the x-index r and ``c_top``/``gamma_bot``
    to the y-index s.
    """

    a_top: tuple = ()
    b_top: tuple = ()
    c_top: tuple = ()
    alpha_bot: tuple = ()
    beta_bot: tuple = ()
    gamma_bot: tuple = ()

    def __post_init__(self):
        for name in ("a_top", "b_top", "c_top", "alpha_bot", "beta_bot", "gamma_bot"):
            object.__setattr__(self, name, tuple(getattr(self, name)))


def _min_bound(*bounds):
    vals = [b for b in bounds if b is not None]
    return min(vals) if vals else None


def _prod_poch(params, k):
    out = 1.0
    for p in params:
        out *= pochhammer(p, k)
    return out


def kampe_de_feriet(p: KdFParams, x, y, cfg: SeriesConfig | None = None):
    """Kampe de Feriet double series.

    Summed as an outer series over the y-index s; for each s the x-direction
    is a one-variable pFq with the coupled parameters shifted by s, summed to
    rel_tol/10. Terminating directions are summed to their last term.
    """
    cfg = cfg or current_config()
    coupled = termination_index(p.a_top)
    r_last = _min_bound(termination_index(p.b_top), coupled)
    s_last = _min_bound(termination_index(p.c_top), coupled)
    pair_last = coupled
    if r_last is not None and s_last is not None:
        pair_last = _min_bound(coupled, r_last + s_last)
    check_denominators(p.alpha_bot, pair_last, "Kampe de Feriet (coupled)")
    if x != 0:
        check_denominators(p.beta_bot, r_last, "Kampe de Feriet (x)")
    if y != 0:
        check_denominators(p.gamma_bot, s_last, "Kampe de Feriet (y)")

    inner_cfg = cfg.tighter()
    total = 0.0 + 0 * x + 0 * y
    small = 0
    n_max = s_last + 1 if s_last is not None else cfg.max_terms
    for s in range(n_max):
        if s and y == 0:
            break
        num = _prod_poch(p.a_top, s) * _prod_poch(p.c_top, s)
        if num == 0:
            break
        den = _prod_poch(p.alpha_bot, s) * _prod_poch(p.gamma_bot, s)
        if den == 0:
            raise PoleError(f"Kampe de Feriet: vanishing denominator at s={s}")
        outer = num / den * y**s / math.factorial(s)
        inner = hyp_pFq(
            [a + s for a in p.a_top] + list(p.b_top),
            [al + s for al in p.alpha_bot] + list(p.beta_bot),
            x,
            inner_cfg,
        )
        term = outer * inner
        total += term
        if s_last is not None:
            continue
        if abs(term) <= cfg.rel_tol * abs(total):
            small += 1
            if small >= cfg.consecutive_small:
                return total
        else:
            small = 0
    if s_last is not None or y == 0:
        return total
    raise NoConvergenceError(f"Kampe de Feriet: no convergence after {cfg.max_terms} outer terms", partial=total)


def humbert_phi1(a, b, c, w, z, cfg: SeriesConfig | None = None):
    """Humbert confluent series Phi_1(a, b; c | w, z).

    Phi_1 = sum_{k,n} (a)_{k+n} (b)_k / ((c)_{k+n} k! n!) w^k z^n, evaluated as
    sum_n (a)_n/(c)_n z^n/n! * 2F1(a+n, b; c+n | w).
    """
    cfg = cfg or current_config()
    coupled = termination_index([a])
    w_last = _min_bound(termination_index([b]), coupled)
    if coupled is None:
        check_denominators([c], None if (w_last is None or z != 0) else w_last, "Phi_1")
    else:
        check_denominators([c], coupled, "Phi_1")
    if w_last is None and abs(w) >= 1:
        raise DomainError(f"Phi_1 needs |w| < 1 unless the w-series terminates, got |w|={abs(w)}")

    inner_cfg = cfg.tighter()
    n_max = coupled + 1 if coupled is not None else cfg.max_terms
    total, mass = _phi1_loop(a, b, c, w, z, n_max, coupled is None, cfg, lambda aa, cc, x: hyp_pFq([aa, b], [cc], x, inner_cfg))
    if bits_needed(total, mass, cfg.rel_tol) <= 53:
        return total

    def run():
        ma, mb, mc, mw, mz = (mpmath.mpmathify(v) for v in (a, b, c, w, z))
        w_stop = termination_index([b])
        # the outer cancellation amplifies inner truncation error, so sum the inner series to working precision
        deep = replace(inner_cfg, rel_tol=max(2.0 ** (8 - mpmath.mp.prec), 1e-300))

        def inner(aa, cc, x):
            last = _min_bound(w_stop, termination_index([aa]))
            return pfq_sum([aa, mb], [cc], x, x**0, deep, last)[0]

        return _phi1_loop(ma, mb, mc, mw, mz, n_max, coupled is None, cfg, inner)

    return resum_extended(run, total, mass, cfg.rel_tol)


def _phi1_loop(a, b, c, w, z, n_max, infinite, cfg, inner):
    total = 0 * w + 0 * z
    outer = z**0
    mass = 0 * abs(outer)
    small = 0
    for n in range(n_max):
        if n:
            outer = outer * (a + n - 1) / (c + n - 1) * z / n
        if outer == 0:
            # terminated, or the z-powers underflowed: the remaining tail is exactly zero in floats
            return total, mass
        term = outer * inner(a + n, c + n, w)
        total += term
        mass += abs(term)
        if not infinite:
            continue
        if abs(term) <= cfg.rel_tol * abs(total):
            small += 1
            if small >= cfg.consecutive_small:
                return total, mass
        else:
            small = 0
    if not infinite or z == 0:
        return total, mass
    raise NoConvergenceError(f"Phi_1: no convergence after {cfg.max_terms} terms", partial=total)


# ----------------------------------------------------------------------------
# summation formula for F^{1:2:2}_{2:0:0}


def _int_power(base, e):
    if float(e).is_integer():
        return base ** int(e)
    return cmath.exp(e * cmath.log(base))


def _prop1_region(a, b, c, x) -> str:
    x = complex(x)
    terminating = is_nonpositive_integer(max(a, b)) and is_nonpositive_integer(max(c - a, c - b))
    if x.imag == 0 and (x.real > 0 or x.real < -2 * math.sqrt(2)):
        return "terminating" if terminating else "convergent"
    if terminating and x not in (0, -1):
        return "terminating"
    raise DomainError(
        f"x={x} is outside the validity region (x > 0, x < -2 sqrt 2, or terminating parameters)"
    )


def prop1_support_ok(n: int, a, b, c) -> bool:
    """True when the F^{1:2:2}_{2:0:0} summation formula is an identity.

    The left side only sees the terms s+t <= n of the double series
    sum (a)_s (b)_s (c-a)_t (c-b)_t / ((c)_{s+t} s! t!) (1+x)^{-s-t}, while the
    closed form on the right sums all of them. Both agree exactly when that
    series terminates inside the triangle.
    """
    if not (is_nonpositive_integer(max(a, b)) and is_nonpositive_integer(max(c - a, c - b))):
        return False
    return -max(a, b) - max(c - a, c - b) <= n


def kdf_prop1_sides(n: int, a, b, c, x, variant: str = "statement", cfg: SeriesConfig | None = None):
    """Both sides of the F^{1:2:2}_{2:0:0} summation formula.

    lhs = sum_k C(n,k) F^{1:2:2}_{2:0:0}(-n+k; a,b; c-a,c-b | -n,c; -; - | 1,1) x^k
    rhs = (1+x)^n (x/(1+x))^(a+b-c) 2F1(a,b;c | (1+2x)/(1+x)^2)        (statement)
        = (1+x)^n (x/(1+x))^(c-a-b) 2F1(c-a,c-b;c | (1+2x)/(1+x)^2)    (proof)
    """
    cfg = cfg or current_config()
    if n < 1:
        raise DomainError(f"n must be a positive integer, got {n}")
    _prop1_region(a, b, c, x)
    lhs = 0.0
    for k in range(n + 1):
        f = kampe_de_feriet(KdFParams((-n + k,), (a, b), (c - a, c - b), (-n, c)), 1.0, 1.0, cfg)
        lhs += math.comb(n, k) * f * x**k
    arg = (1 + 2 * x) / (1 + x) ** 2
    ratio = x / (1 + x)
    if variant == "statement":
        rhs = (1 + x) ** n * _int_power(ratio, a + b - c) * hyp_pFq([a, b], [c], arg, cfg)
    elif variant == "proof":
        rhs = (1 + x) ** n * _int_power(ratio, c - a - b) * hyp_pFq([c - a, c - b], [c], arg, cfg)
    else:
        raise ValueError(f"unknown variant {variant!r}")
    return lhs, rhs


# ----------------------------------------------------------------------------
# Jacobi linearization


def linearization_coeffs_general(i, j, lam, delta, mu, gam, alpha, beta, cfg: SeriesConfig | None = None):
    """Coefficients C_k with P_i^{(lam,delta)} P_j^{(mu,gam)} = sum_k C_k P_k^{(alpha,beta)}."""
    cfg = cfg or current_config()
    n = i + j
    ab1 = alpha + beta + 1
    head = (
        math.factorial(n)
        * pochhammer(alpha + 1, n)
        * pochhammer(lam + delta + 1, 2 * i)
        * pochhammer(mu + gam + 1, 2 * j)
        / (math.factorial(i) * math.factorial(j) * pochhammer(lam + delta + 1, i) * pochhammer(mu + gam + 1, j))
    )
    out = []
    for k in range(n + 1):
        body = (-1) ** (n - k) * pochhammer(ab1, k) * (2 * k + ab1)
        body /= math.factorial(n - k) * pochhammer(alpha + 1, k) * pochhammer(ab1, n + k + 1)
        params = KdFParams(
            (-n + k, -ab1 - n - k),
            (-i, -lam - i),
            (-j, -mu - j),
            (-n, -alpha - n),
            (-2 * i - lam - delta,),
            (-2 * j - mu - gam,),
        )
        out.append(head * body * kampe_de_feriet(params, 1.0, 1.0, cfg))
    return out


def jacobi_linearization_coeffs(l: int, a: float, b: float, cfg: SeriesConfig | None = None) -> list[float]:
    """Coefficients C_0..C_{2l} with (P_l^{(a,b)}(x))^2 = sum_k C_k P_k^{(a, b-1)}(x)."""
    cfg = cfg or current_config()
    if a <= -1 or b <= -1:
        raise DomainError(f"need a, b > -1, got {a}, {b}")
    return linearization_coeffs_general(l, l, a, b, a, b, a, b - 1, cfg)


# ----------------------------------------------------------------------------
# generating functions used as consistency checks


def laguerre_generating_check(a, b, t, x, lam, cfg: SeriesConfig | None = None):
    """(lhs, rhs) of sum_n lam^n 2F1(-n,b;1+a|t) L_n^{(a)}(x) = closed form."""
    cfg = cfg or current_config()
    if a < 0:
        raise DomainError(f"need a >= 0, got {a}")
    bound = 1.0 if t == 1 else min(1.0, 1.0 / abs(1 - t))
    if abs(lam) >= bound:
        raise DomainError(f"need |lambda| < {bound}, got {lam}")
    lhs = 0.0
    small = 0
    for n in range(cfg.max_terms):
        term = lam**n * hyp_pFq([-n, b], [1 + a], t, cfg) * laguerre_L(n, a, x)
        lhs += term
        if abs(term) <= cfg.rel_tol * abs(lhs):
            small += 1
            if small >= cfg.consecutive_small:
                break
        else:
            small = 0
    else:
        raise NoConvergenceError("generating series did not converge", partial=lhs)
    q = 1 - lam + t * lam
    rhs = (1 - lam) ** (b - 1 - a) / q**b * math.exp(-x * lam / (1 - lam))
    rhs *= hyp_pFq([b], [1 + a], lam * x * t / ((1 - lam) * q), cfg)
    return lhs, rhs


def prudnikov_generating_sides(abar, bbar, c, t, y, cfg: SeriesConfig | None = None):
    """(lhs, rhs) of sum_k (abar)_k (bbar)_k/(k! (c)_k) t^k 2F1(abar+k,bbar+k;c+k|y) = 2F1(abar,bbar;c|t+y)."""
    cfg = cfg or current_config()
    lhs = 0.0
    coef = 1.0
    small = 0
    inner_cfg = cfg.tighter()
    for k in range(cfg.max_terms):
        if k:
            coef *= (abar + k - 1) * (bbar + k - 1) / (k * (c + k - 1)) * t
        term = coef * hyp_pFq([abar + k, bbar + k], [c + k], y, inner_cfg)
        lhs += term
        if abs(term) <= cfg.rel_tol * abs(lhs):
            small += 1
            if small >= cfg.consecutive_small:
                break
        else:
            small = 0
    else:
        raise NoConvergenceError("generating series did not converge", partial=lhs)
    return lhs, hyp_pFq([abar, bbar], [c], t + y, cfg)
