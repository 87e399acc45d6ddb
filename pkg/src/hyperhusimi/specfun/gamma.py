"""Factorial-type symbols and Gamma/Beta evaluated in the log domain."""

import math

from ..errors import DomainError, PoleError

# integer gaps up to this size are evaluated as explicit products
_PRODUCT_GAP = 64


def is_nonpositive_integer(x) -> bool:
    if isinstance(x, complex):
        if x.imag != 0:
            return False
        x = x.real
    return x <= 0 and float(x).is_integer()


def pochhammer(a, k: int):
    """Rising factorial (a)_k = a (a+1) ... (a+k-1); works for complex a."""
    if k < 0:
        raise DomainError(f"pochhammer needs k >= 0, got {k}")
    if is_nonpositive_integer(a) and k > -a:
        return 0 * a
    out = 1.0
    for i in range(k):
        out *= a + i
    return out


def binomial_general(a, k: int):
    """Generalized binomial a(a-1)...(a-k+1)/k!."""
    if k < 0:
        raise DomainError(f"binomial_general needs k >= 0, got {k}")
    out = 1.0
    for i in range(k):
        out *= (a - i) / (i + 1)
    return out


def log_gamma(x: float) -> float:
    """log|Gamma(x)|. Thin wrapper over math.lgamma that refuses the poles."""
    if is_nonpositive_integer(x):
        raise PoleError(f"Gamma has a pole at {x}")
    return math.lgamma(x)


def gamma_sign(x: float) -> int:
    if is_nonpositive_integer(x):
        raise PoleError(f"Gamma has a pole at {x}")
    if x > 0:
        return 1
    return -1 if math.ceil(-x) % 2 else 1


def log_gamma_ratio(num: float, den: float) -> tuple[int, float]:
    """(sign, log|Gamma(num)/Gamma(den)|).

    When num-den is a small integer the ratio is a Pochhammer product, which
    keeps full relative precision even for arguments of order 1e6.
    """
    gap = num - den
    if float(gap).is_integer() and abs(gap) <= _PRODUCT_GAP:
        n = int(gap)
        if n >= 0:
            if is_nonpositive_integer(den):
                raise PoleError(f"Gamma has a pole at {den}")
            p = pochhammer(den, n)
            if p == 0:
                # Gamma(num) sits on a pole while Gamma(den) does not
                raise PoleError(f"Gamma has a pole at {num}")
        else:
            if is_nonpositive_integer(num):
                raise PoleError(f"Gamma has a pole at {num}")
            p = pochhammer(num, -n)
            if p == 0:
                return 1, -math.inf
            p = 1.0 / p
        return (1 if p > 0 else -1), math.log(abs(p))
    sign = gamma_sign(num) * gamma_sign(den)
    return sign, math.lgamma(num) - math.lgamma(den)


def gamma_ratio(num: float, den: float) -> float:
    """Gamma(num)/Gamma(den) without ever forming either Gamma value."""
    sign, logval = log_gamma_ratio(num, den)
    return sign * math.exp(logval)


def beta_fn(a: float, b: float) -> float:
    if a <= 0 or b <= 0:
        raise DomainError(f"beta_fn needs a, b > 0, got {a}, {b}")
    if b < a:
        a, b = b, a
    # B(a,b) = Gamma(a) * Gamma(b)/Gamma(a+b); the second factor is a ratio
    _, lr = log_gamma_ratio(b, a + b)
    return math.exp(math.lgamma(a) + lr)
