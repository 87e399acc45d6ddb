"""Special functions: Gamma-type symbols, orthogonal polynomials, hypergeometric series."""

from .double_series import (
    KdFParams,
    humbert_phi1,
    jacobi_linearization_coeffs,
    kampe_de_feriet,
    kdf_prop1_sides,
    laguerre_generating_check,
    linearization_coeffs_general,
    prop1_support_ok,
    prudnikov_generating_sides,
)
from .gamma import beta_fn, binomial_general, gamma_ratio, log_gamma, log_gamma_ratio, pochhammer
from .polynomials import jacobi_P, jacobi_zeros, laguerre_L
from .series import (
    DEFAULT_CONFIG,
    SeriesConfig,
    bessel_I,
    current_config,
    gauss_2F1_euler,
    hyp_pFq,
    log_bessel_I,
    series_config,
)

__all__ = [
    "DEFAULT_CONFIG",
    "KdFParams",
    "SeriesConfig",
    "bessel_I",
    "current_config",
    "beta_fn",
    "binomial_general",
    "gamma_ratio",
    "gauss_2F1_euler",
    "humbert_phi1",
    "hyp_pFq",
    "jacobi_P",
    "jacobi_linearization_coeffs",
    "jacobi_zeros",
    "kampe_de_feriet",
    "kdf_prop1_sides",
    "laguerre_L",
    "laguerre_generating_check",
    "linearization_coeffs_general",
    "log_bessel_I",
    "log_gamma",
    "log_gamma_ratio",
    "pochhammer",
    "prop1_support_ok",
    "prudnikov_generating_sides",
    "series_config",
]
