"""Independent numerical oracles: quadrature, truncated series, finite differences, limit fits."""

from .quadrature import (
    DEFAULT_QUADRATURE,
    QuadratureSpec,
    integrate_disk_polar,
    integrate_disk_radialized,
    integrate_halfline,
    integrate_radial,
    integrate_radial_with_error,
)
from .oracles import (
    NonMonotoneErrorWarning,
    cf_moments,
    cf_oracle,
    heat_kernel_spectral_sum,
    limit_rate,
    moment_oracle,
    q_mixed_series,
    q_pure_series_term,
    rayleigh_energy,
)
from .report import VerificationReport, compare, reports_to_json, timed_check

# run_suite lives in .suite; it is not imported here because it depends on the
# Husimi modules, which themselves import the quadrature layer above.
