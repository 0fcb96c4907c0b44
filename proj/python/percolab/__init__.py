"""Critical percolation clusters on random planar triangulations."""

from ._percolab import (
    CapExceeded,
    DomainError,
    ValidationError,
    boltzmann_weight,
    build_cluster,
    c_alpha,
    critical_probability,
    effective_resistance,
    gh_bounds,
    peeling_probability,
    sample_crt,
    sample_excursion,
    sample_taus,
    scaling_constants,
    step_law,
    verify,
)

__all__ = [
    "CapExceeded",
    "DomainError",
    "ValidationError",
    "boltzmann_weight",
    "build_cluster",
    "c_alpha",
    "critical_probability",
    "effective_resistance",
    "gh_bounds",
    "peeling_probability",
    "sample_crt",
    "sample_excursion",
    "sample_taus",
    "scaling_constants",
    "step_law",
    "verify",
]
