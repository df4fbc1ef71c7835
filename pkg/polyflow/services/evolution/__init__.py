from .evolve import (
    cauchy_lipschitz,
    evolve_roots,
    evolve_to_psq_zero,
    march,
    relative_drift,
    trace_to_csv,
    verify_against_closed_form,
)
from .integrator import ode_rhs, rk4_step

__all__ = [
    "cauchy_lipschitz",
    "evolve_roots",
    "evolve_to_psq_zero",
    "march",
    "ode_rhs",
    "relative_drift",
    "rk4_step",
    "trace_to_csv",
    "verify_against_closed_form",
]
