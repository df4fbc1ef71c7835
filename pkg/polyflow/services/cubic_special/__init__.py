from .jacobi import (
    cubic_eigenvalue_flow,
    flow_speed_constant,
    glaisher_quotients,
    jacobi_eigenvalue_parametrization,
    jacobi_sn_cn_dn,
)
from .trig import solve_cubic_trig
from .weierstrass import (
    calibrate_argument_scale,
    elliptic_constants,
    invariants_from_flow,
    weierstrass_flow,
    weierstrass_roots_check,
)

__all__ = [
    "calibrate_argument_scale",
    "cubic_eigenvalue_flow",
    "elliptic_constants",
    "flow_speed_constant",
    "glaisher_quotients",
    "invariants_from_flow",
    "jacobi_eigenvalue_parametrization",
    "jacobi_sn_cn_dn",
    "solve_cubic_trig",
    "weierstrass_flow",
    "weierstrass_roots_check",
]
