from .invariants import (
    coefficient_from_invariants,
    coefficients_from_invariants,
    depress,
    depressed_roots,
    deviation_radius,
    euler_shift_residual,
    invariants_from_shifted,
    pairwise_differences,
    psq_derivative,
    psq_of_p1,
    psq_polynomial,
    shifted_from_invariants,
    square_deviation_sum,
    taylor_shift,
)
from .serialization import from_csv_record, from_json, to_csv_record, to_json
from .vieta import (
    check_simple,
    elementary_symmetric,
    from_monic,
    from_roots,
    to_monic,
)

__all__ = [
    "check_simple",
    "coefficient_from_invariants",
    "coefficients_from_invariants",
    "depress",
    "depressed_roots",
    "deviation_radius",
    "elementary_symmetric",
    "euler_shift_residual",
    "from_csv_record",
    "from_json",
    "from_monic",
    "from_roots",
    "invariants_from_shifted",
    "pairwise_differences",
    "psq_derivative",
    "psq_of_p1",
    "psq_polynomial",
    "shifted_from_invariants",
    "square_deviation_sum",
    "taylor_shift",
    "to_csv_record",
    "to_json",
    "to_monic",
]
