"""
Degree-n particle dynamics whose characteristic polynomial carries the outer momenta
P_1, ..., P_{n-1} and the squared momentum |P|^2.

    dP/dtau   = -grad V * P_{n-1}
    dP_k/dtau = -(P . grad V) (n-k+2) P_{k-1}     k = 2..n-1
    dP_1/dtau = -(P . grad V)
    dr/dtau   = P

The inner momenta q_k (roots of the polynomial) translate with dq_k/dtau = -(P . grad V).
"""

import csv
import io
import logging
from itertools import combinations

import numpy as np

from ...core.exceptions import InconsistentInitError
from ...schemas.dynamics import (
    ConservationReport,
    DynamicsState,
    PotentialSpec,
    SimulationOptions,
    Trajectory,
)
from ...schemas.polynomials import NormalizedPolynomial
from ..evolution import relative_drift
from ..oracle import durand_kerner, real_roots_or_none
from ..poly_core import depress, psq_of_p1, to_monic
from .energy import effective_potential_polynomial, energy_chain, energy_constants
from .potentials import PotentialBase, PotentialFactory
from .stepper import integrate

logger = logging.getLogger(__name__)

AXES = "xyz"
INIT_TOL = 1e-8


class _Layout:
    """Index bookkeeping for the flat state vector [r, P, P_1..P_{n-1}, q_1..q_n]."""

    def __init__(self, n: int, dim: int):
        self.n, self.dim = n, dim
        self.r = slice(0, dim)
        self.P = slice(dim, 2 * dim)
        self.outer = slice(2 * dim, 2 * dim + n - 1)
        self.q = slice(2 * dim + n - 1, 2 * dim + 2 * n - 1)
        self.size = 2 * dim + 2 * n - 1


def _inner_momenta(poly: NormalizedPolynomial) -> list[float]:
    roots = real_roots_or_none(durand_kerner(to_monic(poly)))
    if roots is None:
        raise InconsistentInitError("initial polynomial has complex roots")
    return roots


def _check_init(n: int, init: DynamicsState) -> NormalizedPolynomial:
    if n < 2:
        raise InconsistentInitError(f"degree must be at least 2, got {n}")
    if init.degree != n:
        raise InconsistentInitError(f"{len(init.outer)} outer momenta given for degree {n}")
    poly = init.polynomial()
    if init.invariants is not None:
        expected = psq_of_p1(init.invariants, poly.p1)
        if init.invariants.degree != n or relative_drift(poly.psq, expected) > INIT_TOL:
            raise InconsistentInitError(
                f"|P|^2 = {poly.psq:.12g} but the invariants give {expected:.12g} "
                f"at P1 = {poly.p1:g}"
            )
    return poly


def _rhs(layout: _Layout, potential: PotentialBase):
    n = layout.n

    def f(y: np.ndarray) -> np.ndarray:
        r, P, outer = y[layout.r], y[layout.P], y[layout.outer]
        grad = potential.gradient(r)
        rate = -float(np.dot(P, grad))
        out = np.empty_like(y)
        out[layout.r] = P
        out[layout.P] = -grad * outer[-1]
        d_outer = out[layout.outer]
        d_outer[0] = rate
        for k in range(2, n):
            d_outer[k - 1] = rate * (n - k + 2) * outer[k - 2]
        out[layout.q] = rate
        return out

    return f


def _columns(n: int, dim: int) -> list[str]:
    return [
        "tau",
        "s",
        *(f"r_{a}" for a in AXES[:dim]),
        *(f"P_{a}" for a in AXES[:dim]),
        *(f"P{k}" for k in range(1, n)),
        *(f"q{k}" for k in range(1, n + 1)),
        *(f"R{k}" for k in range(2, n)),
        "R0",
        *(f"E{k}" for k in range(1, n)),
        "E_total",
    ]


def simulate_generalized(
    n: int,
    potential: PotentialSpec,
    init: DynamicsState,
    tau_span: tuple[float, float],
    opts: SimulationOptions | None = None,
) -> Trajectory:
    """
    Integrate the degree-n system and monitor its first integrals: every R_k, every energy
    constant E_k, the total energy 1/2 |P|^2 + W, the pairwise differences q_i - q_k and the
    consistency of |P|^2 with the P^2 polynomial at the current P_1.
    """
    opts = opts or SimulationOptions()
    poly = _check_init(n, init)
    layout = _Layout(n, len(init.r))
    field = PotentialFactory.get_potential(potential)

    r0 = np.array(init.r, dtype=float)
    v0 = field.value(r0)
    inv0 = depress(poly)
    energies0 = energy_constants(n, init.outer, v0)
    w_poly = effective_potential_polynomial(n, energies0)
    total0 = 0.5 * poly.psq + float(w_poly(v0))
    q0 = _inner_momenta(poly)

    y0 = np.concatenate([r0, np.array(init.P), np.array(init.outer), np.array(q0)])
    span = (init.tau + tau_span[0], init.tau + tau_span[1])
    taus, states = integrate(_rhs(layout, field), y0, span, opts)

    drifts: dict[str, float] = {}

    def track(name: str, value: float, reference: float) -> float:
        drifts[name] = max(drifts.get(name, 0.0), relative_drift(value, reference))
        return value

    rows = []
    for tau, y in zip(taus, states):
        r, P, outer, q = y[layout.r], y[layout.P], y[layout.outer], y[layout.q]
        psq = float(np.dot(P, P))
        v = field.value(r)
        inv = depress(NormalizedPolynomial(degree=n, p=tuple(outer), psq=psq))
        energies = energy_constants(n, outer, v)
        total = 0.5 * psq + float(w_poly(v))

        invariants = [
            track(label, value, ref)
            for label, value, ref in zip(inv.labels(), inv.as_tuple(), inv0.as_tuple())
        ]
        energy_values = [
            track(f"E{k}", value, ref) for k, (value, ref) in enumerate(zip(energies, energies0), 1)
        ]
        track("E_total", total, total0)
        track("psq_consistency", psq, psq_of_p1(inv0, outer[0]))
        for i, k in combinations(range(n), 2):
            track(f"M{i + 1}{k + 1}", q[i] - q[k], q0[i] - q0[k])

        s = init.s + outer[0] - init.outer[0]
        rows.append(
            [float(tau), s, *r, *P, *outer, *q, *invariants, *energy_values, total]
        )

    report = ConservationReport(drifts=drifts)
    logger.info(
        "degree-%d dynamics over %d samples, max drift %.3e", n, len(rows), report.max_drift
    )
    return Trajectory(columns=_columns(n, layout.dim), rows=rows, report=report)


def newtonian_reduction_check(
    n: int,
    potential: PotentialSpec,
    init: DynamicsState,
    tau_span: tuple[float, float],
    opts: SimulationOptions | None = None,
) -> float:
    """
    Max |dr| + |dP| between the full system and Newton's equation dP/dtau = -grad W(r),
    with the energy constants frozen at the initial state.
    """
    opts = opts or SimulationOptions()
    poly = _check_init(n, init)
    layout = _Layout(n, len(init.r))
    field = PotentialFactory.get_potential(potential)
    dim = layout.dim

    r0 = np.array(init.r, dtype=float)
    energies0 = energy_constants(n, init.outer, field.value(r0))
    force_factor = energy_chain(n, energies0)[-1]

    def newton(y: np.ndarray) -> np.ndarray:
        r, P = y[:dim], y[dim:]
        grad = field.gradient(r)
        return np.concatenate([P, -grad * float(force_factor(field.value(r)))])

    y_full0 = np.concatenate(
        [r0, np.array(init.P), np.array(init.outer), np.array(_inner_momenta(poly))]
    )
    _, full = integrate(_rhs(layout, field), y_full0, tau_span, opts)
    _, reduced = integrate(newton, np.concatenate([r0, np.array(init.P)]), tau_span, opts)

    deviation = np.linalg.norm(full[:, layout.r] - reduced[:, :dim], axis=1) + np.linalg.norm(
        full[:, layout.P] - reduced[:, dim:], axis=1
    )
    result = float(np.max(deviation))
    logger.info("Newtonian reduction deviation %.3e", result)
    return result


def trajectory_to_csv(trajectory: Trajectory) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(trajectory.columns)
    for row in trajectory.rows:
        writer.writerow([repr(float(v)) for v in row])
    return buffer.getvalue()
