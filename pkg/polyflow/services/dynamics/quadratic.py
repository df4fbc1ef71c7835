"""
Degree-2 dynamics: a charged particle in electric and magnetic fields.

    dP/dtau = E P_0 + P x B,  dP_0/dtau = E . P,  dr/dtau = P,  dt/dtau = P_0

The evolution parameter s advances with ds/dtau = E . n, n the unit vector along P.
"""

import logging
import math
from typing import Sequence

import numpy as np
from scipy.interpolate import CubicSpline

from ...core.exceptions import InputError
from ...schemas.dynamics import (
    ConservationReport,
    FieldSpec,
    QuadraticState,
    SimulationOptions,
    Trajectory,
)
from ..evolution import relative_drift
from .potentials import PotentialFactory
from .stepper import integrate

logger = logging.getLogger(__name__)

AXES = "xyz"
REST_TOL = 1e-300


class _Fields:
    def __init__(self, spec: FieldSpec, dim: int):
        self.dim = dim
        self.e_uniform = np.zeros(dim) if spec.e_field is None else np.array(spec.e_field, float)
        if len(self.e_uniform) != dim:
            raise InputError(f"e_field has dimension {len(self.e_uniform)}, state has {dim}")
        self.b = None if spec.b_field is None else np.array(spec.b_field, float)
        if self.b is not None and dim != 3 and np.any(self.b):
            raise InputError("a magnetic field needs a 3-dimensional state")
        self.potential = (
            None if spec.potential is None else PotentialFactory.get_potential(spec.potential)
        )

    def electric(self, r: np.ndarray) -> np.ndarray:
        if self.potential is None:
            return self.e_uniform
        return self.e_uniform - self.potential.gradient(r)

    def value(self, r: np.ndarray) -> float:
        return 0.0 if self.potential is None else self.potential.value(r)


def _direction(P: np.ndarray, E: np.ndarray) -> np.ndarray:
    for v in (P, E):
        norm = float(np.linalg.norm(v))
        if norm > REST_TOL:
            return v / norm
    return np.zeros_like(P)


def simulate_quadratic(
    fields: FieldSpec,
    init: QuadraticState,
    tau_span: tuple[float, float],
    opts: SimulationOptions | None = None,
) -> Trajectory:
    """
    Integrate the Lorentz-force system. The report tracks M^2 = P_0^2 - |P|^2 and, when
    a potential is present, the energy E_0 = P_0 + V.
    """
    opts = opts or SimulationOptions()
    dim = len(init.r)
    field = _Fields(fields, dim)

    def f(y: np.ndarray) -> np.ndarray:
        r, P, p0 = y[:dim], y[dim : 2 * dim], y[2 * dim]
        E = field.electric(r)
        dP = E * p0
        if field.b is not None and dim == 3:
            dP = dP + np.cross(P, field.b)
        return np.concatenate(
            [P, dP, [float(np.dot(E, P)), p0, float(np.dot(E, _direction(P, E)))]]
        )

    y0 = np.concatenate([init.r, init.P, [init.P0, init.t, init.s]])
    taus, states = integrate(f, y0, tau_span, opts)

    m2_0 = init.P0**2 - float(np.dot(init.P, init.P))
    energy_0 = init.P0 + field.value(np.array(init.r, float))
    drifts: dict[str, float] = {}
    rows = []
    for tau, y in zip(taus, states):
        r, P, p0, t, s = y[:dim], y[dim : 2 * dim], y[2 * dim], y[2 * dim + 1], y[2 * dim + 2]
        m2 = p0 * p0 - float(np.dot(P, P))
        drifts["M2"] = max(drifts.get("M2", 0.0), relative_drift(m2, m2_0))
        energy = p0 + field.value(r)
        if field.potential is not None:
            drifts["E0"] = max(drifts.get("E0", 0.0), relative_drift(energy, energy_0))
        rows.append([float(tau), float(s), float(t), *r, *P, float(p0), m2, energy])

    columns = [
        "tau",
        "s",
        "t",
        *(f"r_{a}" for a in AXES[:dim]),
        *(f"P_{a}" for a in AXES[:dim]),
        "P0",
        "M2",
        "E0",
    ]
    report = ConservationReport(drifts=drifts)
    logger.info("quadratic dynamics over %d samples, max drift %.3e", len(rows), report.max_drift)
    return Trajectory(columns=columns, rows=rows, report=report)


def simulate_quadratic_in_s(
    P: float, P0: float, s_span: tuple[float, float], opts: SimulationOptions | None = None
) -> Trajectory:
    """Motion along a field line in the s picture: dP/ds = P_0, dP_0/ds = P."""
    opts = opts or SimulationOptions()
    s_values, states = integrate(
        lambda y: np.array([y[1], y[0]]), np.array([P, P0], float), s_span, opts
    )
    m2_0 = P0 * P0 - P * P
    rows, drift = [], 0.0
    for s, (p, p0) in zip(s_values, states):
        m2 = p0 * p0 - p * p
        drift = max(drift, relative_drift(m2, m2_0))
        rows.append([float(s), float(p), float(p0), m2])
    return Trajectory(
        columns=["s", "P", "P0", "M2"], rows=rows, report=ConservationReport(drifts={"M2": drift})
    )


def orbit_distance(tau_run: Trajectory, s_run: Trajectory) -> float:
    """
    Max phase-space distance between a tau run and an s run of the same motion, compared
    at equal s. The tau run's momentum magnitude is signed by its projection on the first
    recorded direction of motion.
    """
    s_grid = s_run.column("s")
    order = np.argsort(s_grid)
    s_sorted = s_grid[order]
    p_spline = CubicSpline(s_sorted, s_run.column("P")[order])
    p0_spline = CubicSpline(s_sorted, s_run.column("P0")[order])

    s_tau = tau_run.column("s")
    inside = (s_tau >= s_sorted[0]) & (s_tau <= s_sorted[-1])
    if not np.any(inside):
        raise InputError("the two runs share no range of s")
    P_vec = tau_run.columns_like("P")
    p_mag = np.linalg.norm(P_vec, axis=1)
    moving = np.nonzero(p_mag > 0)[0]
    if len(moving):
        axis = P_vec[moving[0]] / p_mag[moving[0]]
        p_mag = P_vec @ axis
    dp = p_mag[inside] - p_spline(s_tau[inside])
    dp0 = tau_run.column("P0")[inside] - p0_spline(s_tau[inside])
    return float(np.max(np.hypot(dp, dp0)))


def quadratic_eigenvalues(P: Sequence[float] | float, P0: float) -> tuple[float, float, float]:
    """(p1^2, p2^2, M) with p1^2 = P_0 - M, p2^2 = P_0 + M; p1 p2 = |P| and p2^2 - p1^2 = 2M."""
    psq = float(np.dot(P, P))
    m2 = P0 * P0 - psq
    if m2 < 0:
        raise InputError(f"spacelike momentum: P0^2 - |P|^2 = {m2:.6g}")
    mass = math.sqrt(m2)
    return P0 - mass, P0 + mass, mass


def half_argument_fit(trajectory: Trajectory) -> dict[str, float]:
    """
    Eigenvalues of the evolving quadratic along a run from rest, against the half-argument
    forms sqrt(2M) sinh(s/2), sqrt(2M) cosh(s/2).

    ``literal`` fits them to p1^2, p2^2 and ``unsquared`` to p1, p2. ``product`` and ``gap``
    are the residuals of p1^2 p2^2 = |P|^2 and p2^2 - p1^2 = 2M.
    """
    s = trajectory.column("s")
    p0 = trajectory.column("P0")
    if "P" in trajectory.columns:
        p_mag = np.abs(trajectory.column("P"))
    else:
        p_mag = np.linalg.norm(trajectory.columns_like("P"), axis=1)
    eig = np.array([quadratic_eigenvalues(p, e) for p, e in zip(p_mag, p0)])
    p1_sq, p2_sq, mass = eig[:, 0], eig[:, 1], eig[:, 2]

    root = np.sqrt(2.0 * mass)
    half_sinh, half_cosh = root * np.abs(np.sinh(s / 2)), root * np.cosh(s / 2)
    literal = np.maximum(np.abs(p1_sq - half_sinh), np.abs(p2_sq - half_cosh))
    unsquared = np.maximum(
        np.abs(np.sqrt(np.maximum(p1_sq, 0.0)) - half_sinh), np.abs(np.sqrt(p2_sq) - half_cosh)
    )
    return {
        "literal": float(np.max(literal)),
        "unsquared": float(np.max(unsquared)),
        "product": float(np.max(np.abs(p1_sq * p2_sq - p_mag**2))),
        "gap": float(np.max(np.abs(p2_sq - p1_sq - 2.0 * mass))),
    }
