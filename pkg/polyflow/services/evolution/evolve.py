"""
Translation of all roots at unit speed until P^2 reaches zero, with invariant monitoring.
"""

import csv
import io
import logging
import math

import numpy as np

from ...core.config import settings
from ...core.exceptions import (
    DriftExceededError,
    MaxStepsExceededError,
    SingularEvolutionError,
)
from ...schemas.evolution import (
    EvolutionMode,
    EvolutionOptions,
    EvolutionSample,
    EvolutionState,
    EvolutionTrace,
)
from ...schemas.polynomials import InvariantSet, NormalizedPolynomial, RootSet
from ..poly_core import (
    coefficient_from_invariants,
    depress,
    deviation_radius,
    psq_polynomial,
    shifted_from_invariants,
    taylor_shift,
)
from .integrator import euler_x_step, from_vector, rk4_step, to_vector

logger = logging.getLogger(__name__)

EPS = float(np.finfo(float).eps)
BISECTION_LIMIT = 200
NEWTON_POLISH = 3


def relative_drift(value: float, reference: float) -> float:
    return abs(value - reference) / max(abs(reference), 1.0)


def _monic(y: np.ndarray) -> np.ndarray:
    n = len(y)
    out = np.empty(n + 1)
    out[0] = 1.0
    for k in range(1, n):
        out[k] = (-1) ** k * (n - k + 1) * y[k - 1]
    out[n] = (-1) ** n * y[-1]
    return out


def _invariant_vector(y: np.ndarray) -> np.ndarray:
    """Depressed coefficients of the state, in the same sign layout as shifted_from_invariants."""
    return taylor_shift(_monic(y), y[0])


def _rounding_floor(y: np.ndarray) -> np.ndarray:
    """Running-error bound of the Taylor shift that produces the invariants."""
    return 16 * len(y) * EPS * taylor_shift(np.abs(_monic(y)), abs(y[0]))


def event_scale(poly: NormalizedPolynomial) -> float:
    """Magnitude against which |P^2| is judged to be zero."""
    monic = _monic(to_vector(poly))
    return max(1.0, float(np.max(np.abs(monic))))


class _DriftMonitor:
    """
    Tracks max relative deviation of each invariant from its initial value.
    R_k is homogeneous of degree k in the root deviations, so it is judged against
    the larger of |R_k| and radius^k.
    """

    def __init__(self, inv: InvariantSet):
        self.inv = inv
        self.reference = shifted_from_invariants(inv)
        natural = deviation_radius(inv) ** np.arange(len(self.reference))
        self.scale = np.maximum(np.maximum(np.abs(self.reference), natural), 1.0)
        self.labels = inv.labels()
        self.max_drift = np.zeros(len(self.labels))
        self.max_floor = 0.0

    def _per_invariant(self, shifted: np.ndarray) -> np.ndarray:
        # indices 2..n of the depressed vector hold R_2..R_{n-1}, R_0
        return np.abs(shifted[2:] - self.reference[2:]) / self.scale[2:]

    def measure(self, y: np.ndarray) -> float:
        drift = self._per_invariant(_invariant_vector(y))
        self.max_drift = np.maximum(self.max_drift, drift)
        self.max_floor = max(self.max_floor, self.floor(y))
        return float(np.max(drift, initial=0.0))

    def step_drift(self, y_old: np.ndarray, y_new: np.ndarray) -> tuple[float, float]:
        """Per-step invariant change and its rounding floor, both relative."""
        delta = np.abs(_invariant_vector(y_new)[2:] - _invariant_vector(y_old)[2:])
        floor = (_rounding_floor(y_new) + _rounding_floor(y_old))[2:]
        return (
            float(np.max(delta / self.scale[2:], initial=0.0)),
            float(np.max(floor / self.scale[2:], initial=0.0)),
        )

    def floor(self, y: np.ndarray) -> float:
        """Relative rounding floor of a single measurement."""
        return float(np.max(_rounding_floor(y)[2:] / self.scale[2:], initial=0.0))

    def as_dict(self) -> dict[str, float]:
        return {label: float(v) for label, v in zip(self.labels, self.max_drift)}


def _state(y: np.ndarray, p1_initial: float) -> EvolutionState:
    return EvolutionState(poly=from_vector(y), shift_accumulated=p1_initial - float(y[0]))


def march(poly: NormalizedPolynomial, p1_target: float, n_steps: int) -> EvolutionState:
    """Fixed-step RK4 march to an arbitrary P_1, without event detection."""
    y = to_vector(poly)
    h = (p1_target - poly.p1) / n_steps
    for _ in range(n_steps):
        y = rk4_step(y, h)
    y[0] = p1_target
    return _state(y, poly.p1)


class _Orbit:
    """Exact states sharing one set of invariants, parametrized by P_1."""

    def __init__(self, inv: InvariantSet):
        self.shifted = shifted_from_invariants(inv)
        self.psq = psq_polynomial(inv)
        self.psq_slope = self.psq.deriv()

    def state(self, p1: float) -> np.ndarray:
        # p(X) = r(X - P_1)
        monic = taylor_shift(self.shifted, -p1)
        n = len(monic) - 1
        y = np.empty(n)
        y[0] = p1
        for k in range(2, n):
            y[k - 1] = (-1) ** k * monic[k] / (n - k + 1)
        y[-1] = (-1) ** n * monic[n]
        return y

    def locate_event(self, high: float, low: float, tol: float) -> float:
        """P_1 of the zero of P^2 in [low, high], given P^2(high) > 0 >= P^2(low)."""
        for _ in range(BISECTION_LIMIT):
            if high - low <= tol:
                break
            mid = 0.5 * (low + high)
            if self.psq(mid) > 0.0:
                high = mid
            else:
                low = mid
        p1 = 0.5 * (low + high)
        for _ in range(NEWTON_POLISH):
            slope = float(self.psq_slope(p1))
            if slope <= 0.0:
                break
            candidate = p1 - float(self.psq(p1)) / slope
            if not low - tol <= candidate <= high + tol:
                break
            p1 = candidate
        return p1


def _locate_event(y: np.ndarray, h: float, tol: float) -> np.ndarray:
    """Bisect the step length for the sign change of P^2, then one Newton polish."""
    low, high = 0.0, h
    for _ in range(BISECTION_LIMIT):
        if high - low <= tol:
            break
        mid = 0.5 * (low + high)
        if rk4_step(y, -mid)[-1] > 0.0:
            low = mid
        else:
            high = mid
    h_event = 0.5 * (low + high)
    y_event = rk4_step(y, -h_event)
    # dP^2/dP_1 = 2 P_{n-1}
    slope = 2.0 * y_event[-2]
    if slope > 0.0:
        y_event = rk4_step(y, -(h_event + y_event[-1] / slope))
    return y_event


def _check_descent(y: np.ndarray, y_new: np.ndarray) -> None:
    if y_new[-2] <= 0.0:
        raise SingularEvolutionError(
            f"P_{len(y_new) - 1} changed sign before P^2 reached zero "
            f"(P_1={y_new[0]:.6g}, P^2={y_new[-1]:.6g})"
        )
    if y_new[-1] >= y[-1]:
        raise SingularEvolutionError(f"P^2 stopped decreasing at P_1={y_new[0]:.6g}")


def _march_on_orbit(
    y: np.ndarray,
    h: float,
    opts: EvolutionOptions,
    monitor: _DriftMonitor,
    trace: EvolutionTrace,
) -> tuple[np.ndarray, int]:
    """RK4 predictor, corrected onto the exact orbit after every step."""
    orbit = _Orbit(monitor.inv)
    radius = deviation_radius(monitor.inv)
    p1_0 = float(y[0])
    y = orbit.state(p1_0)
    scale = None
    steps = 0
    while True:
        if steps >= opts.max_steps:
            raise MaxStepsExceededError(opts.max_steps)
        if y[0] - radius > 2.0 * h:
            # above the deviation radius every root is positive and P^2 cannot vanish
            y_new = orbit.state(radius + h)
        else:
            if scale is None:
                scale = np.maximum(np.abs(y), 1.0)
            y_pred = rk4_step(y, -h)
            y_new = orbit.state(float(y_pred[0]))
            correction = float(np.max(np.abs(y_pred - y_new) / scale))
            trace.max_correction = max(trace.max_correction, correction)
        if y_new[-1] <= 0.0:
            p1_event = orbit.locate_event(float(y[0]), float(y_new[0]), opts.event_tol)
            return orbit.state(p1_event), steps + 1
        _check_descent(y, y_new)
        y = y_new
        steps += 1
        if opts.record_samples:
            drift = monitor.measure(y)
            trace.samples.append(
                EvolutionSample(s=float(y[0] - p1_0), state=_state(y, p1_0), drift=drift)
            )


def _march_free(
    y: np.ndarray,
    h: float,
    opts: EvolutionOptions,
    monitor: _DriftMonitor,
    trace: EvolutionTrace,
) -> tuple[np.ndarray, int]:
    """Plain RK4, halving the step while the per-step invariant change exceeds its budget."""
    p1_0 = float(y[0])
    budget = opts.drift_tol / max(1, math.ceil(p1_0 / h))
    steps = 0
    while True:
        if steps >= opts.max_steps:
            raise MaxStepsExceededError(opts.max_steps)
        y_new = rk4_step(y, -h)
        step_drift, floor = monitor.step_drift(y, y_new)
        if step_drift > max(budget, floor) and trace.halvings < opts.max_halvings:
            h *= 0.5
            trace.halvings += 1
            logger.debug("Halving step to %.3e (drift %.3e per step)", h, step_drift)
            continue
        if y_new[-1] <= 0.0:
            y = y_new if y_new[-1] == 0.0 else _locate_event(y, h, opts.event_tol)
            return y, steps + 1
        _check_descent(y, y_new)
        y = y_new
        steps += 1
        drift = monitor.measure(y)
        if opts.record_samples:
            trace.samples.append(
                EvolutionSample(s=float(y[0] - p1_0), state=_state(y, p1_0), drift=drift)
            )


def cauchy_lipschitz(
    poly: NormalizedPolynomial, partitions: int, record_samples: bool = True
) -> tuple[EvolutionState, EvolutionTrace]:
    """First-order Euler march in x = P^2 over an equal partition of (P^2, 0)."""
    inv = depress(poly)
    monitor = _DriftMonitor(inv)
    trace = EvolutionTrace(initial_invariants=inv)
    y = to_vector(poly)
    p1_0 = poly.p1
    dx = -poly.psq / partitions
    if record_samples:
        trace.samples.append(EvolutionSample(s=0.0, state=_state(y, p1_0)))
    for step in range(partitions):
        if y[-2] <= 0.0:
            raise SingularEvolutionError(
                f"P_{poly.degree - 1} reached {y[-2]:.3e} before P^2 = 0 (x step {step})"
            )
        y = euler_x_step(y, dx)
        drift = monitor.measure(y)
        if record_samples:
            trace.samples.append(
                EvolutionSample(s=float(y[0] - p1_0), state=_state(y, p1_0), drift=drift)
            )
    y[-1] = 0.0
    trace.step_count = partitions
    trace.invariant_drift = monitor.as_dict()
    return _state(y, p1_0), trace


def evolve_to_psq_zero(
    poly: NormalizedPolynomial,
    opts: EvolutionOptions | None = None,
    inv: InvariantSet | None = None,
) -> tuple[EvolutionState, EvolutionTrace]:
    """
    March s = P_1 downward until the first root reaches zero.
    Requires all roots strictly positive; raises SingularEvolutionError otherwise.
    ``inv`` overrides the invariants read off ``poly``, e.g. those of an untranslated original.
    """
    opts = opts or EvolutionOptions()
    if opts.mode == EvolutionMode.cauchy_lipschitz:
        return cauchy_lipschitz(poly, opts.partitions, opts.record_samples)

    inv = depress(poly) if inv is None else inv
    monitor = _DriftMonitor(inv)
    trace = EvolutionTrace(initial_invariants=inv)
    y = to_vector(poly)
    p1_0 = poly.p1
    zero_band = opts.event_tol * event_scale(poly)

    if opts.record_samples:
        trace.samples.append(EvolutionSample(s=0.0, state=_state(y, p1_0)))
    if abs(poly.psq) <= zero_band:
        trace.invariant_drift = monitor.as_dict()
        return _state(y, p1_0), trace
    if poly.psq < 0.0 or p1_0 <= 0.0:
        raise SingularEvolutionError(
            f"evolution needs positive roots (P_1={p1_0:.6g}, P^2={poly.psq:.6g})"
        )

    if opts.project:
        radius = deviation_radius(inv)
        span = min(p1_0, 2.0 * radius) if radius > 0.0 else p1_0
        h = opts.step or span / settings.STEPS_PER_UNIT
        y, steps = _march_on_orbit(y, h, opts, monitor, trace)
    else:
        h = opts.step or p1_0 / settings.STEPS_PER_UNIT
        y, steps = _march_free(y, h, opts, monitor, trace)

    drift = monitor.measure(y)
    final = _state(y, p1_0)
    if opts.record_samples:
        trace.samples.append(EvolutionSample(s=float(y[0] - p1_0), state=final, drift=drift))
    trace.step_count = steps
    trace.event_residual = float(abs(y[-1]))
    trace.invariant_drift = monitor.as_dict()
    if trace.max_drift > max(opts.drift_tol, monitor.max_floor):
        raise DriftExceededError(trace.max_drift, opts.drift_tol)
    logger.debug(
        "Evolved degree %d by shift %.12g in %d steps (|P^2|=%.3e, correction %.3e)",
        poly.degree,
        final.shift_accumulated,
        steps,
        trace.event_residual,
        trace.max_correction,
    )
    return final, trace


def verify_against_closed_form(trace: EvolutionTrace) -> float:
    """
    Max relative deviation of integrated coefficients from the exact polynomials in P_1.
    On projected runs the integrator error shows up as the per-step correction.
    """
    inv = trace.initial_invariants
    n = inv.degree
    worst = trace.max_correction
    for sample in trace.samples:
        poly = sample.state.poly
        for order in range(1, n):
            exact = coefficient_from_invariants(inv, poly.p1, order)
            worst = max(worst, relative_drift(poly.coefficient(n - order), exact))
    return worst


def evolve_roots(roots: RootSet, ds: float) -> RootSet:
    """dq_k/ds = 1 for every root."""
    return roots.shifted(ds)


def trace_to_csv(trace: EvolutionTrace) -> str:
    n = trace.initial_invariants.degree
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["s", *(f"P{k}" for k in range(1, n)), "Psq", "R_drift"])
    for sample in trace.samples:
        poly = sample.state.poly
        writer.writerow(
            [repr(sample.s), *(repr(v) for v in poly.p), repr(poly.psq), repr(sample.drift)]
        )
    return buffer.getvalue()
