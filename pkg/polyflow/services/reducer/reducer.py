"""
Degree reduction: evolve P^2 to zero, strip the trivial root, renormalize, recurse,
then translate the roots back stage by stage.
"""

import logging
import math

import numpy as np

from ...core.config import settings
from ...core.exceptions import (
    DuplicateRootError,
    IncompleteTraceError,
    InputError,
    NotAtZeroError,
    SingularEvolutionError,
)
from ...schemas.evolution import EvolutionState
from ...schemas.polynomials import NormalizedPolynomial, RootSet
from ...schemas.reduction import (
    LinearPolynomial,
    ReductionStage,
    ReductionTrace,
    RootBound,
    SolveOptions,
)
from ..evolution import evolve_to_psq_zero
from ..evolution.evolve import event_scale
from ..poly_core import (
    check_simple,
    depress,
    deviation_radius,
    from_monic,
    square_deviation_sum,
    taylor_shift,
    to_monic,
)

logger = logging.getLogger(__name__)

NEWTON_POLISH = 3


def shift_roots(poly: NormalizedPolynomial, c: float) -> NormalizedPolynomial:
    """Translate every root by +c: p(X) -> p(X - c)."""
    return from_monic(taylor_shift(to_monic(poly), -c))


def _root_bound(poly: NormalizedPolynomial, bound: RootBound) -> float:
    if bound == RootBound.cauchy:
        return 1.0 + max(abs(c) for c in to_monic(poly)[1:])
    return 1.0 + max(0.0, deviation_radius(depress(poly)) - poly.p1)


def precondition_shift(
    poly: NormalizedPolynomial, bound: RootBound = RootBound.cauchy
) -> tuple[NormalizedPolynomial, float]:
    """Translate all roots by +B so every real root is positive and P^2 > 0."""
    b = _root_bound(poly, bound)
    logger.debug("Precondition shift %.12g (%s bound)", b, bound.value)
    return shift_roots(poly, b), b


def deflate_and_renormalize(
    state: EvolutionState, tol: float | None = None
) -> NormalizedPolynomial | LinearPolynomial:
    """p(X)/X in the degree-(n-1) normalized form: (n-k) P'_k = (n-k+1) P_k, P'^2 = 2 P_{n-1}."""
    poly = state.poly
    band = (settings.EVENT_TOL if tol is None else tol) * event_scale(poly)
    if abs(poly.psq) > band:
        raise NotAtZeroError(poly.psq, band)
    n = poly.degree
    if n == 2:
        return LinearPolynomial(root=2.0 * poly.p1)
    p = tuple((n - k + 1) / (n - k) * poly.coefficient(k) for k in range(1, n - 1))
    return NormalizedPolynomial(degree=n - 1, p=p, psq=2.0 * poly.coefficient(n - 1))


def back_translate(trace: ReductionTrace) -> RootSet:
    """Compose the stage translations: each stage's roots move up by its shift and gain 0."""
    _check_complete(trace)
    roots = [trace.final_linear_root]
    for stage in reversed(trace.stages):
        roots = [q + stage.shift for q in roots] + [stage.shift]
    return RootSet(roots=tuple(q - trace.precondition_shift for q in roots))


def _check_complete(trace: ReductionTrace) -> None:
    if not trace.stages:
        raise IncompleteTraceError("trace has no stages")
    degrees = [stage.degree for stage in trace.stages]
    expected = list(range(degrees[0], 1, -1))
    if degrees != expected or not isinstance(trace.stages[-1].deflated, LinearPolynomial):
        raise IncompleteTraceError(f"stage degrees {degrees} do not end in a linear stage")


def back_translate_closed_form(trace: ReductionTrace) -> RootSet:
    """
    Closed-form reconstruction with the 1/r weights, taken literally:
    q_1 = n P1^(n-1) + n sum_{r=2}^{n} (P1^(n-r) - P1^(n-r+1)) / r,
    q_s = sum_{r=s}^{n} (P1^(n-r) - P1^(n-r+1)) / r, where P1^(0) is the initial P_1 and
    P1^(k) the evolved P_1 of stage k.
    """
    _check_complete(trace)
    n = trace.degree
    p1 = [trace.stages[0].p1_before] + [stage.p1_after for stage in trace.stages]

    def term(r: int) -> float:
        return (p1[n - r] - p1[n - r + 1]) / r

    q = [n * p1[n - 1] + n * math.fsum(term(r) for r in range(2, n + 1))]
    q += [math.fsum(term(r) for r in range(s, n + 1)) for s in range(2, n + 1)]
    return RootSet(roots=tuple(v - trace.precondition_shift for v in q))


def closed_form_discrepancy(trace: ReductionTrace) -> float:
    """Max deviation between the closed form and the stagewise composition."""
    closed = np.array(back_translate_closed_form(trace).roots)
    composed = np.array(back_translate(trace).roots)
    return float(np.max(np.abs(closed - composed)))


def polish_roots(
    poly: NormalizedPolynomial, roots: RootSet, iterations: int = NEWTON_POLISH
) -> tuple[RootSet, float]:
    """
    Newton steps on the untranslated monic. A step is kept only while it lowers |p|
    and stays within a quarter of the gap to the nearest other root.
    Returns the polished roots and the largest displacement.
    """
    monic = to_monic(poly)
    slope = np.polyder(monic)
    q = np.array(roots.roots)
    gaps = np.abs(q[:, None] - q[None, :]) + np.diag(np.full(len(q), np.inf))
    reach = 0.25 * np.min(gaps, axis=1)
    moved = 0.0
    for i, start in enumerate(roots.roots):
        x, value = start, float(np.polyval(monic, start))
        for _ in range(iterations):
            d = float(np.polyval(slope, x))
            if d == 0.0:
                break
            candidate = x - value / d
            candidate_value = float(np.polyval(monic, candidate))
            if abs(candidate - start) > reach[i] or abs(candidate_value) >= abs(value):
                break
            x, value = candidate, candidate_value
        q[i] = x
        moved = max(moved, abs(x - start))
    return RootSet(roots=tuple(float(v) for v in q)), moved


def solve(
    poly: NormalizedPolynomial, opts: SolveOptions | None = None
) -> tuple[RootSet, ReductionTrace]:
    opts = opts or SolveOptions()
    if poly.degree > opts.max_degree:
        raise InputError(f"degree {poly.degree} exceeds the limit of {opts.max_degree}")

    inv = depress(poly)
    if square_deviation_sum(inv) < 0.0:
        raise SingularEvolutionError(
            "complex roots out of scope (negative sum of squared deviations)"
        )

    current, b = precondition_shift(poly, opts.root_bound)
    trace = ReductionTrace(precondition_shift=b, root_bound=opts.root_bound)
    evolution = opts.evolution.model_copy(update={"record_samples": False})
    tol = evolution.event_tol

    while True:
        stage_opts = evolution.model_copy(update={"event_tol": tol})
        # stage invariants come from the untranslated polynomial, then from each deflation
        state, evo_trace = evolve_to_psq_zero(current, stage_opts, inv)
        deflated = deflate_and_renormalize(state, opts.evolution.event_tol)
        trace.stages.append(
            ReductionStage(
                degree=current.degree,
                p1_before=current.p1,
                p1_after=state.poly.p1,
                shift=state.shift_accumulated,
                invariants=evo_trace.initial_invariants,
                invariant_drift=evo_trace.max_drift,
                steps=evo_trace.step_count,
                deflated=deflated,
            )
        )
        logger.debug(
            "Stage degree %d: shift %.12g, drift %.3e",
            current.degree,
            state.shift_accumulated,
            evo_trace.max_drift,
        )
        if isinstance(deflated, LinearPolynomial):
            trace.final_linear_root = deflated.root
            break
        current = deflated
        inv = depress(current)
        tol *= opts.tighten

    roots = back_translate(trace)
    if opts.polish:
        roots, trace.polish_correction = polish_roots(poly, roots)
    try:
        check_simple(roots, roots.default_separation(opts.separation_rtol))
    except DuplicateRootError as e:
        raise SingularEvolutionError(f"reduction produced {e.message}") from e
    logger.info("Solved degree %d polynomial in %d stages", poly.degree, len(trace.stages))
    return roots, trace
