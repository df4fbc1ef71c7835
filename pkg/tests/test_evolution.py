import numpy as np
import pytest

from polyflow.core.exceptions import (
    DriftExceededError,
    MaxStepsExceededError,
    SingularEvolutionError,
)
from polyflow.schemas.evolution import EvolutionMode, EvolutionOptions, EvolutionState
from polyflow.schemas.polynomials import NormalizedPolynomial, RootSet
from polyflow.services.evolution import (
    evolve_roots,
    evolve_to_psq_zero,
    march,
    ode_rhs,
    trace_to_csv,
    verify_against_closed_form,
)
from polyflow.services.poly_core import coefficients_from_invariants, depress, from_roots, psq_of_p1
from polyflow.services.verification.suites import random_roots

SEXTIC_ROOTS = [1.0, 2.0, 3.0, 4.0, 5.0, 6.0]


def test_ode_rhs_worked_cubic(worked_cubic):
    assert ode_rhs(EvolutionState(poly=worked_cubic)) == pytest.approx((1.0, 6.0, 11.0))


def test_ode_rhs_quadratic():
    poly = NormalizedPolynomial(degree=2, p=(1.5,), psq=2.0)
    assert ode_rhs(EvolutionState(poly=poly)) == pytest.approx((1.0, 3.0))


def test_ode_rhs_vanishing_last_coefficient():
    poly = NormalizedPolynomial(degree=3, p=(1.0, 0.0), psq=2.0)
    assert ode_rhs(EvolutionState(poly=poly)) == pytest.approx((1.0, 3.0, 0.0))


def test_evolve_worked_cubic(worked_cubic):
    state, trace = evolve_to_psq_zero(worked_cubic)
    assert state.poly.p == pytest.approx((1.0, 1.0), abs=1e-9)
    assert state.poly.psq == pytest.approx(0.0, abs=1e-9)
    assert state.shift_accumulated == pytest.approx(1.0, abs=1e-9)
    assert trace.step_count > 0
    assert trace.max_drift <= 1e-9


def test_evolve_quadratic():
    state, _ = evolve_to_psq_zero(from_roots([1.0, 2.0]))
    assert state.poly.p1 == pytest.approx(1.0, abs=1e-9)
    assert state.shift_accumulated == pytest.approx(0.5, abs=1e-9)


def test_evolve_already_at_zero():
    poly = from_roots([0.0, 2.0])
    state, trace = evolve_to_psq_zero(poly)
    assert state.poly == poly
    assert state.shift_accumulated == 0.0
    assert len(trace.samples) == 1
    assert verify_against_closed_form(trace) == pytest.approx(0.0, abs=1e-12)


def test_evolve_rejects_nonpositive_roots():
    with pytest.raises(SingularEvolutionError):
        evolve_to_psq_zero(from_roots([-1.0, 2.0]))


def test_evolve_step_budget(worked_cubic):
    with pytest.raises(MaxStepsExceededError):
        evolve_to_psq_zero(worked_cubic, EvolutionOptions(max_steps=3))


def test_samples_run_downward(worked_cubic):
    _, trace = evolve_to_psq_zero(worked_cubic)
    s = [sample.s for sample in trace.samples]
    psq = [sample.state.poly.psq for sample in trace.samples]
    assert s[0] == 0.0
    assert np.all(np.diff(s) < 0)
    assert np.all(np.diff(psq) < 0)


def test_endpoint_is_a_root_of_the_psq_polynomial(rng):
    for _ in range(10):
        n = int(rng.integers(2, 7))
        q = random_roots(rng, n, 0.1, 5.0, 0.25)
        poly = from_roots(q)
        state, trace = evolve_to_psq_zero(poly)
        scale = max(1.0, abs(poly.psq))
        assert abs(psq_of_p1(trace.initial_invariants, state.poly.p1)) <= 1e-9 * scale
        # the smallest root reaches zero first
        assert state.shift_accumulated == pytest.approx(q[0], rel=1e-7)


def test_invariants_are_conserved(rng):
    for _ in range(15):
        n = int(rng.integers(2, 7))
        _, trace = evolve_to_psq_zero(from_roots(random_roots(rng, n, 0.1, 5.0, 0.25)))
        assert trace.max_drift <= 1e-9
        assert verify_against_closed_form(trace) <= 1e-9


def test_finer_steps_track_the_closed_form_better():
    poly = from_roots(SEXTIC_ROOTS)
    _, coarse = evolve_to_psq_zero(poly, EvolutionOptions(step=0.35))
    _, fine = evolve_to_psq_zero(poly, EvolutionOptions(step=0.0035))
    assert verify_against_closed_form(fine) < verify_against_closed_form(coarse)


def test_invariants_hold_up_to_degree_eight(rng):
    for _ in range(40):
        n = int(rng.integers(2, 9))
        q = random_roots(rng, n, 0.1, 10.0, 0.1)
        state, trace = evolve_to_psq_zero(from_roots(q))
        assert trace.max_drift <= 1e-9
        assert state.shift_accumulated == pytest.approx(q[0], rel=1e-9)


def test_far_translated_roots_reach_the_event():
    q = [1001.0, 1002.0, 1003.0]
    state, trace = evolve_to_psq_zero(from_roots(q))
    assert state.shift_accumulated == pytest.approx(q[0], rel=1e-8)
    assert trace.step_count < 1000
    assert trace.max_drift <= 1e-9


def test_unprojected_march_reports_its_drift():
    poly = from_roots(SEXTIC_ROOTS)
    opts = EvolutionOptions(step=0.0035, max_halvings=0, project=False)
    state, trace = evolve_to_psq_zero(poly, opts)
    assert state.shift_accumulated == pytest.approx(1.0, abs=1e-9)
    assert trace.max_correction == 0.0
    assert trace.max_drift <= 1e-9


def test_drift_budget_is_enforced():
    poly = from_roots(SEXTIC_ROOTS)
    with pytest.raises(DriftExceededError) as excinfo:
        evolve_to_psq_zero(poly, EvolutionOptions(step=0.35, max_halvings=0, project=False))
    assert excinfo.value.exit_code == 1


def test_march_is_fourth_order():
    poly = from_roots(SEXTIC_ROOTS)
    exact = coefficients_from_invariants(depress(poly), 2.5)

    def error(n_steps: int) -> float:
        state = march(poly, 2.5, n_steps)
        return float(
            np.max(np.abs(np.array([*state.poly.p, state.poly.psq]) - [*exact.p, exact.psq]))
        )

    assert error(4) / error(8) >= 8.0


def test_cauchy_lipschitz_mode(worked_cubic):
    opts = EvolutionOptions(mode=EvolutionMode.cauchy_lipschitz, partitions=2000)
    state, trace = evolve_to_psq_zero(worked_cubic, opts)
    assert state.poly.psq == 0.0
    assert state.poly.p1 == pytest.approx(1.0, abs=0.05)
    assert trace.step_count == 2000


def test_evolve_roots():
    assert evolve_roots(RootSet(roots=(1.0, 2.0)), -0.5).roots == (0.5, 1.5)


def test_trace_to_csv(worked_cubic):
    _, trace = evolve_to_psq_zero(worked_cubic)
    lines = trace_to_csv(trace).splitlines()
    assert lines[0] == "s,P1,P2,Psq,R_drift"
    assert len(lines) == len(trace.samples) + 1
