import math

import pytest

from polyflow.core.exceptions import (
    IncompleteTraceError,
    InputError,
    NotAtZeroError,
    OutOfScopeError,
    SingularEvolutionError,
)
from polyflow.schemas.evolution import EvolutionState
from polyflow.schemas.polynomials import NormalizedPolynomial, RootSet
from polyflow.schemas.reduction import (
    LinearPolynomial,
    ReductionTrace,
    RootBound,
    SolveOptions,
)
from polyflow.services.oracle import durand_kerner, real_roots_or_none
from polyflow.services.poly_core import from_monic, from_roots, to_monic
from polyflow.services.reducer import (
    back_translate,
    back_translate_closed_form,
    closed_form_discrepancy,
    deflate_and_renormalize,
    polish_roots,
    precondition_shift,
    shift_roots,
    solve,
)
from polyflow.services.verification.suites import random_roots


def test_precondition_cauchy_cubic():
    shifted, b = precondition_shift(from_roots([-1.0, 0.0, 1.0]), RootBound.cauchy)
    assert b == pytest.approx(2.0)
    assert to_monic(shifted) == pytest.approx(to_monic(from_roots([1.0, 2.0, 3.0])))


def test_precondition_cauchy_quadratic():
    shifted, b = precondition_shift(from_roots([-2.0, 2.0]), RootBound.cauchy)
    assert b == pytest.approx(5.0)
    assert shifted.p1 == pytest.approx(5.0)
    assert shifted.psq == pytest.approx(21.0)


def test_precondition_samuelson_makes_roots_positive():
    shifted, b = precondition_shift(from_roots([-1.0, 0.0, 1.0]), RootBound.samuelson)
    assert b == pytest.approx(1.0 + math.sqrt(4.0 / 3.0))
    assert shifted.psq > 0.0


def test_shift_roots(worked_cubic):
    assert to_monic(shift_roots(worked_cubic, 1.0)) == pytest.approx(
        to_monic(from_roots([2.0, 3.0, 4.0]))
    )


def test_deflate_cubic():
    state = EvolutionState(poly=NormalizedPolynomial(degree=3, p=(1.0, 1.0), psq=0.0))
    deflated = deflate_and_renormalize(state)
    assert isinstance(deflated, NormalizedPolynomial)
    assert deflated.degree == 2
    assert deflated.p == pytest.approx((1.5,))
    assert deflated.psq == pytest.approx(2.0)


def test_deflate_quadratic_gives_linear_root():
    state = EvolutionState(poly=NormalizedPolynomial(degree=2, p=(0.75,), psq=0.0))
    deflated = deflate_and_renormalize(state)
    assert isinstance(deflated, LinearPolynomial)
    assert deflated.root == pytest.approx(1.5)


def test_deflate_requires_zero_psq():
    state = EvolutionState(poly=NormalizedPolynomial(degree=3, p=(1.0, 1.0), psq=0.5))
    with pytest.raises(NotAtZeroError):
        deflate_and_renormalize(state)


@pytest.mark.parametrize(
    "roots, tol",
    [
        ([1.0, 2.0, 3.0], 1e-9),
        ([1.0, 2.0], 1e-9),
        ([-3.0, 0.5, 4.0], 1e-8),
        ([0.5, 1.1, 2.0, 3.3, 7.0], 1e-7),
    ],
)
def test_solve(roots, tol):
    found, trace = solve(from_roots(roots))
    assert found.roots == pytest.approx(roots, abs=tol)
    assert [stage.degree for stage in trace.stages] == list(range(len(roots), 1, -1))


@pytest.mark.parametrize("bound", list(RootBound))
def test_solve_either_bound(bound):
    found, trace = solve(from_roots([-1.0, 0.0, 1.0]), SolveOptions(root_bound=bound))
    assert found.roots == pytest.approx((-1.0, 0.0, 1.0), abs=1e-9)
    assert trace.root_bound == bound


def test_back_translate_matches_solve(worked_cubic):
    found, trace = solve(worked_cubic)
    assert back_translate(trace).roots == pytest.approx(found.roots, abs=1e-9)
    assert trace.polish_correction <= 1e-9


def test_back_translate_rejects_incomplete_trace():
    with pytest.raises(IncompleteTraceError):
        back_translate(ReductionTrace())


def test_solve_rejects_complex_roots():
    with pytest.raises(SingularEvolutionError) as excinfo:
        solve(from_monic([1.0, 0.0, 1.0]))
    assert isinstance(excinfo.value, OutOfScopeError)
    assert excinfo.value.exit_code == 2


def test_solve_degree_limit():
    with pytest.raises(InputError):
        solve(from_roots([1.0, 2.0, 3.0, 4.0, 5.0]), SolveOptions(max_degree=4))


def test_worked_cubic_stages_keep_invariants(worked_cubic):
    _, trace = solve(worked_cubic)
    first = trace.stages[0]
    assert first.invariants.coefficient(2) == pytest.approx(-1.0, abs=1e-12)
    assert first.invariants.r0 == pytest.approx(0.0, abs=1e-12)
    assert all(stage.invariant_drift <= 1e-9 for stage in trace.stages)


def test_solve_matches_durand_kerner(rng):
    for _ in range(25):
        n = int(rng.integers(2, 7))
        q = random_roots(rng, n, -3.0, 3.0, 0.25)
        found, _ = solve(from_roots(q))
        reference = real_roots_or_none(durand_kerner(to_monic(from_roots(q))))
        assert reference is not None
        assert found.roots == pytest.approx(reference, abs=1e-7)


def test_solve_matches_durand_kerner_up_to_degree_eight(rng):
    for _ in range(60):
        n = int(rng.integers(2, 9))
        q = random_roots(rng, n, -10.0, 10.0, 0.1)
        found, _ = solve(from_roots(q))
        reference = real_roots_or_none(durand_kerner(to_monic(from_roots(q))))
        assert reference is not None
        assert found.roots == pytest.approx(reference, abs=1e-7)


def test_every_stage_keeps_its_invariants(rng):
    for _ in range(30):
        n = int(rng.integers(2, 9))
        _, trace = solve(from_roots(random_roots(rng, n, -10.0, 10.0, 0.1)))
        assert [stage.degree for stage in trace.stages] == list(range(n, 1, -1))
        assert all(stage.invariant_drift <= 1e-9 for stage in trace.stages)


def test_unpolished_reduction_is_already_accurate(rng):
    for _ in range(20):
        n = int(rng.integers(5, 9))
        q = random_roots(rng, n, -10.0, 10.0, 0.1)
        found, trace = solve(from_roots(q), SolveOptions(polish=False))
        assert trace.polish_correction == 0.0
        assert found.roots == pytest.approx(q, abs=1e-6)


def test_cauchy_bound_at_degree_eight():
    roots = [-9.3, -6.1, -2.2, 0.4, 1.7, 4.4, 7.9, 9.6]
    found, trace = solve(from_roots(roots), SolveOptions(root_bound=RootBound.cauchy))
    assert trace.precondition_shift > 1e4
    assert found.roots == pytest.approx(roots, abs=1e-7)


def test_polish_stays_on_its_own_root():
    poly = from_roots([1.0, 2.0, 3.0])
    polished, moved = polish_roots(poly, RootSet(roots=(1.001, 1.999, 3.0)))
    assert polished.roots == pytest.approx((1.0, 2.0, 3.0), abs=1e-12)
    assert moved == pytest.approx(1e-3, rel=1e-3)


def test_closed_form_reconstruction_of_a_quadratic():
    # roots {1, 2} are preconditioned by B = 1, then shifted down by 2
    _, trace = solve(from_roots([1.0, 2.0]))
    assert trace.precondition_shift == pytest.approx(1.0)
    assert trace.stages[0].shift == pytest.approx(2.0, abs=1e-9)
    # 1/r weights halve the trailing translation
    assert back_translate_closed_form(trace).roots == pytest.approx((0.0, 2.0), abs=1e-9)
    assert closed_form_discrepancy(trace) == pytest.approx(1.0, abs=1e-9)


def test_closed_form_rejects_incomplete_trace():
    with pytest.raises(IncompleteTraceError):
        back_translate_closed_form(ReductionTrace())
