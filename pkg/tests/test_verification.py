import pytest

from polyflow.core.exceptions import UnknownSuiteError
from polyflow.schemas.verification import SuiteName, VerifyOptions
from polyflow.services.verification import SUITES, run_suite


def test_every_suite_is_registered():
    assert set(SUITES) == set(SuiteName)


def test_unknown_suite():
    with pytest.raises(UnknownSuiteError):
        run_suite("galois")


@pytest.mark.parametrize(
    "name, count",
    [("vieta", 30), ("theorem24", 20), ("euler-shift", 20), ("trig", 60), ("invariants", None)],
)
def test_suite_passes(name, count):
    report = run_suite(name, VerifyOptions(count=count))
    failed = [p.name for p in report.properties if not p.passed]
    assert report.passed, failed
    assert all(p.samples > 0 for p in report.properties)


def test_elliptic_suite_passes():
    report = run_suite("elliptic", VerifyOptions(count=3))
    assert report.passed, [p.name for p in report.properties if not p.passed]


def test_dynamics_suite_passes_for_one_degree():
    report = run_suite("dynamics", VerifyOptions(degree=2, steps=500))
    assert report.passed, [p.name for p in report.properties if not p.passed]


def test_zero_drift_tolerance_fails():
    report = run_suite("invariants", VerifyOptions(count=3, degree=5, drift_tol=0.0))
    assert not report.passed
    drift = next(p for p in report.properties if p.name == "evolution_invariant_drift")
    assert drift.tolerance == 0.0
    assert drift.residual > 0.0


def test_reports_are_reproducible():
    first = run_suite("vieta", VerifyOptions(count=10, seed=7))
    second = run_suite("vieta", VerifyOptions(count=10, seed=7))
    assert first == second
    assert first.seed == 7


def test_degree_override():
    report = run_suite("theorem24", VerifyOptions(count=5, degree=4))
    assert report.passed
    assert report.max_residual == max(p.residual for p in report.properties)
