"""
Seeded property suites that cross-check every module against an independent reference.

Each suite returns one PropertyResult per property: the worst residual over all sampled
instances and whether it lies within tolerance.
"""

import logging
import math
from typing import Callable, Iterable

import numpy as np

from ...core.exceptions import (
    DiscriminantViolationError,
    NoTurningPointError,
    PolyflowError,
    UnknownSuiteError,
)
from ...schemas.cubic import CubicInvariants
from ...schemas.dynamics import (
    DynamicsState,
    FieldSpec,
    PotentialKind,
    PotentialSpec,
    QuadraticState,
    SimulationOptions,
)
from ...schemas.verification import PropertyResult, SuiteName, SuiteReport, VerifyOptions
from ..cubic_special import (
    calibrate_argument_scale,
    elliptic_constants,
    flow_speed_constant,
    glaisher_quotients,
    jacobi_eigenvalue_parametrization,
    jacobi_sn_cn_dn,
    solve_cubic_trig,
    weierstrass_flow,
    weierstrass_roots_check,
)
from ..dynamics import (
    effective_potential,
    effective_potential_polynomial,
    half_argument_fit,
    newtonian_reduction_check,
    orbit_distance,
    simulate_generalized,
    simulate_quadratic,
    simulate_quadratic_in_s,
)
from ..evolution import evolve_to_psq_zero, relative_drift, verify_against_closed_form
from ..oracle import durand_kerner, expand_from_roots, finite_diff, real_roots_or_none
from ..poly_core import (
    coefficient_from_invariants,
    depress,
    euler_shift_residual,
    from_monic,
    from_roots,
    psq_derivative,
    psq_of_p1,
    shifted_from_invariants,
    to_monic,
)

logger = logging.getLogger(__name__)

Suite = Callable[[VerifyOptions, np.random.Generator], list[PropertyResult]]
SUITES: dict[SuiteName, Suite] = {}

# step for the finite-difference oracle; Richardson levels absorb the truncation error
FD_STEP = 0.25
DYNAMICS_ROOT_SPACING = 0.5


def suite(name: SuiteName) -> Callable[[Suite], Suite]:
    def register(fn: Suite) -> Suite:
        SUITES[name] = fn
        return fn

    return register


def _result(name: str, residuals: Iterable[float], tol: float) -> PropertyResult:
    values = list(residuals)
    worst = max(values, default=0.0)
    return PropertyResult(
        name=name,
        passed=bool(worst <= tol),
        residual=float(worst),
        tolerance=tol,
        samples=len(values),
    )


def random_roots(
    rng: np.random.Generator, n: int, low: float, high: float, gap: float
) -> np.ndarray:
    """n sorted roots in [low, high] with consecutive gaps of at least ``gap``."""
    slack = (high - low) - (n - 1) * gap
    if slack <= 0:
        raise ValueError(f"cannot fit {n} roots {gap} apart in [{low}, {high}]")
    return low + np.sort(rng.uniform(0.0, slack, n)) + gap * np.arange(n)


def _instances(
    opts: VerifyOptions,
    rng: np.random.Generator,
    default_count: int,
    degrees: tuple[int, int],
    low: float,
    high: float,
    gap: float,
) -> list[np.ndarray]:
    count = opts.count or default_count
    lo, hi = degrees
    if opts.degree is not None:
        lo = hi = opts.degree
    return [random_roots(rng, int(rng.integers(lo, hi + 1)), low, high, gap) for _ in range(count)]


def _coeff_residual(a: Iterable[float], b: Iterable[float]) -> float:
    a, b = np.asarray(list(a)), np.asarray(list(b))
    return float(np.max(np.abs(a - b))) / max(1.0, float(np.max(np.abs(b))))


@suite(SuiteName.vieta)
def vieta_suite(opts: VerifyOptions, rng: np.random.Generator) -> list[PropertyResult]:
    tol = opts.tol if opts.tol is not None else 1e-12
    expansion, product, round_trip = [], [], []
    for q in _instances(opts, rng, 200, (2, 8), -4.0, 4.0, 0.25):
        poly = from_roots(q)
        expansion.append(_coeff_residual(to_monic(poly), expand_from_roots(q).coeffs))
        product.append(relative_drift(poly.psq, math.prod(q)))
        back = from_monic(to_monic(poly))
        round_trip.append(_coeff_residual((*back.p, back.psq), (*poly.p, poly.psq)))
    return [
        _result("expansion_matches_convolution", expansion, tol),
        _result("psq_is_root_product", product, tol),
        _result("monic_round_trip", round_trip, tol),
    ]


@suite(SuiteName.invariants)
def invariants_suite(opts: VerifyOptions, rng: np.random.Generator) -> list[PropertyResult]:
    tol = opts.tol if opts.tol is not None else 1e-9
    drift_tol = opts.drift_tol if opts.drift_tol is not None else 1e-9
    shifted = []
    for q in _instances(opts, rng, 200, (2, 6), -2.0, 2.0, 0.25):
        c = float(rng.uniform(-3.0, 3.0))
        before, after = depress(from_roots(q)), depress(from_roots(q + c))
        shifted.append(_coeff_residual(after.as_tuple(), before.as_tuple()))

    drift, closed_form = [], []
    for q in _instances(opts, rng, 50, (2, 6), 0.1, 5.0, 0.25):
        _, trace = evolve_to_psq_zero(from_roots(q))
        drift.append(trace.max_drift)
        closed_form.append(verify_against_closed_form(trace))
    return [
        _result("translation_invariance", shifted, tol),
        _result("evolution_invariant_drift", drift, drift_tol),
        _result("evolution_matches_closed_form", closed_form, drift_tol),
    ]


@suite(SuiteName.theorem24)
def theorem24_suite(opts: VerifyOptions, rng: np.random.Generator) -> list[PropertyResult]:
    tol = opts.tol if opts.tol is not None else 1e-6
    fd, top, identity = [], [], []
    for q in _instances(opts, rng, 200, (2, 6), -2.0, 2.0, 0.25):
        poly = from_roots(q)
        inv, p1, n = depress(poly), poly.p1, poly.degree
        for k in range(1, min(4, n - 1) + 1):
            exact = math.factorial(k) * (k + 1) * poly.coefficient(n - k)
            estimate = finite_diff(
                lambda x: psq_of_p1(inv, x), p1, k, h=FD_STEP, richardson=(n - k) // 2
            )
            fd.append(relative_drift(estimate, exact))
        for order in range(1, n):
            identity.append(
                relative_drift(
                    coefficient_from_invariants(inv, p1, order), poly.coefficient(n - order)
                )
            )
        top.append(relative_drift(psq_derivative(inv, p1, n), math.factorial(n)))
    return [
        _result("finite_difference_derivatives", fd, tol),
        _result("top_derivative_is_factorial", top, 1e-9),
        _result("coefficients_from_invariants", identity, 1e-9),
    ]


@suite(SuiteName.euler_shift)
def euler_shift_suite(opts: VerifyOptions, rng: np.random.Generator) -> list[PropertyResult]:
    tol = opts.tol if opts.tol is not None else 1e-8
    at_roots, product_form = [], []
    for q in _instances(opts, rng, 200, (2, 6), -2.0, 2.0, 0.25):
        poly = from_roots(q)
        for root in q:
            at_roots.append(abs(euler_shift_residual(poly, float(root))) / (1.0 + abs(poly.psq)))
        x = float(rng.uniform(-3.0, 3.0))
        product_form.append(relative_drift(euler_shift_residual(poly, x), math.prod(q - x)))
    return [
        _result("vanishes_at_roots", at_roots, tol),
        _result("equals_root_product", product_form, 1e-9),
    ]


@suite(SuiteName.trig)
def trig_suite(opts: VerifyOptions, rng: np.random.Generator) -> list[PropertyResult]:
    tol = opts.tol if opts.tol is not None else 1e-10
    oracle, exact = [], []
    for q in _instances(opts, rng, 500, (3, 3), -4.0, 4.0, 0.25):
        inv = depress(from_roots(q))
        roots = sorted(solve_cubic_trig(CubicInvariants.from_invariant_set(inv)))
        reference = real_roots_or_none(durand_kerner(shifted_from_invariants(inv)))
        oracle.append(
            math.inf if reference is None else max(abs(a - b) for a, b in zip(roots, reference))
        )
        exact.append(max(abs(a - b) for a, b in zip(roots, q - q.mean())))

    missed = 0
    count = opts.count or 500
    for i in range(count):
        d = float(rng.uniform(0.1, 3.0))
        boundary = 2.0 * (d / 3.0) ** 1.5
        if i % 2:
            bad = CubicInvariants(d=-d, r0=float(rng.uniform(-3.0, 3.0)))
        else:
            sign = 1.0 if rng.uniform() < 0.5 else -1.0
            bad = CubicInvariants(d=d, r0=sign * float(rng.uniform(1.01, 3.0)) * boundary)
        try:
            solve_cubic_trig(bad)
            missed += 1
        except DiscriminantViolationError:
            pass
    return [
        _result("matches_oracle", oracle, tol),
        _result("matches_depressed_roots", exact, tol),
        _result("rejects_single_real_root", [float(missed)], 0.0),
    ]


def _bounded_flow_start(q: np.ndarray) -> tuple[CubicInvariants, float]:
    inv = CubicInvariants.from_invariant_set(depress(from_roots(q)))
    # the radicand vanishes at -y_i; P_1 oscillates between its two lowest zeros
    zeros = np.sort(-(q - q.mean()))
    return inv, float(0.5 * (zeros[0] + zeros[1]))


@suite(SuiteName.elliptic)
def elliptic_suite(opts: VerifyOptions, rng: np.random.Generator) -> list[PropertyResult]:
    tol = opts.tol if opts.tol is not None else 1e-6
    residual, turning, scale = [], [], []
    for q in _instances(opts, rng, 10, (3, 3), -2.0, 2.0, 0.5):
        inv, p1_0 = _bounded_flow_start(q)
        flow = weierstrass_flow(inv, p1_0, (0.0, 20.0))
        consts = elliptic_constants(inv)
        residual.append(flow.max_residual)
        try:
            turning.append(weierstrass_roots_check(consts, flow))
        except NoTurningPointError:
            turning.append(math.inf)
        scale.append(abs(calibrate_argument_scale(flow, consts) - 0.5))

    count = opts.count or 200
    identities, odes, differences, speed = [], [], [], []
    for _ in range(count):
        u, m = float(rng.uniform(0.2, 2.5)), float(rng.uniform(0.0, 1.0))
        sn, cn, dn = jacobi_sn_cn_dn(u, m)
        identities.append(max(abs(sn * sn + cn * cn - 1.0), abs(dn * dn + m * sn * sn - 1.0)))
        ns, cs, ds = glaisher_quotients(u, m)
        for j, exact in enumerate((cs * ds, ns * ds, cs * ns)):
            estimate = finite_diff(lambda x: glaisher_quotients(x, m)[j], u, 1, richardson=1)
            odes.append(relative_drift(estimate, exact))

    for _ in range(max(1, count // 20)):
        e1, m = float(rng.uniform(0.5, 2.0)), float(rng.uniform(0.0, 1.0))
        e2 = e1 * (1.0 - m)
        for u in np.linspace(0.2, 2.5, 24):
            q1, q2, q3 = jacobi_eigenvalue_parametrization(e1, e2, float(u))
            differences.append(max(abs(q3 - q2 - e1), abs(q1 - q2 - e2)))
        kappa, spread = flow_speed_constant(e1, m, np.linspace(0.3, 2.4, 8))
        speed.append(max(abs(kappa - 2.0 * e1), spread) / e1)

    return [
        _result("weierstrass_flow_residual", residual, tol),
        _result("turning_values_are_roots", turning, tol),
        _result("argument_scale_is_half", scale, tol),
        _result("jacobi_identities", identities, 1e-12),
        _result("quotient_derivatives", odes, 1e-7),
        _result("parametrized_differences_constant", differences, 1e-10),
        _result("flow_speed_constant", speed, tol),
    ]


def _dynamics_roots(n: int) -> list[float]:
    return [DYNAMICS_ROOT_SPACING * (k + 1) for k in range(n)]


def _dynamics_potentials(rng: np.random.Generator) -> list[tuple[PotentialSpec, tuple, tuple]]:
    """(potential, r0, momentum direction) pairs that keep trajectories bounded or escaping."""
    return [
        (
            PotentialSpec(kind=PotentialKind.harmonic, strength=float(rng.uniform(0.5, 2.0))),
            (0.5, 0.0, 0.0),
            (0.0, 1.0, 0.0),
        ),
        (
            PotentialSpec(kind=PotentialKind.coulomb, strength=-float(rng.uniform(0.5, 2.0))),
            (1.0, 0.0, 0.0),
            (1.0, 0.0, 0.0),
        ),
    ]


@suite(SuiteName.dynamics)
def dynamics_suite(opts: VerifyOptions, rng: np.random.Generator) -> list[PropertyResult]:
    drift_tol = opts.drift_tol if opts.drift_tol is not None else 1e-8
    sim = SimulationOptions(record_every=10)
    tau_end = (opts.steps or 10_000) * sim.step
    degrees = [opts.degree] if opts.degree is not None else [2, 3, 4, 5]

    results = []
    for n in degrees:
        poly = from_roots(_dynamics_roots(n))
        for spec, r0, direction in _dynamics_potentials(rng):
            init = DynamicsState.from_polynomial(poly, r0, direction)
            try:
                report = simulate_generalized(n, spec, init, (0.0, tau_end), sim).report
                drifts = [report.max_drift]
            except PolyflowError as e:
                logger.warning("degree-%d %s run failed: %s", n, spec.kind.value, e.message)
                drifts = [math.inf]
            results.append(_result(f"conservation_n{n}_{spec.kind.value}", drifts, drift_tol))

    harmonic = PotentialSpec(kind=PotentialKind.harmonic)
    newton = []
    for n in (2, 3):
        init = DynamicsState.from_polynomial(
            from_roots(_dynamics_roots(n)), (0.5, 0.0, 0.0), (0.0, 1.0, 0.0)
        )
        newton.append(newtonian_reduction_check(n, harmonic, init, (0.0, 10.0)))
    results.append(_result("newtonian_reduction", newton, 1e-6))

    mass = 1.0
    fields = FieldSpec(e_field=(1.0,))
    tau_run = simulate_quadratic(fields, QuadraticState(r=(0.0,), P=(0.0,), P0=mass), (0.0, 2.0))
    s = tau_run.column("s")
    hyperbolic = np.maximum(
        np.abs(tau_run.column("P_x") - mass * np.sinh(s)),
        np.abs(tau_run.column("P0") - mass * np.cosh(s)),
    )
    s_run = simulate_quadratic_in_s(0.0, mass, (0.0, 2.0))
    fit = half_argument_fit(tau_run)
    results += [
        _result("hyperbolic_law", hyperbolic, 1e-8),
        _result("reparametrization", [orbit_distance(tau_run, s_run)], 1e-7),
        _result("eigenvalue_relations", [fit["product"], fit["gap"]], 1e-9),
        _result("half_argument_unsquared", [fit["unsquared"]], 1e-8),
    ]

    chain = []
    for n in range(2, 9):
        energies = rng.uniform(-2.0, 2.0, n - 1)
        w = effective_potential_polynomial(n, energies)
        for v in rng.uniform(-2.0, 2.0, 5):
            chain.append(relative_drift(effective_potential(n, energies, float(v)), float(w(v))))
    results.append(_result("effective_potential_chain", chain, 1e-10))
    return results


def run_suite(name: str, opts: VerifyOptions | None = None) -> SuiteReport:
    opts = opts or VerifyOptions()
    try:
        key = SuiteName(name)
    except ValueError:
        raise UnknownSuiteError(name, [s.value for s in SuiteName]) from None
    rng = np.random.default_rng(opts.seed)
    logger.info("Running %s suite (seed %d)", key.value, opts.seed)
    properties = SUITES[key](opts, rng)
    passed = all(p.passed for p in properties)
    for p in properties:
        if not p.passed:
            logger.warning(
                "%s/%s failed: residual %.3e > %.1e", key.value, p.name, p.residual, p.tolerance
            )
    return SuiteReport(suite=key, seed=opts.seed, passed=passed, properties=properties)
