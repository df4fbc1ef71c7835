import math

import numpy as np
import pytest
from scipy.special import ellipj

from polyflow.core.exceptions import (
    DiscriminantViolationError,
    InputError,
    ModulusOutOfRangeError,
    NoTurningPointError,
    RadicandNegativeError,
)
from polyflow.schemas.cubic import CubicInvariants
from polyflow.services.cubic_special import (
    calibrate_argument_scale,
    cubic_eigenvalue_flow,
    elliptic_constants,
    flow_speed_constant,
    glaisher_quotients,
    invariants_from_flow,
    jacobi_eigenvalue_parametrization,
    jacobi_sn_cn_dn,
    solve_cubic_trig,
    weierstrass_flow,
    weierstrass_roots_check,
)
from polyflow.services.oracle import finite_diff
from polyflow.services.poly_core import depress, from_roots
from polyflow.services.verification.suites import random_roots

# depressed roots of the worked cubic are -1, 0, 1
WORKED = CubicInvariants(d=1.0, r0=0.0)


@pytest.fixture(scope="module")
def worked_flow():
    # P_1 oscillates between the radicand zeros -1 and 0
    return weierstrass_flow(WORKED, -0.5, (0.0, 20.0))


def test_cubic_invariants_from_depressed(worked_cubic):
    inv = CubicInvariants.from_invariant_set(depress(worked_cubic))
    assert inv.d == pytest.approx(1.0)
    assert inv.r0 == pytest.approx(0.0, abs=1e-12)
    assert inv.three_real_roots
    assert inv.to_invariant_set().r == (-inv.d,)


def test_trig_worked_cubic():
    assert sorted(solve_cubic_trig(WORKED)) == pytest.approx([-1.0, 0.0, 1.0], abs=1e-12)


def test_trig_double_root_on_boundary():
    # Y^3 - 3Y - 2 = (Y + 1)^2 (Y - 2)
    roots = sorted(solve_cubic_trig(CubicInvariants(d=3.0, r0=2.0)))
    assert roots == pytest.approx([-1.0, -1.0, 2.0], abs=1e-7)


def test_trig_matches_depressed_roots(rng):
    for _ in range(100):
        q = random_roots(rng, 3, -4.0, 4.0, 0.25)
        inv = CubicInvariants.from_invariant_set(depress(from_roots(q)))
        assert sorted(solve_cubic_trig(inv)) == pytest.approx(q - q.mean(), abs=1e-10)


@pytest.mark.parametrize("d, r0", [(-1.0, 0.5), (0.0, 0.0), (3.0, 5.0), (3.0, -5.0)])
def test_trig_rejects_single_real_root(d, r0):
    inv = CubicInvariants(d=d, r0=r0)
    assert not inv.three_real_roots
    with pytest.raises(DiscriminantViolationError):
        solve_cubic_trig(inv)


@pytest.mark.parametrize("u, m", [(0.3, 0.1), (1.2, 0.5), (2.7, 0.9), (-0.8, 0.99)])
def test_jacobi_matches_scipy(u, m):
    sn, cn, dn, _ = ellipj(u, m)
    assert jacobi_sn_cn_dn(u, m) == pytest.approx((sn, cn, dn), abs=1e-12)


def test_jacobi_limits():
    assert jacobi_sn_cn_dn(0.7, 0.0) == pytest.approx((math.sin(0.7), math.cos(0.7), 1.0))
    sech = 1.0 / math.cosh(0.7)
    assert jacobi_sn_cn_dn(0.7, 1.0) == pytest.approx((math.tanh(0.7), sech, sech))


@pytest.mark.parametrize("m", [-0.1, 1.5])
def test_jacobi_modulus_range(m):
    with pytest.raises(ModulusOutOfRangeError):
        jacobi_sn_cn_dn(0.5, m)


def test_jacobi_identities(rng):
    for _ in range(100):
        u, m = float(rng.uniform(-3.0, 3.0)), float(rng.uniform(0.0, 1.0))
        sn, cn, dn = jacobi_sn_cn_dn(u, m)
        assert sn * sn + cn * cn == pytest.approx(1.0, abs=1e-12)
        assert dn * dn + m * sn * sn == pytest.approx(1.0, abs=1e-12)


def test_glaisher_quotient_derivatives():
    m, u = 0.35, 1.1
    ns, cs, ds = glaisher_quotients(u, m)
    for j, exact in enumerate((cs * ds, ns * ds, cs * ns)):
        estimate = finite_diff(lambda x: glaisher_quotients(x, m)[j], u, 1, richardson=1)
        assert estimate == pytest.approx(exact, rel=1e-7)


def test_glaisher_singular_at_zero():
    with pytest.raises(InputError):
        glaisher_quotients(0.0, 0.5)


def test_parametrized_differences_are_constant():
    e1, e2 = 1.7, 0.6
    for u in np.linspace(0.2, 2.5, 12):
        q1, q2, q3 = jacobi_eigenvalue_parametrization(e1, e2, float(u))
        assert q3 - q2 == pytest.approx(e1, abs=1e-10)
        assert q1 - q2 == pytest.approx(e2, abs=1e-10)


def test_parametrization_degenerate_parameter():
    # e2 = e1 gives m = 0, where ds = ns
    q1, _, q3 = jacobi_eigenvalue_parametrization(1.0, 1.0, 0.9)
    assert q1 == pytest.approx(q3)


def test_parametrization_rejects_bad_constants():
    with pytest.raises(InputError):
        jacobi_eigenvalue_parametrization(0.0, 0.5, 1.0)
    with pytest.raises(ModulusOutOfRangeError):
        jacobi_eigenvalue_parametrization(1.0, 2.0, 1.0)


def test_cubic_eigenvalue_flow_solves_the_product_system():
    e1, m = 1.3, 0.45
    root = math.sqrt(e1)

    def component(k: int):
        return lambda s: float(cubic_eigenvalue_flow(e1, m, [s * root])[0, k])

    s0 = 1.2 / root
    _, p1, p2, p3 = cubic_eigenvalue_flow(e1, m, [1.2])[0]
    for k, exact in ((1, p2 * p3), (2, p1 * p3), (3, p1 * p2)):
        assert finite_diff(component(k), s0, 1, richardson=1) == pytest.approx(exact, rel=1e-7)

    q = jacobi_eigenvalue_parametrization(e1, e1 * (1.0 - m), 1.2)
    assert (p1 * p1, p2 * p2, p3 * p3) == pytest.approx(q)


def test_flow_speed_constant():
    kappa, spread = flow_speed_constant(1.5, 0.4, np.linspace(0.3, 2.4, 8))
    assert kappa == pytest.approx(3.0, rel=1e-6)
    assert spread <= 1e-5


def test_elliptic_constants():
    consts = elliptic_constants(WORKED)
    assert consts.g2 == pytest.approx(4.0)
    assert consts.g3 == pytest.approx(0.0, abs=1e-15)
    assert consts.e_diffs == pytest.approx((1.0, -2.0, 1.0), abs=1e-12)
    assert sum(consts.e_diffs) == pytest.approx(0.0, abs=1e-12)


def test_weierstrass_flow_residual(worked_flow):
    assert worked_flow.max_residual <= 1e-6
    assert min(worked_flow.p1) >= -1.0 - 1e-6
    assert max(worked_flow.p1) <= 1e-6


def test_turning_points_are_radicand_zeros(worked_flow):
    assert len(worked_flow.turning_points) >= 2
    for tp in worked_flow.turning_points:
        assert min(abs(tp.p1 + 1.0), abs(tp.p1)) <= 1e-6
    assert weierstrass_roots_check(elliptic_constants(WORKED), worked_flow) <= 1e-5


def test_argument_scale_is_half(worked_flow):
    scale = calibrate_argument_scale(worked_flow, elliptic_constants(WORKED))
    assert scale == pytest.approx(0.5, abs=1e-6)


def test_invariants_from_flow(worked_flow):
    fitted = invariants_from_flow(worked_flow)
    assert fitted.d == pytest.approx(1.0, abs=1e-6)
    assert fitted.r0 == pytest.approx(0.0, abs=1e-6)


def test_weierstrass_flow_runs_backwards():
    flow = weierstrass_flow(WORKED, -0.5, (0.0, -1.0))
    assert flow.s[-1] == pytest.approx(-1.0)
    assert flow.max_residual <= 1e-8


def test_weierstrass_flow_rejects_negative_radicand():
    with pytest.raises(RadicandNegativeError):
        weierstrass_flow(WORKED, 0.5, (0.0, 1.0))


def test_roots_check_needs_turning_points():
    flow = weierstrass_flow(WORKED, -0.5, (0.0, 0.01))
    with pytest.raises(NoTurningPointError):
        weierstrass_roots_check(elliptic_constants(WORKED), flow)


def test_sn_derivative():
    sn, cn, dn = jacobi_sn_cn_dn(1.0, 0.5)
    estimate = finite_diff(lambda u: jacobi_sn_cn_dn(u, 0.5)[0], 1.0, 1)
    assert estimate == pytest.approx(cn * dn, abs=1e-8)
    assert sn * sn + cn * cn == pytest.approx(1.0, abs=1e-12)
