import pytest

from polyflow.core.exceptions import IndexOutOfRangeError, NoConvergenceError
from polyflow.schemas.polynomials import InvariantSet
from polyflow.services.oracle import (
    durand_kerner,
    expand_from_roots,
    finite_diff,
    real_roots_or_none,
)
from polyflow.services.poly_core import psq_of_p1


def test_durand_kerner_real_roots():
    roots = real_roots_or_none(durand_kerner([1.0, -6.0, 11.0, -6.0]))
    assert roots == pytest.approx([1.0, 2.0, 3.0], abs=1e-10)


def test_durand_kerner_quadratic():
    roots = real_roots_or_none(durand_kerner([1.0, 0.0, -1.0]))
    assert roots == pytest.approx([-1.0, 1.0], abs=1e-10)


def test_durand_kerner_complex_pair():
    roots = sorted(durand_kerner([1.0, 0.0, 1.0]), key=lambda z: z.imag)
    assert roots[0] == pytest.approx(-1j, abs=1e-10)
    assert roots[1] == pytest.approx(1j, abs=1e-10)
    assert real_roots_or_none(roots) is None


def test_durand_kerner_iteration_budget():
    with pytest.raises(NoConvergenceError):
        durand_kerner([1.0, -6.0, 11.0, -6.0], max_iter=1)


def test_expand_from_roots():
    assert expand_from_roots([]).coeffs == (1.0,)
    assert expand_from_roots([2.5]).coeffs == (1.0, -2.5)
    assert expand_from_roots([1.0, 2.0, 3.0]).coeffs == pytest.approx((1.0, -6.0, 11.0, -6.0))


@pytest.mark.parametrize("k, expected, rel", [(1, 12.0, 1e-8), (2, 12.0, 1e-6), (3, 6.0, 1e-4)])
def test_finite_diff_cubic(k, expected, rel):
    assert finite_diff(lambda x: x**3, 2.0, k) == pytest.approx(expected, rel=rel)


def test_finite_diff_of_psq_polynomial():
    inv = InvariantSet(degree=3, r0=0.0, r=(-1.0,))
    assert finite_diff(lambda x: psq_of_p1(inv, x), 2.0, 1) == pytest.approx(11.0, rel=1e-8)


def test_finite_diff_richardson_is_exact_on_polynomials():
    def f(x: float) -> float:
        return x**6 - 2.0 * x**3 + x

    # f'' = 30 x^4 - 12 x
    estimate = finite_diff(f, 1.5, 2, h=0.25, richardson=2)
    assert estimate == pytest.approx(30.0 * 1.5**4 - 18.0, rel=1e-10)


def test_finite_diff_order_zero_and_range():
    assert finite_diff(lambda x: x + 1.0, 2.0, 0) == 3.0
    for k in (-1, 7):
        with pytest.raises(IndexOutOfRangeError):
            finite_diff(lambda x: x, 0.0, k)
