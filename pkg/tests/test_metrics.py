import math

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from cubepad.errors import DimensionMismatchError, InsufficientPointsError, NoOverlapError
from cubepad.metrics import RdPoint, bd_rate, mse, psnr, psnr_from_mse

ANCHOR = [RdPoint(1000, 32.1), RdPoint(1800, 34.6), RdPoint(3100, 36.9), RdPoint(5600, 39.2)]


def test_psnr_identical_is_inf(rng):
    p = rng.integers(0, 256, (9, 7))
    assert psnr(p, p) == math.inf


@pytest.mark.parametrize("bitdepth", [8, 10])
def test_psnr_zero_vs_max(bitdepth):
    peak = (1 << bitdepth) - 1
    assert psnr(np.zeros((4, 4)), np.full((4, 4), peak), bitdepth) == pytest.approx(0.0, abs=1e-12)


@pytest.mark.parametrize("d,n,bitdepth", [(1, 64, 8), (7, 100, 8), (300, 1024, 10)])
def test_psnr_single_pixel_closed_form(d, n, bitdepth):
    a = np.zeros(n)
    b = a.copy()
    b[n // 3] = d
    peak = (1 << bitdepth) - 1
    assert psnr(a, b, bitdepth) == pytest.approx(10 * math.log10(peak ** 2 * n / d ** 2), abs=1e-12)


def test_psnr_shape_mismatch():
    with pytest.raises(DimensionMismatchError):
        psnr(np.zeros((2, 3)), np.zeros((3, 2)))
    with pytest.raises(DimensionMismatchError):
        mse(np.zeros(4), np.zeros(5))


def test_psnr_from_mse():
    assert psnr_from_mse(0.0) == math.inf
    assert psnr_from_mse(255.0 ** 2) == 0.0


def test_bd_rate_identity_is_zero():
    assert bd_rate(ANCHOR, ANCHOR) == 0.0


def test_bd_rate_uniform_scaling():
    test = [RdPoint(r * 0.95, q) for r, q in ANCHOR]
    assert bd_rate(ANCHOR, test) == pytest.approx(-5.0, abs=1e-9)
    test = [RdPoint(r * 1.2, q) for r, q in ANCHOR]
    assert bd_rate(ANCHOR, test) == pytest.approx(20.0, abs=1e-9)


def test_bd_rate_order_independent():
    test = [RdPoint(r * 0.9, q + 0.1) for r, q in ANCHOR]
    assert bd_rate(ANCHOR[::-1], test[::-1]) == bd_rate(ANCHOR, test)


def trapezoid_bd(coef_a, coef_t, lo, hi, samples=10_000):
    """Dense trapezoid integration of two known log10-rate cubics."""
    q = np.linspace(lo, hi, samples)

    def cubic(c, x):
        return ((c[0] * x + c[1]) * x + c[2]) * x + c[3]

    gap = cubic(coef_t, q) - cubic(coef_a, q)
    step = (hi - lo) / (samples - 1)
    area = step * (gap.sum() - 0.5 * (gap[0] + gap[-1]))
    return 100.0 * (10 ** (area / (hi - lo)) - 1)


@pytest.mark.parametrize("coef_a,coef_t,qa,qt", [
    ([1e-4, -0.01, 0.5, -5.0], [2e-4, -0.02, 0.9, -10.0], [30, 33, 36, 40], [31, 34, 37, 41]),
    ([0.0, 0.002, -0.05, 3.0], [-1e-4, 0.01, -0.25, 4.5], [28, 31, 35, 38], [29, 32, 34, 37.5]),
])
def test_bd_rate_matches_trapezoid_oracle(coef_a, coef_t, qa, qt):
    # four points define each cubic exactly, so the fit recovers it
    anchor = [(10 ** np.polyval(coef_a, q), q) for q in qa]
    test = [(10 ** np.polyval(coef_t, q), q) for q in qt]
    lo, hi = max(qa[0], qt[0]), min(qa[-1], qt[-1])
    want = trapezoid_bd(coef_a, coef_t, lo, hi)
    assert bd_rate(anchor, test) == pytest.approx(want, abs=0.01)


def test_bd_rate_sign_convention():
    better = [RdPoint(r, q + 0.5) for r, q in ANCHOR]
    assert bd_rate(ANCHOR, better) < 0


def test_bd_rate_errors():
    with pytest.raises(InsufficientPointsError):
        bd_rate(ANCHOR[:3], ANCHOR)
    with pytest.raises(InsufficientPointsError):
        bd_rate(ANCHOR, ANCHOR[1:])
    far = [RdPoint(r, q + 20) for r, q in ANCHOR]
    with pytest.raises(NoOverlapError):
        bd_rate(ANCHOR, far)
    with pytest.raises(ValueError):
        bd_rate([(0, 30), (1, 31), (2, 32), (3, 33)], ANCHOR)


curve = st.lists(st.tuples(st.floats(100, 1e5), st.floats(25, 45)), min_size=4, max_size=6,
                 unique_by=lambda p: p[1])


@given(curve)
@settings(max_examples=60, deadline=None)
def test_bd_rate_fixed_point(c):
    assume(np.min(np.diff(sorted(q for _, q in c))) > 0.1)  # no near-duplicate points
    assert bd_rate(c, c) == 0.0


@given(st.floats(0.5, 2.0), st.floats(-1.0, 1.0))
@settings(max_examples=60, deadline=None)
def test_bd_rate_antisymmetric(scale, shift):
    test = [RdPoint(r * scale, q + shift) for r, q in ANCHOR]
    x = bd_rate(ANCHOR, test) / 100
    y = bd_rate(test, ANCHOR) / 100
    assert (1 + x) * (1 + y) == pytest.approx(1.0, abs=1e-9)
