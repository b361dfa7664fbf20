"""numba and numpy kernels must agree."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cubepad.kernels import _numba, _numpy


@pytest.fixture
def plane(rng):
    return rng.integers(0, 1024, (23, 37)).astype(np.float64)


@pytest.mark.parametrize("taps", [2, 3])
@pytest.mark.parametrize("wrap", [False, True])
def test_lanczos_backends_agree(plane, rng, taps, wrap):
    xs = rng.uniform(-5, 42, 500)
    ys = rng.uniform(-5, 28, 500)
    a = _numba.lanczos_sample(plane, xs, ys, taps, wrap)
    b = _numpy.lanczos_sample(plane, xs, ys, taps, wrap)
    np.testing.assert_allclose(a, b, rtol=0, atol=1e-9)


@pytest.mark.parametrize("wrap", [False, True])
def test_bilinear_backends_agree(plane, rng, wrap):
    xs = rng.uniform(-3, 40, 500)
    ys = rng.uniform(-3, 26, 500)
    np.testing.assert_allclose(_numba.bilinear_sample(plane, xs, ys, wrap),
                               _numpy.bilinear_sample(plane, xs, ys, wrap), rtol=0, atol=1e-9)


def test_gather4_backends_bit_identical(rng):
    flat = rng.integers(0, 1024, 1000).astype(np.float64)
    idx = rng.integers(0, 1000, (300, 4))
    wd = rng.uniform(0, 1, (300, 1))
    wl = rng.uniform(0, 1, (300, 1))
    wdepth = np.hstack([1 - wd, wd])
    wlat = np.hstack([1 - wl, wl])
    a = _numba.gather4(flat, idx, wdepth, wlat)
    b = _numpy.gather4(flat, idx, wdepth, wlat)
    assert np.array_equal(a, b)


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), b=st.sampled_from([4, 8]), rng_=st.integers(0, 5),
       flat=st.booleans())
def test_full_search_backends_identical(seed, b, rng_, flat):
    r = np.random.default_rng(seed)
    hi = 2 if flat else 256  # flat content forces many SAD ties
    cur = r.integers(0, hi, (b, b)).astype(np.int32)
    win = r.integers(0, hi, (b + 2 * rng_, b + 2 * rng_)).astype(np.int32)
    assert _numba.full_search(cur, win, rng_) == _numpy.full_search(cur, win, rng_)


def test_full_search_tie_break_prefers_short_vectors():
    cur = np.zeros((4, 4), dtype=np.int32)
    win = np.zeros((10, 10), dtype=np.int32)
    for impl in (_numba, _numpy):
        assert impl.full_search(cur, win, 3) == (0, 0, 0)
    # only (+1, 0) and (0, -1) blocks are all-zero; equal length -> smaller dy wins
    win = np.full((10, 10), 9, dtype=np.int32)
    win[3:7, 4:8] = 0
    win[2:6, 3:7] = 0
    for impl in (_numba, _numpy):
        dx, dy, sad = impl.full_search(cur, win, 3)
        assert sad == 0 and (dx, dy) == (0, -1)
