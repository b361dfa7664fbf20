"""PSNR and Bjontegaard delta rate."""

from __future__ import annotations

import math
from typing import NamedTuple, Sequence

import numpy as np
from numpy.polynomial import Polynomial

from .errors import DimensionMismatchError, InsufficientPointsError, NoOverlapError


class RdPoint(NamedTuple):
    rate: float
    psnr: float


def mse(a, b) -> float:
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape:
        raise DimensionMismatchError(f"shape mismatch: {a.shape} vs {b.shape}")
    return float(np.mean((a - b) ** 2))


def psnr_from_mse(err: float, bitdepth: int = 8) -> float:
    if err == 0:
        return math.inf
    peak = (1 << bitdepth) - 1
    return 10.0 * math.log10(peak * peak / err)


def psnr(a, b, bitdepth: int = 8) -> float:
    """PSNR in dB; identical inputs give ``math.inf``."""
    return psnr_from_mse(mse(a, b), bitdepth)


def _curve(points: Sequence) -> tuple[np.ndarray, np.ndarray]:
    pts = sorted((float(r), float(q)) for r, q in points)
    if len(pts) < 4:
        raise InsufficientPointsError(f"BD-rate needs at least 4 points per curve, got {len(pts)}")
    rate = np.array([p[0] for p in pts])
    quality = np.array([p[1] for p in pts])
    if np.any(rate <= 0):
        raise ValueError("rates must be positive")
    return rate, quality


def bd_rate(anchor: Sequence, test: Sequence) -> float:
    """Average bitrate difference of ``test`` vs ``anchor`` at equal PSNR, in percent.

    Fits log10(rate) as a cubic in PSNR for each curve and integrates the gap
    over the shared PSNR interval. Negative means ``test`` needs fewer bits.
    """
    ra, qa = _curve(anchor)
    rt, qt = _curve(test)
    lo = max(qa.min(), qt.min())
    hi = min(qa.max(), qt.max())
    if not hi > lo:
        raise NoOverlapError("PSNR ranges of the two curves do not overlap")
    # Polynomial.fit works on a scaled domain, which keeps the cubic well
    # conditioned when PSNR points are close together.
    fit_a = Polynomial.fit(qa, np.log10(ra), 3).integ()
    fit_t = Polynomial.fit(qt, np.log10(rt), 3).integ()
    area_a = fit_a(hi) - fit_a(lo)
    area_t = fit_t(hi) - fit_t(lo)
    avg = (area_t - area_a) / (hi - lo)
    return float(100.0 * (10.0 ** avg - 1.0))
