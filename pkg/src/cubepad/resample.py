"""Separable Lanczos and bilinear sampling at fractional positions.

Sample ``(row j, col i)`` of a plane lives at continuous coordinate
``(x=i, y=j)``. Results are real-valued; call :func:`quantize` before storing.
"""

from __future__ import annotations

import enum

import numpy as np

from . import kernels


class BorderMode(enum.Enum):
    CLAMP = "clamp"
    WRAP_HORIZONTAL = "wrap"  # wrap in x, clamp in y


def lanczos_kernel(t, taps_half: int):
    t = np.asarray(t, dtype=np.float64)
    return np.where(np.abs(t) < taps_half, np.sinc(t) * np.sinc(t / taps_half), 0.0)


def lanczos_weights(taps_half: int, frac: float) -> np.ndarray:
    """The ``2*taps_half`` normalized Lanczos weights for a fractional offset.

    Tap ``i`` sits at ``floor(x) - taps_half + 1 + i``.
    """
    if taps_half not in (2, 3):
        raise ValueError("taps_half must be 2 or 3")
    if not 0.0 <= frac < 1.0:
        raise ValueError("frac must be in [0, 1)")
    if frac == 0.0:
        w = np.zeros(2 * taps_half)
        w[taps_half - 1] = 1.0
        return w
    t = np.arange(2 * taps_half) - taps_half + 1 - frac
    w = lanczos_kernel(t, taps_half)
    return w / w.sum()


def _prep(plane, x, y):
    plane = np.ascontiguousarray(plane, dtype=np.float64)
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    x, y = np.broadcast_arrays(x, y)
    if not (np.all(np.isfinite(x)) and np.all(np.isfinite(y))):
        raise ValueError("sample coordinates must be finite")
    return plane, x, y


def sample_lanczos(plane, x, y, taps_half: int = 3, border: BorderMode = BorderMode.CLAMP):
    """Separable Lanczos-``taps_half`` interpolation of ``plane`` at ``(x, y)``.

    Accepts scalars or same-shape arrays. The result can overshoot the sample
    range near edges.
    """
    if taps_half not in (2, 3):
        raise ValueError("taps_half must be 2 or 3")
    plane, x, y = _prep(plane, x, y)
    out = kernels.lanczos_sample(plane, np.ascontiguousarray(x.ravel()),
                                 np.ascontiguousarray(y.ravel()), taps_half,
                                 border is BorderMode.WRAP_HORIZONTAL)
    return out.reshape(x.shape) if x.ndim else float(out[0])


def sample_bilinear(plane, x, y, border: BorderMode = BorderMode.CLAMP):
    plane, x, y = _prep(plane, x, y)
    out = kernels.bilinear_sample(plane, np.ascontiguousarray(x.ravel()),
                                  np.ascontiguousarray(y.ravel()),
                                  border is BorderMode.WRAP_HORIZONTAL)
    return out.reshape(x.shape) if x.ndim else float(out[0])


def quantize(values, bitdepth: int) -> np.ndarray:
    """Round half away from zero, clamp to the sample range, return uint16."""
    v = np.asarray(values, dtype=np.float64)
    if np.any(np.isnan(v)):
        raise ValueError("NaN in sample values")
    r = np.sign(v) * np.floor(np.abs(v) + 0.5)
    return np.clip(r, 0, (1 << bitdepth) - 1).astype(np.uint16)
