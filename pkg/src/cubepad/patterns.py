"""Analytic sphere patterns for synthetic 360-degree content.

Each pattern maps unit directions ``(..., 3)`` to intensities in ``[0, 1]``.
"""

from __future__ import annotations

import numpy as np


def _angles(d):
    x, y, z = d[..., 0], d[..., 1], d[..., 2]
    lon = np.arctan2(x, -z)
    lat = np.arctan2(y, np.hypot(x, z))
    return lon, lat


def constant(d):
    return np.full(d.shape[:-1], 0.5)


def harmonic(d):
    """Smooth, band-limited mix of low-order harmonics."""
    x, y, z = d[..., 0], d[..., 1], d[..., 2]
    return (0.5
            + 0.16 * np.sin(3.0 * x + 1.3) * np.cos(2.0 * y - 0.4)
            + 0.12 * np.cos(4.0 * z + 2.0 * x)
            + 0.08 * np.sin(5.0 * y + 3.0 * x * z + 0.7))


def bands(d):
    _, lat = _angles(d)
    return 0.5 + 0.35 * np.sin(6.0 * lat)


def checker(d, cells: int = 12, sharpness: float = 6.0):
    """Latitude/longitude checkerboard with soft (anti-aliased) edges."""
    lon, lat = _angles(d)
    s = np.sin(cells * lon / 2) * np.sin(cells * lat)
    return 0.5 + 0.4 * np.tanh(sharpness * s)


def _great_circle_normals():
    out = []
    for k in range(6):
        t = k * np.pi / 6
        out.append((np.cos(t), 0.0, np.sin(t)))  # meridians
        out.append((0.0, np.cos(t), np.sin(t)))  # circles through the X axis
    return np.array(out)


def grid(d, width: float = 0.012):
    """Great-circle grid: bright lines on a dark background."""
    n = _great_circle_normals()
    dist = np.abs(d @ n.T)
    return 0.15 + 0.7 * np.exp(-0.5 * (dist.min(axis=-1) / width) ** 2)


def great_circle_line(normal, width: float = 0.01, background: float = 0.1, peak: float = 0.9):
    """Single great circle (the plane through O with the given normal)."""
    n = np.asarray(normal, dtype=np.float64)
    n = n / np.linalg.norm(n)

    def pattern(d):
        return background + (peak - background) * np.exp(-0.5 * ((d @ n) / width) ** 2)

    return pattern


_WAVES = np.array([
    # kx, ky, kz, amplitude, phase
    [21.0, -7.0, 13.0, 0.10, 0.3],
    [-9.0, 26.0, 5.0, 0.09, 1.1],
    [15.0, 11.0, -24.0, 0.08, 2.0],
    [-31.0, 4.0, -10.0, 0.06, 0.6],
    [6.0, -18.0, 35.0, 0.06, 2.7],
    [40.0, 22.0, 9.0, 0.04, 1.9],
])


def texture(d):
    """Moderately high-frequency plane-wave texture, useful for block matching."""
    k = _WAVES[:, :3]
    phase = d @ k.T + _WAVES[:, 4]
    return 0.5 + np.sin(phase) @ _WAVES[:, 3]


PATTERNS = {
    "constant": constant,
    "harmonic": harmonic,
    "bands": bands,
    "checker": checker,
    "grid": grid,
    "texture": texture,
}
