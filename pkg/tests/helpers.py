"""Shared builders for the test suite."""

import numpy as np

from cubepad.frames import CubeMapFrame


def random_cube(rng, a, bitdepth=8):
    hi = 1 << bitdepth
    return CubeMapFrame(rng.integers(0, hi, (6, a, a)),
                        rng.integers(0, hi, (6, a // 2, a // 2)),
                        rng.integers(0, hi, (6, a // 2, a // 2)), bitdepth)


# face: (normal, u axis, v axis), written out independently of the package
FRAMES = {
    0: ((0, 0, -1), (1, 0, 0), (0, 1, 0)),  # front
    1: ((0, 0, 1), (-1, 0, 0), (0, 1, 0)),  # rear
    2: ((-1, 0, 0), (0, 0, -1), (0, 1, 0)),  # left
    3: ((1, 0, 0), (0, 0, 1), (0, 1, 0)),  # right
    4: ((0, 1, 0), (1, 0, 0), (0, 0, 1)),  # top
    5: ((0, -1, 0), (1, 0, 0), (0, 0, -1)),  # bottom
}
_N = np.array([FRAMES[f][0] for f in range(6)], dtype=float)
_U = np.array([FRAMES[f][1] for f in range(6)], dtype=float)
_V = np.array([FRAMES[f][2] for f in range(6)], dtype=float)


def ray_cast(face, u, v, a):
    """Where the ray from the cube centre through face-plane point (u, v) exits.

    Returns ``(face, u, v)`` on the exit face. Ties (cube edges) go to the
    lowest face index.
    """
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    p = (a / 2) * _N[face] + u[..., None] * _U[face] + v[..., None] * _V[face]
    dots = p @ _N.T
    f = dots.argmax(axis=-1)
    hit = p * ((a / 2) / dots.max(axis=-1))[..., None]
    return f, np.sum(hit * _U[f], axis=-1), np.sum(hit * _V[f], axis=-1)


ACCEPTANCE = []  # (criterion, passed, detail), printed by the terminal summary


class criterion:
    """Context manager recording one acceptance criterion as PASS or FAIL."""

    def __init__(self, name, title):
        self.name, self.title = name, title
        self.detail = ""

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc, tb):
        ok = exc_type is None
        detail = self.detail if ok else f"{self.detail} {exc_type.__name__}: {exc}".strip()
        ACCEPTANCE.append((self.name, ok, f"{self.title}; {detail}" if detail else self.title))
        print(f"{self.name} {'PASS' if ok else 'FAIL'} {self.title} {self.detail}")
        return False
