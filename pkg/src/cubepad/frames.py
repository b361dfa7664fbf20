"""In-memory frame containers (4:2:0 planar)."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatchError, OutOfRangeSampleError
from .geometry import CubeGeom, Face


def _check_range(plane: np.ndarray, bitdepth: int):
    if plane.size and int(plane.max()) >= (1 << bitdepth):
        raise OutOfRangeSampleError(f"sample exceeds {bitdepth}-bit range")


@dataclass
class PlanarFrame:
    """One 4:2:0 frame: ``y`` is ``H x W``, ``cb``/``cr`` are ``H/2 x W/2``."""

    y: np.ndarray
    cb: np.ndarray
    cr: np.ndarray
    bitdepth: int = 8

    def __post_init__(self):
        if self.bitdepth not in (8, 10):
            raise ValueError(f"bitdepth must be 8 or 10, got {self.bitdepth}")
        h, w = self.y.shape
        if h % 2 or w % 2:
            raise DimensionMismatchError(f"4:2:0 needs even luma dimensions, got {w}x{h}")
        for c in (self.cb, self.cr):
            if c.shape != (h // 2, w // 2):
                raise DimensionMismatchError(f"chroma {c.shape} does not match luma {self.y.shape}")
        self.y = np.asarray(self.y, dtype=np.uint16)
        self.cb = np.asarray(self.cb, dtype=np.uint16)
        self.cr = np.asarray(self.cr, dtype=np.uint16)
        for p in self.planes:
            _check_range(p, self.bitdepth)

    @property
    def planes(self):
        return (self.y, self.cb, self.cr)

    @property
    def width(self) -> int:
        return self.y.shape[1]

    @property
    def height(self) -> int:
        return self.y.shape[0]

    @classmethod
    def filled(cls, width: int, height: int, value: int, bitdepth: int = 8) -> "PlanarFrame":
        y = np.full((height, width), value, dtype=np.uint16)
        c = np.full((height // 2, width // 2), value, dtype=np.uint16)
        return cls(y, c, c.copy(), bitdepth)


@dataclass
class CubeMapFrame:
    """Six faces stored as stacks indexed by :class:`Face`.

    ``y`` has shape ``(6, a, a)``; ``cb``/``cr`` have shape ``(6, a/2, a/2)``.
    """

    y: np.ndarray
    cb: np.ndarray
    cr: np.ndarray
    bitdepth: int = 8

    def __post_init__(self):
        if self.y.ndim != 3 or self.y.shape[0] != 6 or self.y.shape[1] != self.y.shape[2]:
            raise DimensionMismatchError(f"luma stack must be (6, a, a), got {self.y.shape}")
        a = self.y.shape[1]
        CubeGeom(a)
        for c in (self.cb, self.cr):
            if c.shape != (6, a // 2, a // 2):
                raise DimensionMismatchError(f"chroma stack {c.shape} does not match a={a}")
        self.y = np.asarray(self.y, dtype=np.uint16)
        self.cb = np.asarray(self.cb, dtype=np.uint16)
        self.cr = np.asarray(self.cr, dtype=np.uint16)
        for p in (self.y, self.cb, self.cr):
            _check_range(p, self.bitdepth)

    @property
    def a(self) -> int:
        return self.y.shape[1]

    @property
    def geom(self) -> CubeGeom:
        return CubeGeom(self.a)

    def face(self, f: Face) -> PlanarFrame:
        return PlanarFrame(self.y[f], self.cb[f], self.cr[f], self.bitdepth)

    @classmethod
    def filled(cls, a: int, value: int, bitdepth: int = 8) -> "CubeMapFrame":
        y = np.full((6, a, a), value, dtype=np.uint16)
        c = np.full((6, a // 2, a // 2), value, dtype=np.uint16)
        return cls(y, c, c.copy(), bitdepth)
