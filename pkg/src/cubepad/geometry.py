"""Cube faces, 3-D frames and the coordinate transforms between them.

Conventions
-----------
Right-handed world frame, viewer at the cube centre ``O``. Each face has an
outward normal and two in-plane axes ``U`` (image right) and ``V`` (image up)::

    face    normal  U    V
    FRONT   -Z      +X   +Y
    REAR    +Z      -X   +Y
    LEFT    -X      -Z   +Y
    RIGHT   +X      +Z   +Y
    TOP     +Y      +X   +Z
    BOTTOM  -Y      +X   -Z

Face-local coordinates ``(u, v)`` have their origin at the face centre and
run over ``[-a/2, a/2]``. A face point sits at ``a/2 * normal + u*U + v*V``.
Pixel ``(row j, col i)`` of an ``a x a`` face has its centre at
``u = i + 0.5 - a/2``, ``v = a/2 - 0.5 - j``.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import ConfigError, InsideFaceError


class Face(enum.IntEnum):
    """The six cube faces. Enum order doubles as the tie-break priority."""

    FRONT = 0
    REAR = 1
    LEFT = 2
    RIGHT = 3
    TOP = 4
    BOTTOM = 5

    @classmethod
    def parse(cls, name: str) -> "Face":
        try:
            return cls[name.strip().upper()]
        except KeyError:
            raise ValueError(f"unknown face {name!r}") from None


NORMAL = np.array([[0, 0, -1], [0, 0, 1], [-1, 0, 0], [1, 0, 0], [0, 1, 0], [0, -1, 0]])
U_AXIS = np.array([[1, 0, 0], [-1, 0, 0], [0, 0, -1], [0, 0, 1], [1, 0, 0], [1, 0, 0]])
V_AXIS = np.array([[0, 1, 0], [0, 1, 0], [0, 1, 0], [0, 1, 0], [0, 0, 1], [0, 0, -1]])

# Sides of a face in its own image: +u (right), -u (left), +v (top), -v (bottom).
SIDE_RIGHT, SIDE_LEFT, SIDE_TOP, SIDE_BOTTOM = range(4)
SIDE_NAMES = ("right", "left", "top", "bottom")


@dataclass(frozen=True)
class CubeGeom:
    """Face edge ``a`` and extension range ``S``, both in pixels."""

    a: int
    S: int = 0

    def __post_init__(self):
        if self.a < 4 or self.a % 2:
            raise ConfigError(f"face edge a must be even and >= 4, got {self.a}")
        if self.S < 0:
            raise ConfigError(f"extension range S must be >= 0, got {self.S}")

    @property
    def half(self) -> float:
        return self.a / 2

    @property
    def extended(self) -> int:
        return self.a + 2 * self.S


class FaceCoords(NamedTuple):
    face: np.ndarray
    u: np.ndarray
    v: np.ndarray
    seam: np.ndarray


def _face_index(face) -> np.ndarray:
    return np.asarray(face, dtype=np.int64)


def face_point_to_direction(face, u, v, a: float) -> np.ndarray:
    """3-D point of face-local ``(u, v)`` on the (possibly extended) face plane.

    The result is un-normalized; its component along the face normal is a/2.
    Broadcasts over ``face``, ``u`` and ``v``; the last axis of the output
    holds ``(x, y, z)``.
    """
    f = _face_index(face)
    u = np.asarray(u, dtype=np.float64)
    v = np.asarray(v, dtype=np.float64)
    return (a / 2) * NORMAL[f] + u[..., None] * U_AXIS[f] + v[..., None] * V_AXIS[f]


def direction_to_face_coord(d, a: float = 2.0) -> FaceCoords:
    """Central projection of direction(s) ``d`` onto the cube of edge ``a``.

    The owning face has the strictly largest dot product between ``d`` and its
    outward normal. Exact ties (edges and corners) go to the first face in
    :class:`Face` order and are flagged in ``seam``.
    """
    d = np.asarray(d, dtype=np.float64)
    if np.any(np.all(d == 0, axis=-1)):
        raise ValueError("zero direction")
    dots = d @ NORMAL.T
    best = dots.max(axis=-1)
    face = np.argmax(dots, axis=-1)
    seam = (dots == best[..., None]).sum(axis=-1) > 1
    p = d * ((a / 2) / best)[..., None]
    u = np.einsum("...k,...k->...", p, U_AXIS[face])
    v = np.einsum("...k,...k->...", p, V_AXIS[face])
    return FaceCoords(face, u, v, seam)


# ---------------------------------------------------------------------------
# neighbor faces and the co-projection-plane source mapping


def _side_axis(face: int, side: int) -> np.ndarray:
    return (U_AXIS[face], -U_AXIS[face], V_AXIS[face], -V_AXIS[face])[side]


def _lateral_axis(face: int, side: int) -> np.ndarray:
    return V_AXIS[face] if side in (SIDE_RIGHT, SIDE_LEFT) else U_AXIS[face]


def _face_with_normal(n) -> int:
    hit = np.flatnonzero(np.all(NORMAL == np.asarray(n), axis=1))
    return int(hit[0])


@dataclass(frozen=True)
class SideLink:
    """How a side of ``face`` continues onto ``neighbor``.

    A point at depth ``h`` past the shared edge and signed lateral ``L`` lands
    on the neighbor at ``su = du*(a/2 - h) + lu*L``,
    ``sv = dv*(a/2 - h) + lv*L`` (all coefficients in {-1, 0, 1}).
    """

    face: Face
    side: int
    neighbor: Face
    du: int
    lu: int
    dv: int
    lv: int


def side_link(face: int, side: int) -> SideLink:
    n = _face_with_normal(_side_axis(face, side))
    lat = _lateral_axis(face, side)
    return SideLink(
        Face(face), side, Face(n),
        int(U_AXIS[n] @ NORMAL[face]), int(U_AXIS[n] @ lat),
        int(V_AXIS[n] @ NORMAL[face]), int(V_AXIS[n] @ lat),
    )


LINKS = {(f, s): side_link(f, s) for f in range(6) for s in range(4)}


def neighbor(face: int, side: int) -> Face:
    return LINKS[(int(face), side)].neighbor


class LocalSource(NamedTuple):
    side: np.ndarray  # int, which side's neighbor owns the point
    depth: np.ndarray  # distance past the shared edge, on the neighbor
    lateral: np.ndarray  # signed coordinate along the shared edge
    seam: np.ndarray


def local_source(face: int, u, v, half: float) -> LocalSource:
    """Depth/lateral on the neighbor face for extended-plane points ``(u, v)``.

    With ``p`` the larger of ``|u|, |v|`` and ``q`` the other, the ray through
    the point leaves the face across the side facing ``p`` and meets the
    neighbor at::

        beyond  = p - half               (distance past the edge)
        depth   = beyond / p * half      (similar triangles through O)
        lateral = q / p * half

    Magnitudes are computed from ``|u|, |v|`` only, so results are symmetric
    under the cube's rotations to the last bit. Diagonal points (``|u| ==
    |v|``) pick the higher-priority of the two neighbors.
    """
    u = np.asarray(u, dtype=np.float64)
    v = np.asarray(v, dtype=np.float64)
    au, av = np.abs(u), np.abs(v)
    if np.any((au < half) & (av < half)):
        raise InsideFaceError("point lies inside the face; no extension source")
    side_u = np.where(u > 0, SIDE_RIGHT, SIDE_LEFT)
    side_v = np.where(v > 0, SIDE_TOP, SIDE_BOTTOM)
    tie = au == av
    use_u = au > av
    if np.any(tie):
        nu = np.array([LINKS[(face, s)].neighbor for s in range(4)])[side_u]
        nv = np.array([LINKS[(face, s)].neighbor for s in range(4)])[side_v]
        use_u = use_u | (tie & (nu < nv))
    p = np.where(use_u, au, av)
    q = np.where(use_u, av, au)
    depth = (p - half) / p * half
    lat_mag = q / p * half
    lateral = np.where(use_u, np.copysign(lat_mag, v), np.copysign(lat_mag, u))
    side = np.where(use_u, side_u, side_v)
    seam = tie & (au > half)
    return LocalSource(side, depth, lateral, seam)


class ExtensionSource(NamedTuple):
    face: np.ndarray
    u: np.ndarray
    v: np.ndarray
    seam: np.ndarray


def extended_to_local(x, y, geom: CubeGeom):
    """Extended-image coordinates (A' = top-left corner = (0, 0)) to ``(u, v)``."""
    c = geom.S + geom.half
    return np.asarray(x, dtype=np.float64) - c, c - np.asarray(y, dtype=np.float64)


def extension_source(face, x, y, geom: CubeGeom) -> ExtensionSource:
    """Source face and coordinates for extended-image point(s) ``(x, y)``.

    ``(x, y)`` are continuous coordinates in the ``(a+2S)``-square extended
    image with its top-left corner at the origin; pixel ``(row r, col c)`` is
    centred on ``(c + 0.5, r + 0.5)``. For the right strip this is the
    classic construction::

        TK = a/2 + S - y        JK = x - a - S
        depth = JK / (a/2 + JK) * a/2
        along = a/2 / (a/2 + JK) * TK

    Points on a shared edge map onto the neighbor's edge (depth 0).
    """
    f = int(face)
    u, v = extended_to_local(x, y, geom)
    src = local_source(f, u, v, geom.half)
    half = geom.half
    out_face = np.empty(src.side.shape, dtype=np.int64)
    su = np.empty(src.side.shape)
    sv = np.empty(src.side.shape)
    for s in range(4):
        m = src.side == s
        if not np.any(m):
            continue
        link = LINKS[(f, s)]
        along_normal = half - src.depth[m]
        out_face[m] = link.neighbor
        su[m] = link.du * along_normal + link.lu * src.lateral[m]
        sv[m] = link.dv * along_normal + link.lv * src.lateral[m]
    return ExtensionSource(out_face, su, sv, src.seam)


# ---------------------------------------------------------------------------
# layouts


class LayoutKind(str, enum.Enum):
    FOUR_BY_THREE = "4x3"
    THREE_BY_TWO = "3x2"


class Placement(NamedTuple):
    col: int
    row: int
    rotation: int  # degrees counter-clockwise, applied as np.rot90(face, rotation // 90)


@dataclass(frozen=True)
class LayoutSpec:
    kind: LayoutKind
    cols: int
    rows: int
    placements: dict

    def __post_init__(self):
        tiles = [(p.col, p.row) for p in self.placements.values()]
        if sorted(self.placements) != list(Face):
            raise ConfigError("layout must place all six faces")
        if len(set(tiles)) != 6:
            raise ConfigError("layout tiles must be distinct")
        for p in self.placements.values():
            if not (0 <= p.col < self.cols and 0 <= p.row < self.rows):
                raise ConfigError("layout tile outside grid")
            if p.rotation not in (0, 90, 180, 270):
                raise ConfigError("layout rotation must be a multiple of 90")

    def unused_tiles(self):
        used = {(p.col, p.row) for p in self.placements.values()}
        return [(c, r) for r in range(self.rows) for c in range(self.cols) if (c, r) not in used]


def layout_table(kind) -> LayoutSpec:
    """Placement table for a packed cube-map frame.

    4x3: ``Left Front Right Rear`` in the middle row, ``Top`` above and
    ``Bottom`` below ``Front``; no rotations, two unused tiles per side.
    3x2: ``Left Front Right`` on top; ``Bottom Rear Top`` below, rotated so
    that the lower row is seam-continuous too.
    """
    kind = LayoutKind(kind)
    if kind is LayoutKind.FOUR_BY_THREE:
        table = {
            Face.LEFT: Placement(0, 1, 0),
            Face.FRONT: Placement(1, 1, 0),
            Face.RIGHT: Placement(2, 1, 0),
            Face.REAR: Placement(3, 1, 0),
            Face.TOP: Placement(1, 0, 0),
            Face.BOTTOM: Placement(1, 2, 0),
        }
        return LayoutSpec(kind, 4, 3, table)
    table = {
        Face.LEFT: Placement(0, 0, 0),
        Face.FRONT: Placement(1, 0, 0),
        Face.RIGHT: Placement(2, 0, 0),
        Face.BOTTOM: Placement(0, 1, 90),
        Face.REAR: Placement(1, 1, 270),
        Face.TOP: Placement(2, 1, 90),
    }
    return LayoutSpec(kind, 3, 2, table)


# ---------------------------------------------------------------------------
# cube symmetries


def cube_rotations() -> list[np.ndarray]:
    """The 24 proper rotations mapping the cube onto itself."""
    out = []
    for perm in itertools.permutations(range(3)):
        for signs in itertools.product((1, -1), repeat=3):
            m = np.zeros((3, 3), dtype=np.int64)
            for r, (c, s) in enumerate(zip(perm, signs)):
                m[r, c] = s
            if round(np.linalg.det(m)) == 1:
                out.append(m)
    return out


def rotate_face_stack(stack: np.ndarray, rot: np.ndarray) -> np.ndarray:
    """Re-render six centred square face images for a sphere rotated by ``rot``.

    ``stack`` has shape ``(6, n, n)``; output face G at direction ``d`` takes
    the input value at ``rot.T @ d``. Works for faces and extended faces alike
    since both grids are centred on the face centre. Pure index permutation,
    so bit-exact.
    """
    rot = np.asarray(rot, dtype=np.int64)
    n = stack.shape[1]
    idx = np.arange(n) + 0.5 - n / 2
    u = np.broadcast_to(idx[None, :], (n, n))
    v = np.broadcast_to(-idx[:, None], (n, n))
    out = np.empty_like(stack)
    for g in range(6):
        f = _face_with_normal(rot.T @ NORMAL[g])
        ru, rv = rot.T @ U_AXIS[g], rot.T @ V_AXIS[g]
        su = u * (ru @ U_AXIS[f]) + v * (rv @ U_AXIS[f])
        sv = u * (ru @ V_AXIS[f]) + v * (rv @ V_AXIS[f])
        cols = (su + n / 2 - 0.5).astype(np.int64)
        rows = (n / 2 - 0.5 - sv).astype(np.int64)
        out[g] = stack[f][rows, cols]
    return out
