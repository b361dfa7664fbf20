"""Neighbor-face complementation and co-projection-plane face extension.

``complement_neighbors`` lays the four adjacent faces around a face, each
rotated so that the shared cube edges line up. The texture is continuous
across each edge but still bends there, because each tile is a different
projection plane.

``extend_face`` removes the bend: every pixel of the ``S``-wide ring around a
face is the neighbor-face content seen through the cube centre, i.e. the
face's own projection plane simply continues past its edges.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import kernels
from .errors import BadExtensionError, SourceValidityError
from .frames import CubeMapFrame, PlanarFrame
from .geometry import (
    LINKS,
    SIDE_BOTTOM,
    SIDE_LEFT,
    SIDE_NAMES,
    SIDE_RIGHT,
    SIDE_TOP,
    CubeGeom,
    Face,
    face_point_to_direction,
    local_source,
)
from .resample import quantize

_SOURCE_TOL = 1e-6


# ---------------------------------------------------------------------------
# complementation


def _pixel_points(face: int, n: int) -> np.ndarray:
    idx = np.arange(n) + 0.5 - n / 2
    return face_point_to_direction(face, idx[None, :], -idx[:, None], n)


_ADJACENT = {
    # side: (slice of rotated neighbor touching the centre, slice of centre)
    SIDE_RIGHT: (np.s_[:, 0], np.s_[:, -1]),
    SIDE_LEFT: (np.s_[:, -1], np.s_[:, 0]),
    SIDE_TOP: (np.s_[-1, :], np.s_[0, :]),
    SIDE_BOTTOM: (np.s_[0, :], np.s_[-1, :]),
}

_CANVAS_TILE = {SIDE_RIGHT: (1, 2), SIDE_LEFT: (1, 0), SIDE_TOP: (0, 1), SIDE_BOTTOM: (2, 1)}


@lru_cache(maxsize=None)
def neighbor_rotation(face: int, side: int) -> int:
    """Quarter turns (``np.rot90`` k, counter-clockwise) aligning a neighbor.

    Found by checking which orientation puts the neighbor's edge pixels
    against the matching edge pixels of ``face`` in 3-D.
    """
    n = 4
    centre = _pixel_points(face, n)
    nb = _pixel_points(LINKS[(face, side)].neighbor, n)
    theirs, ours = _ADJACENT[side]
    for k in range(4):
        gap = np.linalg.norm(np.rot90(nb, k)[theirs] - centre[ours], axis=-1)
        if np.allclose(gap, np.sqrt(0.5)):
            return k
    raise AssertionError("frame table is not seam-consistent")  # pragma: no cover


@dataclass
class ComplementedFace:
    face: Face
    canvas: PlanarFrame
    rotations: dict = field(default_factory=dict)  # side -> (Face, degrees CCW)


def complement_neighbors(cube: CubeMapFrame, face: Face) -> ComplementedFace:
    """``3a x 3a`` canvas: ``face`` in the centre, rotated neighbors on its sides."""
    face = Face(face)
    gray = 1 << (cube.bitdepth - 1)
    planes = []
    log = {}
    for stack in (cube.y, cube.cb, cube.cr):
        n = stack.shape[1]
        canvas = np.full((3 * n, 3 * n), gray, dtype=np.uint16)
        canvas[n:2 * n, n:2 * n] = stack[face]
        for side in range(4):
            nb = LINKS[(face, side)].neighbor
            k = neighbor_rotation(face, side)
            r, c = _CANVAS_TILE[side]
            canvas[r * n:(r + 1) * n, c * n:(c + 1) * n] = np.rot90(stack[nb], k)
            log[SIDE_NAMES[side]] = (nb, 90 * k)
        planes.append(canvas)
    return ComplementedFace(face, PlanarFrame(*planes, bitdepth=cube.bitdepth), log)


# ---------------------------------------------------------------------------
# co-projection-plane extension


@dataclass
class ExtendedFace:
    face: Face
    y: np.ndarray
    cb: np.ndarray
    cr: np.ndarray
    geom: CubeGeom
    bitdepth: int

    @property
    def frame(self) -> PlanarFrame:
        return PlanarFrame(self.y, self.cb, self.cr, self.bitdepth)


@dataclass(frozen=True)
class TapTable:
    """Precomputed bilinear footprints for the extension ring of one face."""

    rows: np.ndarray  # ring pixel positions in the extended image
    cols: np.ndarray
    src_face: np.ndarray
    idx: np.ndarray  # (k, 4) flat indices into the (6, n, n) stack: nn, ff, nf, fn
    wdepth: np.ndarray  # (k, 2) near/far weights across the shared edge
    wlat: np.ndarray  # (k, 2) near/far weights along it
    seam: np.ndarray  # ring indices of diagonal pixels
    seam_nbrs: np.ndarray  # (m, 2) ring indices averaged into each seam pixel


def _split(g):
    gi = np.floor(g)
    return gi.astype(np.int64), g - gi


def _depth_taps(depth, edge, inward, n):
    # Pixel centres sit at depth 0.5, 1.5, ...; the half pixel between the
    # edge and the first centre clamps onto the edge pixel.
    gi, gf = _split(depth + 0.5)
    near = edge + inward * np.clip(gi - 1, 0, n - 1)
    far = edge + inward * np.clip(gi, 0, n - 1)
    return near, far, gf


def _lateral_taps(lateral, sign, n):
    gi, gf = _split(np.abs(lateral) + 0.5)
    half = n // 2
    pos = sign * lateral >= 0
    near = np.where(pos, half - 1 + gi, half - gi)
    far = np.where(pos, half + gi, half - 1 - gi)
    return np.clip(near, 0, n - 1), np.clip(far, 0, n - 1), gf


@lru_cache(maxsize=64)
def tap_table(face: int, n: int, s: int) -> TapTable:
    size = n + 2 * s
    half = n / 2
    rr, cc = np.mgrid[0:size, 0:size]
    ring = ~((rr >= s) & (rr < s + n) & (cc >= s) & (cc < s + n))
    rows, cols = rr[ring], cc[ring]
    u = cols + 0.5 - s - half
    v = s + half - 0.5 - rows
    src = local_source(face, u, v, half)
    bad = (src.depth < -_SOURCE_TOL) | (src.depth > half + _SOURCE_TOL) | (np.abs(src.lateral) > half + _SOURCE_TOL)
    if np.any(bad):
        raise SourceValidityError(f"{int(bad.sum())} extension samples fall outside their source face")

    k = rows.size
    src_face = np.empty(k, dtype=np.int64)
    idx = np.empty((k, 4), dtype=np.int64)
    wdepth = np.empty((k, 2))
    wlat = np.empty((k, 2))
    for side in range(4):
        m = src.side == side
        if not np.any(m):
            continue
        link = LINKS[(face, side)]
        if link.du:
            # depth runs along neighbor columns
            edge, inward = (n - 1, -1) if link.du > 0 else (0, 1)
            d_near, d_far, d_f = _depth_taps(src.depth[m], edge, inward, n)
            l_near, l_far, l_f = _lateral_taps(src.lateral[m], -link.lv, n)
            cell = lambda d, l: l * n + d  # noqa: E731
        else:
            edge, inward = (0, 1) if link.dv > 0 else (n - 1, -1)
            d_near, d_far, d_f = _depth_taps(src.depth[m], edge, inward, n)
            l_near, l_far, l_f = _lateral_taps(src.lateral[m], link.lu, n)
            cell = lambda d, l: d * n + l  # noqa: E731
        base = int(link.neighbor) * n * n
        src_face[m] = link.neighbor
        idx[m] = np.stack([cell(d_near, l_near), cell(d_far, l_far),
                           cell(d_near, l_far), cell(d_far, l_near)], axis=1) + base
        wdepth[m] = np.stack([1.0 - d_f, d_f], axis=1)
        wlat[m] = np.stack([1.0 - l_f, l_f], axis=1)

    lookup = -np.ones((size, size), dtype=np.int64)
    lookup[rows, cols] = np.arange(k)
    seam = np.flatnonzero(src.seam)
    sr, sc = rows[seam], cols[seam]
    # one step back toward the face along each axis: one pixel per side of the diagonal
    h_nbr = lookup[sr, sc - np.sign(u[seam]).astype(np.int64)]
    v_nbr = lookup[sr + np.sign(v[seam]).astype(np.int64), sc]
    seam_nbrs = np.stack([h_nbr, v_nbr], axis=1)
    assert np.all(seam_nbrs >= 0) and not np.any(src.seam[seam_nbrs])
    return TapTable(rows, cols, src_face, idx, wdepth, wlat, seam, seam_nbrs)


def extension_values(stack: np.ndarray, face: int, s: int) -> tuple[TapTable, np.ndarray]:
    """Real-valued ring samples (before rounding) for one plane stack."""
    n = stack.shape[1]
    table = tap_table(int(face), n, s)
    flat = np.ascontiguousarray(stack, dtype=np.float64).ravel()
    vals = kernels.gather4(flat, table.idx, table.wdepth, table.wlat)
    vals[table.seam] = (vals[table.seam_nbrs[:, 0]] + vals[table.seam_nbrs[:, 1]]) / 2
    return table, vals


def _extend_plane(stack: np.ndarray, face: int, s: int, bitdepth: int) -> np.ndarray:
    n = stack.shape[1]
    out = np.empty((n + 2 * s, n + 2 * s), dtype=np.uint16)
    out[s:s + n, s:s + n] = stack[face]
    table, vals = extension_values(stack, face, s)
    out[table.rows, table.cols] = quantize(vals, bitdepth)
    return out


def _check_extension(S: int, a: int):
    if S <= 0 or S % 2:
        raise BadExtensionError(f"extension range S must be even and positive, got {S}")
    return CubeGeom(a, S)


def extend_face(cube: CubeMapFrame, face: Face, S: int) -> ExtendedFace:
    """Enlarge ``face`` to ``(a+2S)^2`` by co-projection-plane padding.

    Ring pixels are bilinear samples of the owning neighbor face; pixels on
    the corner diagonals (where the ray hits a cube edge) take the mean of
    their two ring neighbors, one on each side of the diagonal. Chroma uses
    ``S/2``.
    """
    geom = _check_extension(S, cube.a)
    face = Face(face)
    y = _extend_plane(cube.y, face, S, cube.bitdepth)
    cb = _extend_plane(cube.cb, face, S // 2, cube.bitdepth)
    cr = _extend_plane(cube.cr, face, S // 2, cube.bitdepth)
    return ExtendedFace(face, y, cb, cr, geom, cube.bitdepth)


def extend_all(cube: CubeMapFrame, S: int, threads: int = 1) -> list[ExtendedFace]:
    _check_extension(S, cube.a)
    if threads <= 1:
        return [extend_face(cube, f, S) for f in Face]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(lambda f: extend_face(cube, f, S), Face))


def extension_workload(a: int, S: int) -> int:
    """Number of ring pixels produced by :func:`extend_all` (luma)."""
    return 6 * ((a + 2 * S) ** 2 - a * a)
