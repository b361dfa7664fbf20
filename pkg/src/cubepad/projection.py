"""Equirectangular <-> cube-map conversion, layout packing, synthetic content."""

from __future__ import annotations

import numpy as np
from scipy.spatial.transform import Rotation

from .errors import DimensionMismatchError, InvalidRotationError
from .frames import CubeMapFrame, PlanarFrame
from .geometry import CubeGeom, Face, LayoutSpec, direction_to_face_coord, face_point_to_direction
from .patterns import PATTERNS
from .resample import BorderMode, quantize, sample_lanczos

LUMA_TAPS = 3  # Lanczos3, 6x6
CHROMA_TAPS = 2  # Lanczos2, 4x4


def _check_equirect_dims(w: int, h: int):
    if w != 2 * h or w % 2 or h % 2:
        raise DimensionMismatchError(f"equirect frame must be 2:1 with even sides, got {w}x{h}")


def equirect_to_direction(m, n, width: int, height: int) -> np.ndarray:
    """Unit direction for equirect pixel column ``m``, row ``n``."""
    m = np.asarray(m, dtype=np.float64)
    n = np.asarray(n, dtype=np.float64)
    lon = (m + 0.5) / width * 2 * np.pi - np.pi
    lat = np.pi / 2 - (n + 0.5) / height * np.pi
    c = np.cos(lat)
    return np.stack([c * np.sin(lon), np.sin(lat), -c * np.cos(lon)], axis=-1)


def direction_to_equirect(d, width: int, height: int):
    """Inverse of :func:`equirect_to_direction`; ``m`` is wrapped to ``[-0.5, W - 0.5)``."""
    d = np.asarray(d, dtype=np.float64)
    x, y, z = d[..., 0], d[..., 1], d[..., 2]
    lon = np.arctan2(x, -z)
    lat = np.arctan2(y, np.hypot(x, z))
    m = (lon + np.pi) / (2 * np.pi) * width - 0.5
    m = np.where(m >= width - 0.5, m - width, m)
    n = (np.pi / 2 - lat) / np.pi * height - 0.5
    return m, n


def face_pixel_uv(n: int):
    """Face-local ``(u, v)`` of the pixel centres of an ``n x n`` face image."""
    idx = np.arange(n) + 0.5 - n / 2
    return np.broadcast_to(idx[None, :], (n, n)), np.broadcast_to(-idx[:, None], (n, n))


def face_pixel_directions(n: int) -> np.ndarray:
    """Un-normalized directions of every pixel centre, shape ``(6, n, n, 3)``."""
    u, v = face_pixel_uv(n)
    return np.stack([face_point_to_direction(f, u, v, n) for f in Face])


def _normalize(d):
    return d / np.linalg.norm(d, axis=-1, keepdims=True)


def equirect_to_cubemap(src: PlanarFrame, a: int) -> CubeMapFrame:
    """Resample an equirect frame onto six ``a x a`` faces.

    Luma uses Lanczos3, chroma Lanczos2, both wrapping in longitude. Chroma
    faces are treated as half-resolution faces with the same angular mapping.
    """
    _check_equirect_dims(src.width, src.height)
    CubeGeom(a)
    out = []
    for plane, n, taps in ((src.y, a, LUMA_TAPS), (src.cb, a // 2, CHROMA_TAPS), (src.cr, a // 2, CHROMA_TAPS)):
        h, w = plane.shape
        m, r = direction_to_equirect(face_pixel_directions(n), w, h)
        vals = sample_lanczos(plane, m, r, taps, BorderMode.WRAP_HORIZONTAL)
        out.append(quantize(vals, src.bitdepth))
    return CubeMapFrame(*out, bitdepth=src.bitdepth)


def _sample_faces(stack: np.ndarray, d: np.ndarray, taps: int) -> np.ndarray:
    n = stack.shape[1]
    fc = direction_to_face_coord(d, n)
    cols = fc.u + n / 2 - 0.5
    rows = n / 2 - 0.5 - fc.v
    out = np.empty(d.shape[:-1])
    for f in Face:
        m = fc.face == f
        if np.any(m):
            out[m] = sample_lanczos(stack[f], cols[m], rows[m], taps, BorderMode.CLAMP)
    return out


def cubemap_to_equirect(src: CubeMapFrame, width: int) -> PlanarFrame:
    """Resample six faces back to an equirect frame of the given width."""
    height = width // 2
    _check_equirect_dims(width, height)
    out = []
    for stack, w, taps in ((src.y, width, LUMA_TAPS), (src.cb, width // 2, CHROMA_TAPS), (src.cr, width // 2, CHROMA_TAPS)):
        h = w // 2
        mm, nn = np.meshgrid(np.arange(w), np.arange(h))
        d = equirect_to_direction(mm, nn, w, h)
        out.append(quantize(_sample_faces(stack, d, taps), src.bitdepth))
    return PlanarFrame(*out, bitdepth=src.bitdepth)


# ---------------------------------------------------------------------------
# layout packing


def pack_layout(src: CubeMapFrame, layout: LayoutSpec) -> PlanarFrame:
    """Place the six faces into one frame; unused tiles are mid-gray."""
    a = src.a
    gray = 1 << (src.bitdepth - 1)
    planes = []
    for stack, n in ((src.y, a), (src.cb, a // 2), (src.cr, a // 2)):
        canvas = np.full((layout.rows * n, layout.cols * n), gray, dtype=np.uint16)
        for f, p in layout.placements.items():
            canvas[p.row * n:(p.row + 1) * n, p.col * n:(p.col + 1) * n] = np.rot90(stack[f], p.rotation // 90)
        planes.append(canvas)
    return PlanarFrame(*planes, bitdepth=src.bitdepth)


def layout_face_size(frame: PlanarFrame, layout: LayoutSpec) -> int:
    h, w = frame.y.shape
    a = w // layout.cols
    if w != a * layout.cols or h != a * layout.rows or a % 2:
        raise DimensionMismatchError(
            f"{w}x{h} frame is not a {layout.cols}x{layout.rows} tiling of even faces")
    CubeGeom(a)
    return a


def unpack_layout(frame: PlanarFrame, layout: LayoutSpec) -> CubeMapFrame:
    a = layout_face_size(frame, layout)
    stacks = []
    for plane, n in ((frame.y, a), (frame.cb, a // 2), (frame.cr, a // 2)):
        stack = np.empty((6, n, n), dtype=np.uint16)
        for f, p in layout.placements.items():
            tile = plane[p.row * n:(p.row + 1) * n, p.col * n:(p.col + 1) * n]
            stack[f] = np.rot90(tile, -(p.rotation // 90))
        stacks.append(stack)
    return CubeMapFrame(*stacks, bitdepth=frame.bitdepth)


# ---------------------------------------------------------------------------
# synthetic content


def rotation_matrix(axis, degrees: float) -> np.ndarray:
    axis = np.asarray(axis, dtype=np.float64)
    norm = np.linalg.norm(axis)
    if norm == 0:
        raise InvalidRotationError("rotation axis must be nonzero")
    return Rotation.from_rotvec(axis / norm * np.deg2rad(degrees)).as_matrix()


def check_rotation(rot) -> np.ndarray:
    rot = np.asarray(rot, dtype=np.float64)
    if rot.shape != (3, 3):
        raise InvalidRotationError("rotation must be 3x3")
    if np.max(np.abs(rot @ rot.T - np.eye(3))) > 1e-9 or np.linalg.det(rot) < 0:
        raise InvalidRotationError("rotation must be orthonormal with det +1")
    return rot


def resolve_pattern(pattern):
    if callable(pattern):
        return pattern
    try:
        return PATTERNS[pattern]
    except KeyError:
        raise ValueError(f"unknown pattern {pattern!r}; choose from {sorted(PATTERNS)}") from None


def _chroma_values(f):
    return 0.5 + 0.3 * (f - 0.5), 0.5 - 0.3 * (f - 0.5)


def _to_samples(values, bitdepth):
    return quantize(values * ((1 << bitdepth) - 1), bitdepth)


def gen_synthetic(width: int, rotation=None, pattern="harmonic", bitdepth: int = 8) -> PlanarFrame:
    """Equirect frame of an analytic pattern evaluated at ``rotation @ d``."""
    height = width // 2
    _check_equirect_dims(width, height)
    rot = np.eye(3) if rotation is None else check_rotation(rotation)
    fn = resolve_pattern(pattern)
    planes = []
    for w, which in ((width, 0), (width // 2, 1), (width // 2, 2)):
        h = w // 2
        mm, nn = np.meshgrid(np.arange(w), np.arange(h))
        vals = fn(equirect_to_direction(mm, nn, w, h) @ rot.T)
        if which:
            vals = _chroma_values(vals)[which - 1]
        planes.append(_to_samples(vals, bitdepth))
    return PlanarFrame(*planes, bitdepth=bitdepth)


def render_cubemap(pattern, a: int, bitdepth: int = 8, rotation=None) -> CubeMapFrame:
    """Evaluate a pattern directly at face pixel directions (no equirect raster)."""
    rot = np.eye(3) if rotation is None else check_rotation(rotation)
    fn = resolve_pattern(pattern)
    planes = []
    for n, which in ((a, 0), (a // 2, 1), (a // 2, 2)):
        vals = fn(_normalize(face_pixel_directions(n)) @ rot.T)
        if which:
            vals = _chroma_values(vals)[which - 1]
        planes.append(_to_samples(vals, bitdepth))
    return CubeMapFrame(*planes, bitdepth=bitdepth)


def render_extended_plane(pattern, face: Face, a: int, S: int, bitdepth: int = 8) -> np.ndarray:
    """Luma of a pattern on the face plane enlarged to ``a + 2S`` (analytic oracle)."""
    fn = resolve_pattern(pattern)
    u, v = face_pixel_uv(a + 2 * S)
    d = _normalize(face_point_to_direction(face, u, v, a))
    return _to_samples(fn(d), bitdepth)
