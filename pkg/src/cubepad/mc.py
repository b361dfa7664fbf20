"""Codec-free motion-compensation harness.

Compares two reference paddings for integer-pel full-search block matching
on packed cube-map frames:

``replicate``
    the packed frame with its picture border clamped outward, as a plain
    encoder would see it;
``coprojection``
    per face, the face tile grown by ``S`` pixels of co-projection-plane
    extension; anything further out falls back to the replicate view.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import NamedTuple, Optional

import numpy as np

from . import kernels
from .errors import ConfigError, GeometryMismatchError
from .frames import CubeMapFrame, PlanarFrame
from .geometry import Face, LayoutSpec, layout_table
from .metrics import psnr, psnr_from_mse
from .padding import ExtendedFace, extend_face
from .projection import pack_layout

MODES = ("replicate", "coprojection")


class MotionVector(NamedTuple):
    dx: int
    dy: int


@dataclass
class MotionResult:
    face: Optional[Face]
    x: int
    y: int
    mv: MotionVector
    sad: int
    pred_psnr: float
    boundary: bool
    mse: float = 0.0


def pad_replicate(frame, margin: int):
    """Extend a plane (or every plane of a frame) by clamping coordinates.

    For a :class:`PlanarFrame` the chroma margin is ``margin // 2``, so
    ``margin`` must be even.
    """
    if margin < 0:
        raise ConfigError("margin must be >= 0")
    if isinstance(frame, PlanarFrame):
        if margin % 2:
            raise ConfigError("4:2:0 frame padding needs an even margin")
        return PlanarFrame(np.pad(frame.y, margin, mode="edge"),
                           np.pad(frame.cb, margin // 2, mode="edge"),
                           np.pad(frame.cr, margin // 2, mode="edge"), frame.bitdepth)
    return np.pad(np.asarray(frame), margin, mode="edge")


class ReferenceView:
    """Read-only accessor over a packed reference plane.

    Coordinates outside the frame clamp to the border. When an overlay is
    given, any access inside ``tile`` grown by ``S`` reads the overlay
    instead; the frame itself is never modified.
    """

    def __init__(self, plane: np.ndarray, tile=None, overlay: Optional[np.ndarray] = None, S: int = 0):
        self.plane = plane
        self.tile = tile  # (x0, y0, a)
        self.overlay = overlay
        self.S = S

    def fetch(self, x0: int, y0: int, w: int, h: int) -> np.ndarray:
        ph, pw = self.plane.shape
        xs = np.clip(np.arange(x0, x0 + w), 0, pw - 1)
        ys = np.clip(np.arange(y0, y0 + h), 0, ph - 1)
        out = self.plane[np.ix_(ys, xs)]
        if self.overlay is not None:
            tx, ty, a = self.tile
            ox, oy = tx - self.S, ty - self.S
            n = a + 2 * self.S
            cx0, cx1 = max(x0, ox), min(x0 + w, ox + n)
            cy0, cy1 = max(y0, oy), min(y0 + h, oy + n)
            if cx0 < cx1 and cy0 < cy1:
                out = out.copy()
                out[cy0 - y0:cy1 - y0, cx0 - x0:cx1 - x0] = self.overlay[cy0 - oy:cy1 - oy, cx0 - ox:cx1 - ox]
        return out


def replicate_view(ref: PlanarFrame) -> ReferenceView:
    return ReferenceView(ref.y)


def tile_origin(layout: LayoutSpec, face: Face, a: int):
    p = layout.placements[Face(face)]
    return p.col * a, p.row * a


def fill_reference_for_face(ref: PlanarFrame, face: Face, ext: ExtendedFace, layout: LayoutSpec) -> ReferenceView:
    """Luma reference view in which ``face``'s tile is surrounded by its extension."""
    face = Face(face)
    a = ref.width // layout.cols
    if ext.face != face:
        raise GeometryMismatchError(f"extension belongs to {ext.face.name}, not {face.name}")
    if ext.geom.a != a or ref.height != a * layout.rows or ext.bitdepth != ref.bitdepth:
        raise GeometryMismatchError("extended face does not match the reference frame geometry")
    x0, y0 = tile_origin(layout, face, a)
    overlay = np.rot90(ext.y, layout.placements[face].rotation // 90)
    return ReferenceView(ref.y, (x0, y0, a), overlay, ext.geom.S)


def full_search_me(block: np.ndarray, view: ReferenceView, center, rng: int, bitdepth: int = 8,
                   face: Optional[Face] = None, boundary: bool = False) -> MotionResult:
    """Exhaustive integer-pel SAD search in ``[-rng, rng]^2`` around ``center``.

    Ties go to the smaller ``|dx| + |dy|``, then smaller ``dy``, then ``dx``.
    """
    b = block.shape[0]
    if block.shape != (b, b):
        raise ConfigError("block must be square")
    x, y = center
    win = view.fetch(x - rng, y - rng, b + 2 * rng, b + 2 * rng).astype(np.int32)
    cur = np.ascontiguousarray(block, dtype=np.int32)
    dx, dy, sad = kernels.full_search(cur, np.ascontiguousarray(win), rng)
    pred = win[rng + dy:rng + dy + b, rng + dx:rng + dx + b]
    err = float(np.mean((cur.astype(np.float64) - pred) ** 2))
    return MotionResult(face, x, y, MotionVector(dx, dy), sad, psnr(cur, pred, bitdepth), boundary, err)


@dataclass(frozen=True)
class MCConfig:
    block: int = 32
    range: int = 32
    mode: str = "coprojection"
    S: int = 64
    layout: str = "4x3"

    def validate(self, a: int):
        if self.block not in (16, 32, 64):
            raise ConfigError("block size must be 16, 32 or 64")
        if self.mode not in MODES:
            raise ConfigError(f"mode must be one of {MODES}")
        if self.range < 0 or self.range > self.S:
            raise ConfigError("search range must satisfy 0 <= range <= S")
        if self.S <= 0 or self.S % 2:
            raise ConfigError("S must be even and positive")
        if a % self.block:
            raise ConfigError(f"face size {a} is not a multiple of block size {self.block}")


@dataclass
class MCReport:
    config: MCConfig
    results: list = field(default_factory=list)
    bitdepth: int = 8

    def to_dict(self) -> dict:
        return summarize(self.results, self.config, self.bitdepth)


def _face_results(cur: PlanarFrame, ref: PlanarFrame, cube_ref: CubeMapFrame, face: Face,
                  config: MCConfig, layout: LayoutSpec) -> list:
    a = cube_ref.a
    b, r = config.block, config.range
    if config.mode == "coprojection":
        view = fill_reference_for_face(ref, face, extend_face(cube_ref, face, config.S), layout)
    else:
        view = replicate_view(ref)
    x0, y0 = tile_origin(layout, face, a)
    out = []
    for by in range(y0, y0 + a, b):
        for bx in range(x0, x0 + a, b):
            boundary = bx - r < x0 or by - r < y0 or bx + b + r > x0 + a or by + b + r > y0 + a
            block = cur.y[by:by + b, bx:bx + b]
            out.append(full_search_me(block, view, (bx, by), r, cur.bitdepth, face, boundary))
    return out


def evaluate_pair(cur: CubeMapFrame, ref: CubeMapFrame, config: MCConfig, threads: int = 1) -> MCReport:
    """Block-match every block of every face of ``cur`` against ``ref``."""
    if cur.a != ref.a or cur.bitdepth != ref.bitdepth:
        raise GeometryMismatchError("current and reference cube maps differ in geometry")
    config.validate(cur.a)
    layout = layout_table(config.layout)
    cur_p = pack_layout(cur, layout)
    ref_p = pack_layout(ref, layout)

    def run(face):
        return _face_results(cur_p, ref_p, ref, face, config, layout)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            per_face = list(pool.map(run, Face))
    else:
        per_face = [run(f) for f in Face]
    return MCReport(config, [r for rs in per_face for r in rs], cur.bitdepth)


def _means(results, bitdepth):
    if not results:
        return None, None
    sad = float(np.mean([r.sad for r in results]))
    return sad, psnr_from_mse(float(np.mean([r.mse for r in results])), bitdepth)


def summarize(results: list, config: MCConfig, bitdepth: int = 8) -> dict:
    """Aggregate into the report layout written by :func:`cubepad.io.write_report`.

    Mean PSNR is the PSNR of the mean block MSE, so perfectly predicted blocks
    do not turn the average infinite.
    """

    def group(rs):
        inner = [r for r in rs if not r.boundary]
        edge = [r for r in rs if r.boundary]
        return _means(inner, bitdepth), _means(edge, bitdepth), len(rs), len(edge)

    (si, pi), (sb, pb), n, nb = group(results)
    per_face = []
    for f in Face:
        (fsi, fpi), (fsb, fpb), fn, fnb = group([r for r in results if r.face == f])
        per_face.append({
            "face": f.name.lower(),
            "blocks": fn,
            "boundary_blocks": fnb,
            "sad_interior_mean": fsi,
            "sad_boundary_mean": fsb,
            "psnr_interior_mean_db": fpi,
            "psnr_boundary_mean_db": fpb,
        })
    return {
        "config": {"block": config.block, "range": config.range, "mode": config.mode, "S": config.S},
        "totals": {"blocks": n, "boundary_blocks": nb},
        "sad": {"interior_mean": si, "boundary_mean": sb},
        "psnr": {"interior_mean_db": pi, "boundary_mean_db": pb},
        "per_face": per_face,
    }
