"""Raw YUV 4:2:0 files, binary PGM export and JSON metric reports.

YUV layout per frame: the Y plane, then Cb, then Cr, row-major. 8-bit uses
one byte per sample; 10-bit uses two bytes little-endian with the value in
the low 10 bits.
"""

from __future__ import annotations

import json
import math
import os
from typing import Iterable

import numpy as np

from .errors import BadIndexError, IoFailureError, OutOfRangeSampleError, TruncatedFileError
from .frames import PlanarFrame


def _sample_dtype(bitdepth: int):
    if bitdepth == 8:
        return np.dtype(np.uint8)
    if bitdepth == 10:
        return np.dtype("<u2")
    raise ValueError(f"bitdepth must be 8 or 10, got {bitdepth}")


def frame_bytes(width: int, height: int, bitdepth: int) -> int:
    return width * height * 3 // 2 * _sample_dtype(bitdepth).itemsize


def count_frames(path, width: int, height: int, bitdepth: int) -> int:
    size = os.path.getsize(path)
    per = frame_bytes(width, height, bitdepth)
    if size % per:
        raise TruncatedFileError(f"{path}: {size} bytes is not a multiple of the {per}-byte frame size")
    return size // per


def read_yuv(path, width: int, height: int, bitdepth: int, frame_index: int = 0) -> PlanarFrame:
    if width % 2 or height % 2:
        raise ValueError("4:2:0 needs even width and height")
    n = count_frames(path, width, height, bitdepth)
    if not 0 <= frame_index < n:
        raise BadIndexError(f"frame {frame_index} out of range; {path} holds {n} frames")
    dt = _sample_dtype(bitdepth)
    count = width * height * 3 // 2
    try:
        with open(path, "rb") as fh:
            fh.seek(frame_index * frame_bytes(width, height, bitdepth))
            raw = np.frombuffer(fh.read(count * dt.itemsize), dtype=dt)
    except OSError as exc:
        raise IoFailureError(str(exc)) from exc
    if raw.size != count:
        raise TruncatedFileError(f"{path}: short read")
    if bitdepth == 10 and raw.size and int(raw.max()) > 1023:
        raise OutOfRangeSampleError(f"{path}: 10-bit sample above 1023 in frame {frame_index}")
    raw = raw.astype(np.uint16)
    ys = width * height
    cs = ys // 4
    return PlanarFrame(raw[:ys].reshape(height, width),
                       raw[ys:ys + cs].reshape(height // 2, width // 2),
                       raw[ys + cs:].reshape(height // 2, width // 2), bitdepth)


def read_yuv_frames(path, width: int, height: int, bitdepth: int):
    for i in range(count_frames(path, width, height, bitdepth)):
        yield read_yuv(path, width, height, bitdepth, i)


def frame_to_bytes(frame: PlanarFrame) -> bytes:
    dt = _sample_dtype(frame.bitdepth)
    return b"".join(np.ascontiguousarray(p, dtype=dt).tobytes() for p in frame.planes)


def write_yuv(path, frames: Iterable[PlanarFrame]) -> None:
    if isinstance(frames, PlanarFrame):
        frames = [frames]
    try:
        with open(path, "wb") as fh:
            for f in frames:
                fh.write(frame_to_bytes(f))
    except OSError as exc:
        raise IoFailureError(str(exc)) from exc


def export_pgm(plane: np.ndarray, path, bitdepth: int = 8) -> None:
    """Binary PGM (P5); 10-bit planes use maxval 1023 and big-endian 16-bit samples."""
    plane = np.asarray(plane)
    h, w = plane.shape
    maxval = (1 << bitdepth) - 1
    dt = np.dtype(np.uint8) if maxval < 256 else np.dtype(">u2")
    header = f"P5 {w} {h} {maxval}\n".encode("ascii")
    try:
        with open(path, "wb") as fh:
            fh.write(header + np.ascontiguousarray(plane, dtype=dt).tobytes())
    except OSError as exc:
        raise IoFailureError(str(exc)) from exc


def read_pgm(path) -> tuple[np.ndarray, int]:
    """Read a binary PGM written by :func:`export_pgm`; returns (plane, maxval)."""
    with open(path, "rb") as fh:
        data = fh.read()
    fields = []
    pos = 0
    while len(fields) < 4:
        while data[pos:pos + 1].isspace():
            pos += 1
        start = pos
        while not data[pos:pos + 1].isspace():
            pos += 1
        fields.append(data[start:pos].decode("ascii"))
    pos += 1
    if fields[0] != "P5":
        raise ValueError("not a binary PGM")
    w, h, maxval = map(int, fields[1:])
    dt = np.dtype(np.uint8) if maxval < 256 else np.dtype(">u2")
    plane = np.frombuffer(data[pos:pos + w * h * dt.itemsize], dtype=dt).reshape(h, w)
    return plane.astype(np.uint16), maxval


def _json_safe(obj):
    if isinstance(obj, dict):
        return {k: _json_safe(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_json_safe(v) for v in obj]
    if isinstance(obj, (float, np.floating)):
        obj = float(obj)
        if math.isinf(obj):
            return "inf" if obj > 0 else "-inf"
        if math.isnan(obj):
            return None
        return obj
    if isinstance(obj, np.integer):
        return int(obj)
    return obj


def report_to_json(report) -> str:
    """Serialize a report dict (or anything with ``to_dict``); key order is preserved."""
    if hasattr(report, "to_dict"):
        report = report.to_dict()
    return json.dumps(_json_safe(report), indent=2, allow_nan=False) + "\n"


def write_report(report, path) -> None:
    text = report_to_json(report)
    try:
        with open(path, "w", encoding="ascii", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise IoFailureError(str(exc)) from exc
