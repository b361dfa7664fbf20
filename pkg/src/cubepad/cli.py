"""Command-line driver: ``cubepad <subcommand> ...``."""

from __future__ import annotations

import argparse
import csv
import sys

import numpy as np

from . import io as yuvio
from ._config import default_threads
from .errors import CubepadError
from .geometry import Face, LayoutKind, layout_table
from .mc import MODES, MCConfig, evaluate_pair
from .metrics import bd_rate
from .padding import complement_neighbors, extend_all, extend_face
from .projection import (
    cubemap_to_equirect,
    equirect_to_cubemap,
    gen_synthetic,
    layout_face_size,
    pack_layout,
    rotation_matrix,
    unpack_layout,
)
from .patterns import PATTERNS


def _size(text: str):
    try:
        w, h = (int(t) for t in text.lower().split("x"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected WxH, got {text!r}") from None
    if w <= 0 or h <= 0 or w % 2 or h % 2:
        raise argparse.ArgumentTypeError("width and height must be positive and even")
    return w, h


def _vec3(text: str):
    try:
        v = [float(t) for t in text.split(",")]
    except ValueError:
        v = []
    if len(v) != 3:
        raise argparse.ArgumentTypeError(f"expected x,y,z, got {text!r}")
    return v


def _positive_int(text: str):
    n = int(text)
    if n <= 0:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return n


def _face_choice(text: str):
    if text.lower() == "all":
        return "all"
    try:
        return Face.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _packed_size(a: int, layout):
    return a * layout.cols, a * layout.rows


def _read_packed(path, a, layout, bitdepth, frame):
    w, h = _packed_size(a, layout)
    return unpack_layout(yuvio.read_yuv(path, w, h, bitdepth, frame), layout)


def cmd_convert(args) -> int:
    layout = layout_table(args.layout)
    w, h = args.in_size
    frames = yuvio.read_yuv_frames(args.inp, w, h, args.bitdepth)
    if args.reverse:
        a = w // layout.cols
        if args.face_size is not None and args.face_size != a:
            raise CubepadError(f"--face-size {args.face_size} disagrees with the {w}x{h} packed input")
        out = (cubemap_to_equirect(unpack_layout(f, layout), 4 * a) for f in frames)
    else:
        if args.face_size is None:
            raise CubepadError("--face-size is required for equirect -> cube conversion")
        out = (pack_layout(equirect_to_cubemap(f, args.face_size), layout) for f in frames)
    yuvio.write_yuv(args.out, list(out))
    return 0


def cmd_extend(args) -> int:
    layout = layout_table(args.layout)
    cube = _read_packed(args.inp, args.face_size, layout, args.bitdepth, args.frame)
    if args.face == "all":
        exts = extend_all(cube, args.S, threads=args.threads)
    else:
        exts = [extend_face(cube, args.face, args.S)]
    for e in exts:
        stem = f"{args.out_prefix}_{e.face.name.lower()}"
        yuvio.write_yuv(stem + ".yuv", e.frame)
        yuvio.export_pgm(e.y, stem + ".pgm", e.bitdepth)
    return 0


def cmd_complement(args) -> int:
    layout = layout_table(args.layout)
    cube = _read_packed(args.inp, args.face_size, layout, args.bitdepth, args.frame)
    comp = complement_neighbors(cube, args.face)
    yuvio.export_pgm(comp.canvas.y, args.out, cube.bitdepth)
    return 0


def cmd_mc_eval(args) -> int:
    layout = layout_table(args.layout)
    cur = _read_packed(args.cur, args.face_size, layout, args.bitdepth, args.frame)
    ref = _read_packed(args.ref, args.face_size, layout, args.bitdepth, args.ref_frame)
    modes = MODES if args.mode == "both" else (args.mode,)
    reports = {}
    for mode in modes:
        cfg = MCConfig(args.block, args.range, mode, args.S, layout.kind.value)
        reports[mode] = evaluate_pair(cur, ref, cfg, threads=args.threads).to_dict()
    report = reports if args.mode == "both" else reports[args.mode]
    yuvio.write_report(report, args.report)
    for mode, rep in reports.items():
        print(f"{mode}: boundary SAD {rep['sad']['boundary_mean']}, interior SAD {rep['sad']['interior_mean']}")
    return 0


def _read_rd_csv(path):
    points = []
    with open(path, newline="") as fh:
        for row in csv.reader(fh):
            if not row or not "".join(row).strip():
                continue
            try:
                points.append((float(row[0]), float(row[1])))
            except (ValueError, IndexError):
                if points:
                    raise CubepadError(f"{path}: bad rate,psnr row {row!r}") from None
                continue  # header line
    return points


def cmd_bdrate(args) -> int:
    value = bd_rate(_read_rd_csv(args.anchor), _read_rd_csv(args.test))
    text = f"{value:.2f}"
    if text == "-0.00":
        text = "0.00"
    print(f"{text}%")
    return 0


def cmd_gen(args) -> int:
    w, h = args.size
    if w != 2 * h:
        raise CubepadError("equirect size must be 2:1")
    rot = rotation_matrix(args.rot_axis, args.rot_deg) if args.rot_deg else np.eye(3)
    yuvio.write_yuv(args.out, gen_synthetic(w, rot, args.pattern, args.bitdepth))
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cubepad", description="Cube-map projection and co-projection-plane padding for 360-degree video.")
    p.add_argument("--threads", type=_positive_int, default=None, help="worker threads (default: $CUBEPAD_THREADS or 1)")
    sub = p.add_subparsers(dest="command", required=True)

    def packed_args(sp, face_size_required=True):
        sp.add_argument("--layout", choices=[k.value for k in LayoutKind], default="4x3")
        sp.add_argument("--face-size", type=_positive_int, required=face_size_required)
        sp.add_argument("--bitdepth", type=int, choices=(8, 10), default=8)
        sp.add_argument("--frame", type=int, default=0, help="frame index in the input file")

    sp = sub.add_parser("convert", help="equirect -> packed cube map (or back with --reverse)")
    sp.add_argument("--in", dest="inp", required=True)
    sp.add_argument("--in-size", type=_size, required=True)
    sp.add_argument("--bitdepth", type=int, choices=(8, 10), default=8)
    sp.add_argument("--face-size", type=_positive_int)
    sp.add_argument("--layout", choices=[k.value for k in LayoutKind], default="4x3")
    sp.add_argument("--out", required=True)
    sp.add_argument("--reverse", action="store_true", help="packed cube map -> equirect (width 4a)")
    sp.set_defaults(func=cmd_convert)

    sp = sub.add_parser("extend", help="co-projection-plane face extension")
    sp.add_argument("--in", dest="inp", required=True)
    packed_args(sp)
    sp.add_argument("--face", type=_face_choice, required=True)
    sp.add_argument("--S", type=int, default=64)
    sp.add_argument("--out-prefix", required=True)
    sp.set_defaults(func=cmd_extend)

    sp = sub.add_parser("complement", help="neighbor-face complementation canvas (PGM)")
    sp.add_argument("--in", dest="inp", required=True)
    packed_args(sp)
    sp.add_argument("--face", type=Face.parse, required=True)
    sp.add_argument("--out", required=True)
    sp.set_defaults(func=cmd_complement)

    sp = sub.add_parser("mc-eval", help="motion-compensation comparison of padding modes")
    sp.add_argument("--cur", required=True)
    sp.add_argument("--ref", required=True)
    packed_args(sp)
    sp.add_argument("--ref-frame", type=int, default=0)
    sp.add_argument("--block", type=int, choices=(16, 32, 64), default=32)
    sp.add_argument("--range", type=int, default=32)
    sp.add_argument("--mode", choices=(*MODES, "both"), default="both")
    sp.add_argument("--S", type=int, default=64)
    sp.add_argument("--report", required=True)
    sp.set_defaults(func=cmd_mc_eval)

    sp = sub.add_parser("bdrate", help="Bjontegaard delta rate of two rate,psnr CSV files")
    sp.add_argument("--anchor", required=True)
    sp.add_argument("--test", required=True)
    sp.set_defaults(func=cmd_bdrate)

    sp = sub.add_parser("gen", help="synthetic equirect frame")
    sp.add_argument("--size", type=_size, required=True)
    sp.add_argument("--pattern", choices=sorted(PATTERNS), default="texture")
    sp.add_argument("--rot-axis", type=_vec3, default=[0.0, 1.0, 0.0])
    sp.add_argument("--rot-deg", type=float, default=0.0)
    sp.add_argument("--bitdepth", type=int, choices=(8, 10), default=8)
    sp.add_argument("--out", required=True)
    sp.set_defaults(func=cmd_gen)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.threads is None:
        try:
            args.threads = default_threads()
        except ValueError as exc:
            parser.error(str(exc))
    try:
        return args.func(args)
    except (CubepadError, OSError, ValueError) as exc:
        print(f"cubepad {args.command}: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
