"""Time the numba and numpy kernels side by side on realistic workloads.

    python benchmarks/bench_kernels.py [--repeat N] [--face-size A]

Workloads mirror the library's hot paths at one face size: Lanczos3 for an
equirect -> cube conversion, gather4 for a full ``extend_all`` ring, the
bilinear sampler on the same number of points, and full-search block
matching over one face. Numba timings exclude the first (compiling) call.
"""

import argparse
import time

import numpy as np

from cubepad.kernels import _numba, _numpy
from cubepad.padding import tap_table
from cubepad.projection import direction_to_equirect, face_pixel_directions


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def workloads(a, rng):
    w = 4 * a
    equirect = rng.integers(0, 1024, (w // 2, w)).astype(np.float64)
    m, n = direction_to_equirect(face_pixel_directions(a), w, w // 2)
    xs, ys = np.ascontiguousarray(m.ravel()), np.ascontiguousarray(n.ravel())

    stack = rng.integers(0, 1024, (6, a, a)).astype(np.float64)
    s = a // 4 if a // 4 % 2 == 0 else a // 4 + 1
    tables = [tap_table(f, a, s) for f in range(6)]
    idx = np.concatenate([t.idx for t in tables])
    wd = np.concatenate([t.wdepth for t in tables])
    wl = np.concatenate([t.wlat for t in tables])
    flat = stack.ravel()

    b, r = 32, 32
    plane = rng.integers(0, 1024, (a + 2 * r, a + 2 * r)).astype(np.int32)
    blocks = [(np.ascontiguousarray(plane[y + r + 3:y + r + 3 + b, x + r - 2:x + r - 2 + b]),
               np.ascontiguousarray(plane[y:y + b + 2 * r, x:x + b + 2 * r]))
              for y in range(0, a, b) for x in range(0, a, b)]

    def search(mod):
        return [mod.full_search(cur, win, r) for cur, win in blocks]

    return {
        f"lanczos3  ({xs.size:,} pts)": lambda mod: mod.lanczos_sample(equirect, xs, ys, 3, True),
        f"bilinear  ({xs.size:,} pts)": lambda mod: mod.bilinear_sample(equirect, xs, ys, True),
        f"gather4   ({idx.shape[0]:,} ring px)": lambda mod: mod.gather4(flat, idx, wd, wl),
        f"full_search ({len(blocks)} blocks, B={b}, R={r})": search,
    }


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--face-size", type=int, default=256)
    args = ap.parse_args(argv)

    rng = np.random.default_rng(0)
    print(f"face size {args.face_size}, best of {args.repeat}")
    print(f"{'kernel':44s} {'numpy s':>9s} {'numba s':>9s} {'speedup':>8s}")
    for name, run in workloads(args.face_size, rng).items():
        run(_numba)  # compile
        t_np, out_np = best_of(lambda: run(_numpy), args.repeat)
        t_nb, out_nb = best_of(lambda: run(_numba), args.repeat)
        if isinstance(out_np, list):
            assert out_np == out_nb, name
        else:
            assert np.allclose(out_np, out_nb, rtol=0, atol=1e-9), name
        print(f"{name:44s} {t_np:9.4f} {t_nb:9.4f} {t_np / t_nb:7.1f}x")


if __name__ == "__main__":
    main()
