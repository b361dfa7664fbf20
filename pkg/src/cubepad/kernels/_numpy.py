"""Vectorized numpy implementations of the hot kernels.

Every function here has a twin with the same signature in ``_numba``. The two
agree to floating-point rounding (``gather4`` and ``full_search`` agree
exactly).
"""

import numpy as np

_CHUNK = 1 << 16


def _lanczos_weight_rows(frac, taps_half):
    offs = np.arange(2 * taps_half) - taps_half + 1
    t = offs[None, :] - frac[:, None]
    w = np.sinc(t) * np.sinc(t / taps_half)
    w[np.abs(t) >= taps_half] = 0.0
    w[frac == 0.0] = offs == 0  # exact delta; sinc leaves ~1e-17 at nonzero integers
    return w / w.sum(axis=1, keepdims=True)


def lanczos_sample(plane, xs, ys, taps_half, wrap_x):
    h, w = plane.shape
    n = xs.shape[0]
    out = np.empty(n, dtype=np.float64)
    offs = np.arange(2 * taps_half) - taps_half + 1
    for s in range(0, n, _CHUNK):
        x = xs[s:s + _CHUNK]
        y = ys[s:s + _CHUNK]
        x0 = np.floor(x)
        y0 = np.floor(y)
        wx = _lanczos_weight_rows(x - x0, taps_half)
        wy = _lanczos_weight_rows(y - y0, taps_half)
        cx = x0.astype(np.int64)[:, None] + offs[None, :]
        cy = y0.astype(np.int64)[:, None] + offs[None, :]
        cx = np.mod(cx, w) if wrap_x else np.clip(cx, 0, w - 1)
        cy = np.clip(cy, 0, h - 1)
        vals = plane[cy[:, :, None], cx[:, None, :]]
        rows = np.einsum("nji,ni->nj", vals, wx)
        out[s:s + _CHUNK] = np.einsum("nj,nj->n", rows, wy)
    return out


def bilinear_sample(plane, xs, ys, wrap_x):
    h, w = plane.shape
    x0 = np.floor(xs)
    y0 = np.floor(ys)
    fx = xs - x0
    fy = ys - y0
    x0 = x0.astype(np.int64)
    y0 = y0.astype(np.int64)
    x1 = x0 + 1
    y1 = y0 + 1
    if wrap_x:
        x0 = np.mod(x0, w)
        x1 = np.mod(x1, w)
    else:
        x0 = np.clip(x0, 0, w - 1)
        x1 = np.clip(x1, 0, w - 1)
    y0 = np.clip(y0, 0, h - 1)
    y1 = np.clip(y1, 0, h - 1)
    top = (1.0 - fx) * plane[y0, x0] + fx * plane[y0, x1]
    bot = (1.0 - fx) * plane[y1, x0] + fx * plane[y1, x1]
    return (1.0 - fy) * top + fy * bot


def gather4(flat, idx, wdepth, wlat):
    # Pairing the diagonal terms makes the sum invariant under the dihedral
    # symmetries of the 2x2 footprint (needed for bit-exact equivariance).
    t_nn = (wdepth[:, 0] * wlat[:, 0]) * flat[idx[:, 0]]
    t_ff = (wdepth[:, 1] * wlat[:, 1]) * flat[idx[:, 1]]
    t_nf = (wdepth[:, 0] * wlat[:, 1]) * flat[idx[:, 2]]
    t_fn = (wdepth[:, 1] * wlat[:, 0]) * flat[idx[:, 3]]
    return (t_nn + t_ff) + (t_nf + t_fn)


def full_search(cur, win, rng):
    b = cur.shape[0]
    cur = cur.astype(np.int64)
    win = win.astype(np.int64)
    span = 2 * rng + 1
    sads = np.empty((span, span), dtype=np.int64)
    for j in range(span):
        strip = np.lib.stride_tricks.sliding_window_view(win[j:j + b], (b, b))[0]
        sads[j] = np.abs(strip - cur[None]).sum(axis=(1, 2))
    d = np.arange(-rng, rng + 1)
    dy, dx = np.meshgrid(d, d, indexing="ij")
    order = np.lexsort((dx.ravel(), dy.ravel(),
                        (np.abs(dx) + np.abs(dy)).ravel(), sads.ravel()))
    k = order[0]
    return int(dx.ravel()[k]), int(dy.ravel()[k]), int(sads.ravel()[k])
