"""numba-compiled kernels; same signatures as ``_numpy``."""

import math

import numpy as np
from numba import njit

_OPTS = dict(cache=True, nogil=True)


@njit(**_OPTS)
def _tap_tables(taps_half):
    # offsets c = i - taps_half + 1; sin/cos(pi c / taps_half) and (-1)^c
    n = 2 * taps_half
    s = np.empty(n)
    c = np.empty(n)
    sign = np.empty(n)
    for i in range(n):
        off = i - taps_half + 1
        s[i] = math.sin(math.pi * off / taps_half)
        c[i] = math.cos(math.pi * off / taps_half)
        sign[i] = 1.0 if off % 2 == 0 else -1.0
    return s, c, sign


@njit(**_OPTS)
def _lanczos_weights(frac, taps_half, tab_s, tab_c, tab_sign, out):
    if frac == 0.0:
        for i in range(2 * taps_half):
            out[i] = 1.0 if i == taps_half - 1 else 0.0
        return
    # sin(pi (c - f)) = -(-1)^c sin(pi f); sin(pi (c - f) / A) by angle addition
    sf = math.sin(math.pi * frac)
    sa = math.sin(math.pi * frac / taps_half)
    ca = math.cos(math.pi * frac / taps_half)
    total = 0.0
    for i in range(2 * taps_half):
        t = (i - taps_half + 1) - frac
        if abs(t) >= taps_half:
            v = 0.0
        else:
            num = -tab_sign[i] * sf * (tab_s[i] * ca - tab_c[i] * sa)
            v = taps_half * num / (math.pi * math.pi * t * t)
        out[i] = v
        total += v
    for i in range(2 * taps_half):
        out[i] /= total


@njit(**_OPTS)
def lanczos_sample(plane, xs, ys, taps_half, wrap_x):
    h, w = plane.shape
    n = xs.shape[0]
    out = np.empty(n)
    wx = np.empty(2 * taps_half)
    wy = np.empty(2 * taps_half)
    tab_s, tab_c, tab_sign = _tap_tables(taps_half)
    for k in range(n):
        x0 = math.floor(xs[k])
        y0 = math.floor(ys[k])
        _lanczos_weights(xs[k] - x0, taps_half, tab_s, tab_c, tab_sign, wx)
        _lanczos_weights(ys[k] - y0, taps_half, tab_s, tab_c, tab_sign, wy)
        acc = 0.0
        for j in range(2 * taps_half):
            yy = min(max(y0 - taps_half + 1 + j, 0), h - 1)
            row = 0.0
            for i in range(2 * taps_half):
                xx = x0 - taps_half + 1 + i
                if wrap_x:
                    xx = xx % w
                else:
                    xx = min(max(xx, 0), w - 1)
                row += wx[i] * plane[yy, xx]
            acc += wy[j] * row
        out[k] = acc
    return out


@njit(**_OPTS)
def bilinear_sample(plane, xs, ys, wrap_x):
    h, w = plane.shape
    n = xs.shape[0]
    out = np.empty(n)
    for k in range(n):
        fx0 = math.floor(xs[k])
        fy0 = math.floor(ys[k])
        fx = xs[k] - fx0
        fy = ys[k] - fy0
        x0 = fx0
        x1 = fx0 + 1
        if wrap_x:
            x0 = x0 % w
            x1 = x1 % w
        else:
            x0 = min(max(x0, 0), w - 1)
            x1 = min(max(x1, 0), w - 1)
        y0 = min(max(fy0, 0), h - 1)
        y1 = min(max(fy0 + 1, 0), h - 1)
        top = (1.0 - fx) * plane[y0, x0] + fx * plane[y0, x1]
        bot = (1.0 - fx) * plane[y1, x0] + fx * plane[y1, x1]
        out[k] = (1.0 - fy) * top + fy * bot
    return out


@njit(**_OPTS)
def gather4(flat, idx, wdepth, wlat):
    n = idx.shape[0]
    out = np.empty(n)
    for k in range(n):
        t_nn = (wdepth[k, 0] * wlat[k, 0]) * flat[idx[k, 0]]
        t_ff = (wdepth[k, 1] * wlat[k, 1]) * flat[idx[k, 1]]
        t_nf = (wdepth[k, 0] * wlat[k, 1]) * flat[idx[k, 2]]
        t_fn = (wdepth[k, 1] * wlat[k, 0]) * flat[idx[k, 3]]
        out[k] = (t_nn + t_ff) + (t_nf + t_fn)
    return out


@njit(**_OPTS)
def full_search(cur, win, rng):
    b = cur.shape[0]
    best = -1
    bdx = 0
    bdy = 0
    for dy in range(-rng, rng + 1):
        for dx in range(-rng, rng + 1):
            s = 0
            for j in range(b):
                for i in range(b):
                    s += abs(np.int64(cur[j, i]) - np.int64(win[rng + dy + j, rng + dx + i]))
            if best < 0 or s < best:
                best, bdx, bdy = s, dx, dy
            elif s == best:
                m, bm = abs(dx) + abs(dy), abs(bdx) + abs(bdy)
                if m < bm or (m == bm and (dy < bdy or (dy == bdy and dx < bdx))):
                    bdx, bdy = dx, dy
    return bdx, bdy, best
