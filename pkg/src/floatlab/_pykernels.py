"""Pure-Python/numpy implementations of the hot polygon kernels.

Every function here has a twin with the same signature in ``_ckernels.pyx``.
Inputs are C-contiguous float64 arrays; polygons are CCW vertex arrays of
shape (N, 2) without a repeated closing vertex.
"""

import numpy as np


def halfplane_sweep(nx, ny, h, eps):
    """Intersect halfplanes ``nx*x + ny*y <= h`` that are sorted by normal angle.

    Consecutive lines must have distinct angles.  Returns an (k, 2) array of
    CCW vertices, empty when the intersection is empty or degenerate.
    """
    n = len(h)
    nx = nx.tolist()
    ny = ny.tolist()
    h = h.tolist()

    def inter(i, j):
        det = nx[i] * ny[j] - ny[i] * nx[j]
        return ((h[i] * ny[j] - h[j] * ny[i]) / det,
                (nx[i] * h[j] - nx[j] * h[i]) / det)

    def out(i, p):
        return nx[i] * p[0] + ny[i] * p[1] > h[i] + eps

    dq = [0] * n
    head = tail = 0
    for i in range(n):
        while tail - head >= 2 and out(i, inter(dq[tail - 1], dq[tail - 2])):
            tail -= 1
        while tail - head >= 2 and out(i, inter(dq[head], dq[head + 1])):
            head += 1
        if tail - head >= 1:
            j = dq[tail - 1]
            cr = nx[i] * ny[j] - ny[i] * nx[j]
            if abs(cr) < 1e-14:
                if nx[i] * nx[j] + ny[i] * ny[j] < 0.0:
                    return np.empty((0, 2))
                if h[i] < h[j]:
                    dq[tail - 1] = i
                continue
        dq[tail] = i
        tail += 1
    while tail - head >= 3 and out(dq[head], inter(dq[tail - 1], dq[tail - 2])):
        tail -= 1
    while tail - head >= 3 and out(dq[tail - 1], inter(dq[head], dq[head + 1])):
        head += 1
    k = tail - head
    if k < 3:
        return np.empty((0, 2))
    idx = dq[head:tail]
    verts = [inter(idx[a], idx[(a + 1) % k]) for a in range(k)]
    return np.array(verts, dtype=float)


def overlap_areas(nx, ny, h, x, eps):
    """Area of ``P ∩ (P + x_k)`` where ``P = {<n_i, y> <= h_i}`` (angle-sorted)."""
    shift = np.minimum(x @ np.stack([nx, ny]), 0.0)
    out = np.empty(len(x))
    for k in range(len(x)):
        verts = halfplane_sweep(nx, ny, h + shift[k], eps)
        out[k] = polygon_area(verts) if len(verts) else 0.0
    return out


def polygon_area(v):
    x = v[:, 0]
    y = v[:, 1]
    return 0.5 * float(np.dot(x, np.roll(y, -1)) - np.dot(np.roll(x, -1), y))


def cap_areas(v, u, t):
    """Areas and chord lengths of ``{x in P : <x, u_j> >= t_j}`` for each row j."""
    a = v[:, None, :]
    b = np.roll(v, -1, axis=0)[:, None, :]
    hgt = v @ u.T - t[None, :]
    ha = hgt
    hb = np.roll(hgt, -1, axis=0)
    ina = ha >= 0.0
    inb = hb >= 0.0

    cross_ab = (a[..., 0] * b[..., 1] - a[..., 1] * b[..., 0])
    total = np.where(ina & inb, cross_ab, 0.0).sum(axis=0)

    with np.errstate(invalid="ignore", divide="ignore"):
        lam = ha / (ha - hb)
        p = a + (b - a) * lam[..., None]

    leaving = ina & ~inb
    entering = ~ina & inb
    cross_ap = a[..., 0] * p[..., 1] - a[..., 1] * p[..., 0]
    cross_pb = p[..., 0] * b[..., 1] - p[..., 1] * b[..., 0]
    total += np.where(leaving, cross_ap, 0.0).sum(axis=0)
    total += np.where(entering, cross_pb, 0.0).sum(axis=0)

    # convexity: at most one leaving and one entering edge per direction
    ex = np.where(leaving[..., None], p, 0.0).sum(axis=0)
    en = np.where(entering[..., None], p, 0.0).sum(axis=0)
    has_chord = leaving.any(axis=0) & entering.any(axis=0)
    total += np.where(has_chord, ex[:, 0] * en[:, 1] - ex[:, 1] * en[:, 0], 0.0)
    chord = np.where(has_chord, np.hypot(*(en - ex).T), 0.0)
    return 0.5 * total, chord


def hull_excess(v, x):
    """``|conv(x, P)| - |P|`` for each row of ``x``."""
    a = v[None, :, :]
    e = (np.roll(v, -1, axis=0) - v)[None, :, :]
    d = x[:, None, :] - a
    cr = e[..., 0] * d[..., 1] - e[..., 1] * d[..., 0]
    return 0.5 * np.maximum(-cr, 0.0).sum(axis=1)


def polar_areas(v, x):
    """Area of ``(P - x)°`` for each row of ``x``; ``inf`` where x is not interior."""
    e = np.roll(v, -1, axis=0) - v
    ln = np.hypot(e[:, 0], e[:, 1])
    nrm = np.stack([e[:, 1] / ln, -e[:, 0] / ln], axis=1)
    hv = (v * nrm).sum(axis=1)
    hh = hv[None, :] - x @ nrm.T
    bad = (hh <= 0.0).any(axis=1)
    with np.errstate(divide="ignore", invalid="ignore"):
        w = nrm[None, :, :] / hh[..., None]
        wn = np.roll(w, -1, axis=1)
        area = 0.5 * (w[..., 0] * wn[..., 1] - w[..., 1] * wn[..., 0]).sum(axis=1)
    return np.where(bad, np.inf, area)
