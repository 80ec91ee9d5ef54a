# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled polygon kernels; see ``_pykernels`` for the reference semantics."""

import numpy as np
cimport numpy as cnp
from libc.math cimport fabs, sqrt, INFINITY

cnp.import_array()


cdef inline void _inter(const double[::1] nx, const double[::1] ny,
                        const double[::1] h, Py_ssize_t i, Py_ssize_t j,
                        double* px, double* py) noexcept nogil:
    cdef double det = nx[i] * ny[j] - ny[i] * nx[j]
    px[0] = (h[i] * ny[j] - h[j] * ny[i]) / det
    py[0] = (nx[i] * h[j] - nx[j] * h[i]) / det


cdef inline bint _out(const double[::1] nx, const double[::1] ny,
                      const double[::1] h, Py_ssize_t i,
                      double px, double py, double eps) noexcept nogil:
    return nx[i] * px + ny[i] * py > h[i] + eps


cdef Py_ssize_t _sweep(const double[::1] nx, const double[::1] ny,
                      const double[::1] h, double eps, Py_ssize_t[::1] dq,
                      Py_ssize_t* head_out) noexcept nogil:
    """Run the deque sweep; returns the number of surviving lines (0 if empty)."""
    cdef Py_ssize_t n = h.shape[0]
    cdef Py_ssize_t head = 0, tail = 0, i, j
    cdef double px, py, cr
    for i in range(n):
        while tail - head >= 2:
            _inter(nx, ny, h, dq[tail - 1], dq[tail - 2], &px, &py)
            if _out(nx, ny, h, i, px, py, eps):
                tail -= 1
            else:
                break
        while tail - head >= 2:
            _inter(nx, ny, h, dq[head], dq[head + 1], &px, &py)
            if _out(nx, ny, h, i, px, py, eps):
                head += 1
            else:
                break
        if tail - head >= 1:
            j = dq[tail - 1]
            cr = nx[i] * ny[j] - ny[i] * nx[j]
            if fabs(cr) < 1e-14:
                if nx[i] * nx[j] + ny[i] * ny[j] < 0.0:
                    return 0
                if h[i] < h[j]:
                    dq[tail - 1] = i
                continue
        dq[tail] = i
        tail += 1
    while tail - head >= 3:
        _inter(nx, ny, h, dq[tail - 1], dq[tail - 2], &px, &py)
        if _out(nx, ny, h, dq[head], px, py, eps):
            tail -= 1
        else:
            break
    while tail - head >= 3:
        _inter(nx, ny, h, dq[head], dq[head + 1], &px, &py)
        if _out(nx, ny, h, dq[tail - 1], px, py, eps):
            head += 1
        else:
            break
    head_out[0] = head
    if tail - head < 3:
        return 0
    return tail - head


def halfplane_sweep(const double[::1] nx, const double[::1] ny,
                    const double[::1] h, double eps):
    cdef Py_ssize_t n = h.shape[0]
    cdef Py_ssize_t[::1] dq = np.empty(max(n, 1), dtype=np.intp)
    cdef Py_ssize_t head = 0, k, a, i, j
    cdef double px, py
    with nogil:
        k = _sweep(nx, ny, h, eps, dq, &head)
    if k == 0:
        return np.empty((0, 2))
    out = np.empty((k, 2))
    cdef double[:, ::1] ov = out
    with nogil:
        for a in range(k):
            i = dq[head + a]
            j = dq[head + (a + 1) % k]
            _inter(nx, ny, h, i, j, &px, &py)
            ov[a, 0] = px
            ov[a, 1] = py
    return out


def overlap_areas(const double[::1] nx, const double[::1] ny, const double[::1] h,
                  const double[:, ::1] x, double eps):
    """Area of ``P ∩ (P + x_k)`` where ``P = {<n_i, y> <= h_i}`` (angle-sorted)."""
    cdef Py_ssize_t n = h.shape[0], m = x.shape[0], k, a, cnt, head = 0, i, j
    cdef Py_ssize_t[::1] dq = np.empty(max(n, 1), dtype=np.intp)
    hs_arr = np.empty(n)
    cdef double[::1] hs = hs_arr
    out = np.empty(m)
    cdef double[::1] ov = out
    cdef double s, shift, px, py, qx, qy, fx, fy
    with nogil:
        for k in range(m):
            for i in range(n):
                shift = nx[i] * x[k, 0] + ny[i] * x[k, 1]
                hs[i] = h[i] + (shift if shift < 0.0 else 0.0)
            cnt = _sweep(nx, ny, hs, eps, dq, &head)
            s = 0.0
            if cnt > 0:
                _inter(nx, ny, hs, dq[head + cnt - 1], dq[head], &fx, &fy)
                px = fx
                py = fy
                for a in range(cnt - 1):
                    _inter(nx, ny, hs, dq[head + a], dq[head + a + 1], &qx, &qy)
                    s += px * qy - py * qx
                    px = qx
                    py = qy
                s += px * fy - py * fx
            ov[k] = 0.5 * s
    return out


def polygon_area(const double[:, ::1] v):
    cdef Py_ssize_t n = v.shape[0], i, j
    cdef double s = 0.0
    with nogil:
        for i in range(n):
            j = i + 1 if i + 1 < n else 0
            s += v[i, 0] * v[j, 1] - v[j, 0] * v[i, 1]
    return 0.5 * s


def cap_areas(const double[:, ::1] v, const double[:, ::1] u, const double[::1] t):
    cdef Py_ssize_t n = v.shape[0], m = u.shape[0], i, j, k
    areas = np.empty(m)
    chords = np.empty(m)
    cdef double[::1] av = areas, cv = chords
    cdef double ux, uy, ha, hb, lam, px, py, s
    cdef double exx = 0.0, exy = 0.0, enx = 0.0, eny = 0.0
    cdef bint has_ex, has_en
    with nogil:
        for k in range(m):
            ux = u[k, 0]
            uy = u[k, 1]
            s = 0.0
            has_ex = False
            has_en = False
            hb = v[0, 0] * ux + v[0, 1] * uy - t[k]
            for i in range(n):
                j = i + 1 if i + 1 < n else 0
                ha = hb
                hb = v[j, 0] * ux + v[j, 1] * uy - t[k]
                if ha >= 0.0:
                    if hb >= 0.0:
                        s += v[i, 0] * v[j, 1] - v[i, 1] * v[j, 0]
                    else:
                        lam = ha / (ha - hb)
                        px = v[i, 0] + (v[j, 0] - v[i, 0]) * lam
                        py = v[i, 1] + (v[j, 1] - v[i, 1]) * lam
                        s += v[i, 0] * py - v[i, 1] * px
                        exx = px
                        exy = py
                        has_ex = True
                elif hb >= 0.0:
                    lam = ha / (ha - hb)
                    px = v[i, 0] + (v[j, 0] - v[i, 0]) * lam
                    py = v[i, 1] + (v[j, 1] - v[i, 1]) * lam
                    s += px * v[j, 1] - py * v[j, 0]
                    enx = px
                    eny = py
                    has_en = True
            if has_ex and has_en:
                s += exx * eny - exy * enx
                cv[k] = sqrt((enx - exx) * (enx - exx) + (eny - exy) * (eny - exy))
            else:
                cv[k] = 0.0
            av[k] = 0.5 * s
    return areas, chords


def hull_excess(const double[:, ::1] v, const double[:, ::1] x):
    cdef Py_ssize_t n = v.shape[0], m = x.shape[0], i, j, k
    out = np.empty(m)
    cdef double[::1] ov = out
    cdef double s, cr
    with nogil:
        for k in range(m):
            s = 0.0
            for i in range(n):
                j = i + 1 if i + 1 < n else 0
                cr = ((v[j, 0] - v[i, 0]) * (x[k, 1] - v[i, 1])
                      - (v[j, 1] - v[i, 1]) * (x[k, 0] - v[i, 0]))
                if cr < 0.0:
                    s -= cr
            ov[k] = 0.5 * s
    return out


def polar_areas(const double[:, ::1] v, const double[:, ::1] x):
    cdef Py_ssize_t n = v.shape[0], m = x.shape[0], i, j, k
    out = np.empty(m)
    cdef double[::1] ov = out
    nrm_arr = np.empty((n, 2))
    hv_arr = np.empty(n)
    cdef double[:, ::1] nrm = nrm_arr
    cdef double[::1] hv = hv_arr
    cdef double ex, ey, ln, s, h0, h1, w0x, w0y, w1x, w1y, fx, fy, hf
    cdef bint bad
    with nogil:
        for i in range(n):
            j = i + 1 if i + 1 < n else 0
            ex = v[j, 0] - v[i, 0]
            ey = v[j, 1] - v[i, 1]
            ln = sqrt(ex * ex + ey * ey)
            nrm[i, 0] = ey / ln
            nrm[i, 1] = -ex / ln
            hv[i] = v[i, 0] * nrm[i, 0] + v[i, 1] * nrm[i, 1]
        for k in range(m):
            bad = False
            s = 0.0
            hf = hv[0] - x[k, 0] * nrm[0, 0] - x[k, 1] * nrm[0, 1]
            if hf <= 0.0:
                ov[k] = INFINITY
                continue
            fx = nrm[0, 0] / hf
            fy = nrm[0, 1] / hf
            w0x = fx
            w0y = fy
            for i in range(1, n):
                h1 = hv[i] - x[k, 0] * nrm[i, 0] - x[k, 1] * nrm[i, 1]
                if h1 <= 0.0:
                    bad = True
                    break
                w1x = nrm[i, 0] / h1
                w1y = nrm[i, 1] / h1
                s += w0x * w1y - w0y * w1x
                w0x = w1x
                w0y = w1y
            if bad:
                ov[k] = INFINITY
            else:
                s += w0x * fy - w0y * fx
                ov[k] = 0.5 * s
    return out
