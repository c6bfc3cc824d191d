# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels; same contracts as ``wga._pykernels``."""
import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt, cos, sin, fabs, ceil, pow, M_PI

cnp.import_array()

cdef double SERIES_MAX_X = 12.0
cdef double RESCALE = 1e250


cdef inline int _truncation_index(double x) noexcept nogil:
    cdef double ax = fabs(x)
    return <int>ceil(ax + 12.0 * pow(ax + 1.0, 1.0 / 3.0) + 15.0)


cdef inline int _miller_start(int n, double x) noexcept nogil:
    cdef int a = _truncation_index(x)
    cdef int b = n + <int>ceil(sqrt(60.0 * n)) + 20
    cdef int m = a if a > b else b
    return m + (m % 2)


cdef double _series(int n, double x) noexcept nogil:
    cdef double half = 0.5 * x
    cdef double t = 1.0
    cdef double s, q
    cdef int i, m
    for i in range(1, n + 1):
        t = t * half / i
    s = t
    q = half * half
    for m in range(1, 200):
        t = -t * q / (m * (m + n))
        s += t
        if fabs(t) <= 1e-17 * fabs(s):
            break
    return s


cdef int _hankel(int n, double x, double *out) noexcept nogil:
    cdef double mu = 4.0 * n * n
    cdef double p = 1.0, q = 0.0, t = 1.0, t_new, sign
    cdef double smallest = 1.0
    cdef int k, j
    cdef double cp, sp, cx, sx
    for k in range(1, 80):
        t_new = t * (mu - (2 * k - 1) * (2 * k - 1)) / (k * 8.0 * x)
        if fabs(t_new) >= fabs(t):
            break
        sign = -1.0 if (k // 2) % 2 else 1.0
        if k % 2 == 0:
            p += sign * t_new
        else:
            q += sign * t_new
        if fabs(t_new) < smallest:
            smallest = fabs(t_new)
        t = t_new
        if fabs(t_new) < 1e-17:
            break
    if smallest >= 1e-16:
        return 0
    j = (2 * n + 1) % 8
    cp = cos(j * M_PI / 4)
    sp = sin(j * M_PI / 4)
    cx = cos(x)
    sx = sin(x)
    out[0] = sqrt(2.0 / (M_PI * x)) * (p * (cx * cp + sx * sp) - q * (sx * cp - cx * sp))
    return 1


cdef double _miller(int n, double x) noexcept nogil:
    cdef int m = _miller_start(n, x)
    cdef double jp = 0.0, jk = 1e-30, jm, norm = 0.0, out = 0.0
    cdef int k
    for k in range(m, 0, -1):
        jm = (2.0 * k / x) * jk - jp
        jp = jk
        jk = jm
        if k - 1 > 0 and (k - 1) % 2 == 0:
            norm += 2.0 * jk
        if k - 1 == n:
            out = jk
        if fabs(jk) > RESCALE:
            jk /= RESCALE
            jp /= RESCALE
            norm /= RESCALE
            out /= RESCALE
    norm += jk
    return out / norm


cdef double _jn(int n, double x) noexcept nogil:
    cdef double val
    if x == 0.0:
        return 1.0 if n == 0 else 0.0
    if x <= SERIES_MAX_X:
        return _series(n, x)
    if _hankel(n, x, &val):
        return val
    return _miller(n, x)


def truncation_index(double x):
    return _truncation_index(x)


def miller_start(int n, double x):
    return _miller_start(n, x)


def jn_array(int n, x):
    cdef cnp.ndarray[cnp.float64_t, ndim=1] flat = np.ascontiguousarray(np.asarray(x, dtype=np.float64).ravel())
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.empty_like(flat)
    cdef double[::1] fv = flat
    cdef double[::1] ov = out
    cdef Py_ssize_t i, size = flat.shape[0]
    with nogil:
        for i in range(size):
            ov[i] = _jn(n, fv[i])
    return out.reshape(np.shape(x))


def jn_band(int nmax, double x):
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.zeros(nmax + 1)
    cdef double[::1] ov = out
    cdef int m, k, i
    cdef double norm = 0.0
    if x == 0.0:
        ov[0] = 1.0
        return out
    m = _miller_start(nmax, x)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] vals_arr = np.zeros(m + 2)
    cdef double[::1] vals = vals_arr
    with nogil:
        vals[m] = 1e-30
        for k in range(m, 0, -1):
            vals[k - 1] = (2.0 * k / x) * vals[k] - vals[k + 1]
            if k - 1 > 0 and (k - 1) % 2 == 0:
                norm += 2.0 * vals[k - 1]
            if fabs(vals[k - 1]) > RESCALE:
                for i in range(k - 1, m + 2):
                    vals[i] /= RESCALE
                norm /= RESCALE
        norm += vals[0]
        for i in range(nmax + 1):
            ov[i] = vals[i] / norm
    return out


def rk4_tridiag(a0, double h, int nsteps, double complex up, double complex down):
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] a_arr = np.array(a0, dtype=np.complex128)
    cdef Py_ssize_t size = a_arr.shape[0]
    cdef cnp.ndarray[cnp.complex128_t, ndim=2] work = np.zeros((5, size), dtype=np.complex128)
    cdef double complex[::1] a = a_arr
    cdef double complex[:, ::1] w = work
    cdef Py_ssize_t i
    cdef int s, stage
    cdef double complex left, right
    cdef double coef
    with nogil:
        for s in range(nsteps):
            # w[0] holds the stage input, w[1..4] the slopes
            for stage in range(4):
                if stage == 0:
                    for i in range(size):
                        w[0, i] = a[i]
                else:
                    coef = h if stage == 3 else 0.5 * h
                    for i in range(size):
                        w[0, i] = a[i] + coef * w[stage, i]
                for i in range(size):
                    left = w[0, i - 1] if i > 0 else 0.0
                    right = w[0, i + 1] if i < size - 1 else 0.0
                    w[stage + 1, i] = up * left + down * right
            for i in range(size):
                a[i] = a[i] + (h / 6.0) * (w[1, i] + 2.0 * w[2, i] + 2.0 * w[3, i] + w[4, i])
    return a_arr
