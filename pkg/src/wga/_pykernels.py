"""Pure numpy implementations of the hot kernels.

Signatures mirror ``_ckernels``; ``wga._kernels`` picks one at import.
All Bessel routines here take ``n >= 0`` and ``x >= 0``; reflections are
applied by the callers in :mod:`wga.specfun`.
"""
import math

import numpy as np

SERIES_MAX_X = 12.0
_RESCALE = 1e250
_PHASES = np.array([math.cos(j * math.pi / 4) for j in range(8)]), np.array(
    [math.sin(j * math.pi / 4) for j in range(8)]
)


def truncation_index(x):
    """Index beyond which |J_n(x)| is below ~1e-15 (see specfun)."""
    ax = abs(x)
    return int(math.ceil(ax + 12.0 * (ax + 1.0) ** (1.0 / 3.0) + 15.0))


def miller_start(n, x):
    m = max(truncation_index(x), n + int(math.ceil(math.sqrt(60.0 * n))) + 20)
    return m + (m % 2)


def _series(n, x):
    half = 0.5 * x
    t = np.ones_like(x)
    for i in range(1, n + 1):
        t = t * half / i
    s = t.copy()
    q = half * half
    for m in range(1, 200):
        t = -t * q / (m * (m + n))
        s += t
        if np.all(np.abs(t) <= 1e-17 * np.abs(s)):
            break
    return s


def _hankel(n, x):
    """Large-argument expansion; returns (values, accepted_mask)."""
    mu = 4.0 * n * n
    p = np.ones_like(x)
    q = np.zeros_like(x)
    t = np.ones_like(x)
    active = np.ones(x.shape, dtype=bool)
    smallest = np.ones_like(x)
    for k in range(1, 80):
        t_new = t * (mu - (2 * k - 1) ** 2) / (k * 8.0 * x)
        growing = np.abs(t_new) >= np.abs(t)
        active &= ~growing
        if not active.any():
            break
        sign = -1.0 if (k // 2) % 2 else 1.0
        if k % 2 == 0:
            p = np.where(active, p + sign * t_new, p)
        else:
            q = np.where(active, q + sign * t_new, q)
        smallest = np.where(active, np.minimum(smallest, np.abs(t_new)), smallest)
        t = np.where(active, t_new, t)
        active &= np.abs(t_new) >= 1e-17
    j = (2 * n + 1) % 8
    cp, sp = _PHASES[0][j], _PHASES[1][j]
    cos_chi = np.cos(x) * cp + np.sin(x) * sp
    sin_chi = np.sin(x) * cp - np.cos(x) * sp
    val = np.sqrt(2.0 / (math.pi * x)) * (p * cos_chi - q * sin_chi)
    return val, smallest < 1e-16


def _miller(n, x):
    m = max(miller_start(n, float(xi)) for xi in x)
    jp = np.zeros_like(x)
    jk = np.full_like(x, 1e-30)
    norm = np.zeros_like(x)
    out = np.zeros_like(x)
    for k in range(m, 0, -1):
        jm = (2.0 * k / x) * jk - jp
        jp, jk = jk, jm
        if (k - 1) % 2 == 0 and k - 1 > 0:
            norm += 2.0 * jk
        if k - 1 == n:
            out = jk.copy()
        big = np.abs(jk) > _RESCALE
        if big.any():
            scale = np.where(big, 1.0 / _RESCALE, 1.0)
            jk *= scale
            jp *= scale
            norm *= scale
            out *= scale
    norm += jk
    return out / norm


def jn_array(n, x):
    """J_n(x) for integer n >= 0 over a float array x >= 0."""
    x = np.asarray(x, dtype=float)
    flat = x.ravel()
    out = np.zeros_like(flat)
    zero = flat == 0.0
    if n == 0:
        out[zero] = 1.0
    small = (~zero) & (flat <= SERIES_MAX_X)
    if small.any():
        out[small] = _series(n, flat[small])
    large = flat > SERIES_MAX_X
    if large.any():
        idx = np.nonzero(large)[0]
        val, ok = _hankel(n, flat[idx])
        out[idx[ok]] = val[ok]
        rest = idx[~ok]
        if rest.size:
            out[rest] = _miller(n, flat[rest])
    return out.reshape(x.shape)


def jn_band(nmax, x):
    """J_0..J_nmax at a single x >= 0 by normalized backward recurrence."""
    x = float(x)
    out = np.zeros(nmax + 1)
    if x == 0.0:
        out[0] = 1.0
        return out
    m = miller_start(nmax, x)
    vals = np.zeros(m + 2)
    vals[m] = 1e-30
    norm = 0.0
    for k in range(m, 0, -1):
        vals[k - 1] = (2.0 * k / x) * vals[k] - vals[k + 1]
        if k - 1 > 0 and (k - 1) % 2 == 0:
            norm += 2.0 * vals[k - 1]
        if abs(vals[k - 1]) > _RESCALE:
            vals[k - 1 :] /= _RESCALE
            norm /= _RESCALE
    norm += vals[0]
    out[:] = vals[: nmax + 1] / norm
    return out


def rk4_tridiag(a0, h, nsteps, up, down):
    """Classical RK4 for dA_n/dz = up*A_{n-1} + down*A_{n+1} (zero outside)."""
    a = np.array(a0, dtype=complex)

    def rhs(v):
        d = np.empty_like(v)
        d[0] = 0.0
        d[1:] = up * v[:-1]
        d[:-1] += down * v[1:]
        return d

    for _ in range(nsteps):
        k1 = rhs(a)
        k2 = rhs(a + 0.5 * h * k1)
        k3 = rhs(a + 0.5 * h * k2)
        k4 = rhs(a + h * k3)
        a = a + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    return a
