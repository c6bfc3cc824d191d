"""Scalar special functions: Bessel J_n, spherical Bessel j_n, Bessel zeros,
Gamma, and the Bochner-Riesz kernels k_a(x) = J_a(x) / x**a.

Integer-order J_n uses the power series for |x| <= 12 and, beyond that, the
large-argument expansion when it converges to double precision or Miller's
backward recurrence otherwise. Banded evaluation (all orders 0..n_max at
one argument) always uses the normalized backward recurrence.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from numbers import Real

import numpy as np

from . import _kernels


class DomainError(ValueError):
    """An argument lies outside the domain of the function."""


@dataclass(frozen=True)
class EvaluationPolicy:
    """Cutoffs for the series evaluated in pure Python."""

    max_terms: int = 300
    abs_tol: float = 1e-17
    rel_tol: float = 1e-16

    def __post_init__(self):
        if self.max_terms < 1 or self.abs_tol <= 0 or self.rel_tol <= 0:
            raise ValueError("EvaluationPolicy needs max_terms >= 1 and positive tolerances")


DEFAULT_POLICY = EvaluationPolicy()


def truncation_index(x: float) -> int:
    """Order N(x) past which J_n(x) is negligible (tail below ~1e-15).

    N(x) = ceil(|x| + 12 (|x| + 1)**(1/3) + 15).
    """
    return _kernels.truncation_index(float(x))


def _check_finite(x):
    if not math.isfinite(x):
        raise DomainError(f"argument must be finite, got {x!r}")


def bessel_j(n: int, x: float) -> float:
    """Bessel function of the first kind J_n(x) for integer n and real x."""
    n = int(n)
    x = float(x)
    _check_finite(x)
    m = abs(n)
    sign = 1.0
    if n < 0 and m % 2:
        sign = -sign
    if x < 0 and m % 2:
        sign = -sign
    return sign * float(_kernels.jn_array(m, np.array([abs(x)]))[0])


def bessel_j_array(n: int, x) -> np.ndarray:
    """Vectorized J_n over an array of real arguments."""
    n = int(n)
    x = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(x)):
        raise DomainError("arguments must be finite")
    m = abs(n)
    out = _kernels.jn_array(m, np.abs(x))
    if m % 2:
        parity = np.where(x < 0, -1.0, 1.0)
        if n < 0:
            parity = -parity
        out = out * parity
    return out


_SMALL_X = 1e-3


def _band_small(n_max: int, x: float) -> np.ndarray:
    # the backward recurrence overflows in one step as x -> 0; three series
    # terms are exact to double precision here since (x/2)^6 < 1e-19
    out = np.zeros(n_max + 1)
    q = 0.25 * x * x
    lead = 1.0
    for n in range(n_max + 1):
        if n:
            lead *= 0.5 * x / n
        if lead == 0.0:
            break
        out[n] = lead * (1.0 - q / (n + 1) * (1.0 - q / (2 * (n + 2))))
    return out


def bessel_j_band(n_max: int, x: float) -> np.ndarray:
    """Array ``[J_0(x), ..., J_{n_max}(x)]`` from one backward recurrence."""
    if n_max < 0:
        raise DomainError("n_max must be non-negative")
    x = float(x)
    _check_finite(x)
    if 0.0 < abs(x) < _SMALL_X:
        out = _band_small(int(n_max), abs(x))
    else:
        out = _kernels.jn_band(int(n_max), abs(x))
    if x < 0:
        out[1::2] *= -1.0
    return out


def bessel_j_symmetric(n_max: int, x: float) -> np.ndarray:
    """``J_n(x)`` for n = -n_max..n_max, ordered by n."""
    band = bessel_j_band(n_max, x)
    neg = band[:0:-1].copy()
    neg[(n_max - np.arange(n_max)) % 2 == 1] *= -1.0
    return np.concatenate([neg, band])


# Lanczos approximation, g = 7, nine coefficients
_LANCZOS_G = 7.0
_LANCZOS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)


def _lanczos_sum(z):
    a = _LANCZOS[0]
    for i in range(1, 9):
        a += _LANCZOS[i] / (z + i)
    return a


def gamma_fn(x: float) -> float:
    """Gamma function; reflection formula below 1/2."""
    x = float(x)
    _check_finite(x)
    if x <= 0 and x == math.floor(x):
        raise DomainError(f"Gamma has a pole at {x}")
    if x < 0.5:
        return math.pi / (math.sin(math.pi * x) * gamma_fn(1.0 - x))
    z = x - 1.0
    t = z + _LANCZOS_G + 0.5
    return math.sqrt(2 * math.pi) * math.exp((z + 0.5) * math.log(t) - t) * _lanczos_sum(z)


def log_gamma(x: float) -> float:
    """log Gamma(x) for x > 0."""
    x = float(x)
    if not x > 0:
        raise DomainError("log_gamma needs x > 0")
    if x < 0.5:
        return math.log(math.pi / math.sin(math.pi * x)) - log_gamma(1.0 - x)
    z = x - 1.0
    t = z + _LANCZOS_G + 0.5
    return 0.5 * math.log(2 * math.pi) + (z + 0.5) * math.log(t) - t + math.log(_lanczos_sum(z))


@dataclass(frozen=True)
class KernelOrder:
    """Order of a Bochner-Riesz kernel: -1/2 or a non-negative multiple of 1/2."""

    alpha: float

    def __post_init__(self):
        a = float(self.alpha)
        if not (2 * a).is_integer() or a < -0.5:
            raise DomainError(f"kernel order must be -1/2 or a non-negative half-integer, got {a}")
        object.__setattr__(self, "alpha", a)

    @property
    def is_integer(self) -> bool:
        return float(self.alpha).is_integer()


def _order(order) -> float:
    if isinstance(order, KernelOrder):
        return order.alpha
    if not isinstance(order, Real):
        raise TypeError(f"kernel order must be a real number, got {type(order).__name__}")
    return KernelOrder(order).alpha


def norm_const(order) -> float:
    """N_a = 1 / (2**a Gamma(a + 1)), the value of k_a at the origin."""
    a = _order(order)
    return 1.0 / (2.0**a * gamma_fn(a + 1.0))


def _kernel_series(a, x, policy):
    # k_a(x) = sum_m (-1)^m (x/2)^{2m} / (2^a m! Gamma(m + a + 1))
    t = norm_const(a)
    s = t
    q = 0.25 * x * x
    for m in range(1, policy.max_terms):
        t = -t * q / (m * (m + a))
        s += t
        if abs(t) <= policy.rel_tol * abs(s) + policy.abs_tol:
            break
    return s


def bochner_riesz(order, x: float, policy: EvaluationPolicy = DEFAULT_POLICY) -> float:
    """Bochner-Riesz kernel k_a(x) = J_a(x) / x**a for x >= 0.

    The removable singularity is filled in, k_a(0) = N_a. Half-integer orders
    use the trigonometric closed forms of J_{l+1/2}.
    """
    a = _order(order)
    x = float(x)
    _check_finite(x)
    if x < 0:
        raise DomainError("Bochner-Riesz kernels are evaluated at x >= 0")
    if x <= 1.0:
        return _kernel_series(a, x, policy)
    if float(a).is_integer():
        n = int(a)
        return bessel_j(n, x) / x**n
    if a == -0.5:
        return math.sqrt(2.0 / math.pi) * math.cos(x)
    ell = int(a - 0.5)
    return math.sqrt(2.0 / math.pi) * spherical_j(ell, x) / x**ell


def bochner_riesz_array(order, x) -> np.ndarray:
    """Vectorized k_a over x >= 0 for integer or half-integer orders."""
    a = _order(order)
    x = np.asarray(x, dtype=float)
    if np.any(x < 0):
        raise DomainError("Bochner-Riesz kernels are evaluated at x >= 0")
    out = np.empty_like(x)
    small = x <= 1.0
    if small.any():
        out[small] = [_kernel_series(a, v, DEFAULT_POLICY) for v in x[small]]
    big = ~small
    if big.any():
        xb = x[big]
        if float(a).is_integer():
            out[big] = bessel_j_array(int(a), xb) / xb ** int(a)
        else:
            out[big] = [bochner_riesz(a, v) for v in xb]
    return out


def spherical_j(n: int, x: float, policy: EvaluationPolicy = DEFAULT_POLICY) -> float:
    """Spherical Bessel function j_n(x); j_0(x) = sin(x)/x."""
    n = int(n)
    if n < 0:
        raise DomainError("spherical_j needs n >= 0")
    x = float(x)
    _check_finite(x)
    if x < 0:
        return (-1.0) ** n * spherical_j(n, -x, policy)
    if x == 0.0:
        return 1.0 if n == 0 else 0.0
    if x > n:
        j0 = math.sin(x) / x
        if n == 0:
            return j0
        j1 = math.sin(x) / (x * x) - math.cos(x) / x
        for ell in range(1, n):
            j0, j1 = j1, (2 * ell + 1) / x * j1 - j0
        return j1
    # x <= n: the series terms decrease monotonically
    dfact = 1.0
    for k in range(1, 2 * n + 2, 2):
        dfact *= k
    t = x**n / dfact
    s = t
    q = 0.5 * x * x
    for m in range(1, policy.max_terms):
        t = -t * q / (m * (2 * n + 2 * m + 1))
        s += t
        if abs(t) <= policy.rel_tol * abs(s):
            break
    return s


def _bessel_j_prime(n, x):
    if n == 0:
        return -bessel_j(1, x)
    return bessel_j(n - 1, x) - n / x * bessel_j(n, x)


def bessel_zero(n: int, j: int) -> float:
    """j-th positive zero z_{n,j} of J_n for n >= 0, j >= 1."""
    n = int(n)
    j = int(j)
    if n < 0 or j < 1:
        raise DomainError("bessel_zero needs n >= 0 and j >= 1")
    step = 0.5
    a = max(float(n), step)
    fa = bessel_j(n, a)
    found = 0
    while True:
        b = a + step
        fb = bessel_j(n, b)
        if fa == 0.0 or fa * fb < 0:
            found += 1
            if found == j:
                break
        a, fa = b, fb
    if fa == 0.0:
        return a
    lo, hi, flo = a, b, fa
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        fm = bessel_j(n, mid)
        if fm == 0.0:
            return mid
        if flo * fm < 0:
            hi = mid
        else:
            lo, flo = mid, fm
        if hi - lo < 1e-15 * hi:
            break
    z = 0.5 * (lo + hi)
    for _ in range(3):
        dz = bessel_j(n, z) / _bessel_j_prime(n, z)
        if not lo - 1e-12 <= z - dz <= hi + 1e-12:
            break
        z -= dz
    return z
