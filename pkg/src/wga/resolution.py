"""Resolutions of the identity for the E(2) coherent states.

* Cartesian form: Cauchy line states paired through Bochner-Riesz kernels
  k_1(2|x - x'|) and k_0(2|x - x'|). Evaluated in the frequency domain,
  where every factor is supported on [-2, 2], with a truncated direct
  quadrature kept as a convergence-trend oracle.
* Polar form: circle states paired through K(theta) = sum_n e^{in theta}/J_n(2 r0)^2,
  evaluated in the Fourier index domain, with a high-precision theta-grid
  oracle.
* The kernel convolution identity behind the Cartesian form.
* The naive construction with measure r^{-lambda} dr, whose diagonal
  depends on n and diverges as lambda -> 0.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import mpmath
import numpy as np

from .lattice import TruncationWindow
from .quadrature import composite_gauss, gauss
from .specfun import (
    DomainError,
    KernelOrder,
    bessel_j,
    bessel_j_array,
    bessel_j_band,
    bessel_j_symmetric,
    bochner_riesz,
    log_gamma,
    gamma_fn,
    norm_const,
    truncation_index,
)

# prefactor of the Cartesian resolution as written: pi^{3/2} / (2 sqrt 2)
NOMINAL_PREFACTOR = math.pi**1.5 / (2.0 * math.sqrt(2.0))
# the literal weight 4 on the value-value term is not proportional to the identity; 2 is
DEFAULT_VALUE_WEIGHT = 2.0
SUPPORTED_CONV_ORDERS = (0.0, 0.5, 1.0, 1.5)


# Kernel convolution identity

@dataclass(frozen=True)
class KernelPair:
    """Two Bochner-Riesz orders and the argument scale s in k(s |x|)."""

    alpha: float
    beta: float
    scale: float = 1.0

    def __post_init__(self):
        a = KernelOrder(self.alpha).alpha
        b = KernelOrder(self.beta).alpha
        if not self.scale > 0:
            raise DomainError("kernel scale must be positive")
        object.__setattr__(self, "alpha", a)
        object.__setattr__(self, "beta", b)
        object.__setattr__(self, "scale", float(self.scale))


@dataclass(frozen=True)
class ConvolutionReport:
    lhs: float
    rhs: float
    diff: float
    divergent: bool = False


def convolution_identity_check(pair: KernelPair, x: float, x_p: float, nodes: int = 32) -> ConvolutionReport:
    """Compare both sides of the kernel convolution identity at separation |x - x'|.

    LHS = (1/sqrt(2 pi)) int k_a(s|x - x''|) k_b(s|x'' - x'|) dx'' is taken
    in the frequency domain. The transform of k_a(s|x|) is
    (sqrt(2 pi)/s) N_{a-1/2} (1 - (eps/s)^2)^{a-1/2} on |eps| < s, so with
    eps = s sin(phi):

        LHS = N_{a-1/2} N_{b-1/2} / (s sqrt(2 pi)) int cos^{2a+2b-1}(phi) cos(s d sin phi) dphi

    RHS = N_{a-1/2} N_{b-1/2} / N_{a+b-1} k_{a+b-1/2}(s d) / s.

    The pair a = b = 0 has a non-integrable spectrum (1 - (eps/s)^2)^{-1},
    and N_{-1} = 0; both sides are infinite and the report is flagged
    ``divergent``.
    """
    a, b, s = pair.alpha, pair.beta, pair.scale
    for o in (a, b):
        if o not in SUPPORTED_CONV_ORDERS:
            raise DomainError(f"convolution check supports orders {SUPPORTED_CONV_ORDERS}, got {o}")
    d = abs(float(x) - float(x_p))
    power = 2.0 * (a + b) - 1.0
    if power < 0:
        return ConvolutionReport(math.inf, math.inf, math.nan, True)
    pref = norm_const(a - 0.5) * norm_const(b - 0.5)
    panels = max(4, int(math.ceil(s * d / 4.0)))
    phi, w = composite_gauss(-0.5 * math.pi, 0.5 * math.pi, panels, nodes)
    integrand = np.cos(phi) ** power * np.cos(s * d * np.sin(phi))
    lhs = pref / (s * math.sqrt(2.0 * math.pi)) * float(np.dot(w, integrand))
    rhs = pref / norm_const(a + b - 1.0) * bochner_riesz(a + b - 0.5, s * d) / s
    return ConvolutionReport(lhs, rhs, abs(lhs - rhs))


# Cartesian resolution

def _phi_profiles(n_idx: np.ndarray, nodes: int):
    phi, w = gauss(-0.5 * math.pi, 0.5 * math.pi, nodes)
    e_minus = np.exp(-1j * np.outer(phi, n_idx))
    par = np.where(n_idx % 2 == 0, 1.0, -1.0)
    e_plus = np.exp(1j * np.outer(phi, n_idx)) * par
    return w, e_minus + e_plus, e_minus - e_plus


def cartesian_roi_spectral_matrix(
    n_max: int, nodes: int = 64, value_weight: float = DEFAULT_VALUE_WEIGHT
) -> np.ndarray:
    """<n|A|m> for |n|, |m| <= n_max by frequency-domain evaluation (unnormalized).

    J_n(2x) = (1/2pi) int_{-pi}^{pi} e^{i(2x sin t - n t)} dt. Folding t onto
    [-pi/2, pi/2] gives the profiles e^{-int} +- (-1)^n e^{int} at frequency
    eps = 2 sin t, and the kernel transforms of k_1(2|u|), k_0(2|u|) become
    cos t and 1/cos t. Both double integrals collapse to

        (w/4)(P/pi) int A_n conj(A_m) dt + (P/2pi) int C_n conj(C_m) dt

    with A = profile(+), C = profile(-), P the prefactor and w the weight
    of the value-value term.
    """
    n_idx = np.arange(-n_max, n_max + 1)
    w, a, c = _phi_profiles(n_idx, nodes)
    P = NOMINAL_PREFACTOR
    term_a = (a.T * w) @ a.conj()
    term_c = (c.T * w) @ c.conj()
    return (value_weight / 4.0) * (P / math.pi) * term_a + (P / (2.0 * math.pi)) * term_c


@dataclass(frozen=True)
class Normalization:
    """Measured constant c with c^{-1} A = I, next to the written prefactor."""

    measured: float
    nominal_prefactor: float
    value_weight: float

    @property
    def ratio(self) -> float:
        return self.measured / self.nominal_prefactor


def cartesian_normalization(value_weight: float = DEFAULT_VALUE_WEIGHT, nodes: int = 64) -> Normalization:
    """Measure c = <0|A|0> from the spectral path."""
    c = cartesian_roi_spectral_matrix(0, nodes, value_weight)[0, 0].real
    return Normalization(float(c), NOMINAL_PREFACTOR, float(value_weight))


@dataclass(frozen=True)
class DirectElement:
    value: complex
    L: float
    h: float


def cartesian_roi_direct(
    n: int, m: int, L: float, h: float = 0.05, value_weight: float = DEFAULT_VALUE_WEIGHT
) -> DirectElement:
    """<n|A|m> by trapezoid double quadrature on [-L, L]^2 (unnormalized).

    The kernels are Toeplitz on the uniform grid, so the inner integral is
    a discrete convolution. Converges slowly (oscillatory 1/sqrt tails).
    """
    if L is None or not L > 0:
        raise ValueError("direct evaluation needs a domain half-width L > 0")
    npts = int(round(2 * L / h)) + 1
    x = np.linspace(-L, L, npts)
    wt = np.full(npts, h)
    wt[0] = wt[-1] = 0.5 * h
    u = 2.0 * h * np.arange(npts)  # 2|x - x'| on the grid
    k0 = bessel_j_array(0, u)
    k1 = np.empty_like(u)
    k1[0] = 0.5
    k1[1:] = bessel_j_array(1, u[1:]) / u[1:]
    k0 = np.concatenate([k0[:0:-1], k0])
    k1 = np.concatenate([k1[:0:-1], k1])
    t = 2.0 * x
    jn, jm = bessel_j_array(n, t), bessel_j_array(m, t)
    dn = (bessel_j_array(n - 1, t) + bessel_j_array(n + 1, t)) / math.sqrt(2.0)
    dm = (bessel_j_array(m - 1, t) + bessel_j_array(m + 1, t)) / math.sqrt(2.0)
    sl = slice(npts - 1, 2 * npts - 1)
    c1 = np.convolve(value_weight * k1, jm * wt)[sl]
    c0 = np.convolve(k0, dm * wt)[sl]
    val = NOMINAL_PREFACTOR * (np.dot(jn * wt, c1) + np.dot(dn * wt, c0))
    return DirectElement(complex(val), float(L), float(h))


def cartesian_roi_element(
    n: int,
    m: int,
    method: str = "spectral",
    nodes: int = 64,
    L: float | None = None,
    value_weight: float = DEFAULT_VALUE_WEIGHT,
    normalize: bool = True,
) -> complex:
    """<n|A|m> of the Cartesian resolution, divided by the measured c by default.

    ``method="spectral"`` uses ``nodes`` Gauss points in frequency;
    ``method="direct"`` needs the domain half-width ``L``.
    """
    if method == "spectral":
        k = max(abs(n), abs(m))
        mat = cartesian_roi_spectral_matrix(k, nodes, value_weight)
        v = complex(mat[n + k, m + k])
    elif method == "direct":
        if L is None:
            raise ValueError("direct method requires the domain half-width L")
        v = cartesian_roi_direct(n, m, L, value_weight=value_weight).value
    else:
        raise ValueError(f"method must be 'spectral' or 'direct', got {method!r}")
    if normalize:
        v /= cartesian_normalization(value_weight, nodes).measured
    return v


@dataclass(frozen=True)
class CrossOverlapReport:
    """Sandwiched elements of the normalized Cartesian A and their targets.

    Order: value-value, derivative-derivative, value-derivative.
    """

    values: tuple
    targets: tuple
    deviations: tuple


def cartesian_roi_cross_overlap(
    x: float, x_p: float, nodes: int = 64, value_weight: float = DEFAULT_VALUE_WEIGHT
) -> CrossOverlapReport:
    """<x|A|x'> for the value and derivative line states vs k_0, 2k_1, 0."""
    from .coherent import cauchy_line_states

    need = truncation_index(2.0 * max(abs(x), abs(x_p))) + 1
    win = TruncationWindow(need)
    mat = cartesian_roi_spectral_matrix(need, nodes, value_weight)
    mat = mat / cartesian_normalization(value_weight, nodes).measured
    p, d = cauchy_line_states(x, win)
    pp, dp = cauchy_line_states(x_p, win)

    def sand(u, v):
        return complex(np.vdot(u.coeffs, mat @ v.coeffs))

    vals = (sand(p, pp), sand(d, dp), sand(p, dp))
    sep = 2.0 * abs(x - x_p)
    targets = (bochner_riesz(0, sep), 2.0 * bochner_riesz(1, sep), 0.0)
    devs = tuple(abs(v - t) for v, t in zip(vals, targets))
    return CrossOverlapReport(vals, targets, devs)


# Polar resolution

# coefficients above this are never summed pointwise
POINTWISE_LIMIT = 1e12
OVERFLOW_LIMIT = 1e300


def _check_r0(r0):
    from .coherent import check_circle_radius

    return check_circle_radius(r0)


def max_kernel_cutoff(r0: float) -> int:
    """Largest N_K with 1/J_{N_K}(2 r0)^2 < 1e300."""
    r0 = _check_r0(r0)
    n = 1
    while True:
        band = bessel_j_band(n + 1, 2.0 * r0)
        j = band[n + 1]
        if j == 0 or 1.0 / (j * j) >= OVERFLOW_LIMIT:
            return n
        n += 1


@dataclass(frozen=True, eq=False)
class PolarKernel:
    """Fourier coefficients 1/J_n(2 r0)^2 of K(theta) for |n| <= cutoff."""

    r0: float
    cutoff: int
    coefficients: np.ndarray

    def coefficient(self, n: int) -> float:
        if abs(n) > self.cutoff:
            raise IndexError(f"index {n} beyond kernel cutoff {self.cutoff}")
        return float(self.coefficients[n + self.cutoff])

    def value(self, theta: float) -> float:
        """K(theta) resummed pointwise; refused when coefficients are huge."""
        if np.abs(self.coefficients).max() > POINTWISE_LIMIT:
            raise OverflowError("kernel coefficients exceed 1e12; stay in the Fourier index domain")
        n = np.arange(-self.cutoff, self.cutoff + 1)
        return float(np.sum(self.coefficients * np.cos(n * theta)))


def polar_kernel(r0: float = 0.5, cutoff: int = 12) -> PolarKernel:
    """Convolution-inverse kernel on the circle |alpha| = r0."""
    r0 = _check_r0(r0)
    cutoff = int(cutoff)
    if cutoff < 1:
        raise ValueError("cutoff must be positive")
    band = bessel_j_band(cutoff, 2.0 * r0)
    sq = band * band
    if np.any(sq == 0) or np.any(1.0 / sq[sq > 0] >= OVERFLOW_LIMIT):
        raise OverflowError(
            f"1/J_n(2 r0)^2 exceeds 1e300 for n <= {cutoff}; largest admissible cutoff at r0 = {r0} "
            f"is {max_kernel_cutoff(r0)}"
        )
    half = 1.0 / sq
    coefs = np.concatenate([half[:0:-1], half])
    coefs.setflags(write=False)
    return PolarKernel(r0, cutoff, coefs)


def _check_index(kernel, *idx):
    for i in idx:
        if abs(i) > kernel.cutoff:
            raise IndexError(f"index {i} beyond kernel cutoff {kernel.cutoff}")


def polar_roi_element(n: int, m: int, kernel: PolarKernel) -> complex:
    """<n|A_p|m> in the Fourier index domain.

    Both angular integrals select one Fourier mode of K, leaving
    delta_{nm} K_{-n} J_n(2 r0) J_m(2 r0).
    """
    _check_index(kernel, n, m)
    if n != m:
        return 0j
    j = bessel_j_symmetric(kernel.cutoff, 2.0 * kernel.r0)
    return complex(kernel.coefficients[kernel.cutoff - n] * j[n + kernel.cutoff] * j[m + kernel.cutoff])


def polar_roi_matrix(kernel: PolarKernel) -> np.ndarray:
    """Full Fourier-path matrix over |n|, |m| <= cutoff."""
    j = bessel_j_symmetric(kernel.cutoff, 2.0 * kernel.r0)
    return np.diag(kernel.coefficients[::-1] * j * j).astype(complex)


@lru_cache(maxsize=16)
def _grid_sums(r0: float, cutoff: int, M: int, dps: int):
    """Bessel values and the two circulant sums of the theta-grid oracle."""
    with mpmath.workdps(dps):
        r = mpmath.mpf(r0)
        jr = {p: mpmath.besselj(p, 2 * r) for p in range(-cutoff, cutoff + 1)}
        theta = [2 * mpmath.pi * j / M for j in range(M)]
        kvals = [mpmath.fsum(mpmath.cos(p * t) / jr[p] ** 2 for p in jr) for t in theta]
        # inner[n] = sum_d K(theta_d) e^{i n theta_d}; outer[q] = sum_l e^{i q theta_l}
        inner = {
            n: mpmath.fsum(kv * mpmath.expjpi(2 * n * j / mpmath.mpf(M)) for j, kv in enumerate(kvals))
            for n in jr
        }
        outer = {
            q: mpmath.fsum(mpmath.expjpi(2 * q * j / mpmath.mpf(M)) for j in range(M))
            for q in range(-2 * cutoff, 2 * cutoff + 1)
        }
        return jr, inner, outer


def polar_roi_element_grid(n: int, m: int, kernel: PolarKernel, M: int = 64, dps: int = 50) -> complex:
    """Oracle for <n|A_p|m>: M-point trapezoid grid in theta and theta'.

    K is resummed pointwise at the grid differences and the Bessel values
    are recomputed, all at ``dps`` digits, since float64 cancellation
    against coefficients near 1/J_12(1)^2 ~ 1e24 would swamp the result.
    The double sum reduces over the circulant structure K(theta_j - theta_l):

        (1/M^2) J_n J_m sum_l e^{i(n-m) theta_l} sum_d K(theta_d) e^{i n theta_d}
    """
    _check_index(kernel, n, m)
    if M < 4 * kernel.cutoff + 1:
        raise ValueError(f"grid needs M >= 4 N_K + 1 = {4 * kernel.cutoff + 1} nodes")
    jr, inner, outer = _grid_sums(kernel.r0, kernel.cutoff, int(M), int(dps))
    with mpmath.workdps(dps):
        return complex(jr[n] * jr[m] * inner[n] * outer[n - m] / M**2)


def polar_roi_matrix_grid(kernel: PolarKernel, M: int = 64, dps: int = 50) -> np.ndarray:
    """Grid-oracle matrix over |n|, |m| <= cutoff."""
    idx = range(-kernel.cutoff, kernel.cutoff + 1)
    return np.array([[polar_roi_element_grid(n, m, kernel, M, dps) for m in idx] for n in idx])


@dataclass(frozen=True)
class PolarOverlapReport:
    value: complex
    target: float
    diff: float
    tail: float
    bound: float


def polar_roi_overlap(theta: float, theta_p: float, kernel: PolarKernel) -> PolarOverlapReport:
    """<theta|A_p|theta'> from the Fourier-path matrix vs J_0(4 r0 sin((theta'-theta)/2)).

    ``tail`` is the omitted sum_{|n| > N_K} J_n(2 r0)^2. ``bound`` adds a
    rounding allowance of 16 eps times the sum of term magnitudes.
    """
    nk = kernel.cutoff
    r0 = kernel.r0
    n = np.arange(-nk, nk + 1)
    j = bessel_j_symmetric(nk, 2.0 * r0)
    u = j * np.exp(1j * n * theta)
    v = j * np.exp(1j * n * theta_p)
    mat = polar_roi_matrix(kernel)
    terms = np.conj(u) * (mat @ v)
    value = complex(np.sum(terms))
    target = bessel_j(0, 4.0 * r0 * math.sin(0.5 * (theta_p - theta)))
    big = max(truncation_index(2.0 * r0), nk + 2)
    full = bessel_j_band(big, 2.0 * r0)
    tail = float(2.0 * np.sum(full[nk + 1 :] ** 2))
    bound = tail + 16.0 * np.finfo(float).eps * float(np.sum(np.abs(terms)))
    return PolarOverlapReport(value, target, abs(value - target), tail, bound)


# Naive construction

def _check_lambda_open(lam):
    lam = float(lam)
    if not 0.0 < lam < 1.0:
        raise DomainError(f"lambda must lie in (0, 1), got {lam}")
    return lam


def naive_diag_closed(n: int, lam: float) -> float:
    """int_0^inf J_n(2r)^2 r^{-lambda} dr in closed form.

    Gamma(lambda) / (2 Gamma((lambda+1)/2)^2) * Gamma(|n| + (1-lambda)/2) / Gamma(|n| + (1+lambda)/2)
    """
    lam = _check_lambda_open(lam)
    a = abs(int(n))
    pre = gamma_fn(lam) / (2.0 * gamma_fn(0.5 * (lam + 1.0)) ** 2)
    return pre * math.exp(log_gamma(a + 0.5 * (1.0 - lam)) - log_gamma(a + 0.5 * (1.0 + lam)))


def naive_normalized(n: int, lam: float) -> float:
    """(2 Gamma((lambda+1)/2)^2 / Gamma(lambda)) times the closed form; tends to 1 as lambda -> 0."""
    lam = _check_lambda_open(lam)
    a = abs(int(n))
    return math.exp(log_gamma(a + 0.5 * (1.0 - lam)) - log_gamma(a + 0.5 * (1.0 + lam)))


def naive_tail(n: int, lam: float, L: float) -> float:
    """int_L^inf of the averaged asymptotic J_n(2r)^2 ~ (1 + (4n^2 - 1)/(32 r^2)) / (2 pi r), times r^{-lambda}."""
    return L ** (-lam) / (2.0 * math.pi * lam) + (4.0 * n * n - 1.0) / (64.0 * math.pi) * L ** (-lam - 2.0) / (
        lam + 2.0
    )


def naive_diag_quadrature(
    n: int, lam: float, L: float, tail: bool = True, panel_width: float = 0.5, nodes: int = 16
) -> float:
    """int_0^L J_n(2r)^2 r^{-lambda} dr, plus the averaged tail for lambda in (0, 1).

    lambda = -1 is the r dr measure and lambda = 0 the dr measure; both grow
    without bound in L. For lambda > 0 the piece on [0, 1] uses
    r = t^{1/(1-lambda)}, which absorbs the r^{-lambda} endpoint behaviour.
    """
    lam = float(lam)
    if not -1.0 <= lam < 1.0:
        raise DomainError(f"lambda must lie in [-1, 1), got {lam}")
    if not L > 0:
        raise DomainError("L must be positive")
    a = abs(int(n))
    head = min(1.0, L)
    if lam > 0:
        t, w = composite_gauss(0.0, head ** (1.0 - lam), 4, 32)
        r = t ** (1.0 / (1.0 - lam))
        total = float(np.dot(w, bessel_j_array(a, 2.0 * r) ** 2)) / (1.0 - lam)
    else:
        r, w = composite_gauss(0.0, head, 4, 32)
        total = float(np.dot(w, bessel_j_array(a, 2.0 * r) ** 2 * r ** (-lam)))
    if L > head:
        panels = int(math.ceil((L - head) / panel_width))
        r, w = composite_gauss(head, L, panels, nodes)
        total += float(np.dot(w, bessel_j_array(a, 2.0 * r) ** 2 * r ** (-lam)))
    if tail and lam > 0:
        total += naive_tail(a, lam, L)
    return total
