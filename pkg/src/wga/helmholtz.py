"""Helmholtz machinery on the label plane (wave number k = 2 by default).

Cartesian side: the band-limited propagator Delta(x, y), its y-derivative,
and reconstruction of a solution from its Cauchy data on y = 0. Polar side:
the circle propagator sum_n J_n(kr)/J_n(kr0) e^{in theta} and reconstruction
from a boundary trace on |alpha| = r0, routed through Fourier coefficients.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from math import erf
from typing import Callable

import numpy as np

from .coherent import coefficient_xy
from .quadrature import GAUSS_LEGENDRE, QuadratureSpec, composite_gauss
from .specfun import DomainError, bessel_j, bessel_j_array, bessel_j_band, bessel_zero, spherical_j

INV_SQRT_2PI = 1.0 / math.sqrt(2.0 * math.pi)

# smooth-kernel taper: spectrum continued past |eps| = k, cut at k + EDGE with width WIDTH
TAPER_EDGE = 1.0
TAPER_WIDTH = 1.0 / 6.0
_TAPER_REACH = TAPER_EDGE + 8.0 * TAPER_WIDTH


@dataclass(frozen=True)
class CauchyLineData:
    """Cauchy data on the line y = 0.

    ``value_fn`` gives psi(x, 0) and ``deriv_fn`` the raw derivative
    d psi / dy at y = 0. Both must accept numpy arrays.
    """

    value_fn: Callable
    deriv_fn: Callable
    support_hint: float = 0.0

    def __post_init__(self):
        if not (callable(self.value_fn) and callable(self.deriv_fn)):
            raise TypeError("value_fn and deriv_fn must be callable")
        if not self.support_hint >= 0:
            raise ValueError("support_hint must be non-negative")

    def sample(self, xs: np.ndarray):
        v = np.asarray(self.value_fn(xs), dtype=complex)
        d = np.asarray(self.deriv_fn(xs), dtype=complex)
        if v.shape != xs.shape or d.shape != xs.shape:
            raise ValueError("line-data callables must map arrays to arrays of the same shape")
        if not (np.all(np.isfinite(v)) and np.all(np.isfinite(d))):
            raise ValueError("line data is not finite on the quadrature range")
        return v, d


def check_admissible_radius(r0: float, k: float = 2.0) -> float:
    """r0 must satisfy 0 < k r0 < z_{0,1}, so no J_n(k r0) vanishes."""
    r0 = float(r0)
    z01 = bessel_zero(0, 1)
    if not 0.0 < k * r0 < z01:
        raise DomainError(
            f"r0 = {r0} not admissible: need 0 < k r0 < z01 = {z01:.10f} (r0 < {z01 / k:.10f} at k = {k})"
        )
    return r0


@dataclass(frozen=True)
class CircleData:
    """Boundary trace psi(r0, theta) on the circle of radius r0."""

    r0: float
    boundary_fn: Callable
    fourier_cutoff: int = 64

    def __post_init__(self):
        check_admissible_radius(self.r0)
        if int(self.fourier_cutoff) != self.fourier_cutoff or self.fourier_cutoff < 1:
            raise ValueError("fourier_cutoff must be a positive integer")
        if not callable(self.boundary_fn):
            raise TypeError("boundary_fn must be callable")


# Cartesian propagator

def _phi_rule(span: float, quad: QuadratureSpec | None):
    if quad is not None:
        return quad.nodes(-0.5 * math.pi, 0.5 * math.pi)
    panels = max(4, int(math.ceil(span / 6.0)))
    return composite_gauss(-0.5 * math.pi, 0.5 * math.pi, panels, 20)


def delta_cartesian(x: float, y: float, k: float = 2.0, quad: QuadratureSpec | None = None) -> float:
    """Helmholtz propagator Delta(x, y).

    Defined by (1/sqrt(2 pi)) int_{-k}^{k} e^{i eps x} sin(kappa y)/kappa d eps,
    kappa = sqrt(k^2 - eps^2). With eps = k sin(phi) the integrand becomes
    cos(k x sin phi) sin(k y cos phi), smooth on [-pi/2, pi/2].
    """
    if not k > 0:
        raise DomainError("wave number k must be positive")
    phi, w = _phi_rule(k * (abs(x) + abs(y)), quad)
    f = np.cos(k * x * np.sin(phi)) * np.sin(k * y * np.cos(phi))
    return float(INV_SQRT_2PI * np.dot(w, f))


def ddelta_dy(x: float, y: float, k: float = 2.0, quad: QuadratureSpec | None = None) -> float:
    """dDelta/dy, differentiated under the integral (cosine kernel)."""
    if not k > 0:
        raise DomainError("wave number k must be positive")
    phi, w = _phi_rule(k * (abs(x) + abs(y)), quad)
    c = np.cos(phi)
    f = np.cos(k * x * np.sin(phi)) * np.cos(k * y * c) * k * c
    return float(INV_SQRT_2PI * np.dot(w, f))


def delta_cartesian_series(x: float, y: float, k: float = 2.0, n_terms: int = 60) -> float:
    """Spherical-Bessel series for Delta read with R = k (exploratory).

    sqrt(2/pi) R y sum_n (-1)^n n!/(2n+1)! (2 R y^2 / x)^n j_n(R x).
    """
    R = float(k)
    if x == 0:
        raise DomainError("series form is singular at x = 0")
    total = 0.0
    coef = 1.0
    q = 2.0 * R * y * y / x
    for n in range(n_terms):
        if n:
            coef *= -q * n / ((2 * n) * (2 * n + 1))
        total += coef * spherical_j(n, R * x)
    return math.sqrt(2.0 / math.pi) * R * y * total


def _spectral_kernels(y: float, k: float, kernel: str, span: float):
    """Frequency nodes, weights and the two kernel spectra at height y."""
    if kernel == "sharp":
        panels = max(16, int(math.ceil(k * span / 20.0)))
        phi, w = composite_gauss(-0.5 * math.pi, 0.5 * math.pi, panels, 32)
        eps = k * np.sin(phi)
        kap = k * np.cos(phi)
        # d eps = kappa d phi absorbs the 1/kappa of the sine kernel
        return eps, w, np.cos(kap * y) * kap, np.sin(kap * y)
    if kernel != "smooth":
        raise ValueError(f"kernel must be 'smooth' or 'sharp', got {kernel!r}")
    emax = k + _TAPER_REACH
    panels = max(40, int(math.ceil(2.0 * emax * span / 20.0)))
    eps, w = composite_gauss(-emax, emax, panels, 32)
    chi = 0.5 * (
        np.array([erf(v) for v in (eps + k + TAPER_EDGE) / TAPER_WIDTH])
        - np.array([erf(v) for v in (eps - k - TAPER_EDGE) / TAPER_WIDTH])
    )
    q = k * k - eps * eps
    root = np.sqrt(np.abs(q))
    safe = np.where(root > 0, root, 1.0)
    inside = q >= 0
    fc = np.where(inside, np.cos(root * y), np.cosh(root * y))
    fs = np.where(root > 0, np.where(inside, np.sin(root * y), np.sinh(root * y)) / safe, y)
    return eps, w, fc * chi, fs * chi


def cauchy_quad(L: float, panels_per_unit: float = 2.0, nodes_per_panel: int = 16) -> QuadratureSpec:
    """Composite Gauss spec on [-L, L] with ~1/panels_per_unit wide panels."""
    return QuadratureSpec(GAUSS_LEGENDRE, nodes_per_panel, max(1, int(math.ceil(2 * L * panels_per_unit))), L)


def cauchy_reconstruct(
    data: CauchyLineData,
    x: float,
    y: float,
    quad: QuadratureSpec | None = None,
    k: float = 2.0,
    kernel: str = "smooth",
) -> complex:
    """Solution psi(x, y) rebuilt from its Cauchy data on y = 0.

    psi(x, y) = (1/sqrt(2 pi)) int dx' [Delta(x-x', y) dpsi(x') + dDelta/dy(x-x', y) psi(x')],
    truncated to |x'| <= L. In frequency form both kernels are
    (1/2 pi) int e^{i eps u} F(eps) d eps with F = sin(kappa y)/kappa and cos(kappa y).

    ``kernel="sharp"`` cuts F at |eps| = k exactly as the propagator is
    defined. ``kernel="smooth"`` (default) continues F analytically past
    |eps| = k (cos -> cosh) and tapers it with an erf window. Both act
    identically on data whose spectrum lies in [-k, k], but the smooth
    kernel decays fast in space, so the truncated integral converges
    quickly instead of like L^{-1/2}.
    """
    if y < 0:
        raise DomainError("reconstruction height y must be non-negative")
    if not k > 0:
        raise DomainError("wave number k must be positive")
    quad = quad or cauchy_quad(60.0)
    if quad.L < data.support_hint:
        raise ValueError(f"quadrature half-width {quad.L} below data support hint {data.support_hint}")
    xs, ws = quad.nodes(-quad.L, quad.L)
    v, d = data.sample(xs)
    eps, we, fc, fs = _spectral_kernels(float(y), float(k), kernel, quad.L + abs(x))
    u = x - xs
    # frequency integral per spatial node: (1/2pi) sum_e e^{i eps u} F(eps) w_e
    ph = np.exp(1j * np.outer(u, eps))
    kc = ph @ (fc * we) / (2.0 * math.pi)
    ks = ph @ (fs * we) / (2.0 * math.pi)
    return complex(np.dot(ws, kc * v + ks * d))


def coefficient_field(n: int) -> Callable[[float, float], complex]:
    """The coherent coefficient c_n as a field (x, y) -> c_n(x + i y)."""

    def field(x, y):
        return coefficient_xy(n, x, y)

    return field


def coefficient_line_data(n: int) -> CauchyLineData:
    """Cauchy data of c_n on y = 0: J_n(2x) and i (J_{n+1}(2x) + J_{n-1}(2x))."""

    def value(xs):
        return bessel_j_array(n, 2.0 * np.asarray(xs, dtype=float)).astype(complex)

    def deriv(xs):
        t = 2.0 * np.asarray(xs, dtype=float)
        return 1j * (bessel_j_array(n + 1, t) + bessel_j_array(n - 1, t))

    return CauchyLineData(value, deriv, 0.0)


# Polar propagator

def _ratio_band(n_cut: int, r: float, r0: float, k: float) -> np.ndarray:
    num = bessel_j_band(n_cut, k * r)
    den = bessel_j_band(n_cut, k * r0)
    if np.any(den == 0) or not np.all(np.isfinite(den)):
        raise FloatingPointError(f"J_n(k r0) underflows below n = {n_cut}; lower the cutoff")
    return num / den


def delta_polar_coefficients(r: float, r0: float, k: float = 2.0, n_cut: int | None = None) -> np.ndarray:
    """Fourier coefficients J_n(kr)/J_n(kr0) for n = -n_cut..n_cut."""
    r0 = check_admissible_radius(r0, k)
    r = float(r)
    if r < 0:
        raise DomainError("r must be non-negative")
    if n_cut is None:
        if r >= r0:
            raise DomainError(
                "the polar propagator does not converge for r >= r0; pass an explicit n_cut "
                "or use circle_reconstruct, which pairs growth with coefficient decay"
            )
        n_cut = _polar_cutoff(r, r0)
    n_cut = int(n_cut)
    if n_cut < 1:
        raise ValueError("n_cut must be positive")
    half = _ratio_band(n_cut, r, r0, k)
    # J_{-n}/J_{-n} = J_n/J_n
    return np.concatenate([half[:0:-1], half])


def _polar_cutoff(r, r0):
    if r == 0:
        return 1
    # terms behave like (r/r0)^n
    return min(int(math.ceil(math.log(1e-18) / math.log(r / r0))) + 8, 4000)


def delta_polar(theta: float, r: float, r0: float, k: float = 2.0, n_cut: int | None = None) -> complex:
    """Polar propagator sum_{|n| <= n_cut} J_n(kr)/J_n(kr0) e^{i n theta}.

    Absolutely convergent for r < r0, where n_cut defaults to the order at
    which (r/r0)^n drops below 1e-18. For r >= r0 the caller must give n_cut.
    """
    coef = delta_polar_coefficients(r, r0, k, n_cut)
    m = (len(coef) - 1) // 2
    n = np.arange(-m, m + 1)
    return complex(np.sum(coef * np.exp(1j * n * theta)))


@dataclass(frozen=True)
class CircleReconstruction:
    value: complex
    n_cut: int
    noise_floor: float


def _tail_exponent(mag: np.ndarray) -> float:
    n = np.arange(len(mag))
    sel = mag > 0
    if sel.sum() < 2:
        return float("-inf")
    return float(np.polyfit(n[sel], np.log(mag[sel]), 1)[0])


def circle_reconstruct_report(
    data: CircleData, r: float, theta: float, k: float = 2.0, tol: float = 1e-17
) -> CircleReconstruction:
    """Circle reconstruction with the chosen cutoff and noise floor."""
    r0 = check_admissible_radius(data.r0, k)
    r = float(r)
    if r < 0:
        raise DomainError("r must be non-negative")
    nc = int(data.fourier_cutoff)
    m = 1 << int(math.ceil(math.log2(4 * nc + 1)))
    th = 2.0 * math.pi * np.arange(m) / m
    samples = np.asarray(data.boundary_fn(th), dtype=complex)
    if samples.shape != th.shape:
        samples = np.array([complex(data.boundary_fn(t)) for t in th])
    fft = np.fft.fft(samples) / m
    n = np.arange(-nc, nc + 1)
    a = fft[n % m]
    top = np.abs(a).max()
    floor = 64.0 * np.finfo(float).eps * top
    # coefficients at the band edge must have reached the rounding floor
    mag = np.abs(a)
    edge = np.maximum(mag[: nc // 4 + 1][::-1], mag[-(nc // 4 + 1) :])
    if top > 0 and edge.max() > floor:
        side = np.maximum(mag[nc:], mag[nc::-1])
        raise ValueError(
            "boundary Fourier coefficients do not decay within the cutoff "
            f"(measured tail exponent {_tail_exponent(side / top):.3e} per index); raise fourier_cutoff"
        )
    a = np.where(mag > floor, a, 0.0)
    ratio = np.zeros(2 * nc + 1)
    live = np.nonzero(a)[0]
    if live.size:
        reach = int(np.abs(n[live]).max())
        half = _ratio_band(reach, r, r0, k)
        ratio[live] = half[np.abs(n[live])]
    terms = a * ratio * np.exp(1j * n * theta)
    mags = np.abs(terms)
    total = np.sum(terms)
    keep = mags >= tol * max(abs(total), mags.max(initial=0.0))
    n_cut = int(np.abs(n[keep]).max()) if keep.any() else 0
    value = complex(np.sum(terms[np.abs(n) <= n_cut]))
    return CircleReconstruction(value, n_cut, float(floor))


def circle_reconstruct(data: CircleData, r: float, theta: float, k: float = 2.0) -> complex:
    """Regular solution psi(r, theta) from its trace on the circle r = r0.

    Works in Fourier space: boundary coefficients a_n become
    a_n J_n(kr)/J_n(kr0) and are resummed, so the kernel is never formed
    pointwise where it diverges (r > r0). Coefficients below the rounding
    floor are dropped before amplification.

    Raises
    ------
    ValueError
        If the boundary coefficients have not decayed at the cutoff.
    """
    return circle_reconstruct_report(data, r, theta, k).value


def coefficient_circle_data(n: int, r0: float, fourier_cutoff: int = 64) -> CircleData:
    """Trace of c_n on the circle of radius r0."""
    amp = bessel_j(n, 2.0 * r0)
    return CircleData(r0, lambda th: amp * np.exp(1j * n * np.asarray(th)), fourier_cutoff)


def helmholtz_residual(field: Callable, x: float, y: float, h: float = 1e-3, k: float = 2.0) -> float:
    """|five-point Laplacian(field) + k^2 field| at (x, y)."""
    f0 = field(x, y)
    lap = (field(x + h, y) + field(x - h, y) + field(x, y + h) + field(x, y - h) - 4.0 * f0) / (h * h)
    return abs(lap + k * k * f0)


__all__ = [
    "CauchyLineData",
    "CircleData",
    "CircleReconstruction",
    "cauchy_quad",
    "cauchy_reconstruct",
    "check_admissible_radius",
    "circle_reconstruct",
    "circle_reconstruct_report",
    "coefficient_circle_data",
    "coefficient_field",
    "coefficient_line_data",
    "ddelta_dy",
    "delta_cartesian",
    "delta_cartesian_series",
    "delta_polar",
    "delta_polar_coefficients",
    "helmholtz_residual",
]
