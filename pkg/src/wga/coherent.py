"""E(2) coherent states on the waveguide lattice.

The coherent state with label alpha = r e^{i theta} has coefficients
c_n = e^{i n theta} J_n(2r) over all integers n. This module builds these
vectors, their overlaps (closed form and brute-force series), the Cauchy
line and rotated-line families, circle states, and a finite-difference
check of the differential realization of n, V and V-dagger.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .lattice import AmplitudeVector, TruncationWindow, WindowTooSmall
from .specfun import DomainError, bessel_j, bessel_j_symmetric, bessel_zero, truncation_index

TWO_PI = 2.0 * math.pi
SQRT_HALF = math.sqrt(0.5)


def reduce_angle(theta: float) -> float:
    """Angle reduced to [0, 2 pi)."""
    theta = float(theta)
    if not math.isfinite(theta):
        raise DomainError("angle must be finite")
    t = math.fmod(theta, TWO_PI)
    if t < 0:
        t += TWO_PI
    return 0.0 if t >= TWO_PI else t


@dataclass(frozen=True)
class CoherentLabel:
    """Label alpha = r e^{i theta}, r >= 0, theta in [0, 2 pi)."""

    r: float
    theta: float = 0.0

    def __post_init__(self):
        r = float(self.r)
        if not (math.isfinite(r) and r >= 0):
            raise DomainError(f"label modulus must be finite and >= 0, got {self.r!r}")
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "theta", reduce_angle(self.theta))

    @classmethod
    def from_complex(cls, alpha: complex) -> "CoherentLabel":
        alpha = complex(alpha)
        return cls(abs(alpha), cmath.phase(alpha))

    @classmethod
    def from_xy(cls, x: float, y: float) -> "CoherentLabel":
        return cls.from_complex(complex(x, y))

    @property
    def alpha(self) -> complex:
        return cmath.rect(self.r, self.theta)

    @property
    def x(self) -> float:
        return self.r * math.cos(self.theta)

    @property
    def y(self) -> float:
        return self.r * math.sin(self.theta)


POSITION = "position"
DERIVATIVE = "derivative"


@dataclass(frozen=True)
class CauchyFamily:
    """Which Cauchy-data family: position or derivative, offset angle, sign."""

    kind: str = POSITION
    offset_angle: float = 0.0
    sign: int = 1

    def __post_init__(self):
        if self.kind not in (POSITION, DERIVATIVE):
            raise ValueError(f"kind must be {POSITION!r} or {DERIVATIVE!r}")
        _check_offset(self.offset_angle)
        object.__setattr__(self, "sign", _parse_sign(self.sign))


def _check_offset(theta0):
    theta0 = float(theta0)
    if not 0.0 <= theta0 < math.pi:
        raise DomainError(f"offset angle must lie in [0, pi), got {theta0}")
    return theta0


def _parse_sign(sign) -> int:
    if sign in (1, "+", "+1"):
        return 1
    if sign in (-1, "-", "-1"):
        return -1
    raise ValueError(f"sign must be +1 or -1, got {sign!r}")


def _require(window: TruncationWindow, x: float, what: str):
    window.require(truncation_index(2.0 * abs(x)), what)


def coefficient(n: int, alpha: CoherentLabel) -> complex:
    """Single coefficient c_n(alpha) = e^{i n theta} J_n(2r)."""
    return cmath.exp(1j * n * alpha.theta) * bessel_j(n, 2.0 * alpha.r)


def coefficient_xy(n: int, x: float, y: float) -> complex:
    """c_n as a field on the label plane, alpha = x + i y."""
    return coefficient(n, CoherentLabel.from_xy(x, y))


def coherent_coeffs(alpha: CoherentLabel, window: TruncationWindow) -> AmplitudeVector:
    """Coefficient vector of |alpha> over the window.

    Raises
    ------
    WindowTooSmall
        If N is below the truncation rule for argument 2r.
    """
    _require(window, alpha.r, "coherent state")
    n = window.indices
    c = bessel_j_symmetric(window.half_width, 2.0 * alpha.r) * np.exp(1j * n * alpha.theta)
    return AmplitudeVector(window, c)


def overlap_closed(a: CoherentLabel, b: CoherentLabel) -> float:
    """<a|b> = J_0(2R) with R the distance between the labels."""
    r2 = a.r * a.r + b.r * b.r - 2.0 * a.r * b.r * math.cos(b.theta - a.theta)
    return bessel_j(0, 2.0 * math.sqrt(max(r2, 0.0)))


def overlap_sum(a: CoherentLabel, b: CoherentLabel, window: TruncationWindow) -> complex:
    """Brute-force series sum_n J_n(2r) J_n(2r') e^{i n (theta' - theta)}.

    The series is real; an imaginary part above 1e-12 raises instead of
    being dropped.
    """
    _require(window, max(a.r, b.r), "overlap series")
    n = window.indices
    ja = bessel_j_symmetric(window.half_width, 2.0 * a.r)
    jb = bessel_j_symmetric(window.half_width, 2.0 * b.r)
    phase = np.exp(1j * n * (b.theta - a.theta))
    # pair n with -n so the sum is accumulated symmetrically
    terms = ja * jb * phase
    mid = window.half_width
    s = terms[mid] + np.sum(terms[mid + 1 :] + terms[mid - 1 :: -1][: mid])
    if abs(s.imag) > 1e-12:
        raise FloatingPointError(f"overlap series has imaginary part {s.imag:.3e}")
    return complex(s)


def _line_pair(t: float, phase: np.ndarray, sign: int, window: TruncationWindow):
    n_max = window.half_width
    j = bessel_j_symmetric(n_max + 1, t)
    jn = j[1:-1]
    # n J_n(t) / (t/2) = J_{n-1}(t) + J_{n+1}(t), regular at t = 0
    deriv = sign * SQRT_HALF * (j[:-2] + j[2:])
    return AmplitudeVector(window, jn * phase), AmplitudeVector(window, deriv * phase)


def cauchy_line_states(x: float, window: TruncationWindow):
    """Position and derivative Cauchy states at real label x.

    Position coefficients J_n(2x); derivative coefficients
    n J_n(2x) / (sqrt(2) x), continued to x = 0 by its limit.
    """
    x = float(x)
    _require(window, x, "Cauchy line state")
    return _line_pair(2.0 * x, np.ones(window.dimension), 1, window)


def rotated_cauchy_states(r: float, theta0: float, sign, window: TruncationWindow):
    """Cauchy states on the line through the origin at angle theta0.

    Coefficients e^{i n theta0} J_n(2 s r) and n e^{i n theta0} J_n(2 s r) / (sqrt(2) r),
    s = +1 or -1. theta0 = pi/2 with s = +1 is forward propagation of |0>
    through the untwisted array over distance r.
    """
    r = float(r)
    if r < 0:
        raise DomainError("r must be non-negative")
    theta0 = _check_offset(theta0)
    sign = _parse_sign(sign)
    _require(window, r, "rotated Cauchy state")
    phase = np.exp(1j * window.indices * theta0)
    return _line_pair(2.0 * sign * r, phase, sign, window)


def max_circle_radius() -> float:
    """Upper bound z_{0,1}/2 on admissible circle radii."""
    return 0.5 * bessel_zero(0, 1)


def check_circle_radius(r0: float) -> float:
    r0 = float(r0)
    bound = max_circle_radius()
    if not 0.0 < r0 < bound:
        raise DomainError(
            f"circle radius must lie in (0, z01/2) = (0, {bound:.10f}) so that no J_n(2 r0) vanishes; got {r0}"
        )
    return r0


def circle_state(theta: float, r0: float, window: TruncationWindow) -> AmplitudeVector:
    """Coherent state on the circle |alpha| = r0 at angle theta."""
    r0 = check_circle_radius(r0)
    return coherent_coeffs(CoherentLabel(r0, theta), window)


def circle_overlap_closed(theta: float, theta_p: float, r0: float) -> float:
    """J_0(4 r0 sin((theta' - theta)/2))."""
    return bessel_j(0, 4.0 * r0 * math.sin(0.5 * (theta_p - theta)))


@dataclass(frozen=True)
class RealizationResiduals:
    """Absolute residuals of the three differential operator actions on c_n."""

    number: float
    lowering: float
    raising: float

    def max(self) -> float:
        return max(self.number, self.lowering, self.raising)


def differential_realization_check(alpha: CoherentLabel, n: int, h: float = 1e-4) -> RealizationResiduals:
    """Finite-difference check of the differential realization on c_n(r, theta).

    With central differences of step h in r and theta:

    * n_d = -i d/dtheta                                   should give n c_n
    * V_d = -(1/2) e^{i theta} (d/dr + (i/r) d/dtheta)    should give c_{n+1}
    * V_d-dagger = (1/2) e^{-i theta} (d/dr - (i/r) d/dtheta)  should give c_{n-1}
    """
    h = float(h)
    if not 0 < h <= 1e-3:
        raise DomainError("step h must lie in (0, 1e-3]")
    r, th = alpha.r, alpha.theta
    if r <= h:
        raise DomainError(f"r = {r} too small for the 1/r terms at step h = {h}")

    def c(k, rr, tt):
        return cmath.exp(1j * k * tt) * bessel_j(k, 2.0 * rr)

    d_r = (c(n, r + h, th) - c(n, r - h, th)) / (2.0 * h)
    d_t = (c(n, r, th + h) - c(n, r, th - h)) / (2.0 * h)
    e = cmath.exp(1j * th)
    num = -1j * d_t
    low = -0.5 * e * (d_r + 1j / r * d_t)
    up = 0.5 / e * (d_r - 1j / r * d_t)
    return RealizationResiduals(
        abs(num - n * c(n, r, th)),
        abs(low - c(n + 1, r, th)),
        abs(up - c(n - 1, r, th)),
    )
