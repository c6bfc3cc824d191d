"""Truncated extended Fock space: step, number and Hamiltonian operators,
Bessel propagators, an RK4 oracle and the displacement operator.

Basis vectors |n> are indexed n = -N..N in increasing order. The truncated
step operators drop amplitude that leaves the window, so every identity is
only claimed on interior blocks or for states supported away from the edge.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .specfun import DomainError, bessel_j_symmetric, truncation_index

HALF_PI = 0.5 * math.pi


class WindowTooSmall(ValueError):
    """The truncation window cannot hold the requested state accurately."""

    def __init__(self, required_n: int, half_width: int, what: str = "state"):
        self.required_n = int(required_n)
        self.half_width = int(half_width)
        super().__init__(
            f"window half-width {half_width} too small for {what}; need N >= {required_n}"
        )


@dataclass(frozen=True)
class TruncationWindow:
    """Symmetric index range [-N, N]."""

    half_width: int

    def __post_init__(self):
        if int(self.half_width) != self.half_width or self.half_width < 1:
            raise ValueError(f"half_width must be a positive integer, got {self.half_width!r}")
        object.__setattr__(self, "half_width", int(self.half_width))

    @property
    def dimension(self) -> int:
        return 2 * self.half_width + 1

    @property
    def indices(self) -> np.ndarray:
        return np.arange(-self.half_width, self.half_width + 1)

    def contains(self, n: int) -> bool:
        return -self.half_width <= n <= self.half_width

    def position(self, n: int) -> int:
        """Array position of basis index n."""
        if not self.contains(n):
            raise IndexError(f"index {n} outside window [-{self.half_width}, {self.half_width}]")
        return int(n) + self.half_width

    def interior(self, margin: int = 1) -> slice:
        """Slice of positions with |n| <= N - margin."""
        return slice(margin, self.dimension - margin)

    def require(self, needed: int, what: str = "state") -> None:
        if self.half_width < needed:
            raise WindowTooSmall(needed, self.half_width, what)


def _frozen(a, dtype=complex):
    a = np.array(a, dtype=dtype)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class AmplitudeVector:
    """Complex amplitudes A_n over a window.

    ``edge_warning`` is set when an operation may have pushed amplitude past
    the window edge. ``meta`` carries engine details.
    """

    window: TruncationWindow
    coeffs: np.ndarray
    edge_warning: bool = False
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        c = _frozen(self.coeffs)
        if c.shape != (self.window.dimension,):
            raise ValueError(f"coeffs shape {c.shape} does not match window dimension {self.window.dimension}")
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def basis(cls, window: TruncationWindow, n: int = 0) -> "AmplitudeVector":
        c = np.zeros(window.dimension, dtype=complex)
        c[window.position(n)] = 1.0
        return cls(window, c)

    def coefficient(self, n: int) -> complex:
        return complex(self.coeffs[self.window.position(n)])

    def norm(self) -> float:
        return float(np.sqrt(np.sum(np.abs(self.coeffs) ** 2)))

    def inner(self, other: "AmplitudeVector") -> complex:
        """<self|other>, antilinear in self."""
        if other.window != self.window:
            raise ValueError("vectors live on different windows")
        return complex(np.vdot(self.coeffs, other.coeffs))

    def support_radius(self, rel_tol: float = 1e-16) -> int:
        """Largest |n| with |A_n| above rel_tol times the largest amplitude."""
        mag = np.abs(self.coeffs)
        top = mag.max()
        if top == 0:
            return 0
        return int(np.abs(self.window.indices[mag > rel_tol * top]).max())


@dataclass(frozen=True, eq=False)
class OperatorMatrix:
    """Dense complex matrix over a window, entry (n, m) = <n|O|m>."""

    window: TruncationWindow
    entries: np.ndarray

    def __post_init__(self):
        e = _frozen(self.entries)
        d = self.window.dimension
        if e.shape != (d, d):
            raise ValueError(f"entries shape {e.shape} does not match window dimension {d}")
        object.__setattr__(self, "entries", e)

    def element(self, n: int, m: int) -> complex:
        w = self.window
        return complex(self.entries[w.position(n), w.position(m)])

    def interior(self, margin: int = 1) -> np.ndarray:
        s = self.window.interior(margin)
        return self.entries[s, s]

    def dagger(self) -> "OperatorMatrix":
        return OperatorMatrix(self.window, self.entries.conj().T)

    def apply(self, state: AmplitudeVector) -> AmplitudeVector:
        if state.window != self.window:
            raise ValueError("operator and state live on different windows")
        return AmplitudeVector(self.window, self.entries @ state.coeffs, state.edge_warning)

    def __matmul__(self, other):
        if isinstance(other, AmplitudeVector):
            return self.apply(other)
        if isinstance(other, OperatorMatrix):
            if other.window != self.window:
                raise ValueError("operators live on different windows")
            return OperatorMatrix(self.window, self.entries @ other.entries)
        return NotImplemented


def step_up_matrix(window: TruncationWindow) -> OperatorMatrix:
    """V-dagger: |n> -> |n+1>; the top state leaves the window."""
    return OperatorMatrix(window, np.eye(window.dimension, k=-1))


def step_down_matrix(window: TruncationWindow) -> OperatorMatrix:
    """V: |n> -> |n-1>; the bottom state leaves the window."""
    return OperatorMatrix(window, np.eye(window.dimension, k=1))


def number_matrix(window: TruncationWindow) -> OperatorMatrix:
    return OperatorMatrix(window, np.diag(window.indices.astype(complex)))


def _check_twist(theta):
    theta = float(theta)
    if not 0.0 <= theta < math.pi:
        raise DomainError(f"twist angle must lie in [0, pi), got {theta}")
    return theta


def hamiltonian_matrix(window: TruncationWindow, theta: float = HALF_PI) -> OperatorMatrix:
    """Twisted coupling Hamiltonian H = -i(e^{i theta} V-dagger - e^{-i theta} V).

    theta = pi/2 gives the untwisted array V-dagger + V.
    """
    theta = _check_twist(theta)
    d = window.dimension
    h = -1j * (cmath.exp(1j * theta) * np.eye(d, k=-1) - cmath.exp(-1j * theta) * np.eye(d, k=1))
    return OperatorMatrix(window, h)


def propagator_matrix(window: TruncationWindow, z: float, theta: float = HALF_PI) -> OperatorMatrix:
    """U(z) = exp(i z H^theta), entry (n, m) = e^{i(n-m)theta} J_{n-m}(2z)."""
    z = float(z)
    if not math.isfinite(z):
        raise DomainError("propagation distance must be finite")
    n2 = 2 * window.half_width
    k = np.arange(-n2, n2 + 1)
    diag = bessel_j_symmetric(n2, 2.0 * z) * np.exp(1j * k * float(theta))
    idx = window.indices
    return OperatorMatrix(window, diag[(idx[:, None] - idx[None, :]) + n2])


def _edge_check(state: AmplitudeVector, z: float) -> bool:
    if z == 0:
        return state.edge_warning
    reach = state.support_radius() + truncation_index(2.0 * z)
    return state.edge_warning or reach > state.window.half_width


def propagate_analytic(state: AmplitudeVector, z: float, theta: float = HALF_PI) -> AmplitudeVector:
    """|A(z)> = U(z)|A(0)> by matrix-vector product.

    ``edge_warning`` is raised when support plus the propagation bandwidth
    N(2|z|) exceeds the window.
    """
    u = propagator_matrix(state.window, z, theta)
    out = u.entries @ state.coeffs
    return AmplitudeVector(state.window, out, _edge_check(state, z), {"engine": "analytic"})


def propagate_ode(state: AmplitudeVector, z: float, theta: float = HALF_PI, dz: float = 1e-3) -> AmplitudeVector:
    """Fixed-step RK4 integration of dA/dz = i H^theta A.

    Componentwise dA_n/dz = e^{i theta} A_{n-1} - e^{-i theta} A_{n+1}, which
    reproduces U(z) = exp(i z H^theta). Independent oracle for
    :func:`propagate_analytic`.
    """
    dz = float(dz)
    if not dz > 0:
        raise DomainError("step dz must be positive")
    if dz > 0.1:
        raise DomainError("step dz must not exceed 0.1")
    z = float(z)
    nsteps = int(math.ceil(abs(z) / dz - 1e-12))
    if nsteps == 0:
        return AmplitudeVector(state.window, state.coeffs, state.edge_warning, {"engine": "ode", "steps": 0})
    h = z / nsteps
    up = cmath.exp(1j * float(theta))
    down = -cmath.exp(-1j * float(theta))
    out = _kernels.rk4_tridiag(np.asarray(state.coeffs, dtype=complex), h, nsteps, up, down)
    return AmplitudeVector(
        state.window, out, _edge_check(state, z), {"engine": "ode", "steps": nsteps, "h": h}
    )


def displacement_matrix(alpha, window: TruncationWindow) -> OperatorMatrix:
    """D(alpha) = exp(alpha V-dagger - conj(alpha) V) = U^theta(r) for alpha = r e^{i theta}.

    ``alpha`` is a complex number or any object with ``r`` and ``theta``.
    """
    if hasattr(alpha, "r") and hasattr(alpha, "theta"):
        r, theta = float(alpha.r), float(alpha.theta)
    else:
        r, theta = abs(complex(alpha)), cmath.phase(complex(alpha))
    return propagator_matrix(window, r, theta)
