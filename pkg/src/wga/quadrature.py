"""Quadrature rules shared by the integral evaluations."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from numpy.polynomial.legendre import leggauss

GAUSS_LEGENDRE = "gauss-legendre"
TRAPEZOID_PERIODIC = "trapezoid-periodic"


@dataclass(frozen=True)
class QuadratureSpec:
    """Rule family, node layout and domain half-width for a numeric integral.

    Parameters
    ----------
    rule : str
        ``"gauss-legendre"`` (composite) or ``"trapezoid-periodic"``.
    nodes_per_panel : int
        Gauss nodes per panel; ignored by the periodic rule.
    panel_count : int
        Number of panels (total nodes for the periodic rule).
    L : float
        Domain half-width for integrals truncated to [-L, L].
    """

    rule: str = GAUSS_LEGENDRE
    nodes_per_panel: int = 16
    panel_count: int = 8
    L: float = 60.0

    def __post_init__(self):
        if self.rule not in (GAUSS_LEGENDRE, TRAPEZOID_PERIODIC):
            raise ValueError(f"unknown quadrature rule {self.rule!r}")
        if self.nodes_per_panel < 1 or self.panel_count < 1:
            raise ValueError("node and panel counts must be positive")
        if not self.L > 0:
            raise ValueError("domain half-width L must be positive")

    def nodes(self, a: float, b: float):
        """Nodes and weights on [a, b] for this rule."""
        if self.rule == GAUSS_LEGENDRE:
            return composite_gauss(a, b, self.panel_count, self.nodes_per_panel)
        return periodic_trapezoid(a, b, self.panel_count)


@lru_cache(maxsize=64)
def _leggauss(n):
    x, w = leggauss(n)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


def gauss(a: float, b: float, n: int):
    """n-point Gauss-Legendre nodes and weights on [a, b]."""
    x, w = _leggauss(int(n))
    half = 0.5 * (b - a)
    return 0.5 * (a + b) + half * x, half * w


def composite_gauss(a: float, b: float, panels: int, n: int):
    """Composite Gauss-Legendre rule with equal panels on [a, b]."""
    x, w = _leggauss(int(n))
    edges = np.linspace(a, b, int(panels) + 1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[:-1] + edges[1:])
    nodes = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    weights = (half[:, None] * w[None, :]).ravel()
    return nodes, weights


def periodic_trapezoid(a: float, b: float, m: int):
    """Equal-weight trapezoid rule for a (b - a)-periodic integrand."""
    h = (b - a) / m
    return a + h * np.arange(m), np.full(m, h)
