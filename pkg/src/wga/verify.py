"""Verification suites: each returns a list of named checks with the measured
value, its target, the tolerance and a pass flag.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import coherent as coh
from . import helmholtz as hz
from . import lattice as lat
from . import resolution as res
from .specfun import bessel_j, bessel_j_band, truncation_index


@dataclass(frozen=True)
class Check:
    name: str
    measured: float
    target: float | None
    tolerance: float | None
    passed: bool


@dataclass(frozen=True)
class SuiteOptions:
    """Knobs the CLI forwards to the suites."""

    seed: int = 0
    tol: float | None = None
    n_window: int = 64
    quad_nodes: int = 64
    quad_L: float = 60.0
    r0: float = 0.5
    nk: int = 12
    extra: dict = field(default_factory=dict)


def _le(name, measured, tol, target=None):
    measured = float(measured)
    return Check(name, measured, target, tol, bool(measured <= tol))


def _flag(name, ok, measured=float("nan")):
    return Check(name, float(measured), None, None, bool(ok))


def suite_unitarity(opt: SuiteOptions) -> list[Check]:
    out = []
    tol = opt.tol or 1e-12
    w = lat.TruncationWindow(max(256, opt.n_window))
    e0 = lat.AmplitudeVector.basis(w, 0)
    for z in (0.5, 1.0, 5.0):
        out.append(_le(f"norm_analytic_z{z:g}", abs(lat.propagate_analytic(e0, z).norm() - 1.0), tol))
    w64 = lat.TruncationWindow(64)
    s = lat.AmplitudeVector.basis(w64, 0)
    ana = lat.propagate_analytic(s, 1.0)
    ode = lat.propagate_ode(s, 1.0, dz=1e-3)
    out.append(_le("norm_drift_ode", abs(ode.norm() - 1.0), 1e-9))
    out.append(_le("analytic_vs_ode", np.abs(ana.coeffs - ode.coeffs).max(), 1e-8))
    e1 = np.abs(lat.propagate_ode(s, 1.0, dz=0.1).coeffs - ana.coeffs).max()
    e2 = np.abs(lat.propagate_ode(s, 1.0, dz=0.05).coeffs - ana.coeffs).max()
    ratio = e1 / e2
    out.append(Check("ode_order_ratio", ratio, 16.0, 3.2, bool(abs(ratio - 16.0) <= 3.2)))
    return out


def suite_graf(opt: SuiteOptions) -> list[Check]:
    tol = opt.tol or 1e-10
    rng = np.random.default_rng(opt.seed)
    w = lat.TruncationWindow(max(opt.n_window, truncation_index(10.0) + 1))
    dev = 0.0
    for _ in range(100):
        a = coh.CoherentLabel(rng.uniform(0, 5), rng.uniform(0, 2 * math.pi))
        b = coh.CoherentLabel(rng.uniform(0, 5), rng.uniform(0, 2 * math.pi))
        dev = max(dev, abs(coh.overlap_sum(a, b, w) - coh.overlap_closed(a, b)))
    out = [_le("random_pairs_max_dev", dev, tol)]
    r, rp, th = 0.8, 1.3, 0.4
    L = coh.CoherentLabel
    specials = [
        ("same_label", L(r, th), L(r, th), 1.0),
        ("same_angle", L(r, th), L(rp, th), bessel_j(0, 2 * abs(r - rp))),
        ("antipodal", L(r, th), L(rp, th + math.pi), bessel_j(0, 2 * (r + rp))),
        ("quarter_turn", L(r, th), L(rp, th + 0.5 * math.pi), bessel_j(0, 2 * math.hypot(r, rp))),
        ("equal_radii", L(r, th), L(r, th + 1.1), bessel_j(0, 4 * r * math.sin(0.55))),
        ("antipodal_equal", L(1.0, 0.0), L(1.0, math.pi), bessel_j(0, 4.0)),
    ]
    for name, a, b, target in specials:
        v = coh.overlap_closed(a, b)
        out.append(Check(f"special_{name}", v, target, 1e-14, bool(abs(v - target) <= 1e-14)))
    for r in (0.1, 1.0, 5.0, 10.0):
        band = bessel_j_band(truncation_index(2 * r), 2 * r)
        s = band[0] ** 2 + 2 * np.sum(band[1:] ** 2)
        out.append(_le(f"normalization_r{r:g}", abs(s - 1.0), 1e-12))
    return out


def suite_cartesian_roi(opt: SuiteOptions) -> list[Check]:
    tol = opt.tol or 1e-5
    norm = res.cartesian_normalization(nodes=opt.quad_nodes)
    mat = res.cartesian_roi_spectral_matrix(6, opt.quad_nodes) / norm.measured
    out = [
        Check("measured_c", norm.measured, None, None, True),
        Check("nominal_prefactor", norm.nominal_prefactor, None, None, True),
        _le("spectral_max_dev", np.abs(mat - np.eye(13)).max(), tol),
    ]
    errs = []
    for L in (25.0, 50.0, 100.0):
        v = res.cartesian_roi_direct(3, 3, L).value / norm.measured
        errs.append(abs(v - 1.0))
        out.append(Check(f"direct_33_err_L{L:g}", errs[-1], None, None, True))
    out.append(_flag("direct_monotone", errs[0] > errs[1] > errs[2]))
    for x, xp in ((0.4, 0.4), (0.2, 1.1), (-0.3, 0.6)):
        rep = res.cartesian_roi_cross_overlap(x, xp, opt.quad_nodes)
        for label, d in zip(("value", "deriv", "mixed"), rep.deviations):
            out.append(_le(f"cross_{label}_{x:g}_{xp:g}", d, tol))
    return out


def suite_polar_roi(opt: SuiteOptions) -> list[Check]:
    tol = opt.tol or 1e-9
    k = res.polar_kernel(opt.r0, opt.nk)
    dim = 2 * opt.nk + 1
    four = res.polar_roi_matrix(k)
    out = [_le("fourier_max_dev", np.abs(four - np.eye(dim)).max(), tol)]
    grid = res.polar_roi_matrix_grid(k, max(64, 4 * opt.nk + 1))
    out.append(_le("grid_vs_fourier", np.abs(grid - four).max(), tol))
    for dth in (0.0, 1.0, math.pi):
        rep = res.polar_roi_overlap(0.3, 0.3 + dth, k)
        out.append(Check(f"overlap_dtheta{dth:.4f}", rep.diff, rep.target, rep.bound, bool(rep.diff <= rep.bound)))
        out.append(_le(f"overlap_bound_dtheta{dth:.4f}", rep.bound, 1e-12))
    return out


def suite_naive(opt: SuiteOptions) -> list[Check]:
    tol = opt.tol or 1e-4
    out = []
    for n in range(6):
        q = res.naive_diag_quadrature(n, 0.5, 200.0)
        c = res.naive_diag_closed(n, 0.5)
        out.append(Check(f"quad_vs_closed_n{n}", abs(q - c), c, tol, bool(abs(q - c) <= tol)))
    for lam in (0.25, 0.5, 0.75):
        a, b = res.naive_diag_closed(0, lam), res.naive_diag_closed(1, lam)
        gap = abs(a - b) / abs(a)
        out.append(Check(f"n_gap_lambda{lam:g}", gap, 0.01, None, bool(gap > 0.01)))
    for lam, label in ((-1.0, "r_dr"), (0.0, "dr")):
        vals = [res.naive_diag_quadrature(0, lam, L) for L in (10.0, 100.0, 1000.0)]
        for L, v in zip((10, 100, 1000), vals):
            out.append(Check(f"growth_{label}_L{L}", v, None, None, True))
        out.append(_flag(f"growth_{label}_monotone", vals[0] < vals[1] < vals[2]))
    for n in (0, 1, 3):
        vals = [res.naive_normalized(n, lam) for lam in (1e-2, 1e-3, 1e-4)]
        errs = [abs(v - 1.0) for v in vals]
        out.append(Check(f"limit_n{n}_lambda1e-4", vals[-1], 1.0, None, bool(errs[0] > errs[1] > errs[2])))
    return out


def suite_helmholtz_cauchy(opt: SuiteOptions) -> list[Check]:
    tol = opt.tol or 1e-4
    data = hz.coefficient_line_data(3)
    exact = coh.coefficient_xy(3, 0.7, 0.9)
    L = opt.quad_L
    errs = []
    for Lk in (L / 4, L / 2, L):
        errs.append(abs(hz.cauchy_reconstruct(data, 0.7, 0.9, hz.cauchy_quad(Lk)) - exact))
    out = [Check(f"c3_err_L{Lk:g}", e, None, None, True) for Lk, e in zip((L / 4, L / 2, L), errs)]
    out.append(_le(f"c3_at_L{L:g}", errs[-1], tol))
    out.append(_flag("decreasing_with_L", errs[0] > errs[1] > errs[2]))
    return out


def suite_helmholtz_polar(opt: SuiteOptions) -> list[Check]:
    data = hz.coefficient_circle_data(2, 1.0)
    out = []
    for (r, th), tol in (((0.5, 0.4), 1e-10), ((2.0, 0.4), 1e-8)):
        v = hz.circle_reconstruct(data, r, th)
        exact = coh.coefficient(2, coh.CoherentLabel(r, th))
        out.append(_le(f"c2_r{r:g}_theta{th:g}", abs(v - exact), tol))
    pts = ((0.9, 0.4), (0.3, -0.5), (1.2, 0.7))
    for n in range(7):
        f = hz.coefficient_field(n)
        worst = max(hz.helmholtz_residual(f, x, y, 1e-3) for x, y in pts)
        out.append(_le(f"residual_c{n}", worst, 1e-5))
    return out


def suite_conv_identity(opt: SuiteOptions) -> list[Check]:
    tol = opt.tol or 1e-8
    rng = np.random.default_rng(opt.seed)
    seps = rng.uniform(0.0, 5.0, 10)
    out = []
    for a in (0.0, 0.5, 1.0):
        for b in (0.0, 0.5, 1.0):
            pair = res.KernelPair(a, b)
            diffs = [res.convolution_identity_check(pair, 0.0, d).diff for d in seps]
            worst = float("nan") if any(math.isnan(d) for d in diffs) else max(diffs)
            out.append(Check(f"pair_{a:g}_{b:g}", worst, 0.0, tol, bool(worst <= tol)))
    return out


SUITES = {
    "unitarity": suite_unitarity,
    "graf": suite_graf,
    "cartesian-roi": suite_cartesian_roi,
    "polar-roi": suite_polar_roi,
    "naive": suite_naive,
    "helmholtz-cauchy": suite_helmholtz_cauchy,
    "helmholtz-polar": suite_helmholtz_polar,
    "conv-identity": suite_conv_identity,
}


def run_suite(name: str, opt: SuiteOptions | None = None) -> list[Check]:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
    return SUITES[name](opt or SuiteOptions())
