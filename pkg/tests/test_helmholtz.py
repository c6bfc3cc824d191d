import cmath
import math

import mpmath
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from wga.coherent import coefficient, coefficient_xy, CoherentLabel
from wga.helmholtz import (
    CauchyLineData,
    CircleData,
    cauchy_quad,
    cauchy_reconstruct,
    check_admissible_radius,
    circle_reconstruct,
    circle_reconstruct_report,
    coefficient_circle_data,
    coefficient_field,
    coefficient_line_data,
    ddelta_dy,
    delta_cartesian,
    delta_cartesian_series,
    delta_polar,
    delta_polar_coefficients,
    helmholtz_residual,
)
from wga.quadrature import QuadratureSpec
from wga.specfun import DomainError, bessel_j


@given(st.floats(-20, 20))
def test_delta_vanishes_on_axis(x):
    assert delta_cartesian(x, 0.0) == 0.0


@given(st.floats(-6, 6), st.floats(-3, 3))
def test_delta_even_in_x(x, y):
    assert delta_cartesian(-x, y) == pytest.approx(delta_cartesian(x, y), abs=1e-15)


def test_delta_on_y_axis_struve_oracle():
    # int_0^{pi/2} sin(2 cos phi) d phi = (pi/2) H_0(2)
    ref = 2 / math.sqrt(2 * math.pi) * float(mpmath.pi / 2 * mpmath.struveh(0, 2))
    assert abs(delta_cartesian(0.0, 1.0) - ref) <= 1e-10


def test_delta_two_rules_agree():
    a = delta_cartesian(1.7, 2.3)
    b = delta_cartesian(1.7, 2.3, quad=QuadratureSpec("gauss-legendre", 40, 6))
    assert abs(a - b) <= 1e-12


def test_ddelta_matches_difference():
    x, y, h = 0.8, 1.1, 1e-5
    fd = (delta_cartesian(x, y + h) - delta_cartesian(x, y - h)) / (2 * h)
    assert abs(ddelta_dy(x, y) - fd) <= 1e-8


def test_ddelta_at_axis_is_band_limited_sinc():
    # (1/sqrt(2 pi)) int_{-k}^{k} e^{i eps x} d eps = sqrt(2/pi) sin(kx)/x
    x = 1.3
    assert abs(ddelta_dy(x, 0.0) - math.sqrt(2 / math.pi) * math.sin(2 * x) / x) <= 1e-13


@pytest.mark.parametrize("x, y", [(0.9, 0.4), (-1.5, 1.2), (2.0, 0.3)])
def test_delta_is_helmholtz_solution(x, y):
    assert helmholtz_residual(delta_cartesian, x, y) <= 1e-5


def test_delta_domain():
    with pytest.raises(DomainError):
        delta_cartesian(1.0, 1.0, k=0.0)


@pytest.mark.parametrize("x, y", [(1.0, 0.5), (2.0, 0.8), (3.5, 0.3)])
def test_series_reading_exploratory(x, y):
    # the spherical-Bessel line read with R = k; not an acceptance gate
    assert abs(delta_cartesian_series(x, y) - delta_cartesian(x, y)) <= 1e-10


def test_series_singular_at_origin():
    with pytest.raises(DomainError):
        delta_cartesian_series(0.0, 1.0)


def test_cauchy_c3():
    data = coefficient_line_data(3)
    exact = coefficient_xy(3, 0.7, 0.9)
    errs = [abs(cauchy_reconstruct(data, 0.7, 0.9, cauchy_quad(L)) - exact) for L in (15, 30, 60)]
    assert errs[-1] <= 1e-4
    assert errs[0] > errs[1] > errs[2]


def test_cauchy_sharp_kernel_slow_trend():
    data = coefficient_line_data(3)
    exact = coefficient_xy(3, 0.7, 0.9)
    errs = [abs(cauchy_reconstruct(data, 0.7, 0.9, cauchy_quad(L), kernel="sharp") - exact) for L in (15, 30, 60)]
    assert errs[0] > errs[1] > errs[2]
    # L^{-1/2} decay: doubling L cuts the error by about sqrt 2
    assert errs[1] / errs[2] == pytest.approx(math.sqrt(2), rel=0.25)


def test_cauchy_on_line_reproduces_data():
    data = coefficient_line_data(1)
    assert abs(cauchy_reconstruct(data, 0.6, 0.0) - bessel_j(1, 1.2)) <= 1e-8


def test_cauchy_linear_approach_to_line():
    data = coefficient_line_data(2)
    x = 0.5
    d = [abs(cauchy_reconstruct(data, x, y) - bessel_j(2, 2 * x)) for y in (1e-2, 1e-3)]
    assert d[0] / d[1] == pytest.approx(10, rel=0.1)


def test_cauchy_linearity():
    d1, d2 = coefficient_line_data(0), coefficient_line_data(2)
    a, b = 0.3 - 1.1j, 2.0
    comb = CauchyLineData(
        lambda xs: a * d1.value_fn(xs) + b * d2.value_fn(xs),
        lambda xs: a * d1.deriv_fn(xs) + b * d2.deriv_fn(xs),
    )
    q = cauchy_quad(20)
    lhs = cauchy_reconstruct(comb, 0.4, 0.7, q)
    rhs = a * cauchy_reconstruct(d1, 0.4, 0.7, q) + b * cauchy_reconstruct(d2, 0.4, 0.7, q)
    assert abs(lhs - rhs) <= 1e-13


def test_cauchy_plane_wave():
    # e^{i(eps x + kappa y)} with eps = 1.2, kappa = 1.6
    data = CauchyLineData(lambda xs: np.exp(1.2j * xs), lambda xs: 1.6j * np.exp(1.2j * xs))
    exact = cmath.exp(1j * (1.2 * 0.3 + 1.6 * 0.5))
    assert abs(cauchy_reconstruct(data, 0.3, 0.5, cauchy_quad(120)) - exact) <= 1e-3


def test_cauchy_errors():
    data = coefficient_line_data(0)
    with pytest.raises(DomainError):
        cauchy_reconstruct(data, 0.0, -1.0)
    with pytest.raises(ValueError):
        cauchy_reconstruct(data, 0.0, 1.0, kernel="box")
    with pytest.raises(ValueError):
        cauchy_reconstruct(CauchyLineData(data.value_fn, data.deriv_fn, 100.0), 0.0, 1.0, cauchy_quad(10))
    bad = CauchyLineData(lambda xs: xs / 0.0, lambda xs: xs)
    with np.errstate(all="ignore"), pytest.raises(ValueError):
        cauchy_reconstruct(bad, 0.0, 1.0, cauchy_quad(5))
    with pytest.raises(TypeError):
        CauchyLineData(1.0, data.deriv_fn)


def test_admissible_radius():
    assert check_admissible_radius(1.0) == 1.0
    with pytest.raises(DomainError, match="z01"):
        check_admissible_radius(1.3)
    with pytest.raises(DomainError):
        CircleData(0.0, lambda t: t)


def test_polar_at_origin():
    assert delta_polar(0.7, 0.0, 0.8) == pytest.approx(1 / bessel_j(0, 1.6), abs=1e-14)


def test_polar_comb_coefficients():
    c = delta_polar_coefficients(0.8, 0.8, n_cut=10)
    assert np.array_equal(c, np.ones(21))


def test_polar_term_ratio():
    c = delta_polar_coefficients(0.3, 0.8)
    mid = (len(c) - 1) // 2
    for n in range(10, 21):
        assert c[mid + n] / (0.375**n) == pytest.approx(1, rel=0.2)
        assert c[mid + n + 1] / c[mid + n] == pytest.approx(0.375, rel=0.2)


def test_polar_matches_direct_sum():
    r, r0, th = 0.3, 0.8, 1.0
    ref = sum(float(mpmath.besselj(n, 2 * r) / mpmath.besselj(n, 2 * r0)) * cmath.exp(1j * n * th) for n in range(-40, 41))
    assert abs(delta_polar(th, r, r0) - ref) <= 1e-14


def test_polar_outside_needs_cutoff():
    with pytest.raises(DomainError, match="circle_reconstruct"):
        delta_polar(0.0, 1.0, 0.8)
    assert np.isfinite(delta_polar(0.0, 1.0, 0.8, n_cut=5))


def test_circle_reconstruct_inside_and_outside():
    data = coefficient_circle_data(2, 1.0)
    for r, th, tol in ((0.5, 0.4, 1e-10), (2.0, 0.4, 1e-8), (4.0, 2.0, 1e-8)):
        exact = coefficient(2, CoherentLabel(r, th))
        assert abs(circle_reconstruct(data, r, th) - exact) <= tol


def test_circle_reconstruct_on_circle():
    f = lambda th: np.cos(th) + 0.5j * np.sin(3 * th)
    data = CircleData(0.9, f, 16)
    for th in (0.0, 0.7, 4.0):
        assert abs(circle_reconstruct(data, 0.9, th) - f(th)) <= 1e-14


def test_circle_trig_polynomial_exact():
    # a_n J_n(kr)/J_n(k r0) for a trigonometric-polynomial trace
    r0, r, th = 0.7, 1.6, 0.25
    data = CircleData(r0, lambda t: 2.0 + np.exp(-4j * t), 16)
    exact = 2 * bessel_j(0, 2 * r) / bessel_j(0, 2 * r0) + bessel_j(-4, 2 * r) / bessel_j(-4, 2 * r0) * cmath.exp(-4j * th)
    assert abs(circle_reconstruct(data, r, th) - exact) <= 1e-12


def test_circle_report_cutoff():
    rep = circle_reconstruct_report(coefficient_circle_data(2, 1.0), 0.5, 0.4)
    assert rep.n_cut == 2
    assert rep.noise_floor > 0


def test_circle_tail_test():
    # non-decaying trace: a kink in theta
    data = CircleData(1.0, lambda t: np.abs(np.sin(t)), 16)
    with pytest.raises(ValueError, match="tail exponent"):
        circle_reconstruct(data, 0.5, 0.0)


@pytest.mark.parametrize("h", [4e-3, 2e-3, 1e-3])
def test_plane_wave_residual(h):
    # second difference of e^{2iy} gives exactly (2 cos 2h - 2)/h^2, i.e. 4 h^2/3 + O(h^4) off -4
    expected = abs((2 * math.cos(2 * h) - 2) / h**2 + 4)
    res = helmholtz_residual(lambda x, y: cmath.exp(2j * y), 0.3, 0.7, h)
    assert res == pytest.approx(expected, rel=1e-2)
    assert res == pytest.approx(16 * h * h / 12, rel=1e-2)


def test_polynomial_negative_control():
    x = 0.8
    res = helmholtz_residual(lambda x, y: x * x, x, 0.2)
    assert res == pytest.approx(2 + 4 * x * x, rel=1e-6)
    assert res > 1


@pytest.mark.parametrize("n", range(7))
def test_coefficient_fields_are_solutions(n):
    f = coefficient_field(n)
    for x, y in ((0.9, 0.4), (0.3, -0.5), (1.2, 0.7)):
        r1 = helmholtz_residual(f, x, y, 1e-3)
        r2 = helmholtz_residual(f, x, y, 5e-4)
        assert r1 <= 1e-5
        if r1 > 1e-9:
            assert r2 / r1 == pytest.approx(0.25, rel=0.3)


def test_reconstructed_field_is_solution():
    data = coefficient_line_data(1)
    q = cauchy_quad(30)
    f = lambda x, y: cauchy_reconstruct(data, x, y, q)
    assert helmholtz_residual(f, 0.4, 0.6, 1e-2) <= 1e-2
