import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from wga.coherent import (
    CauchyFamily,
    CoherentLabel,
    cauchy_line_states,
    circle_overlap_closed,
    circle_state,
    coherent_coeffs,
    differential_realization_check,
    max_circle_radius,
    overlap_closed,
    overlap_sum,
    reduce_angle,
    rotated_cauchy_states,
)
from wga.lattice import AmplitudeVector, TruncationWindow, WindowTooSmall, propagate_analytic
from wga.specfun import DomainError, bessel_j, bochner_riesz, truncation_index
from conftest import mp_j

W = TruncationWindow(64)
labels = st.builds(CoherentLabel, st.floats(0, 5), st.floats(-10, 10))


def test_label_geometry():
    a = CoherentLabel(2.0, -math.pi / 2)
    assert a.theta == pytest.approx(1.5 * math.pi)
    assert a.alpha == pytest.approx(-2j)
    assert (a.x, a.y) == pytest.approx((0.0, -2.0), abs=1e-15)
    b = CoherentLabel.from_xy(0.3, -0.4)
    assert b.r == pytest.approx(0.5) and b.alpha == pytest.approx(0.3 - 0.4j)


@given(st.floats(-100, 100))
def test_reduce_angle_range(t):
    r = reduce_angle(t)
    assert 0 <= r < 2 * math.pi
    assert math.cos(r) == pytest.approx(math.cos(t), abs=1e-12)


def test_label_domain():
    with pytest.raises(DomainError):
        CoherentLabel(-1.0, 0.0)
    with pytest.raises(DomainError):
        CoherentLabel(math.inf, 0.0)


def test_vacuum():
    c = coherent_coeffs(CoherentLabel(0, 0), W).coeffs
    assert np.array_equal(c, AmplitudeVector.basis(W, 0).coeffs)


@pytest.mark.parametrize("r", [0.1, 1.0, 3.3, 5.0, 10.0])
def test_normalized(r):
    w = TruncationWindow(max(64, truncation_index(2 * r)))
    assert abs(coherent_coeffs(CoherentLabel(r, 0.8), w).norm() - 1) <= 1e-12


def test_coefficients_against_oracle():
    a = CoherentLabel(1.7, 2.4)
    c = coherent_coeffs(a, W)
    for n in (-5, -1, 0, 2, 9):
        assert c.coefficient(n) == pytest.approx(np.exp(1j * n * 2.4) * mp_j(n, 3.4), abs=1e-15)


@pytest.mark.parametrize("r", [0.3, 2.5])
def test_power_form(r):
    a = CoherentLabel(r, 1.1)
    c = coherent_coeffs(a, W)
    for n in range(21):
        power = a.alpha**n * 2**n * bochner_riesz(n, 2 * r)
        assert abs(c.coefficient(n) - power) <= 1e-13


def test_undersized_window_names_requirement():
    with pytest.raises(WindowTooSmall) as exc:
        coherent_coeffs(CoherentLabel(5, 0), TruncationWindow(20))
    assert exc.value.required_n > 20
    assert str(exc.value.required_n) in str(exc.value)


def test_overlap_closed_cases():
    r, rp = 0.8, 1.3
    assert overlap_closed(CoherentLabel(r, 0.2), CoherentLabel(r, 0.2)) == 1.0
    assert overlap_closed(CoherentLabel(r, 0.2), CoherentLabel(rp, 0.2 + math.pi)) == pytest.approx(
        mp_j(0, 2 * (r + rp)), abs=1e-15
    )
    assert overlap_closed(CoherentLabel(r, 0.2), CoherentLabel(rp, 0.2 + math.pi / 2)) == pytest.approx(
        mp_j(0, 2 * math.hypot(r, rp)), abs=1e-15
    )


@given(labels, labels)
def test_overlap_symmetric(a, b):
    assert overlap_closed(a, b) == pytest.approx(overlap_closed(b, a), abs=1e-15)


def test_overlap_sum_basics():
    a = CoherentLabel(1, 0)
    assert abs(overlap_sum(a, a, W) - 1) <= 1e-12
    assert abs(overlap_sum(a, CoherentLabel(1, math.pi), W) - mp_j(0, 4.0)) <= 1e-10


def test_graf_randomized(rng):
    dev = 0.0
    for _ in range(100):
        a = CoherentLabel(*rng.uniform([0, 0], [5, 2 * math.pi]))
        b = CoherentLabel(*rng.uniform([0, 0], [5, 2 * math.pi]))
        s = overlap_sum(a, b, W)
        assert abs(s.imag) <= 1e-12
        dev = max(dev, abs(s - overlap_closed(a, b)))
    assert dev <= 1e-10


def test_overlap_sum_matches_vectors():
    a, b = CoherentLabel(2.1, 0.4), CoherentLabel(0.6, 5.0)
    v = coherent_coeffs(a, W).inner(coherent_coeffs(b, W))
    assert abs(v - overlap_sum(a, b, W)) <= 1e-14


def test_cauchy_states_at_origin():
    p, d = cauchy_line_states(0.0, W)
    assert np.array_equal(p.coeffs, AmplitudeVector.basis(W, 0).coeffs)
    ref = (AmplitudeVector.basis(W, 1).coeffs + AmplitudeVector.basis(W, -1).coeffs) / math.sqrt(2)
    assert np.abs(d.coeffs - ref).max() <= 2e-16


def test_cauchy_derivative_formula():
    x = 0.9
    _, d = cauchy_line_states(x, W)
    for n in (-4, -1, 1, 3, 7):
        assert d.coefficient(n) == pytest.approx(n * mp_j(n, 2 * x) / (math.sqrt(2) * x), abs=1e-15)


def test_cauchy_overlaps():
    p1, d1 = cauchy_line_states(0.4, W)
    p2, d2 = cauchy_line_states(1.1, W)
    assert abs(d1.inner(d2) - bessel_j(1, 1.4) / 0.7) <= 1e-10
    assert abs(p1.inner(p2) - bessel_j(0, 1.4)) <= 1e-12


@given(st.floats(-4, 4), st.floats(-4, 4))
def test_cauchy_orthogonal_and_normalized(x, xp):
    p, d = cauchy_line_states(x, W)
    _, dp = cauchy_line_states(xp, W)
    assert abs(p.inner(dp)) <= 1e-12
    assert abs(p.norm() - 1) <= 1e-12 and abs(d.norm() - 1) <= 1e-12


def test_rotated_reduces_to_line():
    p, d = cauchy_line_states(1.3, W)
    pr, dr = rotated_cauchy_states(1.3, 0.0, "+", W)
    assert np.abs(p.coeffs - pr.coeffs).max() == 0
    assert np.abs(d.coeffs - dr.coeffs).max() <= 1e-16


@pytest.mark.parametrize("z", [0.4, 1.0, 2.7])
def test_rotated_is_waveguide_propagation(z):
    pr, _ = rotated_cauchy_states(z, math.pi / 2, +1, W)
    ref = propagate_analytic(AmplitudeVector.basis(W, 0), z, math.pi / 2)
    assert np.abs(pr.coeffs - ref.coeffs).max() <= 1e-10
    pb, _ = rotated_cauchy_states(z, math.pi / 2, -1, W)
    back = propagate_analytic(AmplitudeVector.basis(W, 0), -z, math.pi / 2)
    assert np.abs(pb.coeffs - back.coeffs).max() <= 1e-10


@given(st.floats(0, 8), st.floats(0, math.pi, exclude_max=True), st.sampled_from([1, -1]))
def test_rotated_norm(r, t0, sign):
    p, d = rotated_cauchy_states(r, t0, sign, W)
    assert abs(p.norm() - 1) <= 1e-12 and abs(d.norm() - 1) <= 1e-12
    assert abs(p.inner(d)) <= 1e-12


def test_rotated_overlaps_match_line_forms():
    t0 = 0.9
    p1, d1 = rotated_cauchy_states(0.4, t0, 1, W)
    p2, d2 = rotated_cauchy_states(1.1, t0, 1, W)
    assert abs(d1.inner(d2) - bessel_j(1, 1.4) / 0.7) <= 1e-10
    assert abs(p1.inner(p2) - bessel_j(0, 1.4)) <= 1e-12


def test_rotated_derivative_is_angular_derivative():
    # derivative state = -i/(sqrt 2 r) d/dtheta of the coherent state at theta0
    r, t0, h = 1.2, 0.7, 1e-5
    _, d = rotated_cauchy_states(r, t0, 1, W)
    up = coherent_coeffs(CoherentLabel(r, t0 + h), W).coeffs
    dn = coherent_coeffs(CoherentLabel(r, t0 - h), W).coeffs
    fd = -1j / (math.sqrt(2) * r) * (up - dn) / (2 * h)
    assert np.abs(fd - d.coeffs).max() < 1e-8


@pytest.mark.parametrize("t0", [-0.1, math.pi, 5.0])
def test_rotated_offset_domain(t0):
    with pytest.raises(DomainError):
        rotated_cauchy_states(1.0, t0, 1, W)
    with pytest.raises(DomainError):
        CauchyFamily("position", t0, 1)


def test_family_validation():
    assert CauchyFamily("derivative", 0.3, "-").sign == -1
    with pytest.raises(ValueError):
        CauchyFamily("other")
    with pytest.raises(ValueError):
        CauchyFamily(sign=0)


def test_circle_state():
    c = circle_state(0.4, 0.5, W)
    assert np.array_equal(c.coeffs, coherent_coeffs(CoherentLabel(0.5, 0.4), W).coeffs)
    assert abs(c.inner(c) - 1) <= 1e-12


def test_circle_antipodal_overlap():
    a, b = circle_state(0.3, 0.5, W), circle_state(0.3 + math.pi, 0.5, W)
    oracle = sum((-1) ** m / math.factorial(m) ** 2 for m in range(30))
    assert abs(a.inner(b) - oracle) <= 1e-10
    assert circle_overlap_closed(0.3, 0.3 + math.pi, 0.5) == pytest.approx(0.2238907791, abs=1e-10)


def test_circle_random_pairs(rng):
    r0 = 0.9
    for t, tp in rng.uniform(0, 2 * math.pi, (50, 2)):
        v = circle_state(t, r0, W).inner(circle_state(tp, r0, W))
        assert abs(v - circle_overlap_closed(t, tp, r0)) <= 1e-10


@pytest.mark.parametrize("r0", [0.0, -0.2, 1.21, 3.0])
def test_circle_radius_bound(r0):
    with pytest.raises(DomainError, match="z01"):
        circle_state(0.0, r0, W)


def test_circle_bound_value():
    assert max_circle_radius() == pytest.approx(2.4048255577 / 2, abs=1e-10)


def test_differential_realization():
    a = CoherentLabel(1.3, 0.7)
    res = differential_realization_check(a, 2, 1e-4)
    assert res.number <= 1e-7
    assert res.lowering <= 1e-6 and res.raising <= 1e-6


@pytest.mark.parametrize("n", [-3, 0, 1, 4])
def test_differential_realization_order(n):
    a = CoherentLabel(1.3, 0.7)
    r1 = differential_realization_check(a, n, 1e-3)
    r2 = differential_realization_check(a, n, 5e-4)
    for f in ("number", "lowering", "raising"):
        if n == 0 and f == "number":
            # c_0 has no theta dependence, both sides vanish exactly
            assert r1.number <= 1e-15 and r2.number <= 1e-15
            continue
        ratio = getattr(r2, f) / getattr(r1, f)
        assert ratio == pytest.approx(0.25, rel=0.2), f


def test_differential_realization_domain():
    with pytest.raises(DomainError):
        differential_realization_check(CoherentLabel(5e-5, 0), 1, 1e-4)
    with pytest.raises(DomainError):
        differential_realization_check(CoherentLabel(1, 0), 1, 1e-2)
