import math

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from alexandrov_flow.model_trig import (
    CDParams,
    TriangleSides,
    angle_from_sides,
    bg_profile,
    c_coeff,
    c_coeff_limit,
    comparison_angle,
    comparison_point_distance,
    cs,
    diameter,
    distance_concavity_modulus,
    lipschitz_contraction_rate,
    model_side,
    sigma,
    simplicial_volume_coefficient,
    sn,
    tau,
)
from alexandrov_flow.utils.errors import DegenerateError, DomainError

KAPPAS = [-4.0, -1.0, 0.0, 1.0, 4.0]

kappas = st.sampled_from(KAPPAS)
# short enough that b + c stays below the diameter π/2 of M_4
adjacent = st.floats(min_value=0.05, max_value=0.7)
angles = st.floats(min_value=0.05, max_value=math.pi - 0.05)


def test_sn_cs_values():
    assert sn(0, 3.5) == 3.5
    assert sn(1, math.pi / 2) == pytest.approx(1.0, abs=1e-15)
    assert sn(-1, 1.0) == pytest.approx(math.sinh(1.0), rel=1e-14)
    assert cs(0, 7.0) == 1.0
    assert cs(1, math.pi) == pytest.approx(-1.0, abs=1e-15)
    assert cs(-1, 1.0) == pytest.approx(math.cosh(1.0), rel=1e-14)


@pytest.mark.parametrize("kappa", KAPPAS)
def test_ode_residual(kappa):
    h = 1e-3
    t = np.linspace(0.1, 3.0, 30)
    for function in (sn, cs):
        second = (function(kappa, t + h) - 2.0 * function(kappa, t) + function(kappa, t - h)) / (h * h)
        scale = max(1.0, float(np.max(np.abs(function(kappa, t)))))
        assert np.max(np.abs(second + kappa * function(kappa, t))) <= (kappa**2 / 12.0 + 0.1) * h * h * scale


@pytest.mark.parametrize("kappa", KAPPAS)
def test_pythagorean_identity(kappa):
    t = np.linspace(0.0, 3.0, 61)
    values = kappa * sn(kappa, t) ** 2 + cs(kappa, t) ** 2
    scale = np.maximum(1.0, cs(kappa, t) ** 2)
    assert np.max(np.abs(values - 1.0) / scale) <= 1e-12


def test_continuity_across_zero():
    t = 0.8
    for kappa in (1e-9, -1e-9, 1e-3, -1e-3, 0.5, -0.5):
        assert abs(sn(kappa, t) - sn(0, t)) <= abs(kappa) * t**3


def test_sn_vectorised():
    values = sn(-1.0, np.array([0.0, 1.0, 2.0]))
    assert isinstance(values, np.ndarray)
    assert values == pytest.approx(np.sinh([0.0, 1.0, 2.0]))


def test_model_side():
    assert model_side(0, 3, 4, math.pi / 2) == pytest.approx(5.0, rel=1e-14)
    for theta in (0.3, 1.0, 2.5):
        assert model_side(1, math.pi / 2, math.pi / 2, theta) == pytest.approx(theta, rel=1e-12)
    assert model_side(-1, 1, 1, math.pi / 2) == pytest.approx(math.acosh(math.cosh(1.0) ** 2), rel=1e-12)
    assert model_side(0, 2, 2, 0.0) == 0.0


def test_model_side_satisfies_cosine_law():
    kappa, b, c, theta = -1.0, 0.7, 1.9, 2.2
    side = model_side(kappa, b, c, theta)
    expected = cs(kappa, b) * cs(kappa, c) + kappa * sn(kappa, b) * sn(kappa, c) * math.cos(theta)
    assert cs(kappa, side) == pytest.approx(expected, rel=1e-12)


def test_model_side_domain():
    with pytest.raises(DomainError):
        model_side(0, 1, 1, 4.0)
    with pytest.raises(DomainError):
        model_side(1, 4.0, 1.0, 1.0)


@settings(max_examples=200, deadline=None)
@given(kappas, adjacent, adjacent, angles)
def test_cosine_law_round_trip(kappa, b, c, theta):
    side = model_side(kappa, b, c, theta)
    assert angle_from_sides(kappa, side, b, c) == pytest.approx(theta, abs=1e-7)
    expected = cs(kappa, b) * cs(kappa, c) + kappa * sn(kappa, b) * sn(kappa, c) * math.cos(theta)
    assert cs(kappa, side) == pytest.approx(expected, abs=1e-12)


@settings(max_examples=200, deadline=None)
@given(kappas, adjacent, adjacent, st.floats(min_value=math.pi + 1e-6, max_value=2 * math.pi))
def test_model_side_rejects_reflex_angles(kappa, b, c, theta):
    with pytest.raises(DomainError):
        model_side(kappa, b, c, theta)


@settings(max_examples=100, deadline=None)
@given(st.sampled_from([1.0, 4.0]), st.floats(min_value=1.001, max_value=1.5), adjacent, angles)
def test_model_side_rejects_sides_beyond_the_diameter(kappa, stretch, c, theta):
    with pytest.raises(DomainError):
        model_side(kappa, stretch * diameter(kappa), c, theta)


@settings(max_examples=200, deadline=None)
@given(kappas, adjacent, adjacent, angles)
def test_model_triangles_have_valid_sides(kappa, b, c, theta):
    sides = TriangleSides(model_side(kappa, b, c, theta), b, c)
    sides.validate(kappa)
    assert comparison_angle(kappa, sides, "r") == pytest.approx(theta, abs=1e-7)


@settings(max_examples=200, deadline=None)
@given(kappas, adjacent, adjacent, st.floats(min_value=0.01, max_value=1.0))
def test_sides_beyond_the_triangle_inequality_are_rejected(kappa, b, c, excess):
    with pytest.raises(DomainError):
        TriangleSides(b + c + excess, b, c).validate(kappa)


def test_comparison_angle():
    assert comparison_angle(0, TriangleSides(3, 4, 5), "q") == pytest.approx(math.pi / 2)
    assert comparison_angle(0, TriangleSides(1, 2, 1), "p") == pytest.approx(math.pi)
    expected = math.acos(math.cosh(1.0) / (math.cosh(1.0) + 1.0))
    assert comparison_angle(-1, TriangleSides(1, 1, 1), "r") == pytest.approx(expected, rel=1e-12)


def test_comparison_angle_errors():
    with pytest.raises(DegenerateError):
        comparison_angle(0, TriangleSides(0, 1, 1), "q")
    with pytest.raises(DomainError):
        comparison_angle(0, TriangleSides(1, 1, 3), "q")
    with pytest.raises(DomainError):
        comparison_angle(1, TriangleSides(3, 3, 3), "q")
    with pytest.raises(ValueError):
        comparison_angle(0, TriangleSides(1, 1, 1), "x")  # type: ignore[arg-type]


def test_angle_monotone_in_opposite_side():
    opposite = np.linspace(0.1, 1.9, 40)
    angles = angle_from_sides(-1.0, opposite, 1.0, 1.0)
    assert np.all(np.diff(angles) > 0)


@settings(max_examples=200, deadline=None)
@given(kappas, adjacent, adjacent, st.floats(min_value=0.0, max_value=1.0), st.floats(min_value=0.0, max_value=1.0))
def test_angle_grows_with_opposite_side(kappa, b, c, first, second):
    assume(abs(first - second) > 1e-3)
    low, high = abs(b - c), b + c
    shorter = low + min(first, second) * (high - low)
    longer = low + max(first, second) * (high - low)
    assert angle_from_sides(kappa, shorter, b, c) <= angle_from_sides(kappa, longer, b, c) + 1e-9


def test_comparison_point_distance():
    sides = TriangleSides(1.3, 0.9, 1.1)
    assert comparison_point_distance(-1, sides, 0.0) == 1.3
    assert comparison_point_distance(-1, sides, 1.0) == 1.1
    assert comparison_point_distance(0, TriangleSides(2, 2, 2), 0.5) == pytest.approx(math.sqrt(3), rel=1e-12)
    half = math.pi / 2
    assert comparison_point_distance(1, TriangleSides(half, half, half), 0.5) == pytest.approx(half, rel=1e-12)


def test_comparison_point_distance_matches_cosine_law():
    kappa, sides, t = -1.0, TriangleSides(1.2, 1.5, 0.8), 0.3
    angle_q = comparison_angle(kappa, sides, "q")
    expected = model_side(kappa, sides.a, t * sides.b, angle_q)
    assert comparison_point_distance(kappa, sides, t) == pytest.approx(expected, rel=1e-10)


def test_concavity_modulus_and_rate():
    assert distance_concavity_modulus(0, 2.0) == 0.5
    assert distance_concavity_modulus(-1, 1.0) == pytest.approx(math.cosh(1) / math.sinh(1))
    with pytest.raises(DegenerateError):
        distance_concavity_modulus(0, 0.0)
    assert lipschitz_contraction_rate(1.0, 0.05) == pytest.approx(math.cosh(1) / math.sinh(0.95))
    assert diameter(4.0) == pytest.approx(math.pi / 2)
    assert diameter(-1.0) == math.inf


def test_sigma_examples():
    assert sigma(CDParams(0, 3), 0.3, 2.0).value == pytest.approx(0.3)
    assert sigma(CDParams(4, 1), 0.5, math.pi).infinite
    expected = math.sinh(math.sqrt(0.5)) / math.sinh(math.sqrt(2.0))
    assert sigma(CDParams(-1, 2), 0.5, 2.0).value == pytest.approx(expected, abs=1e-10)
    assert expected == pytest.approx(0.396639, abs=1e-6)


def test_sigma_boundary_values():
    for params in (CDParams(-1, 2), CDParams(1, 3), CDParams(0, 1)):
        assert sigma(params, 0.0, 1.5).value == 0.0
        assert sigma(params, 1.0, 1.5).value == 1.0


def test_tau_examples():
    assert tau(CDParams(5.0, 1.0), 0.3, 1.0).value == 0.3
    assert tau(CDParams(0.0, 3.0), 0.4, 2.0).value == pytest.approx(0.4)
    expected = math.sqrt(0.5) * math.sqrt(math.sinh(1.0) / math.sinh(2.0))
    assert tau(CDParams(-1, 2), 0.5, 2.0).value == pytest.approx(expected, abs=1e-10)
    assert expected == pytest.approx(0.402509, abs=1e-6)


@settings(max_examples=200, deadline=None)
@given(
    st.floats(min_value=-4.0, max_value=4.0),
    st.floats(min_value=1.5, max_value=5.0),
    st.floats(min_value=0.0, max_value=1.0),
    st.floats(min_value=0.01, max_value=2.0),
)
def test_tau_not_below_sigma(k, n, t, theta):
    params = CDParams(k, n)
    s, u = sigma(params, t, theta), tau(params, t, theta)
    assume(not s.infinite)
    assert u.infinite or u.value >= s.value - 1e-12


def test_cd_params_validation():
    with pytest.raises(ValueError):
        CDParams(0.0, 0.5)
    assert CDParams(-1.0, 2.0).with_dimension(3.0) == CDParams(-1.0, 3.0)


def test_bg_profile():
    assert bg_profile(CDParams(0, 2), 1.7) == pytest.approx(1.7**2 / 2)
    assert bg_profile(CDParams(0, 3), 2.0) == pytest.approx(8.0 / 3.0)
    assert bg_profile(CDParams(-1, 2), 1.0) == pytest.approx(math.cosh(1) - 1, rel=1e-10)
    radii = np.linspace(0.1, 3, 10)
    values = [bg_profile(CDParams(-1, 3), r) for r in radii]
    assert all(b > a for a, b in zip(values, values[1:]))
    with pytest.raises(DomainError):
        bg_profile(CDParams(1, 2), 4.0)
    with pytest.raises(DomainError):
        bg_profile(CDParams(0, 1), 1.0)


def test_c_coeff():
    assert c_coeff(CDParams(-1, 2), 10.0, 1e-6) == pytest.approx(1.0 / math.tanh(5.0), abs=1e-5)
    assert c_coeff(CDParams(-1, 2), 40.0, 1e-6) == pytest.approx(1.0, abs=1e-5)
    assert c_coeff(CDParams(-4, 3), 60.0, 1e-6) == pytest.approx(math.sqrt(8.0), abs=1e-3)
    assert c_coeff_limit(CDParams(-4, 3)) == pytest.approx(math.sqrt(8.0))
    ladder = [c_coeff(CDParams(-1, 2), r, 1e-4) for r in (2.0, 5.0, 10.0, 20.0)]
    assert all(b < a for a, b in zip(ladder, ladder[1:]))
    with pytest.raises(ValueError):
        c_coeff(CDParams(1, 2), 10.0, 0.1)
    with pytest.raises(ValueError):
        c_coeff(CDParams(-1, 2), 1.0, 2.0)


def test_simplicial_volume_coefficient():
    assert simplicial_volume_coefficient(2, "cd", params=CDParams(-1, 2)) == pytest.approx(2.0)
    assert simplicial_volume_coefficient(2, "alexandrov", kappa=-1.0) == pytest.approx(2.0)
    assert simplicial_volume_coefficient(3, "cd", params=CDParams(-2, 4)) == pytest.approx(6 * 6**1.5)
    with pytest.raises(ValueError):
        simplicial_volume_coefficient(2, "alexandrov", kappa=1.0)
    with pytest.raises(ValueError):
        simplicial_volume_coefficient(2, "cd", params=CDParams(0.5, 2))
