import math

import numpy as np
import pytest

from alexandrov_flow.spaces import Space, SpacePoint, TangentVector, ball_volume, exp
from alexandrov_flow.utils.errors import (
    ConfigError,
    DegenerateError,
    DomainError,
    GeodesicDomainError,
    NonUniqueGeodesicError,
    RegionError,
    SpaceMismatchError,
)
from alexandrov_flow.utils.utils import make_rng

NARROW = Space.euclidean_cone(3 * math.pi / 2)
WIDE = Space.euclidean_cone(5 * math.pi / 2)
SPHERE = Space.model_plane(1.0)
PLANE = Space.model_plane(0.0)


def test_point_normalization():
    assert NARROW.point(1.0, 3 * math.pi / 2 + 0.1).phi == pytest.approx(0.1)
    assert NARROW.point(0.0, 1.0) == NARROW.apex
    assert SPHERE.point(math.pi, 2.0) == SPHERE.far_pole
    assert PLANE.far_pole is None
    with pytest.raises(DomainError):
        NARROW.point(-1.0)
    with pytest.raises(DomainError):
        SPHERE.point(4.0)


def test_contains_and_mismatch():
    assert NARROW.contains(NARROW.point(1.0, 4.0))
    assert not NARROW.contains(SpacePoint(1.0, 4.8))
    assert not NARROW.contains((1.0, 0.0))
    with pytest.raises(SpaceMismatchError):
        NARROW.distance(SpacePoint(1.0, 4.8), NARROW.apex)


def test_singular_points_and_direction_circles():
    assert NARROW.is_singular(NARROW.apex)
    assert not PLANE.is_singular(PLANE.apex)
    assert NARROW.directions_circle_length(NARROW.apex) == pytest.approx(3 * math.pi / 2)
    assert NARROW.directions_circle_length(NARROW.point(1.0)) == pytest.approx(2 * math.pi)
    assert Space.spherical_cone(math.pi).poles() == [SpacePoint(0.0, 0.0), SpacePoint(math.pi, 0.0)]


def test_cone_distances():
    x = NARROW.point(1.0, 0.0)
    assert NARROW.distance(x, NARROW.point(1.0, math.pi / 2)) == pytest.approx(math.sqrt(2.0))
    assert NARROW.distance(x, NARROW.apex) == pytest.approx(1.0)
    # the short way round the narrow cone is π/2
    assert NARROW.distance(x, NARROW.point(2.0, math.pi)) == pytest.approx(math.sqrt(5.0))
    # gaps of at least π on the wide cone route through the apex
    assert WIDE.distance(WIDE.point(1.0, 0.0), WIDE.point(2.0, math.pi)) == pytest.approx(3.0)
    assert SPHERE.distance(SPHERE.point(1.0, 0.0), SPHERE.point(1.0, math.pi)) == pytest.approx(2.0)


def test_distances_vectorized_matches_scalar():
    x = WIDE.point(1.5, 0.3)
    rs = np.array([0.0, 0.5, 1.0, 2.5])
    phis = np.array([0.0, 2.0, 4.0, 7.0])
    expected = [WIDE.distance(x, WIDE.point(r, phi)) for r, phi in zip(rs, phis)]
    assert WIDE.distances(x, rs, phis) == pytest.approx(expected)


def test_distance_metric_axioms():
    rng = make_rng(3)
    for space in (NARROW, WIDE, SPHERE, Space.model_plane(-1.0)):
        radius = 1.0 if space.kappa <= 0 else 1.2
        points = space.sample_ball(space.apex, radius, rng, 12)
        for a in points:
            for b in points:
                assert space.distance(a, b) == pytest.approx(space.distance(b, a), abs=1e-12)
                for c in points[:4]:
                    assert space.distance(a, c) <= space.distance(a, b) + space.distance(b, c) + 1e-10


def test_geodesic_through_apex():
    x = WIDE.point(1.0, 0.0)
    y = WIDE.point(2.0, math.pi)
    assert WIDE.log_direction(x, y).direction == pytest.approx(math.pi)
    assert WIDE.log_direction(x, y).mag == pytest.approx(3.0)
    assert WIDE.geodesic_point(x, y, 1 / 6).r == pytest.approx(0.5)
    assert WIDE.geodesic_point(x, y, 1 / 6).phi == pytest.approx(0.0)
    middle = WIDE.geodesic_point(x, y, 0.5)
    assert middle.r == pytest.approx(0.5)
    assert middle.phi == pytest.approx(math.pi)


def test_geodesic_point_splits_distance():
    x = NARROW.point(1.0, 0.0)
    y = NARROW.point(1.5, 1.2)
    for t in (0.1, 0.4, 0.9):
        z = NARROW.geodesic_point(x, y, t)
        assert NARROW.distance(x, z) == pytest.approx(t * NARROW.distance(x, y), abs=1e-10)
        assert NARROW.distance(z, y) == pytest.approx((1 - t) * NARROW.distance(x, y), abs=1e-10)
    assert NARROW.geodesic_point(x, y, 0.0) == x
    assert NARROW.geodesic_point(x, y, 1.0) == y
    with pytest.raises(ValueError):
        NARROW.geodesic_point(x, y, 1.5)


def test_non_unique_geodesics():
    with pytest.raises(NonUniqueGeodesicError):
        NARROW.log_direction(NARROW.point(1.0, 0.0), NARROW.point(1.0, 3 * math.pi / 4))
    with pytest.raises(NonUniqueGeodesicError):
        SPHERE.log_direction(SPHERE.point(math.pi / 2, 0.0), SPHERE.point(math.pi / 2, math.pi))
    with pytest.raises(DegenerateError):
        NARROW.log_direction(NARROW.apex, NARROW.apex)


def test_exp_inverts_log():
    x = NARROW.point(1.0, 0.5)
    y = NARROW.point(0.8, 1.4)
    vector = NARROW.log_direction(x, y)
    end = exp(NARROW, vector, vector.mag)
    assert NARROW.distance(end, y) == pytest.approx(0.0, abs=1e-9)


def test_exp_through_regular_origin():
    end = PLANE.exp(PLANE.point(1.0, 0.0), math.pi, 2.0)
    assert end.r == pytest.approx(1.0)
    assert end.phi == pytest.approx(math.pi)


def test_exp_stops_at_singular_apex():
    x = NARROW.point(1.0, 0.0)
    assert NARROW.exp(x, math.pi, 0.5).r == pytest.approx(0.5)
    with pytest.raises(GeodesicDomainError) as error:
        NARROW.exp(x, math.pi, 2.0)
    assert error.value.max_t == pytest.approx(1.0)
    with pytest.raises(ValueError):
        NARROW.exp(x, 0.0, -1.0)


def test_exp_from_apex():
    end = NARROW.exp(NARROW.apex, 1.0, 2.0)
    assert end == NARROW.point(2.0, 1.0)
    assert NARROW.exp(NARROW.apex, 1.0, 0.0) == NARROW.apex


@pytest.mark.parametrize("theta", [math.pi, 3 * math.pi / 2, 2 * math.pi, 3 * math.pi])
def test_ball_volume_at_apex(theta):
    cone = Space.euclidean_cone(theta)
    assert ball_volume(cone, cone.apex, 1.5) == pytest.approx(theta * 1.5**2 / 2, rel=1e-10)


def test_ball_volume_off_center():
    assert PLANE.ball_volume(PLANE.point(1.0, 0.0), 0.5) == pytest.approx(math.pi * 0.25, rel=1e-7)
    cap = 2 * math.pi * (1 - math.cos(0.5))
    assert SPHERE.ball_volume(SPHERE.point(1.0, 0.0), 0.5) == pytest.approx(cap, rel=1e-7)
    # a ball far from the apex does not see the cone point
    assert NARROW.ball_volume(NARROW.point(3.0, 0.0), 1.0) == pytest.approx(math.pi, rel=1e-7)
    with pytest.raises(ValueError):
        PLANE.ball_volume(PLANE.apex, 0.0)


def test_sample_ball():
    rng = make_rng(0)
    center = NARROW.point(0.5, 1.0)
    points = NARROW.sample_ball(center, 1.0, rng, 50, r_min=0.25)
    assert len(points) == 50
    for point in points:
        assert 0.25 - 1e-9 <= NARROW.distance(center, point) <= 1.0 + 1e-9
    with pytest.raises(RegionError):
        NARROW.sample_ball(center, 1.0, rng, 5, r_min=2.0)


def test_descriptor():
    for space in (NARROW, SPHERE, Space.spherical_cone(math.pi)):
        assert Space.from_dict(space.to_dict()) == space
    assert NARROW.to_dict() == {"kind": "euclidean_cone", "theta_total": 3 * math.pi / 2}


@pytest.mark.parametrize(
    "data",
    [{"kind": "torus"}, {"kind": "euclidean_cone"}, {"kind": "euclidean_cone", "theta_total": -1.0}, {}],
)
def test_descriptor_errors(data):
    with pytest.raises(ConfigError):
        Space.from_dict(data)


def test_tangent_vector():
    vector = TangentVector(NARROW.apex, 1.0, 2.0)
    assert vector.scaled(0.5).mag == pytest.approx(1.0)
    assert TangentVector(NARROW.apex, 0.0, 0.0).is_zero
    with pytest.raises(ValueError):
        TangentVector(NARROW.apex, 0.0, -1.0)
