import math

import numpy as np
import pytest

from alexandrov_flow.semiconcave import (
    AffineField,
    CombinedField,
    DistanceFromSet,
    DistanceFromSphere,
    Region,
    check_regularity,
    cone_distance,
    differential,
    differentials,
    field_from_dict,
    gradient,
    negated,
    verify_concavity,
)
from alexandrov_flow.spaces import Space, TangentVector
from alexandrov_flow.utils.errors import ConfigError, GradientCheckError, RegionError

CONE = Space.euclidean_cone(3 * math.pi / 2)
PLANE = Space.model_plane(0.0)


def test_distance_from_set_values():
    field = DistanceFromSet(CONE, [CONE.apex, CONE.point(2.0, 0.0)])
    assert field.evaluate(CONE.point(0.5, 1.0)) == pytest.approx(0.5)
    assert field.evaluate(CONE.point(1.5, 0.0)) == pytest.approx(0.5)
    assert field.lipschitz == 1.0
    with pytest.raises(ValueError):
        DistanceFromSet(CONE, [])


def test_exact_sphere_field():
    field = DistanceFromSphere(CONE, CONE.apex, 1.0)
    assert field.exact
    assert field.net == []
    assert field.evaluate(CONE.point(0.25, 1.0)) == pytest.approx(0.75)
    assert field.evaluate(CONE.point(1.5, 1.0)) == pytest.approx(0.5)
    signed = DistanceFromSphere(CONE, CONE.apex, 1.0, signed_inside=True)
    assert signed.evaluate(CONE.point(1.5, 1.0)) == pytest.approx(-0.5)
    with pytest.raises(ValueError):
        DistanceFromSphere(CONE, CONE.apex, 0.0)


def test_net_sphere_field():
    center = PLANE.point(1.0, 0.0)
    field = DistanceFromSphere(PLANE, center, 0.5)
    assert not field.exact
    assert len(field.net) == 256
    assert field.evaluate(center) == pytest.approx(0.5, abs=1e-9)
    for point in field.net[::32]:
        assert field.evaluate(point) == pytest.approx(0.0, abs=1e-9)


def test_affine_and_combined_fields():
    d_apex = DistanceFromSet(CONE, [CONE.apex])
    minus = negated(d_apex)
    x = CONE.point(0.8, 0.3)
    assert minus.evaluate(x) == pytest.approx(-0.8)
    assert (-d_apex).scale == -1.0
    assert minus.modulus(x, 0.0) == pytest.approx(-1.0 / 0.8)
    assert AffineField(d_apex, 2.0, 1.0).lipschitz == 2.0
    combined = CombinedField([d_apex, DistanceFromSet(CONE, [CONE.point(2.0, 0.0)])], [-0.5, -0.5])
    assert combined.lipschitz == pytest.approx(1.0)
    assert combined.evaluate(CONE.point(1.0, 0.0)) == pytest.approx(-1.0)
    with pytest.raises(ValueError):
        CombinedField([d_apex], [1.0, 2.0])
    with pytest.raises(ValueError):
        CombinedField([d_apex, DistanceFromSet(PLANE, [PLANE.apex])], [1.0, 1.0])


def test_field_descriptor():
    field = CombinedField(
        [DistanceFromSet(CONE, [CONE.apex]), DistanceFromSphere(CONE, CONE.apex, 1.0, signed_inside=True)],
        [-0.5, 2.0],
    )
    rebuilt = field_from_dict(CONE, field.to_dict())
    x = CONE.point(0.7, 2.0)
    assert rebuilt.evaluate(x) == pytest.approx(field.evaluate(x))
    assert rebuilt.to_dict() == field.to_dict()


@pytest.mark.parametrize("data", [{"kind": "nope"}, {"kind": "dist_from_set"}, {"kind": "dist_from_sphere"}])
def test_field_descriptor_errors(data):
    with pytest.raises(ConfigError):
        field_from_dict(CONE, data)


def test_differential_of_apex_distance():
    field = DistanceFromSet(CONE, [CONE.apex])
    x = CONE.point(1.0, 0.0)
    assert differential(field, x, 0.0) == pytest.approx(1.0, abs=1e-6)
    assert differential(field, x, math.pi) == pytest.approx(-1.0, abs=1e-6)
    assert differential(field, x, math.pi / 2) == pytest.approx(0.0, abs=1e-6)
    angles = np.array([0.3, 1.0, 2.0])
    assert differentials(field, x, angles) == pytest.approx(np.cos(angles), abs=1e-6)
    # every direction at the apex leaves it at unit speed
    assert differential(field, CONE.apex, 2.0) == pytest.approx(1.0, abs=1e-9)


def test_gradient_of_apex_distance():
    field = DistanceFromSet(CONE, [CONE.apex])
    result = gradient(field, CONE.point(1.0, 0.5), resolution=180)
    assert result.regular
    assert not result.ambiguous
    assert result.norm == pytest.approx(1.0, abs=1e-6)
    assert min(result.vector.direction, 2 * math.pi - result.vector.direction) < 1e-4
    assert result.max_violation <= 1e-6


def test_gradient_toward_apex_of_negated_distance():
    field = negated(DistanceFromSet(CONE, [CONE.apex]))
    result = gradient(field, CONE.point(1.0, 0.5), resolution=180)
    assert result.norm == pytest.approx(1.0, abs=1e-6)
    assert result.vector.direction == pytest.approx(math.pi, abs=1e-4)


def test_critical_point_at_maximum():
    field = negated(DistanceFromSet(CONE, [CONE.apex]))
    result = gradient(field, CONE.apex, resolution=64)
    assert result.critical
    assert result.norm == 0.0


def test_gradient_at_set_point_is_rejected():
    field = DistanceFromSet(CONE, [CONE.apex])
    with pytest.raises(GradientCheckError):
        gradient(field, CONE.apex, resolution=64)
    result = gradient(field, CONE.apex, resolution=64, check=False)
    assert result.ambiguous
    assert result.max_violation > 1.0


def test_gradient_resolution():
    with pytest.raises(ValueError):
        gradient(DistanceFromSet(CONE, [CONE.apex]), CONE.point(1.0), resolution=8)


def test_distance_is_concave_with_modulus():
    field = DistanceFromSet(CONE, [CONE.apex])
    report = verify_concavity(field, Region(CONE.apex, 1.0, 0.5), 0.0, samples=200, seed=1)
    assert report.passed
    assert report.samples + report.skipped == 200
    assert report.modulus_bound <= 2.0 + 1e-9
    assert report.to_dict()["passed"]


def test_negated_distance_is_not_concave():
    field = negated(DistanceFromSet(CONE, [CONE.apex]))
    report = verify_concavity(field, Region(CONE.apex, 1.0, 0.5), 0.0, samples=200, seed=1)
    assert not report.passed
    assert report.witness


def test_concavity_region_errors():
    field = DistanceFromSet(CONE, [CONE.apex])
    with pytest.raises(RegionError):
        verify_concavity(field, Region(CONE.apex, 0.5, 1.0), 0.0)


def test_regularity_near_center():
    field = DistanceFromSphere(CONE, CONE.apex, 1.0)
    report = check_regularity(field, CONE.apex, 0.1, 0.5, samples=10, resolution=180)
    assert report.passed
    assert report.min_differential == pytest.approx(1.0, abs=1e-6)
    assert report.samples == 10


def test_cone_distance():
    x = CONE.point(1.0)
    first = TangentVector(x, 0.0, 1.0)
    second = TangentVector(x, math.pi / 2, 1.0)
    assert cone_distance(first, second, math.pi / 2) == pytest.approx(math.sqrt(2.0))
    assert cone_distance(first, first, 0.0) == 0.0
