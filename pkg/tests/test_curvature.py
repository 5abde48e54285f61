import math

import pytest

from alexandrov_flow.curvature import CurvatureReport, default_region, quadruple_test, triangle_comparison_test
from alexandrov_flow.semiconcave import Region
from alexandrov_flow.spaces import Space, SpacePoint
from alexandrov_flow.utils.errors import RegionError

SAMPLES = 400

NONNEGATIVE = [
    (Space.euclidean_cone(1.5 * math.pi), 0.0),
    (Space.model_plane(0.0), 0.0),
    (Space.model_plane(-1.0), -1.0),
    (Space.model_plane(1.0), 1.0),
    (Space.spherical_cone(1.5 * math.pi), 1.0),
]


@pytest.mark.parametrize("space, kappa", NONNEGATIVE)
@pytest.mark.parametrize("test", [triangle_comparison_test, quadruple_test])
def test_spaces_satisfy_their_bound(space, kappa, test):
    report = test(space, default_region(space), kappa, SAMPLES, seed=7)
    assert report.passed()
    assert report.tested + report.skipped == SAMPLES
    assert report.tested > SAMPLES // 2


@pytest.mark.parametrize("test", [triangle_comparison_test, quadruple_test])
def test_wide_cone_violates_nonnegative_curvature(test):
    cone = Space.euclidean_cone(2.5 * math.pi)
    report = test(cone, default_region(cone), 0.0, SAMPLES, seed=7)
    assert not report.passed()
    assert report.worst_margin < -1e-3
    assert report.witness


def test_flat_plane_is_not_positively_curved():
    plane = Space.model_plane(0.0)
    report = triangle_comparison_test(plane, default_region(plane), 1.0, SAMPLES, seed=1)
    assert not report.passed()


def test_quadruple_witness_exceeds_full_angle():
    cone = Space.euclidean_cone(2.5 * math.pi)
    report = quadruple_test(cone, default_region(cone), 0.0, SAMPLES, seed=3)
    assert report.witness["angle_sum"] > 2 * math.pi


def test_seeded_reports_are_reproducible():
    cone = Space.euclidean_cone(1.5 * math.pi)
    first = triangle_comparison_test(cone, default_region(cone), 0.0, 100, seed=5)
    second = triangle_comparison_test(cone, default_region(cone), 0.0, 100, seed=5)
    assert first.to_dict() == second.to_dict()


def test_region_errors():
    sphere = Space.model_plane(1.0)
    with pytest.raises(RegionError):
        triangle_comparison_test(sphere, Region(sphere.apex, 2.0), 1.0, 10)
    cone = Space.euclidean_cone(1.5 * math.pi)
    with pytest.raises(RegionError):
        quadruple_test(cone, Region(SpacePoint(1.0, 6.0), 1.0), 0.0, 10)
    with pytest.raises(RegionError):
        quadruple_test(cone, Region(cone.apex, 1.0, 2.0), 0.0, 10)


def test_default_region():
    assert default_region(Space.model_plane(-1.0)).r_max == 1.0
    assert default_region(Space.model_plane(4.0)).r_max == pytest.approx(math.pi / 16)


def test_report_merge():
    first = CurvatureReport("triangle", 0.0, tested=3, skipped=1, worst_margin=0.5, witness={"id": 1})
    second = CurvatureReport("triangle", 0.0, tested=2, skipped=0, worst_margin=-0.5, witness={"id": 2})
    merged = first.merge(second)
    assert merged.tested == 5
    assert merged.skipped == 1
    assert merged.witness == {"id": 2}
    assert not merged.passed()
    assert merged.passed(tol=1.0)
    assert merged.to_dict()["passed"] is False
