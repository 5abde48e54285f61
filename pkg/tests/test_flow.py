import math

import pytest

from alexandrov_flow.flow import (
    CURVE_CSV_HEADER,
    ContractionReport,
    FlowHomotopy,
    FlowParams,
    build_sllc_certificate,
    check_arrival,
    check_contraction,
    check_homotopy_bound,
    default_field,
    flow_map,
    integrate,
    semigroup_study,
)
from alexandrov_flow.semiconcave import CombinedField, DistanceFromSet, DistanceFromSphere
from alexandrov_flow.spaces import Space
from alexandrov_flow.utils.errors import CertificateError
from alexandrov_flow.utils.utils import make_rng

CONE = Space.euclidean_cone(3 * math.pi / 2)
HYPERBOLIC = Space.model_plane(-1.0)
PARAMS = FlowParams(resolution=180)


def test_default_params():
    params = FlowParams.default()
    assert params.rate == pytest.approx(math.cosh(1.0) / math.sinh(0.95))
    assert params.ell == pytest.approx(0.05 / math.cos(0.1))
    assert params.contraction_constant == pytest.approx(math.exp(params.rate * params.ell))
    assert params.to_dict()["lambda"] == params.rate


@pytest.mark.parametrize(
    "values",
    [
        {"eps": 0.6},
        {"eps": 0.0},
        {"delta0": 1.0},
        {"R": -1.0},
        {"min_step": 0.1, "max_step": 0.01},
        {"resolution": 8},
        {"lam": 0.5},
    ],
)
def test_params_validation(values):
    with pytest.raises(ValueError):
        FlowParams(**values)


def test_params_from_dict():
    params = FlowParams.from_dict({"eps": 0.2, "R": 2.0, "lambda": 5.0, "unknown": 1})
    assert params.eps == 0.2
    assert params.R == 2.0
    assert params.rate == 5.0
    assert params.with_fixed_step(1e-3).min_step == 1e-3


def test_curve_reaches_center_and_freezes():
    field = default_field(CONE, CONE.apex, PARAMS)
    curve = integrate(field, CONE.point(0.04, 1.0), 0.1, PARAMS)
    assert curve.terminated == "critical_point"
    assert curve.end == CONE.apex
    assert curve.arrival_time(CONE.apex) == pytest.approx(0.04, abs=1e-6)
    assert curve.position_at(0.02).r == pytest.approx(0.02, abs=1e-6)
    assert curve.position_at(1.0) == CONE.apex
    assert curve.times == sorted(curve.times)
    assert len(curve.to_csv_rows()[0]) == len(CURVE_CSV_HEADER)


def test_curve_from_critical_point():
    field = default_field(CONE, CONE.apex, PARAMS)
    curve = integrate(field, CONE.apex, 0.5, PARAMS)
    assert curve.terminated == "critical_point"
    assert curve.times == [0.0, 0.5]
    with pytest.raises(ValueError):
        integrate(field, CONE.apex, 0.0, PARAMS)


def test_flow_map():
    field = default_field(CONE, CONE.apex, PARAMS)
    xs = [CONE.point(0.3, 0.0), CONE.point(0.2, 2.0)]
    assert flow_map(field, xs, 0.0, PARAMS) == xs
    moved = flow_map(field, xs, 0.1, PARAMS)
    assert [x.r for x in moved] == pytest.approx([0.2, 0.1], abs=1e-6)
    with pytest.raises(ValueError):
        flow_map(field, xs, -1.0, PARAMS)


def test_semigroup_defects_of_radial_flow():
    field = default_field(CONE, CONE.apex, PARAMS)
    study = semigroup_study(field, CONE.point(0.5, 0.0), 0.1, 0.1, PARAMS, first_step=0.02, levels=2)
    assert study.steps == [0.02, 0.01]
    assert max(study.defects) <= 1e-9
    assert len(study.ratios) == 1


def test_semigroup_defect_halves_with_the_step():
    plane = Space.model_plane(0.0)
    field = CombinedField(
        [DistanceFromSet(plane, [plane.point(1.0, 0.0)]), DistanceFromSet(plane, [plane.point(1.0, 1.0)])], [-0.5, -0.5]
    )
    # s is 5.1, 10.2 and 20.4 steps long while s + t is a whole number of steps
    study = semigroup_study(field, plane.point(0.3, 0.1), 0.102, 0.098, PARAMS, first_step=0.02, levels=3)
    assert study.steps == pytest.approx([0.02, 0.01, 0.005])
    assert min(study.defects) > 0.0
    assert len(study.ratios) == 2
    assert all(1.5 <= ratio <= 4.0 for ratio in study.ratios)
    assert all(order >= math.log2(1.5) for order in study.orders)


def test_contraction():
    field = default_field(CONE, CONE.apex, PARAMS)
    report = check_contraction(field, CONE.point(0.04, 0.0), CONE.point(0.03, 1.0), [0.01, 0.02, 0.05], PARAMS)
    assert report.passed
    assert report.checks == 3
    assert report.max_ratio <= 1.0 + 1e-9
    merged = report.merge(ContractionReport())
    assert merged.checks == 3
    assert merged.worst_margin == report.worst_margin


def test_contraction_of_coincident_points():
    field = default_field(CONE, CONE.apex, PARAMS)
    x = CONE.point(0.04, 0.0)
    report = check_contraction(field, x, x, [0.01], PARAMS)
    assert report.passed
    assert report.max_ratio == 0.0


def test_arrival():
    field = default_field(CONE, CONE.apex, PARAMS)
    xs = CONE.sample_ball(CONE.apex, 0.05, make_rng(4), 6) + [CONE.apex]
    report = check_arrival(field, CONE.apex, xs, PARAMS)
    assert report.passed
    assert report.curves == 7
    assert report.frozen
    assert all(math.isfinite(time) for time in report.arrival_times)


def test_homotopy_bound():
    field = default_field(CONE, CONE.apex, PARAMS)
    pairs = [(CONE.point(0.04, 0.0), CONE.point(0.02, 3.0)), (CONE.point(0.01, 1.0), CONE.point(0.05, 1.2))]
    report = check_homotopy_bound(field, pairs, [(0.0, 0.01), (0.02, 0.01), (0.03, 0.03)], PARAMS)
    assert report.passed
    assert report.checks == 6


def test_flow_homotopy_endpoints():
    homotopy = FlowHomotopy(default_field(CONE, CONE.apex, PARAMS), PARAMS)
    x = CONE.point(0.045, 2.0)
    assert homotopy(x, 0.0) == x
    assert homotopy(x, 1.0) == CONE.apex
    assert CONE.distance(homotopy(x, 0.5), CONE.apex) == pytest.approx(0.045 - PARAMS.ell / 2, abs=1e-6)
    with pytest.raises(ValueError):
        homotopy(x, 1.5)


def test_sllc_certificate_on_cone():
    certificate = build_sllc_certificate(CONE, CONE.apex, PARAMS, samples=60, seed=2)
    assert certificate.passed
    assert certificate.samples == 60
    assert certificate.C == pytest.approx(PARAMS.contraction_constant)
    assert certificate.C_prime == pytest.approx(PARAMS.ell)
    assert certificate.fitted_C <= certificate.C
    data = certificate.to_dict()
    assert data["passed"]
    assert "surjectivity" in data


def test_sllc_certificate_on_hyperbolic_plane():
    space = Space.model_plane(-1.0)
    certificate = build_sllc_certificate(space, space.apex, PARAMS, samples=30, seed=0)
    assert certificate.passed


def test_sllc_certificate_radius():
    with pytest.raises(ValueError):
        build_sllc_certificate(CONE, CONE.apex, PARAMS, r=1.0)
    empty = build_sllc_certificate(CONE, CONE.apex, PARAMS, r=0.0)
    assert empty.samples == 0
    assert empty.passed


def test_outward_flow_leaves_the_ball():
    params = FlowParams(resolution=64)
    outward = DistanceFromSphere(CONE, CONE.apex, params.R, signed_inside=True)
    homotopy = FlowHomotopy(-outward, params)
    assert CONE.distance(homotopy(CONE.point(0.02), 1.0), CONE.apex) > 0.02


def test_strict_certificate_raises_on_failure():
    # a negative tolerance makes every endpoint check fail
    with pytest.raises(CertificateError) as error:
        build_sllc_certificate(CONE, CONE.apex, PARAMS, samples=3, tol=-1.0, strict=True)
    assert error.value.witness["check"] == "endpoint_pass"


@pytest.mark.slow
@pytest.mark.parametrize("space", [CONE, HYPERBOLIC], ids=["cone", "hyperbolic"])
def test_contraction_over_seeded_starts(space):
    field = default_field(space, space.apex, PARAMS)
    pool = space.sample_ball(space.apex, PARAMS.delta0 * PARAMS.R, make_rng(11), 400)
    s_grid = [0.01, 0.02, 0.05]
    for x, y in zip(pool[0::2], pool[1::2]):
        report = check_contraction(field, x, y, s_grid, PARAMS, tol=1e-4)
        assert report.passed, report.witness
        assert report.max_ratio <= math.exp(PARAMS.rate * max(s_grid)) * (1.0 + 1e-4)


@pytest.mark.slow
@pytest.mark.parametrize("space", [CONE, HYPERBOLIC], ids=["cone", "hyperbolic"])
def test_arrival_over_seeded_starts(space):
    field = default_field(space, space.apex, PARAMS)
    xs = space.sample_ball(space.apex, PARAMS.delta0 * PARAMS.R, make_rng(12), 200)
    report = check_arrival(field, space.apex, xs, PARAMS, tol=1e-4)
    assert report.curves == 200
    assert report.passed, report.witness
    assert report.frozen
    slope = math.cos(PARAMS.eps)
    for x, arrival in zip(xs, report.arrival_times):
        assert arrival <= space.distance(x, space.apex) / slope + 1e-4


def test_sllc_certificate_draws_fresh_and_close_pairs():
    certificate = build_sllc_certificate(CONE, CONE.apex, PARAMS, samples=40, seed=5)
    assert certificate.passed
    assert certificate.samples == 40
    # both points of every pair are new, so nearly every pair adds two starts
    assert certificate.starts > 60
    assert certificate.to_dict()["starts"] == certificate.starts


def test_sllc_certificate_is_reproducible():
    first = build_sllc_certificate(CONE, CONE.apex, PARAMS, samples=20, seed=9).to_dict()
    second = build_sllc_certificate(CONE, CONE.apex, PARAMS, samples=20, seed=9).to_dict()
    assert first == second
