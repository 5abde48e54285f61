"""This module contains the empirical lower-curvature-bound tests: triangle comparison
and the quadruple condition. Half of the sampling budget is spent near the poles, where
cone singularities violate the bounds."""

import logging
import math
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from alexandrov_flow.model_trig import TriangleSides, comparison_angle, comparison_point_distance, diameter
from alexandrov_flow.semiconcave import Region
from alexandrov_flow.spaces import Space, SpacePoint
from alexandrov_flow.utils.errors import (
    DegenerateError,
    DomainError,
    NonUniqueGeodesicError,
    RegionError,
)
from alexandrov_flow.utils.utils import make_rng

logger = logging.getLogger(__name__)

MIN_PAIR_DISTANCE = 1e-6


@dataclass
class CurvatureReport:
    """Outcome of a curvature test. A negative margin is a violation.

    Args:
        test (str): "triangle" or "quadruple".
        kappa_tested (float): Curvature bound κ tested.
        tested (int): Number of configurations evaluated.
        skipped (int): Degenerate or unrealizable configurations.
        worst_margin (float): Smallest margin.
        seed (int): Seed of the sampling.
        witness (dict[str, Any]): Configuration with the smallest margin.
    """

    test: str
    kappa_tested: float
    tested: int = 0
    skipped: int = 0
    worst_margin: float = math.inf
    seed: int = 0
    witness: dict[str, Any] = field(default_factory=dict)

    def passed(self, tol: float = 1e-9) -> bool:
        """Returns True if the worst margin is at least -tol.

        Args:
            tol (float, optional): Tolerance. Defaults to 1e-9.

        Returns:
            bool: Verdict."""
        return self.worst_margin >= -tol

    def record(self, margin: float, witness: dict[str, Any]) -> None:
        """Adds one tested configuration.

        Args:
            margin (float): Its margin.
            witness (dict[str, Any]): Its description."""
        self.tested += 1
        if margin < self.worst_margin:
            self.worst_margin = margin
            self.witness = witness

    def merge(self, other: "CurvatureReport") -> "CurvatureReport":
        """Combines two reports of the same test.

        Args:
            other (CurvatureReport): Another report.

        Returns:
            CurvatureReport: Combined report."""
        worst = self if self.worst_margin <= other.worst_margin else other
        return CurvatureReport(
            self.test,
            self.kappa_tested,
            self.tested + other.tested,
            self.skipped + other.skipped,
            worst.worst_margin,
            self.seed,
            worst.witness,
        )

    def to_dict(self) -> dict[str, Any]:
        """Returns the JSON representation.

        Returns:
            dict[str, Any]: Report fields and the verdict."""
        return {
            "test": self.test,
            "kappa_tested": self.kappa_tested,
            "tested": self.tested,
            "skipped": self.skipped,
            "worst_margin": self.worst_margin,
            "seed": self.seed,
            "witness": self.witness,
            "passed": self.passed(),
        }


def _check_region(space: Space, region: Region, kappa: float) -> None:
    region.validate()
    if kappa > 0 and 6.0 * region.r_max >= 2.0 * diameter(kappa):
        raise RegionError(
            f"Triangles in a ball of radius {region.r_max!r} may exceed the perimeter cap 2π/√κ for κ = {kappa}"
        )
    if not space.contains(region.center):
        raise RegionError(f"Region center {region.center} is not a point of {space!r}")


def _near_pole_points(space: Space, region: Region, rng: np.random.Generator, n: int) -> list[SpacePoint]:
    """Returns points in small balls around the poles inside the region, or uniform region
    points when no pole lies in the region."""
    inside = [pole for pole in space.poles() if space.distance(region.center, pole) < region.r_max]
    if not inside:
        return region.sample(space, rng, n)
    points = []
    for index in range(n):
        pole = inside[index % len(inside)]
        reach = min(region.r_max - space.distance(region.center, pole), region.r_max)
        points.extend(space.sample_ball(pole, reach, rng, 1))
    return points


def _distinct(space: Space, points: list[SpacePoint]) -> bool:
    return all(
        space.distance(first, second) >= MIN_PAIR_DISTANCE
        for index, first in enumerate(points)
        for second in points[index + 1 :]
    )


# pylint: disable=R0913, R0914
def triangle_comparison_test(
    space: Space,
    region: Region,
    kappa: float,
    samples: int = 10000,
    seed: int = 0,
) -> CurvatureReport:
    """Samples triangles pqr with a unique geodesic qr and a point x on it and compares
    |px| with the distance |p̃x̃| in the comparison triangle in M_κ; margin = |px| - |p̃x̃|.
    Half of the triangles have p, q, r near the poles.

    Args:
        space (Space): The space.
        region (Region): Sampling region.
        kappa (float): Curvature bound tested.
        samples (int, optional): Number of triangles. Defaults to 10000.
        seed (int, optional): Seed. Defaults to 0.

    Raises:
        RegionError: If the region is invalid or too large for the perimeter cap.

    Returns:
        CurvatureReport: Smallest margin and witness."""
    _check_region(space, region, kappa)
    rng = make_rng(seed)
    report = CurvatureReport("triangle", kappa, seed=seed)
    focused = samples // 2
    vertices = _near_pole_points(space, region, rng, 3 * focused) + region.sample(space, rng, 3 * (samples - focused))
    for index in range(samples):
        p, q, r = vertices[3 * index : 3 * index + 3]
        if not _distinct(space, [p, q, r]):
            report.skipped += 1
            continue
        sides = TriangleSides(space.distance(p, q), space.distance(q, r), space.distance(r, p))
        t = float(rng.random())
        try:
            x = space.geodesic_point(q, r, t)
            model = comparison_point_distance(kappa, sides, t)
        except (NonUniqueGeodesicError, DomainError):
            report.skipped += 1
            continue
        margin = space.distance(p, x) - model
        report.record(
            margin,
            {
                "p": p.to_dict(),
                "q": q.to_dict(),
                "r": r.to_dict(),
                "t": t,
                "distance": margin + model,
                "model_distance": model,
            },
        )
    logger.info("Triangle test on %r at κ=%s: worst margin %.3e", space, kappa, report.worst_margin)
    return report


# pylint: disable=R0913, R0914
def quadruple_test(
    space: Space,
    region: Region,
    kappa: float,
    samples: int = 10000,
    seed: int = 0,
) -> CurvatureReport:
    """Samples quadruples (p0; p1, p2, p3) and checks that the comparison angles at p0 sum
    to at most 2π; margin = 2π - sum. Half of the quadruples put p0 at a pole inside the
    region. Quadruples with a pair closer than 1e-6 and unrealizable comparison
    triangles are skipped.

    Args:
        space (Space): The space.
        region (Region): Sampling region.
        kappa (float): Curvature bound tested.
        samples (int, optional): Number of quadruples. Defaults to 10000.
        seed (int, optional): Seed. Defaults to 0.

    Raises:
        RegionError: If the region is invalid or too large for the perimeter cap.

    Returns:
        CurvatureReport: Smallest margin and witness."""
    _check_region(space, region, kappa)
    rng = make_rng(seed)
    report = CurvatureReport("quadruple", kappa, seed=seed)
    poles = [pole for pole in space.poles() if space.distance(region.center, pole) < region.r_max]
    focused = samples // 2 if poles else 0
    others = region.sample(space, rng, 3 * samples)
    centers = region.sample(space, rng, samples - focused)
    for index in range(samples):
        p0 = poles[index % len(poles)] if index < focused else centers[index - focused]
        p1, p2, p3 = others[3 * index : 3 * index + 3]
        if not _distinct(space, [p0, p1, p2, p3]):
            report.skipped += 1
            continue
        distance = space.distance
        try:
            total = sum(
                comparison_angle(kappa, TriangleSides(distance(p0, a), distance(a, b), distance(b, p0)), "p")
                for a, b in ((p1, p2), (p2, p3), (p3, p1))
            )
        except (DomainError, DegenerateError):
            report.skipped += 1
            continue
        report.record(
            2.0 * math.pi - total,
            {"p0": p0.to_dict(), "p1": p1.to_dict(), "p2": p2.to_dict(), "p3": p3.to_dict(), "angle_sum": total},
        )
    logger.info("Quadruple test on %r at κ=%s: worst margin %.3e", space, kappa, report.worst_margin)
    return report


def default_region(space: Space) -> Region:
    """Returns the region used by the curvature matrix: a ball around the apex of radius 1
    (an eighth of the diameter for spaces of positive curvature).

    Args:
        space (Space): The space.

    Returns:
        Region: The region."""
    radius = 1.0 if space.kappa <= 0 else diameter(space.kappa) / 8.0
    return Region(space.apex, radius)
