"""This module contains the sampled checks of the quantitative flow estimates:
exponential contraction, linear arrival at the center and the two-time homotopy bound.
Failures are recorded in the reports, never raised."""

import logging
import math
from dataclasses import dataclass, field
from typing import Any

from alexandrov_flow.flow.curve import GradientCurve, integrate
from alexandrov_flow.flow.params import FlowParams
from alexandrov_flow.semiconcave import ScalarField
from alexandrov_flow.spaces import SpacePoint

logger = logging.getLogger(__name__)


@dataclass
class ContractionReport:
    """Outcome of `check_contraction`: distance(Φ_s x, Φ_s y) <= e^{λs}|xy|(1 + tol).

    Args:
        max_ratio (float): Largest distance(Φ_s x, Φ_s y) / |xy| (0 when x = y).
        worst_margin (float): Smallest e^{λs}|xy|(1 + tol) - distance(Φ_s x, Φ_s y).
        checks (int): Number of (pair, time) checks.
        rows (list[tuple[float, float, float]]): (s, distance, bound) per check.
        witness (dict[str, Any]): The check with the smallest margin.
    """

    max_ratio: float = 0.0
    worst_margin: float = math.inf
    checks: int = 0
    rows: list[tuple[float, float, float]] = field(default_factory=list)
    witness: dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        """Returns True if every margin is nonnegative.

        Returns:
            bool: Verdict."""
        return self.worst_margin >= 0.0

    def merge(self, other: "ContractionReport") -> "ContractionReport":
        """Combines two reports.

        Args:
            other (ContractionReport): Another report.

        Returns:
            ContractionReport: Report covering both sets of checks."""
        worst = self if self.worst_margin <= other.worst_margin else other
        return ContractionReport(
            max(self.max_ratio, other.max_ratio),
            worst.worst_margin,
            self.checks + other.checks,
            self.rows + other.rows,
            worst.witness,
        )

    def to_dict(self) -> dict[str, Any]:
        """Returns the JSON representation.

        Returns:
            dict[str, Any]: Report fields and the verdict."""
        return {
            "max_ratio": self.max_ratio,
            "worst_margin": self.worst_margin,
            "checks": self.checks,
            "witness": self.witness,
            "passed": self.passed,
        }


# pylint: disable=R0913
def check_contraction(
    f: ScalarField,
    x: SpacePoint,
    y: SpacePoint,
    s_grid: list[float],
    params: FlowParams,
    tol: float = 1e-4,
) -> ContractionReport:
    """Checks distance(Φ_s x, Φ_s y) <= e^{λs}·|xy|·(1 + tol) on a grid of times.

    Args:
        f (ScalarField): Field.
        x (SpacePoint): First point.
        y (SpacePoint): Second point.
        s_grid (list[float]): Nonnegative times.
        params (FlowParams): Flow parameters (λ).
        tol (float, optional): Relative tolerance. Defaults to 1e-4.

    Returns:
        ContractionReport: Ratios and margins."""
    space = f.space
    report = ContractionReport()
    if not s_grid:
        return report
    initial = space.distance(x, y)
    t_max = max(s_grid)
    first = integrate(f, x, t_max, params) if t_max > 0 else None
    second = integrate(f, y, t_max, params) if t_max > 0 else None
    for s in s_grid:
        moved_x = first.position_at(s) if first else x
        moved_y = second.position_at(s) if second else y
        current = space.distance(moved_x, moved_y)
        bound = math.exp(params.rate * s) * initial * (1.0 + tol) + 1e-12
        margin = bound - current
        report.rows.append((s, current, bound))
        report.checks += 1
        report.max_ratio = max(report.max_ratio, current / initial if initial > 0 else 0.0)
        if margin < report.worst_margin:
            report.worst_margin = margin
            report.witness = {"x": x.to_dict(), "y": y.to_dict(), "s": s, "distance": current, "bound": bound}
    return report


@dataclass
class ArrivalReport:
    """Outcome of `check_arrival`.

    Args:
        max_decay_violation (float): Largest |Φ_t x, p| - max(|x,p| - t·cos ε, 0) over samples.
        max_arrival_excess (float): Largest arrival time minus |x,p| / cos ε.
        frozen (bool): True if every curve stays exactly at p after arriving.
        curves (int): Number of integrated curves.
        tolerance (float): Tolerance of both bounds.
        arrival_times (list[float]): Arrival time per curve (∞ when p is not reached).
        witness (dict[str, Any]): The worst start point.
    """

    max_decay_violation: float = -math.inf
    max_arrival_excess: float = -math.inf
    frozen: bool = True
    curves: int = 0
    tolerance: float = 1e-4
    arrival_times: list[float] = field(default_factory=list)
    witness: dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        """Returns True if the decay and arrival bounds hold and curves freeze at p.

        Returns:
            bool: Verdict."""
        return self.frozen and self.max_decay_violation <= self.tolerance and self.max_arrival_excess <= self.tolerance

    def to_dict(self) -> dict[str, Any]:
        """Returns the JSON representation.

        Returns:
            dict[str, Any]: Report fields and the verdict."""
        return {
            "max_decay_violation": self.max_decay_violation,
            "max_arrival_excess": self.max_arrival_excess,
            "frozen": self.frozen,
            "curves": self.curves,
            "tolerance": self.tolerance,
            "witness": self.witness,
            "passed": self.passed,
        }


def _frozen_after_arrival(curve: GradientCurve, p: SpacePoint) -> bool:
    arrived = False
    for sample in curve.samples:
        arrived = arrived or sample.x == p
        if arrived and sample.x != p:
            return False
    return True


def check_arrival(
    f: ScalarField,
    p: SpacePoint,
    xs: list[SpacePoint],
    params: FlowParams,
    tol: float = 1e-4,
) -> ArrivalReport:
    """Checks that each curve approaches p at least at rate cos ε,
    |Φ_t(x), p| <= |x,p| - t·cos ε, reaches p by time |x,p| / cos ε and stays there.

    Args:
        f (ScalarField): Field whose flow contracts to p.
        p (SpacePoint): The center.
        xs (list[SpacePoint]): Starting points.
        params (FlowParams): Flow parameters (ε).
        tol (float, optional): Tolerance. Defaults to 1e-4.

    Returns:
        ArrivalReport: Worst decay violation and arrival excess."""
    space = f.space
    report = ArrivalReport(tolerance=tol)
    slope = math.cos(params.eps)
    for x in xs:
        start = space.distance(x, p)
        deadline = start / slope
        report.curves += 1
        if start == 0.0:
            report.arrival_times.append(0.0)
            report.max_arrival_excess = max(report.max_arrival_excess, 0.0)
            report.max_decay_violation = max(report.max_decay_violation, 0.0)
            continue
        curve = integrate(f, x, deadline + tol, params)
        for sample in curve.samples:
            violation = space.distance(sample.x, p) - max(start - slope * sample.t, 0.0)
            if violation > report.max_decay_violation:
                report.max_decay_violation = violation
                report.witness = {"x": x.to_dict(), "t": sample.t, "violation": violation}
        arrival = curve.arrival_time(p)
        arrival = math.inf if arrival is None else arrival
        report.arrival_times.append(arrival)
        report.max_arrival_excess = max(report.max_arrival_excess, arrival - deadline)
        report.frozen = report.frozen and _frozen_after_arrival(curve, p)
    logger.info("Arrival check over %d curves: passed=%s", report.curves, report.passed)
    return report


@dataclass
class HomotopyReport:
    """Outcome of `check_homotopy_bound`:
    distance(Φ(x,s), Φ(y,t)) <= e^{λs}|xy| + (t - s) + tol for s <= t.

    Args:
        worst_margin (float): Smallest bound minus distance.
        checks (int): Number of checks.
        witness (dict[str, Any]): The check with the smallest margin.
    """

    worst_margin: float = math.inf
    checks: int = 0
    witness: dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        """Returns True if every margin is nonnegative.

        Returns:
            bool: Verdict."""
        return self.worst_margin >= 0.0

    def to_dict(self) -> dict[str, Any]:
        """Returns the JSON representation.

        Returns:
            dict[str, Any]: Report fields and the verdict."""
        return {"worst_margin": self.worst_margin, "checks": self.checks, "witness": self.witness, "passed": self.passed}


def check_homotopy_bound(
    f: ScalarField,
    pairs: list[tuple[SpacePoint, SpacePoint]],
    time_pairs: list[tuple[float, float]],
    params: FlowParams,
    tol: float = 1e-4,
) -> HomotopyReport:
    """Checks distance(Φ(x,s), Φ(y,t)) <= e^{λs}·|xy| + (t - s) + tol for every pair of
    points and every pair of times (the smaller time is taken as s).

    Args:
        f (ScalarField): Field.
        pairs (list[tuple[SpacePoint, SpacePoint]]): Point pairs.
        time_pairs (list[tuple[float, float]]): Time pairs.
        params (FlowParams): Flow parameters (λ).
        tol (float, optional): Absolute tolerance. Defaults to 1e-4.

    Returns:
        HomotopyReport: Smallest margin."""
    space = f.space
    report = HomotopyReport()
    if not time_pairs:
        return report
    t_max = max(max(pair) for pair in time_pairs)
    cache: dict[SpacePoint, GradientCurve] = {}

    def position(point: SpacePoint, time: float) -> SpacePoint:
        if time == 0 or t_max == 0:
            return point
        if point not in cache:
            cache[point] = integrate(f, point, t_max, params)
        return cache[point].position_at(time)

    for x, y in pairs:
        initial = space.distance(x, y)
        for first, second in time_pairs:
            s, t = min(first, second), max(first, second)
            current = space.distance(position(x, s), position(y, t))
            bound = math.exp(params.rate * s) * initial + (t - s) + tol
            margin = bound - current
            report.checks += 1
            if margin < report.worst_margin:
                report.worst_margin = margin
                report.witness = {"x": x.to_dict(), "y": y.to_dict(), "s": s, "t": t, "distance": current}
    return report
