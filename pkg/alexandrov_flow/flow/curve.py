"""This module contains the gradient-curve integrator and the flow map Φ built on it."""

import bisect
import logging
import math
from dataclasses import dataclass, field
from typing import Any

from alexandrov_flow.flow.params import FlowParams
from alexandrov_flow.semiconcave import ScalarField, gradient
from alexandrov_flow.semiconcave.calculus import CRITICAL_THRESHOLD, GradientResult
from alexandrov_flow.spaces import Space, SpacePoint
from alexandrov_flow.utils.errors import GeodesicDomainError, NonUniqueGeodesicError

logger = logging.getLogger(__name__)

CURVE_CSV_HEADER = ("t", "r", "phi", "f", "grad_norm")
TERMINATIONS = ("max_time", "critical_point", "domain_exit")


@dataclass(frozen=True)
class CurveSample:
    """One vertex of a gradient curve."""

    t: float
    x: SpacePoint
    grad_norm: float
    f_value: float


@dataclass
class GradientCurve:
    """A time-stamped piecewise-geodesic curve produced by `integrate`. Between two
    samples the curve runs along the geodesic at constant speed; after the last sample
    it stays at the last point.

    Args:
        space (Space): The space of the curve.
        samples (list[CurveSample]): Vertices with strictly increasing times.
        terminated (str): "max_time", "critical_point" or "domain_exit".
    """

    space: Space
    samples: list[CurveSample] = field(default_factory=list)
    terminated: str = "max_time"

    @property
    def times(self) -> list[float]:
        """Returns the sample times.

        Returns:
            list[float]: Times."""
        return [sample.t for sample in self.samples]

    @property
    def start(self) -> SpacePoint:
        """Returns γ(0).

        Returns:
            SpacePoint: The starting point."""
        return self.samples[0].x

    @property
    def end(self) -> SpacePoint:
        """Returns the last sampled point.

        Returns:
            SpacePoint: The final point."""
        return self.samples[-1].x

    def position_at(self, t: float) -> SpacePoint:
        """Returns γ(t) by geodesic interpolation between the samples.

        Args:
            t (float): Time, nonnegative.

        Returns:
            SpacePoint: γ(t)."""
        if t < 0:
            raise ValueError(f"Curve time {t!r} must be nonnegative")
        times = self.times
        if t >= times[-1]:
            return self.samples[-1].x
        index = bisect.bisect_right(times, t) - 1
        left = self.samples[index]
        right = self.samples[index + 1]
        if t == left.t or left.x == right.x:
            return left.x
        return self.space.geodesic_point(left.x, right.x, (t - left.t) / (right.t - left.t))

    def arrival_time(self, p: SpacePoint) -> float | None:
        """Returns the first sample time at which the curve equals p.

        Args:
            p (SpacePoint): Target point.

        Returns:
            float | None: Arrival time or None."""
        for sample in self.samples:
            if sample.x == p:
                return sample.t
        return None

    def to_csv_rows(self) -> list[tuple[float, float, float, float, float]]:
        """Returns the rows (t, r, phi, f, grad_norm) for plotting.

        Returns:
            list[tuple]: One row per sample."""
        return [(s.t, s.x.r, s.x.phi, s.f_value, s.grad_norm) for s in self.samples]

    def to_dict(self) -> dict[str, Any]:
        """Returns the JSON representation.

        Returns:
            dict[str, Any]: Samples and termination."""
        return {"terminated": self.terminated, "samples": [list(row) for row in self.to_csv_rows()]}


def _gradient(f: ScalarField, x: SpacePoint, params: FlowParams) -> GradientResult:
    return gradient(f, x, resolution=params.resolution, check=False)


def _snap_target(f: ScalarField, x: SpacePoint, grad: GradientResult, length: float, eps: float) -> float | None:
    """Returns |x, p| when the step of the given length along the gradient reaches the
    center p of the field in a direction within ε of ↑_x^p."""
    center = f.center
    if center is None or x == center:
        return None
    space = f.space
    gap = space.distance(x, center)
    if gap > length:
        return None
    try:
        toward = space.log_direction(x, center)
    except NonUniqueGeodesicError:
        return None
    if space.direction_angle(x, grad.vector.direction, toward.direction) >= eps:
        return None
    return gap


def _pole_hit(space: Space, x: SpacePoint, error: GeodesicDomainError) -> SpacePoint | None:
    """Returns the pole reached by a radial step that can't continue through it."""
    for pole in space.poles():
        if error.max_t > 0 and math.isclose(space.distance(x, pole), error.max_t, rel_tol=1e-12, abs_tol=1e-15):
            return pole
    return None


# pylint: disable=R0912, R0914, R0915
def integrate(f: ScalarField, x0: SpacePoint, t_max: float, params: FlowParams) -> GradientCurve:
    """Integrates the gradient curve of f from x0 by explicit geodesic stepping:
    x_{k+1} = exp(x_k, ∇f/|∇f|, h|∇f|). A step is accepted when the observed increment of f
    matches |∇f|²h within step_tol·h (always at min_step); accepted steps grow the next
    step by 1.5 up to max_step. A step that reaches the center p of the field in a
    direction within ε of ↑_x^p lands exactly on p. The curve freezes at critical points.

    Args:
        f (ScalarField): Field.
        x0 (SpacePoint): Starting point.
        t_max (float): Final time, positive.
        params (FlowParams): Step control parameters.

    Returns:
        GradientCurve: The curve; terminated is "domain_exit" when a step can't be
            continued as a geodesic at the smallest step."""
    if t_max <= 0:
        raise ValueError(f"Final time {t_max!r} must be positive")
    space = f.space
    x = x0
    t = 0.0
    value = f.evaluate(x)
    grad = _gradient(f, x, params)
    curve = GradientCurve(space, [CurveSample(0.0, x, grad.norm, value)])
    step = params.max_step
    while t_max - t > 1e-15:
        if grad.norm < CRITICAL_THRESHOLD:
            curve.terminated = "critical_point"
            curve.samples.append(CurveSample(t_max, x, 0.0, value))
            logger.debug("Critical point %s reached at t=%.6f", x, t)
            return curve
        h = min(step, t_max - t)
        length = h * grad.norm
        gap = _snap_target(f, x, grad, length, params.eps)
        if gap is not None:
            x = f.center  # type: ignore[assignment]
            t = t + gap / grad.norm
        else:
            try:
                candidate = space.exp(x, grad.vector.direction, length)
            except GeodesicDomainError as error:
                pole = _pole_hit(space, x, error)
                if pole is not None:
                    x, t = pole, t + error.max_t / grad.norm
                elif h > params.min_step:
                    step = max(h / 2.0, params.min_step)
                    continue
                else:
                    curve.terminated = "domain_exit"
                    logger.warning("Gradient curve from %s left the geodesic domain at t=%.6f", x0, t)
                    return curve
            else:
                increment = f.evaluate(candidate) - value
                if abs(increment - grad.norm**2 * h) > params.step_tol * h and h > params.min_step:
                    step = max(h / 2.0, params.min_step)
                    continue
                x, t = candidate, t + h
                step = min(h * 1.5, params.max_step) if h >= step else step
        value = f.evaluate(x)
        grad = _gradient(f, x, params)
        curve.samples.append(CurveSample(t, x, grad.norm, value))
    return curve


def flow_map(f: ScalarField, xs: list[SpacePoint], t: float, params: FlowParams) -> list[SpacePoint]:
    """Returns Φ(x, t) for every x.

    Args:
        f (ScalarField): Field.
        xs (list[SpacePoint]): Starting points.
        t (float): Time, nonnegative.
        params (FlowParams): Step control parameters.

    Returns:
        list[SpacePoint]: Images under the flow."""
    if t < 0:
        raise ValueError(f"Flow time {t!r} must be nonnegative")
    if t == 0:
        return list(xs)
    return [integrate(f, x, t, params).end for x in xs]


@dataclass
class SemigroupStudy:
    """Defects distance(Φ(x, s+t), Φ(Φ(x, s), t)) for a ladder of halved fixed steps.

    Args:
        steps (list[float]): Step sizes, halved at each level.
        defects (list[float]): Semigroup defect per step size.
    """

    steps: list[float]
    defects: list[float]

    @property
    def ratios(self) -> list[float]:
        """Returns the defect ratios between consecutive levels.

        Returns:
            list[float]: defect(h) / defect(h/2)."""
        return [
            coarse / fine if fine > 0 else math.inf for coarse, fine in zip(self.defects, self.defects[1:])
        ]

    @property
    def orders(self) -> list[float]:
        """Returns the observed convergence orders log2 of the ratios.

        Returns:
            list[float]: Orders."""
        return [math.log2(ratio) if 0 < ratio < math.inf else math.inf for ratio in self.ratios]

    def to_dict(self) -> dict[str, Any]:
        """Returns the JSON representation.

        Returns:
            dict[str, Any]: Steps, defects, ratios and orders."""
        return {"steps": self.steps, "defects": self.defects, "ratios": self.ratios, "orders": self.orders}


# pylint: disable=R0913
def semigroup_study(
    f: ScalarField,
    x: SpacePoint,
    s: float,
    t: float,
    params: FlowParams,
    first_step: float,
    levels: int = 3,
) -> SemigroupStudy:
    """Measures the semigroup defect of the fixed-step integrator under step halving.

    Args:
        f (ScalarField): Field.
        x (SpacePoint): Starting point.
        s (float): First time.
        t (float): Second time.
        params (FlowParams): Base parameters; the steps are overridden.
        first_step (float): Coarsest step.
        levels (int, optional): Number of step sizes. Defaults to 3.

    Returns:
        SemigroupStudy: Defects per step size."""
    steps = [first_step / 2**level for level in range(levels)]
    defects = []
    for step in steps:
        fixed = params.with_fixed_step(step)
        direct = integrate(f, x, s + t, fixed).end
        middle = integrate(f, x, s, fixed).end
        composed = integrate(f, middle, t, fixed).end
        defects.append(f.space.distance(direct, composed))
        logger.debug("Semigroup defect %.3e at step %.3e", defects[-1], step)
    return SemigroupStudy(steps, defects)
