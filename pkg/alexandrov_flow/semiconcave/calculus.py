"""This module contains the first-order calculus of semiconcave fields: directional
differentials, gradients found by scanning the circle of directions, and empirical checks
of concavity moduli and of the regularity of the sphere distance near its center."""

import logging
import math
from dataclasses import dataclass, field
from typing import Any

import numpy as np
from scipy import optimize

from alexandrov_flow.semiconcave.field import ScalarField
from alexandrov_flow.spaces import Space, SpacePoint, TangentVector
from alexandrov_flow.utils.errors import GeodesicDomainError, GradientCheckError, RegionError
from alexandrov_flow.utils.utils import make_rng, wrap_angle

logger = logging.getLogger(__name__)

STEP_FACTOR = 1e-4
CRITICAL_THRESHOLD = 1e-7
TIE_TOLERANCE = 1e-9
CHECK_TOLERANCE = 1e-6
REFINE_GAIN = 1e-10
SMOOTH_RATIO = (1.0, 4.0)


def _step(space: Space, x: SpacePoint, step: float | None) -> float:
    return step if step is not None else STEP_FACTOR * space.injectivity_scale(x)


def _quotients(f: ScalarField, x: SpacePoint, directions: np.ndarray, h: float) -> np.ndarray:
    """Returns the one-sided difference quotients at steps h, h/2, h/4 (rows), NaN where
    the geodesic is not defined."""
    space = f.space
    base = f.evaluate(x)
    rows = []
    for length in (h, h / 2.0, h / 4.0):
        radii, phis, valid = space.exp_arrays(x, directions, np.full(directions.shape, length))
        values = f.evaluate_many(radii, phis)
        rows.append(np.where(valid, (values - base) / length, np.nan))
    return np.vstack(rows)


def _extrapolate(quotients: np.ndarray) -> np.ndarray:
    """Richardson extrapolation 2D(h/2) - D(h) where the quotients behave like D + c·t;
    the finest quotient where a kink of the field lies within the step."""
    coarse, middle, fine = quotients
    first = middle - coarse
    second = fine - middle
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = first / second
    smooth = (np.abs(first) <= 1e-12) | ((ratio >= SMOOTH_RATIO[0]) & (ratio <= SMOOTH_RATIO[1]))
    return np.where(smooth, 2.0 * middle - coarse, fine)


def differentials(f: ScalarField, x: SpacePoint, directions: Any, step: float | None = None) -> np.ndarray:
    """Vectorized `differential`; NaN marks directions without an admissible step.

    Args:
        f (ScalarField): Field.
        x (SpacePoint): Foot point.
        directions (np.ndarray): Directions at x.
        step (float, optional): Base step h. Defaults to 1e-4 times the injectivity scale.

    Returns:
        np.ndarray: d_x f(ξ) per direction."""
    directions = np.atleast_1d(np.asarray(directions, dtype=float))
    return _extrapolate(_quotients(f, x, directions, _step(f.space, x, step)))


def differential(f: ScalarField, x: SpacePoint, direction: float, step: float | None = None) -> float:
    """Returns d_x f(ξ) = lim (f(exp_x(tξ)) - f(x))/t as t → 0+, from one-sided quotients at
    steps h and h/2 with Richardson extrapolation. The step is halved when the geodesic is
    not defined up to h.

    Args:
        f (ScalarField): Field.
        x (SpacePoint): Foot point.
        direction (float): Direction ξ at x.
        step (float, optional): Base step h. Defaults to 1e-4 times the injectivity scale.

    Raises:
        GeodesicDomainError: If no admissible step exists.

    Returns:
        float: The differential."""
    h = _step(f.space, x, step)
    for _ in range(30):
        value = float(_extrapolate(_quotients(f, x, np.array([float(direction)]), h))[0])
        if not math.isnan(value):
            return value
        h /= 2.0
    raise GeodesicDomainError(f"No admissible step from {x} in direction {direction!r}", 0.0)


@dataclass(frozen=True)
class GradientResult:
    """Gradient of a field at a point together with the scan diagnostics.

    Args:
        vector (TangentVector): The gradient ∇_x f (zero at critical points).
        critical (bool): True if the maximal differential is not positive.
        ambiguous (bool): True if the maximum was attained in separate directions.
        max_violation (float): Largest df(v) - <v, g> over the scanned directions.
    """

    vector: TangentVector
    critical: bool
    ambiguous: bool
    max_violation: float

    @property
    def regular(self) -> bool:
        """Returns True at regular points.

        Returns:
            bool: Not critical."""
        return not self.critical

    @property
    def norm(self) -> float:
        """Returns |∇_x f|.

        Returns:
            float: Gradient norm."""
        return self.vector.mag


def _clusters(mask: np.ndarray) -> int:
    """Counts cyclic runs of True values."""
    if mask.all():
        return 1
    starts = mask & ~np.roll(mask, 1)
    return int(starts.sum())


def gradient(
    f: ScalarField,
    x: SpacePoint,
    resolution: int = 720,
    refine_tol: float = 1e-10,
    check: bool = True,
    tol: float = CHECK_TOLERANCE,
) -> GradientResult:
    """Returns the gradient of f at x: the vector g with df(v) <= <v, g> for all v and
    df(g) = |g|². Scans `resolution` equispaced directions, refines the best one by a
    bounded scalar search and verifies the gradient inequalities on the scanned directions.

    Args:
        f (ScalarField): Field.
        x (SpacePoint): Point.
        resolution (int, optional): Number of scanned directions, at least 16. Defaults to 720.
        refine_tol (float, optional): Angular tolerance of the refinement. Defaults to 1e-10.
        check (bool, optional): Raise when the gradient inequalities fail. Defaults to True.
        tol (float, optional): Tolerance of the inequality check. Defaults to 1e-6.

    Raises:
        ValueError: If resolution < 16.
        GradientCheckError: If check is set and df(v) > <v, g> + tol for a scanned v.

    Returns:
        GradientResult: Gradient and diagnostics."""
    if resolution < 16:
        raise ValueError(f"Direction scan resolution must be at least 16, got {resolution!r}")
    space = f.space
    circle = space.directions_circle_length(x)
    directions = np.arange(resolution) * circle / resolution
    values = differentials(f, x, directions)
    if np.all(np.isnan(values)):
        raise GeodesicDomainError(f"No direction at {x} admits a difference quotient", 0.0)
    best_index = int(np.nanargmax(values))
    best_value = float(values[best_index])
    maximal = np.nan_to_num(values, nan=-np.inf) >= best_value - TIE_TOLERANCE
    ambiguous = bool(maximal.all()) or _clusters(maximal) > 1

    spacing = circle / resolution
    lower = directions[best_index] - spacing
    upper = directions[best_index] + spacing

    def negative(angle: float) -> float:
        value = float(differentials(f, x, np.array([wrap_angle(angle, circle)]))[0])
        return math.inf if math.isnan(value) else -value

    refined = optimize.minimize_scalar(negative, bounds=(lower, upper), method="bounded", options={"xatol": refine_tol})
    best_direction = float(directions[best_index])
    if refined.success and -refined.fun > best_value + REFINE_GAIN:
        best_value = float(-refined.fun)
        best_direction = wrap_angle(float(refined.x), circle)

    if best_value <= CRITICAL_THRESHOLD:
        return GradientResult(TangentVector(x, 0.0, 0.0), True, ambiguous, 0.0)

    gaps = np.abs(np.mod(directions - best_direction + circle / 2.0, circle) - circle / 2.0)
    predicted = best_value * np.cos(np.minimum(gaps, math.pi))
    violation = float(np.nanmax(values - predicted))
    if check and violation > tol:
        raise GradientCheckError(
            f"Gradient inequality violated by {violation!r} at {x}: "
            "the field is not semiconcave there or the scan is too coarse"
        )
    return GradientResult(TangentVector(x, best_direction, best_value), False, ambiguous, violation)


@dataclass(frozen=True)
class Region:
    """An annulus r_min <= |center, x| <= r_max used as a sampling region.

    Args:
        center (SpacePoint): Center of the region.
        r_max (float): Outer radius.
        r_min (float, optional): Inner radius. Defaults to 0.
    """

    center: SpacePoint
    r_max: float
    r_min: float = 0.0

    def validate(self) -> None:
        """Checks the radii.

        Raises:
            RegionError: If 0 <= r_min < r_max does not hold."""
        if not 0.0 <= self.r_min < self.r_max:
            raise RegionError(f"Invalid region radii [{self.r_min!r}, {self.r_max!r}]")

    def sample(self, space: Space, rng: np.random.Generator, n: int) -> list[SpacePoint]:
        """Samples n points of the region.

        Args:
            space (Space): The space.
            rng (np.random.Generator): Random generator.
            n (int): Number of points.

        Returns:
            list[SpacePoint]: Points."""
        self.validate()
        return space.sample_ball(self.center, self.r_max, rng, n, self.r_min)

    def to_dict(self) -> dict[str, Any]:
        """Returns a JSON friendly representation.

        Returns:
            dict[str, Any]: {"center", "r_max", "r_min"}."""
        return {"center": self.center.to_dict(), "r_max": self.r_max, "r_min": self.r_min}


@dataclass
class ConcavityReport:
    """Outcome of `verify_concavity`. Violations are in units of h²:
    (f(γ(t+h)) + f(γ(t-h)) - 2f(γ(t)) - λ(γ(t))h²) / h².

    Args:
        modulus_bound (float): Largest modulus λ met on the samples.
        worst_violation (float): Largest normalized violation.
        samples (int): Number of tested geodesics.
        skipped (int): Samples too close to the set or to a pole.
        tolerance (float): Pass threshold.
        step (float): Step h of the second differences.
        seed (int | None): Seed of the sampling.
        witness (dict[str, Any]): Worst geodesic (point, direction, second difference, modulus).
    """

    modulus_bound: float
    worst_violation: float
    samples: int
    skipped: int
    tolerance: float
    step: float
    seed: int | None
    witness: dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        """Returns True if worst_violation <= tolerance.

        Returns:
            bool: Verdict."""
        return self.worst_violation <= self.tolerance

    def to_dict(self) -> dict[str, Any]:
        """Returns the JSON representation.

        Returns:
            dict[str, Any]: Report fields and the verdict."""
        return {
            "modulus_bound": self.modulus_bound,
            "worst_violation": self.worst_violation,
            "samples": self.samples,
            "skipped": self.skipped,
            "tolerance": self.tolerance,
            "step": self.step,
            "seed": self.seed,
            "witness": self.witness,
            "passed": self.passed,
        }


# pylint: disable=R0913, R0914
def verify_concavity(
    f: ScalarField,
    region: Region,
    kappa: float,
    samples: int = 1000,
    tol: float = 1e-6,
    seed: int = 0,
    step: float = 1e-3,
) -> ConcavityReport:
    """Tests the λ-concavity of f on a region through centered second differences along
    random geodesics: f(γ(t+h)) + f(γ(t-h)) - 2f(γ(t)) <= λ(γ(t))h² + tol·h², where
    λ = cs_κ(d_A)/sn_κ(d_A) (1/d_A when κ = 0) scaled like the field.

    Args:
        f (ScalarField): Field.
        region (Region): Sampling region; it must avoid the set A.
        kappa (float): Lower curvature bound.
        samples (int, optional): Number of geodesics. Defaults to 1000.
        tol (float, optional): Tolerance in units of h². Defaults to 1e-6.
        seed (int, optional): Seed of the sampling. Defaults to 0.
        step (float, optional): Step h. Defaults to 1e-3.

    Raises:
        RegionError: If the region is invalid or every sample had to be skipped.

    Returns:
        ConcavityReport: Worst violation and witness."""
    region.validate()
    space = f.space
    rng = make_rng(seed)
    cap = math.pi / (2.0 * math.sqrt(kappa)) if kappa > 0 else math.inf
    worst = -math.inf
    modulus_bound = -math.inf
    witness: dict[str, Any] = {}
    tested = skipped = 0
    for x in region.sample(space, rng, samples):
        direction = float(rng.random() * 2.0 * math.pi)
        d_set = f.set_distance(x)
        if space.is_pole(x) or d_set <= 2.0 * step or d_set >= cap:
            skipped += 1
            continue
        try:
            forward = space.exp(x, direction, step)
            backward = space.exp(x, wrap_angle(direction + math.pi), step)
        except GeodesicDomainError:
            skipped += 1
            continue
        second = f.evaluate(forward) + f.evaluate(backward) - 2.0 * f.evaluate(x)
        modulus = f.modulus(x, kappa)
        violation = (second - modulus * step * step) / (step * step)
        tested += 1
        modulus_bound = max(modulus_bound, modulus)
        if violation > worst:
            worst = violation
            witness = {"point": x.to_dict(), "direction": direction, "second_difference": second, "modulus": modulus}
    if tested == 0:
        raise RegionError("Every sample of the region was too close to the set or to a pole")
    report = ConcavityReport(modulus_bound, worst, tested, skipped, tol, step, seed, witness)
    logger.info("Concavity check: worst violation %.3e over %d geodesics", worst, tested)
    return report


@dataclass
class RegularityReport:
    """Outcome of `check_regularity` at points near the center p of a sphere field.

    Args:
        eps (float): Angle ε.
        min_differential (float): Smallest d_x f(↑_x^p); must exceed cos ε.
        max_angle (float): Largest angle between ∇_x f and ↑_x^p; must stay below ε.
        max_cone_distance (float): Largest |∇_x f, ↑_x^p| in the tangent cone; must stay below √2·ε.
        samples (int): Number of sampled points.
        seed (int): Seed of the sampling.
        witness (dict[str, Any]): Point with the smallest differential.
    """

    eps: float
    min_differential: float
    max_angle: float
    max_cone_distance: float
    samples: int
    seed: int
    witness: dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        """Returns True if all three bounds hold.

        Returns:
            bool: Verdict."""
        return (
            self.min_differential > math.cos(self.eps)
            and self.max_angle < self.eps
            and self.max_cone_distance < math.sqrt(2.0) * self.eps
        )

    def to_dict(self) -> dict[str, Any]:
        """Returns the JSON representation.

        Returns:
            dict[str, Any]: Report fields and the verdict."""
        return {
            "eps": self.eps,
            "min_differential": self.min_differential,
            "max_angle": self.max_angle,
            "max_cone_distance": self.max_cone_distance,
            "samples": self.samples,
            "seed": self.seed,
            "witness": self.witness,
            "passed": self.passed,
        }


def cone_distance(first: TangentVector, second: TangentVector, angle: float) -> float:
    """Returns the distance of two vectors in the tangent cone by the law of cosines.

    Args:
        first (TangentVector): First vector.
        second (TangentVector): Second vector.
        angle (float): Angle between their directions.

    Returns:
        float: |u, v| in T_x."""
    squared = first.mag**2 + second.mag**2 - 2.0 * first.mag * second.mag * math.cos(angle)
    return math.sqrt(max(squared, 0.0))


# pylint: disable=R0913
def check_regularity(
    f: ScalarField,
    p: SpacePoint,
    eps: float,
    radius: float,
    samples: int = 500,
    seed: int = 0,
    resolution: int = 720,
) -> RegularityReport:
    """Samples points x in B(p, radius) - {p} and checks that the field increases toward p
    almost at unit rate: d_x f(↑_x^p) > cos ε, ∠(∇_x f, ↑_x^p) < ε and
    |∇_x f, ↑_x^p| < √2·ε.

    Args:
        f (ScalarField): Field, usually d(S(p, R), ·).
        p (SpacePoint): The center.
        eps (float): Angle ε.
        radius (float): Sampling radius, usually δ₀R.
        samples (int, optional): Number of points. Defaults to 500.
        seed (int, optional): Seed. Defaults to 0.
        resolution (int, optional): Gradient scan resolution. Defaults to 720.

    Returns:
        RegularityReport: Extremes of the three quantities."""
    space = f.space
    rng = make_rng(seed)
    min_differential = math.inf
    max_angle = 0.0
    max_cone = 0.0
    witness: dict[str, Any] = {}
    points = space.sample_ball(p, radius, rng, samples)
    for x in points:
        toward = space.log_direction(x, p)
        rate = differential(f, x, toward.direction)
        grad = gradient(f, x, resolution=resolution, check=False).vector
        angle = space.direction_angle(x, grad.direction, toward.direction) if grad.mag > 0 else math.pi
        unit = TangentVector(x, toward.direction, 1.0)
        max_angle = max(max_angle, angle)
        max_cone = max(max_cone, cone_distance(grad, unit, angle))
        if rate < min_differential:
            min_differential = rate
            witness = {"point": x.to_dict(), "differential": rate, "gradient": grad.to_dict()}
    report = RegularityReport(eps, min_differential, max_angle, max_cone, len(points), seed, witness)
    logger.info(
        "Regularity: min differential %.6f, max angle %.3e over %d points", min_differential, max_angle, len(points)
    )
    return report
