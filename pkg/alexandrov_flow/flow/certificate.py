"""This module contains the certificate that a ball is strongly locally Lipschitz
contractible: the homotopy h(x, u) = Φ(x, ℓu) contracts B(p, r) to p with
d(h(x,s), h(y,t)) <= C·d(x,y) + C'·|s - t| for C = e^{λℓ} and C' = ℓ."""

import logging
import math
from dataclasses import dataclass, field
from typing import Any

from alexandrov_flow.flow.curve import GradientCurve, integrate
from alexandrov_flow.flow.params import FlowParams
from alexandrov_flow.semiconcave import DistanceFromSphere, ScalarField
from alexandrov_flow.spaces import Space, SpacePoint
from alexandrov_flow.utils.errors import CertificateError, DegenerateError, NonUniqueGeodesicError
from alexandrov_flow.utils.utils import make_rng

logger = logging.getLogger(__name__)

# share of pairs whose second point lies close to the first, and how close
CLOSE_SHARE = 0.5
CLOSE_FRACTION = 0.05
SURJECTIVITY_NOTE = (
    "image of U(p,r') x [0,1] is contained in U(p,r') by sampling; "
    "equality follows from h(., 0) = id and is not sampled"
)


# pylint: disable=R0902
@dataclass
class SllcCertificate:
    """Empirical certificate of strong local Lipschitz contractibility of B(p, r).

    Args:
        p (SpacePoint): The center.
        r (float): Radius of the contracted ball.
        ell (float): Total flow time ℓ.
        C (float): Space constant e^{λℓ} used as the pass bound.
        C_prime (float): Time constant ℓ used as the pass bound.
        containment_pass (bool): |h(x,u), p| <= |x,p| on all samples.
        endpoint_pass (bool): h(x,0) = x and h(x,1) = p on all samples.
        lipschitz_pass (bool): The two-variable Lipschitz bound held on all pairs.
        samples (int): Number of sampled pairs.
        starts (int): Number of distinct start points whose curves were checked.
        seed (int): Seed of the sampling.
        fitted_C (float): Largest observed d(h(x,u), h(y,u)) / d(x,y).
        fitted_C_prime (float): Largest observed d(h(x,u), h(x,v)) / |u - v|.
        worst_margin (float): Smallest margin of the Lipschitz bound.
        witness (dict[str, Any]): First violating configuration, if any.
    """

    p: SpacePoint
    r: float
    ell: float
    C: float
    C_prime: float
    containment_pass: bool = True
    endpoint_pass: bool = True
    lipschitz_pass: bool = True
    samples: int = 0
    starts: int = 0
    seed: int = 0
    fitted_C: float = 0.0
    fitted_C_prime: float = 0.0
    worst_margin: float = math.inf
    witness: dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        """Returns True if all flags are set and the constants are finite.

        Returns:
            bool: Verdict."""
        return (
            self.containment_pass
            and self.endpoint_pass
            and self.lipschitz_pass
            and math.isfinite(self.C)
            and math.isfinite(self.C_prime)
        )

    def to_dict(self) -> dict[str, Any]:
        """Returns the JSON representation.

        Returns:
            dict[str, Any]: Certificate fields and the verdict."""
        return {
            "p": self.p.to_dict(),
            "r": self.r,
            "ell": self.ell,
            "C": self.C,
            "C_prime": self.C_prime,
            "containment_pass": self.containment_pass,
            "endpoint_pass": self.endpoint_pass,
            "lipschitz_pass": self.lipschitz_pass,
            "samples": self.samples,
            "starts": self.starts,
            "seed": self.seed,
            "fitted_C": self.fitted_C,
            "fitted_C_prime": self.fitted_C_prime,
            "worst_margin": self.worst_margin,
            "witness": self.witness,
            "surjectivity": SURJECTIVITY_NOTE,
            "passed": self.passed,
        }


class FlowHomotopy:
    """The homotopy h(x, u) = Φ(x, ℓu), caching one integrated curve per start point.

    Args:
        scalar_field (ScalarField): Field whose flow contracts to its center.
        params (FlowParams): Flow parameters; ℓ is params.ell.
    """

    def __init__(self, scalar_field: ScalarField, params: FlowParams):
        self._field = scalar_field
        self._params = params
        self._curves: dict[SpacePoint, GradientCurve] = {}

    @property
    def ell(self) -> float:
        """Returns the total flow time ℓ.

        Returns:
            float: ℓ."""
        return self._params.ell

    @property
    def scalar_field(self) -> ScalarField:
        """Returns the field.

        Returns:
            ScalarField: The field."""
        return self._field

    def curve(self, x: SpacePoint) -> GradientCurve:
        """Returns the flow curve from x up to time ℓ.

        Args:
            x (SpacePoint): Start point.

        Returns:
            GradientCurve: The curve."""
        if x not in self._curves:
            self._curves[x] = integrate(self._field, x, self.ell, self._params)
        return self._curves[x]

    def __call__(self, x: SpacePoint, u: float) -> SpacePoint:
        if not 0.0 <= u <= 1.0:
            raise ValueError(f"Homotopy parameter {u!r} is outside [0, 1]")
        if u == 0.0:
            return x
        return self.curve(x).position_at(self.ell * u)


def default_field(space: Space, p: SpacePoint, params: FlowParams) -> DistanceFromSphere:
    """Returns the field d(S(p, R), ·) whose flow contracts B(p, δ₀R) to p.

    Args:
        space (Space): The space.
        p (SpacePoint): The center.
        params (FlowParams): Parameters (R).

    Returns:
        DistanceFromSphere: The field."""
    return DistanceFromSphere(space, p, params.R)


def _close_point(space: Space, x: SpacePoint, y: SpacePoint) -> SpacePoint:
    """Returns the point at fraction CLOSE_FRACTION of the way from x to y, or y itself
    when the geodesic is not unique."""
    try:
        return space.geodesic_point(x, y, CLOSE_FRACTION)
    except (NonUniqueGeodesicError, DegenerateError):
        return y


# pylint: disable=R0913, R0914
def build_sllc_certificate(
    space: Space,
    p: SpacePoint,
    params: FlowParams,
    samples: int = 2000,
    seed: int = 0,
    r: float | None = None,
    tol: float = 1e-4,
    strict: bool = False,
) -> SllcCertificate:
    """Certifies that h(x, u) = Φ(x, ℓu) contracts B(p, r) to p: endpoints h(x,0) = x and
    h(x,1) = p, containment |h(x,u), p| <= |x,p| and the two-variable Lipschitz bound
    d(h(x,s), h(y,t)) <= e^{λℓ}d(x,y) + ℓ|s - t| + tol on seeded random pairs.
    Both points of a pair are drawn fresh from the ball; for a share CLOSE_SHARE of the
    pairs the second point is moved close to the first. Each start point is integrated
    once and its curve is checked for the endpoint and containment properties.

    Args:
        space (Space): The space.
        p (SpacePoint): The center.
        params (FlowParams): Flow parameters.
        samples (int, optional): Number of pairs. Defaults to 2000.
        seed (int, optional): Seed. Defaults to 0.
        r (float, optional): Radius of the ball, at most δ₀R. Defaults to δ₀R.
        tol (float, optional): Absolute tolerance. Defaults to 1e-4.
        strict (bool, optional): Raise instead of returning a failed certificate.
            Defaults to False.

    Raises:
        ValueError: If r exceeds δ₀R.
        CertificateError: If strict is set and a check fails.

    Returns:
        SllcCertificate: The certificate."""
    radius = params.delta0 * params.R if r is None else r
    if radius < 0 or radius > params.delta0 * params.R * (1.0 + 1e-12):
        raise ValueError(f"Radius {radius!r} must lie in [0, δ₀R]")
    certificate = SllcCertificate(p, radius, params.ell, params.contraction_constant, params.ell, seed=seed)
    if radius == 0 or samples <= 0:
        return certificate
    rng = make_rng(seed)
    homotopy = FlowHomotopy(default_field(space, p, params), params)
    checked: set[SpacePoint] = set()

    def fail(flag: str, witness: dict[str, Any]) -> None:
        setattr(certificate, flag, False)
        if not certificate.witness:
            certificate.witness = {"check": flag, **witness}

    def check_curve(x: SpacePoint) -> None:
        if x in checked:
            return
        checked.add(x)
        curve = homotopy.curve(x)
        start = space.distance(x, p)
        if space.distance(homotopy(x, 1.0), p) > tol:
            fail("endpoint_pass", {"x": x.to_dict(), "end": curve.end.to_dict()})
        for sample in curve.samples:
            if space.distance(sample.x, p) > start + tol:
                fail("containment_pass", {"x": x.to_dict(), "t": sample.t})

    for _ in range(samples):
        x, y = space.sample_ball(p, radius, rng, 2)
        if rng.random() < CLOSE_SHARE:
            y = _close_point(space, x, y)
        s, t = rng.random(2)
        check_curve(x)
        check_curve(y)
        first, second = homotopy(x, float(s)), homotopy(y, float(t))
        gap = space.distance(x, y)
        current = space.distance(first, second)
        margin = certificate.C * gap + certificate.C_prime * abs(s - t) + tol - current
        certificate.samples += 1
        certificate.worst_margin = min(certificate.worst_margin, margin)
        if margin < 0:
            fail("lipschitz_pass", {"x": x.to_dict(), "y": y.to_dict(), "s": float(s), "t": float(t)})
        if gap > 0:
            same_time = space.distance(first, homotopy(y, float(s)))
            certificate.fitted_C = max(certificate.fitted_C, same_time / gap)
        if s != t:
            same_point = space.distance(first, homotopy(x, float(t)))
            certificate.fitted_C_prime = max(certificate.fitted_C_prime, same_point / abs(float(s - t)))
        for point in (first, second):
            origin = x if point is first else y
            if space.distance(point, p) > space.distance(origin, p) + tol:
                fail("containment_pass", {"x": origin.to_dict(), "image": point.to_dict()})
    certificate.starts = len(checked)

    logger.info(
        "SLLC certificate for %r at %s: passed=%s, fitted C=%.4f, C'=%.4f",
        space,
        p,
        certificate.passed,
        certificate.fitted_C,
        certificate.fitted_C_prime,
    )
    if strict and not certificate.passed:
        raise CertificateError("SLLC certificate failed", certificate.witness)
    return certificate
