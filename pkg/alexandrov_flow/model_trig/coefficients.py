"""This module contains the scalar coefficients of the curvature-dimension conditions:
distortion coefficients σ and τ, the Bishop–Gromov model profile, the averaging-operator
constant and the simplicial-volume bound coefficients."""

import math
from dataclasses import dataclass
from typing import Any, Literal

from scipy import integrate

from alexandrov_flow.model_trig.model_trig import sn
from alexandrov_flow.utils.errors import DomainError

QUAD_EPSREL = 1e-10
QUAD_LIMIT = 200


@dataclass(frozen=True)
class CDParams:
    """Curvature-dimension parameters (K, N) with N >= 1.

    Args:
        K (float): Lower Ricci bound.
        N (float): Dimension parameter, at least 1.

    Raises:
        ValueError: If N < 1 or a value is not finite.

    Example:
        ```python
        from alexandrov_flow.model_trig import CDParams

        params = CDParams(K=-1.0, N=2.0)
        ```
    """

    K: float
    N: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.K) and math.isfinite(self.N)):
            raise ValueError(f"CDParams must be finite, got K={self.K!r}, N={self.N!r}")
        if self.N < 1:
            raise ValueError(f"Dimension parameter N must be at least 1, got {self.N!r}")

    def with_dimension(self, dimension: float) -> "CDParams":
        """Returns a copy with another dimension parameter (used for N' >= N).

        Args:
            dimension (float): New dimension parameter.

        Returns:
            CDParams: Same K, new N."""
        return CDParams(self.K, dimension)


@dataclass(frozen=True)
class ExtendedReal:
    """A real number or +∞, with the infinite branch tagged explicitly."""

    value: float
    infinite: bool = False

    @classmethod
    def infinity(cls) -> "ExtendedReal":
        """Returns the tagged +∞.

        Returns:
            ExtendedReal: +∞."""
        return cls(math.inf, True)

    @property
    def finite(self) -> bool:
        """Returns True on the finite branch.

        Returns:
            bool: True if the value is finite."""
        return not self.infinite

    def __float__(self) -> float:
        return math.inf if self.infinite else self.value

    def to_dict(self) -> dict[str, Any]:
        """Returns a JSON friendly representation.

        Returns:
            dict[str, Any]: {"value", "infinite"}."""
        return {"value": None if self.infinite else self.value, "infinite": self.infinite}


def _check_fraction(t: float) -> None:
    if not 0.0 <= t <= 1.0:
        raise ValueError(f"Fraction {t!r} is outside [0, 1]")


def _sigma(curvature: float, dimension: float, t: float, theta: float) -> ExtendedReal:
    if curvature * theta * theta >= dimension * math.pi * math.pi:
        return ExtendedReal.infinity()
    if t in (0.0, 1.0) or curvature == 0 or theta == 0:
        return ExtendedReal(float(t))
    kappa = curvature / dimension
    return ExtendedReal(float(sn(kappa, t * theta) / sn(kappa, theta)))


def sigma(params: CDParams, t: float, theta: float) -> ExtendedReal:
    """Returns the distortion coefficient σ_{K,N}^{(t)}(θ): +∞ when Kθ² >= Nπ²,
    otherwise sn_{K/N}(tθ)/sn_{K/N}(θ).

    Args:
        params (CDParams): The pair (K, N).
        t (float): Fraction in [0, 1].
        theta (float): Distance θ >= 0.

    Returns:
        ExtendedReal: The coefficient, possibly the tagged +∞."""
    _check_fraction(t)
    if theta < 0:
        raise ValueError(f"Distance {theta!r} must be nonnegative")
    return _sigma(params.K, params.N, t, theta)


def tau(params: CDParams, t: float, theta: float) -> ExtendedReal:
    """Returns τ_{K,N}^{(t)}(θ) = t^{1/N} σ_{K,N-1}^{(t)}(θ)^{(N-1)/N}.
    For N = 1 the exponent of σ vanishes and τ = t.

    Args:
        params (CDParams): The pair (K, N).
        t (float): Fraction in [0, 1].
        theta (float): Distance θ >= 0.

    Returns:
        ExtendedReal: The coefficient, possibly the tagged +∞."""
    _check_fraction(t)
    if theta < 0:
        raise ValueError(f"Distance {theta!r} must be nonnegative")
    if params.N == 1:
        return ExtendedReal(float(t))
    inner = _sigma(params.K, params.N - 1.0, t, theta)
    if inner.infinite:
        return ExtendedReal.infinity() if t > 0 else ExtendedReal(0.0)
    exponent = (params.N - 1.0) / params.N
    return ExtendedReal(t ** (1.0 / params.N) * inner.value**exponent)


def bg_radius_cap(params: CDParams) -> float:
    """Returns the largest radius π√((N-1)/K) where the model profile is defined (∞ if K <= 0).

    Args:
        params (CDParams): The pair (K, N) with N > 1.

    Returns:
        float: The radius cap."""
    if params.K <= 0:
        return math.inf
    return math.pi * math.sqrt((params.N - 1.0) / params.K)


def _profile_integral(params: CDParams, lower: float, upper: float) -> float:
    kappa = params.K / (params.N - 1.0)
    power = params.N - 1.0

    def integrand(x: float) -> float:
        return max(sn(kappa, x), 0.0) ** power

    value, _ = integrate.quad(integrand, lower, upper, epsabs=0.0, epsrel=QUAD_EPSREL, limit=QUAD_LIMIT)
    return float(value)


def bg_profile(params: CDParams, r: float) -> float:
    """Returns the Bishop–Gromov model profile v̄_{K,N}(r) = ∫_0^r sn_{K/(N-1)}^{N-1}(t) dt,
    computed by adaptive Gauss–Kronrod quadrature with relative tolerance 1e-10.

    Args:
        params (CDParams): The pair (K, N) with N > 1.
        r (float): Radius, nonnegative and below the cap when K > 0.

    Raises:
        DomainError: If N <= 1, r < 0 or r exceeds π√((N-1)/K) for K > 0.

    Returns:
        float: v̄_{K,N}(r)."""
    if params.N <= 1:
        raise DomainError("The model profile requires N > 1")
    if r < 0:
        raise DomainError(f"Radius {r!r} must be nonnegative")
    if r > bg_radius_cap(params) * (1.0 + 1e-12):
        raise DomainError(f"Radius {r!r} exceeds π√((N-1)/K) = {bg_radius_cap(params)!r}")
    if r == 0:
        return 0.0
    if params.K == 0:
        return r**params.N / params.N
    return _profile_integral(params, 0.0, r)


def c_coeff(params: CDParams, radius: float, eps: float) -> float:
    """Returns C_{K,N}(R, ε) = (v̄(R) - v̄(R-ε)) / (ε v̄(R-ε)), the norm bound of the averaging
    operator. The numerator is integrated directly over [R-ε, R].

    Args:
        params (CDParams): The pair (K, N) with K < 0 and N > 1.
        radius (float): Averaging radius R.
        eps (float): Ramp width ε with 0 < ε < R.

    Raises:
        ValueError: If the preconditions are violated.

    Returns:
        float: C_{K,N}(R, ε)."""
    if params.K >= 0 or params.N <= 1:
        raise ValueError(f"c_coeff requires K < 0 and N > 1, got {params}")
    if not 0.0 < eps < radius:
        raise ValueError(f"Expected 0 < ε < R, got ε={eps!r}, R={radius!r}")
    shell = _profile_integral(params, radius - eps, radius)
    return shell / (eps * bg_profile(params, radius - eps))


def c_coeff_limit(params: CDParams) -> float:
    """Returns the limit √(-K(N-1)) of C_{K,N}(R, ε) as R → ∞ and ε → 0.

    Args:
        params (CDParams): The pair (K, N) with K <= 0.

    Returns:
        float: √(-K(N-1))."""
    return math.sqrt(max(-params.K * (params.N - 1.0), 0.0))


def simplicial_volume_coefficient(
    n: int,
    mode: Literal["alexandrov", "cd"],
    kappa: float | None = None,
    params: CDParams | None = None,
) -> float:
    """Returns the scalar multiplying 𝓗^n(X) in the simplicial-volume bound:
    n!(n-1)^n(-κ)^{n/2} for Alexandrov spaces with curvature >= κ and
    n!(-(N-1)K)^{n/2} for CD(K, N) spaces.

    Args:
        n (int): Dimension, at least 1.
        mode (str): "alexandrov" (requires kappa) or "cd" (requires params).
        kappa (float, optional): Curvature bound κ < 0. Defaults to None.
        params (CDParams, optional): (K, N) with K < 0. Defaults to None.

    Raises:
        ValueError: On a missing argument or a sign violation.

    Returns:
        float: The coefficient."""
    if n < 1:
        raise ValueError(f"Dimension must be at least 1, got {n!r}")
    factorial = float(math.factorial(n))
    if mode == "alexandrov":
        if kappa is None or kappa >= 0:
            raise ValueError(f"Alexandrov mode requires κ < 0, got {kappa!r}")
        return factorial * float(n - 1) ** n * (-kappa) ** (n / 2.0)
    if mode == "cd":
        if params is None or params.K >= 0:
            raise ValueError(f"CD mode requires K < 0, got {params!r}")
        return factorial * (-(params.N - 1.0) * params.K) ** (n / 2.0)
    raise ValueError(f"Unknown mode {mode!r}, expected 'alexandrov' or 'cd'")
