"""This module contains the parameter block of the flow experiments."""

import dataclasses
import math
from dataclasses import dataclass
from typing import Any

from alexandrov_flow.model_trig import lipschitz_contraction_rate


# pylint: disable=R0902
@dataclass(frozen=True)
class FlowParams:
    """Parameters of the contraction toward a point p by the gradient flow of d(S(p, R), ·).

    Args:
        eps (float): Angle ε in (0, π/6).
        delta0 (float): Fraction δ₀ in (0, 1); the contracted ball has radius δ₀R.
        R (float): Radius of the sphere defining the field.
        lam (float | None): Contraction exponent λ; defaults to cosh R / sinh(R(1-δ₀)).
        step_tol (float): Relative tolerance of the step control.
        max_step (float): Largest time step.
        min_step (float): Smallest time step; steps at this size are always accepted.
        resolution (int): Direction scan resolution of the gradients.

    Raises:
        ValueError: If a parameter is out of range.

    Example:
        ```python
        from alexandrov_flow.flow import FlowParams

        params = FlowParams.default()
        params.ell  # δ₀R / cos ε
        ```
    """

    eps: float = 0.1
    delta0: float = 0.05
    R: float = 1.0
    lam: float | None = None
    step_tol: float = 1e-6
    max_step: float = 0.01
    min_step: float = 1e-5
    resolution: int = 720

    def __post_init__(self) -> None:
        if not 0.0 < self.eps < math.pi / 6.0:
            raise ValueError(f"ε must lie in (0, π/6), got {self.eps!r}")
        if not 0.0 < self.delta0 < 1.0:
            raise ValueError(f"δ₀ must lie in (0, 1), got {self.delta0!r}")
        if self.R <= 0:
            raise ValueError(f"R must be positive, got {self.R!r}")
        if self.step_tol <= 0 or self.max_step <= 0 or self.min_step <= 0:
            raise ValueError("Step tolerances must be positive")
        if self.min_step > self.max_step:
            raise ValueError(f"min_step {self.min_step!r} exceeds max_step {self.max_step!r}")
        if self.resolution < 16:
            raise ValueError(f"Resolution must be at least 16, got {self.resolution!r}")
        bound = lipschitz_contraction_rate(self.R, self.delta0)
        if self.lam is None:
            object.__setattr__(self, "lam", bound)
        elif self.lam < bound * (1.0 - 1e-12):
            raise ValueError(f"λ = {self.lam!r} is below cosh R / sinh(R(1-δ₀)) = {bound!r}")

    @classmethod
    def default(cls) -> "FlowParams":
        """Returns the default table: ε = 0.1, δ₀ = 0.05, R = 1.

        Returns:
            FlowParams: Default parameters."""
        return cls()

    @property
    def rate(self) -> float:
        """Returns λ.

        Returns:
            float: The contraction exponent."""
        return float(self.lam)  # type: ignore[arg-type]

    @property
    def ell(self) -> float:
        """Returns the total flow time ℓ = δ₀R / cos ε of the contraction.

        Returns:
            float: ℓ."""
        return self.delta0 * self.R / math.cos(self.eps)

    @property
    def contraction_constant(self) -> float:
        """Returns e^{λℓ}, the Lipschitz constant of the contraction in space.

        Returns:
            float: C."""
        return math.exp(self.rate * self.ell)

    def with_fixed_step(self, step: float) -> "FlowParams":
        """Returns a copy integrating with a constant step.

        Args:
            step (float): The step.

        Returns:
            FlowParams: Copy with min_step = max_step = step."""
        return dataclasses.replace(self, max_step=step, min_step=step)

    def to_dict(self) -> dict[str, Any]:
        """Returns the JSON representation.

        Returns:
            dict[str, Any]: Parameter values and derived constants."""
        return {
            "eps": self.eps,
            "delta0": self.delta0,
            "R": self.R,
            "lambda": self.rate,
            "ell": self.ell,
            "step_tol": self.step_tol,
            "max_step": self.max_step,
            "min_step": self.min_step,
            "resolution": self.resolution,
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "FlowParams":
        """Creates parameters from a JSON block; missing keys take the defaults.

        Args:
            data (dict[str, Any]): Parameter block, "lambda" for λ.

        Returns:
            FlowParams: Parameters."""
        keys = {"eps", "delta0", "R", "step_tol", "max_step", "min_step", "resolution"}
        values = {key: data[key] for key in keys if key in data}
        if "lambda" in data:
            values["lam"] = data["lambda"]
        return cls(**values)
