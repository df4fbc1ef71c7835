import numpy as np

from ....core.exceptions import StepFailureError
from ....schemas.dynamics import PotentialSpec
from .base import PotentialBase


class CoulombPotential(PotentialBase):
    """V = -k / |r|, undefined inside the cutoff ball around the origin."""

    def __init__(self, spec: PotentialSpec):
        self.k = spec.strength
        self.cutoff = spec.cutoff

    def _radius(self, r: np.ndarray) -> float:
        radius = float(np.linalg.norm(r))
        if radius < self.cutoff:
            raise StepFailureError(
                f"trajectory entered the excluded ball |r| < {self.cutoff:g} (|r| = {radius:.3g})"
            )
        return radius

    def value(self, r: np.ndarray) -> float:
        return -self.k / self._radius(r)

    def gradient(self, r: np.ndarray) -> np.ndarray:
        radius = self._radius(r)
        return self.k * r / radius**3
