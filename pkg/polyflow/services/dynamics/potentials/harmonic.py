import numpy as np

from ....schemas.dynamics import PotentialSpec
from .base import PotentialBase


class HarmonicPotential(PotentialBase):
    def __init__(self, spec: PotentialSpec):
        self.k = spec.strength

    def value(self, r: np.ndarray) -> float:
        return 0.5 * self.k * float(np.dot(r, r))

    def gradient(self, r: np.ndarray) -> np.ndarray:
        return self.k * r
