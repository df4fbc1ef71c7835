import numpy as np
from scipy.interpolate import CubicSpline

from ....schemas.dynamics import PotentialSpec
from .base import PotentialBase


class TabulatedPotential(PotentialBase):
    """Radial V(|r|) from samples, interpolated with a C2 cubic spline."""

    def __init__(self, spec: PotentialSpec):
        radii, values = zip(*spec.table)
        self.spline = CubicSpline(np.array(radii), np.array(values))
        self.slope = self.spline.derivative()

    def value(self, r: np.ndarray) -> float:
        return float(self.spline(np.linalg.norm(r)))

    def gradient(self, r: np.ndarray) -> np.ndarray:
        radius = float(np.linalg.norm(r))
        if radius == 0.0:
            return np.zeros_like(r)
        return float(self.slope(radius)) * r / radius
