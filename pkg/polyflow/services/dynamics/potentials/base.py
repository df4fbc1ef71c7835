from abc import ABC, abstractmethod

import numpy as np


class PotentialBase(ABC):
    @abstractmethod
    def value(self, r: np.ndarray) -> float:
        """V(r)."""

    @abstractmethod
    def gradient(self, r: np.ndarray) -> np.ndarray:
        """grad V(r), same shape as r."""
