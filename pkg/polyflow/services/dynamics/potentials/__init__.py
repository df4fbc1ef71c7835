from .base import PotentialBase
from .factory import PotentialFactory

__all__ = ["PotentialBase", "PotentialFactory"]
