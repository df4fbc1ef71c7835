import importlib
import logging

from ....schemas.dynamics import PotentialKind, PotentialSpec
from .base import PotentialBase

logger = logging.getLogger(__name__)

_MODULES = {
    PotentialKind.coulomb: ("coulomb", "CoulombPotential"),
    PotentialKind.harmonic: ("harmonic", "HarmonicPotential"),
    PotentialKind.custom_tabulated: ("tabulated", "TabulatedPotential"),
}


class PotentialFactory:
    @staticmethod
    def get_potential(spec: PotentialSpec) -> PotentialBase:
        try:
            module_name, class_name = _MODULES[spec.kind]
            module = importlib.import_module(
                f".{module_name}", package="polyflow.services.dynamics.potentials"
            )
            potential_class = getattr(module, class_name)
        except (KeyError, ImportError, AttributeError) as e:
            raise ValueError(f"Unsupported potential: {spec.kind}") from e
        logger.debug("Using %s potential (strength %g)", spec.kind.value, spec.strength)
        return potential_class(spec)
