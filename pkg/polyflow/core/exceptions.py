"""
Centralized exception hierarchy with CLI exit codes
"""

import logging

from pydantic import ValidationError

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_OUT_OF_SCOPE = 2


class PolyflowError(Exception):
    """Base exception for polyflow"""

    def __init__(self, message: str, exit_code: int = EXIT_FAILURE):
        self.message = message
        self.exit_code = exit_code
        super().__init__(self.message)


class OutOfScopeError(PolyflowError):
    """Instance lies outside real, simple-rooted territory"""

    def __init__(self, message: str):
        super().__init__(message, EXIT_OUT_OF_SCOPE)


class InputError(PolyflowError):
    """Malformed input payload or options"""

    def __init__(self, message: str):
        super().__init__(message, EXIT_FAILURE)


class DegreeTooSmallError(PolyflowError):
    def __init__(self, degree: int, minimum: int = 2):
        super().__init__(f"degree {degree} is below the minimum {minimum}")


class IndexOutOfRangeError(PolyflowError):
    def __init__(self, index: int, low: int, high: int):
        super().__init__(f"index {index} outside [{low}, {high}]")


class DuplicateRootError(OutOfScopeError):
    def __init__(self, gap: float, tolerance: float):
        super().__init__(f"repeated roots: min gap {gap:.3e} below tolerance {tolerance:.3e}")


class SingularEvolutionError(OutOfScopeError):
    """Evolution cannot reach P^2 = 0 along a real translation"""


class DiscriminantViolationError(OutOfScopeError):
    """Cubic outside the three-real-root regime"""


class InconsistentInitError(OutOfScopeError):
    """Dynamics initial state violates the coefficient relation"""


class MaxStepsExceededError(PolyflowError):
    def __init__(self, steps: int):
        super().__init__(f"step budget of {steps} exhausted")


class DriftExceededError(PolyflowError):
    def __init__(self, drift: float, tolerance: float):
        super().__init__(f"invariant drift {drift:.3e} exceeds tolerance {tolerance:.3e}")


class NotAtZeroError(PolyflowError):
    def __init__(self, psq: float, tolerance: float):
        super().__init__(f"|P^2| = {abs(psq):.3e} exceeds event tolerance {tolerance:.3e}")


class IncompleteTraceError(PolyflowError):
    """Reduction trace does not end in a linear stage"""


class NoConvergenceError(PolyflowError):
    def __init__(self, iterations: int, displacement: float):
        super().__init__(
            f"no convergence after {iterations} iterations (last displacement {displacement:.3e})"
        )


class RadicandNegativeError(PolyflowError):
    def __init__(self, radicand: float):
        super().__init__(f"flow radicand {radicand:.6g} is negative at the start point")


class NoTurningPointError(PolyflowError):
    """Flow never reached a zero of its radicand"""


class ModulusOutOfRangeError(PolyflowError):
    def __init__(self, m: float):
        super().__init__(f"elliptic parameter {m!r} outside [0, 1]")


class StepFailureError(PolyflowError):
    """Integrator produced a non-finite state or left the potential domain"""


class UnknownSuiteError(PolyflowError):
    def __init__(self, suite: str, known: list[str]):
        super().__init__(f"unknown suite {suite!r}; choose from {', '.join(known)}")


def handle_cli_exception(e: Exception, operation: str) -> int:
    """
    Convert exceptions to exit codes.
    Logs detail on the diagnostic stream, never on the data stream.
    """
    if isinstance(e, ValidationError):
        logger.error("Invalid input for %s: %s", operation, e.errors()[0]["msg"])
        return EXIT_FAILURE
    if isinstance(e, PolyflowError):
        logger.error("Failed to %s: %s", operation, e.message)
        logger.debug("Traceback for %s", operation, exc_info=True)
        return e.exit_code

    logger.error(f"Error during {operation}: {str(e)}", exc_info=True)
    return EXIT_FAILURE
