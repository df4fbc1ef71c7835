import logging
import sys

from .config import settings


def configure_logging(level: str | None = None) -> None:
    """Send diagnostics to stderr so stdout stays a pure data stream."""
    chosen = (level or settings.LOG).upper()
    logging.basicConfig(
        level=chosen,
        stream=sys.stderr,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        force=True,
    )
    logging.getLogger(__name__).debug("Logging level set to %s", chosen)
