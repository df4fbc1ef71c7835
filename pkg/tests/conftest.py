import numpy as np
import pytest

from polyflow.core.config import settings
from polyflow.main import main
from polyflow.services.poly_core import from_roots


@pytest.fixture(scope="module")
def worked_cubic():
    """(X-1)(X-2)(X-3): P_1 = 2, P_2 = 5.5, P^2 = 6."""
    return from_roots([1.0, 2.0, 3.0])


@pytest.fixture
def rng():
    return np.random.default_rng(settings.SEED)


@pytest.fixture
def run_cli(capsys):
    def run(*argv: str) -> tuple[int, str, str]:
        code = main(list(argv))
        captured = capsys.readouterr()
        return code, captured.out, captured.err

    return run
