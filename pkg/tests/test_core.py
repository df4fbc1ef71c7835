import logging
import math

import pytest
from pydantic import BaseModel, ValidationError

from polyflow.core.config import Settings
from polyflow.core.exceptions import (
    EXIT_FAILURE,
    EXIT_OUT_OF_SCOPE,
    DiscriminantViolationError,
    InputError,
    MaxStepsExceededError,
    handle_cli_exception,
)
from polyflow.core.log_config import configure_logging
from polyflow.worker import map_ordered


class _Strict(BaseModel):
    value: int


def test_settings_defaults():
    settings = Settings()
    assert settings.EVENT_TOL == 1e-12
    assert settings.WORKERS == 1


def test_settings_from_environment(monkeypatch):
    monkeypatch.setenv("POLYFLOW_SEED", "7")
    monkeypatch.setenv("POLYFLOW_DYNAMICS_STEP", "0.01")
    settings = Settings()
    assert settings.SEED == 7
    assert settings.DYNAMICS_STEP == 0.01


def test_out_of_scope_exit_code():
    assert handle_cli_exception(DiscriminantViolationError("single real root"), "solve") == (
        EXIT_OUT_OF_SCOPE
    )


@pytest.mark.parametrize(
    "error", [InputError("bad"), MaxStepsExceededError(10), RuntimeError("boom")]
)
def test_failure_exit_code(error):
    assert handle_cli_exception(error, "solve") == EXIT_FAILURE


def test_validation_error_exit_code(caplog):
    with pytest.raises(ValidationError) as excinfo:
        _Strict(value="not a number")
    with caplog.at_level(logging.ERROR):
        assert handle_cli_exception(excinfo.value, "solve") == EXIT_FAILURE
    assert "Invalid input for solve" in caplog.text


def test_configure_logging_level():
    configure_logging("debug")
    assert logging.getLogger().level == logging.DEBUG
    configure_logging("warning")
    assert logging.getLogger().level == logging.WARNING


@pytest.mark.parametrize("workers", [1, 2])
def test_map_ordered_keeps_input_order(workers):
    items = [9, 1, 7, 3, 5, 2]
    assert map_ordered(math.factorial, items, workers) == [math.factorial(i) for i in items]


def test_map_ordered_empty():
    assert map_ordered(math.factorial, [], 4) == []
