"""Tests for the command-line logging setup."""

import json
import logging
from unittest.mock import MagicMock, patch

import numpy as np
import pytest
import structlog

from cli.logging_config import plain_numbers, setup_logging
from cli.main import main


@pytest.fixture(autouse=True)
def _reset_logging():
    yield
    logging.getLogger().handlers.clear()
    structlog.contextvars.clear_contextvars()


def test_numpy_values_become_plain():
    event = plain_numbers(None, "info", {"k": np.float64(0.5), "n": np.int64(3), "ts": np.array([0.0, 1.0])})
    assert event == {"k": 0.5, "n": 3, "ts": [0.0, 1.0]}
    assert type(event["k"]) is float


def test_json_lines_go_to_stderr(capsys):
    setup_logging("INFO", "json")
    structlog.contextvars.bind_contextvars(run_id="abc")
    structlog.get_logger("devpatch.test").info("solved", max_residual=np.float64(1e-12))
    logging.getLogger("devpatch.roots").info("Traced %d branches", 2)

    captured = capsys.readouterr()
    assert captured.out == ""
    lines = [json.loads(line) for line in captured.err.splitlines()]
    assert lines[0]["event"] == "solved"
    assert lines[0]["max_residual"] == 1e-12
    assert lines[0]["run_id"] == "abc"
    assert lines[1]["event"] == "Traced 2 branches"
    assert lines[1]["logger"] == "devpatch.roots"


def test_level_filters_library_records(capsys):
    setup_logging("WARNING", "console")
    logging.getLogger("devpatch.pipeline").info("hidden")
    logging.getLogger("devpatch.pipeline").warning("shown")
    err = capsys.readouterr().err
    assert "hidden" not in err
    assert "shown" in err


def test_unknown_format():
    with pytest.raises(ValueError, match="Unknown log format"):
        setup_logging("INFO", "xml")


@patch("cli.main.get_settings")
def test_cli_rejects_unknown_format(mock_settings, tmp_path, capsys):
    mock_settings.return_value = MagicMock(log_level="INFO", log_format="xml")
    assert main(["solve", str(tmp_path / "c.json"), str(tmp_path / "d.json")]) == 1
    assert "Unknown log format" in capsys.readouterr().err
