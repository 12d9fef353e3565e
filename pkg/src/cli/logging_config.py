"""Structured logging for the devpatch command line (structlog over stdlib logging)."""

import logging
import sys
from typing import Any, Dict

import numpy as np
import structlog

RENDERERS = {
    "json": lambda: structlog.processors.JSONRenderer(),
    "console": lambda: structlog.dev.ConsoleRenderer(colors=False),
}


def plain_numbers(_logger, _method: str, event_dict: Dict[str, Any]) -> Dict[str, Any]:
    """Turn numpy scalars and arrays into Python numbers and lists."""
    for key, value in event_dict.items():
        if isinstance(value, np.generic):
            event_dict[key] = value.item()
        elif isinstance(value, np.ndarray):
            event_dict[key] = value.tolist()
    return event_dict


def setup_logging(log_level: str = "WARNING", log_format: str = "console") -> None:
    """
    Route structlog events and the library's stdlib records through one handler.

    Records go to stderr; stdout carries only the JSON report.

    Args:
        log_level: Python log level name (DEBUG, INFO, WARNING, ERROR, CRITICAL)
        log_format: "json" for one object per line, "console" for humans

    Raises:
        ValueError: If ``log_format`` is not a known renderer.
    """
    if log_format not in RENDERERS:
        raise ValueError(f"Unknown log format {log_format!r}; expected one of {sorted(RENDERERS)}")

    shared_processors: list[structlog.types.Processor] = [
        structlog.contextvars.merge_contextvars,
        structlog.stdlib.add_log_level,
        structlog.stdlib.add_logger_name,
        structlog.processors.TimeStamper(fmt="iso"),
        plain_numbers,
        structlog.processors.StackInfoRenderer(),
        structlog.processors.format_exc_info,
    ]

    # Not cached: tests and scripts call main() repeatedly in one process
    structlog.configure(
        processors=[*shared_processors, structlog.stdlib.ProcessorFormatter.wrap_for_formatter],
        logger_factory=structlog.stdlib.LoggerFactory(),
        wrapper_class=structlog.stdlib.BoundLogger,
        cache_logger_on_first_use=False,
    )

    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(
        structlog.stdlib.ProcessorFormatter(
            foreign_pre_chain=shared_processors,
            processors=[structlog.stdlib.ProcessorFormatter.remove_processors_meta, RENDERERS[log_format]()],
        )
    )

    root_logger = logging.getLogger()
    root_logger.handlers.clear()
    root_logger.addHandler(handler)
    root_logger.setLevel(getattr(logging, log_level.upper(), logging.WARNING))
