"""Logging configuration for the placement engine."""

import logging
from rich.logging import RichHandler
from rich.console import Console

from .config import settings

LOGGER_NAME = "slice_placer"


def configure_logger(level: str) -> logging.Logger:
    """Attach a single stderr RichHandler so CLI output on stdout stays parseable."""
    configured = logging.getLogger(LOGGER_NAME)
    configured.setLevel(level.upper())
    configured.handlers.clear()

    handler = RichHandler(
        rich_tracebacks=True,
        console=Console(stderr=True),
        show_time=True,
        show_path=False,
        markup=False,
    )
    handler.setLevel(level.upper())
    configured.addHandler(handler)
    return configured


logger = configure_logger(settings.log_level)
