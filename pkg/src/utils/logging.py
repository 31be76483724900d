"""Logging utilities."""

import logging
import sys
from pathlib import Path
from typing import Optional

FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
DATE_FORMAT = "%Y-%m-%d %H:%M:%S"


def setup_logger(
    name: str = "src",
    log_file: Optional[Path] = None,
    level: int = logging.INFO,
    verbose: Optional[bool] = None,
) -> logging.Logger:
    """
    Setup the package logger with console and optional file output.

    Module loggers are children of ``name`` (``src.forest.closure`` and so
    on), so configuring the package logger once makes all of them visible.

    Args:
        name: Logger name
        log_file: Optional log file path; it always receives DEBUG records
        level: Logging level
        verbose: Enable DEBUG output; None reads processing.verbose

    Returns:
        Configured logger
    """
    if verbose is None:
        from .config import get_config

        verbose = bool(get_config().get("processing", "verbose", default=False))

    logger = logging.getLogger(name)
    console_level = logging.DEBUG if verbose else level
    logger.setLevel(logging.DEBUG if log_file else console_level)
    logger.propagate = False

    # Re-running the CLI in one process must not stack handlers
    for handler in list(logger.handlers):
        logger.removeHandler(handler)
        handler.close()

    formatter = logging.Formatter(FORMAT, datefmt=DATE_FORMAT)

    console_handler = logging.StreamHandler(sys.stdout)
    console_handler.setLevel(console_level)
    console_handler.setFormatter(formatter)
    logger.addHandler(console_handler)

    if log_file:
        log_file = Path(log_file)
        log_file.parent.mkdir(parents=True, exist_ok=True)
        file_handler = logging.FileHandler(log_file)
        file_handler.setLevel(logging.DEBUG)
        file_handler.setFormatter(formatter)
        logger.addHandler(file_handler)

    return logger


def get_logger(name: str) -> logging.Logger:
    """
    Get logger by name.

    Args:
        name: Logger name (use ``__name__``)

    Returns:
        Logger instance
    """
    return logging.getLogger(name)
