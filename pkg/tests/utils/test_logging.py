"""Tests for logger setup."""

import logging


def test_console_handler_only_by_default():
    from src.utils import setup_logger

    logger = setup_logger("bisectd-test-console", verbose=False)
    assert len(logger.handlers) == 1
    assert logger.level == logging.INFO
    assert logger.propagate is False


def test_verbose_switches_to_debug():
    from src.utils import setup_logger

    logger = setup_logger("bisectd-test-verbose", verbose=True)
    assert logger.handlers[0].level == logging.DEBUG


def test_log_file_receives_debug_records(tmp_path):
    from src.utils import setup_logger

    log_file = tmp_path / "logs" / "run.log"
    logger = setup_logger("bisectd-test-file", log_file=log_file, verbose=False)
    assert len(logger.handlers) == 2
    logger.debug("closure finished")
    for handler in logger.handlers:
        handler.flush()
    assert "closure finished" in log_file.read_text()
    assert logger.handlers[0].level == logging.INFO


def test_repeated_setup_does_not_stack_handlers():
    from src.utils import setup_logger

    setup_logger("bisectd-test-repeat", verbose=False)
    logger = setup_logger("bisectd-test-repeat", verbose=False)
    assert len(logger.handlers) == 1


def test_verbose_defaults_to_the_config_flag():
    from unittest.mock import patch

    from src.utils import setup_logger
    from src.utils.config import Config

    with patch.object(Config, "get", return_value=True):
        logger = setup_logger("bisectd-test-config")
    assert logger.handlers[0].level == logging.DEBUG
