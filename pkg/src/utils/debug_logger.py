"""
Logging utility for the thermal lab.

Nothing is configured at import time; the CLI calls ``configure_logging``
once before running a subcommand.
"""

import logging
import os
from datetime import datetime

from src.constants import LOGGER_NAME

# Formatter shared by console and file handlers
formatter = logging.Formatter('%(asctime)s - %(levelname)s - %(message)s')

logger = logging.getLogger(LOGGER_NAME)


def get_logger(name=None):
    """Child logger under the package logger."""
    if not name:
        return logger
    return logger.getChild(name.rsplit('.', 1)[-1])


def configure_logging(level="INFO", log_dir=None):
    """
    Attach a console handler and, optionally, a timestamped file handler.

    Args:
        level (str): Logging level name
        log_dir (str): Directory for the log file, or None for console only

    Returns:
        str: Path of the log file, or None
    """
    logger.setLevel(getattr(logging, str(level).upper(), logging.INFO))
    for handler in list(logger.handlers):
        logger.removeHandler(handler)

    console_handler = logging.StreamHandler()
    console_handler.setFormatter(formatter)
    logger.addHandler(console_handler)

    log_filename = None
    if log_dir:
        if not os.path.exists(log_dir):
            os.makedirs(log_dir)
        log_filename = os.path.join(
            log_dir, f"thermal_lab_{datetime.now().strftime('%Y%m%d_%H%M%S')}.log")
        file_handler = logging.FileHandler(log_filename, encoding="utf-8")
        file_handler.setFormatter(formatter)
        logger.addHandler(file_handler)

    logger.propagate = False
    return log_filename


def log_run_event(event_type, **kwargs):
    """Log a run event with key='value' context."""
    log_message = f"[{event_type}] "
    for key, value in kwargs.items():
        log_message += f"{key}='{value}' "
    logger.info(log_message.rstrip())
