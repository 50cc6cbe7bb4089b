"""
Logging configuration for the quantum f-correlations toolkit
"""
import logging
import os
from datetime import datetime
from ..config import LOG_DIR, LOG_LEVEL, LOG_FORMAT, LOG_DATE_FORMAT


def setup_logging(debug=False, log_to_file=True):
    """
    Setup logging to the console (stderr) and optionally to a file.

    Stdout is reserved for machine-readable reports, so no handler writes there.

    Args:
        debug: If True, set log level to DEBUG
        log_to_file: If True, also write a timestamped log file in LOG_DIR

    Returns:
        Logger instance
    """
    level = logging.DEBUG if debug else getattr(logging, LOG_LEVEL, logging.INFO)

    logger = logging.getLogger('qfcorr')
    logger.setLevel(level)

    # Remove existing handlers to avoid duplicates
    logger.handlers.clear()

    # Console handler (stderr)
    console_handler = logging.StreamHandler()
    console_handler.setLevel(level)
    console_handler.setFormatter(logging.Formatter(LOG_FORMAT, LOG_DATE_FORMAT))
    logger.addHandler(console_handler)

    if log_to_file:
        os.makedirs(LOG_DIR, exist_ok=True)
        log_filename = os.path.join(LOG_DIR, f"qfcorr_{datetime.now().strftime('%Y%m%d_%H%M%S')}.log")
        file_handler = logging.FileHandler(log_filename)
        file_handler.setLevel(level)
        file_handler.setFormatter(logging.Formatter(LOG_FORMAT, LOG_DATE_FORMAT))
        logger.addHandler(file_handler)
        logger.debug(f"Logging initialized. Log file: {log_filename}")

    return logger


def get_logger(name):
    """
    Get a logger instance for a specific module.

    Args:
        name: Logger name (usually __name__)

    Returns:
        Logger instance
    """
    return logging.getLogger(f'qfcorr.{name}')
