"""Centralized logging"""
import logging
import os
import sys

LOG_LEVEL_ENV = 'HATLF_LOG_LEVEL'


def _default_level():
    name = os.environ.get(LOG_LEVEL_ENV, 'WARNING').upper()
    return getattr(logging, name, logging.WARNING)


def setup_logger(name, level=None):
    logger = logging.getLogger(name)
    logger.setLevel(_default_level() if level is None else level)

    if logger.handlers:
        return logger

    # stdout carries results, so diagnostics go to stderr
    handler = logging.StreamHandler(sys.stderr)
    formatter = logging.Formatter(
        '%(asctime)s | %(levelname)-8s | %(name)s | %(message)s',
        datefmt='%Y-%m-%d %H:%M:%S'
    )
    handler.setFormatter(formatter)
    logger.addHandler(handler)
    return logger


def set_global_level(level):
    """Re-level every logger created through setup_logger, and those created later."""
    os.environ[LOG_LEVEL_ENV] = logging.getLevelName(level) if isinstance(level, int) else str(level)
    for name, obj in logging.Logger.manager.loggerDict.items():
        if isinstance(obj, logging.Logger) and obj.handlers:
            obj.setLevel(level)
