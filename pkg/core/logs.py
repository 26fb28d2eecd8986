from __future__ import annotations

import logging
import sys
from typing import Optional

from core.config import LOG_FILE, LOG_LEVEL

# ============================================
# LOGGING CONFIGURATION
# ============================================

_CONFIGURED = False


def setup_logging(level: Optional[str] = None, log_file: Optional[str] = LOG_FILE) -> logging.Logger:
    """Configure the root handlers once and return the 'holokit' logger.

    stdout carries JSON reports, so the stream handler writes to stderr.
    """
    global _CONFIGURED
    lvl = getattr(logging, (level or LOG_LEVEL).upper(), logging.INFO)
    if not _CONFIGURED:
        handlers: list = [logging.StreamHandler(sys.stderr)]
        if log_file:
            handlers.insert(0, logging.FileHandler(log_file, encoding="utf-8"))
        logging.basicConfig(
            level=lvl,
            format="%(asctime)s - [%(levelname)s] - %(message)s",
            handlers=handlers,
        )
        _CONFIGURED = True
    logger = logging.getLogger("holokit")
    logger.setLevel(lvl)
    return logger


def get_logger(name: str) -> logging.Logger:
    return logging.getLogger(f"holokit.{name}")
