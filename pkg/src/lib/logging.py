"""Logging setup for the ncergo CLI.

Services only ever call ``structlog.get_logger("ncergo.<area>")``; this module
routes those events through stdlib handlers configured from
``config/logging.yaml`` (JSON lines via python-json-logger).
"""

import logging
import logging.config
import os
from pathlib import Path
from typing import Optional

import structlog
import yaml

DEFAULT_CONFIG = Path(__file__).resolve().parents[2] / "config" / "logging.yaml"


def _ensure_file_dirs(config: dict) -> None:
    for handler in config.get("handlers", {}).values():
        filename = handler.get("filename")
        if filename:
            Path(filename).parent.mkdir(parents=True, exist_ok=True)


def setup_logging(level: str = "INFO", config_path: Optional[str] = None) -> None:
    """Configure stdlib logging and structlog.

    The YAML path comes from ``config_path``, then ``NCERGO_LOG_CONFIG``, then
    the bundled default. A missing file falls back to a plain stderr handler.
    """
    path = Path(config_path or os.getenv("NCERGO_LOG_CONFIG") or DEFAULT_CONFIG)
    if path.exists():
        with open(path, "r", encoding="utf-8") as f:
            config = yaml.safe_load(f)
        _ensure_file_dirs(config)
        logging.config.dictConfig(config)
    else:
        logging.basicConfig(level=level, format="%(asctime)s %(name)s %(levelname)s %(message)s")

    for handler in logging.getLogger("ncergo").handlers:
        if isinstance(handler, logging.StreamHandler) and not isinstance(handler, logging.FileHandler):
            handler.setLevel(level)

    structlog.configure(
        processors=[
            structlog.stdlib.filter_by_level,
            structlog.stdlib.add_logger_name,
            structlog.stdlib.add_log_level,
            structlog.processors.TimeStamper(fmt="iso"),
            structlog.processors.StackInfoRenderer(),
            structlog.processors.format_exc_info,
            # event dict becomes LogRecord extras; JsonFormatter writes them as top-level keys
            structlog.stdlib.render_to_log_kwargs,
        ],
        context_class=dict,
        logger_factory=structlog.stdlib.LoggerFactory(),
        wrapper_class=structlog.stdlib.BoundLogger,
        cache_logger_on_first_use=True,
    )


def get_logger(name: str) -> structlog.stdlib.BoundLogger:
    return structlog.get_logger(name)
