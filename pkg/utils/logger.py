"""
Logging system for the growth engine.

Console output goes to stderr so that reports written to stdout stay
byte-stable. Optional sinks: a rotating text file and a JSON-lines file.
"""
import sys
import time
from functools import wraps
from pathlib import Path
from typing import Optional

from loguru import logger

from config.system_config import SystemConfig

_handler_ids = []
_configured_with = None


def setup_logging(log_level: str = SystemConfig.LOG_LEVEL,
                  log_file: Optional[str] = None,
                  structured_file: Optional[str] = None,
                  log_format: str = SystemConfig.LOG_FORMAT):
    """Install the console sink plus optional file sinks. Repeated calls with
    the same arguments are no-ops; different arguments replace the sinks."""
    global _configured_with
    settings = (log_level.upper(), log_file, structured_file, log_format)
    if settings == _configured_with:
        return logger

    for handler_id in _handler_ids:
        logger.remove(handler_id)
    _handler_ids.clear()
    if _configured_with is None:
        # drop loguru's default stderr handler
        logger.remove()

    logger.configure(extra={"component": "gkdim"})
    _handler_ids.append(logger.add(sys.stderr, level=settings[0], format=log_format))

    if log_file:
        Path(log_file).parent.mkdir(parents=True, exist_ok=True)
        _handler_ids.append(logger.add(
            log_file,
            level=settings[0],
            format=log_format,
            rotation=SystemConfig.LOG_ROTATION,
            retention=SystemConfig.LOG_RETENTION,
            encoding="utf-8",
        ))

    if structured_file:
        Path(structured_file).parent.mkdir(parents=True, exist_ok=True)
        _handler_ids.append(logger.add(
            structured_file,
            level="INFO",
            serialize=True,
            rotation=SystemConfig.LOG_ROTATION,
            retention=SystemConfig.LOG_RETENTION,
            encoding="utf-8",
        ))

    _configured_with = settings
    logger.bind(component="logger").debug(f"Logging initialized at {settings[0]}")
    return logger


def get_logger(component: str = "gkdim"):
    """Logger bound to a component name (shown in the format's component field)."""
    return logger.bind(component=component)


def log_metrics(event: str, component: str = "metrics", **data):
    """Emit one INFO record carrying `data` as structured extras."""
    get_logger(component).bind(event=event, **data).info(
        f"{event} | " + " ".join(f"{key}={value}" for key, value in sorted(data.items()))
    )


def log_function_call(component: str = "gkdim"):
    """Decorator logging entry, exit and duration of the wrapped call at DEBUG."""
    def decorator(func):
        @wraps(func)
        def wrapper(*args, **kwargs):
            log = get_logger(component)
            start = time.perf_counter()
            log.debug(f"Starting {func.__name__}")
            try:
                result = func(*args, **kwargs)
            except Exception as e:
                duration = (time.perf_counter() - start) * 1000
                log.error(f"Failed {func.__name__} after {duration:.2f}ms: {e}")
                raise
            duration = (time.perf_counter() - start) * 1000
            log.debug(f"Completed {func.__name__} in {duration:.2f}ms")
            return result

        return wrapper
    return decorator


class LogContext:
    """Context manager timing an operation; `elapsed_seconds` is set on exit."""

    def __init__(self, operation: str, component: str = "gkdim"):
        self.operation = operation
        self.logger = get_logger(component)
        self.start_time = None
        self.elapsed_seconds = None

    def __enter__(self):
        self.start_time = time.perf_counter()
        self.logger.debug(f"Starting {self.operation}")
        return self

    def __exit__(self, exc_type, exc_val, exc_tb):
        self.elapsed_seconds = time.perf_counter() - self.start_time
        duration = self.elapsed_seconds * 1000

        if exc_type is None:
            self.logger.debug(f"Completed {self.operation} in {duration:.2f}ms")
        else:
            self.logger.error(f"Failed {self.operation} after {duration:.2f}ms: {exc_val}")
        return False
