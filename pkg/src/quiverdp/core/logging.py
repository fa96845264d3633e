"""Logging configuration for quiverdp"""

import logging
import sys

import structlog


def setup_logging(debug: bool = False) -> None:
    """Configure structlog for the application

    Log lines go to stderr so stdout artifacts stay byte-identical between runs.
    """
    log_level = logging.DEBUG if debug else logging.INFO

    structlog.configure(
        processors=[
            structlog.contextvars.merge_contextvars,
            structlog.processors.add_log_level,
            structlog.processors.TimeStamper(fmt="iso"),
            structlog.dev.ConsoleRenderer(colors=sys.stderr.isatty()),
        ],
        wrapper_class=structlog.make_filtering_bound_logger(log_level),
        context_class=dict,
        # resolve sys.stderr per call; it is swapped under test capture
        logger_factory=lambda *_: structlog.PrintLogger(file=sys.stderr),
        cache_logger_on_first_use=False,
    )


def get_logger(name: str | None = None) -> structlog.BoundLogger:
    """Get a logger instance (lazy: picks up setup_logging done after import)"""
    if name:
        return structlog.get_logger(component=name)
    return structlog.get_logger()
