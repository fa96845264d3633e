"""Core infrastructure: configuration, errors, logging and reports"""

from quiverdp.core.config import (
    QuiverDPConfig,
    get_config,
    load_config,
    override_config,
    reset_config,
    save_config,
    update_config,
)
from quiverdp.core.errors import (
    CapExceededError,
    CheckFailedError,
    QuiverDPError,
    QuiverParseError,
    QuiverValidationError,
    UnsupportedError,
)
from quiverdp.core.logging import get_logger, setup_logging
from quiverdp.core.report import CheckOutcome, CheckReport, encode_report, write_report

__all__ = [
    "QuiverDPConfig",
    "get_config",
    "load_config",
    "override_config",
    "reset_config",
    "save_config",
    "update_config",
    "CapExceededError",
    "CheckFailedError",
    "QuiverDPError",
    "QuiverParseError",
    "QuiverValidationError",
    "UnsupportedError",
    "get_logger",
    "setup_logging",
    "CheckOutcome",
    "CheckReport",
    "encode_report",
    "write_report",
]
