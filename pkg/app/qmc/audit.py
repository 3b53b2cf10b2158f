"""Run audit — Track every computation for reproducibility.

Each command run is logged with timestamp, command, parameters and outcome.
"""

import logging
from datetime import datetime, timezone
from logging.handlers import RotatingFileHandler

from .config import LOG_DIR

UTC = timezone.utc  # datetime.UTC alias (Python 3.11+)

# Create a separate logger for run events
audit_logger = logging.getLogger("audit")
audit_logger.setLevel(logging.INFO)
audit_logger.propagate = False  # Don't propagate to root logger

# Audit log file path
AUDIT_LOG_PATH = LOG_DIR / "runs.log"
AUDIT_LOG_PATH.parent.mkdir(exist_ok=True)

# Rotating file handler for the run log (50 MB, keep 20 backups)
audit_handler = RotatingFileHandler(
    AUDIT_LOG_PATH,
    maxBytes=50 * 1024 * 1024,
    backupCount=20,
    encoding="utf-8",
)

# Audit log format: timestamp | command | params | outcome
audit_formatter = logging.Formatter(
    "%(asctime)s | %(message)s",
    datefmt="%Y-%m-%d %H:%M:%S",
)
audit_handler.setFormatter(audit_formatter)
audit_logger.addHandler(audit_handler)


def log_run(command: str, params: dict, runtime_ms: float, outcome: str = "ok") -> None:
    """Log a finished computation to the audit log.

    Args:
        command: Subcommand name (e.g., "generate", "copula-bound")
        params: Parameters the command ran with
        runtime_ms: Wall time in milliseconds
        outcome: Short outcome tag
    """
    timestamp = datetime.now(tz=UTC).isoformat()
    rendered = " ".join(f"{key}={value}" for key, value in sorted(params.items()))
    audit_logger.info(
        "command=%s | params=%s | runtime_ms=%.1f | outcome=%s | timestamp=%s",
        command,
        rendered[:400],
        runtime_ms,
        outcome,
        timestamp,
    )


def log_verification(check: str, passed: bool, details: str = "") -> None:
    """Log the result of one identity check run by `verify`."""
    log_run("verify", {"check": check, "details": details[:200]}, 0.0, "pass" if passed else "FAIL")


def log_failure(command: str, error: BaseException) -> None:
    """Log a failed computation."""
    log_run(command, {"error": type(error).__name__, "message": str(error)[:200]}, 0.0, "error")
