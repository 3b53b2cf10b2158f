"""Run ledger — TinyDB with YAML storage recording every CLI computation.

Writes are serialised through a threading Lock (TinyDB is not thread-safe).
A timestamped backup of the YAML file is taken before destructive operations.
"""

import logging
import shutil
import threading
from datetime import datetime, timezone
from pathlib import Path
from typing import Any

import yaml
from tinydb import Query, Storage, TinyDB

from .config import DATA_DIR, MAX_BACKUPS_KEPT, RUNS_DB_PATH

UTC = timezone.utc  # datetime.UTC alias (Python 3.11+)

logger = logging.getLogger(__name__)

_db_lock = threading.Lock()
_db: TinyDB | None = None


# =============================================================================
# YAML STORAGE BACKEND
# =============================================================================
class YAMLStorage(Storage):
    """TinyDB storage backend using YAML format."""

    def __init__(self, path: Path) -> None:
        self.path = Path(path)

    def read(self) -> dict | None:
        if not self.path.exists():
            return None

        try:
            with open(self.path, encoding="utf-8") as f:
                data = yaml.safe_load(f)
                return data if data else None
        except Exception:
            logger.exception("Failed to read run ledger")
            return None

    def write(self, data: dict) -> None:
        """Write atomically: temp file first, then rename over the target."""
        temp_path = self.path.with_suffix(".tmp")
        try:
            with open(temp_path, "w", encoding="utf-8") as f:
                yaml.safe_dump(data, f, default_flow_style=False, allow_unicode=True, sort_keys=False, indent=2)
            temp_path.replace(self.path)
        except Exception:
            logger.exception("Failed to write run ledger")
            temp_path.unlink(missing_ok=True)
            raise

    def close(self) -> None:
        pass


def get_db(path: Path | None = None) -> TinyDB:
    """Open the ledger (once per process unless a different path is given)."""
    global _db  # noqa: PLW0603
    target = Path(path) if path is not None else RUNS_DB_PATH
    if _db is None or Path(_db.storage.path) != target:
        if _db is not None:
            _db.close()
        _db = TinyDB(target, storage=YAMLStorage)
    return _db


# =============================================================================
# BACKUP
# =============================================================================
def backup_ledger(path: Path | None = None) -> Path | None:
    """Copy the ledger to data/backups/, keeping the last MAX_BACKUPS_KEPT copies."""
    source = Path(path) if path is not None else RUNS_DB_PATH
    if not source.exists():
        return None

    backup_dir = DATA_DIR / "backups"
    backup_dir.mkdir(exist_ok=True)
    timestamp = datetime.now(tz=UTC).strftime("%Y%m%d_%H%M%S_%f")
    backup_file = backup_dir / f"runs_backup_{timestamp}.yaml"
    try:
        shutil.copy2(source, backup_file)
        logger.info("Ledger backup created: %s", backup_file.name)
    except OSError:
        logger.exception("Backup failed")
        return None

    backups = sorted(
        (f for f in backup_dir.iterdir() if f.name.startswith("runs_backup_") and f.suffix == ".yaml"),
        key=lambda p: p.name,
        reverse=True,
    )
    for old_backup in backups[MAX_BACKUPS_KEPT:]:
        try:
            old_backup.unlink()
        except OSError:
            logger.warning("Cannot delete backup %s", old_backup.name)
    return backup_file


# =============================================================================
# CRUD
# =============================================================================
def _plain(value: Any) -> Any:
    """Reduce a value to YAML-safe builtins."""
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, list | tuple):
        return [_plain(v) for v in value]
    if isinstance(value, bool | int | float | str) or value is None:
        return value
    return str(value)


def record_run(command: str, params: dict, result: dict, path: Path | None = None) -> int:
    """Append one computation to the ledger. Returns the document id."""
    document = {
        "command": command,
        "timestamp": datetime.now(tz=UTC).isoformat(),
        "params": _plain(params),
        "result": _plain(result),
    }
    with _db_lock:
        doc_id = get_db(path).insert(document)
    logger.debug("Recorded run %d (%s)", doc_id, command)
    return doc_id


def list_runs(command: str | None = None, path: Path | None = None) -> list[dict]:
    """All recorded runs, oldest first, optionally filtered by command."""
    with _db_lock:
        db = get_db(path)
        docs = db.all() if command is None else db.search(Query().command == command)
    return [dict(doc) for doc in docs]


def clear_runs(path: Path | None = None) -> int:
    """Remove every recorded run after taking a backup. Returns the number removed."""
    with _db_lock:
        db = get_db(path)
        count = len(db)
        if count:
            backup_ledger(path)
            db.truncate()
    logger.info("Cleared %d run(s) from ledger", count)
    return count
