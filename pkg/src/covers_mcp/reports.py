"""
TinyDB persistence of experiment and benchmark reports.

One JSON file under COVERS_MCP_DATA_PATH, one table per report kind.
"""

import os
import uuid
from datetime import datetime
from typing import Any, Dict, List

from tinydb import TinyDB
from tinydb.middlewares import CachingMiddleware
from tinydb.storages import JSONStorage

from . import config, diagnostics
from .errors import CoverInputError

REPORT_KINDS = ("adversary", "bench", "covers", "fibonacci")


def get_reports_tinydb() -> TinyDB:
    """Get TinyDB instance for reports."""
    db_path = os.path.join(config.data_path(), config.REPORTS_FILENAME)
    os.makedirs(os.path.dirname(db_path), exist_ok=True)
    return TinyDB(db_path, storage=CachingMiddleware(JSONStorage))


def record_report(kind: str, payload: Dict[str, Any]) -> str:
    """Store one report and return its id."""
    if kind not in REPORT_KINDS:
        raise CoverInputError(f"unknown report kind {kind!r}")
    report_id = str(uuid.uuid4())
    db = get_reports_tinydb()
    try:
        db.table(kind).insert(
            {"id": report_id, "created_at": datetime.now().isoformat(), "payload": payload}
        )
    finally:
        db.close()
    diagnostics.log("reports", f"stored {kind} report {report_id}")
    return report_id


def list_reports(kind: str, limit: int = 20) -> List[Dict[str, Any]]:
    """Most recent reports of one kind, newest first."""
    if kind not in REPORT_KINDS:
        raise CoverInputError(f"unknown report kind {kind!r}")
    db = get_reports_tinydb()
    try:
        results = db.table(kind).all()
    finally:
        db.close()
    results = [dict(r) for r in results]
    results.sort(key=lambda r: r.get("created_at", ""), reverse=True)
    return results[:limit]
