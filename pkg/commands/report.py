"""
JSON reports with CSV mirrors of their numeric tables.

Every JSON report has the same envelope:

    {"schema_version": ..., "library_version": ..., "config_hash": ..., "status": "ok",
     "report": {...}}
"""

import csv
import json
import logging
from pathlib import Path
from typing import Dict, List, Optional

from pydantic import BaseModel

from helpers import format_level
from models.errors import UsageError
from src.config import LIBRARY_VERSION, SCHEMA_VERSION

logger = logging.getLogger(__name__)


def report_name(prefix: str, manifold=None, L=None, p=None) -> str:
    """e.g. report_name("mz", "circle", 8, 2.0) -> "mz_circle_L8_p2"."""
    parts = [prefix]
    if manifold is not None:
        parts.append(getattr(manifold, "value", manifold))
    if L is not None:
        parts.append(f"L{format_level(L)}")
    if p is not None:
        parts.append(f"p{format_level(p)}")
    return "_".join(parts)


def _payload(result):
    if result is None:
        return None
    if isinstance(result, BaseModel):
        return json.loads(result.model_dump_json())
    return result


def _ensure_dir(out_dir) -> Path:
    out = Path(out_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as e:
        raise UsageError(f"cannot create output directory {out}: {e}") from e
    return out


def write_csv(rows: List[Dict], path) -> Path:
    """Rows of flat dicts; the header is the union of keys in first-seen order."""
    path = Path(path)
    header = []
    for row in rows:
        header.extend(key for key in row if key not in header)
    with path.open("w", newline="") as handle:
        writer = csv.DictWriter(handle, fieldnames=header, lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
    return path


def emit_report(name: str, result, config_hash: str, out_dir, status: str = "ok",
                rows: Optional[List[Dict]] = None, error: Optional[str] = None) -> Path:
    """
    Write <out_dir>/<name>.json and, when rows are given, <out_dir>/<name>.csv.

    Args:
        name: file stem, see report_name
        result: pydantic report, plain dict, or None for failures
        status: "ok" or "failed"

    Raises:
        UsageError: the output directory is not writable
    """
    out = _ensure_dir(out_dir)
    document = {
        "schema_version": SCHEMA_VERSION,
        "library_version": LIBRARY_VERSION,
        "config_hash": config_hash,
        "status": status,
    }
    if error is not None:
        document["error"] = error
    document["report"] = _payload(result)

    path = out / f"{name}.json"
    try:
        path.write_text(json.dumps(document, indent=2) + "\n")
        if rows:
            write_csv(rows, out / f"{name}.csv")
    except OSError as e:
        raise UsageError(f"cannot write report {path}: {e}") from e
    logger.info("💾 Wrote %s", path)
    return path
