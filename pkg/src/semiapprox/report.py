"""Deterministic CSV/JSON report emission and parsing.

CSV columns are exactly ``experiment_id,n,t,empirical,bound,ratio,passed``
with a header row; JSON reports hold the record array plus a summary object.
All floats are rendered with 17 significant digits, which round-trips IEEE
doubles exactly, so identical runs produce identical bytes.
"""

from __future__ import annotations

import json
import math

import numpy as np

from .errors import InvalidInputError
from .harness import ErrorRecord, summarize

CSV_HEADER = "experiment_id,n,t,empirical,bound,ratio,passed"


def _fmt_float(x: float, json_mode: bool = False) -> str:
    if math.isnan(x):
        return "NaN" if json_mode else "nan"
    if math.isinf(x):
        sign = "-" if x < 0 else ""
        return f"{sign}Infinity" if json_mode else f"{sign}inf"
    return format(float(x), ".17g")


def _json_dump(value, parts: list[str]) -> None:
    if isinstance(value, dict):
        parts.append("{")
        for i, (k, v) in enumerate(value.items()):
            if i:
                parts.append(",")
            parts.append(json.dumps(str(k)))
            parts.append(":")
            _json_dump(v, parts)
        parts.append("}")
    elif isinstance(value, (list, tuple)):
        parts.append("[")
        for i, v in enumerate(value):
            if i:
                parts.append(",")
            _json_dump(v, parts)
        parts.append("]")
    elif isinstance(value, bool):
        parts.append("true" if value else "false")
    elif isinstance(value, (int, np.integer)):
        parts.append(str(int(value)))
    elif isinstance(value, (float, np.floating)):
        parts.append(_fmt_float(float(value), json_mode=True))
    elif value is None:
        parts.append("null")
    else:
        parts.append(json.dumps(str(value)))


def emit_report(records: list[ErrorRecord], fmt: str, summary: dict | None = None) -> bytes:
    """Serialize records (and an optional precomputed summary) to bytes."""
    if not records:
        raise InvalidInputError("cannot emit a report with no records")
    if fmt == "csv":
        lines = [CSV_HEADER]
        for r in records:
            lines.append(
                ",".join(
                    (
                        r.experiment_id,
                        str(r.n),
                        _fmt_float(r.t),
                        _fmt_float(r.empirical),
                        _fmt_float(r.bound),
                        _fmt_float(r.ratio),
                        "true" if r.passed else "false",
                    )
                )
            )
        return ("\n".join(lines) + "\n").encode()
    if fmt == "json":
        payload = {
            "records": [r.to_json() for r in records],
            "summary": summary if summary is not None else summarize(records),
        }
        parts: list[str] = []
        _json_dump(payload, parts)
        parts.append("\n")
        return "".join(parts).encode()
    raise InvalidInputError(f"unknown report format {fmt!r}")


def parse_report(data: bytes, fmt: str) -> tuple[list[ErrorRecord], dict | None]:
    """Inverse of emit_report; returns (records, summary-or-None)."""
    text = data.decode()
    if fmt == "csv":
        lines = [ln for ln in text.splitlines() if ln]
        if not lines or lines[0] != CSV_HEADER:
            raise InvalidInputError("missing or malformed CSV header")
        records = []
        for ln in lines[1:]:
            cells = ln.split(",")
            if len(cells) != 7:
                raise InvalidInputError(f"malformed CSV row: {ln!r}")
            records.append(
                ErrorRecord(
                    experiment_id=cells[0],
                    n=int(cells[1]),
                    t=float(cells[2]),
                    empirical=float(cells[3]),
                    bound=float(cells[4]),
                    ratio=float(cells[5]),
                    passed=cells[6] == "true",
                )
            )
        return records, None
    if fmt == "json":
        payload = json.loads(text)
        records = [ErrorRecord.from_json(obj) for obj in payload["records"]]
        return records, payload.get("summary")
    raise InvalidInputError(f"unknown report format {fmt!r}")


def merge_reports(chunks: list[tuple[list[ErrorRecord], dict | None]]) -> tuple[list[ErrorRecord], dict]:
    """Concatenate record lists and recompute the summary."""
    records: list[ErrorRecord] = []
    for recs, _ in chunks:
        records.extend(recs)
    return records, summarize(records, {"merged_from": len(chunks)})


def load_matrix_json(obj: dict) -> np.ndarray:
    """Matrix wire format: {dim: int, re: [[...]], im: [[...]]}, row-major."""
    try:
        dim = int(obj["dim"])
        re = np.asarray(obj["re"], dtype=float)
        im = np.asarray(obj["im"], dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidInputError(f"malformed matrix object: {exc}") from exc
    if re.shape != (dim, dim) or im.shape != (dim, dim):
        raise InvalidInputError(
            f"matrix shape mismatch: dim={dim}, re {re.shape}, im {im.shape}"
        )
    return re + 1j * im


def dump_matrix_json(m: np.ndarray) -> dict:
    m = np.asarray(m, dtype=complex)
    return {
        "dim": m.shape[0],
        "re": m.real.tolist(),
        "im": m.imag.tolist(),
    }
