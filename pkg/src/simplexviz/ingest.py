"""Dataset file reading and writing.

Two on-disk forms are supported.  The long CSV form mirrors how sampled
session metrics usually export: one row per (snap, session, metric) under
the header ``snap_id,session_id,metric,value_ms``.  The JSON form is a
single document carrying ``sample_interval_ms``, the ``metrics`` list, and
a ``snapshots`` array grouped by snap id.

Writes are deterministic: stable key ordering, fixed 3-decimal formatting,
UTF-8, LF line endings.  Reading a written file and writing it again
produces byte-identical output.

The CSV form carries no interval column; reading it assumes the default
1000 ms sample interval.  Use JSON for datasets sampled at other rates.
"""

from __future__ import annotations

import csv
import json
import math
from pathlib import Path

from .errors import InconsistentMetrics, ParseError, SchemaError
from .model import (
    DatasetSeries,
    MetricVector,
    SessionSnapshot,
    canonical_metric_name,
)

CSV_HEADER = ["snap_id", "session_id", "metric", "value_ms"]


def _fmt_ms(value: float) -> str:
    return f"{value:.3f}"


def detect_format(path: str | Path) -> str:
    suffix = Path(path).suffix.lower()
    if suffix == ".csv":
        return "csv"
    if suffix == ".json":
        return "json"
    raise ParseError(f"cannot detect format from extension {suffix!r} of {path}")


def read_dataset(path: str | Path, format: str = "auto") -> DatasetSeries:
    """Read and validate a dataset file; format auto-detects by extension."""
    path = Path(path)
    if format == "auto":
        format = detect_format(path)
    if format == "csv":
        return _read_csv(path)
    if format == "json":
        return _read_json(path)
    raise ParseError(f"unknown format {format!r}; expected csv or json")


def write_dataset(d: DatasetSeries, path: str | Path, format: str = "auto") -> None:
    """Write a dataset with deterministic bytes for a given series."""
    path = Path(path)
    if format == "auto":
        format = detect_format(path)
    if format == "csv":
        data = _to_csv_bytes(d)
    elif format == "json":
        data = _to_json_bytes(d)
    else:
        raise ParseError(f"unknown format {format!r}; expected csv or json")
    path.write_bytes(data)


def dataset_to_bytes(d: DatasetSeries, format: str) -> bytes:
    """Serialized file content without touching the filesystem."""
    if format == "csv":
        return _to_csv_bytes(d)
    if format == "json":
        return _to_json_bytes(d)
    raise ParseError(f"unknown format {format!r}; expected csv or json")


# CSV

def _to_csv_bytes(d: DatasetSeries) -> bytes:
    lines = [",".join(CSV_HEADER)]
    for snap in d.snapshots:
        for metric, value in snap.metrics.values:
            lines.append(
                f"{snap.snap_id},{snap.session_id},{metric},{_fmt_ms(value)}"
            )
    return ("\n".join(lines) + "\n").encode("utf-8")


def _read_csv(path: Path) -> DatasetSeries:
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    reader = csv.reader(text.splitlines())
    try:
        header = next(reader)
    except StopIteration:
        raise SchemaError(f"{path}: empty file, expected header {CSV_HEADER}") from None
    if [h.strip() for h in header] != CSV_HEADER:
        raise SchemaError(f"{path}: header {header} does not match {CSV_HEADER}")

    # (snap_id, session_id) -> ordered metric/value pairs, in file order
    groups: dict[tuple[int, str], list[tuple[str, float]]] = {}
    for lineno, row in enumerate(reader, start=2):
        if not row:
            continue
        if len(row) != 4:
            raise ParseError(f"{path}:{lineno}: expected 4 fields, got {len(row)}")
        raw_snap, session_id, raw_metric, raw_value = (f.strip() for f in row)
        try:
            snap_id = int(raw_snap)
        except ValueError:
            raise ParseError(f"{path}:{lineno}: snap_id {raw_snap!r} is not an integer") from None
        try:
            value = float(raw_value)
        except ValueError:
            raise ParseError(f"{path}:{lineno}: value_ms {raw_value!r} is not a number") from None
        if not math.isfinite(value) or value < 0:
            raise ParseError(f"{path}:{lineno}: value_ms {raw_value!r} must be finite and nonnegative")
        metric = canonical_metric_name(raw_metric)
        if not session_id:
            raise ParseError(f"{path}:{lineno}: empty session_id")
        pairs = groups.setdefault((snap_id, session_id), [])
        if any(m == metric for m, _ in pairs):
            raise ParseError(f"{path}:{lineno}: duplicate metric {metric!r} for snap {snap_id}, session {session_id!r}")
        pairs.append((metric, value))

    if not groups:
        return DatasetSeries(metric_names=(), sample_interval=1000.0, snapshots=())

    first_key = next(iter(groups))
    metric_names = tuple(m for m, _ in groups[first_key])
    appearance = {key: i for i, key in enumerate(groups)}
    snapshots = []
    # Stable order: snap ids sorted, sessions in file-appearance order.
    for snap_id, session_id in sorted(groups, key=lambda k: (k[0], appearance[k])):
        pairs = groups[(snap_id, session_id)]
        by_name = dict(pairs)
        if set(by_name) != set(metric_names):
            raise InconsistentMetrics(
                f"{path}: snap {snap_id}, session {session_id!r} carries metrics "
                f"{tuple(by_name)}, dataset header list is {metric_names}"
            )
        snapshots.append(
            SessionSnapshot(
                snap_id=snap_id,
                session_id=session_id,
                metrics=MetricVector(tuple((m, by_name[m]) for m in metric_names)),
            )
        )
    return DatasetSeries(
        metric_names=metric_names,
        sample_interval=1000.0,
        snapshots=tuple(snapshots),
    )


# JSON

def _to_json_bytes(d: DatasetSeries) -> bytes:
    out: list[str] = ["{"]
    if d.label is not None:
        out.append(f'  "label": {json.dumps(d.label)},')
    out.append(f'  "sample_interval_ms": {_fmt_ms(d.sample_interval)},')
    out.append(f'  "metrics": {json.dumps(list(d.metric_names))},')
    out.append('  "snapshots": [')
    snap_blocks = []
    for snap_id in d.snap_ids:
        sessions = []
        for snap in d.sessions_at(snap_id):
            values = ", ".join(
                f"{json.dumps(m)}: {_fmt_ms(v)}" for m, v in snap.metrics.values
            )
            sessions.append(
                f'        {{"session_id": {json.dumps(snap.session_id)}, '
                f'"values": {{{values}}}}}'
            )
        block = (
            f'    {{"snap_id": {snap_id}, "sessions": [\n'
            + ",\n".join(sessions)
            + "\n    ]}"
        )
        snap_blocks.append(block)
    out.append(",\n".join(snap_blocks))
    out.append("  ]")
    out.append("}")
    return ("\n".join(out) + "\n").encode("utf-8")


def _read_json(path: Path) -> DatasetSeries:
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON at line {exc.lineno}: {exc.msg}") from exc
    if not isinstance(doc, dict):
        raise SchemaError(f"{path}: top level must be an object")
    for key in ("sample_interval_ms", "metrics", "snapshots"):
        if key not in doc:
            raise SchemaError(f"{path}: missing required key {key!r}")
    interval = doc["sample_interval_ms"]
    if not isinstance(interval, (int, float)) or interval <= 0:
        raise SchemaError(f"{path}: sample_interval_ms must be a positive number")
    metric_names = tuple(canonical_metric_name(str(m)) for m in doc["metrics"])
    label = doc.get("label")

    snapshots = []
    for snap_entry in doc["snapshots"]:
        if "snap_id" not in snap_entry or "sessions" not in snap_entry:
            raise SchemaError(f"{path}: snapshot entries need snap_id and sessions")
        snap_id = snap_entry["snap_id"]
        if not isinstance(snap_id, int):
            raise ParseError(f"{path}: snap_id {snap_id!r} is not an integer")
        for sess in snap_entry["sessions"]:
            if "session_id" not in sess or "values" not in sess:
                raise SchemaError(f"{path}: session entries need session_id and values")
            raw_values = sess["values"]
            canon = {canonical_metric_name(str(k)): v for k, v in raw_values.items()}
            if set(canon) != set(metric_names):
                raise InconsistentMetrics(
                    f"{path}: snap {snap_id}, session {sess['session_id']!r} "
                    f"carries metrics {sorted(canon)}, expected {sorted(metric_names)}"
                )
            for m in metric_names:
                v = canon[m]
                if not isinstance(v, (int, float)) or not math.isfinite(v) or v < 0:
                    raise ParseError(
                        f"{path}: snap {snap_id}, session {sess['session_id']!r}, "
                        f"metric {m!r}: value {v!r} must be finite and nonnegative"
                    )
            snapshots.append(
                SessionSnapshot(
                    snap_id=snap_id,
                    session_id=str(sess["session_id"]),
                    metrics=MetricVector(tuple((m, float(canon[m])) for m in metric_names)),
                    sample_interval=float(interval),
                )
            )
    try:
        return DatasetSeries(
            metric_names=metric_names,
            sample_interval=float(interval),
            snapshots=tuple(snapshots),
            label=label,
        )
    except ValueError as exc:
        raise SchemaError(f"{path}: {exc}") from exc
