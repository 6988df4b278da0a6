"""Instrumentation-defect detection.

Two independent checks live here.  The per-snapshot check compares a
session's metric sum against the sample interval: a shortfall means some
time went unaccounted, an overshoot means the same interval was attributed
twice (wait and CPU instrumentation use different clocks and sources, so
both directions occur in practice).  The end-to-end check subtracts the
database-measured wait time and the OS-measured CPU busy time from the
observed response time; whatever remains covers scheduling latency,
timestamp bugs, and other instrumentation gaps.

Audits never fail on bad data; they report it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .model import DatasetSeries, SessionSnapshot

#: Default classification tolerance: 1% of the sample interval.  With
#: millisecond resolution over a 1000 ms interval, sub-1% residuals are
#: indistinguishable from rounding.
DEFAULT_TOLERANCE = 0.01

CLASSIFICATIONS = ("ok", "unaccounted", "double_counted")


@dataclass(frozen=True)
class TimeAccountingRecord:
    """End-to-end response time and its two instrumented components (ms)."""

    response_time: float
    db_wait_time: float
    cpu_busy_time: float

    def __post_init__(self) -> None:
        for label, v in (
            ("response_time", self.response_time),
            ("db_wait_time", self.db_wait_time),
            ("cpu_busy_time", self.cpu_busy_time),
        ):
            if not math.isfinite(v) or v < 0:
                raise ValueError(f"{label} must be finite and nonnegative, got {v!r}")


def unaccounted_time(rec: TimeAccountingRecord) -> float:
    """Response time not covered by measured waits or CPU busy time.

    Negative values indicate double counting between the wait and CPU
    instrumentation sources.
    """
    return rec.response_time - rec.db_wait_time - rec.cpu_busy_time


@dataclass(frozen=True)
class AuditFinding:
    """Sum-rule residual for one (snap, session) and its classification."""

    snap_id: int
    session_id: str
    residual_ms: float
    residual_fraction: float
    classification: str

    def as_dict(self) -> dict:
        return {
            "snap_id": self.snap_id,
            "session_id": self.session_id,
            "residual_ms": round(self.residual_ms, 6),
            "residual_fraction": round(self.residual_fraction, 6),
            "classification": self.classification,
        }


def classify_residual(residual_fraction: float, tolerance: float) -> str:
    if residual_fraction > tolerance:
        return "unaccounted"
    if residual_fraction < -tolerance:
        return "double_counted"
    return "ok"


def audit_snapshot(
    s: SessionSnapshot, tolerance: float = DEFAULT_TOLERANCE
) -> AuditFinding:
    """Compare a snapshot's metric sum against its sample interval."""
    if tolerance < 0:
        raise ValueError("tolerance must be nonnegative")
    residual_ms = s.sample_interval - math.fsum(v for _, v in s.metrics.values)
    residual_fraction = residual_ms / s.sample_interval
    return AuditFinding(
        snap_id=s.snap_id,
        session_id=s.session_id,
        residual_ms=residual_ms,
        residual_fraction=residual_fraction,
        classification=classify_residual(residual_fraction, tolerance),
    )


@dataclass(frozen=True)
class AuditReport:
    """Aggregated sum-rule findings for a whole series.

    ``findings`` lists only the non-ok snapshots; ``totals`` counts every
    classification including ok; ``worst_residual_fraction`` is the signed
    residual fraction of largest magnitude (0 for an empty series).
    """

    tolerance: float
    findings: tuple[AuditFinding, ...]
    totals: dict[str, int]
    worst_residual_fraction: float

    @property
    def has_violations(self) -> bool:
        return bool(self.findings)

    def as_dict(self) -> dict:
        return {
            "tolerance": self.tolerance,
            "totals": dict(self.totals),
            "worst_residual_fraction": round(self.worst_residual_fraction, 6),
            "findings": [f.as_dict() for f in self.findings],
        }


def audit_series(
    d: DatasetSeries, tolerance: float = DEFAULT_TOLERANCE
) -> AuditReport:
    """Audit every (snap, session) snapshot; merge in deterministic order."""
    findings = []
    totals = {c: 0 for c in CLASSIFICATIONS}
    worst = 0.0
    for snap in d.snapshots:
        finding = audit_snapshot(snap, tolerance)
        totals[finding.classification] += 1
        if abs(finding.residual_fraction) > abs(worst):
            worst = finding.residual_fraction
        if finding.classification != "ok":
            findings.append(finding)
    findings.sort(key=lambda f: (f.snap_id, f.session_id))
    return AuditReport(
        tolerance=tolerance,
        findings=tuple(findings),
        totals=totals,
        worst_residual_fraction=worst,
    )
