"""Session metric data model.

Holds the wait-class taxonomy, per-session metric vectors sampled at
snapshot instants, dataset series, composite aggregation specs, and the
assignment of metrics to simplex vertices.  Values are immutable; all
operations are pure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import MissingMetric, UnknownSpec

# Wait-class taxonomy of the instrumented database release: class name to
# number of distinct wait events it groups.
_TAXONOMY_ENTRIES: tuple[tuple[str, int], ...] = (
    ("Concurrency", 26),
    ("System I/O", 23),
    ("User I/O", 22),
    ("Administrative", 51),
    ("Other", 630),
    ("Configuration", 21),
    ("Scheduler", 3),
    ("Cluster", 47),
    ("Application", 15),
    ("Queueing", 4),
    ("Idle", 80),
    ("Network", 35),
    ("Commit", 2),
)


def canonical_metric_name(name: str) -> str:
    """Canonical metric spelling: upper-case, dots become underscores."""
    return name.strip().upper().replace(".", "_")


@dataclass(frozen=True)
class WaitClassTaxonomy:
    """Mapping of wait-class name to the number of wait events it covers."""

    entries: tuple[tuple[str, int], ...]

    def count(self, wait_class: str) -> int:
        for name, count in self.entries:
            if name == wait_class:
                return count
        raise KeyError(wait_class)

    def total_events(self) -> int:
        return sum(count for _, count in self.entries)

    def __len__(self) -> int:
        return len(self.entries)


def builtin_taxonomy() -> WaitClassTaxonomy:
    """The built-in 13-class taxonomy covering 959 wait events."""
    return WaitClassTaxonomy(_TAXONOMY_ENTRIES)


@dataclass(frozen=True)
class MetricVector:
    """Ordered metric name -> duration in milliseconds, all nonnegative."""

    values: tuple[tuple[str, float], ...]

    def __post_init__(self) -> None:
        seen = set()
        for name, value in self.values:
            if name in seen:
                raise ValueError(f"duplicate metric {name!r}")
            seen.add(name)
            if not math.isfinite(value):
                raise ValueError(f"metric {name!r} has non-finite value {value!r}")
            if value < 0:
                raise ValueError(f"metric {name!r} has negative value {value!r}")

    @classmethod
    def from_dict(cls, mapping: dict[str, float]) -> "MetricVector":
        return cls(tuple((k, float(v)) for k, v in mapping.items()))

    def as_dict(self) -> dict[str, float]:
        return dict(self.values)

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(name for name, _ in self.values)

    def get(self, name: str) -> float:
        for n, v in self.values:
            if n == name:
                return v
        raise MissingMetric(f"metric {name!r} not present")

    def total(self) -> float:
        return math.fsum(v for _, v in self.values)


@dataclass(frozen=True)
class SessionSnapshot:
    """One session's metric vector at one sampling instant."""

    snap_id: int
    session_id: str
    metrics: MetricVector
    sample_interval: float = 1000.0

    def __post_init__(self) -> None:
        if self.sample_interval <= 0:
            raise ValueError("sample_interval must be positive")


@dataclass(frozen=True)
class DatasetSeries:
    """Snapshots for many sessions over an ordered run of snap ids.

    Every snapshot carries the same metric-name list and the series'
    sample interval; snap ids are strictly increasing.
    """

    metric_names: tuple[str, ...]
    sample_interval: float
    snapshots: tuple[SessionSnapshot, ...]
    label: str | None = None

    def __post_init__(self) -> None:
        if self.sample_interval <= 0:
            raise ValueError("sample_interval must be positive")
        last = None
        for snap in self.snapshots:
            if snap.metrics.names != self.metric_names:
                raise ValueError(
                    f"snapshot ({snap.snap_id}, {snap.session_id!r}) metrics "
                    f"{snap.metrics.names} deviate from {self.metric_names}"
                )
            if snap.sample_interval != self.sample_interval:
                raise ValueError(
                    f"snapshot ({snap.snap_id}, {snap.session_id!r}) interval "
                    f"{snap.sample_interval} deviates from {self.sample_interval}"
                )
            if last is not None and snap.snap_id < last:
                raise ValueError("snap ids must be non-decreasing in storage order")
            last = snap.snap_id

    @property
    def snap_ids(self) -> tuple[int, ...]:
        seen: list[int] = []
        for snap in self.snapshots:
            if not seen or snap.snap_id != seen[-1]:
                seen.append(snap.snap_id)
        return tuple(seen)

    @property
    def session_ids(self) -> tuple[str, ...]:
        seen: list[str] = []
        for snap in self.snapshots:
            if snap.session_id not in seen:
                seen.append(snap.session_id)
        return tuple(seen)

    def sessions_at(self, snap_id: int) -> tuple[SessionSnapshot, ...]:
        return tuple(s for s in self.snapshots if s.snap_id == snap_id)


@dataclass(frozen=True)
class AggregationSpec:
    """Named composites, each summing a list of source metrics."""

    name: str
    composites: tuple[tuple[str, tuple[str, ...]], ...]

    def __post_init__(self) -> None:
        used: set[str] = set()
        for comp, sources in self.composites:
            if not sources:
                raise ValueError(f"composite {comp!r} has no sources")
            for src in sources:
                if src in used:
                    raise ValueError(f"source {src!r} feeds more than one composite")
                used.add(src)

    @property
    def composite_names(self) -> tuple[str, ...]:
        return tuple(name for name, _ in self.composites)

    @property
    def source_names(self) -> tuple[str, ...]:
        return tuple(src for _, sources in self.composites for src in sources)

    @property
    def n(self) -> int:
        return len(self.composites)


_BUILTIN_SPECS: dict[str, AggregationSpec] = {
    "owi3": AggregationSpec(
        name="owi3",
        composites=(
            (
                "WAIT_PCT",
                (
                    "APPLICATION",
                    "COMMIT",
                    "CONCURRENCY",
                    "CONFIGURATION",
                    "NETWORK",
                    "OTHER",
                ),
            ),
            ("IO_PCT", ("USERIO", "SYSTEMIO")),
            ("DB_CPU_PCT", ("DB_CPU",)),
        ),
    ),
    "session3": AggregationSpec(
        name="session3",
        composites=(
            ("CPU_USAGE", ("CPU_USAGE",)),
            ("IDLE", ("IDLE",)),
            ("DB_WAIT", ("DB_WAIT",)),
        ),
    ),
    "session4": AggregationSpec(
        name="session4",
        composites=(
            ("CPU_USAGE", ("CPU_USAGE",)),
            ("DB_CONTENTION", ("DB_CONTENTION",)),
            ("DB_WAIT", ("DB_WAIT",)),
            ("IDLE", ("IDLE",)),
        ),
    ),
}


def builtin_spec(name: str) -> AggregationSpec:
    """Look up a built-in aggregation spec: owi3, session3, or session4."""
    try:
        return _BUILTIN_SPECS[name]
    except KeyError:
        raise UnknownSpec(
            f"unknown aggregation spec {name!r}; "
            f"built-ins: {', '.join(sorted(_BUILTIN_SPECS))}"
        ) from None


def builtin_spec_names() -> tuple[str, ...]:
    return tuple(_BUILTIN_SPECS)


def aggregate(m: MetricVector, spec: AggregationSpec) -> MetricVector:
    """Sum source metrics into composites, ordered by the spec.

    Input metrics the spec does not reference are dropped.  Summation order
    is fixed (spec order, then source order) so totals are reproducible.
    """
    available = m.as_dict()
    out = []
    for comp, sources in spec.composites:
        total = 0.0
        for src in sources:
            if src not in available:
                raise MissingMetric(f"source metric {src!r} required by {comp!r}")
            total += available[src]
        out.append((comp, total))
    return MetricVector(tuple(out))


@dataclass(frozen=True)
class AxisAssignment:
    """Vertex index (1..N) -> metric or composite name.

    Construction checks that vertex indices form exactly 1..N; duplicate
    names are left for validate_view to report.
    """

    entries: tuple[tuple[int, str], ...]

    def __post_init__(self) -> None:
        indices = [idx for idx, _ in self.entries]
        if sorted(indices) != list(range(1, len(self.entries) + 1)):
            raise ValueError(f"vertex indices {indices} must be exactly 1..N")

    @classmethod
    def from_names(cls, names: list[str] | tuple[str, ...]) -> "AxisAssignment":
        return cls(tuple((i + 1, name) for i, name in enumerate(names)))

    @property
    def names(self) -> tuple[str, ...]:
        """Axis names in vertex order 1..N."""
        return tuple(name for _, name in sorted(self.entries))

    @property
    def n(self) -> int:
        return len(self.entries)


@dataclass(frozen=True)
class ViewViolation:
    """One reason a (dataset, spec, axes) combination cannot render."""

    code: str
    detail: str

    def __str__(self) -> str:
        return f"{self.code}: {self.detail}"


def composite_values(m: MetricVector, spec: AggregationSpec) -> MetricVector:
    """Composite values for a vector that may already be aggregated.

    Each composite takes its value from a same-named input metric when one
    exists (pre-aggregated data), otherwise from the sum of its sources.
    """
    available = m.as_dict()
    out = []
    for comp, sources in spec.composites:
        if comp in available:
            out.append((comp, available[comp]))
            continue
        total = 0.0
        for src in sources:
            if src not in available:
                raise MissingMetric(f"source metric {src!r} required by {comp!r}")
            total += available[src]
        out.append((comp, total))
    return MetricVector(tuple(out))


def validate_view(
    dataset: DatasetSeries,
    spec: AggregationSpec,
    axes: AxisAssignment,
    extra_axes: tuple[str, ...] = (),
) -> list[ViewViolation]:
    """Collect every reason the view cannot be drawn; empty means ok.

    ``extra_axes`` names synthetic axes the normalization mode introduces
    beyond the spec's composites (the slack axis).
    """
    violations: list[ViewViolation] = []
    for comp, sources in spec.composites:
        if comp in dataset.metric_names:
            continue
        for src in sources:
            if src not in dataset.metric_names:
                violations.append(ViewViolation("MissingMetric", src))
    axis_names = axes.names
    if len(set(axis_names)) != len(axis_names):
        dupes = sorted({n for n in axis_names if axis_names.count(n) > 1})
        violations.append(ViewViolation("NonBijectiveAxes", ", ".join(dupes)))
    expected = set(spec.composite_names) | set(extra_axes)
    got = set(axis_names)
    for name in sorted(expected - got):
        violations.append(ViewViolation("AxisMissing", name))
    for name in sorted(got - expected):
        violations.append(ViewViolation("AxisUnknown", name))
    return violations
