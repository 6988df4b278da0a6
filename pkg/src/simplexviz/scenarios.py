"""Synthetic session workload generation.

Scenarios produce datasets with known structure so the rendering and audit
paths can be exercised without a live database.  Output is fully
determined by the scenario spec and its seed; the random source is numpy's
PCG64 generator, with independent child streams (via SeedSequence spawning)
for metric values, defect placement, and event decomposition, so requesting
the event breakdown never changes the generated series.

Built-in scenarios:

``fig6``
    Sessions over CPU_USAGE / IDLE / DB_WAIT with fixed archetypes:
    4 fully idle sessions, 2 exactly half idle, 2 waiting on the database
    for the whole interval, and the remainder clustered near 10% CPU with
    seeded noise of +/-3 percentage points.

``drift``
    A single session over the three composite wait classes, with the IO
    share holding near 10% while CPU use declines linearly and wait time
    rises to meet it, crossing exactly once.

``uniform``
    Sessions drawn uniformly from the simplex (Dirichlet weights, rounded
    to integer milliseconds that sum exactly to the interval).

Every snapshot sums exactly to the 1000 ms sample interval unless the spec
injects accounting defects, which add or remove a fixed 100 ms.

Internally, each generated wait-class value is assembled from wait
components and service components (system-call overhead rides along with
the wait it serves); CPU-class metrics are pure service time with no wait
components.  ``generate_with_events`` exposes that decomposition.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from .errors import InvalidScenario
from .model import DatasetSeries, MetricVector, SessionSnapshot

SCENARIO_NAMES = ("fig6", "drift", "uniform")

DEFECT_MAGNITUDE_MS = 100.0

_DEFAULTS = {
    "fig6": {"sessions": 60, "snaps": 10},
    "drift": {"sessions": 1, "snaps": 100},
    "uniform": {"sessions": 12, "snaps": 20},
}

_FIG6_METRICS = ("CPU_USAGE", "IDLE", "DB_WAIT")
_DRIFT_METRICS = ("WAIT_PCT", "IO_PCT", "DB_CPU_PCT")


@dataclass(frozen=True)
class ScenarioSpec:
    """Everything that determines a generated dataset."""

    name: str
    sessions: int
    snaps: int
    seed: int = 42
    allocations: tuple[tuple[str, int], ...] = ()
    defects: int = 0
    defect_sign: int = 1
    sample_interval: float = 1000.0

    def __post_init__(self) -> None:
        if self.sessions < 1 or self.snaps < 1:
            raise InvalidScenario("sessions and snaps must be at least 1")
        if self.allocations:
            total = sum(count for _, count in self.allocations)
            if total != self.sessions:
                raise InvalidScenario(
                    f"archetype allocations sum to {total}, expected {self.sessions}"
                )
        if self.defect_sign not in (1, -1):
            raise InvalidScenario("defect_sign must be +1 or -1")
        if self.defects < 0 or self.defects > self.sessions * self.snaps:
            raise InvalidScenario("defect count exceeds available snapshots")
        if self.sample_interval != 1000.0:
            raise InvalidScenario("built-in scenarios generate on a 1000 ms interval")

    @classmethod
    def builtin(
        cls,
        name: str,
        sessions: int | None = None,
        snaps: int | None = None,
        seed: int = 42,
        defects: int = 0,
        defect_sign: int = 1,
    ) -> "ScenarioSpec":
        """Fill in per-scenario defaults for sessions and snapshot count."""
        if name not in _DEFAULTS:
            raise InvalidScenario(
                f"unknown scenario {name!r}; built-ins: {', '.join(SCENARIO_NAMES)}"
            )
        defaults = _DEFAULTS[name]
        spec = cls(
            name=name,
            sessions=sessions if sessions is not None else defaults["sessions"],
            snaps=snaps if snaps is not None else defaults["snaps"],
            seed=seed,
            defects=defects,
            defect_sign=defect_sign,
        )
        if name == "fig6":
            if spec.sessions < 8:
                raise InvalidScenario("fig6 needs at least 8 sessions for its archetypes")
            spec = replace(
                spec,
                allocations=(
                    ("idle", 4),
                    ("half_idle", 2),
                    ("db_wait", 2),
                    ("cluster", spec.sessions - 8),
                ),
            )
        return spec


@dataclass(frozen=True)
class MetricEventBreakdown:
    """Wait and service components whose sum is the stored metric value."""

    metric: str
    waits: tuple[float, ...] = ()
    services: tuple[float, ...] = ()

    @property
    def total(self) -> float:
        return float(sum(self.waits) + sum(self.services))


@dataclass(frozen=True)
class SyntheticEventModel:
    """Per-metric event decomposition for one (snap, session)."""

    snap_id: int
    session_id: str
    components: tuple[MetricEventBreakdown, ...] = field(default_factory=tuple)

    def breakdown(self, metric: str) -> MetricEventBreakdown:
        for comp in self.components:
            if comp.metric == metric:
                return comp
        raise KeyError(metric)


def _session_ids(count: int) -> list[str]:
    width = max(3, len(str(count)))
    return [f"s{i + 1:0{width}d}" for i in range(count)]


def _largest_remainder(fractions: np.ndarray, total: int) -> list[int]:
    """Round fractional shares to integers summing exactly to total."""
    raw = fractions * total
    floors = np.floor(raw).astype(int)
    shortfall = total - int(floors.sum())
    order = np.argsort(-(raw - floors), kind="stable")
    out = floors.copy()
    for i in range(shortfall):
        out[order[i]] += 1
    return [int(v) for v in out]


def _fig6_rows(spec: ScenarioSpec, rng: np.random.Generator) -> tuple[tuple[str, ...], list[list[float]]]:
    archetypes: list[str] = []
    for name, count in spec.allocations:
        archetypes.extend([name] * count)
    rows = []
    for _ in range(spec.snaps):
        for arch in archetypes:
            if arch == "idle":
                rows.append([0.0, 1000.0, 0.0])
            elif arch == "half_idle":
                cpu = int(rng.integers(0, 501))
                rows.append([float(cpu), 500.0, float(500 - cpu)])
            elif arch == "db_wait":
                rows.append([0.0, 0.0, 1000.0])
            elif arch == "cluster":
                cpu = int(rng.integers(70, 131))
                remainder = 1000 - cpu
                db_share = float(rng.uniform(0.55, 0.85))
                db = int(round(remainder * db_share))
                rows.append([float(cpu), float(remainder - db), float(db)])
            else:
                raise InvalidScenario(f"unknown fig6 archetype {arch!r}")
    return _FIG6_METRICS, rows


def _drift_rows(spec: ScenarioSpec, rng: np.random.Generator) -> tuple[tuple[str, ...], list[list[float]]]:
    if spec.snaps < 2:
        raise InvalidScenario("drift needs at least 2 snapshots to cross")
    k_max = spec.snaps - 1
    rows = []
    io = 99  # odd, so cpu - wait never lands exactly on zero
    prev_cpu = None
    for k in range(spec.snaps):
        cpu = int(round(600 - 350 * k / k_max))
        if prev_cpu is not None:
            delta_cpu = cpu - prev_cpu
            # keep cpu - wait monotonically nonincreasing: step <= -2*delta_cpu
            candidates = [
                s for s in (-2, 0, 2)
                if 2 * delta_cpu + s <= 0 and 91 <= io + s <= 109
            ]
            io += int(rng.choice(candidates))
        prev_cpu = cpu
        wait = 1000 - cpu - io
        for sess_row in range(spec.sessions):
            rows.append([float(wait), float(io), float(cpu)])
    return _DRIFT_METRICS, rows


def _uniform_rows(spec: ScenarioSpec, rng: np.random.Generator) -> tuple[tuple[str, ...], list[list[float]]]:
    rows = []
    for _ in range(spec.snaps * spec.sessions):
        weights = rng.dirichlet(np.ones(3))
        parts = _largest_remainder(weights, 1000)
        rows.append([float(v) for v in parts])
    return _FIG6_METRICS, rows


_GENERATORS = {
    "fig6": _fig6_rows,
    "drift": _drift_rows,
    "uniform": _uniform_rows,
}


def _inject_defects(
    rows: list[list[float]], spec: ScenarioSpec, rng: np.random.Generator
) -> None:
    """Perturb seeded slots by 100 ms on their largest metric.

    defect_sign is the sign of the residual an audit will see: +1 removes
    time (unaccounted), -1 adds time (double counted).
    """
    if spec.defects == 0:
        return
    slots = rng.choice(len(rows), size=spec.defects, replace=False)
    for slot in sorted(int(s) for s in slots):
        row = rows[slot]
        target = max(range(len(row)), key=lambda i: row[i])
        row[target] -= spec.defect_sign * DEFECT_MAGNITUDE_MS


def generate_scenario(spec: ScenarioSpec) -> DatasetSeries:
    """Generate the dataset for a scenario spec, fully seed-determined."""
    if spec.name not in _GENERATORS:
        raise InvalidScenario(
            f"unknown scenario {spec.name!r}; built-ins: {', '.join(SCENARIO_NAMES)}"
        )
    seq = np.random.SeedSequence(spec.seed)
    values_seed, defects_seed, _ = seq.spawn(3)
    rng_values = np.random.Generator(np.random.PCG64(values_seed))
    rng_defects = np.random.Generator(np.random.PCG64(defects_seed))

    metrics, rows = _GENERATORS[spec.name](spec, rng_values)
    _inject_defects(rows, spec, rng_defects)

    ids = _session_ids(spec.sessions)
    snapshots = []
    i = 0
    for snap_id in range(1, spec.snaps + 1):
        for session_id in ids:
            snapshots.append(
                SessionSnapshot(
                    snap_id=snap_id,
                    session_id=session_id,
                    metrics=MetricVector(tuple(zip(metrics, rows[i]))),
                    sample_interval=spec.sample_interval,
                )
            )
            i += 1
    return DatasetSeries(
        metric_names=metrics,
        sample_interval=spec.sample_interval,
        snapshots=tuple(snapshots),
        label=spec.name,
    )


def _is_cpu_metric(name: str) -> bool:
    return "CPU" in name.upper()


def _decompose(
    metric: str, value: float, rng: np.random.Generator
) -> MetricEventBreakdown:
    total = int(round(value))
    if _is_cpu_metric(metric):
        services = (float(total),) if total > 0 else ()
        return MetricEventBreakdown(metric=metric, services=services)
    if total <= 0:
        return MetricEventBreakdown(metric=metric)
    # A slice of each wait is really system-call service overhead.
    service_total = int(round(total * 0.05))
    wait_total = total - service_total
    n_events = int(rng.integers(1, 4))
    cuts = sorted(int(c) for c in rng.integers(0, wait_total + 1, size=n_events - 1))
    bounds = [0] + cuts + [wait_total]
    waits = tuple(
        float(b - a) for a, b in zip(bounds, bounds[1:]) if b - a > 0
    )
    services = (float(service_total),) if service_total > 0 else ()
    return MetricEventBreakdown(metric=metric, waits=waits, services=services)


def generate_with_events(
    spec: ScenarioSpec,
) -> tuple[DatasetSeries, dict[tuple[int, str], SyntheticEventModel]]:
    """Generate a scenario plus the event decomposition of every value.

    The returned series is byte-for-byte the same as ``generate_scenario``
    for the same spec; the decomposition uses its own random stream.
    """
    series = generate_scenario(spec)
    seq = np.random.SeedSequence(spec.seed)
    _, _, events_seed = seq.spawn(3)
    rng_events = np.random.Generator(np.random.PCG64(events_seed))
    events: dict[tuple[int, str], SyntheticEventModel] = {}
    for snap in series.snapshots:
        components = tuple(
            _decompose(metric, value, rng_events)
            for metric, value in snap.metrics.values
        )
        events[(snap.snap_id, snap.session_id)] = SyntheticEventModel(
            snap_id=snap.snap_id,
            session_id=snap.session_id,
            components=components,
        )
    return series, events


def scenario_catalog() -> list[dict]:
    """Built-in scenario names with their default shapes."""
    out = []
    for name in SCENARIO_NAMES:
        defaults = _DEFAULTS[name]
        out.append(
            {
                "name": name,
                "default_sessions": defaults["sessions"],
                "default_snaps": defaults["snaps"],
                "metrics": list(_DRIFT_METRICS if name == "drift" else _FIG6_METRICS),
            }
        )
    return out
