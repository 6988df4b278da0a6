import pytest

from simplexviz.errors import MissingMetric, UnknownSpec
from simplexviz.model import (
    AggregationSpec,
    AxisAssignment,
    DatasetSeries,
    MetricVector,
    SessionSnapshot,
    aggregate,
    builtin_spec,
    builtin_spec_names,
    builtin_taxonomy,
    canonical_metric_name,
    composite_values,
    validate_view,
)

OWI_SAMPLE = {
    "APPLICATION": 5.0,
    "COMMIT": 2.0,
    "CONCURRENCY": 3.0,
    "CONFIGURATION": 1.0,
    "NETWORK": 4.0,
    "OTHER": 15.0,
    "USERIO": 8.0,
    "SYSTEMIO": 2.0,
    "DB_CPU": 60.0,
}


def _series(rows, metrics=("CPU_USAGE", "IDLE", "DB_WAIT"), interval=1000.0):
    snapshots = tuple(
        SessionSnapshot(
            snap_id=snap_id,
            session_id=session_id,
            metrics=MetricVector(tuple(zip(metrics, values))),
            sample_interval=interval,
        )
        for snap_id, session_id, values in rows
    )
    return DatasetSeries(
        metric_names=tuple(metrics), sample_interval=interval, snapshots=snapshots
    )


def test_canonical_metric_name():
    assert canonical_metric_name("db.cpu.pct") == "DB_CPU_PCT"
    assert canonical_metric_name("  UserIO.PCT ") == "USERIO_PCT"
    assert canonical_metric_name("DB_WAIT") == "DB_WAIT"


def test_taxonomy_shape():
    t = builtin_taxonomy()
    assert len(t) == 13
    assert t.total_events() == 959


def test_taxonomy_spot_counts():
    t = builtin_taxonomy()
    assert t.count("Other") == 630
    assert t.count("Commit") == 2
    assert t.count("Idle") == 80


def test_taxonomy_unknown_class():
    with pytest.raises(KeyError):
        builtin_taxonomy().count("Blocking")


def test_taxonomy_stable_across_calls():
    assert builtin_taxonomy() == builtin_taxonomy()


def test_metric_vector_lookup_and_total():
    m = MetricVector.from_dict({"A": 1.0, "B": 2.5})
    assert m.get("B") == 2.5
    assert m.total() == 3.5
    assert m.names == ("A", "B")


def test_metric_vector_missing_metric():
    with pytest.raises(MissingMetric):
        MetricVector.from_dict({"A": 1.0}).get("B")


def test_metric_vector_rejects_negative_and_duplicate():
    with pytest.raises(ValueError):
        MetricVector((("A", -1.0),))
    with pytest.raises(ValueError):
        MetricVector((("A", 1.0), ("A", 2.0)))


def test_dataset_rejects_deviating_metrics():
    with pytest.raises(ValueError):
        DatasetSeries(
            metric_names=("A", "B"),
            sample_interval=1000.0,
            snapshots=(
                SessionSnapshot(1, "s1", MetricVector((("A", 1.0),))),
            ),
        )


def test_dataset_rejects_decreasing_snap_ids():
    with pytest.raises(ValueError):
        _series(
            [
                (2, "s1", (0.0, 1000.0, 0.0)),
                (1, "s1", (0.0, 1000.0, 0.0)),
            ]
        )


def test_dataset_accessors():
    d = _series(
        [
            (1, "s1", (100.0, 800.0, 100.0)),
            (1, "s2", (0.0, 1000.0, 0.0)),
            (2, "s1", (100.0, 800.0, 100.0)),
            (2, "s2", (0.0, 1000.0, 0.0)),
        ]
    )
    assert d.snap_ids == (1, 2)
    assert d.session_ids == ("s1", "s2")
    assert len(d.sessions_at(2)) == 2
    assert d.sessions_at(3) == ()


def test_builtin_spec_names():
    assert set(builtin_spec_names()) == {"owi3", "session3", "session4"}


def test_owi3_spec_shape():
    spec = builtin_spec("owi3")
    assert spec.composite_names == ("WAIT_PCT", "IO_PCT", "DB_CPU_PCT")
    assert len(dict(spec.composites)["WAIT_PCT"]) == 6


def test_session4_spec_is_passthrough():
    spec = builtin_spec("session4")
    assert spec.n == 4
    assert all(len(sources) == 1 for _, sources in spec.composites)


def test_unknown_spec():
    with pytest.raises(UnknownSpec):
        builtin_spec("bogus")


def test_spec_rejects_shared_source():
    with pytest.raises(ValueError):
        AggregationSpec(
            name="bad", composites=(("X", ("A",)), ("Y", ("A", "B")))
        )


def test_aggregate_owi3_sample():
    out = aggregate(MetricVector.from_dict(OWI_SAMPLE), builtin_spec("owi3"))
    assert out.as_dict() == {"WAIT_PCT": 30.0, "IO_PCT": 10.0, "DB_CPU_PCT": 60.0}


def test_aggregate_all_zero():
    zero = {k: 0.0 for k in OWI_SAMPLE}
    out = aggregate(MetricVector.from_dict(zero), builtin_spec("owi3"))
    assert all(v == 0.0 for v in out.as_dict().values())


def test_aggregate_missing_source():
    partial = dict(OWI_SAMPLE)
    del partial["SYSTEMIO"]
    with pytest.raises(MissingMetric, match="SYSTEMIO"):
        aggregate(MetricVector.from_dict(partial), builtin_spec("owi3"))


def test_aggregate_conserves_total():
    m = MetricVector.from_dict(OWI_SAMPLE)
    out = aggregate(m, builtin_spec("owi3"))
    assert out.total() == m.total()


def test_composite_values_prefers_preaggregated():
    m = MetricVector.from_dict({"WAIT_PCT": 30.0, "IO_PCT": 10.0, "DB_CPU_PCT": 60.0})
    out = composite_values(m, builtin_spec("owi3"))
    assert out.as_dict() == m.as_dict()


def test_composite_values_falls_back_to_sources():
    out = composite_values(MetricVector.from_dict(OWI_SAMPLE), builtin_spec("owi3"))
    assert out.as_dict() == {"WAIT_PCT": 30.0, "IO_PCT": 10.0, "DB_CPU_PCT": 60.0}


def test_axis_assignment_from_names():
    axes = AxisAssignment.from_names(["CPU_USAGE", "IDLE", "DB_WAIT"])
    assert axes.n == 3
    assert axes.names == ("CPU_USAGE", "IDLE", "DB_WAIT")


def test_axis_assignment_rejects_bad_indices():
    with pytest.raises(ValueError):
        AxisAssignment(((1, "A"), (3, "B")))


def test_validate_view_ok():
    d = _series([(1, "s1", (100.0, 800.0, 100.0))])
    spec = builtin_spec("session3")
    axes = AxisAssignment.from_names(["CPU_USAGE", "IDLE", "DB_WAIT"])
    assert validate_view(d, spec, axes) == []


def test_validate_view_missing_metric():
    d = _series([(1, "s1", (100.0, 800.0, 100.0))])
    spec = builtin_spec("session4")
    axes = AxisAssignment.from_names(
        ["CPU_USAGE", "DB_CONTENTION", "DB_WAIT", "IDLE"]
    )
    violations = validate_view(d, spec, axes)
    assert any(
        v.code == "MissingMetric" and "DB_CONTENTION" in v.detail
        for v in violations
    )


def test_validate_view_duplicate_axis():
    d = _series([(1, "s1", (100.0, 800.0, 100.0))])
    spec = builtin_spec("session3")
    axes = AxisAssignment.from_names(["CPU_USAGE", "CPU_USAGE", "DB_WAIT"])
    violations = validate_view(d, spec, axes)
    assert any(v.code == "NonBijectiveAxes" for v in violations)


def test_validate_view_axis_mismatch():
    d = _series([(1, "s1", (100.0, 800.0, 100.0))])
    spec = builtin_spec("session3")
    axes = AxisAssignment.from_names(["CPU_USAGE", "IDLE", "LATENCY"])
    codes = {v.code for v in validate_view(d, spec, axes)}
    assert "AxisMissing" in codes and "AxisUnknown" in codes


def test_validate_view_accepts_preaggregated_composites():
    d = _series(
        [(1, "s1", (700.0, 100.0, 200.0))],
        metrics=("WAIT_PCT", "IO_PCT", "DB_CPU_PCT"),
    )
    spec = builtin_spec("owi3")
    axes = AxisAssignment.from_names(["WAIT_PCT", "IO_PCT", "DB_CPU_PCT"])
    assert validate_view(d, spec, axes) == []
