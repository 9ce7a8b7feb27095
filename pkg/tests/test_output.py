import json

import pytest

from mzsim.config import ExperimentConfig
from mzsim.experiment import PhotonTrace, SweepPoint
from mzsim.optics import DetectorCounts, OutcomeKind, Path
from mzsim.output import (
    CSV_COLUMNS,
    build_record,
    read_sweep_csv,
    record_from_dict,
    record_to_dict,
    write_csv,
    write_json,
)


def one_point_record(timestamp="2024-01-01T00:00:00+00:00"):
    counts = DetectorCounts(1, 2)
    point = SweepPoint(1 / 3, counts, counts.d1 / counts.total)
    return build_record("sweep", ExperimentConfig(), [point], {"visibility": 0.5},
                        timestamp=timestamp)


def test_csv_has_exact_columns_and_one_row(tmp_path):
    path = tmp_path / "out.csv"
    write_csv(one_point_record(), path)
    lines = path.read_text().splitlines()
    assert lines[0] == ",".join(CSV_COLUMNS)
    assert len(lines) == 2


def test_csv_bytes_do_not_depend_on_timestamp(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    write_csv(one_point_record(timestamp="2024-01-01T00:00:00+00:00"), a)
    write_csv(one_point_record(timestamp="2030-12-31T23:59:59+00:00"), b)
    assert a.read_bytes() == b.read_bytes()


def test_csv_floats_round_trip_exactly(tmp_path):
    path = tmp_path / "out.csv"
    record = one_point_record()
    write_csv(record, path)
    points = read_sweep_csv(path)
    assert len(points) == 1
    assert points[0].delta == record.points[0].delta  # bit-exact via repr
    assert points[0].d1_fraction == record.points[0].d1_fraction
    assert points[0].counts == record.points[0].counts


def test_json_round_trip_equality(tmp_path):
    record = one_point_record()
    again = record_from_dict(json.loads(json.dumps(record_to_dict(record))))
    assert again == record

    path = tmp_path / "out.json"
    write_json(record, path)
    write_json(record, tmp_path / "out2.json")
    assert path.read_bytes() == (tmp_path / "out2.json").read_bytes()


def test_json_round_trip_with_trace():
    trace = (
        PhotonTrace(0.5, OutcomeKind.REFLECT, Path.PATH1, OutcomeKind.TRANSMIT),
        PhotonTrace(1.5, OutcomeKind.TRANSMIT, Path.PATH2, None),
    )
    record = build_record(
        "mzi",
        ExperimentConfig(),
        [SweepPoint(0.0, DetectorCounts(1, 1), 0.5)],
        None,
        trace=trace,
        timestamp="2024-01-01T00:00:00+00:00",
    )
    again = record_from_dict(json.loads(json.dumps(record_to_dict(record))))
    assert again == record


def test_provenance_carries_seed_and_mixer():
    record = one_point_record()
    assert record.provenance["master_seed"] == 42
    assert record.provenance["child_seed_function"] == "splitmix64"
    assert "mzsim" in record.provenance["build"]


def test_read_rejects_foreign_header(tmp_path):
    path = tmp_path / "foreign.csv"
    path.write_text("a,b,c\n1,2,3\n")
    with pytest.raises(ValueError):
        read_sweep_csv(path)


def test_read_rejects_empty_table(tmp_path):
    path = tmp_path / "empty.csv"
    path.write_text(",".join(CSV_COLUMNS) + "\n")
    with pytest.raises(ValueError):
        read_sweep_csv(path)


def test_write_error_carries_path_context(tmp_path):
    target = tmp_path / "no-such-dir" / "x.csv"
    with pytest.raises(OSError, match="x.csv"):
        write_csv(one_point_record(), target)
