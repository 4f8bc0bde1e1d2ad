#!/usr/bin/env python3
"""
Tests for the measurement, signal, model and report file formats.
"""
import json
from pathlib import Path

import numpy as np
import pytest

from modelsr.core import FrequencyGrid, Measurement
from modelsr.importer import (
    read_config_json, read_measurement_csv, read_model_json, read_report_json, read_signal_csv,
    write_json, write_measurement_csv, write_model_json, write_report_json, write_signal_csv
)
from modelsr.models import FriGroup, FriParams, PointSourceParams, forward
from modelsr.schemas.solver import SolveOptions
from modelsr.solver import nesterov_solve

MODEL = PointSourceParams(amplitudes=[1.5, 1.2], positions=[0.25, 0.6])


def test_measurement_csv_is_exact(tmp_path):
    path = tmp_path / "measurement.csv"
    y = forward(MODEL, FrequencyGrid(k_max=6))
    write_measurement_csv(y, path)
    assert path.read_text().splitlines()[0] == "k,re,im"
    back = read_measurement_csv(path)
    assert back.same_grid(y)
    assert np.array_equal(back.values, y.values)


def test_random_values_survive_csv_exactly(tmp_path):
    rng = np.random.default_rng(11)
    values = rng.standard_normal(101) * 10.0 ** rng.integers(-8, 8, 101) + 1j * rng.standard_normal(101)
    y = Measurement(FrequencyGrid(k_max=50), values)
    path = tmp_path / "random.csv"
    write_measurement_csv(y, path)
    back = read_measurement_csv(path)
    assert np.array_equal(back.values, values)

    x = rng.uniform(0.0, 1.0, 101)
    write_signal_csv(x, values, tmp_path / "signal.csv")
    x_back, values_back = read_signal_csv(tmp_path / "signal.csv")
    assert np.array_equal(x_back, x)
    assert np.array_equal(values_back, values)


def test_measurement_csv_with_gaps_becomes_masked(tmp_path):
    path = tmp_path / "masked.csv"
    path.write_text("k,re,im\n-2,1.0,0.0\n0,2.0,0.5\n3,0.0,-1.0\n")
    y = read_measurement_csv(path, k_max=4)
    assert y.grid.k_max == 4
    assert y.indices.tolist() == [-2, 0, 3]
    assert y.at(0) == complex(2.0, 0.5)


def test_measurement_csv_errors(tmp_path):
    with pytest.raises(FileNotFoundError):
        read_measurement_csv(tmp_path / "missing.csv")
    bad = tmp_path / "bad.csv"
    bad.write_text("k,re\n0,1.0\n")
    with pytest.raises(ValueError, match="missing required columns"):
        read_measurement_csv(bad)
    empty = tmp_path / "empty.csv"
    empty.write_text("k,re,im\n")
    with pytest.raises(ValueError):
        read_measurement_csv(empty)


def test_signal_csv(tmp_path):
    path = tmp_path / "signal.csv"
    x = np.arange(8) / 8
    values = np.exp(2j * np.pi * x)
    write_signal_csv(x, values, path)
    x_back, values_back = read_signal_csv(path)
    assert np.array_equal(x_back, x)
    assert np.array_equal(values_back, values)


@pytest.mark.parametrize(
    "model",
    [MODEL, FriParams(groups=[FriGroup(order=1, amplitudes=[1.2], positions=[0.4])])],
    ids=lambda m: m.model,
)
def test_model_json(tmp_path, model):
    path = tmp_path / "model.json"
    write_model_json(model, path)
    assert json.loads(path.read_text())["model"] == model.model
    assert read_model_json(path) == model


def test_model_json_rejects_unknown_model(tmp_path):
    path = tmp_path / "model.json"
    path.write_text(json.dumps({"model": "wavelet", "amplitudes": [1.0]}))
    with pytest.raises(ValueError):
        read_model_json(path)


def test_report_json(tmp_path):
    y = forward(MODEL, FrequencyGrid(k_max=6))
    report = nesterov_solve(MODEL, y, SolveOptions(max_iters=10))
    path = tmp_path / "report.json"
    write_report_json(report, path)
    assert read_report_json(path) == report


def test_config_json_from_preset_dump(tmp_path):
    path = tmp_path / "config.json"
    path.write_text(json.dumps({
        "scenario": "custom",
        "model": MODEL.model_dump(mode="json"),
        "k_low": 6,
        "k_high": 30,
        "sigma": 0.0,
        "trials": 1,
    }))
    config = read_config_json(path)
    assert config.model == MODEL
    assert config.noise_levels == [None]


def test_write_json_is_sorted(tmp_path):
    path = tmp_path / "out" / "data.json"
    write_json({"b": 1, "a": [1, 2]}, path)
    text = path.read_text()
    assert text.index('"a"') < text.index('"b"')
    assert text.endswith("\n")


def test_measurement_records_round_trip():
    y = Measurement.from_indexed([-1, 1], [1 + 2j, 3 - 1j], k_max=1)
    assert y.to_records() == [{"k": -1, "re": 1.0, "im": 2.0}, {"k": 1, "re": 3.0, "im": -1.0}]
    assert Measurement.from_records(y.to_records(), k_max=1).same_grid(y)


if __name__ == "__main__":
    pytest.main([str(Path(__file__)), "--tb=auto"])
