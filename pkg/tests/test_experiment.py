# -*- coding: utf-8 -*-

import pandas as pd
import pytest

from src.config.settings_generator import GRIDS, grid
from src.models.experiment import COLUMNS, Experiment, verify_point


POINTS = [
    {"family": "genK4", "params": [1, 1, 1, 1, 1, 1]},
    {"family": "closing", "params": [3, 3]},
]


def test_verify_point():
    row = verify_point(0, "genK4", [1, 1, 1, 1, 1, 1], None)
    assert (row["n"], row["rank"]) == (6, 3)
    assert row["status"] == "true"
    assert row["params"] == "1,1,1,1,1,1"


def test_errors_become_rows():
    row = verify_point(1, "closing", [3, 3], None)
    assert row["status"] == "error"
    assert row["verdict"] is None
    assert row["reason"].startswith("ParameterError:")


def test_run_in_memory():
    frame = Experiment(POINTS, n_jobs=1).run(progress=False)
    assert list(frame.columns) == COLUMNS
    assert list(frame["status"]) == ["true", "error"]


def test_sweep_resumes_from_checkpoint(tmp_path):
    path = str(tmp_path / "results" / "sweep.csv")
    first = Experiment(POINTS[:1], n_jobs=1, results_path=path)
    assert len(first.run(progress=False)) == 1

    second = Experiment(POINTS, n_jobs=1, results_path=path)
    assert second.health_check() == {0}
    rows = list(second.iter_results(progress=False, checkpoint=1))
    assert [row["point_id"] for row in rows] == [1]

    saved = pd.read_csv(path)
    assert list(saved["point_id"]) == [0, 1]
    assert list(saved.columns) == COLUMNS
    assert list(second.iter_results(progress=False)) == []


@pytest.mark.slow
@pytest.mark.parametrize("name", sorted(GRIDS))
def test_every_family_grid_verifies(name):
    points = grid(name)
    frame = Experiment(points, n_jobs=1).run(progress=False)
    assert len(frame) == len(points)
    failed = frame[frame["status"] != "true"]
    assert failed.empty, failed[["family", "params", "status"]]
