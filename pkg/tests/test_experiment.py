import csv
import io
import json

import pytest

from cliquebetti.errors import InvalidSpec
from cliquebetti.experiment import (
    CSV_COLUMNS,
    ExperimentSpec,
    derive_seed,
    rows_to_csv,
    run_experiment,
    summarize,
)


def bipartite_spec(**kw):
    base = dict(
        generator="multipartite",
        generator_params=[30, 30],
        tester="betti_test",
        tester_params={"k": 1, "epsilon": 0.1, "delta": 0.01},
        grid={"sample_size": [10, 20, 40]},
        repetitions=50,
        master_seed=5,
    )
    base.update(kw)
    return ExperimentSpec(**base)


def test_triangle_free_grid_always_accepts():
    rows = run_experiment(bipartite_spec())
    assert len(rows) == 150
    assert summarize(rows) == {0: 1.0, 1: 1.0, 2: 1.0}
    assert {r["observed_density"] for r in rows} == {"0"}


def test_dense_graph_rejection_rate():
    spec = ExperimentSpec(
        generator="gnp",
        generator_params=[60, 0.9],
        tester="tolerant_clique_free_test",
        tester_params={"m": 3, "epsilon": 0.1, "epsilon1": 0.01},
        grid={"sample_size": [12]},
        repetitions=100,
        master_seed=11,
        generator_seed=1,
    )
    rows = run_experiment(spec)
    assert 1 - summarize(rows)[0] >= 2 / 3


def test_empty_grid_and_zero_repetitions():
    assert run_experiment(bipartite_spec(grid={})) == []
    assert run_experiment(bipartite_spec(repetitions=0)) == []
    assert rows_to_csv([]) == ",".join(CSV_COLUMNS) + "\n"


def test_deterministic_and_seeded_per_row():
    spec = bipartite_spec(generator="gnp", generator_params=[20, 0.5], repetitions=3,
                          grid={"sample_size": [6, 8]})
    a, b = run_experiment(spec), run_experiment(spec)
    assert rows_to_csv(a) == rows_to_csv(b)
    assert [r["seed"] for r in a] == [derive_seed(5, p, r) for p in range(2) for r in range(3)]
    assert len({r["seed"] for r in a}) == 6
    assert run_experiment(spec, jobs=2) == a


def test_csv_columns():
    rows = run_experiment(bipartite_spec(repetitions=2))
    parsed = list(csv.DictReader(io.StringIO(rows_to_csv(rows))))
    assert list(parsed[0]) == CSV_COLUMNS
    assert len(parsed) == 6
    assert all(int(r["queries_used"]) > 0 for r in parsed)


def test_points_cartesian_product():
    spec = bipartite_spec(grid={"sample_size": [6, 8], "trials": [1, 2, 3]})
    pts = spec.points()
    assert len(pts) == 6
    assert pts[0] == {"sample_size": 6, "trials": 1}
    assert pts[-1] == {"sample_size": 8, "trials": 3}


@pytest.mark.parametrize(
    "bad",
    [
        {"tester": "nope"},
        {"tester_params": {"k": 1, "epsilon": 0.1, "delta": 0.01, "bogus": 1}},
        {"grid": {"sample_size": 6}},
        {"repetitions": -1},
        {"master_seed": -3},
    ],
)
def test_invalid_spec(bad):
    with pytest.raises(InvalidSpec):
        bipartite_spec(**bad)


def test_invalid_spec_at_run_time():
    with pytest.raises(InvalidSpec):
        run_experiment(bipartite_spec(generator="nope"))
    with pytest.raises(InvalidSpec):
        run_experiment(bipartite_spec(tester_params={"k": 1}))
    with pytest.raises(InvalidSpec):
        run_experiment(bipartite_spec(grid={"sample_size": [100]}))


def test_from_json():
    doc = {
        "generator": "cycle",
        "generator_params": [9],
        "tester": "tolerant_clique_free_test",
        "tester_params": {"m": 3, "epsilon": 0.2, "epsilon1": 0.05},
        "grid": {"trials": [2]},
        "repetitions": 4,
        "master_seed": 1,
    }
    rows = run_experiment(ExperimentSpec.from_json(json.dumps(doc)))
    assert [r["verdict"] for r in rows] == ["accept"] * 4
    for bad in ("[]", "{", json.dumps({**doc, "extra": 1}), json.dumps({"tester": "betti_test"})):
        with pytest.raises(InvalidSpec):
            ExperimentSpec.from_json(bad)
