import csv
import json
import math

import numpy as np
import pytest

from noisyqa.dynamics import DensityMatrix, RunRecord
from noisyqa.experiments import (
    AGGREGATE_HEADER,
    BudgetExceededError,
    ExperimentConfig,
    aggregate,
    convergence_check,
    emit_csv,
    emit_json,
    gap_vs_fidelity,
    load_json,
    preset,
    run_experiment,
    success_scatter,
    sweep_gamma,
)

SMALL = dict(n=4, steps=400, record_every=100)


def test_single_run_count(tmp_path):
    cfg = ExperimentConfig(instances=1, methods=("PQA",), channels=("none",), output_dir=str(tmp_path), **SMALL)
    res = run_experiment(cfg)
    assert len(res.records) == 1
    assert res.table.lookup("PQA", "none", 0.0, "success_probability").count == 1
    assert len(list((tmp_path / "runs").iterdir())) == 1


def test_cartesian_count(tmp_path):
    cfg = ExperimentConfig(instances=2, methods=("PQA", "CQA"), channels=("phase_flip",),
                           gammas=(0.0, 0.01, 0.1), output_dir=str(tmp_path), **SMALL)
    res = run_experiment(cfg)
    assert len(res.records) == 12
    assert len(list((tmp_path / "runs").iterdir())) == 12
    assert not res.any_failed


def test_outputs_are_deterministic_and_tagged(tmp_path):
    kw = dict(instances=2, channels=("bit_flip",), gammas=(0.0, 0.05), **SMALL)
    a = run_experiment(ExperimentConfig(output_dir=str(tmp_path / "a"), **kw))
    b = run_experiment(ExperimentConfig(output_dir=str(tmp_path / "b"), workers=2, **kw))
    assert a.paths["aggregate"].name == b.paths["aggregate"].name
    assert a.paths["aggregate"].read_bytes() == b.paths["aggregate"].read_bytes()
    assert a.paths["manifest"].read_bytes() == b.paths["manifest"].read_bytes()
    tag = a.manifest["config_hash"][:12]
    for p in (tmp_path / "a").rglob("*.*"):
        assert tag in p.name
    with open(a.paths["aggregate"]) as fh:
        assert fh.readline().strip() == ",".join(AGGREGATE_HEADER)


def test_manifest_contents(tmp_path):
    cfg = ExperimentConfig(instances=1, methods=("CQA",), channels=("depolarizing",), gammas=(0.02,),
                           output_dir=str(tmp_path), **SMALL)
    res = run_experiment(cfg)
    man = json.loads(res.paths["manifest"].read_text())
    assert man["config_hash"] == cfg.config_hash()
    assert man["config"]["n"] == 4 and "output_dir" not in man["config"]
    assert man["runs"][0]["status"] == "ok"
    assert man["version"]
    assert cfg.config_hash() == cfg.replace(output_dir="elsewhere", workers=3).config_hash()
    assert cfg.config_hash() != cfg.replace(T=10.0).config_hash()


def test_gamma_zero_cell_is_noiseless_and_labeled(tmp_path):
    cfg = ExperimentConfig(instances=1, methods=("PQA",), channels=("bit_flip", "none"), gammas=(0.0, 0.1),
                           output_dir=str(tmp_path), **SMALL)
    res = run_experiment(cfg)
    zero = res.records[(0, "PQA", "bit_flip", 0.0)]
    none = res.records[(0, "PQA", "none", 0.0)]
    assert zero.metadata["channel"] == "bit_flip" and none.metadata["channel"] == "none"
    assert np.array_equal(zero.observables["solution_fidelity"], none.observables["solution_fidelity"])
    assert res.successes[(0, "PQA", "bit_flip", 0.1)] < res.successes[(0, "PQA", "bit_flip", 0.0)]


def _rec(values, status="ok"):
    return RunRecord(np.array([0.0, 1.0]), {"x": np.array(values, dtype=float)}, None,
                     status=status, failure=None if status == "ok" else {"check": "trace_drift"})


def test_aggregate_population_variance_and_failures():
    recs = {(0, "PQA", "none", 0.0): _rec([0, 1]), (1, "PQA", "none", 0.0): _rec([0, 3]),
            (2, "PQA", "none", 0.0): _rec([0, 100], "failed")}
    succ = {(0, "PQA", "none", 0.0): 0.2, (1, "PQA", "none", 0.0): 0.4, (2, "PQA", "none", 0.0): math.nan}
    t = aggregate(recs, succ)
    row = t.lookup("PQA", "none", 0.0, "x", 1.0)
    assert (row.mean, row.variance, row.count) == (2.0, 1.0, 2)
    s = t.lookup("PQA", "none", 0.0, "success_probability")
    assert s.mean == pytest.approx(0.3) and s.variance == pytest.approx(0.01)
    assert t.failed[("PQA", "none", 0.0)] == 1
    f = t.lookup("PQA", "none", 0.0, "failed_runs")
    assert (f.mean, f.count) == (1.0, 3)


def test_aggregate_order_independent():
    keys = [(k, "CQA", "none", 0.0) for k in range(5)]
    recs = {k: _rec([0.1 * k[0], 0.3]) for k in keys}
    succ = {k: 0.1 * k[0] for k in keys}
    a = aggregate(recs, succ)
    b = aggregate(dict(reversed(list(recs.items()))), succ)
    assert [r.as_tuple() for r in a.rows] == [r.as_tuple() for r in b.rows]


def test_emit_csv_empty_and_float_digits(tmp_path):
    p = tmp_path / "t.csv"
    emit_csv([], p)
    assert p.read_text() == ",".join(AGGREGATE_HEADER) + "\n"
    emit_csv([("PQA", "none", 0.1, "final", "x", 1 / 3, 0.0, 1)], p)
    row = list(csv.reader(p.open()))[1]
    assert float(row[5]) == 1 / 3 and row[5] == format(1 / 3, ".17g")
    with pytest.raises(OSError, match="cannot write"):
        emit_csv([], tmp_path / "t.csv" / "nested.csv")


def test_json_round_trip(tmp_path):
    rng = np.random.default_rng(0)
    m = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    rec = RunRecord(np.array([0.0, 0.1, 1 / 3]), {"a": rng.random(3), "b": np.array([1e-300, -0.0, 7.0])},
                    DensityMatrix(m, 1 / 3), {"seed": 3, "edges": [[0, 1]], "nested": {"x": 0.1}},
                    "failed", {"check": "positivity", "time": 0.2, "magnitude": -1e-7})
    emit_json(rec, tmp_path / "r.json")
    back = load_json(tmp_path / "r.json")
    assert np.array_equal(back.times, rec.times)
    assert all(np.array_equal(back.observables[k], rec.observables[k]) for k in rec.observables)
    assert np.array_equal(back.final_state.matrix, rec.final_state.matrix)
    assert back.final_state.time == rec.final_state.time
    assert back.metadata == rec.metadata and back.status == rec.status and back.failure == rec.failure
    with pytest.raises(OSError, match="cannot read"):
        load_json(tmp_path / "missing.json")


def test_config_validation_and_budget():
    with pytest.raises(ValueError):
        ExperimentConfig(instances=0)
    with pytest.raises(ValueError):
        ExperimentConfig(gammas=(-0.1,))
    with pytest.raises(ValueError):
        ExperimentConfig(channels=("amplitude_damping",))
    with pytest.raises(ValueError):
        ExperimentConfig(methods=("QAOA",))
    with pytest.raises(BudgetExceededError):
        ExperimentConfig(n=8, instances=100, channels=("depolarizing",), gammas=(0.1, 0.2), budget=1e6)
    with pytest.raises(ValueError, match="unknown config keys"):
        ExperimentConfig.from_dict({"n": 4, "colour": "red"})
    cfg = ExperimentConfig.from_dict({"n": 4, "gammas": [0, 0.1], "channels": ["phase_flip"]})
    assert cfg.gammas == (0.0, 0.1) and hash(cfg)


def test_gap_vs_fidelity_self_ratio(tmp_path):
    cfg = ExperimentConfig(instances=2, output_dir=str(tmp_path), **SMALL)
    rows = gap_vs_fidelity(cfg, pair=("PQA", "PQA"), gap_samples=51)
    assert len(rows) == 2
    for r in rows:
        assert r["gap_ratio"] == 1.0 and r["fidelity_ratio"] == 1.0
    rows = gap_vs_fidelity(cfg, gap_samples=51)
    assert all(r["gap_ratio"] == "undefined" or r["gap_ratio"] > 0 for r in rows)
    assert rows[0]["method_a"] == "CQA" and rows[0]["leak_final_a"] < 1e-8
    assert list(tmp_path.glob("gap_vs_fidelity_*.csv"))
    with pytest.raises(ValueError):
        gap_vs_fidelity(cfg.replace(channels=("phase_flip",), gammas=(0.1,)))


def test_gap_vs_fidelity_undefined_ratio():
    from noisyqa.experiments import UNDEFINED, _ratio
    assert _ratio(0.3, 0.0) == UNDEFINED
    assert _ratio(0.3, 0.6) == 0.5


def test_sweep_gamma(tmp_path):
    cfg = ExperimentConfig(instances=2, methods=("CQA",), channels=("depolarizing",), gammas=(0.0, 0.1),
                           ground_fidelity=False, output_dir=str(tmp_path), **SMALL)
    rows = sweep_gamma(cfg)
    assert [r["gamma"] for r in rows] == [0.0, 0.1]
    assert rows[0]["mean"] >= rows[1]["mean"]
    zero = sweep_gamma(cfg.replace(gammas=(0.0,)), write=False)
    noiseless = run_experiment(cfg.replace(channels=("none",)), write=False)
    assert zero[0]["mean"] == noiseless.table.lookup("CQA", "none", 0.0, "success_probability").mean
    with pytest.raises(ValueError):
        sweep_gamma(cfg.replace(gammas=(0.1,)))


def test_success_scatter(tmp_path):
    cfg = ExperimentConfig(instances=2, channels=("phase_flip",), gammas=(0.01,), ground_fidelity=False,
                           output_dir=str(tmp_path), **SMALL)
    rows = success_scatter(cfg)
    assert len(rows) == 2 and all(0 <= r["success_cqa"] <= 1 for r in rows)


def test_convergence_check_small(tmp_path):
    cfg = ExperimentConfig(instances=1, channels=("depolarizing",), gammas=(0.01,), output_dir=str(tmp_path),
                           n=4, steps=1000, record_every=100)
    rows = convergence_check(cfg)
    assert rows and all(r["passed"] for r in rows)
    assert {r["observable"] for r in rows} >= {"solution_fidelity", "projection_fidelity", "invariants"}


def test_presets():
    proto, cfg = preset("fig1_3", gamma=0.01)
    assert proto == "run" and (cfg.n, cfg.instances, cfg.T, cfg.alpha, cfg.alpha_ini) == (8, 100, 20.0, 8.0, 100.0)
    assert cfg.gammas == (0.01,)
    with pytest.raises(ValueError, match="gamma"):
        preset("fig1_3")
    proto, cfg = preset("fig6_desk")
    assert proto == "sweep-gamma" and cfg.n == 6 and cfg.instances == 20
    assert cfg.gammas == (0.0, 1e-3, 1e-2, 1e-1)
    assert preset("fig5")[0] == "gap-vs-fidelity"
    assert preset("fig4_desk", gamma=0.1)[0] == "scatter"
    with pytest.raises(KeyError):
        preset("fig7")


def test_gap_vs_fidelity_degenerate_sector_is_undefined(tmp_path):
    # K4: every balanced split cuts 4 edges, so the sector problem has no gap
    cfg = ExperimentConfig(instances=1, edge_prob=1.0, output_dir=str(tmp_path), **SMALL)
    row = gap_vs_fidelity(cfg, gap_samples=21)[0]
    assert row["gap_ratio"] == "undefined" and math.isnan(row["min_gap_a"])
    assert row["success_a"] == pytest.approx(1.0)
