"""Batch protocol: instances x methods x channels x gammas, aggregation and outputs.

Every output file name carries the first 12 hex digits of the config hash; the
manifest holds the full hash, the config and per-run status. The hash covers
everything that changes results, so ``output_dir`` and ``workers`` are excluded.
"""

from __future__ import annotations

import csv
import dataclasses
import hashlib
import json
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path

import numpy as np

from ._version import __version__
from .dynamics import (
    NOISE_KINDS,
    DensityMatrix,
    IntegratorConfig,
    NoiseChannel,
    RunRecord,
    run,
)
from .hamiltonians import (
    DEFAULT_ALPHA,
    DEFAULT_ALPHA_INI,
    DEFAULT_T,
    METHODS,
    MethodConfig,
    initial_state,
    make_schedule,
)
from .instances import brute_force_solve, random_graph
from .metrics import gap_scan, success_probability, trajectory_observers
from .subspace import enumerate_sector

log = logging.getLogger(__name__)

AGGREGATE_HEADER = ("method", "channel", "gamma", "time", "observable", "mean", "variance", "count")
DEFAULT_BUDGET = 2e9
CONVERGENCE_TOL = 1e-6
# integrator health series; checked as invariants, not compared across step sizes
DIAGNOSTICS = ("trace_drift", "min_eigenvalue", "hermitian_fix")
_NOT_HASHED = ("output_dir", "workers")


class BudgetExceededError(ValueError):
    pass


@dataclass(frozen=True)
class ExperimentConfig:
    n: int = 8
    instances: int = 100
    base_seed: int = 0
    edge_prob: float = 0.5
    T: float = DEFAULT_T
    alpha: float = DEFAULT_ALPHA
    alpha_ini: float = DEFAULT_ALPHA_INI
    c: int = 0
    boundary: str = "ring"
    channels: tuple[str, ...] = ("none",)
    gammas: tuple[float, ...] = (0.0,)
    steps: int = 2000
    record_every: int = 20
    methods: tuple[str, ...] = ("PQA", "CQA")
    ground_fidelity: bool = True
    save_states: bool = False
    budget: float = DEFAULT_BUDGET
    output_dir: str = "results"
    workers: int = 1

    def __post_init__(self):
        # normalise list inputs (JSON, CLI) so the config stays hashable
        for name in ("channels", "gammas", "methods"):
            object.__setattr__(self, name, tuple(getattr(self, name)))
        object.__setattr__(self, "gammas", tuple(float(g) for g in self.gammas))
        if self.n < 2:
            raise ValueError("n must be >= 2")
        if self.instances < 1:
            raise ValueError("instances must be >= 1")
        if not self.gammas or any(g < 0 for g in self.gammas):
            raise ValueError("gammas must be a nonempty list of nonnegative rates")
        if not self.channels or any(ch not in NOISE_KINDS for ch in self.channels):
            raise ValueError(f"channels must be drawn from {NOISE_KINDS}")
        if not self.methods or any(m not in METHODS for m in self.methods):
            raise ValueError(f"methods must be drawn from {METHODS}")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")
        # fail early on bad operating points
        MethodConfig("PQA", self.alpha, self.alpha_ini, self.c, self.boundary)
        IntegratorConfig(self.steps, self.record_every)
        est = self.estimated_cost()
        if est > self.budget:
            raise BudgetExceededError(
                f"{len(self.run_keys())} runs at dim {2**self.n} cost ~{est:.3g} > budget {self.budget:.3g}"
            )

    def run_keys(self) -> list[tuple[int, str, str, float]]:
        """Every (instance, method, channel, gamma) cell; channel 'none' has gamma 0 only."""
        keys = []
        for k in range(self.instances):
            for m in self.methods:
                for ch in self.channels:
                    for g in ((0.0,) if ch == "none" else self.gammas):
                        keys.append((k, m, ch, g))
        return keys

    def estimated_cost(self) -> float:
        """Run count x dim^2: the unit of work of one density-matrix step."""
        return float(len(self.run_keys())) * 4.0**self.n

    def hashed_fields(self) -> dict:
        d = dataclasses.asdict(self)
        for k in _NOT_HASHED:
            d.pop(k)
        return d

    def config_hash(self) -> str:
        blob = json.dumps(_jsonable(self.hashed_fields()), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()

    def replace(self, **kw) -> "ExperimentConfig":
        return dataclasses.replace(self, **kw)

    @classmethod
    def from_dict(cls, d: dict) -> "ExperimentConfig":
        known = {f.name for f in dataclasses.fields(cls)}
        unknown = set(d) - known
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        return cls(**d)

    @classmethod
    def from_json(cls, path) -> "ExperimentConfig":
        with open(path) as fh:
            return cls.from_dict(json.load(fh))


# --- serialization ---------------------------------------------------------


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, np.ndarray):
        return _jsonable(x.tolist())
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (np.floating,)):
        return float(x)
    if isinstance(x, (complex, np.complexfloating)):
        return {"real": float(x.real), "imag": float(x.imag)}
    return x


def record_to_dict(rec: RunRecord, include_state: bool = True) -> dict:
    d = {
        "status": rec.status,
        "failure": rec.failure,
        "metadata": _jsonable(rec.metadata),
        "times": rec.times.tolist(),
        "observables": {k: v.tolist() for k, v in rec.observables.items()},
        "final_state": None,
    }
    if include_state and rec.final_state is not None:
        m = rec.final_state.matrix
        d["final_state"] = {"time": rec.final_state.time, "real": m.real.tolist(), "imag": m.imag.tolist()}
    return _jsonable(d)


def record_from_dict(d: dict) -> RunRecord:
    st = d.get("final_state")
    final = None
    if st is not None:
        final = DensityMatrix(np.array(st["real"]) + 1j * np.array(st["imag"]), st["time"])
    return RunRecord(
        times=np.array(d["times"], dtype=float),
        observables={k: np.array(v, dtype=float) for k, v in d["observables"].items()},
        final_state=final,
        metadata=d["metadata"],
        status=d["status"],
        failure=d["failure"],
    )


def emit_json(record: RunRecord, path, include_state: bool = True) -> None:
    """Write a RunRecord as JSON.

    Python's float repr is the shortest string that round-trips, so no digits are
    lost; complex entries are stored as separate real and imaginary arrays.
    """
    _write(path, json.dumps(record_to_dict(record, include_state), indent=1, allow_nan=True))


def load_json(path) -> RunRecord:
    try:
        with open(path) as fh:
            return record_from_dict(json.load(fh))
    except OSError as e:
        raise OSError(f"cannot read run record {path}: {e}") from e


def _write(path, text: str) -> None:
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text)
    except OSError as e:
        raise OSError(f"cannot write {path}: {e}") from e


def _fmt(v) -> str:
    if isinstance(v, (float, np.floating)):
        return format(float(v), ".17g")
    return str(v)


def emit_csv(rows, path, header=AGGREGATE_HEADER) -> None:
    """Rows are mappings or sequences in header order; floats get 17 significant digits."""
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(header)
            for r in rows:
                vals = [r.get(h, "") for h in header] if isinstance(r, dict) else list(r)
                w.writerow([_fmt(v) for v in vals])
    except OSError as e:
        raise OSError(f"cannot write {path}: {e}") from e


# --- aggregation -----------------------------------------------------------


@dataclass
class AggregateRow:
    method: str
    channel: str
    gamma: float
    time: float | str  # sample time, or "final"
    observable: str
    mean: float
    variance: float
    count: int

    def as_tuple(self) -> tuple:
        return tuple(getattr(self, h) for h in AGGREGATE_HEADER)


@dataclass
class AggregateTable:
    """Mean and population variance across instances, per (method, channel, gamma, time, observable).

    ``count`` is the number of successful runs; failures are counted in
    ``failed`` and also appear as ``failed_runs`` rows, so nothing disappears.
    """

    rows: list[AggregateRow] = field(default_factory=list)
    failed: dict[tuple[str, str, float], int] = field(default_factory=dict)
    estimator: str = "population variance (ddof=0)"

    def lookup(self, method: str, channel: str, gamma: float, observable: str,
               time="final") -> AggregateRow:
        for r in self.rows:
            if (r.method, r.channel, r.gamma, r.observable) == (method, channel, gamma, observable) \
                    and r.time == time:
                return r
        raise KeyError((method, channel, gamma, observable, time))

    def emit(self, path) -> None:
        emit_csv([r.as_tuple() for r in self.rows], path)


def aggregate(records: dict[tuple[int, str, str, float], RunRecord],
              successes: dict[tuple[int, str, str, float], float]) -> AggregateTable:
    """Deterministic fold: cells and instances are visited in sorted order."""
    table = AggregateTable()
    cells: dict[tuple[str, str, float], list[int]] = {}
    for k, m, ch, g in sorted(records):
        cells.setdefault((m, ch, g), []).append(k)
    for (m, ch, g) in sorted(cells):
        ok = [records[(k, m, ch, g)] for k in cells[(m, ch, g)] if not records[(k, m, ch, g)].failed]
        nfail = len(cells[(m, ch, g)]) - len(ok)
        table.failed[(m, ch, g)] = nfail
        if ok:
            times = ok[0].times
            for name in sorted(ok[0].observables):
                stack = np.array([r.observables[name] for r in ok])
                for j, t in enumerate(times):
                    col = stack[:, j]
                    table.rows.append(AggregateRow(m, ch, g, float(t), name, float(col.mean()),
                                                   float(col.var()), len(ok)))
            sp = np.array([successes[(k, m, ch, g)] for k in cells[(m, ch, g)]
                           if not records[(k, m, ch, g)].failed])
            table.rows.append(AggregateRow(m, ch, g, "final", "success_probability",
                                           float(sp.mean()), float(sp.var()), len(ok)))
        table.rows.append(AggregateRow(m, ch, g, "final", "failed_runs", float(nfail), 0.0,
                                       len(cells[(m, ch, g)])))
    return table


# --- execution -------------------------------------------------------------


@lru_cache(maxsize=8)
def _instance(n: int, edge_prob: float, seed: int, c: int):
    g = random_graph(n, edge_prob, seed)
    return g, brute_force_solve(g, c)


@lru_cache(maxsize=4)
def _method_context(cfg: ExperimentConfig, k: int, method: str):
    g, sol = _instance(cfg.n, cfg.edge_prob, cfg.base_seed + k, cfg.c)
    mc = MethodConfig(method, cfg.alpha, cfg.alpha_ini, cfg.c, cfg.boundary)
    sch = make_schedule(mc, g, cfg.T)
    sector = enumerate_sector(cfg.n, cfg.c)
    # observers (and their ground-space caches) are shared by all runs of this schedule
    obs = trajectory_observers(sch, method, sol, sector, ground=cfg.ground_fidelity)
    return g, sol, sch, initial_state(mc, cfg.n), obs


def execute_run(cfg: ExperimentConfig, key: tuple[int, str, str, float],
                ic: IntegratorConfig | None = None) -> tuple[RunRecord, float]:
    """One cell of the protocol; returns the record and its success probability (nan if failed)."""
    k, method, channel, gamma = key
    g, sol, sch, psi0, obs = _method_context(cfg, k, method)
    ic = ic or IntegratorConfig(cfg.steps, cfg.record_every)
    meta = {
        "instance": k,
        "seed": cfg.base_seed + k,
        "method": method,
        "edges": [list(e) for e in g.edges],
        "optimal_cut": sol.optimal_cut,
        "optimal_states": sorted(sol.optimal_states),
        "solution_fidelity_definition": "sum over all optimal constraint-satisfying states",
    }
    ch = NoiseChannel(channel, gamma)
    rec = run(sch, psi0, ch, ic, obs, meta)
    # the gamma = 0 cell of a noisy channel is computed on the noiseless path; relabel it
    rec.metadata["channel"], rec.metadata["gamma"] = channel, float(gamma)
    succ = float("nan") if rec.failed else success_probability(rec, sol)
    return rec, succ


def _effective(key):
    # gamma = 0 is the noiseless run whatever the channel label
    k, m, ch, g = key
    return (k, m, "none", 0.0) if g == 0 else key


def _compute(cfg: ExperimentConfig, keys) -> dict:
    unique = sorted({_effective(key) for key in keys})
    if cfg.workers > 1 and len(unique) > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            futs = {u: pool.submit(execute_run, cfg, u) for u in unique}
            done = {u: f.result() for u, f in futs.items()}
    else:
        done = {u: execute_run(cfg, u) for u in unique}
    out = {}
    for key in keys:
        rec, succ = done[_effective(key)]
        if key != _effective(key):
            rec = dataclasses.replace(rec, metadata={**rec.metadata, "channel": key[2]})
        out[key] = (rec, succ)
    return out


def _tag(cfg: ExperimentConfig) -> str:
    return cfg.config_hash()[:12]


def _run_filename(tag: str, key) -> str:
    k, m, ch, g = key
    return f"run_{tag}_{m}_{ch}_g{format(g, '.6g')}_i{k:03d}.json"


@dataclass
class ExperimentResult:
    table: AggregateTable
    records: dict
    successes: dict
    manifest: dict
    paths: dict

    @property
    def any_failed(self) -> bool:
        return any(r.failed for r in self.records.values())


def _manifest(cfg: ExperimentConfig, kind: str, statuses: list, extra: dict | None = None) -> dict:
    m = {
        "kind": kind,
        "config_hash": cfg.config_hash(),
        "config": _jsonable(cfg.hashed_fields()),
        "version": __version__,
        "variance_estimator": "population (ddof=0)",
        "runs": statuses,
    }
    m.update(extra or {})
    return m


def run_experiment(cfg: ExperimentConfig, write: bool = True) -> ExperimentResult:
    """Run every (instance, method, channel, gamma) cell and aggregate across instances."""
    keys = cfg.run_keys()
    done = _compute(cfg, keys)
    records = {key: rec for key, (rec, _) in done.items()}
    successes = {key: s for key, (_, s) in done.items()}
    table = aggregate(records, successes)
    tag = _tag(cfg)
    statuses = [
        {"instance": k, "method": m, "channel": ch, "gamma": g, "status": records[(k, m, ch, g)].status,
         "failure": records[(k, m, ch, g)].failure, "file": _run_filename(tag, (k, m, ch, g))}
        for (k, m, ch, g) in sorted(records)
    ]
    for s in statuses:
        if s["status"] != "ok":
            log.error("run %s failed: %s", s["file"], s["failure"])
    manifest = _manifest(cfg, "run", statuses)
    paths = {}
    if write:
        out = Path(cfg.output_dir)
        for key in sorted(records):
            emit_json(records[key], out / "runs" / _run_filename(tag, key), cfg.save_states)
        paths["aggregate"] = out / f"aggregate_{tag}.csv"
        table.emit(paths["aggregate"])
        paths["manifest"] = out / f"manifest_{tag}.json"
        _write(paths["manifest"], json.dumps(_jsonable(manifest), indent=1, sort_keys=True))
    return ExperimentResult(table, records, successes, manifest, paths)


# --- figure-level protocols ------------------------------------------------

GAP_HEADER = ("instance", "seed", "method_a", "method_b", "min_gap_a", "min_gap_b", "success_a",
              "success_b", "gap_ratio", "fidelity_ratio", "argmin_a", "argmin_b", "leak_final_a",
              "leak_final_b")
UNDEFINED = "undefined"


def _ratio(a: float, b: float):
    if math.isnan(a) or math.isnan(b) or not b > 0:
        return UNDEFINED
    return a / b


def _min_gap(sch, sector, samples) -> tuple[float, float]:
    kw = {} if samples is None else {"samples": samples}
    try:
        scan = gap_scan(sch, sector, **kw)
    except ValueError:
        # every final level is optimal (e.g. all balanced cuts tie): no gap exists
        return math.nan, math.nan
    return scan.min_gap, scan.argmin_fraction


def gap_vs_fidelity(cfg: ExperimentConfig, pair: tuple[str, str] = ("CQA", "PQA"),
                    write: bool = True, gap_samples: int | None = None) -> list[dict]:
    """Per instance: minimum gaps and noiseless success of two methods, and their ratios.

    The CQA gap is taken inside the constraint sector, the PQA gap in the full
    space. Ratios with a zero denominator are reported as ``undefined``.
    """
    if set(cfg.channels) != {"none"}:
        raise ValueError("gap_vs_fidelity is a noiseless protocol; use channels=('none',)")
    cfg = cfg.replace(methods=tuple(dict.fromkeys(pair)), ground_fidelity=False)
    done = _compute(cfg, cfg.run_keys())
    sector = enumerate_sector(cfg.n, cfg.c)
    rows = []
    for k in range(cfg.instances):
        vals = {}
        for side, m in zip("ab", pair):
            _, _, sch, _, _ = _method_context(cfg, k, m)
            gap = _min_gap(sch, sector if m == "CQA" else None, gap_samples)
            rec, succ = done[(k, m, "none", 0.0)]
            vals[side] = (gap, succ, 1.0 - rec.final("projection_fidelity"))
        ((ga, xa), fa, la), ((gb, xb), fb, lb) = vals["a"], vals["b"]
        rows.append({
            "instance": k, "seed": cfg.base_seed + k, "method_a": pair[0], "method_b": pair[1],
            "min_gap_a": ga, "min_gap_b": gb, "success_a": fa, "success_b": fb,
            "gap_ratio": _ratio(ga, gb), "fidelity_ratio": _ratio(fa, fb),
            "argmin_a": xa, "argmin_b": xb, "leak_final_a": la, "leak_final_b": lb,
        })
    if write:
        tag = _tag(cfg)
        out = Path(cfg.output_dir)
        emit_csv(rows, out / f"gap_vs_fidelity_{tag}.csv", GAP_HEADER)
        statuses = [{"instance": k, "method": m, "status": done[(k, m, "none", 0.0)][0].status}
                    for k in range(cfg.instances) for m in cfg.methods]
        man = _manifest(cfg, "gap-vs-fidelity", statuses, {"pair": list(pair), "gap_mode": "final_manifold"})
        _write(out / f"manifest_{tag}.json", json.dumps(_jsonable(man), indent=1, sort_keys=True))
    return rows


SWEEP_HEADER = ("method", "channel", "gamma", "mean", "variance", "count", "failed")


def sweep_gamma(cfg: ExperimentConfig, write: bool = True) -> list[dict]:
    """Success probability per (method, channel, gamma); the grid must contain 0."""
    if 0.0 not in cfg.gammas:
        raise ValueError("a gamma sweep needs gamma = 0 in the grid as its noiseless reference")
    res = run_experiment(cfg, write=write)
    rows = []
    for m in cfg.methods:
        for ch in cfg.channels:
            for g in sorted((0.0,) if ch == "none" else cfg.gammas):
                try:
                    r = res.table.lookup(m, ch, g, "success_probability")
                except KeyError:  # every run of the cell failed
                    r = None
                rows.append({"method": m, "channel": ch, "gamma": g,
                             "mean": r.mean if r else float("nan"),
                             "variance": r.variance if r else float("nan"),
                             "count": r.count if r else 0, "failed": res.table.failed[(m, ch, g)]})
    if write:
        emit_csv(rows, Path(cfg.output_dir) / f"sweep_gamma_{_tag(cfg)}.csv", SWEEP_HEADER)
    return rows


SCATTER_HEADER = ("instance", "seed", "channel", "gamma", "success_pqa", "success_cqa")


def success_scatter(cfg: ExperimentConfig, write: bool = True) -> list[dict]:
    """Per-instance success of PQA against CQA for every channel and gamma."""
    cfg = cfg.replace(methods=("PQA", "CQA"))
    res = run_experiment(cfg, write=write)
    rows = []
    for k, m, ch, g in sorted(res.records):
        if m != "PQA":
            continue
        rows.append({"instance": k, "seed": cfg.base_seed + k, "channel": ch, "gamma": g,
                     "success_pqa": res.successes[(k, "PQA", ch, g)],
                     "success_cqa": res.successes[(k, "CQA", ch, g)]})
    if write:
        emit_csv(rows, Path(cfg.output_dir) / f"scatter_{_tag(cfg)}.csv", SCATTER_HEADER)
    return rows


CONVERGENCE_HEADER = ("instance", "method", "channel", "gamma", "observable", "max_abs_diff", "passed")


def convergence_check(cfg: ExperimentConfig, instance: int = 0, tol: float = CONVERGENCE_TOL,
                      write: bool = True) -> list[dict]:
    """Rerun each cell of one instance on a fine grid refined by exactly 2 and compare.

    The substep split of the base run is pinned, so doubling ``steps`` halves
    every integration step rather than being absorbed by the automatic split.
    Rows with observable ``invariants`` report the worst trace / Hermiticity /
    positivity margin over both runs (passed means within the run contract).
    """
    rows = []
    for key in [k for k in cfg.run_keys() if k[0] == instance]:
        base, _ = execute_run(cfg, key, IntegratorConfig(cfg.steps, cfg.record_every))
        sub = base.metadata["substeps"]
        fine, _ = execute_run(cfg, key, IntegratorConfig(2 * cfg.steps, 2 * cfg.record_every, substeps=sub))
        _, m, ch, g = key
        if base.failed or fine.failed:
            rows.append({"instance": instance, "method": m, "channel": ch, "gamma": g,
                         "observable": "run_status", "max_abs_diff": float("nan"), "passed": False})
            continue
        for name in sorted(base.observables):
            if name in DIAGNOSTICS:
                continue
            d = float(np.max(np.abs(base.observables[name] - fine.observables[name])))
            rows.append({"instance": instance, "method": m, "channel": ch, "gamma": g,
                         "observable": name, "max_abs_diff": d, "passed": d < tol})
        ok = all(
            r.observables["trace_drift"].max() < 1e-6
            and r.observables["hermitian_fix"].max() < 1e-10
            and r.observables["min_eigenvalue"].min() >= -1e-8
            for r in (base, fine)
        )
        rows.append({"instance": instance, "method": m, "channel": ch, "gamma": g,
                     "observable": "invariants", "max_abs_diff": 0.0, "passed": ok})
    if write:
        emit_csv(rows, Path(cfg.output_dir) / f"convergence_{_tag(cfg)}.csv", CONVERGENCE_HEADER)
    return rows


# --- presets ---------------------------------------------------------------

ALL_CHANNELS = ("phase_flip", "bit_flip", "depolarizing")
SWEEP_GRID = (0.0, 1e-3, 1e-2, 1e-1)

# name -> (protocol, config fields, needs an explicit gamma)
PRESETS = {
    "fig1_3": ("run", dict(n=8, instances=100, channels=ALL_CHANNELS), True),
    "fig4": ("scatter", dict(n=8, instances=100, channels=ALL_CHANNELS, ground_fidelity=False), True),
    "fig5": ("gap-vs-fidelity", dict(n=8, instances=100, channels=("none",)), False),
    "fig6": ("sweep-gamma", dict(n=8, instances=100, channels=ALL_CHANNELS, gammas=SWEEP_GRID,
                                 ground_fidelity=False, record_every=2000), False),
}
for _name in list(PRESETS):
    _proto, _fields, _needs = PRESETS[_name]
    PRESETS[_name + "_desk"] = (_proto, {**_fields, "n": 6, "instances": 20}, _needs)


def preset(name: str, gamma: float | None = None, **overrides) -> tuple[str, ExperimentConfig]:
    """Protocol name and config of a named preset.

    Presets for time-resolved figures take the noise rate as a required argument
    (one of 0, 1e-3, 1e-2, 1e-1 is a sensible choice).
    """
    if name not in PRESETS:
        raise KeyError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}")
    proto, fields, needs_gamma = PRESETS[name]
    fields = dict(fields)
    if needs_gamma:
        if gamma is None:
            raise ValueError(f"preset {name} needs an explicit gamma")
        fields["gammas"] = (gamma,)
    elif gamma is not None:
        raise ValueError(f"preset {name} fixes its own gamma grid")
    fields.update(overrides)
    return proto, ExperimentConfig(**fields)


PROTOCOLS = {
    "run": run_experiment,
    "gap-vs-fidelity": gap_vs_fidelity,
    "sweep-gamma": sweep_gamma,
    "scatter": success_scatter,
    "convergence-check": convergence_check,
}
