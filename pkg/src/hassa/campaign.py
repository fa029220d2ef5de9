"""Multi-trial campaigns and their CSV/JSON outputs."""

from __future__ import annotations

import csv
import io
import json
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from enum import Enum
from pathlib import Path
from typing import Optional

import numpy as np

from .engine import Boundary, Init, run_trial
from .instances import generate_king, read_gset, toroidal_grid
from .ising import WeightedGraph, maxcut_to_ising
from .rng import derive_seed
from .sa import SaSchedule, sa_run
from .schedule import DEFAULT_CONFIG, Mode, ScheduleConfig
from .trace import (
    DEFAULT_CAPACITY_BITS,
    DEFAULT_MAX_DEPTH,
    StoragePolicy,
    TraceStore,
    TrialResult,
)

VERSION = "0.1.0"


class Algorithm(str, Enum):
    HA_SSA = "hassa"
    SSA = "ssa"
    SA = "sa"


def load_instance(spec: str) -> tuple[WeightedGraph, dict]:
    """Read a G-set file, or build ``king:RxC:SEED`` / ``torus:RxC:SEED``."""
    kind, _, rest = spec.partition(":")
    if kind in ("king", "torus") and rest:
        shape, _, seed = rest.partition(":")
        rows, cols = (int(v) for v in shape.lower().split("x"))
        seed = int(seed or 0)
        gen = generate_king if kind == "king" else toroidal_grid
        return gen(rows, cols, seed), {"generator": kind, "rows": rows, "cols": cols, "seed": seed}
    path = Path(spec)
    if not path.is_file():
        raise FileNotFoundError(f"instance file not found: {spec}")
    return read_gset(path), {"path": str(path)}


@dataclass
class CampaignSpec:
    instance: str
    algorithm: Algorithm = Algorithm.HA_SSA
    config: ScheduleConfig = DEFAULT_CONFIG
    sa: SaSchedule = field(default_factory=SaSchedule)
    base_seed: int = 1
    out_dir: Optional[str] = None
    emit_series: bool = False
    policy: Optional[StoragePolicy] = None
    capacity_bits: Optional[int] = DEFAULT_CAPACITY_BITS
    max_depth: Optional[int] = DEFAULT_MAX_DEPTH
    boundary: Boundary = Boundary.CLAMP
    init: Init = Init.ZERO
    workers: Optional[int] = None
    dump_traces: bool = False

    def __post_init__(self):
        self.algorithm = Algorithm(self.algorithm)
        if self.policy is None:
            self.policy = (
                StoragePolicy.FULL_TRACE if self.algorithm is Algorithm.SSA else StoragePolicy.MAX_TEMP_ONLY
            )
        self.policy = StoragePolicy(self.policy)

    @property
    def trials(self) -> int:
        return self.config.trials

    def metadata(self, graph: WeightedGraph, source: dict) -> dict:
        meta = {
            "artifact_version": VERSION,
            "instance": self.instance,
            "instance_source": source,
            "n_vertices": graph.n_vertices,
            "n_edges": graph.n_edges,
            "total_weight": graph.total_weight,
            "algorithm": self.algorithm.value,
            "trials": self.trials,
            "base_seed": self.base_seed,
        }
        if self.algorithm is Algorithm.SA:
            meta["sa_schedule"] = self.sa.to_dict()
        else:
            meta["config"] = self.config.to_dict()
            meta["policy"] = self.policy.value
            meta["capacity_bits"] = self.capacity_bits
            meta["max_depth"] = self.max_depth
            meta["boundary"] = Boundary(self.boundary).value
            meta["init"] = Init(self.init).value
        return meta


@dataclass
class CampaignResult:
    spec: CampaignSpec
    graph: WeightedGraph
    metadata: dict
    trials: list[TrialResult]
    wall_time_s: float
    mean_series: Optional[np.ndarray] = None
    level_series: Optional[np.ndarray] = None

    @property
    def cuts(self) -> list[int]:
        return [t.best_cut for t in self.trials]

    @property
    def best_cut(self) -> int:
        return max(self.cuts)

    @property
    def average_cut(self) -> float:
        return float(np.mean(self.cuts))

    @property
    def best_trial(self) -> TrialResult:
        cuts = self.cuts
        return self.trials[cuts.index(max(cuts))]


def _one_trial(spec: CampaignSpec, graph, model, k: int) -> TrialResult:
    seed = derive_seed(spec.base_seed, k)
    if spec.algorithm is Algorithm.SA:
        return sa_run(model, spec.sa, seed, graph=graph, record_energy=spec.emit_series)
    store = TraceStore(graph.n_vertices, spec.policy, spec.capacity_bits, spec.max_depth)
    result = run_trial(
        model, spec.config, seed, store, graph=graph, record_energy=spec.emit_series,
        boundary=spec.boundary, init=spec.init,
    )
    if spec.dump_traces and spec.out_dir:
        store.dump_binary(Path(spec.out_dir) / f"trace_{k:04d}.bin")
    return result


def run_campaign(spec: CampaignSpec, graph: Optional[WeightedGraph] = None) -> CampaignResult:
    """Run every trial (threads; the kernels release the GIL) and write outputs if ``out_dir`` is set."""
    source = {"object": True}
    if graph is None:
        graph, source = load_instance(spec.instance)
    model = maxcut_to_ising(graph)
    if spec.out_dir:
        Path(spec.out_dir).mkdir(parents=True, exist_ok=True)
    workers = spec.workers or min(os.cpu_count() or 1, spec.trials)
    start = time.perf_counter()
    if workers <= 1:
        trials = [_one_trial(spec, graph, model, k) for k in range(spec.trials)]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            trials = list(pool.map(lambda k: _one_trial(spec, graph, model, k), range(spec.trials)))
    wall = time.perf_counter() - start

    mean_series = level_series = None
    if spec.emit_series:
        mean_series = np.sum([t.energy_series for t in trials], axis=0) / len(trials)
        if spec.algorithm is Algorithm.SA:
            level_series = spec.sa.temperatures()
        else:
            level_series = np.tile(spec.config.i0_sequence, spec.config.m_shot)
    result = CampaignResult(spec, graph, spec.metadata(graph, source), trials, wall, mean_series, level_series)
    if spec.out_dir:
        write_outputs(result, Path(spec.out_dir))
    return result


def _comment_block(meta: dict) -> str:
    lines = [f"# {k}: {json.dumps(v, sort_keys=True)}" for k, v in meta.items()]
    return "\n".join(lines) + "\n"


def summary_csv(result: CampaignResult) -> str:
    buf = io.StringIO()
    buf.write(_comment_block(result.metadata))
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["trial", "seed", "best_cut", "best_energy", "best_cycle", "stored_snapshots", "stored_bits"])
    for k, t in enumerate(result.trials):
        w.writerow([k, t.seed, t.best_cut, t.best_energy, t.best_cycle, t.stored_snapshots, t.stored_bits])
    return buf.getvalue()


def series_csv(result: CampaignResult) -> str:
    buf = io.StringIO()
    buf.write(_comment_block(result.metadata))
    level = "temperature" if result.spec.algorithm is Algorithm.SA else "i0"
    buf.write(f"cycle,{level},mean_energy\n")
    for t, (lv, e) in enumerate(zip(result.level_series, result.mean_series)):
        lv_txt = repr(float(lv)) if level == "temperature" else str(int(lv))
        buf.write(f"{t},{lv_txt},{e:.4f}\n")
    return buf.getvalue()


def write_outputs(result: CampaignResult, out: Path) -> None:
    (out / "summary.csv").write_text(summary_csv(result))
    best = result.best_trial
    summary = dict(result.metadata)
    summary.update(
        best_cut=result.best_cut,
        average_cut=result.average_cut,
        cuts=result.cuts,
        stored_bits=[t.stored_bits for t in result.trials],
        wall_time_s=result.wall_time_s,
    )
    (out / "summary.json").write_text(json.dumps(summary, indent=2, sort_keys=True) + "\n")
    lines = [f"# best cut {result.best_cut} (trial seed {best.seed})"]
    lines += ["+1" if s > 0 else "-1" for s in best.best_state.spins]
    (out / "best_state.txt").write_text("\n".join(lines) + "\n")
    if result.mean_series is not None:
        (out / "series.csv").write_text(series_csv(result))


def with_trials(config: ScheduleConfig, trials: int) -> ScheduleConfig:
    return replace(config, trials=trials)


def default_mode(algorithm: Algorithm) -> tuple[Mode, object]:
    """SSA uses the divide-by-ratio schedule, HA-SSA the equivalent shift."""
    if Algorithm(algorithm) is Algorithm.SSA:
        return Mode.SSA_RATIO, "0.5"
    return Mode.HA_SHIFT, 1
