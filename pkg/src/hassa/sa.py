"""Single-flip Metropolis simulated annealing baseline."""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Optional

import numpy as np

from . import _kernels
from .engine import _Csr
from .ising import IsingModel, SpinState, WeightedGraph, cut_value, hamiltonian
from .rng import XorShift32
from .schedule import DEFAULT_CONFIG, ScheduleConfig
from .trace import TrialResult


class SaMode(str, Enum):
    GEOMETRIC_DECAY = "geometric"
    MIRRORED_SSA = "mirrored"


@dataclass(frozen=True)
class SaSchedule:
    """Temperature plan for the baseline.

    ``GEOMETRIC_DECAY`` interpolates log-linearly from ``t_start`` to ``t_end``
    over ``total_cycles``. ``MIRRORED_SSA`` uses ``T = 1 / I0`` of ``ssa``'s
    staircase, repeated every iteration. With ``sweep`` set, one cycle is
    ``n_spins`` proposals instead of one.
    """

    t_start: float = 10.0
    t_end: float = 1e-7
    total_cycles: int = 90_000
    mode: SaMode = SaMode.GEOMETRIC_DECAY
    ssa: ScheduleConfig = DEFAULT_CONFIG
    sweep: bool = False

    def __post_init__(self):
        object.__setattr__(self, "mode", SaMode(self.mode))
        if self.total_cycles < 1:
            raise ValueError("total_cycles must be positive")
        if not (self.t_start > 0 and self.t_end > 0):
            raise ValueError("temperatures must be positive")
        if self.t_end > self.t_start:
            raise ValueError("t_end must not exceed t_start")

    def temperatures(self) -> np.ndarray:
        cycles = np.arange(self.total_cycles, dtype=np.float64)
        if self.mode is SaMode.MIRRORED_SSA:
            seq = self.ssa.i0_sequence
            return 1.0 / seq[np.arange(self.total_cycles) % seq.size].astype(np.float64)
        if self.total_cycles == 1 or self.t_start == self.t_end:
            return np.full(self.total_cycles, self.t_start)
        frac = cycles / (self.total_cycles - 1)
        return self.t_start * (self.t_end / self.t_start) ** frac

    def to_dict(self) -> dict:
        d = {
            "t_start": self.t_start,
            "t_end": self.t_end,
            "total_cycles": self.total_cycles,
            "mode": self.mode.value,
            "sweep": self.sweep,
        }
        if self.mode is SaMode.MIRRORED_SSA:
            d["ssa"] = self.ssa.to_dict()
        return d


def sa_temperature(schedule: SaSchedule, cycle: int) -> float:
    if not 0 <= cycle < schedule.total_cycles:
        raise ValueError(f"cycle {cycle} outside schedule of {schedule.total_cycles}")
    if schedule.mode is SaMode.MIRRORED_SSA:
        seq = schedule.ssa.i0_sequence
        return 1.0 / float(seq[cycle % seq.size])
    if schedule.total_cycles == 1:
        return schedule.t_start
    return schedule.t_start * (schedule.t_end / schedule.t_start) ** (cycle / (schedule.total_cycles - 1))


def metropolis_accept(delta: int, temperature: float, rng: XorShift32) -> bool:
    """Downhill always; uphill with probability ``exp(-delta / T)``.

    A random word is consumed only for uphill moves.
    """
    if delta <= 0:
        return True
    return rng.uniform() < math.exp(-delta / temperature)


def _sa_python(model, m, rng, temps, per_cycle, energy, energies, check):
    csr = model.csr
    n = m.size
    best, best_cycle, best_m = energy, -1, m.copy()
    for t, temp in enumerate(temps):
        for _ in range(per_cycle):
            i = rng.below(n)
            lo, hi = csr.indptr[i], csr.indptr[i + 1]
            f = int(model.h[i]) + int(csr.data[lo:hi] @ m[csr.indices[lo:hi]].astype(np.int64))
            d = 2 * int(m[i]) * f
            if metropolis_accept(d, float(temp), rng):
                m[i] = -m[i]
                if check:
                    fresh = hamiltonian(model, m)
                    if fresh - energy != d:
                        raise AssertionError(f"incremental dE {d} != {fresh - energy} at cycle {t}")
                energy += d
                if energy < best:
                    best, best_cycle, best_m = energy, t, m.copy()
        energies[t] = energy
    return energy, best, best_cycle, best_m


def sa_run(
    model: IsingModel,
    schedule: SaSchedule,
    seed: int,
    observer: Optional[Callable[[int, float, int], None]] = None,
    *,
    graph: Optional[WeightedGraph] = None,
    initial=None,
    record_energy: bool = False,
    backend: str = "numba",
    check_delta: bool = False,
) -> TrialResult:
    """Anneal from a random state (or ``initial``) and return the best-ever state.

    ``observer`` receives ``(cycle, temperature, energy)`` after each cycle.
    ``check_delta`` recomputes the energy from scratch after every accepted
    move (python backend only).
    """
    n = model.n_spins
    rng = XorShift32(seed)
    if initial is None:
        m = rng.noise_signs(n)
    else:
        m = np.array(initial, dtype=np.int8)
        if m.shape != (n,):
            raise ValueError("initial state has the wrong length")
    temps = schedule.temperatures()
    per_cycle = n if schedule.sweep else 1
    energy = hamiltonian(model, m)
    energies = np.zeros(schedule.total_cycles, dtype=np.int64)

    if backend == "numba":
        csr = _Csr(model)
        cell = np.array([rng.state], dtype=np.int64)
        best_m = np.empty(n, dtype=np.int8)
        final, best, best_cycle = _kernels.sa_cycles(
            csr.indptr, csr.indices, csr.data, csr.h, m, cell, temps, per_cycle,
            energy, energies, best_m,
        )
        rng.state = int(cell[0])
    elif backend == "python":
        final, best, best_cycle, best_m = _sa_python(
            model, m, rng, temps, per_cycle, energy, energies, check_delta
        )
    else:
        raise ValueError(f"unknown backend {backend!r}")

    if observer is not None:
        for t in range(schedule.total_cycles):
            observer(t, float(temps[t]), int(energies[t]))
    best_state = SpinState.from_spins(best_m)
    return TrialResult(
        best_energy=int(best),
        best_state=best_state,
        best_cycle=int(best_cycle),
        cycles_run=schedule.total_cycles,
        best_cut=cut_value(graph, best_m) if graph is not None else None,
        seed=seed,
        final_state=SpinState.from_spins(m),
        energy_series=energies if (record_energy or observer is not None) else None,
    )
