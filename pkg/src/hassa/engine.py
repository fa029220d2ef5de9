"""Stochastic simulated annealing with integral stochastic p-bits.

Every cycle all spins update synchronously::

    I_i      = h_i + sum_j J_ij m_j + n_rnd * r_i + itanh_i
    itanh_i' = clamp(I_i, -I0, I0 - 1)          # saturating up/down counter
    m_i'     = +1 if itanh_i' >= 0 else -1

``I0`` follows the staircase of :class:`~hassa.schedule.ScheduleConfig` and
restarts at ``i0_min`` every iteration. A trial is ``m_shot`` iterations.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Callable, Optional

import numpy as np

from . import _kernels
from .ising import IsingModel, SpinState, WeightedGraph, as_spins, hamiltonian
from .rng import XorShift32
from .schedule import ScheduleConfig
from .trace import (
    StoragePolicy,
    TraceStore,
    TrialResult,
    best_solution,
    lowest_energy,
    store_mask,
)


class Boundary(str, Enum):
    """What happens to the counters when ``I0`` drops back to ``i0_min``."""

    CLAMP = "clamp"
    CARRY = "carry"
    RESET = "reset"


class Init(str, Enum):
    ZERO = "zero"
    RANDOM = "random"


@dataclass
class PbitArray:
    itanh: np.ndarray
    m: np.ndarray

    @classmethod
    def zeros(cls, n: int) -> "PbitArray":
        return cls(np.zeros(n, dtype=np.int64), np.ones(n, dtype=np.int8))

    @classmethod
    def random(cls, n: int, rng: XorShift32) -> "PbitArray":
        # counters at 0 / -1 give each spin a random sign inside any I0 >= 1 window
        signs = rng.noise_signs(n)
        itanh = np.where(signs > 0, 0, -1).astype(np.int64)
        return cls(itanh, signs.copy())

    @property
    def n_spins(self) -> int:
        return int(self.m.size)

    def copy(self) -> "PbitArray":
        return PbitArray(self.itanh.copy(), self.m.copy())


@dataclass(frozen=True)
class CycleReport:
    cycle: int
    i0: int
    energy: int
    stored: bool
    state: SpinState


Observer = Callable[[CycleReport], None]


def local_field(model: IsingModel, state, i: int) -> int:
    m = as_spins(state, model.n_spins).astype(np.int64)
    csr = model.csr
    lo, hi = csr.indptr[i], csr.indptr[i + 1]
    return int(model.h[i] + csr.data[lo:hi] @ m[csr.indices[lo:hi]])


def step(model: IsingModel, pbits: PbitArray, i0: int, n_rnd: int, signs) -> PbitArray:
    """One clock cycle for every spin; returns the next array, input untouched."""
    signs = np.asarray(signs)
    if signs.shape != (pbits.n_spins,):
        raise ValueError("need exactly one noise sign per spin")
    if i0 < 1:
        raise ValueError("I0 must be at least 1")
    field = model.h + model.csr @ pbits.m.astype(np.int64)
    acc = field + n_rnd * signs.astype(np.int64) + pbits.itanh
    itanh = np.clip(acc, -i0, i0 - 1)
    m = np.where(itanh >= 0, 1, -1).astype(np.int8)
    return PbitArray(itanh, m)


def apply_boundary(pbits: PbitArray, i0: int, boundary: Boundary) -> None:
    boundary = Boundary(boundary)
    if boundary is Boundary.CLAMP:
        np.clip(pbits.itanh, -i0, i0 - 1, out=pbits.itanh)
    elif boundary is Boundary.RESET:
        pbits.itanh[:] = 0
        pbits.m[:] = 1


class _Csr:
    """Contiguous int64 arrays the kernels expect."""

    def __init__(self, model: IsingModel):
        csr = model.csr
        self.indptr = csr.indptr.astype(np.int64)
        self.indices = csr.indices.astype(np.int64)
        self.data = csr.data.astype(np.int64)
        self.h = model.h.astype(np.int64)
        self.pair_i = model.pair_i
        self.pair_j = model.pair_j
        self.pair_J = model.pair_J


def _iterate_numpy(model, pbits, rng, i0_seq, n_rnd, rows, energies, want_energy, check):
    for t, i0 in enumerate(i0_seq):
        signs = rng.noise_signs(pbits.n_spins)
        nxt = step(model, pbits, int(i0), n_rnd, signs)
        if check:
            _check_counters(nxt, int(i0), t)
        pbits.itanh[:] = nxt.itanh
        pbits.m[:] = nxt.m
        rows[t] = np.packbits(pbits.m > 0, bitorder="little")
        if want_energy:
            energies[t] = hamiltonian(model, pbits.m)


def _check_counters(pbits: PbitArray, i0: int, where) -> None:
    if pbits.itanh.min() < -i0 or pbits.itanh.max() > i0 - 1:
        raise AssertionError(f"counter left [{-i0}, {i0 - 1}] at {where}")
    if not np.array_equal(pbits.m, np.where(pbits.itanh >= 0, 1, -1)):
        raise AssertionError(f"spin output disagrees with counter sign at {where}")


def run_trial(
    model: IsingModel,
    config: ScheduleConfig,
    seed: int,
    store: Optional[TraceStore] = None,
    observer: Optional[Observer] = None,
    *,
    graph: Optional[WeightedGraph] = None,
    record_energy: bool = False,
    boundary: Boundary = Boundary.CLAMP,
    init: Init = Init.ZERO,
    backend: str = "numba",
    check_invariants: bool = False,
) -> TrialResult:
    """Run ``config.m_shot`` iterations from a fresh p-bit array.

    Snapshots go to ``store`` according to its policy (a bounded
    max-temperature store is created if none is given). The answer is the
    best stored snapshot: highest cut when ``graph`` is given, otherwise
    lowest energy. Cycles are numbered from 0; cycle ``t`` is the state
    produced by the ``t``-th update.
    """
    n = model.n_spins
    if graph is not None and graph.n_vertices != n:
        raise ValueError("graph and model sizes differ")
    if store is None:
        store = TraceStore(n, StoragePolicy.MAX_TEMP_ONLY)
    if store.width_bits != n:
        raise ValueError(f"store width {store.width_bits} != {n} spins")
    if backend not in ("numba", "numpy"):
        raise ValueError(f"unknown backend {backend!r}")

    rng = XorShift32(seed)
    pbits = PbitArray.random(n, rng) if Init(init) is Init.RANDOM else PbitArray.zeros(n)
    i0_seq = np.ascontiguousarray(config.i0_sequence)
    cpi = i0_seq.size
    mask = store_mask(store.policy, config)
    stored_idx = np.flatnonzero(mask)
    want_energy = record_energy or observer is not None

    rows = np.zeros((cpi, store.row_bytes), dtype=np.uint8)
    energies = np.zeros(cpi, dtype=np.int64)
    series = np.zeros(config.total_cycles, dtype=np.int64) if want_energy else None
    csr = _Csr(model) if backend == "numba" else None
    rng_cell = np.zeros(1, dtype=np.int64)

    for it in range(config.m_shot):
        if it > 0:
            apply_boundary(pbits, int(i0_seq[0]), boundary)
        if backend == "numba":
            rng_cell[0] = rng.state
            _kernels.ssa_cycles(
                csr.indptr, csr.indices, csr.data, csr.h, pbits.itanh, pbits.m,
                rng_cell, i0_seq, int(config.n_rnd), rows, energies, want_energy,
                csr.pair_i, csr.pair_j, csr.pair_J,
            )
            rng.state = int(rng_cell[0])
        else:
            _iterate_numpy(model, pbits, rng, i0_seq, int(config.n_rnd), rows, energies,
                           want_energy, check_invariants)
        if check_invariants:
            _check_counters(pbits, int(i0_seq[-1]), f"end of iteration {it}")

        offset = it * cpi
        if want_energy:
            series[offset : offset + cpi] = energies
        if observer is not None:
            for t in range(cpi):
                observer(CycleReport(offset + t, int(i0_seq[t]), int(energies[t]),
                                     bool(mask[t]), SpinState.from_packed(rows[t], n)))
        store.push_rows(stored_idx + offset, rows[stored_idx])

    if graph is not None:
        cut, state, cycle = best_solution(store, graph)
        energy = hamiltonian(model, state)
    else:
        energy, state, cycle = lowest_energy(store, model)
        cut = None
    return TrialResult(
        best_energy=energy,
        best_state=state,
        best_cycle=cycle,
        cycles_run=config.total_cycles,
        best_cut=cut,
        stored_snapshots=len(store),
        stored_bits=store.stored_bits,
        seed=seed,
        final_state=SpinState.from_spins(pbits.m),
        energy_series=series,
    )
