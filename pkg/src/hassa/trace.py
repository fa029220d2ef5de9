"""Spin-state trace storage with exact memory accounting.

A :class:`TraceStore` models the on-chip FIFO that receives spin snapshots
while annealing runs. Each record costs exactly ``n_spins`` bits. Under the
full-trace policy every cycle is stored; under the max-temperature policy
only cycles spent at ``I0 == i0_max`` are. The final answer is extracted
afterwards by scoring every stored snapshot.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Optional

import numpy as np

from . import _kernels
from .ising import SpinLike, SpinState, WeightedGraph, IsingModel, as_spins
from .schedule import ScheduleConfig

# Board model: 13.2 Mbit of block RAM, at most 16,384 rows of 800 bits.
DEFAULT_CAPACITY_BITS = 13_200_000
DEFAULT_MAX_DEPTH = 16_384

_BIN_HEADER = struct.Struct("<QQ")


class StoragePolicy(str, Enum):
    FULL_TRACE = "full"
    MAX_TEMP_ONLY = "maxtemp"


class StoreOverflowError(RuntimeError):
    """Raised when a push would exceed the modeled memory."""

    def __init__(self, cycle: int, stored_bits: int, capacity_bits: int, depth: int | None = None):
        self.cycle = cycle
        self.stored_bits = stored_bits
        self.capacity_bits = capacity_bits
        self.depth = depth
        msg = (
            f"trace memory full at cycle {cycle}: {stored_bits} bits stored, "
            f"capacity {capacity_bits} bits"
        )
        if depth is not None:
            msg += f", depth limit {depth} rows"
        super().__init__(msg)


def should_store(policy: StoragePolicy, i0: int, i0_max: int) -> bool:
    if i0 > i0_max:
        raise ValueError(f"I0={i0} exceeds i0_max={i0_max}")
    if StoragePolicy(policy) is StoragePolicy.FULL_TRACE:
        return True
    return i0 == i0_max


def memory_bits_per_iteration(policy: StoragePolicy, config: ScheduleConfig, n_spins: int) -> int:
    if StoragePolicy(policy) is StoragePolicy.FULL_TRACE:
        return n_spins * config.steps_per_iteration * config.tau
    return n_spins * config.tau


def store_mask(policy: StoragePolicy, config: ScheduleConfig) -> np.ndarray:
    """Per-cycle write-enable over one iteration."""
    seq = config.i0_sequence
    if StoragePolicy(policy) is StoragePolicy.FULL_TRACE:
        return np.ones(seq.size, dtype=bool)
    return seq == config.i0_max


class TraceStore:
    """Append-only FIFO of packed spin snapshots.

    ``capacity_bits`` and ``max_depth`` may be ``None`` for an unbounded store.
    Pushing past either limit raises :class:`StoreOverflowError`; records are
    never evicted.
    """

    def __init__(
        self,
        width_bits: int,
        policy: StoragePolicy = StoragePolicy.MAX_TEMP_ONLY,
        capacity_bits: Optional[int] = DEFAULT_CAPACITY_BITS,
        max_depth: Optional[int] = DEFAULT_MAX_DEPTH,
    ):
        if width_bits < 1:
            raise ValueError("width must be at least one bit")
        self.width_bits = int(width_bits)
        self.policy = StoragePolicy(policy)
        self.capacity_bits = capacity_bits
        self.max_depth = max_depth
        self.row_bytes = (self.width_bits + 7) // 8
        self._rows = np.zeros((0, self.row_bytes), dtype=np.uint8)
        self._cycles = np.zeros(0, dtype=np.int64)
        self._count = 0

    @classmethod
    def unbounded(cls, width_bits: int, policy: StoragePolicy) -> "TraceStore":
        return cls(width_bits, policy, capacity_bits=None, max_depth=None)

    def __len__(self) -> int:
        return self._count

    @property
    def stored_bits(self) -> int:
        return self._count * self.width_bits

    @property
    def rows(self) -> np.ndarray:
        return self._rows[: self._count]

    @property
    def cycles(self) -> np.ndarray:
        return self._cycles[: self._count]

    def room(self) -> int | None:
        """How many more records fit, or ``None`` if unbounded."""
        limits = []
        if self.capacity_bits is not None:
            limits.append(self.capacity_bits // self.width_bits)
        if self.max_depth is not None:
            limits.append(self.max_depth)
        if not limits:
            return None
        return max(0, min(limits) - self._count)

    def _reserve(self, extra: int) -> None:
        need = self._count + extra
        if need <= self._rows.shape[0]:
            return
        cap = max(need, 2 * self._rows.shape[0], 64)
        rows = np.zeros((cap, self.row_bytes), dtype=np.uint8)
        rows[: self._count] = self._rows[: self._count]
        cyc = np.zeros(cap, dtype=np.int64)
        cyc[: self._count] = self._cycles[: self._count]
        self._rows, self._cycles = rows, cyc

    def _overflow(self, cycle: int) -> StoreOverflowError:
        return StoreOverflowError(
            int(cycle),
            self.stored_bits,
            self.capacity_bits if self.capacity_bits is not None else -1,
            self.max_depth,
        )

    def push(self, cycle: int, state: SpinLike) -> None:
        if isinstance(state, SpinState):
            if state.n != self.width_bits:
                raise ValueError(f"state width {state.n} != store width {self.width_bits}")
            row = np.frombuffer(state.bits, dtype=np.uint8)
        else:
            m = as_spins(state, self.width_bits)
            row = np.packbits(m > 0, bitorder="little")
        self.push_rows(np.array([cycle], dtype=np.int64), row[None, :])

    def push_rows(self, cycles: np.ndarray, rows: np.ndarray) -> None:
        """Append packed rows in order; on overflow, keep the ones that fit and raise."""
        rows = np.asarray(rows, dtype=np.uint8)
        if rows.ndim != 2 or rows.shape[1] != self.row_bytes:
            raise ValueError(f"rows must be (k, {self.row_bytes}) packed bytes")
        k = rows.shape[0]
        room = self.room()
        fit = k if room is None else min(k, room)
        self._reserve(fit)
        self._rows[self._count : self._count + fit] = rows[:fit]
        self._cycles[self._count : self._count + fit] = cycles[:fit]
        self._count += fit
        if fit < k:
            raise self._overflow(cycles[fit])

    def state(self, index: int) -> SpinState:
        return SpinState.from_packed(self._rows[index], self.width_bits)

    def spins(self, start: int = 0, stop: int | None = None) -> np.ndarray:
        """Unpacked ±1 matrix of records ``start:stop``."""
        stop = self._count if stop is None else min(stop, self._count)
        bits = np.unpackbits(self._rows[start:stop], axis=1, count=self.width_bits, bitorder="little")
        return (2 * bits.astype(np.int8) - 1).astype(np.int8)

    def dump_binary(self, path: str | Path) -> None:
        """Header ``<QQ`` (n_spins, records), packed rows, then ``<q`` cycle per record."""
        with open(path, "wb") as fh:
            fh.write(_BIN_HEADER.pack(self.width_bits, self._count))
            fh.write(np.ascontiguousarray(self.rows).tobytes())
            fh.write(self.cycles.astype("<i8").tobytes())

    @classmethod
    def load_binary(cls, path: str | Path, policy: StoragePolicy = StoragePolicy.MAX_TEMP_ONLY) -> "TraceStore":
        data = Path(path).read_bytes()
        n, count = _BIN_HEADER.unpack_from(data)
        store = cls.unbounded(n, policy)
        off = _BIN_HEADER.size
        nbytes = count * store.row_bytes
        rows = np.frombuffer(data, dtype=np.uint8, count=nbytes, offset=off).reshape(count, store.row_bytes)
        cycles = np.frombuffer(data, dtype="<i8", count=count, offset=off + nbytes)
        store.push_rows(cycles.astype(np.int64), rows)
        return store

    def dump_text(self, path: str | Path) -> None:
        """One line per record: the cycle, then each spin as ``+1``/``-1``."""
        with open(path, "w") as fh:
            fh.write(f"# n_spins={self.width_bits} records={self._count}\n")
            for k in range(self._count):
                m = self.spins(k, k + 1)[0]
                fh.write(str(int(self._cycles[k])) + " " + " ".join("+1" if s > 0 else "-1" for s in m) + "\n")


def _cuts_of_rows(store: TraceStore, graph: WeightedGraph) -> np.ndarray:
    i, j, w = graph.edge_arrays
    return _kernels.packed_pair_sums(store.rows, i, j, w)


def _energies_of_rows(store: TraceStore, model: IsingModel) -> np.ndarray:
    # m_i m_j = 1 - 2*[bits differ], so -sum J m_i m_j = -sum J + 2 * sum_{differ} J
    differ = _kernels.packed_pair_sums(store.rows, model.pair_i, model.pair_j, model.pair_J)
    field = _kernels.packed_field_sums(store.rows, model.h)
    return -field - int(model.pair_J.sum()) + 2 * differ


def best_solution(store: TraceStore, graph: WeightedGraph) -> tuple[int, SpinState, int]:
    """Highest-cut stored snapshot as (cut, state, cycle); earliest wins ties."""
    if len(store) == 0:
        raise ValueError("trace store is empty")
    if store.width_bits != graph.n_vertices:
        raise ValueError("store width does not match the graph")
    cuts = _cuts_of_rows(store, graph)
    k = int(np.argmax(cuts))  # argmax returns the first maximum
    return int(cuts[k]), store.state(k), int(store.cycles[k])


def lowest_energy(store: TraceStore, model: IsingModel) -> tuple[int, SpinState, int]:
    """Lowest-energy stored snapshot as (energy, state, cycle); earliest wins ties."""
    if len(store) == 0:
        raise ValueError("trace store is empty")
    energies = _energies_of_rows(store, model)
    k = int(np.argmin(energies))
    return int(energies[k]), store.state(k), int(store.cycles[k])


@dataclass
class TrialResult:
    best_energy: int
    best_state: SpinState
    best_cycle: int
    cycles_run: int
    best_cut: Optional[int] = None
    stored_snapshots: int = 0
    stored_bits: int = 0
    seed: Optional[int] = None
    final_state: Optional[SpinState] = None
    energy_series: Optional[np.ndarray] = field(default=None, repr=False)
