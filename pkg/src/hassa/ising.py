"""Ising models, MAX-CUT graphs and the exact integer evaluation of both.

Spin vectors are plain ``int8`` arrays of -1/+1 in the hot paths. ``SpinState``
is the packed, hashable form (bit 1 = +1, bit 0 = -1, LSB-first) used for
snapshots and file output.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence, Union

import numpy as np
import scipy.sparse as sp


@dataclass(frozen=True)
class SpinState:
    """Packed spin vector; one bit per spin."""

    n: int
    bits: bytes

    @classmethod
    def from_spins(cls, spins) -> "SpinState":
        m = np.asarray(spins)
        if m.ndim != 1:
            raise ValueError("spin vector must be one-dimensional")
        if not np.all((m == 1) | (m == -1)):
            raise ValueError("spins must be -1 or +1")
        return cls(int(m.size), np.packbits(m > 0, bitorder="little").tobytes())

    @classmethod
    def from_packed(cls, row, n: int) -> "SpinState":
        return cls(int(n), bytes(np.asarray(row, dtype=np.uint8)[: (n + 7) // 8]))

    @property
    def spins(self) -> np.ndarray:
        raw = np.frombuffer(self.bits, dtype=np.uint8)
        b = np.unpackbits(raw, count=self.n, bitorder="little")
        return (2 * b.astype(np.int8) - 1).astype(np.int8)

    def __len__(self) -> int:
        return self.n


SpinLike = Union[SpinState, Sequence[int], np.ndarray]


def as_spins(state: SpinLike, n: int | None = None) -> np.ndarray:
    """Return ``state`` as an int8 ±1 array, checking its length against ``n``."""
    if isinstance(state, SpinState):
        m = state.spins
    else:
        m = np.asarray(state)
        if not np.all((m == 1) | (m == -1)):
            raise ValueError("spins must be -1 or +1")
        m = m.astype(np.int8)
    if m.ndim != 1:
        raise ValueError("spin vector must be one-dimensional")
    if n is not None and m.size != n:
        raise ValueError(f"state has {m.size} spins, expected {n}")
    return m


@dataclass(frozen=True)
class WeightedGraph:
    """Undirected MAX-CUT instance with integer edge weights.

    Edges are canonicalised to ``i < j`` on construction; order is otherwise
    preserved so that parse/write round-trips are exact.
    """

    n_vertices: int
    edges: tuple = field(default=())

    def __post_init__(self):
        n = int(self.n_vertices)
        if n < 1:
            raise ValueError("graph needs at least one vertex")
        canon = []
        seen = set()
        for e in self.edges:
            i, j, w = (int(x) for x in e)
            if any(int(x) != x for x in e):
                raise ValueError(f"non-integer edge {e!r}")
            if i == j:
                raise ValueError(f"self-loop at vertex {i}")
            if i > j:
                i, j = j, i
            if i < 0 or j >= n:
                raise ValueError(f"edge ({i}, {j}) out of range for {n} vertices")
            if w == 0:
                raise ValueError(f"edge ({i}, {j}) has zero weight")
            if (i, j) in seen:
                raise ValueError(f"duplicate edge ({i}, {j})")
            seen.add((i, j))
            canon.append((i, j, w))
        object.__setattr__(self, "n_vertices", n)
        object.__setattr__(self, "edges", tuple(canon))

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    @cached_property
    def edge_arrays(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        if not self.edges:
            z = np.zeros(0, dtype=np.int64)
            return z, z.copy(), z.copy()
        a = np.array(self.edges, dtype=np.int64)
        return a[:, 0].copy(), a[:, 1].copy(), a[:, 2].copy()

    @property
    def total_weight(self) -> int:
        return int(self.edge_arrays[2].sum())

    def degrees(self) -> np.ndarray:
        i, j, _ = self.edge_arrays
        return np.bincount(np.concatenate([i, j]), minlength=self.n_vertices)

    def __hash__(self):
        return hash((self.n_vertices, self.edges))


class IsingModel:
    """Integer biases ``h`` and symmetric integer couplings ``J``.

    Couplings are given once per unordered pair; ``J[i, j] == J[j, i]`` is
    implied. Zero couplings are dropped.
    """

    def __init__(self, h: Iterable[int], couplings: Mapping[tuple[int, int], int] | None = None):
        self.h = np.asarray(list(h) if not isinstance(h, np.ndarray) else h, dtype=np.int64)
        if self.h.ndim != 1 or self.h.size < 1:
            raise ValueError("h must be a non-empty vector")
        n = self.h.size
        upper: dict[tuple[int, int], int] = {}
        for (i, j), v in (couplings or {}).items():
            i, j, v = int(i), int(j), int(v)
            if i == j:
                raise ValueError(f"diagonal coupling J[{i},{i}] is not allowed")
            if not (0 <= i < n and 0 <= j < n):
                raise ValueError(f"coupling ({i}, {j}) out of range for {n} spins")
            key = (min(i, j), max(i, j))
            if key in upper and upper[key] != v:
                raise ValueError(f"asymmetric coupling for pair {key}")
            upper[key] = v
        keys = sorted(k for k, v in upper.items() if v != 0)
        self.pair_i = np.array([k[0] for k in keys], dtype=np.int64)
        self.pair_j = np.array([k[1] for k in keys], dtype=np.int64)
        self.pair_J = np.array([upper[k] for k in keys], dtype=np.int64)

    @property
    def n_spins(self) -> int:
        return int(self.h.size)

    @property
    def couplings(self) -> dict[tuple[int, int], int]:
        return {(int(i), int(j)): int(v) for i, j, v in zip(self.pair_i, self.pair_j, self.pair_J)}

    @cached_property
    def csr(self) -> sp.csr_matrix:
        """Full symmetric coupling matrix (both triangles)."""
        n = self.n_spins
        rows = np.concatenate([self.pair_i, self.pair_j])
        cols = np.concatenate([self.pair_j, self.pair_i])
        vals = np.concatenate([self.pair_J, self.pair_J])
        mat = sp.csr_matrix((vals, (rows, cols)), shape=(n, n), dtype=np.int64)
        mat.sort_indices()
        return mat

    def __repr__(self):
        return f"IsingModel(n_spins={self.n_spins}, n_couplings={self.pair_J.size})"


def hamiltonian(model: IsingModel, state: SpinLike) -> int:
    """Ising energy ``-sum h_i m_i - sum_{i<j} J_ij m_i m_j`` as an exact integer."""
    m = as_spins(state, model.n_spins).astype(np.int64)
    field_term = int(model.h @ m)
    pair_term = int(np.sum(model.pair_J * m[model.pair_i] * m[model.pair_j]))
    return -field_term - pair_term


def cut_value(graph: WeightedGraph, state: SpinLike) -> int:
    """Total weight of edges whose endpoints carry different spins."""
    m = as_spins(state, graph.n_vertices)
    i, j, w = graph.edge_arrays
    return int(w[m[i] != m[j]].sum())


def maxcut_to_ising(graph: WeightedGraph) -> IsingModel:
    """Map MAX-CUT onto an Ising model with ``h = 0`` and ``J_ij = -w_ij``.

    With this sign choice ``cut = (W - H) / 2`` where ``W`` is the total edge
    weight, so the Ising ground state is a maximum cut.
    """
    return IsingModel(
        np.zeros(graph.n_vertices, dtype=np.int64),
        {(i, j): -w for i, j, w in graph.edges},
    )


def cut_from_energy(graph: WeightedGraph, energy: int) -> int:
    twice = graph.total_weight - int(energy)
    if twice % 2:
        raise ValueError("energy is not consistent with this graph")
    return twice // 2


def energy_from_cut(graph: WeightedGraph, cut: int) -> int:
    return graph.total_weight - 2 * int(cut)


def state_to_partition(state: SpinLike) -> tuple[frozenset, frozenset]:
    """Split vertex indices by spin: (+1 side, -1 side)."""
    m = as_spins(state)
    plus = frozenset(int(k) for k in np.flatnonzero(m > 0))
    minus = frozenset(int(k) for k in np.flatnonzero(m < 0))
    return plus, minus


def partition_to_state(n: int, side: Iterable[int]) -> np.ndarray:
    m = -np.ones(n, dtype=np.int8)
    m[list(side)] = 1
    return m
