"""G-set text format, instance generators and an exhaustive MAX-CUT oracle.

G-set files look like::

    800 1600        # n_vertices n_edges
    1 2 1           # i j w, 1-based, one edge per line
    ...
"""

from __future__ import annotations

import io
from dataclasses import dataclass
from pathlib import Path
from typing import TextIO, Union

import numpy as np

from .ising import SpinState, WeightedGraph
from .rng import XorShift32, derive_seed

BRUTE_FORCE_LIMIT = 24


class GsetParseError(ValueError):
    def __init__(self, line_no: int, msg: str):
        self.line_no = line_no
        super().__init__(f"line {line_no}: {msg}")


@dataclass(frozen=True)
class GsetHeader:
    n_vertices: int
    n_edges: int


def parse_gset(text: Union[str, TextIO]) -> WeightedGraph:
    stream = io.StringIO(text) if isinstance(text, str) else text
    header = None
    edges = []
    seen = set()
    for line_no, raw in enumerate(stream, start=1):
        parts = raw.split()
        if not parts:
            continue
        try:
            nums = [int(p) for p in parts]
        except ValueError:
            raise GsetParseError(line_no, f"non-integer field in {raw.strip()!r}") from None
        if header is None:
            if len(nums) != 2 or nums[0] < 1 or nums[1] < 0:
                raise GsetParseError(line_no, "header must be 'n_vertices n_edges'")
            header = GsetHeader(*nums)
            continue
        if len(nums) != 3:
            raise GsetParseError(line_no, "edge line must be 'i j w'")
        i, j, w = nums
        if not (1 <= i <= header.n_vertices and 1 <= j <= header.n_vertices):
            raise GsetParseError(line_no, f"vertex index out of range 1..{header.n_vertices}")
        if i == j:
            raise GsetParseError(line_no, f"self-loop on vertex {i}")
        if w == 0:
            raise GsetParseError(line_no, "zero weight")
        key = (min(i, j), max(i, j))
        if key in seen:
            raise GsetParseError(line_no, f"duplicate edge {key}")
        seen.add(key)
        edges.append((key[0] - 1, key[1] - 1, w))
        if len(edges) > header.n_edges:
            raise GsetParseError(line_no, f"more edges than the {header.n_edges} declared")
    if header is None:
        raise GsetParseError(0, "empty instance")
    if len(edges) != header.n_edges:
        raise GsetParseError(line_no, f"header declares {header.n_edges} edges, found {len(edges)}")
    return WeightedGraph(header.n_vertices, tuple(edges))


def write_gset(graph: WeightedGraph) -> str:
    lines = [f"{graph.n_vertices} {graph.n_edges}"]
    lines += [f"{i + 1} {j + 1} {w}" for i, j, w in graph.edges]
    return "\n".join(lines) + "\n"


def read_gset(path: Union[str, Path]) -> WeightedGraph:
    with open(path) as fh:
        return parse_gset(fh)


def save_gset(graph: WeightedGraph, path: Union[str, Path]) -> None:
    Path(path).write_text(write_gset(graph))


def _pm1_weights(count: int, seed: int) -> np.ndarray:
    rng = XorShift32(derive_seed(seed, 0))
    return rng.noise_signs(count).astype(np.int64) if count else np.zeros(0, dtype=np.int64)


def generate_king(rows: int, cols: int, seed: int) -> WeightedGraph:
    """Toroidal King's graph: every cell joined to its 8 wrap-around neighbours.

    Vertex ``r * cols + c``; ``4 * rows * cols`` edges with independent ±1
    weights.
    """
    if rows < 3 or cols < 3:
        raise ValueError("a toroidal King's graph needs rows >= 3 and cols >= 3")
    pairs = []
    for r in range(rows):
        for c in range(cols):
            u = r * cols + c
            for dr, dc in ((0, 1), (1, -1), (1, 0), (1, 1)):
                v = ((r + dr) % rows) * cols + (c + dc) % cols
                pairs.append((u, v))
    w = _pm1_weights(len(pairs), seed)
    return WeightedGraph(rows * cols, tuple((u, v, int(x)) for (u, v), x in zip(pairs, w)))


def toroidal_grid(rows: int, cols: int, seed: int) -> WeightedGraph:
    """2-D torus with ±1 weights, vertex ``r * cols + c``; degree 4, ``2 * rows * cols`` edges."""
    if rows < 3 or cols < 3:
        raise ValueError("a toroidal grid needs rows >= 3 and cols >= 3")
    pairs = []
    for r in range(rows):
        for c in range(cols):
            u = r * cols + c
            pairs.append((u, r * cols + (c + 1) % cols))
            pairs.append((u, ((r + 1) % rows) * cols + c))
    w = _pm1_weights(len(pairs), seed)
    return WeightedGraph(rows * cols, tuple((u, v, int(x)) for (u, v), x in zip(pairs, w)))


def random_graph(n: int, n_edges: int, seed: int, max_degree: int | None = None,
                 weights=(-1, 1)) -> WeightedGraph:
    """Random simple graph with uniformly drawn weights; stops early if the degree cap blocks it."""
    gen = np.random.default_rng(seed)
    deg = np.zeros(n, dtype=int)
    seen = set()
    edges = []
    attempts = 0
    while len(edges) < n_edges and attempts < 50 * max(n_edges, 1):
        attempts += 1
        i, j = (int(x) for x in gen.choice(n, size=2, replace=False))
        key = (min(i, j), max(i, j))
        if key in seen:
            continue
        if max_degree is not None and (deg[i] >= max_degree or deg[j] >= max_degree):
            continue
        seen.add(key)
        deg[i] += 1
        deg[j] += 1
        edges.append((key[0], key[1], int(gen.choice(weights))))
    return WeightedGraph(n, tuple(edges))


def brute_force_maxcut(graph: WeightedGraph) -> tuple[int, SpinState]:
    """Exact maximum cut by enumerating the ``2**(n-1)`` sign classes.

    The last vertex is pinned to -1. Returns the first maximiser in
    enumeration order.
    """
    n = graph.n_vertices
    if n > BRUTE_FORCE_LIMIT:
        raise ValueError(f"brute force refused: {n} vertices > {BRUTE_FORCE_LIMIT}")
    i, j, w = graph.edge_arrays
    total = 1 << (n - 1)
    best, best_s = None, 0
    chunk = 1 << 18
    for start in range(0, total, chunk):
        s = np.arange(start, min(start + chunk, total), dtype=np.int64)
        cut = np.zeros(s.size, dtype=np.int64)
        for a, b, wt in zip(i, j, w):
            cut += wt * (((s >> a) ^ (s >> b)) & 1)
        k = int(np.argmax(cut))
        if best is None or cut[k] > best:
            best, best_s = int(cut[k]), int(s[k])
    m = np.array([1 if (best_s >> k) & 1 else -1 for k in range(n)], dtype=np.int8)
    return best, SpinState.from_spins(m)
