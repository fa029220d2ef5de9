"""Solve a small MAX-CUT instance and check the answer against exhaustive search.

Run:  python demos/01_quickstart.py
"""

from hassa import (
    DEFAULT_CONFIG,
    ScheduleConfig,
    brute_force_maxcut,
    cut_value,
    generate_king,
    hamiltonian,
    maxcut_to_ising,
    run_trial,
    state_to_partition,
)

# A 4x5 toroidal King's graph: 20 vertices, each joined to its 8 neighbours
# with a random +1 or -1 weight.
graph = generate_king(4, 5, seed=3)
print(f"instance: {graph.n_vertices} vertices, {graph.n_edges} edges, total weight {graph.total_weight}")

# MAX-CUT becomes an Ising model with h = 0 and J = -w. Every state then
# satisfies 2*cut + H = W, so minimising H maximises the cut.
model = maxcut_to_ising(graph)

# The default schedule sweeps I0 through 1, 2, 4, 8, 16, 32 (100 cycles each)
# and repeats that 150 times. A few iterations are plenty at this size.
config = ScheduleConfig(m_shot=10)
print(f"schedule: I0 levels {config.levels}, {config.total_cycles} cycles "
      f"(the full default is {DEFAULT_CONFIG.total_cycles})")

result = run_trial(model, config, seed=2024, graph=graph)
print(f"annealer: cut {result.best_cut}, energy {result.best_energy}, "
      f"first seen at cycle {result.best_cycle}, {result.stored_snapshots} snapshots kept")
assert result.best_cut == cut_value(graph, result.best_state)
assert 2 * result.best_cut + hamiltonian(model, result.best_state) == graph.total_weight

optimum, _ = brute_force_maxcut(graph)
print(f"exhaustive search: optimum {optimum}")
print("match" if optimum == result.best_cut else "annealer fell short")

plus, minus = state_to_partition(result.best_state)
print(f"partition: {sorted(plus)} | {sorted(minus)}")
