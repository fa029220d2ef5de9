"""Convergence of the p-bit annealer against single-flip Metropolis SA.

Averages the per-cycle Ising energy over several seeds for each algorithm
and reports how many cycles each needs to reach 96% of a reference energy.
On the default 8x100 torus the reference is the exact ground state (cut 536).

Run:  python demos/03_ssa_vs_sa.py [--seeds 10] [--instance PATH --best-cut 564]
"""

import argparse

import numpy as np

from hassa import (
    DEFAULT_CONFIG,
    SaSchedule,
    derive_seed,
    energy_from_cut,
    maxcut_to_ising,
    read_gset,
    run_trial,
    sa_run,
    toroidal_grid,
)

parser = argparse.ArgumentParser()
parser.add_argument("--seeds", type=int, default=10)
parser.add_argument("--instance")
parser.add_argument("--best-cut", type=int, default=536)
args = parser.parse_args()

graph = read_gset(args.instance) if args.instance else toroidal_grid(8, 100, 11)
model = maxcut_to_ising(graph)
ref = energy_from_cut(graph, args.best_cut)
level = 0.96 * ref
print(f"reference energy {ref}, 96% level {level:.1f}, {args.seeds} seeds each")

ha = np.mean([run_trial(model, DEFAULT_CONFIG, derive_seed(1, k), graph=graph,
                        record_energy=True).energy_series for k in range(args.seeds)], axis=0)
sa = np.mean([sa_run(model, SaSchedule(), derive_seed(2, k), graph=graph,
                     record_energy=True).energy_series for k in range(args.seeds)], axis=0)


def first(series):
    hit = np.flatnonzero(series <= level)
    return int(hit[0]) + 1 if hit.size else None


print(f"{'cycle':>8} {'p-bit':>10} {'SA':>10}")
for c in (100, 600, 1200, 6000, 30000, 60000, 90000):
    print(f"{c:>8} {ha[c - 1]:>10.1f} {sa[c - 1]:>10.1f}")

c_ha, c_sa = first(ha), first(sa)
print(f"cycles to the 96% level: p-bit {c_ha}, SA {c_sa if c_sa else 'never'}")
if c_ha and c_sa:
    print(f"speed-up {c_sa / c_ha:.0f}x")
print(f"lowest mean energy: p-bit {ha.min():.1f} at cycle {ha.argmin() + 1}, "
      f"SA {sa.min():.1f} at cycle {sa.argmin() + 1}")
