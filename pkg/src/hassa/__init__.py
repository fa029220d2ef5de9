"""Hardware-aware stochastic simulated annealing (HA-SSA) for MAX-CUT."""

from .engine import Boundary, CycleReport, Init, PbitArray, local_field, run_trial, step
from .instances import (
    GsetHeader,
    GsetParseError,
    brute_force_maxcut,
    generate_king,
    parse_gset,
    random_graph,
    read_gset,
    save_gset,
    toroidal_grid,
    write_gset,
)
from .ising import (
    IsingModel,
    SpinState,
    WeightedGraph,
    cut_from_energy,
    cut_value,
    energy_from_cut,
    hamiltonian,
    maxcut_to_ising,
    state_to_partition,
)
from .rng import XorShift32, derive_seed, parse_seed
from .sa import SaMode, SaSchedule, metropolis_accept, sa_run, sa_temperature
from .schedule import DEFAULT_CONFIG, Mode, ScheduleConfig, temperature_at
from .trace import (
    StoragePolicy,
    StoreOverflowError,
    TraceStore,
    TrialResult,
    best_solution,
    memory_bits_per_iteration,
    should_store,
)

__version__ = "0.1.0"
