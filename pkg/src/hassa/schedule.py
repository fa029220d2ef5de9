"""Pseudo-inverse temperature schedules.

Two parameterisations of the same staircase: ``HA_SHIFT`` multiplies ``I0`` by
``2**beta`` every ``tau`` cycles (a left shift in hardware), ``SSA_RATIO``
divides by a rational ``beta`` in (0, 1). Both are exact integer schedules.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import cached_property

import numpy as np


class Mode(str, Enum):
    HA_SHIFT = "shift"
    SSA_RATIO = "ratio"


def _as_fraction(beta) -> Fraction:
    if isinstance(beta, Fraction):
        return beta
    if isinstance(beta, float):
        return Fraction(beta).limit_denominator(1_000_000)
    return Fraction(str(beta).strip())


@dataclass(frozen=True)
class ScheduleConfig:
    """Annealing hyperparameters.

    The defaults are the settings used for the 800-spin G-set runs: 100
    trials of 150 iterations, noise magnitude 2, ``I0`` from 1 to 32 doubling
    every 100 cycles.
    """

    trials: int = 100
    m_shot: int = 150
    n_rnd: int = 2
    i0_min: int = 1
    i0_max: int = 32
    tau: int = 100
    beta: int | Fraction = 1
    mode: Mode = Mode.HA_SHIFT

    def __post_init__(self):
        object.__setattr__(self, "mode", Mode(self.mode))
        for name in ("trials", "m_shot", "tau", "i0_min", "i0_max"):
            if int(getattr(self, name)) < 1:
                raise ValueError(f"{name} must be a positive integer")
        if int(self.n_rnd) < 0:
            raise ValueError("n_rnd must be non-negative")
        if self.i0_min > self.i0_max:
            raise ValueError("i0_min must not exceed i0_max")
        if self.mode is Mode.HA_SHIFT:
            beta = _as_fraction(self.beta)
            if beta.denominator != 1 or beta < 1:
                raise ValueError("shift mode needs a positive integer beta")
            object.__setattr__(self, "beta", int(beta))
        else:
            beta = _as_fraction(self.beta)
            if not 0 < beta < 1:
                raise ValueError("ratio mode needs 0 < beta < 1")
            object.__setattr__(self, "beta", beta)
        self.levels  # validates reachability of i0_max

    @cached_property
    def levels(self) -> tuple[int, ...]:
        """The ``I0`` value of each step within one iteration."""
        if self.mode is Mode.HA_SHIFT:
            vals = [self.i0_min]
            while vals[-1] < self.i0_max:
                vals.append(vals[-1] << self.beta)
            if vals[-1] != self.i0_max:
                raise ValueError(
                    f"i0_max/i0_min = {self.i0_max}/{self.i0_min} is not a power of 2**{self.beta}"
                )
            return tuple(vals)
        cur = Fraction(self.i0_min)
        vals = [self.i0_min]
        while cur < self.i0_max:
            cur = cur / self.beta
            if cur.denominator != 1:
                raise ValueError(f"ratio beta={self.beta} produces non-integer I0 {cur}")
            vals.append(int(cur))
        if vals[-1] != self.i0_max:
            raise ValueError(f"ratio beta={self.beta} overshoots i0_max={self.i0_max}")
        return tuple(vals)

    @property
    def steps_per_iteration(self) -> int:
        return len(self.levels)

    @property
    def cycles_per_iteration(self) -> int:
        return self.steps_per_iteration * self.tau

    @property
    def total_cycles(self) -> int:
        return self.m_shot * self.cycles_per_iteration

    @cached_property
    def i0_sequence(self) -> np.ndarray:
        """``I0`` for every cycle of one iteration (read-only array)."""
        seq = np.repeat(np.array(self.levels, dtype=np.int64), self.tau)
        seq.setflags(write=False)
        return seq

    def to_dict(self) -> dict:
        return {
            "trials": self.trials,
            "m_shot": self.m_shot,
            "n_rnd": self.n_rnd,
            "i0_min": self.i0_min,
            "i0_max": self.i0_max,
            "tau": self.tau,
            "beta": str(self.beta),
            "mode": self.mode.value,
        }


DEFAULT_CONFIG = ScheduleConfig()


def temperature_at(config: ScheduleConfig, cycle: int) -> int:
    """``I0`` at ``cycle`` counted from the start of an iteration."""
    if not 0 <= cycle < config.cycles_per_iteration:
        raise ValueError(
            f"cycle {cycle} outside one iteration of {config.cycles_per_iteration} cycles"
        )
    return config.levels[cycle // config.tau]
