"""32-bit xorshift generator used for every stochastic choice.

The same recurrence is inlined in the compiled kernels (:mod:`hassa._kernels`);
this class is the reference implementation the kernels are tested against.
"""

from __future__ import annotations

import os

import numpy as np

MASK32 = 0xFFFFFFFF
SHIFTS = (13, 17, 5)

SEED_ENV_VAR = "SSA_ANNEAL_SEED"


def xorshift32(x: int, shifts: tuple[int, int, int] = SHIFTS, bits: int = 32) -> int:
    """One xorshift step on a ``bits``-wide word."""
    mask = (1 << bits) - 1
    a, b, c = shifts
    x ^= (x << a) & mask
    x ^= x >> b
    x ^= (x << c) & mask
    return x


class XorShift32:
    """Marsaglia xorshift with the (13, 17, 5) triplet. Never holds zero."""

    __slots__ = ("state",)

    def __init__(self, seed: int):
        seed = int(seed)
        if seed & MASK32 == 0:
            raise ValueError("xorshift seed must be nonzero modulo 2**32")
        self.state = seed & MASK32

    def next_word(self) -> int:
        self.state = xorshift32(self.state)
        return self.state

    def words(self, k: int) -> np.ndarray:
        out = np.empty(k, dtype=np.uint32)
        x = self.state
        for idx in range(k):
            x = xorshift32(x)
            out[idx] = x
        self.state = x
        return out

    def noise_signs(self, n: int) -> np.ndarray:
        """``n`` values in {-1, +1}; bit k of word w drives spin ``32*w + k``."""
        if n < 1:
            raise ValueError("need at least one noise sign")
        words = self.words((n + 31) // 32)
        bits = np.unpackbits(words.astype("<u4", copy=False).view(np.uint8), bitorder="little", count=n)
        return (2 * bits.astype(np.int8) - 1).astype(np.int8)

    def uniform(self) -> float:
        """Float in [0, 1) with 32-bit resolution."""
        return self.next_word() / 4294967296.0

    def below(self, n: int) -> int:
        """Integer in [0, n) by multiply-shift."""
        return (self.next_word() * n) >> 32

    def copy(self) -> "XorShift32":
        return XorShift32(self.state)


def splitmix64(x: int) -> int:
    x = (x + 0x9E3779B97F4A7C15) & 0xFFFFFFFFFFFFFFFF
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & 0xFFFFFFFFFFFFFFFF
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & 0xFFFFFFFFFFFFFFFF
    return x ^ (x >> 31)


def derive_seed(base_seed: int, trial_index: int) -> int:
    """Decorrelated nonzero 32-bit seed for one trial of a campaign."""
    z = splitmix64((int(base_seed) ^ int(trial_index)) & 0xFFFFFFFFFFFFFFFF)
    lo, hi = z & MASK32, z >> 32
    return lo or hi or 1


def parse_seed(text: str | int | None) -> int:
    """Accept decimal or ``0x`` hex; fall back to the environment, then to 1."""
    if text is None:
        text = os.environ.get(SEED_ENV_VAR)
        if text is None:
            return 1
    if isinstance(text, int):
        return text
    text = text.strip()
    return int(text, 16) if text.lower().startswith("0x") else int(text, 10)
