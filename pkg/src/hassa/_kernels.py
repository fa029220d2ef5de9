"""Compiled inner loops.

Each kernel reproduces, bit for bit, the pure-numpy reference path in
:mod:`hassa.engine` / :mod:`hassa.sa`; the test-suite runs both and compares.
All words are carried in int64 with explicit 32-bit masking.
"""

import math

import numpy as np
from numba import njit

_M32 = 0xFFFFFFFF


@njit(cache=True, nogil=True)
def xs32(x):
    x ^= (x << 13) & _M32
    x ^= x >> 17
    x ^= (x << 5) & _M32
    return x


@njit(cache=True, nogil=True)
def ising_energy(h, pair_i, pair_j, pair_J, m):
    e = 0
    for i in range(m.size):
        e -= h[i] * m[i]
    for k in range(pair_J.size):
        e -= pair_J[k] * m[pair_i[k]] * m[pair_j[k]]
    return e


@njit(cache=True, nogil=True)
def pack_into(m, row):
    n = m.size
    for byte in range(row.size):
        v = 0
        for b in range(8):
            i = byte * 8 + b
            if i < n and m[i] > 0:
                v |= 1 << b
        row[byte] = v


@njit(cache=True, nogil=True)
def ssa_cycles(indptr, indices, data, h, itanh, m, rng, i0_seq, n_rnd,
               rows_out, energy_out, want_energy, pair_i, pair_j, pair_J):
    """Advance the p-bit array by ``i0_seq.size`` synchronous cycles.

    ``itanh``, ``m`` and ``rng`` (length-1 int64) are updated in place. The
    state after cycle ``t`` is packed into ``rows_out[t]``.
    """
    n = m.size
    nwords = (n + 31) // 32
    x = rng[0]
    cur = np.empty(n, dtype=np.int64)
    nxt = np.empty(n, dtype=np.int64)
    for i in range(n):
        cur[i] = m[i]
    for t in range(i0_seq.size):
        i0 = i0_seq[t]
        for w in range(nwords):
            x = xs32(x)
            base = w * 32
            lim = min(32, n - base)
            for b in range(lim):
                i = base + b
                acc = h[i] + itanh[i] + n_rnd * (2 * ((x >> b) & 1) - 1)
                for k in range(indptr[i], indptr[i + 1]):
                    acc += data[k] * cur[indices[k]]
                acc = min(max(acc, -i0), i0 - 1)
                itanh[i] = acc
                nxt[i] = 1 if acc >= 0 else -1
        cur, nxt = nxt, cur
        pack_into(cur, rows_out[t])
        if want_energy:
            energy_out[t] = ising_energy(h, pair_i, pair_j, pair_J, cur)
    for i in range(n):
        m[i] = cur[i]
    rng[0] = x


@njit(cache=True, nogil=True)
def sa_cycles(indptr, indices, data, h, m, rng, temps, per_cycle, energy,
              energy_out, best_m):
    """Single-flip Metropolis over ``temps.size`` cycles of ``per_cycle`` proposals.

    Returns (final energy, best energy, cycle of best or -1 for the start state).
    """
    n = m.size
    x = rng[0]
    best = energy
    best_cycle = -1
    for i in range(n):
        best_m[i] = m[i]
    for t in range(temps.size):
        temp = temps[t]
        for _ in range(per_cycle):
            x = xs32(x)
            i = (x * n) >> 32
            f = h[i]
            for k in range(indptr[i], indptr[i + 1]):
                f += data[k] * m[indices[k]]
            d = 2 * m[i] * f
            accept = d <= 0
            if not accept:
                x = xs32(x)
                u = x / 4294967296.0
                accept = u < math.exp(-d / temp)
            if accept:
                m[i] = -m[i]
                energy += d
                if energy < best:
                    best = energy
                    best_cycle = t
                    for q in range(n):
                        best_m[q] = m[q]
        energy_out[t] = energy
    rng[0] = x
    return energy, best, best_cycle


@njit(cache=True, nogil=True)
def packed_pair_sums(rows, pair_i, pair_j, weight):
    """Per row: sum of ``weight[k]`` over pairs whose two bits differ."""
    out = np.zeros(rows.shape[0], dtype=np.int64)
    for r in range(rows.shape[0]):
        row = rows[r]
        total = 0
        for k in range(pair_i.size):
            a = pair_i[k]
            b = pair_j[k]
            if ((row[a >> 3] >> (a & 7)) ^ (row[b >> 3] >> (b & 7))) & 1:
                total += weight[k]
        out[r] = total
    return out


@njit(cache=True, nogil=True)
def packed_field_sums(rows, h):
    """Per row: ``sum_i h_i m_i`` with bits decoded as ±1."""
    out = np.zeros(rows.shape[0], dtype=np.int64)
    for r in range(rows.shape[0]):
        row = rows[r]
        total = 0
        for i in range(h.size):
            if (row[i >> 3] >> (i & 7)) & 1:
                total += h[i]
            else:
                total -= h[i]
        out[r] = total
    return out
