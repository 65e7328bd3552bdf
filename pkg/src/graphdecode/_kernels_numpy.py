"""Vectorised numpy versions of the ``_kernels_numba`` routines.

Selected when ``GRAPHDECODE_DISABLE_NUMBA`` is set or numba is missing.
Same signatures, same tie-breaking, same return values.
"""

import itertools
from functools import lru_cache

import numpy as np

MAX_QUBITS = 62
_CHUNK = 1 << 18


def _parity(a):
    return np.bitwise_count(a) & 1


def syndrome_masks(ex, ez, gx, gz):
    ex = np.asarray(ex, dtype=np.int64)
    ez = np.asarray(ez, dtype=np.int64)
    out = np.zeros(ex.shape, dtype=np.int64)
    for i in range(len(gx)):
        bit = _parity((np.int64(gx[i]) & ez) ^ (np.int64(gz[i]) & ex)).astype(np.int64)
        out |= bit << i
    return out


@lru_cache(maxsize=256)
def _combinations(n, size):
    combos = list(itertools.combinations(range(n), size))
    return np.array(combos, dtype=np.int64).reshape(len(combos), size)


@lru_cache(maxsize=64)
def _letter_table(size):
    # rows in lexicographic order, first column most significant
    rows = list(itertools.product(range(3), repeat=size))
    return np.array(rows, dtype=np.int64).reshape(len(rows), size)


def _shell(n, w):
    """All weight-``w`` Paulis as (x, z) arrays, support-major then letter order."""
    combos = _combinations(n, w)
    letters = _letter_table(w)
    bits = np.int64(1) << combos  # (C, w)
    xsel = (letters != 2).astype(np.int64)  # (L, w)
    zsel = (letters != 0).astype(np.int64)
    x = (bits[:, None, :] * xsel[None, :, :]).sum(axis=2)
    z = (bits[:, None, :] * zsel[None, :, :]).sum(axis=2)
    return x.ravel(), z.ravel()


def hierarchical_search(adj, z_base, xbar, n, level_cap):
    adj = np.asarray(adj, dtype=np.int64)
    best = (n + 1, 0)  # (weight, a)
    best_i = 0
    level = 0
    used = 0
    z_base = np.int64(z_base)
    z_alt = z_base ^ np.int64(xbar)
    while level < best[0] and level <= n and (level_cap < 0 or level <= level_cap):
        combos = _combinations(n, level)
        xm = (np.int64(1) << combos).sum(axis=1)
        zm = np.bitwise_xor.reduce(adj[combos], axis=1) if level else np.zeros(1, np.int64)
        w0 = np.bitwise_count(xm | (zm ^ z_base)).astype(np.int64)
        w1 = np.bitwise_count(xm | (zm ^ z_alt)).astype(np.int64)
        k0 = int(np.argmin(w0))
        k1 = int(np.argmin(w1))
        for w, a, k in ((int(w0[k0]), 0, k0), (int(w1[k1]), 1, k1)):
            if (w, a) < best:
                best = (w, a)
                best_i = int(xm[k])
        used = level
        level += 1
    return best_i, best[1], best[0], used, level >= best[0]


def mld_search(gx, gz, n, target):
    for w in range(n + 1):
        x, z = _shell(n, w)
        hit = np.nonzero(syndrome_masks(x, z, gx, gz) == target)[0]
        if hit.size:
            k = hit[0]
            return int(x[k]), int(z[k]), w
    return 0, 0, -1


def min_weight_logical(gx, gz, xbar_z, zbar_x, zbar_z, n):
    for w in range(1, n + 1):
        x, z = _shell(n, w)
        ok = syndrome_masks(x, z, gx, gz) == 0
        anti = _parity(x & xbar_z) | _parity((x & zbar_z) ^ (z & zbar_x))
        if np.any(ok & (anti == 1)):
            return w
    return -1


def failure_counts(gx, gz, n, corr_x, corr_z, corr_syn, xbar_z, zbar_x, zbar_z):
    corr_x = np.asarray(corr_x, dtype=np.int64)
    corr_z = np.asarray(corr_z, dtype=np.int64)
    corr_syn = np.asarray(corr_syn, dtype=np.int64)
    counts = np.zeros((n + 1, n + 1, n + 1), dtype=np.int64)
    full = (1 << n) - 1
    total = 1 << (2 * n)
    for start in range(0, total, _CHUNK):
        e = np.arange(start, min(start + _CHUNK, total), dtype=np.int64)
        ex = e & full
        ez = e >> n
        s = syndrome_masks(ex, ez, gx, gz)
        rx = ex ^ corr_x[s]
        rz = ez ^ corr_z[s]
        fail = (_parity(rx & xbar_z) | _parity((rx & zbar_z) ^ (rz & zbar_x))).astype(bool)
        fail |= corr_syn[s] != s
        ny = np.bitwise_count(ex[fail] & ez[fail]).astype(np.int64)
        nx = np.bitwise_count(ex[fail]).astype(np.int64) - ny
        nz = np.bitwise_count(ez[fail]).astype(np.int64) - ny
        np.add.at(counts, (nx, ny, nz), 1)
    return counts


def hierarchical_batch(adj, z_bases, xbar, n, level_cap):
    res = [hierarchical_search(adj, int(zb), xbar, n, level_cap) for zb in z_bases]
    return tuple(np.array([r[k] for r in res], dtype=np.int64).reshape(-1) for k in range(3))


def mld_batch(gx, gz, n, targets):
    res = [mld_search(gx, gz, n, int(t)) for t in targets]
    return tuple(np.array([r[k] for r in res], dtype=np.int64).reshape(-1) for k in range(3))
