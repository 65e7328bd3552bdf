"""Compiled inner loops. Masks are int64 with bit ``v - 1`` for vertex ``v``.

Every function here has a twin with the same signature in
``_kernels_numpy``; tests compare the two directly.
"""

import numpy as np
from numba import njit

MAX_QUBITS = 62


@njit(cache=True, inline="always")
def _popcount(v):
    # SWAR bit count on 64-bit words
    v = v - ((v >> 1) & 0x5555555555555555)
    v = (v & 0x3333333333333333) + ((v >> 2) & 0x3333333333333333)
    v = (v + (v >> 4)) & 0x0F0F0F0F0F0F0F0F
    return (v * 0x0101010101010101) >> 56


@njit(cache=True, inline="always")
def _syndrome(ex, ez, gx, gz):
    s = 0
    for i in range(gx.shape[0]):
        if _popcount((gx[i] & ez) ^ (gz[i] & ex)) & 1:
            s |= 1 << i
    return s


@njit(cache=True)
def syndrome_masks(ex, ez, gx, gz):
    out = np.empty(ex.shape[0], dtype=np.int64)
    for k in range(ex.shape[0]):
        out[k] = _syndrome(ex[k], ez[k], gx, gz)
    return out


@njit(cache=True, inline="always")
def _next_combination(idx, size, n):
    k = size - 1
    while k >= 0 and idx[k] == n - size + k:
        k -= 1
    if k < 0:
        return False
    idx[k] += 1
    for j in range(k + 1, size):
        idx[j] = idx[j - 1] + 1
    return True


@njit(cache=True, inline="always")
def _next_letters(digits, size):
    # last position is the least significant digit
    k = size - 1
    while k >= 0 and digits[k] == 2:
        digits[k] = 0
        k -= 1
    if k < 0:
        return False
    digits[k] += 1
    return True


@njit(cache=True, inline="always")
def _letters_to_masks(idx, digits, size):
    # digit 0 -> X, 1 -> Y, 2 -> Z
    x = 0
    z = 0
    for k in range(size):
        b = np.int64(1) << idx[k]
        if digits[k] != 2:
            x |= b
        if digits[k] != 0:
            z |= b
    return x, z


@njit(cache=True)
def _hierarchical_many(adj, z_bases, xbar, n, level_cap, out_i, out_a, out_w, out_used, out_opt):
    # one flat loop: helper calls taking arrays cost more than the search itself
    idx = np.empty(n, dtype=np.int64)
    for q in range(z_bases.shape[0]):
        z_base = z_bases[q]
        z_alt = z_base ^ xbar
        best_w = n + 1
        best_i = 0
        best_a = 0
        level = 0
        used = 0
        while level < best_w and level <= n and (level_cap < 0 or level <= level_cap):
            for k in range(level):
                idx[k] = k
            while True:
                xm = 0
                zm = 0
                for k in range(level):
                    xm |= np.int64(1) << idx[k]
                    zm ^= adj[idx[k]]
                w0 = _popcount(xm | (zm ^ z_base))
                if w0 < best_w or (w0 == best_w and best_a == 1):
                    best_w = w0
                    best_i = xm
                    best_a = 0
                w1 = _popcount(xm | (zm ^ z_alt))
                if w1 < best_w:
                    best_w = w1
                    best_i = xm
                    best_a = 1
                # next combination in lexicographic order
                k = level - 1
                while k >= 0 and idx[k] == n - level + k:
                    k -= 1
                if k < 0:
                    break
                idx[k] += 1
                for j in range(k + 1, level):
                    idx[j] = idx[j - 1] + 1
            used = level
            level += 1
        out_i[q] = best_i
        out_a[q] = best_a
        out_w[q] = best_w
        out_used[q] = used
        out_opt[q] = level >= best_w


@njit(cache=True)
def hierarchical_search(adj, z_base, xbar, n, level_cap):
    """Level-by-level scan of ``S_I Xbar^a Z_base``.

    Returns ``(i_mask, a, weight, level_used, optimal)``. ``level_cap < 0``
    means unlimited.
    """
    zs = np.full(1, z_base, dtype=np.int64)
    out = np.empty((4, 1), dtype=np.int64)
    opt = np.empty(1, dtype=np.bool_)
    _hierarchical_many(adj, zs, xbar, n, level_cap, out[0], out[1], out[2], out[3], opt)
    return out[0, 0], out[1, 0], out[2, 0], out[3, 0], opt[0]


@njit(cache=True)
def _mld_many(gx, gz, n, targets, out_x, out_z, out_w):
    idx = np.empty(n, dtype=np.int64)
    digits = np.zeros(n, dtype=np.int64)
    rows = gx.shape[0]
    for q in range(targets.shape[0]):
        target = targets[q]
        out_x[q] = 0
        out_z[q] = 0
        out_w[q] = -1
        for w in range(n + 1):
            for k in range(w):
                idx[k] = k
            while out_w[q] < 0:
                for k in range(w):
                    digits[k] = 0
                while True:
                    # digit 0 -> X, 1 -> Y, 2 -> Z
                    x = 0
                    z = 0
                    for k in range(w):
                        b = np.int64(1) << idx[k]
                        if digits[k] != 2:
                            x |= b
                        if digits[k] != 0:
                            z |= b
                    s = 0
                    for i in range(rows):
                        if _popcount((gx[i] & z) ^ (gz[i] & x)) & 1:
                            s |= np.int64(1) << i
                    if s == target:
                        out_x[q] = x
                        out_z[q] = z
                        out_w[q] = w
                        break
                    # next letter assignment, last position least significant
                    k = w - 1
                    while k >= 0 and digits[k] == 2:
                        digits[k] = 0
                        k -= 1
                    if k < 0:
                        break
                    digits[k] += 1
                if out_w[q] >= 0:
                    break
                k = w - 1
                while k >= 0 and idx[k] == n - w + k:
                    k -= 1
                if k < 0:
                    break
                idx[k] += 1
                for j in range(k + 1, w):
                    idx[j] = idx[j - 1] + 1
            if out_w[q] >= 0:
                break


@njit(cache=True)
def mld_search(gx, gz, n, target):
    """First Pauli, in weight-shell order, whose syndrome mask is ``target``.

    Returns ``(x, z, weight)``; weight ``-1`` if nothing matches.
    """
    ts = np.full(1, target, dtype=np.int64)
    out = np.empty((3, 1), dtype=np.int64)
    _mld_many(gx, gz, n, ts, out[0], out[1], out[2])
    return out[0, 0], out[1, 0], out[2, 0]


@njit(cache=True)
def min_weight_logical(gx, gz, xbar_z, zbar_x, zbar_z, n):
    """Smallest weight of a Pauli with trivial syndrome acting non-trivially
    on the logical qubit; ``-1`` if none exists."""
    idx = np.empty(n, dtype=np.int64)
    digits = np.zeros(n, dtype=np.int64)
    for w in range(1, n + 1):
        for k in range(w):
            idx[k] = k
        while True:
            for k in range(w):
                digits[k] = 0
            while True:
                x, z = _letters_to_masks(idx, digits, w)
                if _syndrome(x, z, gx, gz) == 0:
                    anti_x = _popcount(x & xbar_z) & 1
                    anti_z = _popcount((x & zbar_z) ^ (z & zbar_x)) & 1
                    if anti_x or anti_z:
                        return w
                if not _next_letters(digits, w):
                    break
            if not _next_combination(idx, w, n):
                break
    return -1


@njit(cache=True)
def failure_counts(gx, gz, n, corr_x, corr_z, corr_syn, xbar_z, zbar_x, zbar_z):
    """Enumerate all 4^n Paulis; count decoding failures by (#X, #Y, #Z).

    ``corr_syn[s]`` is the syndrome of the correction chosen for ``s``; a
    mismatch leaves a residual outside the normalizer, which also fails.
    """
    counts = np.zeros((n + 1, n + 1, n + 1), dtype=np.int64)
    full = (np.int64(1) << n) - 1
    total = np.int64(1) << (2 * n)
    for e in range(total):
        ex = e & full
        ez = e >> n
        s = _syndrome(ex, ez, gx, gz)
        rx = ex ^ corr_x[s]
        rz = ez ^ corr_z[s]
        anti_x = _popcount(rx & xbar_z) & 1
        anti_z = _popcount((rx & zbar_z) ^ (rz & zbar_x)) & 1
        if anti_x or anti_z or corr_syn[s] != s:
            ny = _popcount(ex & ez)
            counts[_popcount(ex) - ny, ny, _popcount(ez) - ny] += 1
    return counts


@njit(cache=True)
def hierarchical_batch(adj, z_bases, xbar, n, level_cap):
    """``hierarchical_search`` over many syndromes; returns (i_mask, a, weight) arrays."""
    m = z_bases.shape[0]
    out = np.empty((4, m), dtype=np.int64)
    opt = np.empty(m, dtype=np.bool_)
    _hierarchical_many(adj, z_bases, xbar, n, level_cap, out[0], out[1], out[2], out[3], opt)
    return out[0], out[1], out[2]


@njit(cache=True)
def mld_batch(gx, gz, n, targets):
    """``mld_search`` over many syndromes; returns (x, z, weight) arrays."""
    m = targets.shape[0]
    out = np.empty((3, m), dtype=np.int64)
    _mld_many(gx, gz, n, targets, out[0], out[1], out[2])
    return out[0], out[1], out[2]
