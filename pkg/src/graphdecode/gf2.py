"""GF(2) linear algebra on int bitsets (one int per row)."""

from __future__ import annotations

from typing import Sequence

import numpy as np


def gf2_rank(rows: Sequence[int]) -> int:
    return len(_echelon(rows)[0])


def _echelon(rows: Sequence[int]) -> tuple[list[int], list[int]]:
    """Reduced basis plus, for each basis row, its pivot bit."""
    basis: list[int] = []
    pivots: list[int] = []
    for r in rows:
        for b, p in zip(basis, pivots):
            if r >> p & 1:
                r ^= b
        if r:
            p = r.bit_length() - 1
            # keep the basis fully reduced at the new pivot
            for k, b in enumerate(basis):
                if b >> p & 1:
                    basis[k] = b ^ r
            basis.append(r)
            pivots.append(p)
    return basis, pivots


def gf2_in_rowspan(vec: int, rows: Sequence[int]) -> bool:
    basis, pivots = _echelon(rows)
    for b, p in zip(basis, pivots):
        if vec >> p & 1:
            vec ^= b
    return vec == 0


def gf2_solve(rows: Sequence[int], vec: int) -> list[int] | None:
    """Indices of ``rows`` whose XOR equals ``vec``, or None if unreachable."""
    # track combinations alongside the elimination
    basis: list[tuple[int, int]] = []  # (row value, combination mask)
    for idx, r in enumerate(rows):
        combo = 1 << idx
        for b, c in basis:
            if r & (1 << (b.bit_length() - 1)):
                r ^= b
                combo ^= c
        if r:
            top = 1 << (r.bit_length() - 1)
            basis = [(b ^ r, c ^ combo) if b & top else (b, c) for b, c in basis]
            basis.append((r, combo))
    combo = 0
    for b, c in basis:
        if vec & (1 << (b.bit_length() - 1)):
            vec ^= b
            combo ^= c
    if vec:
        return None
    return [i for i in range(len(rows)) if combo >> i & 1]


def gf2_nullspace(matrix: np.ndarray) -> list[np.ndarray]:
    """Basis of ``{v : matrix @ v = 0 mod 2}`` as uint8 vectors."""
    a = (np.asarray(matrix, dtype=np.uint8) & 1).copy()
    m, ncols = a.shape
    pivot_cols = []
    row = 0
    for col in range(ncols):
        hits = np.nonzero(a[row:, col])[0]
        if hits.size == 0:
            continue
        piv = row + hits[0]
        a[[row, piv]] = a[[piv, row]]
        others = np.nonzero(a[:, col])[0]
        others = others[others != row]
        a[others] ^= a[row]
        pivot_cols.append(col)
        row += 1
        if row == m:
            break
    free = [c for c in range(ncols) if c not in pivot_cols]
    basis = []
    for f in free:
        v = np.zeros(ncols, dtype=np.uint8)
        v[f] = 1
        for r, pc in enumerate(pivot_cols):
            v[pc] = a[r, f]
        basis.append(v)
    return basis
