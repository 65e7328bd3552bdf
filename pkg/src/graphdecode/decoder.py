"""Minimum-weight decoding for single-logical-qubit graph codes.

Every correction consistent with a syndrome s has the form
``S_I Xbar^a Z_{V^-}`` where ``V^-`` are the vertices with ``s_v = -1``,
``S_I`` is a product of graph-state stabilizers and ``a`` is 0 or 1. Each
``S_i`` carries the only X on qubit i, so every candidate at level
``|I| = l`` weighs at least ``l``; once the best weight found is <= l no
deeper level can beat it. :func:`hierarchical_decode` scans levels in that
order. :func:`exact_mld_decode` is the brute-force reference.
"""

from __future__ import annotations

import itertools
import math
import os
from dataclasses import dataclass

import numpy as np

from ._backend import MAX_QUBITS, kernels
from .code import (
    MAX_ENUMERATION_QUBITS,
    CapabilityError,
    GraphCode,
    LogicalClass,
    Syndrome,
    logical_class,
    syndrome_of,
)
from .graph import Graph
from .pauli import PauliOperator, multiply

__all__ = [
    "DecodeOutcome",
    "hierarchical_decode",
    "exact_mld_decode",
    "graph_state_phase_correction",
    "residual_class",
    "correction_from_choice",
    "hierarchical_table",
    "mld_table",
    "normalize_level_cap",
]

DEBUG = os.environ.get("GRAPHDECODE_DEBUG", "") not in ("", "0")


@dataclass(frozen=True)
class DecodeOutcome:
    correction: PauliOperator
    weight: int
    level_used: int
    optimal: bool


def normalize_level_cap(level_cap) -> int:
    """Map None / inf / "inf" to -1 (unlimited); otherwise a non-negative int."""
    if level_cap is None:
        return -1
    if isinstance(level_cap, str):
        if level_cap.strip().lower() in ("inf", "unlimited", "none"):
            return -1
        level_cap = int(level_cap)
    if isinstance(level_cap, float) and math.isinf(level_cap):
        return -1
    cap = int(level_cap)
    if cap < 0:
        raise ValueError("level cap must be non-negative or unlimited")
    return cap


def _check_syndrome(code: GraphCode, s: Syndrome) -> None:
    if len(s) != code.n - 1:
        raise ValueError(f"syndrome has length {len(s)}, code needs {code.n - 1}")


def correction_from_choice(code: GraphCode, i_mask: int, a: int, z_mask: int) -> PauliOperator:
    """``S_I Xbar^a Z_{V^-}`` with the phase of the ordered product tracked.

    Same bookkeeping as :func:`multiply`, done on masks to skip temporaries.
    """
    adj = code.graph.adjacency_masks
    x = z = 0
    phase = 0
    for i in range(code.n):
        if i_mask >> i & 1:
            phase += 2 * (x & adj[i]).bit_count()
            x |= 1 << i
            z ^= adj[i]
    if a:
        xbar = code.logical_x.z
        phase += 2 * (x & xbar).bit_count()
        z ^= xbar
    phase += 2 * (x & z_mask).bit_count()
    return PauliOperator(code.n, x, z ^ z_mask, phase)


def _hierarchical_python(adj, z_base, xbar, n, level_cap):
    # Python-int twin of the kernel for codes wider than 64-bit masks
    best = (n + 1, 0)
    best_i = 0
    level = used = 0
    while level < best[0] and level <= n and (level_cap < 0 or level <= level_cap):
        for combo in itertools.combinations(range(n), level):
            xm = zm = 0
            for i in combo:
                xm |= 1 << i
                zm ^= adj[i]
            for a, zb in ((0, z_base), (1, z_base ^ xbar)):
                w = (xm | (zm ^ zb)).bit_count()
                if (w, a) < best:
                    best = (w, a)
                    best_i = xm
        used = level
        level += 1
    return best_i, best[1], best[0], used, level >= best[0]


def hierarchical_decode(code: GraphCode, s: Syndrome, level_cap=None) -> DecodeOutcome:
    """Scan ``S_I Xbar^a Z_{V^-}`` level by level, ``|I| = 0, 1, 2, ...``.

    Stops once the level reaches the best weight seen (``optimal=True``) or
    once ``level_cap`` is exhausted. Ties prefer ``a = 0``, then the lower
    level, then the lexicographically smaller ``I``.
    """
    _check_syndrome(code, s)
    cap = normalize_level_cap(level_cap)
    z_base = s.mask
    xbar = code.logical_x.z
    if code.n <= MAX_QUBITS:
        i_mask, a, w, used, optimal = kernels.hierarchical_search(
            code.adjacency, np.int64(z_base), np.int64(xbar), code.n, cap
        )
    else:
        i_mask, a, w, used, optimal = _hierarchical_python(
            code.graph.adjacency_masks, z_base, xbar, code.n, cap
        )
    correction = correction_from_choice(code, int(i_mask), int(a), z_base)
    if DEBUG:
        assert syndrome_of(code, correction) == s
        assert correction.weight == w
    return DecodeOutcome(correction, int(w), int(used), bool(optimal))


def _hermitian(n: int, x: int, z: int) -> PauliOperator:
    # phase chosen so that each Y position is a genuine Pauli Y
    return PauliOperator(n, x, z, -((x & z).bit_count()))


def exact_mld_decode(code: GraphCode, s: Syndrome) -> DecodeOutcome:
    """Minimum-weight Pauli with syndrome ``s`` by exhaustive weight-shell search.

    Shells are ordered by support (lexicographic) then letters (X < Y < Z).
    """
    _check_syndrome(code, s)
    if code.n > MAX_ENUMERATION_QUBITS:
        raise CapabilityError(f"exact MLD limited to n <= {MAX_ENUMERATION_QUBITS}")
    x, z, w = kernels.mld_search(code.gen_x, code.gen_z, code.n, np.int64(s.mask))
    if w < 0:  # pragma: no cover - generators are independent, every syndrome is reachable
        raise RuntimeError(f"no Pauli produces syndrome {s}")
    return DecodeOutcome(_hermitian(code.n, int(x), int(z)), int(w), int(w), True)


def graph_state_phase_correction(g: Graph, s_full) -> PauliOperator:
    """``Z`` on every vertex whose graph-state stabilizer reads -1."""
    bits = tuple(int(b) for b in s_full)
    if len(bits) != g.n:
        raise ValueError(f"need {g.n} syndrome values, got {len(bits)}")
    if any(b not in (1, -1) for b in bits):
        raise ValueError("syndrome entries must be +1 or -1")
    zmask = sum(1 << v for v, b in enumerate(bits) if b == -1)
    return PauliOperator(g.n, 0, zmask)


def residual_class(code: GraphCode, error: PauliOperator, correction: PauliOperator) -> LogicalClass:
    return logical_class(code, multiply(correction, error))


def _z_part(code: GraphCode, s_masks, i_masks, a) -> np.ndarray:
    zm = np.asarray(s_masks, dtype=np.int64) ^ (np.asarray(a, dtype=np.int64) * np.int64(code.logical_x.z))
    for i in range(code.n):
        zm ^= np.where((i_masks >> i) & 1, code.adjacency[i], 0)
    return zm


def hierarchical_table(code: GraphCode, level_cap=None) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Hierarchical corrections for all ``2^(n-1)`` syndrome masks.

    Returns ``(corr_x, corr_z, weight)`` indexed by syndrome mask; phases dropped.
    """
    if code.n > MAX_ENUMERATION_QUBITS:
        raise CapabilityError(f"syndrome tables limited to n <= {MAX_ENUMERATION_QUBITS}")
    masks = np.arange(1 << (code.n - 1), dtype=np.int64)
    i_masks, a, w = kernels.hierarchical_batch(
        code.adjacency, masks, np.int64(code.logical_x.z), code.n, normalize_level_cap(level_cap)
    )
    return i_masks, _z_part(code, masks, i_masks, a), w


def mld_table(code: GraphCode) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    if code.n > MAX_ENUMERATION_QUBITS:
        raise CapabilityError(f"syndrome tables limited to n <= {MAX_ENUMERATION_QUBITS}")
    masks = np.arange(1 << (code.n - 1), dtype=np.int64)
    return kernels.mld_batch(code.gen_x, code.gen_z, code.n, masks)
