"""Dense state-vector checks for graph states (n <= 16).

Basis index convention: vertex 1 is the most significant bit.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .code import CapabilityError, GraphCode
from .graph import Graph, graph_state_stabilizers
from .noise import check_completeness
from .pauli import PauliOperator

__all__ = [
    "StateVector",
    "prepare_graph_state",
    "logical_state",
    "apply_pauli",
    "apply_kraus_channel",
    "measure_stabilizer",
    "measure_all",
    "fidelity",
    "same_up_to_phase",
]

MAX_SIM_QUBITS = 16
NORM_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class StateVector:
    n: int
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex)
        if amps.shape != (1 << self.n,):
            raise ValueError(f"expected {1 << self.n} amplitudes, got shape {amps.shape}")
        norm = np.linalg.norm(amps)
        if abs(norm - 1.0) > NORM_TOL:
            raise ValueError(f"state not normalized (norm {norm})")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)


def _index_mask(mask: int, n: int) -> int:
    # vertex v (bit v-1 of a Pauli mask) is bit n-v of the basis index
    out = 0
    for v in range(1, n + 1):
        if mask >> (v - 1) & 1:
            out |= 1 << (n - v)
    return out


def _check_n(n: int) -> None:
    if n > MAX_SIM_QUBITS:
        raise CapabilityError(f"state-vector simulation limited to n <= {MAX_SIM_QUBITS}")


def prepare_graph_state(g: Graph) -> StateVector:
    """Apply CZ on every edge to ``|+>^n``."""
    _check_n(g.n)
    idx = np.arange(1 << g.n)
    sign = np.zeros(1 << g.n, dtype=np.int64)
    for u, v in g.edges:
        sign ^= (idx >> (g.n - u)) & (idx >> (g.n - v)) & 1
    amps = (1.0 - 2.0 * sign) / np.sqrt(1 << g.n)
    return StateVector(g.n, amps.astype(complex))


def _pauli_action(amps: np.ndarray, n: int, p: PauliOperator) -> np.ndarray:
    xi = _index_mask(p.x, n)
    zi = _index_mask(p.z, n)
    idx = np.arange(1 << n)
    signs = 1.0 - 2.0 * (np.bitwise_count(idx & zi) & 1)
    return (1j ** p.phase) * signs * amps[idx ^ xi]


def apply_pauli(psi: StateVector, p: PauliOperator) -> StateVector:
    if p.n != psi.n:
        raise ValueError(f"operator acts on {p.n} qubits, state has {psi.n}")
    return StateVector(psi.n, _pauli_action(psi.amplitudes, psi.n, p))


def logical_state(code: GraphCode, alpha: complex, beta: complex) -> StateVector:
    """``alpha |G> + beta Xbar |G>`` (normalized)."""
    g = prepare_graph_state(code.graph)
    amps = alpha * g.amplitudes + beta * _pauli_action(g.amplitudes, code.n, code.logical_x)
    return StateVector(code.n, amps / np.linalg.norm(amps))


def _apply_single(amps: np.ndarray, n: int, v: int, m: np.ndarray) -> np.ndarray:
    t = amps.reshape(1 << (v - 1), 2, 1 << (n - v))
    return np.einsum("ij,ajb->aib", m, t).reshape(-1)


def apply_kraus_channel(
    psi: StateVector, v: int, ops: Sequence, rng: np.random.Generator
) -> StateVector:
    """One quantum-trajectory step: pick branch j with probability ``||E_j psi||^2``."""
    if not 1 <= v <= psi.n:
        raise ValueError(f"vertex {v} out of range 1..{psi.n}")
    ops = [np.asarray(e, dtype=complex) for e in ops]
    if not check_completeness(ops):
        raise ValueError("Kraus operators do not satisfy sum E^dag E = I")
    branches = [_apply_single(psi.amplitudes, psi.n, v, e) for e in ops]
    probs = np.array([np.vdot(b, b).real for b in branches])
    j = rng.choice(len(ops), p=probs / probs.sum())
    out = branches[j]
    return StateVector(psi.n, out / np.sqrt(probs[j]))


def measure_stabilizer(
    psi: StateVector, s: PauliOperator, rng: np.random.Generator
) -> tuple[int, StateVector]:
    """Projective measurement with ``P_+- = (I +- S) / 2``."""
    if s.n != psi.n:
        raise ValueError(f"operator acts on {s.n} qubits, state has {psi.n}")
    if not s.is_hermitian:
        raise ValueError("measured operator must be Hermitian")
    s_psi = _pauli_action(psi.amplitudes, psi.n, s)
    plus = 0.5 * (psi.amplitudes + s_psi)
    p_plus = min(max(np.vdot(plus, plus).real, 0.0), 1.0)
    if rng.random() < p_plus:
        return 1, StateVector(psi.n, plus / np.sqrt(p_plus))
    minus = psi.amplitudes - plus
    return -1, StateVector(psi.n, minus / np.sqrt(1.0 - p_plus))


def measure_all(
    psi: StateVector, ops: Sequence[PauliOperator], rng: np.random.Generator
) -> tuple[tuple[int, ...], StateVector]:
    outcomes = []
    for s in ops:
        o, psi = measure_stabilizer(psi, s, rng)
        outcomes.append(o)
    return tuple(outcomes), psi


def measure_graph_syndrome(psi: StateVector, g: Graph, rng: np.random.Generator):
    return measure_all(psi, graph_state_stabilizers(g), rng)


def fidelity(psi: StateVector, phi: StateVector) -> float:
    if psi.n != phi.n:
        raise ValueError("state sizes differ")
    return float(abs(np.vdot(psi.amplitudes, phi.amplitudes)) ** 2)


def same_up_to_phase(psi: StateVector, phi: StateVector, tol: float = 1e-10) -> bool:
    return abs(fidelity(psi, phi) - 1.0) <= tol
