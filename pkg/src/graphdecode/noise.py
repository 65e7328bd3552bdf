"""Pauli channels for sampling, plus single-qubit Kraus decomposition."""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .pauli import PauliOperator

__all__ = [
    "PauliChannel",
    "bit_flip",
    "phase_flip",
    "depolarizing",
    "iid_pauli",
    "parse_channel",
    "sample_error",
    "sample_errors",
    "decompose_kraus",
    "check_completeness",
    "completeness_report",
    "amplitude_damping",
    "BLOCK_SIZE",
]

# Trials are drawn in fixed blocks; block b always comes from the stream
# spawned at (seed, b), so any partition of blocks reproduces the same errors.
BLOCK_SIZE = 4096


@dataclass(frozen=True)
class PauliChannel:
    """Independent per-qubit channel applying X, Y, Z with probabilities ``px, py, pz``."""

    kind: str
    px: float
    py: float
    pz: float
    param: tuple[float, ...] = ()

    def __post_init__(self):
        for p in (self.px, self.py, self.pz):
            if not 0.0 <= p <= 1.0:
                raise ValueError(f"probability {p} outside [0, 1]")
        if self.px + self.py + self.pz > 1.0 + 1e-12:
            raise ValueError("px + py + pz exceeds 1")

    @property
    def p_error(self) -> float:
        return self.px + self.py + self.pz

    def describe(self) -> str:
        return f"{self.kind}:" + ",".join(f"{v:.9g}" for v in self.param)

    def __str__(self) -> str:
        return self.describe()


def bit_flip(q: float) -> PauliChannel:
    return PauliChannel("bitflip", q, 0.0, 0.0, (q,))


def phase_flip(q: float) -> PauliChannel:
    return PauliChannel("phaseflip", 0.0, 0.0, q, (q,))


def depolarizing(p: float) -> PauliChannel:
    return PauliChannel("depolarizing", p / 3, p / 3, p / 3, (p,))


def iid_pauli(px: float, py: float, pz: float) -> PauliChannel:
    return PauliChannel("iid", px, py, pz, (px, py, pz))


_FAMILIES = {"depolarizing": depolarizing, "bitflip": bit_flip, "phaseflip": phase_flip}


def parse_channel(text: str) -> PauliChannel:
    """``depolarizing:0.01``, ``bitflip:0.05``, ``phaseflip:0.05``, ``iid:px,py,pz``."""
    kind, sep, rest = text.strip().partition(":")
    if not sep:
        raise ValueError(f"channel string needs '<kind>:<params>', got {text!r}")
    try:
        values = [float(v) for v in rest.split(",")]
    except ValueError:
        raise ValueError(f"non-numeric channel parameter in {text!r}") from None
    if kind == "iid":
        if len(values) != 3:
            raise ValueError("iid channel takes three probabilities px,py,pz")
        return iid_pauli(*values)
    if kind not in _FAMILIES:
        raise ValueError(f"unknown channel kind {kind!r}")
    if len(values) != 1:
        raise ValueError(f"{kind} channel takes one probability")
    return _FAMILIES[kind](values[0])


def channel_family(kind: str):
    """Constructor ``p -> PauliChannel`` for a sweepable family name."""
    if kind not in _FAMILIES:
        raise ValueError(f"unknown channel family {kind!r}")
    return _FAMILIES[kind]


def _block(ch: PauliChannel, n: int, seed: int, block: int) -> tuple[np.ndarray, np.ndarray]:
    rng = np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(block,)))
    u = rng.random((BLOCK_SIZE, n))
    is_x = u < ch.px
    is_y = (u >= ch.px) & (u < ch.px + ch.py)
    is_z = (u >= ch.px + ch.py) & (u < ch.px + ch.py + ch.pz)
    weights = np.left_shift(np.int64(1), np.arange(n, dtype=np.int64))
    ex = ((is_x | is_y) * weights).sum(axis=1)
    ez = ((is_z | is_y) * weights).sum(axis=1)
    return ex, ez


def sample_errors(ch: PauliChannel, n: int, seed: int, start: int, count: int) -> tuple[np.ndarray, np.ndarray]:
    """Errors for trials ``start .. start+count-1`` as int64 (x, z) mask arrays."""
    if n > 62:
        raise ValueError("batched sampling supports n <= 62")
    xs, zs = [], []
    end = start + count
    b = start // BLOCK_SIZE
    while b * BLOCK_SIZE < end:
        ex, ez = _block(ch, n, seed, b)
        lo = max(start - b * BLOCK_SIZE, 0)
        hi = min(end - b * BLOCK_SIZE, BLOCK_SIZE)
        xs.append(ex[lo:hi])
        zs.append(ez[lo:hi])
        b += 1
    if not xs:
        return np.zeros(0, np.int64), np.zeros(0, np.int64)
    return np.concatenate(xs), np.concatenate(zs)


def sample_error(ch: PauliChannel, n: int, rng_seed: int, trial: int) -> PauliOperator:
    ex, ez = sample_errors(ch, n, rng_seed, trial, 1)
    x, z = int(ex[0]), int(ez[0])
    return PauliOperator(n, x, z, -((x & z).bit_count()))


# --- Kraus operators -------------------------------------------------------

_I = np.eye(2, dtype=complex)
_X = np.array([[0, 1], [1, 0]], dtype=complex)
_Z = np.array([[1, 0], [0, -1]], dtype=complex)
_ZX = _Z @ _X
_BASIS = (_I, _X, _Z, _ZX)


def decompose_kraus(m) -> tuple[complex, complex, complex, complex]:
    """Coefficients ``(a, b, c, d)`` with ``m = a I + b X + c Z + d ZX``.

    The basis is orthogonal under the Hilbert-Schmidt product with norm 2.
    """
    m = np.asarray(m, dtype=complex)
    if m.shape != (2, 2):
        raise ValueError("expected a 2x2 matrix")
    return tuple(complex(np.trace(b.conj().T @ m) / 2) for b in _BASIS)


def reconstruct_kraus(coeffs) -> np.ndarray:
    return sum(c * b for c, b in zip(coeffs, _BASIS))


class CompletenessReport(NamedTuple):
    matrix_ok: bool
    matrix_deviation: float
    coefficient_sum: float
    coefficient_ok: bool


def completeness_report(ops: Sequence, tol: float = 1e-10) -> CompletenessReport:
    """Both completeness checks: ``sum E^dag E = I`` and ``sum |a|^2+|b|^2+|c|^2+|d|^2 = 1``.

    The second identity only follows from the first when the cross terms
    cancel, so the two are reported separately.
    """
    total = np.zeros((2, 2), dtype=complex)
    coeff_sum = 0.0
    for e in ops:
        e = np.asarray(e, dtype=complex)
        total += e.conj().T @ e
        coeff_sum += float(sum(abs(c) ** 2 for c in decompose_kraus(e)))
    dev = float(np.max(np.abs(total - _I)))
    return CompletenessReport(dev < tol, dev, coeff_sum, abs(coeff_sum - 1.0) < tol)


def check_completeness(ops: Sequence, tol: float = 1e-10) -> bool:
    return completeness_report(ops, tol).matrix_ok


def amplitude_damping(gamma: float) -> list[np.ndarray]:
    k0 = np.array([[1, 0], [0, np.sqrt(1 - gamma)]], dtype=complex)
    k1 = np.array([[0, np.sqrt(gamma)], [0, 0]], dtype=complex)
    return [k0, k1]
