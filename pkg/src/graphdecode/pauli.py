"""n-qubit Pauli operators in symplectic form.

An operator is stored as ``i**phase * Z^z X^x`` where ``x`` and ``z`` are
integer bitmasks (bit ``v - 1`` holds vertex ``v``). Within each qubit the Z
factor sits left of the X factor, so ``Y = -i Z X`` has ``phase == 3``.

Python ints are unbounded, so there is no qubit cap at this level; the
compiled kernels work on 64-bit masks and impose their own limit.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable

import numpy as np

__all__ = [
    "PauliOperator",
    "pauli_from_supports",
    "identity",
    "multiply",
    "commutes",
    "weight",
    "equal_up_to_phase",
    "parse_pauli",
    "mask_from_set",
    "set_from_mask",
]

_PHASE_PREFIX = {0: "", 1: "i", 2: "-", 3: "-i"}
_PREFIX_PHASE = {"": 0, "+": 0, "i": 1, "+i": 1, "-": 2, "-i": 3}


def mask_from_set(n: int, vertices: Iterable[int]) -> int:
    """Bitmask of a 1-indexed vertex set; raises ValueError when out of range."""
    mask = 0
    for v in vertices:
        v = int(v)
        if not 1 <= v <= n:
            raise ValueError(f"vertex {v} out of range 1..{n}")
        mask |= 1 << (v - 1)
    return mask


def set_from_mask(mask: int) -> frozenset[int]:
    out = []
    v = 1
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return frozenset(out)


@dataclass(frozen=True)
class PauliOperator:
    n: int
    x: int
    z: int
    phase: int = 0

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("qubit count must be non-negative")
        limit = 1 << self.n
        if not (0 <= self.x < limit and 0 <= self.z < limit):
            raise ValueError(f"support exceeds {self.n} qubits")
        object.__setattr__(self, "phase", self.phase % 4)

    @property
    def x_support(self) -> frozenset[int]:
        return set_from_mask(self.x)

    @property
    def z_support(self) -> frozenset[int]:
        return set_from_mask(self.z)

    @property
    def support(self) -> frozenset[int]:
        return set_from_mask(self.x | self.z)

    @property
    def weight(self) -> int:
        return (self.x | self.z).bit_count()

    @property
    def is_hermitian(self) -> bool:
        # (i^k Z^z X^x)^dagger = i^-k (-1)^{|x&z|} Z^z X^x
        return (2 * self.phase + 2 * (self.x & self.z).bit_count()) % 4 == 0

    def __mul__(self, other: PauliOperator) -> PauliOperator:
        return multiply(self, other)

    def letters(self) -> str:
        """Per-qubit letters, e.g. ``"IXZZI"``; phase dropped."""
        out = []
        for q in range(self.n):
            xb = (self.x >> q) & 1
            zb = (self.z >> q) & 1
            out.append("IXZY"[xb + 2 * zb])
        return "".join(out)

    def hermitian_phase(self) -> int:
        """Phase exponent relative to the product of Hermitian letters I/X/Y/Z."""
        return (self.phase + (self.x & self.z).bit_count()) % 4

    def compact(self) -> str:
        return _PHASE_PREFIX[self.hermitian_phase()] + self.letters()

    def __str__(self) -> str:
        terms = [
            f"{letter}{q + 1}" for q, letter in enumerate(self.letters()) if letter != "I"
        ]
        body = " ".join(terms) if terms else "I"
        return _PHASE_PREFIX[self.hermitian_phase()] + body

    def to_matrix(self) -> np.ndarray:
        """Dense 2^n x 2^n matrix, qubit 1 as the most significant tensor factor."""
        single = {
            "I": np.eye(2, dtype=complex),
            "X": np.array([[0, 1], [1, 0]], dtype=complex),
            "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
            "Z": np.array([[1, 0], [0, -1]], dtype=complex),
        }
        m = np.ones((1, 1), dtype=complex)
        for letter in self.letters():
            m = np.kron(m, single[letter])
        return (1j ** self.hermitian_phase()) * m


def pauli_from_supports(n: int, x_set: Iterable[int] = (), z_set: Iterable[int] = ()) -> PauliOperator:
    """Return ``Z_{z_set} X_{x_set}`` with phase exponent 0."""
    return PauliOperator(n, mask_from_set(n, x_set), mask_from_set(n, z_set), 0)


def identity(n: int) -> PauliOperator:
    return PauliOperator(n, 0, 0, 0)


def _check_sizes(p: PauliOperator, q: PauliOperator) -> None:
    if p.n != q.n:
        raise ValueError(f"qubit count mismatch: {p.n} != {q.n}")


def multiply(p: PauliOperator, q: PauliOperator) -> PauliOperator:
    # Z^a X^b Z^c X^d = (-1)^{|b & c|} Z^{a^c} X^{b^d}
    _check_sizes(p, q)
    sign = 2 * (p.x & q.z).bit_count()
    return PauliOperator(p.n, p.x ^ q.x, p.z ^ q.z, p.phase + q.phase + sign)


def commutes(p: PauliOperator, q: PauliOperator) -> bool:
    _check_sizes(p, q)
    return ((p.x & q.z).bit_count() + (p.z & q.x).bit_count()) % 2 == 0


def weight(p: PauliOperator) -> int:
    return p.weight


def equal_up_to_phase(p: PauliOperator, q: PauliOperator) -> bool:
    _check_sizes(p, q)
    return p.x == q.x and p.z == q.z


_TERM = re.compile(r"^([IXYZ])(\d+)$")


def parse_pauli(text: str, n: int | None = None) -> PauliOperator:
    """Parse either compact ``"-iXYZI"`` or term form ``"X1 Z2 Z5"``.

    Term form needs ``n`` unless every qubit is named. A leading sign
    (``+``, ``-``, ``i``, ``-i``) applies to the Hermitian-letter product.
    """
    s = text.strip()
    prefix = ""
    for cand in ("-i", "+i", "i", "-", "+"):
        if s.startswith(cand) and (len(s) == len(cand) or s[len(cand)] in "IXYZ"):
            prefix = cand
            s = s[len(cand):]
            break
    letters: dict[int, str] = {}
    if re.fullmatch(r"[IXYZ]+", s) and not re.search(r"\d", s):
        size = len(s)
        if n is not None and n != size:
            raise ValueError(f"expected {n} letters, got {size}")
        letters = {q + 1: ch for q, ch in enumerate(s)}
    else:
        if n is None:
            raise ValueError("qubit count required for term-form Pauli strings")
        size = n
        if s not in ("", "I"):
            for tok in s.split():
                m = _TERM.match(tok)
                if not m:
                    raise ValueError(f"bad Pauli term {tok!r}")
                q = int(m.group(2))
                if not 1 <= q <= n:
                    raise ValueError(f"qubit {q} out of range 1..{n}")
                if q in letters:
                    raise ValueError(f"qubit {q} named twice")
                letters[q] = m.group(1)
    x = z = 0
    n_y = 0
    for q, ch in letters.items():
        bit = 1 << (q - 1)
        if ch in "XY":
            x |= bit
        if ch in "ZY":
            z |= bit
        n_y += ch == "Y"
    # each Y contributes -i relative to Z X
    phase = _PREFIX_PHASE[prefix] - n_y
    return PauliOperator(size, x, z, phase)
