"""Single-logical-qubit graph codes.

Given a graph and a vertex set L containing n, the code has logical operators
``Xbar = Z_L`` and ``Zbar = S_n`` and generators ``K_i = S_n^{[i in Q]} S_i``
for i = 1..n-1, with ``Q = L minus {n}``. Generators that commute with Xbar
are kept as-is; anticommuting ones are multiplied by S_n.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from ._backend import MAX_QUBITS, kernels
from .gf2 import gf2_in_rowspan, gf2_nullspace, gf2_rank
from .graph import Graph, graph_state_stabilizers
from .pauli import PauliOperator, commutes, mask_from_set, multiply

__all__ = [
    "CodeConstructionError",
    "CapabilityError",
    "GraphCode",
    "Syndrome",
    "LogicalClass",
    "build_code",
    "syndrome_of",
    "syndrome_via_t",
    "check_matrix",
    "logical_class",
    "in_stabilizer_group",
    "distance",
    "distance_via_normalizer",
    "parse_code_definition",
    "format_vertex_set",
]

MAX_ENUMERATION_QUBITS = 16


class CodeConstructionError(ValueError):
    pass


class CapabilityError(RuntimeError):
    """Requested size is beyond what exhaustive enumeration supports."""


class LogicalClass(enum.Enum):
    I = "I"
    X = "X"
    Y = "Y"
    Z = "Z"
    NOT_IN_NORMALIZER = "NOT_IN_NORMALIZER"


@dataclass(frozen=True)
class Syndrome:
    """Eigenvalues ``s_1..s_{n-1}`` of the code generators, each +1 or -1.

    ``mask`` has bit ``i - 1`` set exactly when ``s_i = -1``; the same
    bitmask is the Z support of ``Z_{V^-}``.
    """

    bits: tuple[int, ...]

    def __post_init__(self):
        bits = tuple(int(b) for b in self.bits)
        if any(b not in (1, -1) for b in bits):
            raise ValueError("syndrome entries must be +1 or -1")
        object.__setattr__(self, "bits", bits)

    @classmethod
    def from_mask(cls, mask: int, length: int) -> Syndrome:
        return cls(tuple(-1 if mask >> i & 1 else 1 for i in range(length)))

    @classmethod
    def parse(cls, text: str) -> Syndrome:
        """Accept ``"+-++"`` or binary ``"0100"`` (1 marks a -1 eigenvalue)."""
        s = text.strip()
        if s and set(s) <= {"+", "-"}:
            return cls(tuple(1 if c == "+" else -1 for c in s))
        if s and set(s) <= {"0", "1"}:
            return cls(tuple(1 if c == "0" else -1 for c in s))
        raise ValueError(f"syndrome must be a string of +/- or 0/1, got {text!r}")

    @property
    def mask(self) -> int:
        return sum(1 << i for i, b in enumerate(self.bits) if b == -1)

    @property
    def binary(self) -> tuple[int, ...]:
        return tuple((1 - b) // 2 for b in self.bits)

    @property
    def negative_vertices(self) -> frozenset[int]:
        return frozenset(i + 1 for i, b in enumerate(self.bits) if b == -1)

    def __len__(self) -> int:
        return len(self.bits)

    def __str__(self) -> str:
        return "".join("+" if b == 1 else "-" for b in self.bits)


@dataclass(frozen=True, eq=False)
class GraphCode:
    graph: Graph
    logical_x: PauliOperator
    logical_z: PauliOperator
    generators: tuple[PauliOperator, ...]
    q_set: frozenset[int]

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def logical_x_support(self) -> frozenset[int]:
        return self.logical_x.z_support

    @property
    def label(self) -> str:
        return f"{graph_label(self.graph)} Lx={format_vertex_set(self.logical_x_support)}"

    # int64 views fed to the kernels
    @cached_property
    def gen_x(self) -> np.ndarray:
        return np.array([k.x for k in self.generators], dtype=np.int64)

    @cached_property
    def gen_z(self) -> np.ndarray:
        return np.array([k.z for k in self.generators], dtype=np.int64)

    @cached_property
    def adjacency(self) -> np.ndarray:
        return np.array(self.graph.adjacency_masks, dtype=np.int64)

    @cached_property
    def distance(self) -> int:
        if self.n > MAX_ENUMERATION_QUBITS:
            raise CapabilityError(f"distance enumeration limited to n <= {MAX_ENUMERATION_QUBITS}")
        return int(
            kernels.min_weight_logical(
                self.gen_x,
                self.gen_z,
                np.int64(self.logical_x.z),
                np.int64(self.logical_z.x),
                np.int64(self.logical_z.z),
                self.n,
            )
        )


def graph_label(g: Graph) -> str:
    from .graph import cycle_graph

    if g.n >= 3 and g == cycle_graph(g.n):
        return f"cycle:{g.n}"
    return f"graph(n={g.n},m={len(g.edges)})"


def format_vertex_set(vertices: Iterable[int]) -> str:
    vs = sorted(vertices)
    if len(vs) > 2 and vs == list(range(vs[0], vs[-1] + 1)):
        return f"{vs[0]}..{vs[-1]}"
    return ".".join(str(v) for v in vs)


def build_code(g: Graph, logical_x_support: Iterable[int]) -> GraphCode:
    n = g.n
    if n < 2:
        raise CodeConstructionError("graph code needs n >= 2")
    support = frozenset(int(v) for v in logical_x_support)
    try:
        xmask = mask_from_set(n, support)
    except ValueError as exc:
        raise CodeConstructionError(str(exc)) from None
    if n not in support:
        raise CodeConstructionError(f"logical X support must contain vertex n={n} so that Zbar = S_n anticommutes")
    stabs = graph_state_stabilizers(g)
    s_n = stabs[-1]
    q_set = support - {n}
    gens = tuple(multiply(s_n, stabs[i - 1]) if i in q_set else stabs[i - 1] for i in range(1, n))
    return GraphCode(
        graph=g,
        logical_x=PauliOperator(n, 0, xmask),
        logical_z=s_n,
        generators=gens,
        q_set=q_set,
    )


def _check_size(code: GraphCode, p: PauliOperator) -> None:
    if p.n != code.n:
        raise ValueError(f"operator acts on {p.n} qubits, code has {code.n}")


def syndrome_of(code: GraphCode, error: PauliOperator) -> Syndrome:
    _check_size(code, error)
    return Syndrome(tuple(1 if commutes(k, error) else -1 for k in code.generators))


def syndrome_via_t(code: GraphCode, z_set: Iterable[int], x_set: Iterable[int]) -> Syndrome:
    """Syndrome of ``Z_{z_set} X_{x_set}`` through the per-vertex parity
    ``t(i) = [i in z_set] + |x_set & N_i| mod 2`` and
    ``s_v = (-1)^(t(v) + [v in Q] t(n))``."""
    n = code.n
    zmask = mask_from_set(n, z_set)
    xmask = mask_from_set(n, x_set)
    adj = code.graph.adjacency_masks
    t = [((zmask >> (i - 1)) & 1) ^ ((xmask & adj[i - 1]).bit_count() & 1) for i in range(1, n + 1)]
    tn = t[n - 1]
    return Syndrome(tuple((-1) ** (t[v - 1] ^ (tn if v in code.q_set else 0)) for v in range(1, n)))


def check_matrix(code: GraphCode) -> np.ndarray:
    """Row i is ``(z(K_i) | x(K_i))`` so that ``H @ (x_e | z_e) mod 2`` is the binary syndrome."""
    n = code.n
    h = np.zeros((n - 1, 2 * n), dtype=np.uint8)
    for r, k in enumerate(code.generators):
        for q in range(n):
            h[r, q] = k.z >> q & 1
            h[r, n + q] = k.x >> q & 1
    return h


def _symplectic_row(p: PauliOperator) -> int:
    return p.x | (p.z << p.n)


def logical_class(code: GraphCode, p: PauliOperator) -> LogicalClass:
    _check_size(code, p)
    if not all(commutes(k, p) for k in code.generators):
        return LogicalClass.NOT_IN_NORMALIZER
    anti_x = not commutes(code.logical_x, p)
    anti_z = not commutes(code.logical_z, p)
    if anti_x and anti_z:
        return LogicalClass.Y
    if anti_x:
        return LogicalClass.Z
    if anti_z:
        return LogicalClass.X
    return LogicalClass.I


def in_stabilizer_group(code: GraphCode, p: PauliOperator) -> bool:
    """GF(2) membership of p (phase ignored) in the span of the generators."""
    _check_size(code, p)
    return gf2_in_rowspan(_symplectic_row(p), [_symplectic_row(k) for k in code.generators])


def generator_rank(code: GraphCode, extra: Sequence[PauliOperator] = ()) -> int:
    return gf2_rank([_symplectic_row(k) for k in (*code.generators, *extra)])


def distance(code: GraphCode) -> int:
    """Minimum weight of a non-trivial logical operator, by weight-shell search."""
    return code.distance


def distance_via_normalizer(code: GraphCode) -> int:
    """Independent route: null space of the symplectic check matrix.

    Enumerates the 2^(n+1) elements of the normalizer and discards those in
    the stabilizer span.
    """
    n = code.n
    if n > MAX_ENUMERATION_QUBITS:
        raise CapabilityError(f"normalizer enumeration limited to n <= {MAX_ENUMERATION_QUBITS}")
    h = check_matrix(code)  # columns: x_e then z_e
    basis = gf2_nullspace(h)
    rows = [int(sum(int(b) << i for i, b in enumerate(v))) for v in basis]
    stab = [_symplectic_row(k) for k in code.generators]
    best = None
    full = (1 << n) - 1
    for choice in itertools.product((0, 1), repeat=len(rows)):
        vec = 0
        for c, row in zip(choice, rows):
            if c:
                vec ^= row
        if vec == 0 or gf2_in_rowspan(vec, stab):
            continue
        w = ((vec & full) | (vec >> n)).bit_count()
        if best is None or w < best:
            best = w
    return best if best is not None else -1


def parse_code_definition(text: str, base_dir=None) -> GraphCode:
    """Code file: a graph reference line (path or ``cycle:<n>``) and ``Lx v1 v2 ...``."""
    from pathlib import Path

    from .graph import load_graph

    graph_ref = None
    lx = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "Lx":
            try:
                lx = [int(v) for v in parts[1:]]
            except ValueError:
                raise CodeConstructionError(f"line {lineno}: non-integer vertex in {raw!r}") from None
        elif graph_ref is None:
            graph_ref = parts[-1] if parts[0] == "graph" else line
        else:
            raise CodeConstructionError(f"line {lineno}: unexpected {raw!r}")
    if graph_ref is None or lx is None:
        raise CodeConstructionError("code definition needs a graph reference and an 'Lx' line")
    if not graph_ref.startswith("cycle:") and base_dir is not None:
        graph_ref = str(Path(base_dir) / graph_ref)
    return build_code(load_graph(graph_ref), lx)


def check_kernel_width(code: GraphCode) -> None:
    if code.n > MAX_QUBITS:
        raise CapabilityError(f"compiled kernels support n <= {MAX_QUBITS}")
