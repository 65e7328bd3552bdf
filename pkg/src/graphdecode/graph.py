"""Simple undirected graphs and their graph-state stabilizers."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path

import numpy as np

from .pauli import PauliOperator

__all__ = [
    "Graph",
    "GraphParseError",
    "cycle_graph",
    "complete_graph",
    "empty_graph",
    "random_graph",
    "neighborhood",
    "graph_state_stabilizers",
    "parse_graph",
    "render_graph",
    "load_graph",
]


class GraphParseError(ValueError):
    """Malformed edge-list document."""


@dataclass(frozen=True)
class Graph:
    """Vertices are ``1..n``; edges are stored as sorted pairs ``(u, v)``, ``u < v``."""

    n: int
    edges: frozenset[tuple[int, int]]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("graph needs at least one vertex")
        norm = set()
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (1 <= u <= self.n and 1 <= v <= self.n):
                raise ValueError(f"edge ({u}, {v}) out of range 1..{self.n}")
            norm.add((min(u, v), max(u, v)))
        object.__setattr__(self, "edges", frozenset(norm))

    @cached_property
    def adjacency_masks(self) -> tuple[int, ...]:
        """``adjacency_masks[v - 1]`` is the bitmask of N_v."""
        masks = [0] * self.n
        for u, v in self.edges:
            masks[u - 1] |= 1 << (v - 1)
            masks[v - 1] |= 1 << (u - 1)
        return tuple(masks)

    def neighborhood(self, v: int) -> frozenset[int]:
        return neighborhood(self, v)


def neighborhood(g: Graph, v: int) -> frozenset[int]:
    if not 1 <= v <= g.n:
        raise ValueError(f"vertex {v} out of range 1..{g.n}")
    mask = g.adjacency_masks[v - 1]
    return frozenset(u for u in range(1, g.n + 1) if mask >> (u - 1) & 1)


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError(f"cycle needs n >= 3, got {n}")
    edges = {(i, i + 1) for i in range(1, n)} | {(1, n)}
    return Graph(n, frozenset(edges))


def complete_graph(n: int) -> Graph:
    return Graph(n, frozenset(itertools.combinations(range(1, n + 1), 2)))


def empty_graph(n: int) -> Graph:
    return Graph(n, frozenset())


def random_graph(n: int, edge_probability: float, seed: int) -> Graph:
    """Erdos-Renyi G(n, p); deterministic for a fixed seed."""
    if not 0.0 <= edge_probability <= 1.0:
        raise ValueError("edge_probability must lie in [0, 1]")
    rng = np.random.default_rng(seed)
    pairs = list(itertools.combinations(range(1, n + 1), 2))
    keep = rng.random(len(pairs)) < edge_probability
    return Graph(n, frozenset(p for p, k in zip(pairs, keep) if k))


def graph_state_stabilizers(g: Graph) -> list[PauliOperator]:
    """Generators ``S_i = X_i Z_{N_i}`` for ``i = 1..n``."""
    return [
        PauliOperator(g.n, 1 << (i - 1), g.adjacency_masks[i - 1])
        for i in range(1, g.n + 1)
    ]


def parse_graph(text: str) -> Graph:
    """Parse an edge-list document or a ``cycle:<n>`` shorthand.

    Format: ``#`` comments, a first line ``n <count>``, then ``e <u> <v>`` lines.
    """
    stripped = text.strip()
    if stripped.startswith("cycle:"):
        try:
            return cycle_graph(int(stripped[len("cycle:"):]))
        except ValueError as exc:
            raise GraphParseError(f"bad cycle shorthand {stripped!r}: {exc}") from None

    n = None
    edges: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if n is None:
            if len(parts) != 2 or parts[0] != "n":
                raise GraphParseError(f"line {lineno}: expected 'n <count>', got {raw!r}")
            try:
                n = int(parts[1])
            except ValueError:
                raise GraphParseError(f"line {lineno}: bad vertex count {parts[1]!r}") from None
            if n < 1:
                raise GraphParseError(f"line {lineno}: vertex count must be positive")
            continue
        if len(parts) != 3 or parts[0] != "e":
            raise GraphParseError(f"line {lineno}: expected 'e <u> <v>', got {raw!r}")
        try:
            u, v = int(parts[1]), int(parts[2])
        except ValueError:
            raise GraphParseError(f"line {lineno}: non-integer vertex in {raw!r}") from None
        if u == v:
            raise GraphParseError(f"line {lineno}: self-loop at vertex {u}")
        for w in (u, v):
            if not 1 <= w <= n:
                raise GraphParseError(f"line {lineno}: vertex {w} out of range 1..{n}")
        key = (min(u, v), max(u, v))
        if key in edges:
            raise GraphParseError(f"line {lineno}: duplicate edge {key}")
        edges.add(key)
    if n is None:
        raise GraphParseError("missing 'n <count>' header")
    return Graph(n, frozenset(edges))


def render_graph(g: Graph) -> str:
    lines = [f"n {g.n}"] + [f"e {u} {v}" for u, v in sorted(g.edges)]
    return "\n".join(lines) + "\n"


def load_graph(ref: str) -> Graph:
    """Accept a ``cycle:<n>`` shorthand or a path to an edge-list file."""
    if ref.startswith("cycle:"):
        return parse_graph(ref)
    path = Path(ref)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise GraphParseError(f"cannot read graph file {ref!r}: {exc.strerror}") from None
    return parse_graph(text)
