"""Graph-partitioning instances: generation, JSON I/O and a brute-force oracle.

Spin/bit convention: spin s = +1 is bit 0 and s = -1 is bit 1.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .operators import basis_bits

BRUTE_FORCE_MAX_N = 24


class GraphFormatError(ValueError):
    pass


class InfeasibleConstraintError(ValueError):
    pass


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph on vertices 0..n-1 with canonically sorted edges."""

    n: int
    edges: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        if self.n < 1:
            raise GraphFormatError("graph needs at least one vertex")
        canon = []
        for e in self.edges:
            if len(e) != 2:
                raise GraphFormatError(f"edge {e!r} is not a pair")
            i, j = int(e[0]), int(e[1])
            if i == j:
                raise GraphFormatError(f"self-loop ({i},{j})")
            if not (0 <= i < self.n and 0 <= j < self.n):
                raise GraphFormatError(f"edge ({i},{j}) out of range for n={self.n}")
            canon.append((min(i, j), max(i, j)))
        if len(set(canon)) != len(canon):
            raise GraphFormatError("duplicate edge")
        object.__setattr__(self, "edges", tuple(sorted(canon)))

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def relabel(self, perm: Iterable[int]) -> "Graph":
        """Graph with vertex v renamed to perm[v]."""
        perm = list(perm)
        return Graph(self.n, tuple((perm[i], perm[j]) for i, j in self.edges))


def random_graph(n: int, edge_prob: float = 0.5, seed: int = 0) -> Graph:
    """Erdos-Renyi G(n, p): each of the n(n-1)/2 pairs kept independently."""
    if n < 2:
        raise ValueError("random_graph needs n >= 2")
    if not 0.0 <= edge_prob <= 1.0:
        raise ValueError("edge_prob must lie in [0, 1]")
    rng = np.random.default_rng(seed)
    pairs = list(itertools.combinations(range(n), 2))
    keep = rng.random(len(pairs)) < edge_prob
    return Graph(n, tuple(p for p, k in zip(pairs, keep) if k))


def path_graph(n: int) -> Graph:
    return Graph(n, tuple((i, i + 1) for i in range(n - 1)))


def complete_graph(n: int) -> Graph:
    return Graph(n, tuple(itertools.combinations(range(n), 2)))


def graph_to_json(g: Graph) -> str:
    return json.dumps({"n": g.n, "edges": [list(e) for e in g.edges]})


def graph_from_json(doc: str | dict) -> Graph:
    if isinstance(doc, str):
        try:
            doc = json.loads(doc)
        except json.JSONDecodeError as exc:
            raise GraphFormatError(f"malformed graph document: {exc}") from exc
    if not isinstance(doc, dict) or "n" not in doc or "edges" not in doc:
        raise GraphFormatError("graph document needs keys 'n' and 'edges'")
    n, edges = doc["n"], doc["edges"]
    if not isinstance(n, int) or isinstance(n, bool):
        raise GraphFormatError("'n' must be an integer")
    if not isinstance(edges, list) or not all(
        isinstance(e, (list, tuple)) and all(isinstance(v, int) for v in e) for e in edges
    ):
        raise GraphFormatError("'edges' must be a list of integer pairs")
    return Graph(n, tuple(tuple(e) for e in edges))


def bits_to_str(index: int, n: int) -> str:
    return format(index, f"0{n}b")


def cut_values(g: Graph) -> np.ndarray:
    """Cut size of every basis state, indexed by basis integer."""
    bits = basis_bits(g.n)
    cut = np.zeros(2**g.n, dtype=np.int64)
    for i, j in g.edges:
        cut += bits[:, i] != bits[:, j]
    return cut


def cut_value(g: Graph, bitstring: str) -> int:
    return sum(bitstring[i] != bitstring[j] for i, j in g.edges)


@dataclass(frozen=True)
class PartitionSolution:
    n: int
    optimal_cut: int
    optimal_states: frozenset[str]
    constraint_value: int

    @property
    def indices(self) -> np.ndarray:
        """Basis indices of the optimal states, ascending."""
        return np.array(sorted(int(b, 2) for b in self.optimal_states), dtype=np.int64)


def brute_force_solve(g: Graph, c: int = 0) -> PartitionSolution:
    """Exact minimum cut over all assignments with spin sum ``c``."""
    if g.n > BRUTE_FORCE_MAX_N:
        raise ValueError(f"brute force limited to n <= {BRUTE_FORCE_MAX_N}")
    n = g.n
    if (n + c) % 2 or abs(c) > n:
        raise InfeasibleConstraintError(f"no assignment of {n} spins sums to {c}")
    idx = np.arange(2**n, dtype=np.int64)
    popcount = np.zeros_like(idx)
    cut = np.zeros_like(idx)
    bit = [(idx >> (n - 1 - q)) & 1 for q in range(n)]
    for q in range(n):
        popcount += bit[q]
    for i, j in g.edges:
        cut += bit[i] ^ bit[j]
    feasible = n - 2 * popcount == c
    best = int(cut[feasible].min())
    winners = idx[feasible & (cut == best)]
    return PartitionSolution(
        n=n,
        optimal_cut=best,
        optimal_states=frozenset(bits_to_str(int(k), n) for k in winners),
        constraint_value=c,
    )
