"""Undirected communication graphs: ring lattices and small-world rewiring."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

from .errors import ParameterError


@dataclass(frozen=True)
class Graph:
    """Immutable undirected graph; ``adjacency[i]`` is sorted ascending."""

    n: int
    adjacency: tuple[tuple[int, ...], ...]


def _check_lattice_params(n: int, k: int) -> None:
    if n < 3:
        raise ParameterError(f"need at least 3 nodes, got {n}")
    if k % 2 != 0:
        raise ParameterError(f"ring degree k must be even, got {k}")
    if k >= n:
        raise ParameterError(f"ring degree k must be below n, got k={k}, n={n}")


def _freeze(n: int, adj: list[set[int]]) -> Graph:
    return Graph(n, tuple(tuple(sorted(s)) for s in adj))


def empty_graph(n: int) -> Graph:
    """Graph with n nodes and no edges (used when nobody communicates)."""
    if n < 1:
        raise ParameterError(f"need at least 1 node, got {n}")
    return Graph(n, tuple(() for _ in range(n)))


def ring_lattice(n: int, k: int) -> Graph:
    """Ring of n nodes, each tied to its k/2 nearest neighbors per side."""
    _check_lattice_params(n, k)
    adj: list[set[int]] = [set() for _ in range(n)]
    for offset in range(1, k // 2 + 1):
        for i in range(n):
            j = (i + offset) % n
            adj[i].add(j)
            adj[j].add(i)
    return _freeze(n, adj)


def watts_strogatz(n: int, k: int, p_rewire: float, rng: np.random.Generator) -> Graph:
    """Small-world graph: ring lattice with random edge rewiring.

    Each original ring edge is, with probability ``p_rewire``, detached at
    its far endpoint and reattached from its base node to a uniformly
    drawn non-neighbor (self-loops and duplicates are rejected and
    redrawn). Edge count is preserved; a node already tied to everyone
    keeps its edge. Deterministic given the generator state.
    """
    _check_lattice_params(n, k)
    if not 0.0 <= p_rewire <= 1.0:
        raise ParameterError(f"p_rewire must lie in [0, 1], got {p_rewire!r}")
    adj: list[set[int]] = [set() for _ in range(n)]
    for offset in range(1, k // 2 + 1):
        for i in range(n):
            j = (i + offset) % n
            adj[i].add(j)
            adj[j].add(i)
    for offset in range(1, k // 2 + 1):
        for i in range(n):
            if rng.random() >= p_rewire:
                continue
            if len(adj[i]) >= n - 1:
                continue  # saturated node: no valid target exists
            old = (i + offset) % n
            new = int(rng.integers(n))
            while new == i or new in adj[i]:
                new = int(rng.integers(n))
            adj[i].discard(old)
            adj[old].discard(i)
            adj[i].add(new)
            adj[new].add(i)
    return _freeze(n, adj)


def neighbors(g: Graph, i: int) -> list[int]:
    """Neighbor ids of node i in ascending order."""
    if not 0 <= i < g.n:
        raise ParameterError(f"node index {i} out of range for n={g.n}")
    return list(g.adjacency[i])


def edges(g: Graph) -> list[tuple[int, int]]:
    """All edges as (i, j) with i < j, ascending."""
    out = []
    for i, nbrs in enumerate(g.adjacency):
        for j in nbrs:
            if i < j:
                out.append((i, j))
    out.sort()
    return out


def format_edge_list(g: Graph) -> str:
    """Text dump: one ``i j`` pair per line, i < j, ascending."""
    return "".join(f"{i} {j}\n" for i, j in edges(g))


def is_connected(g: Graph) -> bool:
    """True when every node is reachable from node 0 (single node: True)."""
    if g.n == 1:
        return True
    seen = {0}
    queue = deque([0])
    while queue:
        u = queue.popleft()
        for v in g.adjacency[u]:
            if v not in seen:
                seen.add(v)
                queue.append(v)
    return len(seen) == g.n
