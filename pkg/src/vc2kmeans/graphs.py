"""Simple undirected graphs with DIMACS-style edge-list I/O.

Vertices are the integers 1..n. Edges are stored canonically as
(min, max) pairs in sorted order, so iteration order -- and every
downstream tie-break that relies on edge order -- is deterministic.
Graph values are immutable after construction and safe to share.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

Edge = tuple[int, int]


class FormatError(ValueError):
    """Malformed text input; carries the 1-based offending line number."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph on vertices 1..n: no loops, no parallel edges.

    Isolated vertices are allowed (n may exceed the largest endpoint).
    """

    n: int
    edges: tuple[Edge, ...] = ()

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("vertex count must be non-negative")
        canon = []
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (1 <= u <= self.n and 1 <= v <= self.n):
                raise ValueError(f"edge ({u},{v}) has endpoint outside 1..{self.n}")
            canon.append((u, v) if u < v else (v, u))
        dedup = sorted(set(canon))
        if len(dedup) != len(canon):
            raise ValueError("duplicate edge")
        object.__setattr__(self, "edges", tuple(dedup))

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def adjacency(self) -> tuple[frozenset[int], ...]:
        """Neighbor sets indexed by vertex; index 0 is unused."""
        nbrs: list[set[int]] = [set() for _ in range(self.n + 1)]
        for u, v in self.edges:
            nbrs[u].add(v)
            nbrs[v].add(u)
        return tuple(frozenset(s) for s in nbrs)

    def neighbors(self, v: int) -> frozenset[int]:
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def degrees(self) -> list[int]:
        return [len(self.adjacency[v]) for v in range(1, self.n + 1)]

    def max_degree(self) -> int:
        return max(self.degrees(), default=0)

    def has_edge(self, u: int, v: int) -> bool:
        if not (1 <= u <= self.n and 1 <= v <= self.n):
            return False
        return v in self.adjacency[u]


def parse_graph(text: str) -> Graph:
    """Parse edge-list text: 'c' comments, one 'p edge <n> <m>' header, m 'e u v' lines."""
    n = None
    m_declared = None
    edges: list[Edge] = []
    seen: set[Edge] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if n is not None:
                raise FormatError("duplicate 'p' header", lineno)
            if len(parts) != 4 or parts[1] != "edge":
                raise FormatError(f"malformed header {line!r}, expected 'p edge <n> <m>'", lineno)
            try:
                n, m_declared = int(parts[2]), int(parts[3])
            except ValueError:
                raise FormatError(f"non-integer counts in header {line!r}", lineno) from None
            if n < 0 or m_declared < 0:
                raise FormatError("negative counts in header", lineno)
        elif parts[0] == "e":
            if n is None:
                raise FormatError("edge line before 'p edge' header", lineno)
            if len(parts) != 3:
                raise FormatError(f"malformed edge line {line!r}", lineno)
            try:
                u, v = int(parts[1]), int(parts[2])
            except ValueError:
                raise FormatError(f"non-integer endpoint in {line!r}", lineno) from None
            if u == v:
                raise FormatError(f"loop at vertex {u}", lineno)
            if not (1 <= u <= n and 1 <= v <= n):
                raise FormatError(f"endpoint of ({u},{v}) outside 1..{n}", lineno)
            e = (u, v) if u < v else (v, u)
            if e in seen:
                raise FormatError(f"duplicate edge ({e[0]},{e[1]})", lineno)
            seen.add(e)
            edges.append(e)
        else:
            raise FormatError(f"unrecognized line {line!r}", lineno)
    if n is None:
        raise FormatError("missing 'p edge <n> <m>' header")
    if len(edges) != m_declared:
        raise FormatError(f"header declares {m_declared} edges, found {len(edges)}")
    return Graph(n, tuple(edges))


def serialize_graph(g: Graph) -> str:
    lines = [f"p edge {g.n} {g.m}"]
    lines.extend(f"e {u} {v}" for u, v in g.edges)
    return "\n".join(lines) + "\n"


def load_graph(path) -> Graph:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_graph(fh.read())


def save_graph(g: Graph, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize_graph(g))


def adjacency_matrix(g: Graph) -> np.ndarray:
    """Symmetric 0/1 matrix with zero diagonal, row/col i for vertex i+1."""
    a = np.zeros((g.n, g.n), dtype=np.int64)
    for u, v in g.edges:
        a[u - 1, v - 1] = 1
        a[v - 1, u - 1] = 1
    return a


def find_triangle(g: Graph) -> tuple[int, int, int] | None:
    """Some triangle (u < v < w) if one exists, else None."""
    adj = g.adjacency
    for u, v in g.edges:
        common = adj[u] & adj[v]
        for w in common:
            if w > v:
                return (u, v, w)
    return None


def is_triangle_free(g: Graph) -> bool:
    return find_triangle(g) is None


def is_connected(g: Graph) -> bool:
    if g.n <= 1:
        return True
    seen = {1}
    stack = [1]
    adj = g.adjacency
    while stack:
        u = stack.pop()
        for w in adj[u]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == g.n


def is_bipartite(g: Graph) -> bool:
    color = [-1] * (g.n + 1)
    adj = g.adjacency
    for s in range(1, g.n + 1):
        if color[s] >= 0:
            continue
        color[s] = 0
        stack = [s]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if color[w] < 0:
                    color[w] = 1 - color[u]
                    stack.append(w)
                elif color[w] == color[u]:
                    return False
    return True


def is_regular(g: Graph) -> tuple[bool, int | None]:
    """(True, d) when every vertex has degree d, else (False, None)."""
    degs = set(g.degrees())
    if len(degs) == 1:
        return True, degs.pop()
    return False, None


# Named constructions used throughout the test suites.

def path_graph(n: int) -> Graph:
    return Graph(n, tuple((i, i + 1) for i in range(1, n)))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycle needs at least 3 vertices")
    return Graph(n, tuple((i, i + 1) for i in range(1, n)) + ((1, n),))


def complete_graph(n: int) -> Graph:
    return Graph(n, tuple((u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1)))


def complete_bipartite_graph(a: int, b: int) -> Graph:
    return Graph(a + b, tuple((u, a + v) for u in range(1, a + 1) for v in range(1, b + 1)))


def star_graph(leaves: int) -> Graph:
    """Center vertex 1 joined to `leaves` leaf vertices."""
    return Graph(leaves + 1, tuple((1, v) for v in range(2, leaves + 2)))


def matching_graph(k: int) -> Graph:
    """k disjoint edges on 2k vertices."""
    return Graph(2 * k, tuple((2 * i + 1, 2 * i + 2) for i in range(k)))


def petersen_graph() -> Graph:
    outer = [(i + 1, (i + 1) % 5 + 1) for i in range(5)]
    spokes = [(i + 1, i + 6) for i in range(5)]
    inner = [(i + 6, (i + 2) % 5 + 6) for i in range(5)]
    return Graph(10, tuple(outer + spokes + inner))


def empty_graph(n: int) -> Graph:
    return Graph(n, ())


def random_gnm_graph(n: int, m: int, seed: int) -> Graph:
    """Uniform graph with n vertices and m edges; deterministic given seed."""
    if m > n * (n - 1) // 2:
        raise ValueError(f"cannot place {m} edges on {n} vertices")
    rng = random.Random(seed)
    all_edges = [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1)]
    return Graph(n, tuple(rng.sample(all_edges, m)))


def disjoint_union(a: Graph, b: Graph) -> Graph:
    shifted = tuple((u + a.n, v + a.n) for u, v in b.edges)
    return Graph(a.n + b.n, a.edges + shifted)


def induced_degrees(cluster: Iterable[Edge]) -> dict[int, int]:
    """Vertex degrees of the subgraph formed by the given edges."""
    degs: dict[int, int] = {}
    for u, v in cluster:
        degs[u] = degs.get(u, 0) + 1
        degs[v] = degs.get(v, 0) + 1
    return degs
