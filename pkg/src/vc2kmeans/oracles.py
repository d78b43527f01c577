"""Exact combinatorial ground truth at desk scale.

Minimum vertex cover and maximum independent set run as bitmask
branch-and-bound with matching-based bounds; the edge-partition optimum
enumerates restricted-growth strings with incremental integer-scaled
costs and sound pruning (a block's cost never decreases when an edge is
added, so a partial total is a valid lower bound). Every witness is
feasibility-checked before it is returned.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import lcm
from typing import Sequence

from .graphs import Edge, Graph


class GuardExceeded(Exception):
    """Input is larger than the oracle's exhaustiveness guard."""


@dataclass(frozen=True)
class OracleResult:
    value: int | Fraction
    witness: object
    nodes_explored: int


def _bitmask_adjacency(g: Graph) -> list[int]:
    adj = [0] * g.n
    for u, v in g.edges:
        adj[u - 1] |= 1 << (v - 1)
        adj[v - 1] |= 1 << (u - 1)
    return adj


def _greedy_matching_size(adj: Sequence[int], pool: int) -> int:
    """Size of a greedy maximal matching inside the vertex set `pool`."""
    rem = pool
    size = 0
    while rem:
        v = (rem & -rem).bit_length() - 1
        rem &= rem - 1
        nb = adj[v] & rem
        if nb:
            w = (nb & -nb).bit_length() - 1
            rem &= ~(1 << w)
            size += 1
    return size


def min_vertex_cover(g: Graph, max_n: int = 40) -> OracleResult:
    """Exact minimum vertex cover by branch and bound.

    Branches on a maximum-degree vertex (take it, or take its whole
    neighborhood); the greedy-matching lower bound only ever prunes
    branches that cannot strictly beat the incumbent.
    """
    if g.n > max_n:
        raise GuardExceeded(f"vertex cover oracle limited to n <= {max_n}, got {g.n}")
    adj = _bitmask_adjacency(g)
    full = (1 << g.n) - 1

    # greedy incumbent: repeatedly take a max-degree vertex
    pool = full
    greedy: set[int] = set()
    while True:
        best_v, best_d = -1, 0
        rem = pool
        while rem:
            v = (rem & -rem).bit_length() - 1
            rem &= rem - 1
            d = bin(adj[v] & pool).count("1")
            if d > best_d:
                best_v, best_d = v, d
        if best_d == 0:
            break
        greedy.add(best_v)
        pool &= ~(1 << best_v)
    best_size = len(greedy)
    best_set = frozenset(greedy)
    nodes = 0

    def rec(pool: int, taken: int, taken_set: frozenset[int]):
        nonlocal best_size, best_set, nodes
        nodes += 1
        # drop isolated vertices, resolve degree-1 vertices by taking the neighbor
        while True:
            progress = False
            rem = pool
            while rem:
                v = (rem & -rem).bit_length() - 1
                rem &= rem - 1
                if not (pool >> v) & 1:
                    continue
                nb = adj[v] & pool
                d = bin(nb).count("1")
                if d == 0:
                    pool &= ~(1 << v)
                    progress = True
                elif d == 1:
                    w = (nb & -nb).bit_length() - 1
                    taken += 1
                    taken_set = taken_set | {w}
                    pool &= ~((1 << v) | (1 << w))
                    progress = True
            if not progress:
                break
        if taken >= best_size:
            return
        if not pool:
            best_size = taken
            best_set = taken_set
            return
        if taken + _greedy_matching_size(adj, pool) >= best_size:
            return
        # branch vertex: max degree in the remaining graph
        bv, bd = -1, -1
        rem = pool
        while rem:
            v = (rem & -rem).bit_length() - 1
            rem &= rem - 1
            d = bin(adj[v] & pool).count("1")
            if d > bd:
                bv, bd = v, d
        rec(pool & ~(1 << bv), taken + 1, taken_set | {bv})
        nbrs = adj[bv] & pool
        nb_list = set()
        rem = nbrs
        while rem:
            w = (rem & -rem).bit_length() - 1
            rem &= rem - 1
            nb_list.add(w)
        rec(pool & ~((1 << bv) | nbrs), taken + len(nb_list), taken_set | nb_list)

    rec(full, 0, frozenset())
    witness = frozenset(v + 1 for v in best_set)
    assert all(u in witness or v in witness for u, v in g.edges)
    return OracleResult(best_size, witness, nodes)


def vertex_cover_exhaustive(g: Graph, max_n: int = 20) -> OracleResult:
    """Plain enumeration in increasing size; validates the branch and bound."""
    if g.n > max_n:
        raise GuardExceeded(f"exhaustive cover limited to n <= {max_n}, got {g.n}")
    checked = 0
    for size in range(g.n + 1):
        for combo in combinations(range(1, g.n + 1), size):
            checked += 1
            vs = set(combo)
            if all(u in vs or v in vs for u, v in g.edges):
                return OracleResult(size, frozenset(vs), checked)
    raise AssertionError("unreachable: full vertex set always covers")


def max_independent_set(g: Graph, max_n: int = 60) -> OracleResult:
    """Exact maximum independent set by branch and bound.

    Degree-0/1 vertices are taken greedily (always safe); otherwise
    branch on a maximum-degree vertex. Upper bound: |pool| minus a
    greedy maximal matching, since every matched pair contributes at
    most one vertex.
    """
    if g.n > max_n:
        raise GuardExceeded(f"independent set oracle limited to n <= {max_n}, got {g.n}")
    adj = _bitmask_adjacency(g)
    best_size = 0
    best_set: frozenset[int] = frozenset()
    nodes = 0

    def rec(pool: int, size: int, chosen: frozenset[int]):
        nonlocal best_size, best_set, nodes
        nodes += 1
        while True:
            progress = False
            rem = pool
            while rem:
                v = (rem & -rem).bit_length() - 1
                rem &= rem - 1
                if not (pool >> v) & 1:
                    continue
                nb = adj[v] & pool
                d = bin(nb).count("1")
                if d == 0:
                    pool &= ~(1 << v)
                    size += 1
                    chosen = chosen | {v}
                    progress = True
                elif d == 1:
                    pool &= ~((1 << v) | nb)
                    size += 1
                    chosen = chosen | {v}
                    progress = True
            if not progress:
                break
        if not pool:
            if size > best_size:
                best_size = size
                best_set = chosen
            return
        pool_count = bin(pool).count("1")
        ub = size + pool_count - _greedy_matching_size(adj, pool)
        if ub <= best_size:
            return
        bv, bd = -1, -1
        rem = pool
        while rem:
            v = (rem & -rem).bit_length() - 1
            rem &= rem - 1
            d = bin(adj[v] & pool).count("1")
            if d > bd:
                bv, bd = v, d
        rec(pool & ~((1 << bv) | adj[bv]), size + 1, chosen | {bv})
        rec(pool & ~(1 << bv), size, chosen)

    rec((1 << g.n) - 1, 0, frozenset())
    witness = frozenset(v + 1 for v in best_set)
    assert all(not g.has_edge(u, v) for u in witness for v in witness if u < v)
    return OracleResult(best_size, witness, nodes)


def brute_force_edge_partition(g: Graph, k: int, max_m: int = 12) -> OracleResult:
    """Minimum total cluster cost over all partitions of E into <= k blocks.

    Partitions are walked as restricted-growth strings (an edge may open
    a new block only if all earlier blocks are open), with block costs
    maintained incrementally as integers scaled by lcm(1..m). The first
    optimum found in lexicographic order is kept.
    """
    if g.m > max_m:
        raise GuardExceeded(f"edge-partition oracle limited to m <= {max_m}, got {g.m}")
    if g.m == 0:
        raise ValueError("graph has no edges")
    if k < 1:
        raise ValueError("k must be positive")
    m = g.m
    edges = g.edges
    scale = lcm(*range(1, m + 1))

    sizes = [0] * m
    nus = [0] * m
    bcosts = [0] * m  # scaled block costs
    deg: list[dict[int, int]] = [dict() for _ in range(m)]
    assign = [0] * m
    best_cost: int | None = None
    best_assign: list[int] | None = None
    nodes = 0

    def rec(i: int, used: int, total: int):
        nonlocal best_cost, best_assign, nodes
        nodes += 1
        if i == m:
            if best_cost is None or total < best_cost:
                best_cost = total
                best_assign = assign[:]
            return
        u, v = edges[i]
        for b in range(min(used + 1, k)):
            d = deg[b]
            du, dv = d.get(u, 0), d.get(v, 0)
            new_m = sizes[b] + 1
            new_nu = nus[b] + 2 * du + 2 * dv + 2
            new_cost = 2 * scale * new_m - (scale // new_m) * new_nu
            new_total = total + new_cost - bcosts[b]
            if best_cost is not None and new_total >= best_cost:
                continue
            old = (sizes[b], nus[b], bcosts[b])
            sizes[b], nus[b], bcosts[b] = new_m, new_nu, new_cost
            d[u], d[v] = du + 1, dv + 1
            assign[i] = b
            rec(i + 1, used + (1 if b == used else 0), new_total)
            sizes[b], nus[b], bcosts[b] = old
            if du:
                d[u] = du
            else:
                del d[u]
            if dv:
                d[v] = dv
            else:
                del d[v]

    rec(0, 0, 0)
    blocks: dict[int, list[Edge]] = {}
    for i, b in enumerate(best_assign):
        blocks.setdefault(b, []).append(edges[i])
    witness = tuple(tuple(blocks[b]) for b in sorted(blocks))
    return OracleResult(Fraction(best_cost, scale), witness, nodes)
