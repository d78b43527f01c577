"""From vertex-cover instances to Euclidean clustering instances and back.

A graph with m edges becomes m points in R^n: edge (i, j) maps to
e_i + e_j, the 0/1 vector with ones at coordinates i and j. The
geometric cost of clustering those points (squared distances to
centroids) coincides exactly with a purely combinatorial quantity per
cluster of edges E' with inside-degrees d_u and m' = |E'|:

    cost(E') = sum_u d_u * (1 - d_u / m') = 2m' - (sum_u d_u^2) / m'

Stars and triangles are exactly the clusters whose cost hits the m'-1
floor; the slack delta = cost - (m'-1) drives both directions of the
reduction (covers give cheap clusterings, cheap clusterings give small
covers). Everything here runs in exact rational arithmetic because the
delta < 1/2 dichotomy threshold must be decided without rounding.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import numpy as np

from .graphs import Edge, FormatError, Graph, induced_degrees


@dataclass(frozen=True, eq=False)
class KMeansInstance:
    """Point cloud plus cluster budget; provenance maps point index -> source edge."""

    points: np.ndarray  # (n_points, dim) float64
    k: int
    provenance: tuple[Edge, ...] | None = None

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=np.float64)
        if pts.ndim != 2:
            raise ValueError("points must be a 2-d array")
        object.__setattr__(self, "points", pts)
        if not 1 <= self.k:
            raise ValueError("k must be positive")
        if self.provenance is not None:
            if len(self.provenance) != len(pts):
                raise ValueError("provenance must cover every point exactly once")
            if len(set(self.provenance)) != len(self.provenance):
                raise ValueError("provenance edges must be distinct")

    @property
    def n_points(self) -> int:
        return self.points.shape[0]

    @property
    def dim(self) -> int:
        return self.points.shape[1]

    def __eq__(self, other):
        if not isinstance(other, KMeansInstance):
            return NotImplemented
        return (
            self.k == other.k
            and self.provenance == other.provenance
            and self.points.shape == other.points.shape
            and bool(np.array_equal(self.points, other.points))
        )


@dataclass(frozen=True)
class Clustering:
    """Assignment of point index -> cluster id in 1..k; every point assigned."""

    assignment: tuple[int, ...]
    k: int

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be positive")
        for i, c in enumerate(self.assignment):
            if not 1 <= c <= self.k:
                raise ValueError(f"point {i} assigned to cluster {c} outside 1..{self.k}")

    @property
    def n_points(self) -> int:
        return len(self.assignment)

    def blocks(self) -> dict[int, tuple[int, ...]]:
        """Cluster id -> tuple of point indices, non-empty clusters only."""
        out: dict[int, list[int]] = {}
        for i, c in enumerate(self.assignment):
            out.setdefault(c, []).append(i)
        return {c: tuple(ix) for c, ix in sorted(out.items())}


@dataclass(frozen=True)
class Cover:
    """Vertex subset with a validity certificate against a fixed graph."""

    vertices: frozenset[int]
    valid: bool

    @classmethod
    def of(cls, g: Graph, vertices: Iterable[int]) -> "Cover":
        vs = frozenset(vertices)
        ok = all(u in vs or v in vs for u, v in g.edges)
        return cls(vs, ok)

    @property
    def size(self) -> int:
        return len(self.vertices)


@dataclass(frozen=True)
class ClusterShape:
    """Classification of an edge cluster: star / triangle / other, with exact slack."""

    kind: str  # "star" | "triangle" | "other"
    center: int | None
    delta: Fraction


def build_kmeans_instance(g: Graph, k: int) -> KMeansInstance:
    """One point per edge of g, x_(i,j) = e_i + e_j in dimension n."""
    if g.m == 0:
        raise ValueError("graph has no edges; nothing to reduce")
    if not 1 <= k <= g.m:
        raise ValueError(f"k must be in 1..{g.m}, got {k}")
    pts = np.zeros((g.m, g.n))
    for idx, (u, v) in enumerate(g.edges):
        pts[idx, u - 1] = 1.0
        pts[idx, v - 1] = 1.0
    return KMeansInstance(points=pts, k=k, provenance=g.edges)


def _check_cluster(g: Graph, cluster: Sequence[Edge]) -> list[Edge]:
    edges = [((u, v) if u < v else (v, u)) for u, v in cluster]
    if not edges:
        raise ValueError("empty cluster")
    known = set(g.edges)
    for e in edges:
        if e not in known:
            raise ValueError(f"edge {e} not in graph")
    if len(set(edges)) != len(edges):
        raise ValueError("cluster contains a repeated edge")
    return edges


def combinatorial_cost(g: Graph, cluster: Sequence[Edge]) -> Fraction:
    """Exact cluster cost 2m' - (sum of squared inside-degrees)/m'."""
    edges = _check_cluster(g, cluster)
    m = len(edges)
    nu = sum(d * d for d in induced_degrees(edges).values())
    return Fraction(2 * m) - Fraction(nu, m)


def cluster_delta(g: Graph, cluster: Sequence[Edge]) -> Fraction:
    """Slack above the m'-1 floor; zero exactly for stars and triangles."""
    edges = _check_cluster(g, cluster)
    return combinatorial_cost(g, edges) - (len(edges) - 1)


def exact_euclidean_cost(points: Sequence[Sequence], blocks: Iterable[Sequence[int]]) -> Fraction:
    """Sum of squared distances to block centroids, in exact rationals.

    Computed straight from the definition (centroid = mean, then the
    squared deviations), independently of the degree-based formula.
    Coordinates are taken through Fraction, so float inputs are exact.
    """
    rows = [[Fraction(x) for x in p] for p in points]
    total = Fraction(0)
    for block in blocks:
        idx = list(block)
        if not idx:
            continue
        c = len(idx)
        dim = len(rows[idx[0]])
        centroid = [sum(rows[i][j] for i in idx) / c for j in range(dim)]
        for i in idx:
            total += sum((rows[i][j] - centroid[j]) ** 2 for j in range(dim))
    return total


def cluster_edge_sets(g: Graph, c: Clustering) -> dict[int, tuple[Edge, ...]]:
    """Non-empty clusters as edge sets, point index i meaning g.edges[i]."""
    if c.n_points != g.m:
        raise ValueError(f"clustering covers {c.n_points} points, graph has {g.m} edges")
    out: dict[int, list[Edge]] = {}
    for i, cid in enumerate(c.assignment):
        out.setdefault(cid, []).append(g.edges[i])
    return {cid: tuple(es) for cid, es in sorted(out.items())}


def clustering_cost(inst: KMeansInstance, c: Clustering) -> Fraction:
    """Total cost over non-empty clusters; equals the Euclidean centroid cost."""
    if inst.provenance is None:
        raise ValueError("instance has no provenance; use the generic solver path")
    if c.n_points != inst.n_points:
        raise ValueError(f"clustering covers {c.n_points} of {inst.n_points} points")
    g = Graph(inst.dim, inst.provenance)
    total = Fraction(0)
    for edges in cluster_edge_sets(g, c).values():
        total += combinatorial_cost(g, edges)
    return total


def clustering_from_blocks(g: Graph, blocks: Iterable[Sequence[Edge]]) -> Clustering:
    """Clustering over g's canonical edge order from an explicit edge partition."""
    index = {e: i for i, e in enumerate(g.edges)}
    assignment = [0] * g.m
    cid = 0
    for block in blocks:
        if not block:
            continue
        cid += 1
        for u, v in block:
            e = (u, v) if u < v else (v, u)
            if e not in index:
                raise ValueError(f"edge {e} not in graph")
            if assignment[index[e]] != 0:
                raise ValueError(f"edge {e} assigned twice")
            assignment[index[e]] = cid
    if any(a == 0 for a in assignment):
        missing = g.edges[assignment.index(0)]
        raise ValueError(f"edge {missing} not covered by any block")
    return Clustering(tuple(assignment), cid)


def cover_to_clustering(g: Graph, cover: Cover) -> Clustering:
    """Star clustering from a valid cover: each edge goes to its lowest covering vertex."""
    if not cover.valid:
        raise ValueError("cover is not valid for this graph")
    if g.m == 0:
        raise ValueError("graph has no edges")
    owner: list[int] = []
    for u, v in g.edges:
        cands = [w for w in (u, v) if w in cover.vertices]
        owner.append(min(cands))
    used = sorted(set(owner))
    cid_of = {vtx: i + 1 for i, vtx in enumerate(used)}
    return Clustering(tuple(cid_of[w] for w in owner), len(used))


def heavy_edge(g: Graph, cluster: Sequence[Edge]) -> tuple[Edge, int]:
    """Cluster edge maximizing d_u + d_v (inside-degrees); ties to canonical order.

    The winner always satisfies d_u + d_v >= m' + 1 - delta.
    """
    edges = _check_cluster(g, cluster)
    degs = induced_degrees(edges)
    best, best_val = None, -1
    for e in sorted(edges):
        val = degs[e[0]] + degs[e[1]]
        if val > best_val:
            best, best_val = e, val
    return best, best_val


def classify_cluster(g: Graph, cluster: Sequence[Edge]) -> ClusterShape:
    """Star(center) / Triangle / Other(delta) for an edge cluster.

    A star is any cluster whose edges all meet one vertex (a single edge
    counts, reporting its lower endpoint); a triangle is exactly a
    3-cycle. Whenever delta < 1/2 the cluster is one of those two shapes
    and delta is exactly zero.
    """
    edges = _check_cluster(g, cluster)
    delta = cluster_delta(g, edges)
    degs = induced_degrees(edges)
    m = len(edges)
    centers = sorted(v for v, d in degs.items() if d == m)
    if centers:
        return ClusterShape("star", centers[0], delta)
    if m == 3 and len(degs) == 3 and all(d == 2 for d in degs.values()):
        return ClusterShape("triangle", None, delta)
    return ClusterShape("other", None, delta)


def clustering_to_cover(g: Graph, c: Clustering) -> Cover:
    """Extract a cover: star centers for tight clusters, heavy-edge endpoints
    for the rest, then one endpoint per still-uncovered edge.

    On triangle-free graphs, a clustering with k non-empty clusters and
    cost m - (1-delta)k yields a cover of size at most k(1 + 3*delta).
    """
    chosen: set[int] = set()
    for edges in cluster_edge_sets(g, c).values():
        shape = classify_cluster(g, edges)
        if shape.delta < Fraction(1, 2) and shape.kind == "star":
            chosen.add(shape.center)
        else:
            (u, v), _ = heavy_edge(g, edges)
            chosen.update((u, v))
    for u, v in g.edges:
        if u not in chosen and v not in chosen:
            chosen.add(min(u, v))
    cover = Cover.of(g, chosen)
    assert cover.valid
    return cover


def clustering_report(g: Graph, c: Clustering) -> list[dict]:
    """Per-cluster stats: edge count, cost, delta, shape."""
    rows = []
    for cid, edges in cluster_edge_sets(g, c).items():
        shape = classify_cluster(g, edges)
        rows.append(
            {
                "cluster": cid,
                "edges": len(edges),
                "cost": combinatorial_cost(g, edges),
                "delta": shape.delta,
                "kind": shape.kind,
                "center": shape.center,
            }
        )
    return rows


# --- file formats ---------------------------------------------------------
#
# kmeans instance:   "kmeans <num_points> <dim> <k>" then one line of dim
#                    coordinates per point, then optional provenance lines
#                    "prov <point_index> <u> <v>" (0-indexed points).
# clustering:        "clustering <num_points> <k>" then one line
#                    "<point_index> <cluster_id>" per point (0-indexed
#                    points, 1-indexed clusters).


def serialize_kmeans_instance(inst: KMeansInstance) -> str:
    lines = [f"kmeans {inst.n_points} {inst.dim} {inst.k}"]
    for p in inst.points:
        lines.append(" ".join(repr(float(x)) for x in p))
    if inst.provenance is not None:
        for i, (u, v) in enumerate(inst.provenance):
            lines.append(f"prov {i} {u} {v}")
    return "\n".join(lines) + "\n"


def parse_kmeans_instance(text: str) -> KMeansInstance:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("kmeans "):
        raise FormatError("expected 'kmeans <num_points> <dim> <k>' header", 1)
    try:
        _, np_s, dim_s, k_s = lines[0].split()
        n_points, dim, k = int(np_s), int(dim_s), int(k_s)
    except ValueError:
        raise FormatError(f"malformed header {lines[0]!r}", 1) from None
    if len(lines) < 1 + n_points:
        raise FormatError(f"expected {n_points} point lines")
    pts = np.zeros((n_points, dim))
    for i in range(n_points):
        fields = lines[1 + i].split()
        if len(fields) != dim:
            raise FormatError(f"point has {len(fields)} coordinates, expected {dim}", 2 + i)
        pts[i] = [float(x) for x in fields]
    prov: dict[int, Edge] = {}
    for lineno, ln in enumerate(lines[1 + n_points:], start=2 + n_points):
        parts = ln.split()
        if parts[0] != "prov" or len(parts) != 4:
            raise FormatError(f"unrecognized line {ln!r}", lineno)
        i, u, v = int(parts[1]), int(parts[2]), int(parts[3])
        if not 0 <= i < n_points:
            raise FormatError(f"provenance for unknown point {i}", lineno)
        prov[i] = (u, v) if u < v else (v, u)
    provenance = None
    if prov:
        if len(prov) != n_points:
            raise FormatError("provenance present but does not cover every point")
        provenance = tuple(prov[i] for i in range(n_points))
    return KMeansInstance(points=pts, k=k, provenance=provenance)


def serialize_clustering(c: Clustering) -> str:
    lines = [f"clustering {c.n_points} {c.k}"]
    lines.extend(f"{i} {cid}" for i, cid in enumerate(c.assignment))
    return "\n".join(lines) + "\n"


def parse_clustering(text: str) -> Clustering:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("clustering "):
        raise FormatError("expected 'clustering <num_points> <k>' header", 1)
    try:
        _, np_s, k_s = lines[0].split()
        n_points, k = int(np_s), int(k_s)
    except ValueError:
        raise FormatError(f"malformed header {lines[0]!r}", 1) from None
    if len(lines) != 1 + n_points:
        raise FormatError(f"expected {n_points} assignment lines, found {len(lines) - 1}")
    assignment = [0] * n_points
    seen = set()
    for lineno, ln in enumerate(lines[1:], start=2):
        try:
            i_s, c_s = ln.split()
            i, cid = int(i_s), int(c_s)
        except ValueError:
            raise FormatError(f"malformed assignment line {ln!r}", lineno) from None
        if not 0 <= i < n_points:
            raise FormatError(f"point index {i} out of range", lineno)
        if i in seen:
            raise FormatError(f"point {i} assigned twice", lineno)
        seen.add(i)
        assignment[i] = cid
    return Clustering(tuple(assignment), k)
