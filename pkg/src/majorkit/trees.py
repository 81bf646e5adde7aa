"""Vertex majorization on trees: distance vectors, centers, facility location.

A vertex u sits "below" a vertex v when u's vector of path distances to
every vertex is (weakly or strongly) majorized by v's.  Intersecting the
dominated-side components over all comparable adjacent pairs yields the
majorization center; summing a convex nondecreasing g over a vertex's
distances gives the facility objective whose minimizer the center theory
bounds.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

import numpy as np

from .majorization import (
    DEFAULT_RTOL,
    DEFAULT_TOL,
    RankedVector,
    check_strong,
    check_weak,
    rank_descending,
)

MODES = ("weak", "strong")


@dataclass
class Tree:
    """An unweighted tree with cached all-pairs distances (edge counts)."""

    labels: tuple[str, ...]
    adjacency: tuple[tuple[int, ...], ...]
    edges: tuple[tuple[int, int], ...]
    dist: np.ndarray = field(repr=False)
    label_index: dict[str, int] = field(repr=False)
    ranked: tuple[RankedVector, ...] = field(repr=False)

    def __len__(self) -> int:
        return len(self.labels)

    def vertex(self, u) -> int:
        """Resolve a label or index to a vertex index."""
        if isinstance(u, str):
            if u not in self.label_index:
                raise ValueError(f"unknown vertex {u!r}")
            return self.label_index[u]
        i = int(u)
        if not 0 <= i < len(self.labels):
            raise ValueError(f"vertex index {i} out of range")
        return i


def _bfs_distances(adjacency, start, n):
    row = np.full(n, -1, dtype=np.int64)
    row[start] = 0
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for v in adjacency[u]:
            if row[v] < 0:
                row[v] = row[u] + 1
                queue.append(v)
    return row


def build_tree(edges, vertices=None) -> Tree:
    """Build a tree from labeled edges, validating acyclicity and connectivity.

    vertices optionally seeds the label order; it is also how the
    single-vertex tree (no edges) is expressed.  Errors name the offending
    edge for self-loops, duplicates and cycles.
    """
    labels: list[str] = []
    index: dict[str, int] = {}

    def vid(label: str) -> int:
        if label not in index:
            index[label] = len(labels)
            labels.append(label)
        return index[label]

    for label in vertices or ():
        label = str(label)
        if label in index:
            raise ValueError(f"duplicate vertex label {label!r}")
        vid(label)

    pairs: list[tuple[int, int]] = []
    label_pairs: list[tuple[str, str]] = []
    seen: set[frozenset[int]] = set()
    for a, b in edges:
        a, b = str(a), str(b)
        if a == b:
            raise ValueError(f"self-loop at edge ({a}, {b})")
        u, v = vid(a), vid(b)
        key = frozenset((u, v))
        if key in seen:
            raise ValueError(f"duplicate edge ({a}, {b})")
        seen.add(key)
        pairs.append((u, v))
        label_pairs.append((a, b))

    n = len(labels)
    if n == 0:
        raise ValueError("empty edge list")

    parent = list(range(n))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for (u, v), (a, b) in zip(pairs, label_pairs):
        ru, rv = find(u), find(v)
        if ru == rv:
            raise ValueError(f"cycle at edge ({a}, {b})")
        parent[ru] = rv
    if len(pairs) != n - 1:
        raise ValueError("disconnected: expected a single tree component")

    neighbors: list[list[int]] = [[] for _ in range(n)]
    for u, v in pairs:
        neighbors[u].append(v)
        neighbors[v].append(u)
    adjacency = tuple(tuple(ns) for ns in neighbors)

    dist = np.vstack([_bfs_distances(adjacency, s, n) for s in range(n)])
    ranked = tuple(rank_descending([float(d) for d in dist[u]]) for u in range(n))
    return Tree(tuple(labels), adjacency, tuple(pairs), dist, dict(index), ranked)


def distance_vector(t: Tree, u) -> tuple[int, ...]:
    """Row u of the distance matrix, including the zero self-distance."""
    return tuple(int(d) for d in t.dist[t.vertex(u)])


@dataclass(frozen=True)
class VertexRelation:
    relation: str  # equivalent | u_below_v | v_below_u | incomparable
    mode: str


def vertex_relation(t: Tree, u, v, mode: str = "weak") -> VertexRelation:
    """Compare two vertices through their distance vectors.

    Integer arithmetic is exact, so the underlying checks run at zero
    tolerance.  "u_below_v" means u's distances are majorized by v's.
    """
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    ui, vi = t.vertex(u), t.vertex(v)
    if ui == vi:
        raise ValueError("u and v must be distinct vertices")
    check = check_weak if mode == "weak" else check_strong
    below = check(t.ranked[ui], t.ranked[vi], 0.0, 0.0).relation != "none"
    above = check(t.ranked[vi], t.ranked[ui], 0.0, 0.0).relation != "none"
    if below and above:
        relation = "equivalent"
    elif below:
        relation = "u_below_v"
    elif above:
        relation = "v_below_u"
    else:
        relation = "incomparable"
    return VertexRelation(relation, mode)


def subtree_partition(t: Tree, u, v) -> tuple[frozenset[int], frozenset[int]]:
    """Vertex sets of the two components left by removing the edge [u, v]."""
    ui, vi = t.vertex(u), t.vertex(v)
    if vi not in t.adjacency[ui]:
        raise ValueError(
            f"vertices {t.labels[ui]!r} and {t.labels[vi]!r} are not adjacent"
        )
    side_u = {ui}
    queue = deque([ui])
    while queue:
        a = queue.popleft()
        for b in t.adjacency[a]:
            if a == ui and b == vi:
                continue  # the removed edge
            if b not in side_u:
                side_u.add(b)
                queue.append(b)
    side_v = frozenset(range(len(t))) - side_u
    return frozenset(side_u), side_v


@dataclass(frozen=True)
class CenterResult:
    """Majorization center of a tree.

    When two adjacent vertices are majorization-equivalent the tree is
    m-symmetric and the center is that pair.  Otherwise the center is the
    intersection of the dominated-side components over all strictly
    comparable adjacent pairs; if no pair is comparable the intersection
    over the empty family is all of V, flagged by empty_family.
    """

    center: frozenset[int]
    m_symmetric: bool
    pair: tuple[int, int] | None
    empty_family: bool = False


def majorization_center(t: Tree, mode: str = "weak") -> CenterResult:
    """Compute the (weak or strong) majorization center of a tree."""
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    relations = {e: vertex_relation(t, e[0], e[1], mode) for e in t.edges}
    for (u, v), rel in relations.items():
        if rel.relation == "equivalent":
            return CenterResult(frozenset((u, v)), True, (u, v))
    center = set(range(len(t)))
    found = False
    for (u, v), rel in relations.items():
        if rel.relation == "u_below_v":
            low = u
        elif rel.relation == "v_below_u":
            low = v
        else:
            continue
        side_low, _ = subtree_partition(t, low, v if low == u else u)
        center &= side_low
        found = True
    if not found:
        return CenterResult(frozenset(range(len(t))), False, None, empty_family=True)
    return CenterResult(frozenset(center), False, None)


@dataclass(frozen=True)
class FacilityResult:
    """Facility objective F(v) = sum_i g(d(v, i)) over all vertices.

    alphas[v] is total_dist(v0) / total_dist(v) and slacks[v] the margin
    alphas[v] * F(v) - F(v0); negative margins beyond tolerance land in
    violations.  Also records whether the minimizer belongs to the strong
    majorization center.
    """

    v0: int
    values: tuple[float, ...]
    alphas: dict[int, float]
    slacks: dict[int, float]
    violations: tuple[int, ...]
    strong_center: frozenset[int]
    v0_in_strong_center: bool


def facility_argmin(t: Tree, g, tol: float = DEFAULT_TOL) -> FacilityResult:
    """Minimize F(v) = sum_i g(dist(v, i)); ties go to the smallest index."""
    n = len(t)
    values = tuple(float(sum(g(float(d)) for d in t.dist[v])) for v in range(n))
    v0 = min(range(n), key=lambda v: (values[v], v))
    totals = t.dist.sum(axis=1)
    alphas: dict[int, float] = {}
    slacks: dict[int, float] = {}
    violations: list[int] = []
    for v in range(n):
        if v == v0:
            continue
        alpha = float(totals[v0]) / float(totals[v])
        slack = alpha * values[v] - values[v0]
        alphas[v] = alpha
        slacks[v] = slack
        if slack < -(tol + DEFAULT_RTOL * max(1.0, abs(values[v]), abs(values[v0]))):
            violations.append(v)
    strong = majorization_center(t, "strong")
    return FacilityResult(
        v0,
        values,
        alphas,
        slacks,
        tuple(violations),
        strong.center,
        v0 in strong.center,
    )


def equity_measure(d) -> float:
    """Dispersion sum((d_i - mean)^2) of a facility's distance vector."""
    vals = [float(v) for v in d]
    if not vals:
        raise ValueError("empty vector")
    mean = sum(vals) / len(vals)
    return sum((v - mean) ** 2 for v in vals)
