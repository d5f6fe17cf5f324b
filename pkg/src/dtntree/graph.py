"""Metric graphs, boundary indexing and tree utilities.

A :class:`MetricGraph` is a finite, simple, connected graph whose edges carry
positive lengths.  Vertices of degree one form the *boundary*; every other
vertex is *interior*.  The functions here validate graphs, compute path
distances on trees, merge degree-two vertices away and decide whether two
trees coincide once that merging has been done.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, NamedTuple, Optional, Sequence

import numpy as np

from .errors import (
    DegenerateGraph,
    Disconnected,
    DuplicateLabel,
    GraphError,
    NonpositiveLength,
    NotATree,
    ParallelEdge,
    SelfLoop,
    UnknownLabel,
)

#: Relative tolerance used for every "same length" decision.
DEFAULT_TOL = 1e-9


def lengths_close(a: float, b: float, tol: float = DEFAULT_TOL) -> bool:
    """``|a - b| <= tol * max(1, |a|, |b|)``."""
    return abs(a - b) <= tol * max(1.0, abs(a), abs(b))


class Edge(NamedTuple):
    u: str
    v: str
    length: float


@dataclass(frozen=True)
class MetricGraph:
    """Undirected graph with labelled vertices and positive edge lengths.

    Construction only normalizes types; call :func:`validate` to check the
    standing assumptions (connected, simple, positive lengths).

    Parameters
    ----------
    vertices : sequence of str
        Vertex labels, in the order they should be reported.
    edges : sequence of (str, str, float)
        Undirected edges with their lengths.
    """

    vertices: tuple[str, ...]
    edges: tuple[Edge, ...]

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(str(v) for v in self.vertices))
        object.__setattr__(
            self, "edges", tuple(Edge(str(u), str(v), float(w)) for u, v, w in self.edges)
        )

    @classmethod
    def from_edges(cls, edges: Iterable[Sequence], vertices: Iterable[str] = ()) -> "MetricGraph":
        """Build a graph, registering edge endpoints in order of first appearance."""
        edges = [Edge(str(u), str(v), float(w)) for u, v, w in edges]
        order = list(dict.fromkeys(str(v) for v in vertices))
        seen = set(order)
        for u, v, _ in edges:
            for x in (u, v):
                if x not in seen:
                    seen.add(x)
                    order.append(x)
        return cls(tuple(order), tuple(edges))

    @cached_property
    def adjacency(self) -> dict[str, dict[str, float]]:
        adj: dict[str, dict[str, float]] = {v: {} for v in self.vertices}
        for u, v, w in self.edges:
            adj.setdefault(u, {})[v] = w
            adj.setdefault(v, {})[u] = w
        return adj

    def degree(self, v: str) -> int:
        return len(self.adjacency[v])

    @property
    def boundary(self) -> tuple[str, ...]:
        """Degree-one vertices in vertex order."""
        return tuple(v for v in self.vertices if len(self.adjacency[v]) == 1)

    @property
    def interior(self) -> tuple[str, ...]:
        return tuple(v for v in self.vertices if len(self.adjacency[v]) != 1)

    def __len__(self) -> int:
        return len(self.vertices)


@dataclass(frozen=True)
class BoundaryIndexing:
    """Boundary-first vertex order: positions ``0..k-1`` are boundary vertices."""

    boundary: tuple[str, ...]
    interior: tuple[str, ...]

    @property
    def order(self) -> tuple[str, ...]:
        return self.boundary + self.interior

    @property
    def k(self) -> int:
        return len(self.boundary)

    @property
    def n(self) -> int:
        return len(self.boundary) + len(self.interior)

    @cached_property
    def position(self) -> dict[str, int]:
        return {v: i for i, v in enumerate(self.order)}


def validate(g: MetricGraph, boundary_order: Optional[Sequence[str]] = None) -> BoundaryIndexing:
    """Check the standing assumptions on ``g`` and split its vertices.

    Boundary and interior vertices are each sorted by label unless
    ``boundary_order`` fixes the boundary order explicitly.

    Raises
    ------
    DuplicateLabel, UnknownLabel, SelfLoop, NonpositiveLength, ParallelEdge,
    DegenerateGraph, Disconnected
    """
    seen: set[str] = set()
    for v in g.vertices:
        if v in seen:
            raise DuplicateLabel(f"duplicate vertex label {v!r}", v)
        seen.add(v)

    pairs: set[frozenset] = set()
    for e in g.edges:
        for x in (e.u, e.v):
            if x not in seen:
                raise UnknownLabel(f"edge {e.u}-{e.v} refers to unknown vertex {x!r}", x)
        if e.u == e.v:
            raise SelfLoop(f"self-loop at vertex {e.u!r}", e.u)
        if not (math.isfinite(e.length) and e.length > 0):
            raise NonpositiveLength(f"edge {e.u}-{e.v} has length {e.length!r}", e)
        key = frozenset((e.u, e.v))
        if key in pairs:
            raise ParallelEdge(f"more than one edge joins {e.u!r} and {e.v!r}", e)
        pairs.add(key)

    if len(g.vertices) < 2 or not g.edges:
        raise DegenerateGraph("a metric graph needs at least two vertices and one edge")

    adj = g.adjacency
    start = g.vertices[0]
    reached = {start}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        for y in adj[x]:
            if y not in reached:
                reached.add(y)
                queue.append(y)
    if len(reached) != len(g.vertices):
        missing = next(v for v in g.vertices if v not in reached)
        raise Disconnected(f"vertex {missing!r} is not reachable from {start!r}", missing)

    boundary = sorted(v for v in g.vertices if len(adj[v]) == 1)
    interior = sorted(v for v in g.vertices if len(adj[v]) != 1)
    if boundary_order is not None:
        boundary_order = [str(v) for v in boundary_order]
        for v in boundary_order:
            if v not in adj:
                raise UnknownLabel(f"unknown vertex {v!r} in boundary order", v)
        if sorted(boundary_order) != boundary:
            raise GraphError(
                f"boundary order {boundary_order} is not a permutation of the "
                f"boundary vertices {boundary}",
                tuple(boundary_order),
            )
        boundary = boundary_order
    return BoundaryIndexing(tuple(boundary), tuple(interior))


def is_tree(g: MetricGraph) -> bool:
    validate(g)
    return len(g.edges) == len(g.vertices) - 1


def _require_tree(g: MetricGraph) -> None:
    if not is_tree(g):
        raise NotATree(
            f"graph has {len(g.vertices)} vertices and {len(g.edges)} edges; "
            "a tree needs exactly one edge fewer than vertices"
        )


def _require_label(g: MetricGraph, v: str) -> None:
    if v not in g.adjacency:
        raise UnknownLabel(f"unknown vertex {v!r}", v)


def suppress_degree_two(g: MetricGraph) -> MetricGraph:
    """Merge away every vertex of degree two.

    The two edges meeting at such a vertex are replaced by one edge whose
    length is their sum.  Edges of the result are listed by the vertex order
    of their endpoints, so the output is canonical and the operation is
    idempotent.
    """
    _require_tree(g)
    adj = {v: dict(nbrs) for v, nbrs in g.adjacency.items()}
    for v in g.vertices:
        if len(adj[v]) == 2:
            (a, la), (b, lb) = adj[v].items()
            del adj[a][v], adj[b][v], adj[v]
            adj[a][b] = adj[b][a] = la + lb
    vertices = [v for v in g.vertices if v in adj]
    rank = {v: i for i, v in enumerate(vertices)}
    edges = [
        (u, w, adj[u][w])
        for u in vertices
        for w in sorted(adj[u], key=rank.__getitem__)
        if rank[w] > rank[u]
    ]
    return MetricGraph(tuple(vertices), tuple(edges))


def _distances_from(g: MetricGraph, source: str) -> dict[str, float]:
    adj = g.adjacency
    dist = {source: 0.0}
    queue = deque([source])
    while queue:
        x = queue.popleft()
        for y, w in adj[x].items():
            if y not in dist:
                dist[y] = dist[x] + w
                queue.append(y)
    return dist


def tree_distance(g: MetricGraph, u: str, v: str) -> float:
    """Total length of the unique path joining ``u`` and ``v``."""
    _require_tree(g)
    _require_label(g, u)
    _require_label(g, v)
    return _distances_from(g, u)[v]


def tree_distances(g: MetricGraph, labels: Optional[Sequence[str]] = None) -> np.ndarray:
    """Pairwise path distances between ``labels`` (default: ``validate(g)`` boundary order)."""
    _require_tree(g)
    if labels is None:
        labels = validate(g).boundary
    for v in labels:
        _require_label(g, v)
    out = np.zeros((len(labels), len(labels)))
    for i, u in enumerate(labels):
        dist = _distances_from(g, u)
        out[i] = [dist[v] for v in labels]
    return out


@dataclass(frozen=True)
class ReconstructedTree:
    """Weighted adjacency matrix of a tree plus the label of each row.

    Entry ``(i, j)`` is the length of the edge joining rows ``i`` and ``j``,
    or zero.  The first ``n_boundary`` rows are boundary vertices.
    """

    adjacency: np.ndarray
    labels: tuple[str, ...]
    n_boundary: int = field(default=0)

    def __post_init__(self):
        a = np.array(self.adjacency, dtype=float)
        a.setflags(write=False)
        object.__setattr__(self, "adjacency", a)
        object.__setattr__(self, "labels", tuple(str(x) for x in self.labels))

    def to_graph(self) -> MetricGraph:
        a = self.adjacency
        n = len(self.labels)
        edges = [
            (self.labels[i], self.labels[j], a[i, j])
            for i in range(n)
            for j in range(i + 1, n)
            if a[i, j] > 0
        ]
        return MetricGraph(self.labels, tuple(edges))


def as_graph(g) -> MetricGraph:
    if isinstance(g, ReconstructedTree):
        return g.to_graph()
    return g


def _centers(g: MetricGraph) -> list[str]:
    """Vertices of minimum eccentricity in hop count (one or two of them)."""
    adj = g.adjacency
    degree = {v: len(adj[v]) for v in g.vertices}
    layer = [v for v in g.vertices if degree[v] <= 1]
    remaining = len(g.vertices)
    while remaining > 2:
        remaining -= len(layer)
        nxt = []
        for v in layer:
            for w in adj[v]:
                degree[w] -= 1
                if degree[w] == 1:
                    nxt.append(w)
        layer = nxt
    return sorted(layer)


class _Rooted:
    """A tree hung from ``root`` with AHU shape codes for every vertex.

    Codes come from ``table``; trees sharing a table have equal codes exactly
    when their subtrees have the same shape (and leaf labels, if requested).
    """

    def __init__(self, g: MetricGraph, root: str, with_labels: bool, table: dict):
        adj = g.adjacency
        self.root = root
        self.parent_length = {root: 0.0}
        self.children: dict[str, list[str]] = {}
        order = [root]
        parent = {root: None}
        for x in order:
            kids = [y for y in adj[x] if y != parent[x]]
            self.children[x] = kids
            for y in kids:
                parent[y] = x
                self.parent_length[y] = adj[x][y]
                order.append(y)
        self.code: dict[str, int] = {}
        for x in reversed(order):
            kids = self.children[x]
            if kids:
                key = ("node", tuple(sorted(self.code[y] for y in kids)))
            else:
                key = ("leaf", x if with_labels else "")
            self.code[x] = table.setdefault(key, len(table))


def _match(t1: _Rooted, t2: _Rooted, tol: float) -> bool:
    memo: dict[tuple[str, str], bool] = {}

    def match(x1: str, x2: str) -> bool:
        key = (x1, x2)
        if key not in memo:
            memo[key] = (
                t1.code[x1] == t2.code[x2]
                and lengths_close(t1.parent_length[x1], t2.parent_length[x2], tol)
                and match_children(t1.children[x1], t2.children[x2])
            )
        return memo[key]

    def match_children(kids1: list[str], kids2: list[str]) -> bool:
        # perfect bipartite matching by augmenting paths
        owner: dict[str, str] = {}

        def augment(a: str, visited: set) -> bool:
            for b in kids2:
                if b in visited or not match(a, b):
                    continue
                visited.add(b)
                if b not in owner or augment(owner[b], visited):
                    owner[b] = a
                    return True
            return False

        return all(augment(a, set()) for a in kids1)

    return match(t1.root, t2.root)


def equal_up_to_degree_two(
    g1,
    g2,
    tol: float = DEFAULT_TOL,
    respect_boundary_labels: bool = False,
) -> bool:
    """Whether two metric trees coincide after suppressing degree-two vertices.

    The suppressed trees must be isomorphic with matching edge lengths (within
    ``tol``, relative).  Vertex labels are ignored unless
    ``respect_boundary_labels`` is set, in which case the isomorphism has to
    map every boundary vertex to the boundary vertex of the same label.
    Accepts :class:`MetricGraph` or :class:`ReconstructedTree` arguments.
    """
    h1 = suppress_degree_two(as_graph(g1))
    h2 = suppress_degree_two(as_graph(g2))
    if len(h1.vertices) != len(h2.vertices):
        return False
    if respect_boundary_labels and sorted(h1.boundary) != sorted(h2.boundary):
        return False
    c1, c2 = _centers(h1), _centers(h2)
    if len(c1) != len(c2):
        return False
    # any isomorphism maps centers onto centers
    table: dict = {}
    t1 = _Rooted(h1, c1[0], respect_boundary_labels, table)
    return any(
        _match(t1, _Rooted(h2, root, respect_boundary_labels, table), tol) for root in c2
    )
