"""Random metric trees for property tests and benchmarks."""

from __future__ import annotations

from typing import Optional

import numpy as np

from .graph import MetricGraph


def random_tree(
    rng: np.random.Generator,
    n_leaves: int,
    length_range: tuple[float, float] = (0.1, 10.0),
) -> MetricGraph:
    """Random tree with ``n_leaves`` leaves and no vertex of degree two.

    Grown from a single edge: each new leaf either splits a uniformly chosen
    edge at a new branch vertex or is hung on an existing branch vertex.
    Every edge length is drawn uniformly from ``length_range``.
    """
    if n_leaves < 2:
        raise ValueError("a tree needs at least two leaves")
    lo, hi = length_range
    adj: dict[str, dict[str, float]] = {"b0": {"b1": rng.uniform(lo, hi)}, "b1": {}}
    adj["b1"]["b0"] = adj["b0"]["b1"]
    branch: list[str] = []

    def link(u: str, v: str, w: float) -> None:
        adj.setdefault(u, {})[v] = w
        adj.setdefault(v, {})[u] = w

    for leaf_no in range(2, n_leaves):
        leaf = f"b{leaf_no}"
        if branch and rng.random() < 0.5:
            link(leaf, branch[rng.integers(len(branch))], rng.uniform(lo, hi))
            continue
        edges = [(u, v) for u in adj for v in adj[u] if u < v]
        u, v = edges[rng.integers(len(edges))]
        mid = f"i{len(branch)}"
        branch.append(mid)
        del adj[u][v], adj[v][u]
        link(u, mid, rng.uniform(lo, hi))
        link(mid, v, rng.uniform(lo, hi))
        link(leaf, mid, rng.uniform(lo, hi))

    edges = [(u, v, w) for u in adj for v, w in adj[u].items() if u < v]
    return MetricGraph.from_edges(edges)


def subdivide(
    g: MetricGraph,
    rng: np.random.Generator,
    count: int = 1,
    edge: Optional[int] = None,
) -> MetricGraph:
    """Insert ``count`` degree-two vertices, each splitting a random edge.

    The split point is uniform in the middle 80% of the edge, so total
    lengths are preserved and no piece is tiny.  ``edge`` picks the first
    edge to split by index.
    """
    vertices = list(g.vertices)
    edges = [tuple(e) for e in g.edges]
    for step in range(count):
        idx = edge if (edge is not None and step == 0) else int(rng.integers(len(edges)))
        u, v, w = edges.pop(idx)
        t = rng.uniform(0.1, 0.9)
        mid = f"s{len(vertices)}"
        vertices.append(mid)
        edges += [(u, mid, w * t), (mid, v, w * (1 - t))]
    return MetricGraph(tuple(vertices), tuple(edges))


def random_weighted_tree(
    rng: np.random.Generator,
    n_vertices: int,
    weight_range: tuple[float, float] = (0.1, 10.0),
) -> MetricGraph:
    """Uniform random recursive tree; edge *weights* from ``weight_range``, lengths ``1/weight``."""
    lo, hi = weight_range
    edges = [
        (f"x{j}", f"x{int(rng.integers(j))}", 1.0 / rng.uniform(lo, hi))
        for j in range(1, n_vertices)
    ]
    return MetricGraph.from_edges(edges, vertices=[f"x{j}" for j in range(n_vertices)])


def random_corpus(
    rng: np.random.Generator,
    size: int,
    leaf_range: tuple[int, int] = (2, 12),
    max_vertices: int = 40,
) -> list[tuple[MetricGraph, MetricGraph]]:
    """Pairs ``(tree, subdivided tree)``; leaf counts uniform in ``leaf_range``."""
    out = []
    for _ in range(size):
        base = random_tree(rng, int(rng.integers(leaf_range[0], leaf_range[1] + 1)))
        extra = int(rng.integers(0, max_vertices - len(base) + 1))
        out.append((base, subdivide(base, rng, extra)))
    return out


def random_graph_with_cycles(
    rng: np.random.Generator,
    n_core: int,
    n_extra: int,
    n_pendants: int,
    length_range: tuple[float, float] = (0.1, 10.0),
) -> MetricGraph:
    """Random tree on ``n_core`` vertices plus ``n_extra`` chords and ``n_pendants`` leaves."""
    lo, hi = length_range
    edges = {
        frozenset((f"c{j}", f"c{int(rng.integers(j))}")): rng.uniform(lo, hi)
        for j in range(1, n_core)
    }
    for _ in range(10 * n_extra):
        if n_extra == 0:
            break
        a, b = (int(x) for x in rng.choice(n_core, size=2, replace=False))
        key = frozenset((f"c{a}", f"c{b}"))
        if key not in edges:
            edges[key] = rng.uniform(lo, hi)
            n_extra -= 1
    for p in range(n_pendants):
        edges[frozenset((f"p{p}", f"c{int(rng.integers(n_core))}"))] = rng.uniform(lo, hi)
    return MetricGraph.from_edges(
        (*sorted(key), w) for key, w in edges.items()
    )
