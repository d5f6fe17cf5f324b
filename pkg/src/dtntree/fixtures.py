"""Small named graphs, including the three non-uniqueness examples.

The examples show what a DtN matrix does *not* determine:

* a unit cycle with three pendant edges and a 3-star with arms 4/3 share
  one DtN matrix, so cycles cannot be recovered;
* the DtN matrix of a unit 3-star restricted to two of its leaves equals
  that of a single edge of length 2, so partial boundary data is not enough;
* a unit 4-star and a double star with all edges 5/6 have the same DtN
  diagonal (every entry 3/4), so the diagonal alone is not enough.

:func:`ambiguity_examples` re-checks all three numerically.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .forward import dtn_matrix, partial_dtn
from .graph import MetricGraph, equal_up_to_degree_two


def single_edge(length: float = 2.0) -> MetricGraph:
    return MetricGraph.from_edges([("a", "b", length)])


def path(*lengths: float) -> MetricGraph:
    """Path ``a - m1 - ... - b`` with the given edge lengths."""
    names = ["a"] + [f"m{i}" for i in range(1, len(lengths))] + ["b"]
    return MetricGraph.from_edges(zip(names[:-1], names[1:], lengths))


def star(n_arms: int, length: float = 1.0) -> MetricGraph:
    """Equilateral star; leaves ``x1..xn`` around centre ``c``."""
    return MetricGraph.from_edges([(f"x{i}", "c", length) for i in range(1, n_arms + 1)])


def cycle_with_pendants(length: float = 1.0) -> MetricGraph:
    """Triangle ``c1 c2 c3`` with a pendant edge ``p_i - c_i`` at each corner."""
    edges = [(f"p{i}", f"c{i}", length) for i in (1, 2, 3)]
    edges += [("c1", "c2", length), ("c2", "c3", length), ("c3", "c1", length)]
    return MetricGraph.from_edges(edges)


def double_star(leaf_length: float = 5 / 6, bridge_length: float = 5 / 6) -> MetricGraph:
    """Leaves ``x1, x2`` on ``u`` and ``x3, x4`` on ``w``; bridge ``u - w``."""
    return MetricGraph.from_edges(
        [
            ("x1", "u", leaf_length),
            ("x2", "u", leaf_length),
            ("x3", "w", leaf_length),
            ("x4", "w", leaf_length),
            ("u", "w", bridge_length),
        ]
    )


@dataclass(frozen=True)
class ExampleResult:
    name: str
    passed: bool
    detail: str


def ambiguity_examples(tol: float = 1e-12) -> list[ExampleResult]:
    """Reproduce the three ambiguity examples; one result per example."""
    results = []

    expected = np.array([[2, -1, -1], [-1, 2, -1], [-1, -1, 2]]) / 4
    m_cycle = dtn_matrix(cycle_with_pendants(1.0)).entries
    m_star = dtn_matrix(star(3, 4 / 3)).entries
    err = max(np.max(np.abs(m_cycle - expected)), np.max(np.abs(m_star - expected)))
    results.append(
        ExampleResult(
            "cycle-vs-star",
            bool(err <= tol),
            f"cycle with pendants and 3-star (arms 4/3) share the DtN matrix; max error {err:.2e}",
        )
    )

    s_partial = partial_dtn(star(3, 1.0), ["x1", "x2"]).entries
    m_edge = dtn_matrix(single_edge(2.0)).entries
    target = np.array([[0.5, -0.5], [-0.5, 0.5]])
    err = max(np.max(np.abs(s_partial - target)), np.max(np.abs(s_partial - m_edge)))
    results.append(
        ExampleResult(
            "partial-boundary",
            bool(err <= tol),
            f"unit 3-star seen from two leaves equals an edge of length 2; max error {err:.2e}",
        )
    )

    g1, g2 = star(4, 1.0), double_star(5 / 6, 5 / 6)
    m1, m2 = dtn_matrix(g1).entries, dtn_matrix(g2).entries
    err = max(np.max(np.abs(np.diag(m1) - 0.75)), np.max(np.abs(np.diag(m2) - 0.75)))
    differ = np.max(np.abs(m1 - m2)) > tol and not equal_up_to_degree_two(g1, g2)
    results.append(
        ExampleResult(
            "weyl-diagonal",
            bool(err <= tol and differ),
            f"unit 4-star and double star (edges 5/6) share the diagonal 3/4 "
            f"(max error {err:.2e}) but differ as trees: {differ}",
        )
    )
    return results
