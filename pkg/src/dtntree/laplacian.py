"""Weighted discrete Laplacians and their Kron reduction.

Edge weights are inverse edge lengths.  Vertices are ordered boundary first,
which splits the Laplacian as ``[[Dhat, -B.T], [-B, Lhat]]``; eliminating the
interior block leaves the Schur complement ``Dhat - B.T @ inv(Lhat) @ B``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
import scipy.linalg

from .errors import NotATree, SingularInterior, UnknownLabel
from .graph import BoundaryIndexing, MetricGraph, is_tree, validate


def _frozen(a) -> np.ndarray:
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class LaplacianMatrix:
    entries: np.ndarray
    indexing: BoundaryIndexing

    def __post_init__(self):
        object.__setattr__(self, "entries", _frozen(self.entries))

    @property
    def labels(self) -> tuple[str, ...]:
        return self.indexing.order


@dataclass(frozen=True)
class LaplacianBlocks:
    """``Dhat`` (k x k), ``B`` ((n-k) x k) and ``Lhat`` ((n-k) x (n-k))."""

    Dhat: np.ndarray
    B: np.ndarray
    Lhat: np.ndarray
    indexing: BoundaryIndexing

    def __post_init__(self):
        for name in ("Dhat", "B", "Lhat"):
            object.__setattr__(self, name, _frozen(getattr(self, name)))

    def assemble(self) -> np.ndarray:
        """Reassemble the full Laplacian from the blocks."""
        return np.block([[self.Dhat, -self.B.T], [-self.B, self.Lhat]])


def discrete_laplacian(
    g: MetricGraph, boundary_order: Optional[Sequence[str]] = None
) -> LaplacianMatrix:
    """Laplacian of ``g`` with weights ``1 / length``, boundary vertices first."""
    indexing = validate(g, boundary_order)
    pos = indexing.position
    L = np.zeros((indexing.n, indexing.n))
    for u, v, length in g.edges:
        i, j = pos[u], pos[v]
        w = 1.0 / length
        L[i, j] -= w
        L[j, i] -= w
        L[i, i] += w
        L[j, j] += w
    return LaplacianMatrix(L, indexing)


def block_decompose(L: LaplacianMatrix) -> LaplacianBlocks:
    """Split ``L`` into boundary/interior blocks.

    When every vertex is a boundary vertex (a single edge) the whole matrix
    is ``Dhat`` and the other blocks are empty.
    """
    k = L.indexing.k
    if k < 1:
        raise ValueError("block decomposition needs at least one boundary vertex")
    A = L.entries
    return LaplacianBlocks(A[:k, :k], -A[k:, :k], A[k:, k:], L.indexing)


def _kron(A: np.ndarray, keep: np.ndarray) -> tuple[np.ndarray, float]:
    """Eliminate every index not in ``keep``; returns (S, asymmetry before symmetrizing)."""
    n = A.shape[0]
    drop = np.setdiff1d(np.arange(n), keep)
    S = A[np.ix_(keep, keep)]
    if drop.size:
        Lhat = A[np.ix_(drop, drop)]
        C = A[np.ix_(drop, keep)]
        try:
            factor = scipy.linalg.cho_factor(Lhat)
        except np.linalg.LinAlgError as exc:
            raise SingularInterior(f"interior block is not positive definite: {exc}") from exc
        S = S - C.T @ scipy.linalg.cho_solve(factor, C)
    asymmetry = float(np.max(np.abs(S - S.T))) if S.size else 0.0
    S = (S + S.T) / 2
    if drop.size:
        # The reduction is again a Laplacian.  Off-diagonal entries are sums
        # of same-signed terms and come out accurate; the diagonal suffers
        # cancellation, so rebuild it from the row's off-diagonal entries.
        np.fill_diagonal(S, 0.0)
        np.fill_diagonal(S, -S.sum(axis=1))
    return S, asymmetry


def schur_complement(blocks: LaplacianBlocks) -> np.ndarray:
    """``Dhat - B.T @ inv(Lhat) @ B`` via a Cholesky solve, symmetrized.

    The diagonal is set to minus the off-diagonal row sums, so the result has
    zero row sums up to rounding in that one sum.
    """
    k = blocks.Dhat.shape[0]
    return _kron(blocks.assemble(), np.arange(k))[0]


def kron_reduce(
    L: np.ndarray, keep: Sequence[int]
) -> tuple[np.ndarray, float]:
    """Schur complement of a Laplacian onto the index set ``keep`` (in that order).

    Returns the symmetrized reduction and the largest asymmetry seen before
    symmetrizing, as a floating-point diagnostic.
    """
    return _kron(np.asarray(L, dtype=float), np.asarray(keep, dtype=int))


def reduced_laplacian(L: LaplacianMatrix, v: str) -> np.ndarray:
    """``L`` with the row and column of vertex ``v`` removed."""
    if v not in L.indexing.position:
        raise UnknownLabel(f"unknown vertex {v!r}", v)
    i = L.indexing.position[v]
    return np.delete(np.delete(L.entries, i, axis=0), i, axis=1)


def _path_edges_to(g: MetricGraph, root: str) -> dict[str, list[tuple[str, str]]]:
    """For each vertex, the edges (child, parent) on its path to ``root``."""
    adj = g.adjacency
    parent = {root: None}
    order = [root]
    for x in order:
        for y in adj[x]:
            if y not in parent:
                parent[y] = x
                order.append(y)
    paths: dict[str, list[tuple[str, str]]] = {root: []}
    for x in order[1:]:
        paths[x] = [(x, parent[x])] + paths[parent[x]]
    return paths


def kirkland_entry_oracle(g: MetricGraph, v: str, i: str, j: str) -> float:
    """Total length of the edges shared by the paths ``i -> v`` and ``j -> v``.

    On a tree this equals entry ``(i, j)`` of the inverse of the Laplacian
    reduced at ``v``; it is computed from paths alone, without linear algebra.
    """
    if not is_tree(g):
        raise NotATree("the path-overlap formula needs a tree")
    for x in (v, i, j):
        if x not in g.adjacency:
            raise UnknownLabel(f"unknown vertex {x!r}", x)
    paths = _path_edges_to(g, v)
    shared = set(paths[i]) & set(paths[j])
    return float(sum(g.adjacency[a][b] for a, b in shared))


def kirkland_matrix(g: MetricGraph, v: str, labels: Sequence[str]) -> np.ndarray:
    """The path-overlap oracle for every pair in ``labels``."""
    if not is_tree(g):
        raise NotATree("the path-overlap formula needs a tree")
    if v not in g.adjacency:
        raise UnknownLabel(f"unknown vertex {v!r}", v)
    paths = {x: set(p) for x, p in _path_edges_to(g, v).items()}
    adj = g.adjacency
    out = np.zeros((len(labels), len(labels)))
    for a, x in enumerate(labels):
        for b, y in enumerate(labels[a:], start=a):
            out[a, b] = out[b, a] = sum(adj[p][q] for p, q in paths[x] & paths[y])
    return out
