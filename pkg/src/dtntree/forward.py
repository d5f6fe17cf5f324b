"""Forward map: metric graph -> Dirichlet-to-Neumann matrix.

For boundary data ``f(v_1), ..., f(v_k)`` there is exactly one function that
is linear on every edge, continuous, and satisfies the Kirchhoff condition
(inward derivatives sum to zero) at every interior vertex.  The DtN matrix
sends the boundary values of that function to its derivatives at the
boundary vertices, taken in the direction towards the vertex.  It equals the
Schur complement of the weighted Laplacian onto the boundary.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np
import scipy.linalg

from .errors import DimensionMismatch, GraphError, TooFewBoundaryVertices, UnknownLabel
from .graph import MetricGraph
from .laplacian import _frozen, block_decompose, discrete_laplacian, kron_reduce


@dataclass(frozen=True)
class DtnMatrix:
    """Symmetric ``k x k`` response matrix over labelled boundary vertices.

    ``asymmetry`` records how far the computed Schur complement was from
    symmetric before it was symmetrized.
    """

    entries: np.ndarray
    labels: tuple[str, ...]
    asymmetry: float = field(default=0.0, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "entries", _frozen(self.entries))
        object.__setattr__(self, "labels", tuple(str(x) for x in self.labels))
        if self.entries.ndim != 2 or self.entries.shape[0] != self.entries.shape[1]:
            raise DimensionMismatch(f"DtN matrix must be square, got {self.entries.shape}")
        if len(self.labels) != self.entries.shape[0]:
            raise DimensionMismatch(
                f"{len(self.labels)} labels for a {self.entries.shape[0]}x{self.entries.shape[0]} matrix"
            )

    @classmethod
    def from_array(cls, entries, labels: Optional[Sequence[str]] = None) -> "DtnMatrix":
        entries = np.asarray(entries, dtype=float)
        if labels is None:
            labels = default_labels(entries.shape[0])
        return cls(entries, tuple(labels))

    @property
    def k(self) -> int:
        return len(self.labels)

    def permuted(self, order: Sequence[str]) -> "DtnMatrix":
        """The same matrix with rows and columns listed in ``order``."""
        pos = {v: i for i, v in enumerate(self.labels)}
        if sorted(order) != sorted(self.labels):
            raise DimensionMismatch(f"{list(order)} is not a permutation of {list(self.labels)}")
        idx = [pos[v] for v in order]
        return DtnMatrix(self.entries[np.ix_(idx, idx)], tuple(order), self.asymmetry)


def default_labels(k: int) -> tuple[str, ...]:
    return tuple(f"v{i}" for i in range(1, k + 1))


@dataclass(frozen=True)
class HarmonicExtension:
    """Vertex values and normal derivatives of the harmonic extension.

    Arrays are in ``labels`` order (boundary vertices first).
    """

    values: np.ndarray
    fluxes: np.ndarray
    labels: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", _frozen(self.values))
        object.__setattr__(self, "fluxes", _frozen(self.fluxes))


def dtn_matrix(g: MetricGraph, boundary_order: Optional[Sequence[str]] = None) -> DtnMatrix:
    """DtN matrix of ``g`` (cycles allowed).

    Raises
    ------
    TooFewBoundaryVertices
        If ``g`` has fewer than two boundary vertices.
    """
    L = discrete_laplacian(g, boundary_order)
    k = L.indexing.k
    if k < 2:
        raise TooFewBoundaryVertices(f"graph has {k} boundary vertices, at least 2 are needed")
    S, asym = kron_reduce(L.entries, np.arange(k))
    return DtnMatrix(S, L.indexing.boundary, asym)


def harmonic_extension(
    g: MetricGraph,
    boundary_values: Sequence[float],
    boundary_order: Optional[Sequence[str]] = None,
) -> HarmonicExtension:
    """Solve for interior values given boundary values.

    Interior values are ``inv(Lhat) @ B @ boundary_values``; boundary fluxes
    are ``M @ boundary_values`` and interior fluxes are zero.
    """
    L = discrete_laplacian(g, boundary_order)
    k = L.indexing.k
    if k < 2:
        raise TooFewBoundaryVertices(f"graph has {k} boundary vertices, at least 2 are needed")
    f = np.asarray(boundary_values, dtype=float)
    if f.shape != (k,):
        raise DimensionMismatch(f"expected {k} boundary values, got shape {f.shape}")
    blocks = block_decompose(L)
    if blocks.Lhat.size:
        interior = scipy.linalg.solve(blocks.Lhat, blocks.B @ f, assume_a="pos")
    else:
        interior = np.zeros(0)
    values = np.concatenate([f, interior])
    M = dtn_matrix(g, boundary_order).entries
    fluxes = np.concatenate([M @ f, np.zeros(L.indexing.n - k)])
    return HarmonicExtension(values, fluxes, L.labels)


def partial_dtn(g: MetricGraph, keep: Sequence[str]) -> DtnMatrix:
    """DtN matrix measured on the boundary vertices ``keep`` only.

    The remaining boundary vertices carry a Neumann condition, i.e. they are
    eliminated together with the interior.  Rows follow the order of ``keep``.
    """
    L = discrete_laplacian(g)
    keep = [str(v) for v in keep]
    boundary = set(L.indexing.boundary)
    for v in keep:
        if v not in L.indexing.position:
            raise UnknownLabel(f"unknown vertex {v!r}", v)
        if v not in boundary:
            raise GraphError(f"vertex {v!r} is not a boundary vertex", v)
    if len(set(keep)) != len(keep):
        raise GraphError(f"repeated label in {keep}", tuple(keep))
    if len(keep) < 2:
        raise TooFewBoundaryVertices("partial DtN needs at least two kept boundary vertices")
    S, asym = kron_reduce(L.entries, [L.indexing.position[v] for v in keep])
    return DtnMatrix(S, tuple(keep), asym)
