"""Inverse map: DtN matrix -> metric tree.

Two stages.  :func:`boundary_distances` reads every pairwise boundary
distance off a single DtN matrix: pin row/column ``i0`` (unit diagonal, zeros
elsewhere), invert, and the ``j``-th diagonal entry of the inverse is the
distance from ``v_{i0}`` to ``v_j``.  :func:`reconstruct_tree` then rebuilds
the tree from those distances by repeatedly finding a group of vertices that
hang off a common interior vertex, creating that vertex, and continuing on
the smaller set of active vertices.
"""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

import numpy as np
import scipy.linalg

from .errors import (
    AsymmetryTooLarge,
    DegenerateAttach,
    GraphError,
    IndexOutOfRange,
    InvalidDistanceMatrix,
    NonpositiveSolution,
    NoSiblingPair,
    NotTreeMetric,
    PinnedSingular,
    TooFewBoundaryVertices,
)
from .forward import DtnMatrix, default_labels
from .graph import DEFAULT_TOL, ReconstructedTree, tree_distances
from .laplacian import _frozen

#: Relative mismatch allowed between the (i, j) and (j, i) distance readings.
ASYMMETRY_RTOL = 1e-6


@dataclass(frozen=True)
class DistanceMatrix:
    """Symmetric matrix of pairwise distances with a label per index."""

    entries: np.ndarray
    labels: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "entries", _frozen(self.entries))
        object.__setattr__(self, "labels", tuple(str(x) for x in self.labels))
        n = self.entries.shape[0]
        if self.entries.shape != (n, n) or len(self.labels) != n:
            raise InvalidDistanceMatrix(
                f"distance matrix of shape {self.entries.shape} with {len(self.labels)} labels"
            )

    @classmethod
    def from_array(cls, entries, labels: Optional[Sequence[str]] = None) -> "DistanceMatrix":
        entries = np.asarray(entries, dtype=float)
        if labels is None:
            labels = default_labels(entries.shape[0])
        return cls(entries, tuple(labels))


@dataclass(frozen=True)
class SiblingGroup:
    """Active indices that hang off one common vertex.

    ``attach_distances[i]`` is the distance from member ``i`` to that vertex
    and ``offsets_to_rest[j]`` the distance from it to every other active
    index ``j``.  If the common vertex is itself one of the members (an
    interior vertex created earlier), ``center`` names it.
    """

    members: tuple[int, ...]
    attach_distances: dict[int, float]
    offsets_to_rest: dict[int, float]
    center: Optional[int] = None


@dataclass(frozen=True)
class TreeMetricReport:
    is_tree_metric: bool
    worst_violation: float
    worst_quadruple: Optional[tuple] = field(default=None)

    def __bool__(self) -> bool:
        return bool(self.is_tree_metric)


MatrixLike = Union[DtnMatrix, DistanceMatrix, np.ndarray, Sequence[Sequence[float]]]


def _entries(M: MatrixLike) -> np.ndarray:
    if isinstance(M, (DtnMatrix, DistanceMatrix)):
        return np.array(M.entries)
    return np.asarray(M, dtype=float)


def _labels(M: MatrixLike, k: int) -> tuple[str, ...]:
    if isinstance(M, (DtnMatrix, DistanceMatrix)):
        return M.labels
    return default_labels(k)


def _distance_tol(D: np.ndarray, tol: float) -> float:
    """Absolute slack for distance comparisons: ``max(tol, tol * diameter)``."""
    diameter = float(np.max(D)) if D.size else 0.0
    return max(tol, tol * diameter)


def _pin(A: np.ndarray, i: int) -> np.ndarray:
    P = A.copy()
    P[i, :] = 0.0
    P[:, i] = 0.0
    P[i, i] = 1.0
    return P


def pin_matrix(M: MatrixLike, i0: int) -> np.ndarray:
    """Copy of ``M`` with row/column ``i0`` replaced by the unit vector.

    ``i0`` counts boundary vertices from 1, so ``1 <= i0 <= k``.
    """
    A = _entries(M)
    k = A.shape[0]
    if not 1 <= i0 <= k:
        raise IndexOutOfRange(f"pin index {i0} outside 1..{k}")
    return _pin(A, i0 - 1)


def _invert_pinned(P: np.ndarray, i0: int) -> np.ndarray:
    with warnings.catch_warnings():
        warnings.simplefilter("error", scipy.linalg.LinAlgWarning)
        try:
            return scipy.linalg.solve(P, np.eye(P.shape[0]))
        except (np.linalg.LinAlgError, scipy.linalg.LinAlgWarning) as exc:
            raise PinnedSingular(f"matrix pinned at index {i0} is singular: {exc}") from exc


def boundary_distances(M: MatrixLike) -> DistanceMatrix:
    """Pairwise boundary distances encoded in a DtN matrix of a tree.

    Row ``i`` comes from the diagonal of the inverse of ``pin_matrix(M, i + 1)``.
    The two readings of each pair are averaged after checking they agree to
    ``ASYMMETRY_RTOL``.
    """
    A = _entries(M)
    k = A.shape[0]
    if A.ndim != 2 or A.shape != (k, k):
        raise InvalidDistanceMatrix(f"expected a square matrix, got shape {A.shape}")
    if k < 2:
        raise TooFewBoundaryVertices(f"need at least 2 boundary vertices, got {k}")
    D = np.empty((k, k))
    for i0 in range(k):
        D[i0] = np.diag(_invert_pinned(_pin(A, i0), i0 + 1))
        D[i0, i0] = 0.0
    gap = np.abs(D - D.T)
    scale = np.maximum(np.abs(D), np.abs(D.T))
    bad = gap > ASYMMETRY_RTOL * np.maximum(scale, np.finfo(float).tiny)
    if np.any(bad):
        i, j = np.argwhere(bad)[0]
        raise AsymmetryTooLarge(
            f"distance readings d({i},{j})={D[i, j]!r} and d({j},{i})={D[j, i]!r} disagree"
        )
    return DistanceMatrix((D + D.T) / 2, _labels(M, k))


def check_tree_metric(D: MatrixLike, tol: float = DEFAULT_TOL) -> TreeMetricReport:
    """Four-point condition over every quadruple (and the triangle inequality).

    For each quadruple the three sums ``d(p,q)+d(r,s)``, ``d(p,r)+d(q,s)``,
    ``d(p,s)+d(q,r)`` are formed; the largest two must agree within
    ``max(tol, tol * diameter)``.  The report names the worst offender.
    """
    A = _entries(D)
    labels = _labels(D, A.shape[0])
    k = A.shape[0]
    slack = _distance_tol(A, tol)
    worst, where = 0.0, None

    for i, j, l in itertools.permutations(range(k), 3):
        excess = A[i, j] - A[i, l] - A[l, j]
        if excess > worst:
            worst, where = excess, (labels[i], labels[l], labels[j])

    if k >= 4:
        quads = np.array(list(itertools.combinations(range(k), 4)))
        p, q, r, s = quads.T
        sums = np.sort(
            np.stack([A[p, q] + A[r, s], A[p, r] + A[q, s], A[p, s] + A[q, r]], axis=1), axis=1
        )
        gaps = sums[:, 2] - sums[:, 1]
        idx = int(np.argmax(gaps))
        if gaps[idx] > worst:
            worst, where = float(gaps[idx]), tuple(labels[x] for x in quads[idx])

    return TreeMetricReport(bool(worst <= slack), float(worst), where if worst > 0 else None)


def solve_star(
    D: MatrixLike,
    i1: int,
    i2: int,
    witnesses: Optional[Sequence[int]] = None,
    tol: float = 0.0,
) -> tuple[float, float]:
    """Distances from ``i1`` and ``i2`` to the point where their paths to the rest split.

    Solves ``d1 + d2 = D[i1, i2]`` and ``d1 - d2 = D[i1, j] - D[i2, j]``, with
    the right-hand side of the second equation averaged over ``witnesses``
    (default: every other index).

    Raises
    ------
    NonpositiveSolution
        If either distance is below ``-tol``.
    """
    A = _entries(D)
    if witnesses is None:
        witnesses = [j for j in range(A.shape[0]) if j not in (i1, i2)]
    witnesses = list(witnesses)
    if not witnesses or len({i1, i2}) < 2 or {i1, i2} & set(witnesses):
        raise ValueError("solve_star needs two distinct indices and at least one other witness")
    diff = float(np.mean(A[i1, witnesses] - A[i2, witnesses]))
    d1 = (A[i1, i2] + diff) / 2
    d2 = A[i1, i2] - d1
    if d1 < -tol or d2 < -tol:
        raise NonpositiveSolution(
            f"star equations for indices {i1}, {i2} give negative lengths ({d1!r}, {d2!r})"
        )
    return float(d1), float(d2)


def _related(Dsub: np.ndarray, slack: float) -> np.ndarray:
    """Boolean matrix: ``d(a, j) - d(b, j)`` constant over all other active ``j``."""
    m = Dsub.shape[0]
    diff = Dsub[:, None, :] - Dsub[None, :, :]
    idx = np.arange(m)
    mask = (idx[None, None, :] == idx[:, None, None]) | (idx[None, None, :] == idx[None, :, None])
    hi = np.where(mask, -np.inf, diff).max(axis=2)
    lo = np.where(mask, np.inf, diff).min(axis=2)
    rel = (hi - lo) <= slack
    np.fill_diagonal(rel, False)
    return rel


def detect_sibling_group(
    D: MatrixLike,
    active: Sequence[int],
    tol: float = DEFAULT_TOL,
    n_boundary: Optional[int] = None,
) -> SiblingGroup:
    """Find a maximal set of active indices attached to one common vertex.

    Two indices are related when their distance difference to every other
    active index is the same constant (within ``max(tol, tol * diameter)``).
    The relation's classes are the sibling groups; the class holding the
    smallest index is returned.  Indices ``>= n_boundary`` are interior
    vertices made by earlier steps; one of them may sit exactly on the common
    vertex, in which case it becomes the group's ``center``.

    Raises
    ------
    NoSiblingPair
        No two active indices are related, or a class is not closed.
    DegenerateAttach
        A boundary vertex (or more than one member) sits on the common vertex,
        or the common vertex coincides with a non-member.
    """
    A = _entries(D)
    active = sorted(int(a) for a in active)
    if len(active) < 3:
        raise ValueError("sibling detection needs at least three active indices")
    if n_boundary is None:
        n_boundary = A.shape[0]
    slack = _distance_tol(A, tol)
    rel = _related(A[np.ix_(active, active)], slack)

    # union-find over the relation
    parent = list(range(len(active)))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in zip(*np.nonzero(rel)):
        parent[find(a)] = find(b)
    classes: dict[int, list[int]] = {}
    for a in range(len(active)):
        classes.setdefault(find(a), []).append(a)
    groups = sorted((c for c in classes.values() if len(c) >= 2), key=min)
    if not groups:
        raise NoSiblingPair(
            "no two active vertices share a neighbour; the distances are not a tree metric"
        )
    local = groups[0]
    if not all(rel[a, b] for a, b in itertools.combinations(local, 2)):
        raise NoSiblingPair(
            f"sibling relation is not transitive on {[active[a] for a in local]}; "
            "the distances are not a tree metric"
        )

    members = tuple(active[a] for a in local)
    rest = [x for x in active if x not in members]
    attach = {}
    for i in members:
        estimates = [
            solve_star(A, i, m, [j for j in active if j not in (i, m)], tol=slack)[0]
            for m in members
            if m != i
        ]
        attach[i] = float(np.mean(estimates))

    negative = [i for i in members if attach[i] < -slack]
    if negative:
        raise NonpositiveSolution(f"negative attach distance for index {negative[0]}")
    at_center = [i for i in members if attach[i] <= slack]
    center = None
    if at_center:
        if len(at_center) > 1 or at_center[0] < n_boundary:
            raise DegenerateAttach(
                f"index {at_center[0]} lies on the common vertex of group {list(members)}"
            )
        center = at_center[0]

    offsets = {}
    for j in rest:
        if center is not None:
            offsets[j] = float(A[center, j])
        else:
            offsets[j] = float(np.mean([A[m, j] - attach[m] for m in members]))
        if offsets[j] <= slack:
            raise DegenerateAttach(
                f"common vertex of group {list(members)} coincides with index {j}"
            )
    return SiblingGroup(members, attach, offsets, center)


def _validated_distances(D: MatrixLike) -> tuple[np.ndarray, tuple[str, ...]]:
    A = _entries(D)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise InvalidDistanceMatrix(f"expected a square matrix, got shape {A.shape}")
    k = A.shape[0]
    if k < 2:
        raise TooFewBoundaryVertices(f"need at least 2 boundary vertices, got {k}")
    if not np.all(np.isfinite(A)):
        raise InvalidDistanceMatrix("distance matrix has non-finite entries")
    if np.any(np.diag(A) != 0):
        raise InvalidDistanceMatrix("distance matrix must have a zero diagonal")
    off = A[~np.eye(k, dtype=bool)]
    if np.any(off <= 0):
        raise InvalidDistanceMatrix("distinct boundary vertices must be at positive distance")
    if np.max(np.abs(A - A.T)) > _distance_tol(A, DEFAULT_TOL):
        raise InvalidDistanceMatrix("distance matrix is not symmetric")
    return (A + A.T) / 2, _labels(D, k)


def reconstruct_tree(
    D0: MatrixLike,
    tol: float = DEFAULT_TOL,
    check: bool = False,
    verify: bool = True,
) -> ReconstructedTree:
    """Rebuild the metric tree whose boundary distances are ``D0``.

    Each step takes the sibling group holding the smallest active index,
    joins its members to a new interior vertex (or to the member already
    sitting there), and replaces them by that vertex.  When two active
    vertices remain they are joined by one edge.  The output has no interior
    vertex of degree two.

    Parameters
    ----------
    tol : float
        Relative tolerance; absolute comparisons use ``max(tol, tol * diameter)``.
    check : bool
        Run :func:`check_tree_metric` first and raise :class:`NotTreeMetric`.
    verify : bool
        Recompute the boundary distances of the result and raise
        :class:`NotTreeMetric` if any differs from ``D0`` by more than
        ``k`` times the absolute tolerance.
    """
    A0, labels = _validated_distances(D0)
    k = A0.shape[0]
    if check:
        report = check_tree_metric(DistanceMatrix(A0, labels), tol)
        if not report:
            raise NotTreeMetric(
                f"four-point condition fails by {report.worst_violation:.3g} "
                f"at {report.worst_quadruple}"
            )

    size = max(2 * k - 2, 2)
    D = np.zeros((size, size))
    D[:k, :k] = A0
    adjacency = np.zeros((size, size))
    names = list(labels)
    active = list(range(k))

    while len(active) > 2:
        group = detect_sibling_group(D, active, tol, n_boundary=k)
        if group.center is None:
            new = len(names)
            names.append(f"int{new - k + 1}")
            for m in group.members:
                adjacency[m, new] = adjacency[new, m] = group.attach_distances[m]
                D[m, new] = D[new, m] = group.attach_distances[m]
            for j, d in group.offsets_to_rest.items():
                D[j, new] = D[new, j] = d
            active = [a for a in active if a not in group.members] + [new]
        else:
            c = group.center
            for m in group.members:
                if m != c:
                    adjacency[m, c] = adjacency[c, m] = D[m, c]
            active = [a for a in active if a == c or a not in group.members]

    if len(active) == 2:
        u, v = active
        adjacency[u, v] = adjacency[v, u] = D[u, v]

    n = len(names)
    tree = ReconstructedTree(adjacency[:n, :n], tuple(names), k)
    if verify:
        try:
            recovered = tree_distances(tree.to_graph(), labels)
        except GraphError as exc:
            raise NotTreeMetric(f"reconstruction did not produce a tree: {exc}") from exc
        error = float(np.max(np.abs(recovered - A0)))
        if error > k * _distance_tol(A0, tol):
            raise NotTreeMetric(
                f"reconstructed tree misses the input distances by {error:.3g}; "
                "the input is not a tree metric"
            )
    return tree


def invert_dtn(M: MatrixLike, tol: float = DEFAULT_TOL, check: bool = False) -> ReconstructedTree:
    """Metric tree (without degree-two vertices) whose DtN matrix is ``M``."""
    return reconstruct_tree(boundary_distances(M), tol=tol, check=check)
