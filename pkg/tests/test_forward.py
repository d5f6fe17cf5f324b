import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dtntree import DtnMatrix, discrete_laplacian, dtn_matrix, harmonic_extension, partial_dtn
from dtntree.errors import DimensionMismatch, GraphError, TooFewBoundaryVertices, UnknownLabel
from dtntree.fixtures import cycle_with_pendants, double_star, path, single_edge, star
from dtntree.generators import random_graph_with_cycles, random_tree, subdivide

seeds = st.integers(0, 2**32 - 1)
THIRD = np.array([[2, -1, -1], [-1, 2, -1], [-1, -1, 2]]) / 4


def _any_graph(seed):
    rng = np.random.default_rng(seed)
    if rng.random() < 0.5:
        return subdivide(random_tree(rng, int(rng.integers(2, 10))), rng, int(rng.integers(0, 5)))
    return random_graph_with_cycles(rng, int(rng.integers(3, 12)), int(rng.integers(0, 6)), int(rng.integers(2, 6)))


def _edge_fluxes(g, values):
    """Sum over incident edges of the slope towards the vertex, edge by edge."""
    flux = dict.fromkeys(g.vertices, 0.0)
    for u, v, length in g.edges:
        flux[u] += (values[u] - values[v]) / length
        flux[v] += (values[v] - values[u]) / length
    return flux


def _laplacian_pinv(A):
    J = np.full(A.shape, 1 / A.shape[0])
    return np.linalg.inv(A + J) - J


def test_dtn_cycle_and_star_coincide():
    np.testing.assert_allclose(dtn_matrix(cycle_with_pendants(1.0)).entries, THIRD, atol=1e-15)
    np.testing.assert_allclose(dtn_matrix(star(3, 4 / 3)).entries, THIRD, atol=1e-15)


@pytest.mark.parametrize("length", [0.3, 2.0, 7.5])
def test_dtn_single_edge(length):
    M = dtn_matrix(single_edge(length))
    np.testing.assert_allclose(M.entries, np.array([[1, -1], [-1, 1]]) / length, rtol=1e-15)
    assert M.labels == ("a", "b")


def test_dtn_double_star_closed_form():
    a = b = 6 / 5
    M = dtn_matrix(double_star(1 / a, 1 / b)).entries
    np.testing.assert_allclose(np.diag(M), 0.75, atol=1e-15)
    big, small = a**2 * (2 * a + b), a**2 * b
    block = np.array([[big, big, small, small], [big, big, small, small],
                      [small, small, big, big], [small, small, big, big]])
    np.testing.assert_allclose(M, a * np.eye(4) - block / (4 * a * (a + b)), atol=1e-14)


def test_dtn_needs_two_boundary_vertices():
    triangle_with_tail = cycle_with_pendants().edges[:1] + cycle_with_pendants().edges[3:]
    from dtntree import MetricGraph

    with pytest.raises(TooFewBoundaryVertices):
        dtn_matrix(MetricGraph.from_edges(triangle_with_tail))


def test_harmonic_extension_constant():
    ext = harmonic_extension(star(3, 1.0), [2.5, 2.5, 2.5])
    np.testing.assert_allclose(ext.values, 2.5, rtol=1e-15)
    np.testing.assert_allclose(ext.fluxes, 0, atol=1e-15)


def test_harmonic_extension_unit_star():
    ext = harmonic_extension(star(3, 1.0), [1, 0, 0])
    assert ext.labels == ("x1", "x2", "x3", "c")
    assert ext.values[3] == pytest.approx(1 / 3)
    np.testing.assert_allclose(ext.fluxes, [2 / 3, -1 / 3, -1 / 3, 0], atol=1e-15)


def test_harmonic_extension_edge_and_errors():
    ext = harmonic_extension(single_edge(2.0), [0, 1])
    np.testing.assert_allclose(ext.fluxes, [-0.5, 0.5])
    with pytest.raises(DimensionMismatch):
        harmonic_extension(single_edge(2.0), [0, 1, 2])


@settings(max_examples=50, deadline=None)
@given(seeds)
def test_harmonic_extension_is_harmonic(seed):
    g = _any_graph(seed)
    rng = np.random.default_rng(seed)
    M = dtn_matrix(g)
    f = rng.normal(size=M.k)
    ext = harmonic_extension(g, f)
    values = dict(zip(ext.labels, ext.values))
    flux = _edge_fluxes(g, values)
    scale = np.max(np.abs(M.entries)) * np.max(np.abs(f))
    np.testing.assert_allclose([flux[v] for v in ext.labels], ext.fluxes, atol=1e-10 * scale)
    L = discrete_laplacian(g).entries
    np.testing.assert_allclose(L @ ext.values, ext.fluxes, atol=1e-10 * scale)
    assert abs(ext.fluxes.sum()) <= 1e-10 * scale


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_columns_are_unit_responses(seed):
    g = _any_graph(seed)
    M = dtn_matrix(g)
    for l in range(M.k):
        ext = harmonic_extension(g, np.eye(M.k)[l])
        np.testing.assert_allclose(ext.fluxes[: M.k], M.entries[:, l], atol=1e-12)


@settings(max_examples=50, deadline=None)
@given(seeds)
def test_dtn_invariants_and_resistance_oracle(seed):
    g = _any_graph(seed)
    M = dtn_matrix(g)
    A = M.entries
    np.testing.assert_array_equal(A, A.T)
    np.testing.assert_allclose(A.sum(axis=1), 0, atol=1e-12)
    assert np.linalg.eigvalsh(A)[0] >= -1e-12 * np.linalg.norm(A, np.inf)
    assert np.all(A[~np.eye(M.k, dtype=bool)] <= 1e-12)
    # effective resistances of the full network must agree with those of the
    # reduced one; inv(A + J/n) - J/n is the pseudo-inverse of a connected
    # Laplacian
    L = discrete_laplacian(g).entries
    Lp, Mp = _laplacian_pinv(L), _laplacian_pinv(A)
    k = M.k
    r_full = np.diag(Lp)[:k, None] + np.diag(Lp)[None, :k] - 2 * Lp[:k, :k]
    r_red = np.diag(Mp)[:, None] + np.diag(Mp)[None, :] - 2 * Mp
    np.testing.assert_allclose(r_red, r_full, rtol=1e-8, atol=1e-10)


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_relabeling_conjugates(seed):
    g = _any_graph(seed)
    rng = np.random.default_rng(seed)
    M = dtn_matrix(g)
    order = list(rng.permutation(M.labels))
    P = np.eye(M.k)[:, [M.labels.index(x) for x in order]]
    np.testing.assert_allclose(dtn_matrix(g, order).entries, P.T @ M.entries @ P, atol=1e-13)
    assert M.permuted(order).labels == tuple(order)
    np.testing.assert_array_equal(M.permuted(order).entries, P.T @ M.entries @ P)


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_subdivision_invariance(seed):
    rng = np.random.default_rng(seed)
    g = random_tree(rng, int(rng.integers(2, 10)))
    h = subdivide(g, rng, int(rng.integers(1, 6)))
    np.testing.assert_allclose(dtn_matrix(h).entries, dtn_matrix(g).entries, atol=1e-10)


def test_partial_dtn():
    S = partial_dtn(star(3, 1.0), ["x1", "x2"])
    np.testing.assert_allclose(S.entries, [[0.5, -0.5], [-0.5, 0.5]], atol=1e-15)
    np.testing.assert_allclose(S.entries, dtn_matrix(single_edge(2.0)).entries, atol=1e-15)
    np.testing.assert_allclose(partial_dtn(single_edge(2.0), ["a", "b"]).entries, [[0.5, -0.5], [-0.5, 0.5]])
    assert partial_dtn(star(3), ["x2", "x1"]).labels == ("x2", "x1")


@settings(max_examples=20, deadline=None)
@given(seeds)
def test_partial_dtn_full_boundary(seed):
    g = _any_graph(seed)
    M = dtn_matrix(g)
    np.testing.assert_allclose(partial_dtn(g, M.labels).entries, M.entries, atol=1e-14)


def test_partial_dtn_errors():
    with pytest.raises(UnknownLabel):
        partial_dtn(star(3), ["x1", "zz"])
    with pytest.raises(GraphError):
        partial_dtn(star(3), ["x1", "c"])
    with pytest.raises(TooFewBoundaryVertices):
        partial_dtn(star(3), ["x1"])


def test_dtn_matrix_type_checks():
    with pytest.raises(DimensionMismatch):
        DtnMatrix.from_array([[1, 2, 3], [4, 5, 6]])
    with pytest.raises(DimensionMismatch):
        DtnMatrix.from_array(np.eye(2), ["a"])
    M = DtnMatrix.from_array(np.eye(2))
    assert M.labels == ("v1", "v2")
    with pytest.raises(ValueError):
        M.entries[0, 0] = 3.0


def test_path_with_interior_degree_two_vertices():
    np.testing.assert_allclose(dtn_matrix(path(0.5, 0.5, 1.0)).entries, [[0.5, -0.5], [-0.5, 0.5]], atol=1e-15)
