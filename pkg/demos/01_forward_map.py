# # From a metric graph to its Dirichlet-to-Neumann matrix
#
# Give every boundary vertex (a vertex of degree one) a value.  There is exactly
# one continuous function that is linear on each edge and whose inward slopes
# add up to zero at every interior vertex.  The DtN matrix maps the boundary
# values to the slopes of that function at the boundary.
#
# Numerically this is a Schur complement: build the Laplacian with weights
# 1/length, order the boundary first, and eliminate the interior.

# %%
import numpy as np

from dtntree import MetricGraph, discrete_laplacian, dtn_matrix, harmonic_extension
from dtntree.fixtures import double_star

np.set_printoptions(precision=4, suppress=True)

# %% [markdown]
# A small tree: two leaves on `u`, two on `w`, and a bridge between them.

# %%
g = double_star(leaf_length=1.0, bridge_length=2.0)
L = discrete_laplacian(g)
print("vertex order:", L.labels)
print(L.entries)

# %%
M = dtn_matrix(g)
print("boundary:", M.labels)
print(M.entries)
print("row sums:", M.entries.sum(axis=1))

# %% [markdown]
# The matrix is the response to unit data.  Put 1 on `x1` and 0 elsewhere:
# the fluxes at the boundary are the first column of M, and the interior
# fluxes vanish (that is the Kirchhoff condition).

# %%
ext = harmonic_extension(g, [1, 0, 0, 0])
for label, value, flux in zip(ext.labels, ext.values, ext.fluxes):
    print(f"{label:>3}  value {value:7.4f}  flux {flux:8.4f}")

# %% [markdown]
# Cycles are fine in this direction.  A triangle with a pendant edge at each
# corner:

# %%
triangle = MetricGraph.from_edges(
    [("p1", "c1", 1), ("p2", "c2", 1), ("p3", "c3", 1),
     ("c1", "c2", 1), ("c2", "c3", 1), ("c3", "c1", 1)]
)
print(dtn_matrix(triangle).entries)

# %% [markdown]
# Inserting a degree-two vertex (splitting an edge in two) changes nothing:
# two resistors in series are one resistor.

# %%
split = MetricGraph.from_edges(
    [("x1", "u", 1.0), ("x2", "u", 1.0), ("x3", "w", 1.0), ("x4", "w", 1.0),
     ("u", "m", 0.5), ("m", "w", 1.5)]
)
print("max change:", np.max(np.abs(dtn_matrix(split).entries - M.entries)))
