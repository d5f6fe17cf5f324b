# # Kron reduction and the path-overlap formula
#
# Eliminating interior vertices of a resistor network (Kron reduction) keeps
# it a resistor network: the reduced matrix is again a Laplacian.  For trees
# there is also a closed form for the inverse of a Laplacian with one vertex
# removed.  Entry (i, j) is the total length of edges shared by the paths
# from i and from j to the removed vertex.

# %%
import numpy as np

from dtntree import discrete_laplacian, kirkland_matrix, kron_reduce, reduced_laplacian
from dtntree.generators import random_graph_with_cycles, random_weighted_tree

np.set_printoptions(precision=4, suppress=True)
rng = np.random.default_rng(3)

# %%
g = random_graph_with_cycles(rng, n_core=8, n_extra=4, n_pendants=4)
L = discrete_laplacian(g)
S, asymmetry = kron_reduce(L.entries, range(L.indexing.k))
print(S)
print("row sums:", S.sum(axis=1))
print("eigenvalues:", np.linalg.eigvalsh(S))
print(f"asymmetry before symmetrizing: {asymmetry:.1e}")

# %% [markdown]
# Reducing onto any subset works the same way, for example onto three
# interior vertices.

# %%
keep = [L.indexing.position[v] for v in L.indexing.interior[:3]]
print(kron_reduce(L.entries, keep)[0])

# %% [markdown]
# The path-overlap formula on a random tree.

# %%
tree = random_weighted_tree(rng, 12)
L = discrete_laplacian(tree)
v = "x0"
others = [x for x in L.labels if x != v]
direct = np.linalg.inv(reduced_laplacian(L, v))
oracle = kirkland_matrix(tree, v, others)
print(oracle[:4, :4])
print("max difference:", np.max(np.abs(direct - oracle)))
