# # Reconstructing a tree from its DtN matrix
#
# For a tree, a single DtN matrix pins down the whole tree (up to vertices of
# degree two).  The recipe has two steps.
#
# 1. Distances.  Replace row and column i0 of M by the unit vector and
#    invert.  The diagonal of the inverse lists the distances from leaf i0 to
#    every other leaf.  Leaves are counted from 1 here.
# 2. Tree building.  Find leaves hanging off a common vertex (their distance
#    differences to all other leaves agree), create that vertex, and repeat
#    with the group replaced by the new vertex.

# %%
import numpy as np

from dtntree import (
    boundary_distances,
    detect_sibling_group,
    dtn_matrix,
    equal_up_to_degree_two,
    invert_dtn,
    pin_matrix,
    reconstruct_tree,
)
from dtntree.generators import random_tree, subdivide

np.set_printoptions(precision=4, suppress=True)
rng = np.random.default_rng(7)

# %%
g = subdivide(random_tree(rng, 6, length_range=(0.5, 3.0)), rng, count=3)
print(f"{len(g.vertices)} vertices, {len(g.edges)} edges, boundary {g.boundary}")
M = dtn_matrix(g)

# %% [markdown]
# Pinning the first leaf and inverting gives the first row of the distance
# matrix on the diagonal.

# %%
P = pin_matrix(M, 1)
print(np.diag(np.linalg.inv(P)))
D = boundary_distances(M)
print(D.entries)

# %% [markdown]
# The first sibling group, with the distance from each member to the new
# interior vertex:

# %%
group = detect_sibling_group(D.entries, range(M.k))
print([D.labels[i] for i in group.members], group.attach_distances)

# %%
tree = reconstruct_tree(D)
for u, v, length in tree.to_graph().edges:
    print(f"{u:>5} -- {v:<5} {length:.6f}")

# %% [markdown]
# The reconstruction has no degree-two vertices, so it is compared with the
# original only after those are suppressed on both sides.

# %%
print("same tree:", equal_up_to_degree_two(tree, g, 1e-9, respect_boundary_labels=True))
print("one call: ", equal_up_to_degree_two(invert_dtn(M), g, 1e-9, respect_boundary_labels=True))
