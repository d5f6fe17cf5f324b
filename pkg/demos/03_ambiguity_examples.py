# # What a DtN matrix does not tell you
#
# Three small counterexamples, each a pair of graphs that a weaker form of
# the data cannot tell apart.

# %%
import numpy as np

from dtntree import dtn_matrix, equal_up_to_degree_two, invert_dtn, partial_dtn
from dtntree.fixtures import cycle_with_pendants, double_star, ambiguity_examples, single_edge, star

np.set_printoptions(precision=4, suppress=True)

# %% [markdown]
# ## Cycles are invisible
#
# A unit triangle with unit pendant edges has the same DtN matrix as a star
# whose three arms have length 4/3.  Inverting returns the star: the
# reconstruction only ever produces trees.

# %%
print(dtn_matrix(cycle_with_pendants(1.0)).entries)
print(dtn_matrix(star(3, 4 / 3)).entries)
print(invert_dtn(dtn_matrix(cycle_with_pendants(1.0))).to_graph().edges)

# %% [markdown]
# ## Part of the boundary is not enough
#
# Measure a unit 3-star on two leaves only, leaving the third free (zero
# flux).  The result is the DtN matrix of a single edge of length 2.

# %%
print(partial_dtn(star(3, 1.0), ["x1", "x2"]).entries)
print(dtn_matrix(single_edge(2.0)).entries)

# %% [markdown]
# ## The diagonal is not enough
#
# The unit 4-star and the double star with every edge 5/6 share the diagonal
# 3/4, yet they are different trees.

# %%
m1, m2 = dtn_matrix(star(4, 1.0)).entries, dtn_matrix(double_star(5 / 6, 5 / 6)).entries
print(np.diag(m1), np.diag(m2))
print(m1 - m2)
print("same tree:", equal_up_to_degree_two(star(4, 1.0), double_star(5 / 6, 5 / 6)))

# %%
for r in ambiguity_examples():
    print("PASS" if r.passed else "FAIL", r.name)
