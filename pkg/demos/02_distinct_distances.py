# From a point set, pull out a subset whose pairwise distances are all different.

# %%
from canonical_ramsey import distance_coloring, distinct_distance_subset, max_rainbow_exact
from canonical_ramsey.colorings import count_bad_triples
from canonical_ramsey.generators import random_rational

ps = random_rational(60, 2, seed=11, max_den=1, scale=12)
C = distance_coloring(ps)
print(len(ps), "points,", C.num_colors, "distinct squared distances,", count_bad_triples(C), "bad triples")

# %% Run the whomog-or-rainbow pipeline with k1 = d + 3.
res = distinct_distance_subset(ps, seed=11)
print(res.kind, res.size, res.witness)
print("phase 1 stages:", [(s.vertex, s.size) for s in res.trace.stages], "->", res.trace.terminal)
print("core before extension:", res.core)
print("certificate:", [str(v) for v in res.certificate])
print("schedule guarantee applies:", res.guaranteed, "| notes:", res.notes)

# %% On a small instance the exact optimum is available for comparison.
small = random_rational(12, 2, seed=4, max_den=1, scale=5)
print(distinct_distance_subset(small).size, "vs optimum", max_rainbow_exact(distance_coloring(small)).optimum)
