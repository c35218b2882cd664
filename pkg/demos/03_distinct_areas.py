# Same question for triangle areas: no two triangles in the subset may have equal area.

# %%
from canonical_ramsey import area_coloring, distinct_area_subset, max_rainbow_exact
from canonical_ramsey.generators import random_rational, sphere

ps = random_rational(11, 2, seed=5, max_den=1, scale=8, general_position=True)
res = distinct_area_subset(ps)
print("greedy:", res.witness, "optimum:", max_rainbow_exact(area_coloring(ps)).optimum)
print("squared areas:", [str(v) for v in res.certificate])

# %% The seven-way labelling of 4-sets, by which pair of faces shares a color first.
print(res.col_prime_histogram)

# %% Points on a circle are never collinear, so the area coloring is always defined.
circle = sphere(9, 1, seed=2)
print(distinct_area_subset(circle).size)
