# Exhaustive searches that should find nothing: no whomog set of size d+3 among
# distances in R^d, and no I-whomog set of size 6 among planar areas.

# %%
import time

from canonical_ramsey import area_coloring, distance_coloring, find_I_whomog, find_whomog_pairs
from canonical_ramsey.colorings import PairColoring
from canonical_ramsey.generators import random_rational

for dim, L in ((2, 5), (3, 6)):
    ps = random_rational(9, dim, seed=1, max_den=1, scale=3)
    stats = {}
    t0 = time.perf_counter()
    cert = find_whomog_pairs(distance_coloring(ps), L, stats=stats)
    print(f"R^{dim}, L={L}: {cert} ({stats['nodes']} nodes of {stats['nominal']} orderings, "
          f"{time.perf_counter() - t0:.3f}s)")

# %% The search does find structure when it exists.
print(find_whomog_pairs(PairColoring.from_function(8, min), 6))

# %%
ps = random_rational(9, 2, seed=3, max_den=1, scale=6, general_position=True)
print(find_I_whomog(area_coloring(ps), 6))
