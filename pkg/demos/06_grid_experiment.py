# Distinct distances in the g x g grid, divided by the number of points.

# %%
from fractions import Fraction as F

from canonical_ramsey.generators import grid
from canonical_ramsey.oracle import distinct_distance_count

prev = None
for g in range(2, 33):
    count = distinct_distance_count(grid(g))
    ratio = F(count, g * g)
    mark = "  <- up" if prev is not None and ratio > prev else ""
    print(f"{g:3d} {count:6d} {float(ratio):.4f}{mark}")
    prev = ratio
