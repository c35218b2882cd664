# Exact geometry: every comparison below is between reduced fractions,
# so "equal distance" means equal, not "within 1e-9".

# %%
from fractions import Fraction as F

from canonical_ramsey import PointSet, is_cool_sequence, sphere_point, sq_area, sq_distance

print(sq_distance((0, 0), (3, 4)))                 # 25
print(sq_area((0, 0), (1, 0), (0, 1)))             # 1/4, the square of area 1/2
print(sq_area((0, 0, 0), (2, 0, 0), (0, 2, 0)))    # 4

# %% Rational points on spheres come from inverse stereographic projection.
p = sphere_point(2, [F(1, 2), 3])
print(p, sum(c * c for c in p))

# %% Cool sequences: each point but the last three is equidistant from everything after it.
tri = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
centre = (F(1, 3), F(1, 3), F(1, 3))
print(is_cool_sequence([centre] + tri), is_cool_sequence(tri + [centre]))

# %% Point sets round-trip through JSON with coordinates as strings.
ps = PointSet(((F(1, 2), 0), (0, F(-2, 3))))
print(ps.to_json())
