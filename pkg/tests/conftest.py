from fractions import Fraction

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from canonical_ramsey.colorings import PairColoring, TripleColoring
from canonical_ramsey.geometry import PointSet

settings.register_profile(
    "repo", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("repo")

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)
small_ints = st.integers(-6, 6).map(Fraction)


@st.composite
def point_sets(draw, dim=2, min_size=2, max_size=9, coords=small_ints):
    pts = draw(st.lists(st.tuples(*[coords] * dim), min_size=min_size, max_size=max_size, unique=True))
    return PointSet(tuple(pts))


@st.composite
def pair_colorings(draw, min_n=2, max_n=9, max_colors=6):
    n = draw(st.integers(min_n, max_n))
    table = draw(st.lists(st.integers(0, max_colors - 1), min_size=n * n, max_size=n * n))
    return PairColoring.from_function(n, lambda i, j: table[i * n + j])


@st.composite
def triple_colorings(draw, min_n=3, max_n=8, max_colors=5):
    n = draw(st.integers(min_n, max_n))
    table = draw(st.lists(st.integers(0, max_colors - 1), min_size=n ** 3, max_size=n ** 3))
    return TripleColoring.from_function(n, lambda i, j, k: table[(i * n + j) * n + k])
