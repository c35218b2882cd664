from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from canonical_ramsey.generators import (
    capped_pair_coloring,
    grid,
    one_factorization,
    random_rational,
    sidon_line,
    sidon_positions,
    sphere,
)
from canonical_ramsey.geometry import GeometryError, check_general_position


def test_grid_examples():
    g = grid(3)
    assert len(g) == 9 and g.dim == 2
    assert g[0] == (0, 0) and g[-1] == (2, 2)
    assert len(grid(2, dim=3)) == 8
    with pytest.raises(GeometryError):
        grid(0)


def test_sidon_examples():
    assert sidon_positions(4) == [0, 1, 3, 7]
    assert [p[0] for p in sidon_line(6)] == [0, 1, 3, 7, 12, 20]


@given(st.integers(1, 25))
def test_sidon_differences_distinct(n):
    pos = sidon_positions(n)
    diffs = [b - a for a, b in combinations(pos, 2)]
    assert len(set(diffs)) == len(diffs)


def test_sphere_examples():
    pts = sphere(5, 2, seed=0)
    assert len(pts) == 5 and pts.dim == 3
    assert all(sum(c * c for c in p) == 1 for p in pts)


@given(st.integers(1, 12), st.integers(1, 3), st.integers(0, 2 ** 32))
def test_random_rational_is_seeded(n, dim, seed):
    a = random_rational(n, dim, seed=seed, max_den=5)
    assert a == random_rational(n, dim, seed=seed, max_den=5)
    assert all(c.denominator <= 5 for p in a for c in p)


@given(st.integers(3, 12), st.integers(0, 2 ** 32))
def test_general_position_resamples(n, seed):
    ps = random_rational(n, 2, seed=seed, max_den=1, scale=8, general_position=True)
    assert check_general_position(ps.points, 3) is None


def test_general_position_impossible_on_a_line():
    with pytest.raises(GeometryError):
        random_rational(3, 1, general_position=True)


@given(st.integers(2, 40))
def test_one_factorization_covers_every_edge_once(m):
    rounds = one_factorization(m)
    seen = []
    for match in rounds:
        verts = [v for e in match for v in e if v >= 0]
        assert len(verts) == len(set(verts))
        seen += [tuple(e) for e in match.tolist() if e[0] >= 0]
    assert sorted(seen) == list(combinations(range(m), 2))


@given(st.integers(2, 40), st.integers(1, 5), st.integers(0, 2 ** 32))
def test_capped_coloring_respects_cap(m, d, seed):
    C = capped_pair_coloring(m, d, seed)
    for v in range(m):
        row = C.ids[v][C.ids[v] >= 0]
        if len(row):
            assert max(list(row).count(c) for c in set(row.tolist())) <= d
