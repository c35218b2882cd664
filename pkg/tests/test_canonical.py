from itertools import combinations, permutations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from canonical_ramsey.canonical import (
    PROPER_INDEX_SETS,
    BudgetExceeded,
    SetClass,
    classify_pair_subset,
    find_I_whomog,
    find_whomog_pairs,
    is_I_whomog,
    is_rainbow,
    is_whomog_ordered,
)
from canonical_ramsey.colorings import PairColoring, TripleColoring, area_coloring, distance_coloring
from canonical_ramsey.geometry import PointSet

from conftest import pair_colorings, triple_colorings

SQUARE = PointSet(((0, 0), (1, 0), (0, 1), (1, 1)))
SIDON = PointSet(((0,), (1,), (3,)))
MIN6 = PairColoring.from_function(6, min)


def test_classify_examples():
    const = PairColoring.from_function(4, lambda i, j: 0)
    assert classify_pair_subset(const, None) == {SetClass.HOMOG}
    assert classify_pair_subset(distance_coloring(SIDON), None) == {SetClass.RAINBOW}
    assert classify_pair_subset(PairColoring.from_function(4, min), None) == {SetClass.MIN_HOMOG}
    assert classify_pair_subset(PairColoring.from_function(4, max), None) == {SetClass.MAX_HOMOG}
    assert classify_pair_subset(distance_coloring(SQUARE), None) == {SetClass.NONE}
    # a single edge satisfies every definition vacuously
    assert classify_pair_subset(const, [0, 1]) == {
        SetClass.HOMOG, SetClass.RAINBOW, SetClass.MIN_HOMOG, SetClass.MAX_HOMOG
    }


@given(pair_colorings(min_n=3, max_n=7, max_colors=8))
def test_rainbow_excludes_homog(C):
    tags = classify_pair_subset(C, None)
    if SetClass.RAINBOW in tags:
        assert SetClass.HOMOG not in tags
    assert (SetClass.RAINBOW in tags) == is_rainbow(C)


def test_is_whomog_ordered_examples():
    assert is_whomog_ordered(distance_coloring(SQUARE), [3, 0, 1]) is not None
    cert = is_whomog_ordered(MIN6, range(6))
    assert cert.order == (0, 1, 2, 3, 4, 5) and cert.colors == (0, 1, 2)
    for order in permutations(range(4)):
        assert is_whomog_ordered(distance_coloring(SQUARE), order) is None
    with pytest.raises(ValueError):
        is_whomog_ordered(MIN6, [0, 0, 1])


def test_find_whomog_examples():
    assert find_whomog_pairs(MIN6, 6).order == (0, 1, 2, 3, 4, 5)
    assert find_whomog_pairs(distance_coloring(SQUARE), 4) is None
    assert find_whomog_pairs(distance_coloring(SQUARE), 3) is not None


def test_find_whomog_budget_guard():
    C = PairColoring.from_function(12, lambda i, j: (i * j) % 5)
    with pytest.raises(BudgetExceeded):
        find_whomog_pairs(C, 8, cap=1000)
    stats = {}
    find_whomog_pairs(C, 4, stats=stats)
    assert stats["nominal"] == 495 * 24


def _brute_whomog(C, L):
    for subset in combinations(range(C.n), L):
        for order in permutations(subset):
            if all(len({C.color(order[i], order[j]) for j in range(i + 1, L)}) == 1 for i in range(L - 3)):
                return True
    return False


@given(pair_colorings(min_n=4, max_n=7, max_colors=3), st.data())
def test_whomog_search_matches_permutation_brute_force(C, data):
    L = data.draw(st.integers(4, C.n))
    cert = find_whomog_pairs(C, L)
    assert (cert is not None) == _brute_whomog(C, L)
    if cert is not None:
        assert is_whomog_ordered(C, cert.order) == cert


@given(st.integers(4, 8), st.integers(0, 2 ** 32))
def test_whomog_exemption_of_last_three(L, seed):
    rng = np.random.default_rng(seed)
    # a min-coloring is whomog in numeric order; scramble only the tail
    ids = np.minimum.outer(np.arange(L), np.arange(L))
    a, b, c = L - 3, L - 2, L - 1
    for x, y in ((a, b), (a, c), (b, c)):
        ids[x, y] = ids[y, x] = int(rng.integers(0, 50))
    np.fill_diagonal(ids, -1)
    C = PairColoring.from_function(L, lambda i, j: int(ids[i, j]))
    assert is_whomog_ordered(C, range(L)) is not None


def test_is_I_whomog_examples():
    const = TripleColoring.from_function(5, lambda *t: 0)
    assert all(is_I_whomog(const, None, I) for I in PROPER_INDEX_SETS)
    distinct = TripleColoring.from_function(5, lambda *t: t)
    assert not is_I_whomog(distinct, [0, 1, 2, 3], (1,))
    assert is_I_whomog(area_coloring(SQUARE), None, (1, 2))
    with pytest.raises(ValueError):
        is_I_whomog(const, None, (1, 2, 3))


def test_find_I_whomog_examples():
    const = TripleColoring.from_function(6, lambda *t: 0)
    cert = find_I_whomog(const, 6)
    assert cert.subset == tuple(range(6)) and cert.index_set == ()
    by_first = TripleColoring.from_function(6, lambda i, j, k: i)
    assert find_I_whomog(by_first, 6).index_set == (1,)
    with pytest.raises(BudgetExceeded):
        find_I_whomog(const, 6, cap=5)


@given(triple_colorings(min_n=4, max_n=7, max_colors=3), st.data())
def test_I_whomog_upward_closed(C3, data):
    sub = data.draw(st.lists(st.integers(0, C3.n - 1), min_size=3, max_size=C3.n, unique=True))
    for I in PROPER_INDEX_SETS:
        if is_I_whomog(C3, sub, I):
            for J in PROPER_INDEX_SETS:
                if set(I) <= set(J):
                    assert is_I_whomog(C3, sub, J)


def _brute_I(C3, sub, I):
    for s, t in combinations(list(combinations(sorted(sub), 3)), 2):
        if all(s[i - 1] == t[i - 1] for i in I) and C3.color(*s) != C3.color(*t):
            return False
    return True


@given(triple_colorings(min_n=3, max_n=7, max_colors=3))
def test_I_whomog_matches_pairwise_definition(C3):
    for I in PROPER_INDEX_SETS:
        assert is_I_whomog(C3, None, I) == _brute_I(C3, range(C3.n), I)


def test_is_rainbow_examples():
    assert is_rainbow(distance_coloring(SIDON))
    assert not is_rainbow(distance_coloring(SQUARE))
    assert is_rainbow(distance_coloring(SQUARE), [0, 3])
    assert is_rainbow(area_coloring(SQUARE), [0, 1, 2])
    assert not is_rainbow(area_coloring(SQUARE))
