import json
from fractions import Fraction as F
from itertools import combinations
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from canonical_ramsey.canonical import is_rainbow, is_whomog_ordered
from canonical_ramsey.colorings import (
    PairColoring,
    TripleColoring,
    area_coloring,
    count_bad_triples,
    distance_coloring,
    max_degree,
)
from canonical_ramsey.extraction import (
    PHASE1_MIN_DEGREE,
    InvariantViolation,
    derive_params,
    distinct_area_subset,
    distinct_distance_subset,
    extract_rainbow,
    greedy_max_rainbow_pairs,
    greedy_max_rainbow_triples,
    phase1,
    remove_bad_triples,
    sample_low_bad_subset,
)
from canonical_ramsey.generators import capped_pair_coloring, proper_pair_coloring, random_rational
from canonical_ramsey.geometry import GeometryError, PointSet, sq_area, sq_distance
from canonical_ramsey.oracle import max_rainbow_exact

from conftest import pair_colorings, point_sets, triple_colorings

SQUARE = PointSet(((0, 0), (1, 0), (0, 1), (1, 1)))
SIDON = PointSet(((0,), (1,), (3,)))


def test_derive_params_examples():
    p = derive_params(5, 2)
    assert (p.m_dprime, p.m_prime, p.delta, p.m_dd) == (4, 6, F(1, 108), 324)
    assert p.n_required == 34992
    for k2 in range(2, 15):
        q = derive_params(4, k2)
        assert 2 * q.m_dprime >= k2 ** 3
        assert 0 < q.delta < 1 and q.m_dprime < q.m_prime
    with pytest.raises(ValueError):
        derive_params(3, 2)


def test_phase1_min_coloring_reaches_phase2():
    p = derive_params(4, 2)
    C = PairColoring.from_function(p.n_required, min)
    order, N, trace = phase1(C, p)
    assert trace.terminal == "phase2"
    assert is_whomog_ordered(C, order) is not None
    res = extract_rainbow(C, 4, 2)
    assert res.kind == "whomog" and res.guaranteed


def test_phase1_sidon_goes_straight_to_phase3():
    C = distance_coloring(SIDON)
    order, N, trace = phase1(C, derive_params(4, 2))
    assert order is None and trace.stages == [] and trace.terminal == "phase3"
    assert N.tolist() == [0, 1, 2]


@given(pair_colorings(min_n=3, max_n=12, max_colors=3), st.integers(4, 6))
def test_phase1_invariants(C, k1):
    p = derive_params(k1, 2)
    order, N, trace = phase1(C, p)
    sizes = [C.n] + [s.size for s in trace.stages]
    for before, after in zip(sizes, sizes[1:]):
        assert after >= p.delta * before
    if order is None:
        assert trace.terminal == "phase3" and trace.m0 == len(N)
        if len(N) >= 2:
            assert max_degree(C, N) < max(p.delta * len(N), PHASE1_MIN_DEGREE)
    else:
        assert len(order) == k1 and is_whomog_ordered(C, order) is not None


def test_sample_examples():
    C = proper_pair_coloring(40, 1)
    res = sample_low_bad_subset(C, range(40), 10, seed=3)
    assert res.accepted and res.draws == 1 and res.bad == 0
    D = capped_pair_coloring(20, 3, 2)
    whole = sample_low_bad_subset(D, range(20), 20, seed=0)
    assert whole.bad == whole.b_total == count_bad_triples(D)
    with pytest.raises(ValueError):
        sample_low_bad_subset(D, range(5), 6)


@given(st.integers(10, 50), st.integers(1, 4), st.integers(0, 2 ** 32))
def test_sample_is_deterministic_and_sized(m, d, seed):
    C = capped_pair_coloring(m, d, seed)
    mp = max(3, m // 3)
    a = sample_low_bad_subset(C, range(m), mp, seed=seed)
    b = sample_low_bad_subset(C, range(m), mp, seed=seed)
    assert a == b and len(a.subset) == mp == len(set(a.subset))
    assert a.bad == count_bad_triples(C, a.subset)
    assert a.accepted == (a.bad <= a.threshold)


def test_remove_bad_triples_examples():
    sq = distance_coloring(SQUARE)
    out = remove_bad_triples(sq, range(4))
    assert len(out) >= 2 and count_bad_triples(sq, out) == 0
    sid = distance_coloring(SIDON)
    assert remove_bad_triples(sid, [0, 1, 2]) == [0, 1, 2]


@given(pair_colorings(min_n=3, max_n=12, max_colors=4))
def test_remove_bad_triples_postcondition(C):
    b = count_bad_triples(C)
    out = remove_bad_triples(C, None)
    assert count_bad_triples(C, out) == 0
    assert len(out) >= C.n - b


def test_greedy_pairs_examples():
    assert greedy_max_rainbow_pairs(distance_coloring(SIDON)) == [0, 1, 2]
    assert len(greedy_max_rainbow_pairs(distance_coloring(SQUARE))) == 2


@given(pair_colorings(min_n=2, max_n=10, max_colors=6))
def test_greedy_pairs_rainbow_and_maximal(C):
    out = greedy_max_rainbow_pairs(C)
    assert is_rainbow(C, out)
    for v in set(range(C.n)) - set(out):
        assert not is_rainbow(C, sorted(out + [v]))
    assert len(out) <= max_rainbow_exact(C).optimum


@given(st.integers(3, 30), st.integers(0, 2 ** 32))
def test_greedy_counting_law_on_proper_colorings(m, seed):
    C = proper_pair_coloring(m, seed)
    s = len(greedy_max_rainbow_pairs(C))
    assert m - s <= s * comb(s, 2)
    assert 2 * m <= (s + 1) ** 3


def test_greedy_triples_examples():
    assert greedy_max_rainbow_triples(TripleColoring.from_function(3, lambda *t: 0)) == [0, 1, 2]
    assert len(greedy_max_rainbow_triples(TripleColoring.from_function(7, lambda *t: 0))) == 3


@given(triple_colorings(min_n=3, max_n=8, max_colors=8))
def test_greedy_triples_rainbow_and_maximal(C3):
    out = greedy_max_rainbow_triples(C3)
    assert is_rainbow(C3, out)
    for v in set(range(C3.n)) - set(out):
        assert not is_rainbow(C3, sorted(out + [v]))
    assert len(out) <= max_rainbow_exact(C3).optimum


def test_extract_rainbow_examples():
    res = extract_rainbow(PairColoring.from_function(30, min), 5, 2)
    assert res.kind == "whomog" and not res.guaranteed
    assert res.witness.order == (0, 1, 2, 3, 4)
    distinct = PairColoring.from_function(12, lambda i, j: (i, j))
    res = extract_rainbow(distinct, 5, 10)
    assert res.kind == "rainbow" and res.size == 12


def test_random_planar_200_points():
    ps = random_rational(200, 2, seed=7)
    res = distinct_distance_subset(ps, k2=3, seed=7)
    assert res.kind == "rainbow" and res.size >= 3
    assert is_rainbow(distance_coloring(ps), res.witness)


def test_extract_rainbow_is_deterministic():
    C = capped_pair_coloring(60, 3, 11)
    a = extract_rainbow(C, 5, 3, seed=5)
    b = extract_rainbow(C, 5, 3, seed=5)
    assert a.to_dict(C.keys) == b.to_dict(C.keys)


def test_distinct_distance_examples():
    res = distinct_distance_subset(SIDON)
    assert res.witness == [0, 1, 2] and res.certificate == [1, 4, 9]
    res = distinct_distance_subset(SQUARE)
    assert res.size == 2 and res.certificate == [1]
    assert distinct_distance_subset(PointSet(((0, 0),))).witness == [0]


@given(point_sets(dim=2, min_size=2, max_size=10, coords=st.integers(0, 4)))
def test_distinct_distance_certificate(ps):
    res = distinct_distance_subset(ps, seed=1)
    w = res.witness
    values = sorted(sq_distance(ps[i], ps[j]) for i, j in combinations(w, 2))
    assert res.certificate == values
    assert all(a < b for a, b in zip(values, values[1:]))
    assert res.size <= max_rainbow_exact(distance_coloring(ps)).optimum


def test_distinct_distance_rejects_duplicates():
    with pytest.raises(GeometryError):
        distinct_distance_subset([(0, 0), (0, 0), (1, 0)])


def test_distinct_area_examples():
    res = distinct_area_subset(PointSet(((0, 0), (1, 0), (0, 1))))
    assert res.witness == [0, 1, 2]
    res = distinct_area_subset(SQUARE)
    assert res.witness == [0, 1, 2] and res.certificate == [F(1, 4)]
    assert res.col_prime_histogram == {1: 1, 2: 0, 3: 0, 4: 0, 5: 0, 6: 0, 7: 0}
    with pytest.raises(GeometryError):
        distinct_area_subset(PointSet(((0, 0), (1, 1), (2, 2))))
    with pytest.raises(GeometryError):
        distinct_area_subset(PointSet(((0, 0, 0, 0), (1, 0, 0, 0), (0, 1, 0, 0))))


@given(st.integers(3, 10), st.integers(0, 2 ** 32), st.sampled_from([2, 3]))
def test_distinct_area_certificate(n, seed, dim):
    ps = random_rational(n, dim, seed=seed, max_den=1, scale=12, general_position=True)
    res = distinct_area_subset(ps)
    values = sorted(sq_area(*(ps[i] for i in t)) for t in combinations(res.witness, 3))
    assert res.certificate == values and len(set(values)) == len(values)
    assert res.size <= max_rainbow_exact(area_coloring(ps)).optimum
    assert sum(res.col_prime_histogram.values()) == comb(n, 4)


def test_invariant_violation_carries_dump():
    err = InvariantViolation("boom", {"order": [1, 2]})
    assert err.dump == {"order": [1, 2]} and "boom" in str(err)


def _has_float(obj):
    if isinstance(obj, float):
        return True
    if isinstance(obj, dict):
        return any(_has_float(v) for v in obj.values())
    if isinstance(obj, (list, tuple)):
        return any(_has_float(v) for v in obj)
    return False


def test_report_serialises_without_floats():
    res = distinct_distance_subset(random_rational(12, 2, seed=3), seed=3)
    data = json.loads(json.dumps(res.to_dict()))
    assert not _has_float(data)
    assert data["kind"] == "rainbow" and data["witness"] == res.witness
