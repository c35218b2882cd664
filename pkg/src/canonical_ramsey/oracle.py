"""
Brute-force ground truth: exact maximum rainbow sets, exhaustive whomog
searches, distinct-distance counts and an enumeration of the string family
behind the 3-ary Ramsey bound.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import combinations, product

import numpy as np

from .canonical import DEFAULT_SEARCH_CAP, find_I_whomog, find_whomog_pairs, is_rainbow
from .colorings import PairColoring, TripleColoring, area_coloring, distance_coloring, scaled_integer_coords
from .extraction import greedy_max_rainbow_pairs, greedy_max_rainbow_triples
from .geometry import PointSet

__all__ = [
    "OracleResult",
    "SearchRecord",
    "max_rainbow_exact",
    "naive_max_rainbow",
    "whomog_exists_pairs",
    "whomog_exists_triples",
    "distinct_distance_count",
    "per_instance_h_lower",
    "z_sum_exact",
    "DEFAULT_MAX_NODES",
]

DEFAULT_MAX_N = {2: 16, 3: 13}
DEFAULT_MAX_NODES = 5_000_000


@dataclass
class OracleResult:
    optimum: int
    witness: list
    explored: int
    exact: bool

    def to_dict(self) -> dict:
        return {
            "optimum": self.optimum,
            "witness": list(self.witness),
            "explored": self.explored,
            "exact": self.exact,
        }


@dataclass
class SearchRecord:
    witness: object
    nominal: int
    explored: int


class _OutOfBudget(Exception):
    pass


def _bb(n, new_colors, start, max_nodes):
    """Branch and bound over vertex sets in increasing order.

    ``new_colors(S, v)`` lists the colors of the edges that adding ``v`` to
    ``S`` creates.  A candidate stays alive only while those colors are
    distinct and unused, and a branch is cut when even taking every live
    candidate cannot beat the incumbent.
    """
    best = list(start)
    nodes = 0

    def fits(S, used, w):
        cols = new_colors(S, w)
        return len(set(cols)) == len(cols) and used.isdisjoint(cols)

    def search(S, used, cand):
        nonlocal best, nodes
        nodes += 1
        if nodes > max_nodes:
            raise _OutOfBudget
        if len(S) > len(best):
            best = list(S)
        for idx, v in enumerate(cand):
            if len(S) + len(cand) - idx <= len(best):
                return
            S2 = S + [v]
            used2 = used | set(new_colors(S, v))
            rest = [w for w in cand[idx + 1:] if fits(S2, used2, w)]
            search(S2, used2, rest)

    try:
        search([], set(), list(range(n)))
    except _OutOfBudget:
        return best, nodes, False
    return best, nodes, True


def max_rainbow_exact(C, max_n: int | None = None, max_nodes: int = DEFAULT_MAX_NODES) -> OracleResult:
    """Largest rainbow vertex set of a pair or triple coloring.

    Exact when ``n <= max_n`` (16 for pairs, 13 for triples by default) and
    the search finishes within ``max_nodes`` nodes; otherwise the best set
    found is returned with ``exact=False``.
    """
    n = C.n
    max_n = DEFAULT_MAX_N[C.arity] if max_n is None else max_n
    ids = C.ids.tolist()
    if C.arity == 2:
        start = greedy_max_rainbow_pairs(C)

        def new_colors(S, v):
            row = ids[v]
            return [row[u] for u in S]
    else:
        start = greedy_max_rainbow_triples(C)

        def new_colors(S, v):
            plane = ids[v]
            return [plane[a][b] for a, b in combinations(S, 2)]

    if n > max_n:
        return OracleResult(len(start), start, 0, False)
    best, nodes, exact = _bb(n, new_colors, start, max_nodes)
    if not is_rainbow(C, best):  # pragma: no cover - search invariant
        raise AssertionError("oracle witness is not rainbow")
    return OracleResult(len(best), sorted(best), nodes, exact)


def naive_max_rainbow(C) -> OracleResult:
    """Full enumeration of all subsets from the largest size down (small n only)."""
    explored = 0
    for size in range(C.n, 0, -1):
        for subset in combinations(range(C.n), size):
            explored += 1
            if is_rainbow(C, subset):
                return OracleResult(size, list(subset), explored, True)
    return OracleResult(0, [], explored, True)


def whomog_exists_pairs(C: PairColoring, L: int, cap: int = DEFAULT_SEARCH_CAP) -> SearchRecord:
    """Exhaustive whomog search; raises ``BudgetExceeded`` rather than guessing."""
    stats = {}
    cert = find_whomog_pairs(C, L, cap=cap, stats=stats)
    return SearchRecord(cert, stats["nominal"], stats["nodes"])


def whomog_exists_triples(C3: TripleColoring, L: int, cap: int = DEFAULT_SEARCH_CAP) -> SearchRecord:
    stats = {}
    cert = find_I_whomog(C3, L, cap=cap, stats=stats)
    return SearchRecord(cert, stats["nominal"], stats["checks"])


def distinct_distance_count(ps: PointSet, block: int = 512) -> int:
    """Number of distinct distances determined by ``ps``."""
    if not isinstance(ps, PointSet):
        ps = PointSet(tuple(ps))
    rows, _ = scaled_integer_coords(ps.points)
    bound = max((abs(c) for r in rows for c in r), default=0)
    if ps.dim * (2 * bound + 1) ** 2 >= 2 ** 62:
        values = set()
        for i, j in combinations(range(len(rows)), 2):
            values.add(sum((a - b) ** 2 for a, b in zip(rows[i], rows[j])))
        return len(values)
    X = np.array(rows, dtype=np.int64)
    n = len(X)
    seen = []
    for lo in range(0, n, block):
        chunk = X[lo:lo + block]
        diff = chunk[:, None, :] - X[None, lo:, :]
        sq = (diff * diff).sum(axis=2)
        # keep only pairs (i, j) with i < j
        mask = np.arange(len(chunk))[:, None] < np.arange(n - lo)[None, :]
        seen.append(np.unique(sq[mask]))
    if not seen:
        return 0
    return int(len(np.unique(np.concatenate(seen))))


def per_instance_h_lower(ps: PointSet, a: int, **budget) -> int:
    """Exact largest subset of ``ps`` with distinct distances (a=2) or areas (a=3).

    Every point set must give at least the worst-case value for its size.
    """
    if a == 2:
        C = distance_coloring(ps)
    elif a == 3:
        C = area_coloring(ps)
    else:
        raise ValueError("a must be 2 or 3")
    res = max_rainbow_exact(C, **budget)
    if not res.exact:
        raise RuntimeError("oracle budget exceeded; result would not be exact")
    return res.optimum


def z_sum_exact(ks) -> int:
    """Total length of all strings over ``1..c`` using symbol ``i`` at most ``k_i - 1`` times."""
    ks = tuple(ks)
    c = len(ks)
    total = 0
    for length in range(sum(k - 1 for k in ks) + 1):
        for word in product(range(c), repeat=length):
            counts = Counter(word)
            if all(counts[i] <= ks[i] - 1 for i in range(c)):
                total += length
    return total
