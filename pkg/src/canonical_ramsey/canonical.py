"""
Detectors for homogeneous, min/max-homogeneous, rainbow and weakly
homogeneous sets.

The whomog searches are exhaustive.  They serve as ground truth for
impossibility statements, so a search that would be too large raises
:class:`BudgetExceeded` instead of returning a partial answer.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from itertools import combinations
from math import comb, factorial
from typing import Sequence

import numpy as np

from .colorings import PairColoring, TripleColoring, _as_subset, _key_str

__all__ = [
    "SetClass",
    "WhomogCertificate",
    "IWhomogCertificate",
    "BudgetExceeded",
    "PROPER_INDEX_SETS",
    "classify_pair_subset",
    "is_rainbow",
    "is_whomog_ordered",
    "find_whomog_pairs",
    "is_I_whomog",
    "find_I_whomog",
    "DEFAULT_SEARCH_CAP",
]

DEFAULT_SEARCH_CAP = 10 ** 9

# proper subsets of {1, 2, 3}, smallest first
PROPER_INDEX_SETS = ((), (1,), (2,), (3,), (1, 2), (1, 3), (2, 3))


class BudgetExceeded(RuntimeError):
    """An exhaustive search would exceed its configured size cap."""


class SetClass(str, enum.Enum):
    HOMOG = "homog"
    MIN_HOMOG = "min-homog"
    MAX_HOMOG = "max-homog"
    RAINBOW = "rainbow"
    NONE = "none"


@dataclass(frozen=True)
class WhomogCertificate:
    """An ordering ``x_1..x_L`` and the level colors ``c_1..c_(L-3)`` (keys)."""

    order: tuple
    colors: tuple

    def to_dict(self) -> dict:
        return {
            "order": list(self.order),
            "colors": [_key_str(c) for c in self.colors],
        }


@dataclass(frozen=True)
class IWhomogCertificate:
    subset: tuple
    index_set: tuple

    def to_dict(self) -> dict:
        return {"subset": list(self.subset), "I": list(self.index_set)}


def classify_pair_subset(C: PairColoring, subset) -> set:
    """All of homog / min-homog / max-homog / rainbow that ``subset`` satisfies.

    Each definition is a biconditional over pairs of edges ``x1 < x2``,
    ``y1 < y2`` of the subset, so small subsets can satisfy several.
    Returns ``{SetClass.NONE}`` when none holds.
    """
    sub = _as_subset(subset, C.n)
    if len(sub) < 2:
        raise ValueError("classification needs at least two vertices")
    edges = list(combinations(sub.tolist(), 2))
    colors = [int(C.ids[x, y]) for x, y in edges]
    tags = set()
    if len(set(colors)) == 1:
        tags.add(SetClass.HOMOG)
    if len(set(colors)) == len(colors):
        tags.add(SetClass.RAINBOW)
    for tag, end in ((SetClass.MIN_HOMOG, 0), (SetClass.MAX_HOMOG, 1)):
        # color equal iff the chosen endpoint is equal
        by_end = {}
        for e, c in zip(edges, colors):
            by_end.setdefault(e[end], set()).add(c)
        if all(len(cs) == 1 for cs in by_end.values()):
            level = [next(iter(cs)) for cs in by_end.values()]
            if len(set(level)) == len(level):
                tags.add(tag)
    return tags or {SetClass.NONE}


def is_rainbow(C, subset=None) -> bool:
    """True iff all edges (pairs or triples) induced by ``subset`` get distinct colors."""
    sub = _as_subset(subset, C.n)
    if len(sub) < C.arity:
        return True
    if C.arity == 2:
        block = C.ids[np.ix_(sub, sub)]
        vals = block[np.triu_indices(len(sub), 1)]
    else:
        idx = np.array(list(combinations(range(len(sub)), 3)))
        t = sub[idx]
        vals = C.ids[t[:, 0], t[:, 1], t[:, 2]]
    return len(np.unique(vals)) == len(vals)


def is_whomog_ordered(C: PairColoring, seq: Sequence[int]):
    """Check weak homogeneity for this particular order of ``seq``.

    For every position ``i <= L-3`` all edges from ``seq[i]`` to later
    elements must share one color.  The last three positions are exempt.
    Returns a :class:`WhomogCertificate` or ``None``.
    """
    seq = [int(x) for x in seq]
    if len(set(seq)) != len(seq):
        raise ValueError("whomog sequences need distinct vertices")
    L = len(seq)
    colors = []
    for i in range(L - 3):
        row = C.ids[seq[i], seq[i + 1:]]
        if np.any(row != row[0]):
            return None
        colors.append(C.keys[int(row[0])])
    return WhomogCertificate(order=tuple(seq), colors=tuple(colors))


def _check_budget(n: int, L: int, per_subset: int, cap: int):
    size = comb(n, L) * per_subset
    if size > cap:
        raise BudgetExceeded(f"search size {size} exceeds cap {cap}")
    return size


class _Counter:
    __slots__ = ("nodes",)

    def __init__(self):
        self.nodes = 0


def _whomog_search(ids: np.ndarray, L: int, counter: _Counter):
    """Backtracking over ordered prefixes; returns the order or ``None``.

    A prefix ``x_1..x_i`` carries the pool of vertices whose edge to each
    ``x_j`` (``j < i``) has the level color ``c_j``.  The level color of
    ``x_i`` is fixed by whichever vertex is placed next, so every whomog
    ordering is reached by exactly one branch.
    """
    n = ids.shape[0]
    if L <= 3:
        return list(range(L)) if n >= L else None

    def finish(prefix, pool):
        # last three positions: any three pool vertices sharing a color to the tail
        last = prefix[-1]
        groups = {}
        for v in pool:
            groups.setdefault(int(ids[last, v]), []).append(v)
        best = None
        for members in groups.values():
            if len(members) >= 3:
                cand = members[:3]
                if best is None or cand < best:
                    best = cand
        return None if best is None else prefix + best

    def extend(prefix, pool):
        counter.nodes += 1
        i = len(prefix)
        if i == L - 3:
            return finish(prefix, pool)
        last = prefix[-1]
        for nxt in pool:
            c = ids[last, nxt]
            rest = [v for v in pool if v != nxt and ids[last, v] == c]
            if len(rest) < L - i - 1:
                continue
            found = extend(prefix + [nxt], rest)
            if found is not None:
                return found
        return None

    for first in range(n):
        pool = [v for v in range(n) if v != first]
        if len(pool) < L - 1:
            continue
        found = extend([first], pool)
        if found is not None:
            return found
    return None


def find_whomog_pairs(C: PairColoring, L: int, cap: int = DEFAULT_SEARCH_CAP, stats: dict | None = None):
    """Exhaustive search for a whomog set of size ``L``.

    Ranges over every ordered choice of the first ``L-3`` elements and every
    3-set for the exempt tail, which covers all ``C(n, L) * L!`` orderings.
    The cap applies to that nominal count.  Returns a certificate or ``None``;
    search statistics are written into ``stats`` if given.
    """
    if L < 1 or L > C.n:
        raise ValueError(f"L must be in 1..{C.n}")
    nominal = _check_budget(C.n, L, factorial(L), cap)
    counter = _Counter()
    order = _whomog_search(C.ids, L, counter)
    if stats is not None:
        stats.update(nominal=nominal, nodes=counter.nodes)
    if order is None:
        return None
    cert = is_whomog_ordered(C, order)
    if cert is None:  # pragma: no cover - search invariant
        raise AssertionError(f"search produced a non-whomog order {order}")
    return cert


def _index_set(I) -> tuple:
    I = tuple(sorted(set(int(i) for i in I)))
    if any(i not in (1, 2, 3) for i in I):
        raise ValueError(f"index set must be a subset of {{1,2,3}}, got {I}")
    if I == (1, 2, 3):
        raise ValueError("I = {1,2,3} is rainbow, not weak homogeneity")
    return I


def is_I_whomog(C3: TripleColoring, subset, I) -> bool:
    """True iff increasing triples of ``subset`` agreeing on the positions in
    ``I`` always have the same color (``I = ()`` means one color overall)."""
    I = _index_set(I)
    sub = _as_subset(subset, C3.n)
    if len(sub) < 3:
        raise ValueError("I-whomog needs at least three vertices")
    seen = {}
    for t in combinations(sub.tolist(), 3):
        key = tuple(t[i - 1] for i in I)
        c = C3.ids[t[0], t[1], t[2]]
        if seen.setdefault(key, c) != c:
            return False
    return True


def find_I_whomog(C3: TripleColoring, L: int, cap: int = DEFAULT_SEARCH_CAP, stats: dict | None = None):
    """First ``(subset, I)`` with ``subset`` I-whomog of size ``L``, or ``None``.

    Subsets are enumerated lexicographically and, for each, the seven proper
    index sets in :data:`PROPER_INDEX_SETS` order.
    """
    if L < 3 or L > C3.n:
        raise ValueError(f"L must be in 3..{C3.n}")
    nominal = _check_budget(C3.n, L, len(PROPER_INDEX_SETS), cap)
    checks = 0
    found = None
    for subset in combinations(range(C3.n), L):
        for I in PROPER_INDEX_SETS:
            checks += 1
            if is_I_whomog(C3, subset, I):
                found = IWhomogCertificate(subset=subset, index_set=I)
                break
        if found:
            break
    if stats is not None:
        stats.update(nominal=nominal, checks=checks)
    return found
