"""
Colorings of pairs and triples, color degrees and bad triples.

Colors are interned: every coloring keeps a sorted tuple ``keys`` of the
distinct color keys, and stores the *index* of each edge's key (its color
id) in a dense numpy array.  Because ``keys`` is sorted, comparing color ids
is the same as comparing keys in canonical order.  Vertices are ``0..n-1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb, lcm
from typing import Callable, Sequence

import numpy as np

from .geometry import GeometryError, PointSet, format_rational

__all__ = [
    "PairColoring",
    "TripleColoring",
    "QuadColoring7",
    "BadTripleReport",
    "distance_coloring",
    "area_coloring",
    "color_degree",
    "max_color_degree",
    "bad_triples",
    "count_bad_triples",
    "derive_col_prime",
    "col_prime_histogram",
    "coloring_from_dump",
    "scaled_integer_coords",
]


def _key_str(key) -> str:
    if isinstance(key, Fraction):
        return format_rational(key)
    return str(key)


def _intern(raw):
    """Map a list of keys to (sorted unique keys, id per input position)."""
    keys = tuple(sorted(set(raw)))
    index = {k: i for i, k in enumerate(keys)}
    return keys, [index[k] for k in raw]


def _as_subset(subset, n: int) -> np.ndarray:
    if subset is None:
        return np.arange(n)
    arr = np.unique(np.asarray(list(subset), dtype=np.int64))
    if arr.size and (arr[0] < 0 or arr[-1] >= n):
        raise IndexError(f"subset has vertices outside 0..{n - 1}")
    return arr


class PairColoring:
    """A total coloring of the 2-subsets of ``range(n)``.

    ``ids[i, j]`` is the color id of ``{i, j}`` (``-1`` on the diagonal) and
    ``keys[id]`` the underlying key, e.g. a squared distance.
    """

    arity = 2

    def __init__(self, ids: np.ndarray, keys: Sequence):
        ids = np.asarray(ids)
        if ids.ndim != 2 or ids.shape[0] != ids.shape[1]:
            raise ValueError("pair colorings need a square id matrix")
        self.ids = ids
        self.keys = tuple(keys)
        self.n = ids.shape[0]

    @classmethod
    def from_function(cls, n: int, fn: Callable[[int, int], object]) -> "PairColoring":
        """Color ``{i, j}`` (``i < j``) by the orderable, hashable key ``fn(i, j)``."""
        pairs = list(combinations(range(n), 2))
        keys, ids = _intern([fn(i, j) for i, j in pairs])
        mat = np.full((n, n), -1, dtype=np.int64)
        if pairs:
            rows, cols = np.array(pairs).T
            mat[rows, cols] = ids
            mat[cols, rows] = ids
        return cls(mat, keys)

    @classmethod
    def from_matrix(cls, matrix) -> "PairColoring":
        """Build from a symmetric matrix of keys; the diagonal is ignored."""
        matrix = np.asarray(matrix)
        n = matrix.shape[0]
        iu = np.triu_indices(n, 1)
        values = matrix[iu]
        uniq, inverse = np.unique(values, return_inverse=True)
        mat = np.full((n, n), -1, dtype=np.int64)
        mat[iu] = inverse
        mat[iu[1], iu[0]] = inverse
        return cls(mat, [k.item() if hasattr(k, "item") else k for k in uniq])

    def color(self, i: int, j: int) -> int:
        if i == j:
            raise ValueError("a pair needs two distinct vertices")
        return int(self.ids[i, j])

    def key(self, i: int, j: int):
        return self.keys[self.color(i, j)]

    @property
    def num_colors(self) -> int:
        return len(self.keys)

    def edge_count(self) -> int:
        return comb(self.n, 2)

    def multiplicities(self) -> dict:
        """Key -> number of pairs carrying it."""
        iu = np.triu_indices(self.n, 1)
        counts = np.bincount(self.ids[iu], minlength=self.num_colors)
        return {self.keys[c]: int(counts[c]) for c in range(self.num_colors) if counts[c]}

    def restrict(self, subset) -> "PairColoring":
        """Induced coloring on ``subset``, relabelled ``0..len(subset)-1``."""
        sub = _as_subset(subset, self.n)
        return PairColoring(self.ids[np.ix_(sub, sub)], self.keys)

    def to_dump(self) -> dict:
        """Coloring dump: ``{"i,j": key}`` with rational keys as strings."""
        return {
            f"{i},{j}": _key_str(self.keys[self.ids[i, j]])
            for i, j in combinations(range(self.n), 2)
        }


class TripleColoring:
    """A total coloring of the 3-subsets of ``range(n)``.

    ``ids`` is a dense ``(n, n, n)`` array filled on every permutation of a
    triple; entries with a repeated index are ``-1``.
    """

    arity = 3

    def __init__(self, ids: np.ndarray, keys: Sequence):
        ids = np.asarray(ids)
        if ids.ndim != 3 or len(set(ids.shape)) != 1:
            raise ValueError("triple colorings need a cubic id array")
        self.ids = ids
        self.keys = tuple(keys)
        self.n = ids.shape[0]

    @classmethod
    def from_function(cls, n: int, fn: Callable[[int, int, int], object]) -> "TripleColoring":
        triples = list(combinations(range(n), 3))
        keys, ids = _intern([fn(i, j, k) for i, j, k in triples])
        arr = np.full((n, n, n), -1, dtype=np.int64)
        if triples:
            t = np.array(triples)
            ids = np.asarray(ids)
            for perm in ((0, 1, 2), (0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0)):
                arr[t[:, perm[0]], t[:, perm[1]], t[:, perm[2]]] = ids
        return cls(arr, keys)

    def color(self, i: int, j: int, k: int) -> int:
        if len({i, j, k}) != 3:
            raise ValueError("a triple needs three distinct vertices")
        return int(self.ids[i, j, k])

    def key(self, i: int, j: int, k: int):
        return self.keys[self.color(i, j, k)]

    @property
    def num_colors(self) -> int:
        return len(self.keys)

    def edge_count(self) -> int:
        return comb(self.n, 3)

    def restrict(self, subset) -> "TripleColoring":
        sub = _as_subset(subset, self.n)
        return TripleColoring(self.ids[np.ix_(sub, sub, sub)], self.keys)

    def to_dump(self) -> dict:
        return {
            f"{i},{j},{k}": _key_str(self.keys[self.ids[i, j, k]])
            for i, j, k in combinations(range(self.n), 3)
        }


@dataclass(frozen=True)
class QuadColoring7:
    """Labels in ``1..7`` for every 4-subset, listed in lexicographic order."""

    n: int
    quads: np.ndarray  # (C(n,4), 4), rows increasing
    labels: np.ndarray  # (C(n,4),) uint8

    def __getitem__(self, quad) -> int:
        a, b, c, d = sorted(quad)
        # rank of the combination in lexicographic order
        n = self.n
        rank = 0
        prev = -1
        for pos, x in enumerate((a, b, c, d)):
            for y in range(prev + 1, x):
                rank += comb(n - y - 1, 3 - pos)
            prev = x
        return int(self.labels[rank])

    def histogram(self) -> dict:
        counts = np.bincount(self.labels, minlength=8)
        return {label: int(counts[label]) for label in range(1, 8)}


@dataclass
class BadTripleReport:
    """Non-rainbow triples of an induced pair coloring."""

    m: int
    d_cap: int
    b: int
    triples: list = field(repr=False)

    def sixth_bound_holds(self) -> bool:
        """Exact check of ``6 b <= d m**2``."""
        return 6 * self.b <= self.d_cap * self.m * self.m


# -- geometry -> colorings ---------------------------------------------------

def scaled_integer_coords(points: Sequence[Sequence[Fraction]]):
    """Return ``(rows, L)`` with ``rows[i][k] = L * points[i][k]`` all integers."""
    scale = 1
    for p in points:
        for c in p:
            scale = lcm(scale, Fraction(c).denominator)
    rows = [[int(Fraction(c) * scale) for c in p] for p in points]
    return rows, scale


def _integer_matrix(rows) -> np.ndarray:
    """int64 array if every pairwise squared difference fits, else object."""
    bound = max((abs(c) for r in rows for c in r), default=0)
    d = len(rows[0]) if rows else 1
    if d * (2 * bound + 1) ** 2 < 2 ** 62:
        return np.array(rows, dtype=np.int64)
    return np.array(rows, dtype=object)


def pairwise_scaled_sq_distances(points) -> tuple:
    """Integer matrix of ``L**2 * |p_i - p_j|**2`` and the scale ``L``."""
    rows, scale = scaled_integer_coords(points)
    X = _integer_matrix(rows)
    diff = X[:, None, :] - X[None, :, :]
    return (diff * diff).sum(axis=2), scale


def distance_coloring(ps: PointSet) -> PairColoring:
    """Color each pair by its exact squared distance."""
    if not isinstance(ps, PointSet):
        ps = PointSet(tuple(ps))
    n = len(ps)
    if n < 2:
        raise GeometryError("a distance coloring needs at least 2 points")
    sq, scale = pairwise_scaled_sq_distances(ps.points)
    iu = np.triu_indices(n, 1)
    values = sq[iu]
    if values.dtype == object:
        uniq = sorted(set(values.tolist()))
        index = {v: i for i, v in enumerate(uniq)}
        inverse = np.array([index[v] for v in values.tolist()], dtype=np.int64)
    else:
        uniq, inverse = np.unique(values, return_inverse=True)
        uniq = uniq.tolist()
    mat = np.full((n, n), -1, dtype=np.int64)
    mat[iu] = inverse
    mat[iu[1], iu[0]] = inverse
    s2 = scale * scale
    return PairColoring(mat, [Fraction(int(v), s2) for v in uniq])


def area_coloring(ps: PointSet) -> TripleColoring:
    """Color each triple by its exact squared area.

    Raises :class:`GeometryError` naming the first collinear triple.
    """
    if not isinstance(ps, PointSet):
        ps = PointSet(tuple(ps))
    if ps.dim < 2:
        raise GeometryError("area colorings need dimension >= 2")
    rows, scale = scaled_integer_coords(ps.points)
    # 4 * L**4 * area**2 as an integer, via the Gram determinant
    def key(i, j, k):
        p, q, r = rows[i], rows[j], rows[k]
        u = [b - a for a, b in zip(p, q)]
        v = [c - a for a, c in zip(p, r)]
        uu = sum(x * x for x in u)
        vv = sum(x * x for x in v)
        uv = sum(x * y for x, y in zip(u, v))
        g = uu * vv - uv * uv
        if g == 0:
            raise GeometryError(f"collinear triple {(i, j, k)}")
        return g

    C = TripleColoring.from_function(len(ps), key)
    denom = 4 * scale ** 4
    return TripleColoring(C.ids, [Fraction(g, denom) for g in C.keys])


# -- degrees and bad triples -------------------------------------------------

def color_degree(C: PairColoring, subset, v: int, c: int) -> int:
    """Number of edges ``{v, u}``, ``u`` in ``subset``, with color id ``c``."""
    sub = _as_subset(subset, C.n)
    if v not in set(sub.tolist()):
        raise ValueError(f"vertex {v} is not in the subset")
    row = C.ids[v, sub]
    return int(np.count_nonzero(row == c))


def _degree_table(C: PairColoring, sub: np.ndarray):
    """Unique (row position, color id) pairs of the induced coloring and their counts."""
    block = C.ids[np.ix_(sub, sub)]
    m = len(sub)
    rows = np.repeat(np.arange(m), m)
    cols = block.ravel()
    mask = cols >= 0
    codes = rows[mask] * C.num_colors + cols[mask]
    uniq, counts = np.unique(codes, return_counts=True)
    return uniq // C.num_colors, uniq % C.num_colors, counts


def max_color_degree(C: PairColoring, subset=None) -> tuple:
    """Maximise ``deg_c(v)`` over the induced subgraph on ``subset``.

    Returns ``(v, c, deg)``; ties go to the smallest vertex, then the
    smallest color id (which is also the smallest key).
    """
    sub = _as_subset(subset, C.n)
    if len(sub) < 2:
        raise ValueError("max_color_degree needs at least two vertices")
    pos, col, counts = _degree_table(C, sub)
    best = counts.max()
    hits = np.flatnonzero(counts == best)
    # np.unique output is sorted by (row, color), so the first hit wins
    h = hits[0]
    return int(sub[pos[h]]), int(col[h]), int(best)


def max_degree(C: PairColoring, subset=None) -> int:
    sub = _as_subset(subset, C.n)
    if len(sub) < 2:
        return 0
    return max_color_degree(C, sub)[2]


def _iter_bad_triples(C: PairColoring, sub: np.ndarray):
    """Yield each bad triple once, as a sorted tuple of original labels.

    A triple with exactly two equal edges has a unique apex; a monochromatic
    triangle is yielded from its smallest vertex only.
    """
    block = C.ids[np.ix_(sub, sub)]
    m = len(sub)
    for a in range(m):
        row = block[a]
        order = np.argsort(row, kind="stable")
        srow = row[order]
        bounds = np.flatnonzero(np.diff(srow)) + 1
        for group in np.split(order, bounds):
            if len(group) < 2 or row[group[0]] < 0:
                continue
            c = row[group[0]]
            gi, gj = np.triu_indices(len(group), 1)
            u, w = group[gi], group[gj]
            third = block[u, w]
            for uu, ww, t in zip(u.tolist(), w.tolist(), third.tolist()):
                if t == c and not (a < uu and a < ww):
                    continue
                yield tuple(sorted((int(sub[a]), int(sub[uu]), int(sub[ww]))))


def bad_triples(C: PairColoring, subset=None) -> BadTripleReport:
    """Enumerate the triples of ``subset`` with two equally colored edges."""
    sub = _as_subset(subset, C.n)
    triples = sorted(_iter_bad_triples(C, sub)) if len(sub) >= 3 else []
    return BadTripleReport(m=len(sub), d_cap=max_degree(C, sub), b=len(triples), triples=triples)


def count_bad_triples(C: PairColoring, subset=None) -> int:
    """Number of bad triples, counted with array comparisons rather than enumeration."""
    sub = _as_subset(subset, C.n)
    m = len(sub)
    if m < 3:
        return 0
    block = C.ids[np.ix_(sub, sub)]
    total = 0
    for a in range(m - 2):
        # triples (a, b, c) with a < b < c
        rest = block[a + 1:, a + 1:]
        bi, ci = np.triu_indices(m - a - 1, 1)
        e_ab = block[a, a + 1:][bi]
        e_ac = block[a, a + 1:][ci]
        e_bc = rest[bi, ci]
        total += int(np.count_nonzero((e_ab == e_ac) | (e_ab == e_bc) | (e_ac == e_bc)))
    return total


# -- the 4-ary derived coloring ----------------------------------------------

def _label_quads(ids: np.ndarray, quads: np.ndarray) -> np.ndarray:
    a, b, c, d = quads.T
    t123, t124, t134, t234 = ids[a, b, c], ids[a, b, d], ids[a, c, d], ids[b, c, d]
    tests = (t123 == t124, t123 == t134, t123 == t234, t124 == t134, t124 == t234, t134 == t234)
    labels = np.full(len(quads), 7, dtype=np.uint8)
    # assign in reverse so the earliest matching case wins
    for case in range(5, -1, -1):
        labels[tests[case]] = case + 1
    return labels


def derive_col_prime(C3: TripleColoring) -> QuadColoring7:
    """Label every ``x1 < x2 < x3 < x4`` by the first equality that holds.

    Cases 1..6 compare the colors of ``x1x2x3``/``x1x2x4``,
    ``x1x2x3``/``x1x3x4``, ``x1x2x3``/``x2x3x4``, ``x1x2x4``/``x1x3x4``,
    ``x1x2x4``/``x2x3x4`` and ``x1x3x4``/``x2x3x4``; label 7 means none hold.
    """
    if C3.n < 4:
        raise ValueError("derive_col_prime needs n >= 4")
    quads = np.array(list(combinations(range(C3.n), 4)), dtype=np.int64)
    return QuadColoring7(n=C3.n, quads=quads, labels=_label_quads(C3.ids, quads))


def col_prime_histogram(C3: TripleColoring) -> dict:
    """Counts of the labels 1..7 without materialising every 4-set at once."""
    counts = np.zeros(8, dtype=np.int64)
    n = C3.n
    for first in range(n - 3):
        rest = np.array(list(combinations(range(first + 1, n), 3)), dtype=np.int64)
        quads = np.column_stack([np.full(len(rest), first), rest])
        counts += np.bincount(_label_quads(C3.ids, quads), minlength=8)
    return {label: int(counts[label]) for label in range(1, 8)}


def coloring_from_dump(dump: dict):
    """Inverse of ``to_dump`` for either arity; keys stay as strings."""
    if not dump:
        raise ValueError("empty coloring dump")
    parsed = {tuple(sorted(int(x) for x in k.split(","))): str(v) for k, v in dump.items()}
    arity = {len(t) for t in parsed}
    if len(arity) != 1 or arity.pop() not in (2, 3):
        raise ValueError("dump keys must all be pairs or all be triples")
    n = max(max(t) for t in parsed) + 1
    arity = len(next(iter(parsed)))
    cls = PairColoring if arity == 2 else TripleColoring
    missing = [t for t in combinations(range(n), arity) if t not in parsed]
    if missing:
        raise ValueError(f"dump has no color for {missing[0]}")
    return cls.from_function(n, lambda *t: parsed[t])
