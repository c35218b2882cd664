"""Seeded point-set generators with exact rational coordinates."""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

import numpy as np

from .colorings import PairColoring
from .geometry import GeometryError, PointSet, sq_area, sphere_point

__all__ = [
    "grid",
    "sidon_positions",
    "sidon_line",
    "random_rational",
    "sphere",
    "one_factorization",
    "proper_pair_coloring",
    "capped_pair_coloring",
    "GENERATORS",
]


def grid(g: int, dim: int = 2) -> PointSet:
    """The ``g x ... x g`` integer grid, in lexicographic order."""
    if g < 1:
        raise GeometryError("grid side must be >= 1")
    coords = np.indices((g,) * dim).reshape(dim, -1).T
    return PointSet(tuple(tuple(int(c) for c in row) for row in coords))


def sidon_positions(n: int) -> list:
    """Greedy Sidon set starting at 0: every pairwise difference distinct."""
    out = []
    diffs = set()
    x = 0
    while len(out) < n:
        new = {x - y for y in out}
        if len(new) == len(out) and not (new & diffs):
            out.append(x)
            diffs |= new
        x += 1
    return out


def sidon_line(n: int) -> PointSet:
    return PointSet(tuple((p,) for p in sidon_positions(n)))


def _rational(rng, max_den: int, scale: int) -> Fraction:
    den = int(rng.integers(1, max_den + 1))
    return Fraction(int(rng.integers(0, scale * den)), den)


def random_rational(
    n: int,
    dim: int,
    seed=0,
    max_den: int = 16,
    scale: int = 1000,
    general_position: bool = False,
    max_tries: int = 10_000,
) -> PointSet:
    """``n`` distinct points with coordinates ``a/b``, ``1 <= b <= max_den``, in ``[0, scale)``.

    With ``general_position=True`` a point that would close a collinear
    triple is redrawn.
    """
    if general_position and dim < 2:
        raise GeometryError("no three collinear is impossible on a line with n >= 3")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    pts = []
    seen = set()
    tries = 0
    while len(pts) < n:
        tries += 1
        if tries > max_tries:
            raise GeometryError("could not draw enough points; widen the coordinate range")
        p = tuple(_rational(rng, max_den, scale) for _ in range(dim))
        if p in seen:
            continue
        if general_position and any(sq_area(a, b, p) == 0 for a, b in combinations(pts, 2)):
            continue
        pts.append(p)
        seen.add(p)
    return PointSet(tuple(pts))


def sphere(n: int, d: int, seed=0, max_den: int = 16, spread: int = 4) -> PointSet:
    """``n`` distinct exact points on the unit ``d``-sphere in ``R^(d+1)``."""
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    pts = []
    seen = set()
    while len(pts) < n:
        params = []
        for _ in range(d):
            den = int(rng.integers(1, max_den + 1))
            params.append(Fraction(int(rng.integers(-spread * den, spread * den + 1)), den))
        p = sphere_point(d, params)
        if p not in seen:
            pts.append(p)
            seen.add(p)
    return PointSet(tuple(pts))


def one_factorization(m: int) -> np.ndarray:
    """Round-robin split of the edges of ``K_m`` into matchings.

    Returns an array of shape ``(rounds, per_round, 2)``.  For odd ``m`` a
    phantom vertex ``m`` is added; its edges are marked with ``-1``.
    """
    size = m + (m % 2)
    if size < 2:
        return np.zeros((0, 0, 2), dtype=np.int64)
    r = np.arange(size - 1)[:, None]
    i = np.arange(1, size // 2)[None, :]
    a = np.concatenate([np.full((size - 1, 1), size - 1), (r + i) % (size - 1)], axis=1)
    b = np.concatenate([r, (r - i) % (size - 1)], axis=1)
    edges = np.stack([np.minimum(a, b), np.maximum(a, b)], axis=2)
    edges[(edges >= m).any(axis=2)] = -1
    return edges


def _from_labels(m: int, edges: np.ndarray, labels: np.ndarray, rng) -> PairColoring:
    """Color edge ``edges[t]`` with ``labels[t]`` after shuffling the vertices."""
    keep = edges[:, 0] >= 0
    edges, labels = edges[keep], labels[keep]
    _, labels = np.unique(labels, return_inverse=True)
    perm = rng.permutation(m)
    e = perm[edges]
    ids = np.full((m, m), -1, dtype=np.int64)
    ids[e[:, 0], e[:, 1]] = labels
    ids[e[:, 1], e[:, 0]] = labels
    return PairColoring(ids, tuple(range(int(labels.max()) + 1 if len(labels) else 0)))


def proper_pair_coloring(m: int, seed=0, split: bool = True) -> PairColoring:
    """Random coloring of ``K_m`` with every color degree at most 1.

    Each matching of a 1-factorization is cut into a random number of
    color classes (``split=True``) and the vertices are shuffled.
    """
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    rounds = one_factorization(m)
    R, P = rounds.shape[:2]
    if split and P:
        # a random cut point set per round; each piece becomes a color
        parts = rng.integers(1, P + 1, size=R)
        piece = (rng.permuted(np.tile(np.arange(P), (R, 1)), axis=1) * parts[:, None]) // P
    else:
        piece = np.zeros((R, P), dtype=np.int64)
    labels = np.arange(R)[:, None] * (P + 1) + piece
    return _from_labels(m, rounds.reshape(-1, 2), labels.reshape(-1), rng)


def capped_pair_coloring(m: int, d: int, seed=0) -> PairColoring:
    """Random coloring of ``K_m`` with every color degree at most ``d``.

    The matchings of a shuffled 1-factorization are merged in consecutive
    groups of random size ``1..d``; a group of ``g`` matchings is a color
    class of maximum degree ``g``.
    """
    if d < 1:
        raise ValueError("d must be >= 1")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    rounds = one_factorization(m)
    R, P = rounds.shape[:2]
    rounds = rounds[rng.permutation(R)]
    group = np.empty(R, dtype=np.int64)
    i = color = 0
    while i < R:
        g = int(rng.integers(1, d + 1))
        group[i:i + g] = color
        i += g
        color += 1
    labels = np.repeat(group, P)
    return _from_labels(m, rounds.reshape(-1, 2), labels, rng)


GENERATORS = ("grid", "random-rational", "sphere", "sidon-line")
