"""
Exact rational geometry.

Points are tuples of :class:`fractions.Fraction`.  Every comparison of
lengths or areas goes through squared quantities so that equality is exact.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

Point = tuple  # tuple[Fraction, ...]

__all__ = [
    "Point",
    "PointSet",
    "GeometryError",
    "as_point",
    "parse_rational",
    "format_rational",
    "sq_distance",
    "sq_area",
    "check_general_position",
    "is_cool_sequence",
    "sphere_point",
]


class GeometryError(ValueError):
    """Raised on malformed or degenerate geometric input."""


def parse_rational(value) -> Fraction:
    """Parse ``"a/b"``, ``"a"`` or an int into a reduced Fraction."""
    if isinstance(value, bool):
        raise GeometryError(f"not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, Fraction):
        return value
    if not isinstance(value, str):
        raise GeometryError(f"coordinates must be strings or ints, got {value!r}")
    text = value.strip()
    num, sep, den = text.partition("/")
    try:
        numerator = int(num)
        denominator = int(den) if sep else 1
    except ValueError:
        raise GeometryError(f"not a rational: {value!r}") from None
    if denominator == 0:
        raise GeometryError(f"zero denominator: {value!r}")
    return Fraction(numerator, denominator)


def format_rational(q: Fraction) -> str:
    return str(Fraction(q))


def as_point(coords: Iterable) -> Point:
    return tuple(parse_rational(c) for c in coords)


def _check_dims(*points: Sequence) -> int:
    d = len(points[0])
    for p in points[1:]:
        if len(p) != d:
            raise GeometryError(f"dimension mismatch: {len(p)} != {d}")
    return d


def sq_distance(p: Sequence[Fraction], q: Sequence[Fraction]) -> Fraction:
    """Squared Euclidean distance, exact."""
    _check_dims(p, q)
    return sum(((a - b) ** 2 for a, b in zip(p, q)), Fraction(0))


def sq_area(p: Sequence[Fraction], q: Sequence[Fraction], r: Sequence[Fraction]) -> Fraction:
    """Squared area of the triangle ``pqr``.

    Uses the Gram determinant of the edge vectors ``u = q - p`` and
    ``v = r - p``: ``area**2 = (|u|**2 |v|**2 - (u.v)**2) / 4``.  Works in any
    dimension ``d >= 2`` and is zero exactly when the points are collinear.
    """
    d = _check_dims(p, q, r)
    if d < 2:
        raise GeometryError("triangle areas need dimension >= 2")
    u = [b - a for a, b in zip(p, q)]
    v = [c - a for a, c in zip(p, r)]
    uu = sum((x * x for x in u), Fraction(0))
    vv = sum((x * x for x in v), Fraction(0))
    uv = sum((x * y for x, y in zip(u, v)), Fraction(0))
    return (uu * vv - uv * uv) / 4


def check_general_position(points: Sequence[Sequence[Fraction]], a: int):
    """Return the first violating index tuple, or ``None`` if in general position.

    ``a=2`` looks for a repeated point, ``a=3`` for a collinear triple.
    Tuples are reported in lexicographic order of the (0-based) indices.
    """
    if a == 2:
        seen = {}
        for i, p in enumerate(points):
            key = tuple(p)
            if key in seen:
                return (seen[key], i)
            seen[key] = i
        return None
    if a == 3:
        for i, j, k in combinations(range(len(points)), 3):
            if sq_area(points[i], points[j], points[k]) == 0:
                return (i, j, k)
        return None
    raise GeometryError(f"general position is only checked for a in {{2, 3}}, got {a}")


def is_cool_sequence(seq: Sequence[Sequence[Fraction]]) -> bool:
    """True iff each of the first ``n - 3`` points is equidistant from all later ones."""
    n = len(seq)
    if n:
        _check_dims(*seq)
    for i in range(n - 3):
        target = sq_distance(seq[i], seq[i + 1])
        for j in range(i + 2, n):
            if sq_distance(seq[i], seq[j]) != target:
                return False
    return True


def sphere_point(d: int, params: Sequence) -> Point:
    """Exact rational point on the unit ``d``-sphere in ``R^(d+1)``.

    Inverse stereographic projection from the pole ``(0, ..., 0, 1)``::

        t  ->  (2 t_1, ..., 2 t_d, |t|**2 - 1) / (|t|**2 + 1)

    ``t = 0`` maps to the south pole ``(0, ..., 0, -1)``.  The projection
    pole itself is never produced, so every output has squared norm 1.
    """
    if d < 1:
        raise GeometryError("sphere dimension must be >= 1")
    if len(params) != d:
        raise GeometryError(f"expected {d} parameters, got {len(params)}")
    t = [parse_rational(x) for x in params]
    s = sum((x * x for x in t), Fraction(0))
    denom = s + 1
    return tuple(2 * x / denom for x in t) + ((s - 1) / denom,)


@dataclass(frozen=True)
class PointSet:
    """Distinct points of one dimension, labelled ``0..n-1`` by position."""

    points: tuple

    def __post_init__(self):
        pts = tuple(as_point(p) for p in self.points)
        if not pts:
            raise GeometryError("empty point set")
        d = len(pts[0])
        if d < 1:
            raise GeometryError("points need at least one coordinate")
        _check_dims(*pts)
        dup = check_general_position(pts, 2)
        if dup is not None:
            raise GeometryError(f"duplicate points at indices {dup}")
        object.__setattr__(self, "points", pts)

    @property
    def dim(self) -> int:
        return len(self.points[0])

    def __len__(self):
        return len(self.points)

    def __getitem__(self, i):
        return self.points[i]

    def __iter__(self):
        return iter(self.points)

    def subset(self, indices) -> "PointSet":
        return PointSet(tuple(self.points[i] for i in indices))

    # -- shared point-set JSON format ---------------------------------------

    def to_dict(self) -> dict:
        return {
            "dim": self.dim,
            "points": [[format_rational(c) for c in p] for p in self.points],
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)

    @classmethod
    def from_dict(cls, data: dict) -> "PointSet":
        try:
            dim = int(data["dim"])
            raw = data["points"]
        except (KeyError, TypeError, ValueError) as exc:
            raise GeometryError(f"malformed point-set object: {exc}") from None
        pts = tuple(as_point(p) for p in raw)
        for i, p in enumerate(pts):
            if len(p) != dim:
                raise GeometryError(f"point {i} has {len(p)} coordinates, expected {dim}")
        return cls(pts)

    @classmethod
    def from_json(cls, text: str) -> "PointSet":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise GeometryError(f"invalid JSON: {exc}") from None
        return cls.from_dict(data)
