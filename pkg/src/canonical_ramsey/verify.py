"""
Independent re-checks of witnesses, computed straight from the coordinates.

Nothing here goes through the interned colorings, so these checks do not
share code paths with the extraction they validate.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .geometry import PointSet, format_rational, sq_area, sq_distance

__all__ = ["Verdict", "verify_distinct_distances", "verify_distinct_areas", "verify_whomog_distances", "verify_witness"]


@dataclass
class Verdict:
    ok: bool
    kind: str
    message: str = "ok"
    violation: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"status": "ok" if self.ok else "fail", "kind": self.kind, "message": self.message, "violation": self.violation}


def _check_indices(ps: PointSet, witness):
    witness = [int(i) for i in witness]
    bad = [i for i in witness if not 0 <= i < len(ps)]
    if bad:
        raise IndexError(f"witness indices out of range 0..{len(ps) - 1}: {bad}")
    if len(set(witness)) != len(witness):
        raise IndexError("witness repeats an index")
    return witness


def verify_distinct_distances(ps: PointSet, witness) -> Verdict:
    witness = _check_indices(ps, witness)
    seen = {}
    for pair in combinations(witness, 2):
        v = sq_distance(ps[pair[0]], ps[pair[1]])
        if v in seen:
            return Verdict(False, "rainbow-distance", "two pairs share a distance",
                           {"pairs": [list(seen[v]), list(pair)], "sq_distance": format_rational(v)})
        seen[v] = pair
    return Verdict(True, "rainbow-distance")


def verify_distinct_areas(ps: PointSet, witness) -> Verdict:
    witness = _check_indices(ps, witness)
    seen = {}
    for triple in combinations(witness, 3):
        v = sq_area(*(ps[i] for i in triple))
        if v in seen:
            return Verdict(False, "rainbow-area", "two triangles share an area",
                           {"triples": [list(seen[v]), list(triple)], "sq_area": format_rational(v)})
        seen[v] = triple
    return Verdict(True, "rainbow-area")


def verify_whomog_distances(ps: PointSet, order) -> Verdict:
    """Each of the first ``L-3`` points must be equidistant from all later points."""
    order = _check_indices(ps, order)
    for i in range(len(order) - 3):
        first = sq_distance(ps[order[i]], ps[order[i + 1]])
        for j in range(i + 2, len(order)):
            v = sq_distance(ps[order[i]], ps[order[j]])
            if v != first:
                return Verdict(False, "whomog-distance", f"position {i} sees two distances",
                               {"pairs": [[order[i], order[i + 1]], [order[i], order[j]]],
                                "sq_distances": [format_rational(first), format_rational(v)]})
    return Verdict(True, "whomog-distance")


def verify_witness(ps: PointSet, witness, mode: str) -> Verdict:
    if mode == "distance":
        return verify_distinct_distances(ps, witness)
    if mode == "area":
        return verify_distinct_areas(ps, witness)
    if mode == "whomog":
        return verify_whomog_distances(ps, witness)
    raise ValueError(f"unknown verification mode {mode!r}")
