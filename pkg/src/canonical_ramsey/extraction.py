"""
Whomog-or-rainbow extraction for pair colorings, and the geometric front
ends that use it.

The pair pipeline follows three phases:

1. repeatedly pick a vertex ``x`` and color ``c`` whose color degree is at
   least ``delta * |N|`` and shrink ``N`` to the ``c``-neighbourhood of ``x``;
2. after ``k1 - 3`` such stages the chosen vertices plus any three survivors
   form a whomog set;
3. otherwise every color degree in ``N`` is small, so a random ``m'``-subset
   has few bad triples; deleting one vertex per bad triple leaves a set in
   which every color degree is at most 1, and a maximal rainbow subset of it
   is large.

Inputs far below ``n_required`` still run ("best effort"); the result then
carries ``guaranteed=False``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Optional, Sequence

import numpy as np

from . import bounds
from .canonical import is_rainbow, is_whomog_ordered
from .colorings import (
    PairColoring,
    TripleColoring,
    _as_subset,
    _iter_bad_triples,
    _key_str,
    area_coloring,
    col_prime_histogram,
    count_bad_triples,
    distance_coloring,
)
from .geometry import GeometryError, PointSet, format_rational, sq_area, sq_distance

__all__ = [
    "ExtractionParams",
    "Stage",
    "PhaseTrace",
    "SampleResult",
    "ExtractionResult",
    "InvariantViolation",
    "PHASE1_MIN_DEGREE",
    "derive_params",
    "phase1",
    "sample_low_bad_subset",
    "remove_bad_triples",
    "greedy_max_rainbow_pairs",
    "greedy_max_rainbow_triples",
    "extract_rainbow",
    "distinct_distance_subset",
    "distinct_area_subset",
]

# Phase 1 never accepts a color degree below this.  Whenever n >= n_required
# the threshold delta*|N| is already >= 3 at every stage, so this only
# matters in best-effort mode, where it keeps |N_i| >= 3.
PHASE1_MIN_DEGREE = 3


class InvariantViolation(RuntimeError):
    """A result contradicts a proven statement; carries a reproducible dump."""

    def __init__(self, message: str, dump: dict):
        super().__init__(message)
        self.dump = dump


@dataclass(frozen=True)
class ExtractionParams:
    k1: int
    k2: int
    delta: Fraction
    m_dd: Fraction
    m_prime: int
    m_dprime: int
    n_required: int
    retries: int = 64
    seed: int = 0

    def to_dict(self) -> dict:
        return {
            "k1": self.k1,
            "k2": self.k2,
            "delta": format_rational(self.delta),
            "m": format_rational(self.m_dd),
            "m_prime": self.m_prime,
            "m_dprime": self.m_dprime,
            "n_required": str(self.n_required),
            "retries": self.retries,
            "seed": self.seed,
        }


def derive_params(k1: int, k2: int, retries: int = 64, seed: int = 0) -> ExtractionParams:
    """Parameter schedule for :func:`extract_rainbow` (see :func:`bounds.schedule`)."""
    s = bounds.schedule(k1, k2)
    return ExtractionParams(
        k1=k1,
        k2=k2,
        delta=s.delta,
        m_dd=s.m_dd,
        m_prime=s.m_prime,
        m_dprime=s.m_dprime,
        n_required=s.n_required,
        retries=retries,
        seed=seed,
    )


@dataclass(frozen=True)
class Stage:
    vertex: int
    color: int
    size: int  # |N_i| after the stage


@dataclass
class PhaseTrace:
    n: int
    stages: list = field(default_factory=list)
    terminal: str = ""
    m0: int = 0

    def to_dict(self, keys=None) -> dict:
        return {
            "n": self.n,
            "stages": [
                {
                    "vertex": s.vertex,
                    "color": _key_str(keys[s.color]) if keys is not None else s.color,
                    "size": s.size,
                }
                for s in self.stages
            ],
            "terminal": self.terminal,
            "m0": self.m0,
        }


def _phase1_threshold(delta: Fraction, size: int) -> Fraction:
    return max(delta * size, Fraction(PHASE1_MIN_DEGREE))


def phase1(C: PairColoring, params: ExtractionParams, vertices=None):
    """Run the degree-peeling phase.

    Returns ``(order, N, trace)``.  ``order`` is a whomog ordering of length
    ``k1`` when ``k1 - 3`` stages succeed (phase 2), else ``None`` and ``N``
    is the surviving vertex array in which every color degree is below the
    threshold (phase 3).
    """
    N = _as_subset(vertices, C.n)
    trace = PhaseTrace(n=len(N))
    chosen = []
    while len(chosen) < params.k1 - 3:
        if len(N) < 2:
            break
        block = C.ids[np.ix_(N, N)]
        m = len(N)
        codes = np.repeat(np.arange(m), m) * C.num_colors + block.ravel()
        codes = codes[block.ravel() >= 0]
        uniq, counts = np.unique(codes, return_counts=True)
        best = int(counts.max())
        if best < _phase1_threshold(params.delta, m):
            break
        h = int(np.flatnonzero(counts == best)[0])
        pos, color = divmod(int(uniq[h]), C.num_colors)
        x = int(N[pos])
        N = N[C.ids[x, N] == color]
        chosen.append(x)
        trace.stages.append(Stage(vertex=x, color=color, size=len(N)))
    if len(chosen) == params.k1 - 3:
        trace.terminal = "phase2"
        trace.m0 = len(N)
        if len(N) < 3:
            raise RuntimeError(f"phase 2 reached with only {len(N)} candidates")
        return chosen + [int(v) for v in N[:3]], N, trace
    trace.terminal = "phase3"
    trace.m0 = len(N)
    return None, N, trace


@dataclass
class SampleResult:
    subset: list
    bad: int
    threshold: Fraction
    accepted: bool
    draws: int
    b_total: int


def sample_low_bad_subset(C: PairColoring, N, m_prime: int, seed=0, retries: int = 64) -> SampleResult:
    """Draw uniform ``m'``-subsets of ``N`` until one has few bad triples.

    A sample is accepted when its bad-triple count is at most
    ``2 b (m'/|N|)**3``, ``b`` being the count in ``N``; by Markov's inequality
    each draw succeeds with probability at least 1/2.  After ``retries``
    failed draws the best sample seen is returned with ``accepted=False``.
    ``seed`` may be an int, a ``SeedSequence`` or a numpy ``Generator``.
    """
    N = _as_subset(N, C.n)
    m = len(N)
    if m < m_prime:
        raise ValueError(f"|N| = {m} is smaller than m' = {m_prime}")
    b = count_bad_triples(C, N)
    threshold = 2 * b * Fraction(m_prime, m) ** 3
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    best = None
    for draw in range(1, max(retries, 1) + 1):
        pick = np.sort(rng.choice(N, size=m_prime, replace=False))
        bad = count_bad_triples(C, pick)
        if best is None or bad < best[1]:
            best = (pick, bad)
        if bad <= threshold:
            return SampleResult(pick.tolist(), bad, threshold, True, draw, b)
    return SampleResult(best[0].tolist(), best[1], threshold, False, max(retries, 1), b)


def remove_bad_triples(C: PairColoring, subset) -> list:
    """Delete vertices until no bad triple remains.

    Always deletes the vertex lying in the most remaining bad triples
    (smallest label on ties), so at most one vertex goes per bad triple.
    """
    sub = _as_subset(subset, C.n)
    triples = list(_iter_bad_triples(C, sub)) if len(sub) >= 3 else []
    alive = set(sub.tolist())
    containing = {}
    for t in triples:
        for v in t:
            containing.setdefault(v, set()).add(t)
    live = set(triples)
    while live:
        v = min(containing, key=lambda u: (-len(containing[u]), u))
        for t in containing.pop(v):
            live.discard(t)
            for u in t:
                if u != v and u in containing:
                    containing[u].discard(t)
                    if not containing[u]:
                        del containing[u]
        alive.discard(v)
    return sorted(alive)


def greedy_max_rainbow_pairs(C: PairColoring, subset=None, start: Sequence[int] = ()) -> list:
    """Maximal rainbow subset built by an ascending scan.

    ``start`` must itself be rainbow; it is kept and extended.  A vertex
    rejected once stays rejectable because the set only grows, so a single
    pass yields a maximal set.
    """
    sub = _as_subset(subset, C.n)
    chosen = [int(v) for v in start]
    used = set()
    for a, b in combinations(chosen, 2):
        used.add(int(C.ids[a, b]))
    members = set(chosen)
    for v in sub.tolist():
        if v in members:
            continue
        cols = C.ids[v, chosen].tolist() if chosen else []
        new = set(cols)
        if len(new) == len(cols) and not (new & used):
            chosen.append(v)
            members.add(v)
            used |= new
    return sorted(chosen)


def greedy_max_rainbow_triples(C3: TripleColoring, subset=None, start: Sequence[int] = ()) -> list:
    """Ascending greedy keeping every induced triple color distinct; maximal on exit."""
    sub = _as_subset(subset, C3.n)
    chosen = [int(v) for v in start]
    used = {int(C3.ids[a, b, c]) for a, b, c in combinations(chosen, 3)}
    members = set(chosen)
    for v in sub.tolist():
        if v in members:
            continue
        if len(chosen) >= 2:
            pa, pb = np.array(list(combinations(chosen, 2))).T
            cols = C3.ids[v, pa, pb].tolist()
        else:
            cols = []
        new = set(cols)
        if len(new) == len(cols) and not (new & used):
            chosen.append(v)
            members.add(v)
            used |= new
    return sorted(chosen)


@dataclass
class ExtractionResult:
    kind: str  # "whomog" or "rainbow"
    witness: object  # WhomogCertificate or sorted vertex list
    trace: PhaseTrace
    guaranteed: bool
    params: Optional[ExtractionParams]
    sample: Optional[SampleResult] = None
    core: list = field(default_factory=list)  # rainbow set before extension
    certificate: list = field(default_factory=list)
    col_prime_histogram: Optional[dict] = None
    notes: list = field(default_factory=list)
    seed: object = 0

    @property
    def size(self) -> int:
        if self.kind == "whomog":
            return len(self.witness.order)
        return len(self.witness)

    def witness_indices(self) -> list:
        return list(self.witness.order) if self.kind == "whomog" else list(self.witness)

    def to_dict(self, keys=None) -> dict:
        out = {
            "params": self.params.to_dict() if self.params else None,
            "trace": self.trace.to_dict(keys) if self.trace else None,
            "kind": self.kind,
            "witness": self.witness_indices(),
            "certificate": [format_rational(c) for c in self.certificate],
            "guaranteed": self.guaranteed,
            "seed": self.seed if isinstance(self.seed, int) else str(self.seed),
            "notes": list(self.notes),
        }
        if self.kind == "whomog":
            out["whomog"] = self.witness.to_dict()
        if self.sample is not None:
            out["sample"] = {
                "size": len(self.sample.subset),
                "bad": self.sample.bad,
                "threshold": format_rational(self.sample.threshold),
                "accepted": self.sample.accepted,
                "draws": self.sample.draws,
                "b_total": self.sample.b_total,
            }
        if self.col_prime_histogram is not None:
            out["col_prime_histogram"] = {str(k): v for k, v in self.col_prime_histogram.items()}
        return out


def extract_rainbow(
    C: PairColoring,
    k1: int,
    k2: int,
    seed=0,
    retries: int = 64,
    extend: bool = True,
) -> ExtractionResult:
    """Find a whomog set of size ``k1`` or a rainbow set (aiming for ``k2``).

    With ``extend=True`` the rainbow set from phase 3 is finally extended
    greedily over all ``n`` vertices; it stays rainbow and can only grow.
    The witness is re-verified before returning.
    """
    params = derive_params(k1, k2, retries=retries, seed=seed if isinstance(seed, int) else 0)
    seed_kw = {"seed": seed}
    guaranteed = C.n >= params.n_required
    order, N, trace = phase1(C, params)
    if order is not None:
        cert = is_whomog_ordered(C, order)
        if cert is None:
            raise InvariantViolation("phase 2 produced a non-whomog order", {"order": order})
        return ExtractionResult("whomog", cert, trace, guaranteed, params, **seed_kw)

    notes = []
    sample = None
    if len(N) >= params.m_prime:
        sample = sample_low_bad_subset(C, N, params.m_prime, np.random.default_rng(seed), retries)
        pool = sample.subset
        if not sample.accepted:
            notes.append("no sample met the acceptance threshold; using the best draw")
    else:
        pool = N.tolist()
        notes.append(f"|N| = {len(N)} < m' = {params.m_prime}; using all of N")
    clean = remove_bad_triples(C, pool)
    core = greedy_max_rainbow_pairs(C, clean)
    witness = greedy_max_rainbow_pairs(C, None, start=core) if extend else core
    if not is_rainbow(C, witness):
        raise InvariantViolation("extracted set is not rainbow", {"witness": witness})
    if len(witness) < k2:
        notes.append(f"rainbow size {len(witness)} is below the target {k2}")
    return ExtractionResult(
        "rainbow", witness, trace, guaranteed, params, sample, core, notes=notes, **seed_kw
    )


def _distance_certificate(ps: PointSet, subset) -> list:
    values = sorted(sq_distance(ps[i], ps[j]) for i, j in combinations(subset, 2))
    if any(a >= b for a, b in zip(values, values[1:])):
        raise InvariantViolation("squared distances are not distinct", {"witness": list(subset)})
    return values


def _area_certificate(ps: PointSet, subset) -> list:
    values = sorted(sq_area(ps[i], ps[j], ps[k]) for i, j, k in combinations(subset, 3))
    if any(a >= b for a, b in zip(values, values[1:])):
        raise InvariantViolation("squared areas are not distinct", {"witness": list(subset)})
    return values


def distinct_distance_subset(
    ps: PointSet,
    k2: Optional[int] = None,
    seed=0,
    retries: int = 64,
    extend: bool = True,
) -> ExtractionResult:
    """Subset of ``ps`` with all pairwise distances distinct.

    Runs :func:`extract_rainbow` on the distance coloring with
    ``k1 = dim + 3``.  No whomog set of that size exists for points in
    ``R^dim``, so a whomog outcome raises :class:`InvariantViolation` with a
    dump of the input.  Without ``k2`` the target is the largest value the
    schedule certifies for ``n`` points (at least 2).
    """
    if not isinstance(ps, PointSet):
        ps = PointSet(tuple(ps))
    n, d = len(ps), ps.dim
    notes = []
    if k2 is None:
        inv = bounds.invert_wer(d, n)
        k2 = max(inv.k2, 2)
        if inv.below_threshold:
            notes.append("n is below the schedule threshold for k2 = 2")
    if n < 2:
        return ExtractionResult(
            "rainbow", list(range(n)), PhaseTrace(n=n, terminal="phase3", m0=n), False,
            derive_params(d + 3, k2, retries), core=list(range(n)), notes=notes, seed=seed,
        )
    C = distance_coloring(ps)
    result = extract_rainbow(C, d + 3, k2, seed=seed, retries=retries, extend=extend)
    if result.kind == "whomog":
        raise InvariantViolation(
            f"whomog set of size {d + 3} in a distance coloring in R^{d}",
            {"points": ps.to_dict(), "order": list(result.witness.order), "seed": str(seed)},
        )
    result.certificate = _distance_certificate(ps, result.witness)
    result.notes = notes + result.notes
    return result


def distinct_area_subset(ps: PointSet, seed=0) -> ExtractionResult:
    """Subset of ``ps`` (in the plane or space) with all triangle areas distinct.

    A greedy maximal rainbow set of the area coloring, certified by its
    strictly increasing list of squared areas.  The label histogram of the
    derived 4-ary coloring is attached to the result.
    """
    if not isinstance(ps, PointSet):
        ps = PointSet(tuple(ps))
    if ps.dim not in (2, 3):
        raise GeometryError("area mode supports dimensions 2 and 3 only")
    n = len(ps)
    trace = PhaseTrace(n=n, terminal="greedy", m0=n)
    if n < 3:
        witness = list(range(n))
        return ExtractionResult("rainbow", witness, trace, False, None, core=witness, seed=seed)
    C3 = area_coloring(ps)
    witness = greedy_max_rainbow_triples(C3)
    if not is_rainbow(C3, witness):
        raise InvariantViolation("extracted set is not rainbow", {"witness": witness})
    result = ExtractionResult("rainbow", witness, trace, False, None, core=list(witness), seed=seed)
    result.certificate = _area_certificate(ps, witness)
    result.col_prime_histogram = col_prime_histogram(C3) if n >= 4 else {}
    return result
