"""
Command-line interface.

    canonical-ramsey generate --generator grid --n 3 > grid.json
    canonical-ramsey find --input grid.json --mode distance
    canonical-ramsey verify --input grid.json --witness report.json
    canonical-ramsey oracle --input grid.json
    canonical-ramsey bounds --k1 5 --k2 3
    canonical-ramsey experiment --generator random-rational --sizes 8,10,12 --trials 20

Exit codes: 0 ok, 2 verification failure, 3 precondition violation,
4 budget exceeded.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from datetime import datetime, timezone
from fractions import Fraction

import numpy as np

from . import __version__, bounds
from .canonical import BudgetExceeded
from .colorings import area_coloring, coloring_from_dump, count_bad_triples, distance_coloring
from .extraction import InvariantViolation, distinct_area_subset, distinct_distance_subset
from .generators import GENERATORS, grid, random_rational, sidon_line, sphere
from .geometry import GeometryError, PointSet, check_general_position, format_rational
from .oracle import DEFAULT_MAX_NODES, distinct_distance_count, max_rainbow_exact, whomog_exists_pairs, whomog_exists_triples
from .verify import verify_witness

EXIT_OK = 0
EXIT_VERIFY = 2
EXIT_PRECONDITION = 3
EXIT_BUDGET = 4

U64 = 2 ** 64


class CliError(Exception):
    def __init__(self, message: str, code: int, detail=None):
        super().__init__(message)
        self.code = code
        self.detail = detail or {}


@dataclass(frozen=True)
class RunConfig:
    mode: str
    dim: int
    k2: int | None
    seed: int
    retries: int
    budget: int
    fmt: str

    def __post_init__(self):
        if self.mode not in ("distance", "area"):
            raise CliError(f"unknown mode {self.mode!r}", EXIT_PRECONDITION)
        if self.mode == "area" and self.dim not in (2, 3):
            raise CliError("area mode needs points in R^2 or R^3", EXIT_PRECONDITION)


@dataclass(frozen=True)
class ExperimentPlan:
    generator: str
    sizes: tuple
    trials: int
    seed: int
    mode: str = "distance"
    dim: int = 2

    def expand(self) -> list:
        """One ``(size, trial, seed)`` per trial; seeds come from a spawned SeedSequence."""
        total = len(self.sizes) * self.trials
        children = np.random.SeedSequence(self.seed).spawn(total)
        out = []
        for idx, (size, trial) in enumerate((s, t) for s in self.sizes for t in range(self.trials)):
            out.append((size, trial, int(children[idx].generate_state(1, np.uint64)[0])))
        return out


# -- report plumbing ---------------------------------------------------------

def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def sha256(text: str) -> str:
    return hashlib.sha256(text.encode()).hexdigest()


def input_hash(ps: PointSet) -> str:
    return sha256(canonical_json(ps.to_dict()))


def finish_report(report: dict) -> dict:
    """Attach ``report_hash`` (over everything but the timestamp) and a timestamp."""
    body = {k: v for k, v in report.items() if k not in ("timestamp", "report_hash")}
    out = dict(body)
    out["report_hash"] = sha256(canonical_json(body))
    out["timestamp"] = datetime.now(timezone.utc).isoformat()
    return out


def _emit(obj, fmt: str, text: str, out=None):
    out = out or sys.stdout
    if fmt == "json":
        out.write(json.dumps(obj, sort_keys=True, indent=2) + "\n")
    else:
        out.write(text.rstrip("\n") + "\n")


def _load_points(path: str) -> PointSet:
    try:
        with open(path) if path != "-" else sys.stdin as fh:
            return PointSet.from_json(fh.read())
    except OSError as exc:
        raise CliError(str(exc), EXIT_PRECONDITION)
    except GeometryError as exc:
        raise CliError(f"cannot parse point set: {exc}", EXIT_PRECONDITION)


def _write(path: str | None, text: str):
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


# -- generate ----------------------------------------------------------------

def make_points(generator: str, n: int, dim: int, seed: int, area: bool = False) -> PointSet:
    if generator == "grid":
        return grid(n, dim)
    if generator == "sidon-line":
        if area:
            raise CliError("area mode needs dim 2 or 3; sidon-line is 1-dimensional", EXIT_PRECONDITION)
        return sidon_line(n)
    if generator == "random-rational":
        if area and dim not in (2, 3):
            raise CliError("area mode needs dim 2 or 3", EXIT_PRECONDITION)
        return random_rational(n, dim, seed=seed, general_position=area)
    if generator == "sphere":
        # points on S^dim live in R^(dim+1) and no three are collinear
        if area and dim + 1 not in (2, 3):
            raise CliError("area mode needs the ambient space to be R^2 or R^3", EXIT_PRECONDITION)
        return sphere(n, dim, seed=seed)
    raise CliError(f"unknown generator {generator!r}", EXIT_PRECONDITION)


def cmd_generate(args) -> int:
    ps = make_points(args.generator, args.n, args.dim, args.seed, area=args.mode == "area")
    _write(args.out, json.dumps(ps.to_dict(), indent=2 if args.format == "json" else None) + "\n")
    return EXIT_OK


# -- find --------------------------------------------------------------------

def run_find(ps: PointSet, config: RunConfig) -> dict:
    if config.mode == "area":
        bad = check_general_position(ps.points, 3)
        if bad is not None:
            raise CliError(f"collinear triple {bad}", EXIT_PRECONDITION, {"witness": list(bad)})
        result = distinct_area_subset(ps, seed=config.seed)
    else:
        result = distinct_distance_subset(ps, k2=config.k2, seed=config.seed, retries=config.retries)
    verdict = verify_witness(ps, result.witness_indices(), config.mode)
    report = {
        "tool": "canonical-ramsey",
        "version": __version__,
        "command": "find",
        "config": asdict(config),
        "seed": config.seed,
        "input_hash": input_hash(ps),
        "result": result.to_dict(),
        "verification": verdict.to_dict(),
    }
    return finish_report(report)


def cmd_find(args) -> int:
    ps = _load_points(args.input)
    config = RunConfig(args.mode, ps.dim, args.k2, args.seed, args.retries, args.budget, args.format)
    try:
        report = run_find(ps, config)
    except GeometryError as exc:
        raise CliError(str(exc), EXIT_PRECONDITION)
    except InvariantViolation as exc:
        raise CliError(str(exc), EXIT_VERIFY, exc.dump)
    res = report["result"]
    text = (
        f"mode {config.mode}, n = {len(ps)}, dim = {ps.dim}\n"
        f"{res['kind']} subset of size {len(res['witness'])}: {res['witness']}\n"
        f"certificate: {', '.join(res['certificate'])}\n"
        f"verification: {report['verification']['status']}\n"
        f"report hash: {report['report_hash']}"
    )
    _write(args.out, json.dumps(report, sort_keys=True, indent=2) + "\n" if args.format == "json" else text + "\n")
    return EXIT_OK if report["verification"]["status"] == "ok" else EXIT_VERIFY


# -- verify ------------------------------------------------------------------

def _load_witness(arg: str, mode: str | None):
    """A witness is a comma list, a JSON list, or a find report."""
    text = arg
    try:
        with open(arg) as fh:
            text = fh.read()
    except OSError:
        pass
    try:
        data = json.loads(text)
    except json.JSONDecodeError:
        try:
            return [int(x) for x in text.split(",") if x.strip()], mode or "distance"
        except ValueError:
            raise CliError(f"cannot parse witness {arg!r}", EXIT_PRECONDITION)
    if isinstance(data, dict):
        res = data.get("result", data)
        if mode is None:
            mode = "whomog" if res.get("kind") == "whomog" else data.get("config", {}).get("mode", "distance")
        return res["witness"], mode
    return data, mode or "distance"


def cmd_verify(args) -> int:
    ps = _load_points(args.input)
    witness, mode = _load_witness(args.witness, args.mode)
    try:
        verdict = verify_witness(ps, witness, mode)
    except IndexError as exc:
        raise CliError(str(exc), EXIT_PRECONDITION)
    except GeometryError as exc:
        raise CliError(str(exc), EXIT_PRECONDITION)
    report = finish_report({
        "command": "verify",
        "input_hash": input_hash(ps),
        "seed": args.seed,
        "config": {"mode": mode},
        "witness": [int(i) for i in witness],
        "verification": verdict.to_dict(),
    })
    text = f"{verdict.kind}: {'ok' if verdict.ok else 'FAIL'}"
    if not verdict.ok:
        text += f" ({verdict.message}: {json.dumps(verdict.violation)})"
    _emit(report, args.format, text)
    return EXIT_OK if verdict.ok else EXIT_VERIFY


# -- oracle ------------------------------------------------------------------

def cmd_oracle(args) -> int:
    budget = args.budget or DEFAULT_MAX_NODES
    if args.coloring:
        with open(args.coloring) as fh:
            C = coloring_from_dump(json.load(fh))
        source = {"coloring_hash": sha256(canonical_json(C.to_dump()))}
    else:
        ps = _load_points(args.input)
        try:
            C = area_coloring(ps) if args.mode == "area" else distance_coloring(ps)
        except GeometryError as exc:
            raise CliError(str(exc), EXIT_PRECONDITION)
        source = {"input_hash": input_hash(ps)}
    max_n = args.max_n if args.max_n else None
    res = max_rainbow_exact(C, max_n=max_n, max_nodes=budget)
    out = {"command": "oracle", "seed": args.seed, "config": {"mode": args.mode, "budget": budget, "max_n": max_n},
           **source, "result": res.to_dict()}
    if args.whomog:
        try:
            rec = (whomog_exists_pairs if C.arity == 2 else whomog_exists_triples)(C, args.whomog, cap=args.search_cap)
        except BudgetExceeded as exc:
            raise CliError(str(exc), EXIT_BUDGET)
        out["whomog"] = {"L": args.whomog, "witness": rec.witness.to_dict() if rec.witness else None,
                         "nominal": rec.nominal, "explored": rec.explored}
    report = finish_report(out)
    text = f"max rainbow: {res.optimum} {'(exact)' if res.exact else '(inexact, budget hit)'} witness {res.witness}"
    if args.whomog:
        text += f"\nwhomog L={args.whomog}: {out['whomog']['witness'] or 'none'}"
    _emit(report, args.format, text)
    return EXIT_OK if res.exact else EXIT_BUDGET


# -- bounds ------------------------------------------------------------------

def bounds_report(args) -> dict:
    out = {}
    lines = []
    if args.k1 is not None and args.k2 is not None:
        s = bounds.schedule(args.k1, args.k2)
        out["schedule"] = {
            "k1": args.k1, "k2": args.k2, "m_dprime": s.m_dprime, "m_prime": s.m_prime,
            "delta": format_rational(s.delta), "m": format_rational(s.m_dd), "n_required": str(s.n_required),
        }
        lines += [
            f"m'' = ceil(k2^3/2) = {s.m_dprime}",
            f"m' = ceil(3m''/2) = {s.m_prime}",
            f"delta = (m'-m'')/m'^3 = {format_rational(s.delta)}",
            f"n_required = ceil(3/delta^(k1-3)) = {s.n_required}",
        ]
        lo, hi = bounds.wer_upper_bracket(args.k1, args.k2, Fraction(args.C))
        out["wer_upper"] = {"C": str(args.C), "lower": format_rational(lo), "upper": format_rational(hi)}
        lines.append(f"(C k2)^(6k1-18) / (ln k2)^(2k1-6) in [{float(lo):.6g}, {float(hi):.6g}]  (C = {args.C})")
    if args.d is not None and args.n is not None:
        inv = bounds.invert_wer(args.d, args.n)
        out["invert"] = {"d": args.d, "n": args.n, "k2": inv.k2, "below_threshold": inv.below_threshold}
        lines.append(f"largest certified k2 for n = {args.n} in R^{args.d}: {inv.k2}"
                     + (" (below threshold)" if inv.below_threshold else ""))
    if args.e is not None:
        k = args.k if args.k is not None else "k"
        w = bounds.wer3_bound(args.e, k)
        out["wer3"] = {"e": args.e, "exponent": bounds.wer3_exponent(args.e), "bound": str(w)}
        lines.append(f"s(e) = 6e+6 = {6 * args.e + 6}; exponent 5s(e)-24 = {bounds.wer3_exponent(args.e)}")
        lines.append(f"WER3 <= {w}")
    if args.ks:
        ks = tuple(int(x) for x in args.ks.split(","))
        r3 = bounds.r3_bound(ks)
        out["r3"] = {"ks": list(ks), "z_sum": str(bounds.z_sum_bound(ks)), "bound": str(r3)}
        lines.append(f"sum |sigma| over Z <= {bounds.z_sum_bound(ks)}")
        lines.append(f"R3({args.ks}) <= {r3}")
        r4 = bounds.r4_bound(ks)
        out["r4"] = {"bound": str(r4), "via_steps": str(bounds.r4_bound_via_steps(ks))}
        lines.append(f"R4({args.ks}) <= {r4}")
    if not out:
        for e in (6, 13):
            out.setdefault("wer3", []).append({"e": e, "exponent": bounds.wer3_exponent(e), "bound": str(bounds.wer3_bound(e, "k"))})
            lines.append(f"e = {e}: WER3 <= {bounds.wer3_bound(e, 'k')}")
    return {"values": out, "text": "\n".join(lines)}


def cmd_bounds(args) -> int:
    try:
        rep = bounds_report(args)
    except ValueError as exc:
        raise CliError(str(exc), EXIT_PRECONDITION)
    report = finish_report({"command": "bounds", "seed": args.seed, "config": {
        k: getattr(args, k) for k in ("k1", "k2", "C", "d", "n", "e", "k", "ks")}, "values": rep["values"]})
    _emit(report, args.format, rep["text"])
    return EXIT_OK


# -- experiment --------------------------------------------------------------

CSV_FIELDS = ("generator", "n", "points", "trial", "seed", "achieved", "oracle_optimum", "oracle_exact",
              "bad_triples", "distinct_distances", "verified")


def run_trial(plan: ExperimentPlan, size: int, trial: int, seed: int, budget: int, oracle_max_n: int) -> dict:
    ps = make_points(plan.generator, size, plan.dim, seed, area=plan.mode == "area")
    row = {"generator": plan.generator, "n": size, "points": len(ps), "trial": trial, "seed": seed}
    if plan.mode == "area":
        res = distinct_area_subset(ps, seed=seed)
        C = area_coloring(ps) if len(ps) <= oracle_max_n else None
        row["bad_triples"] = ""
    else:
        res = distinct_distance_subset(ps, seed=seed)
        C = distance_coloring(ps)
        row["bad_triples"] = count_bad_triples(C)
        if len(ps) > oracle_max_n:
            C = None
    row["achieved"] = res.size
    if C is not None:
        o = max_rainbow_exact(C, max_n=oracle_max_n, max_nodes=budget)
        row["oracle_optimum"] = o.optimum if o.exact else ""
        row["oracle_exact"] = o.exact
    else:
        row["oracle_optimum"], row["oracle_exact"] = "", False
    row["distinct_distances"] = distinct_distance_count(ps)
    row["verified"] = verify_witness(ps, res.witness_indices(), plan.mode).ok
    return row


def _trial_job(job):
    return run_trial(*job)


def aggregate(rows) -> list:
    out = []
    for size in dict.fromkeys(r["n"] for r in rows):
        group = [r for r in rows if r["n"] == size]
        ach = [r["achieved"] for r in group]
        opt = [r["oracle_optimum"] for r in group if r["oracle_optimum"] != ""]
        out.append({
            "n": size,
            "trials": len(group),
            "achieved_mean": format_rational(Fraction(sum(ach), len(ach))),
            "achieved_min": min(ach),
            "oracle_mean": format_rational(Fraction(sum(opt), len(opt))) if opt else "",
            "oracle_min": min(opt) if opt else "",
            "all_verified": all(r["verified"] for r in group),
        })
    return out


def run_experiment(plan: ExperimentPlan, budget: int = DEFAULT_MAX_NODES, oracle_max_n: int = 12, jobs: int = 1) -> dict:
    jobs_list = [(plan, size, trial, seed, budget, oracle_max_n) for size, trial, seed in plan.expand()]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_trial_job, jobs_list))  # map keeps trial order
    else:
        rows = [_trial_job(j) for j in jobs_list]
    cfg = asdict(plan)
    cfg["sizes"] = list(plan.sizes)
    cfg.update(budget=budget, oracle_max_n=oracle_max_n)
    return finish_report({
        "command": "experiment",
        "seed": plan.seed,
        "config": cfg,
        "input_hash": sha256(canonical_json(cfg)),
        "rows": rows,
        "aggregates": aggregate(rows),
        "verification": {"status": "ok" if all(r["verified"] for r in rows) else "fail"},
    })


def rows_to_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=CSV_FIELDS, lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    return buf.getvalue()


def _parse_sizes(text: str) -> tuple:
    sizes = []
    for part in text.split(","):
        if ".." in part:
            a, b = part.split("..")
            sizes.extend(range(int(a), int(b) + 1))
        elif part.strip():
            sizes.append(int(part))
    return tuple(sizes)


def cmd_experiment(args) -> int:
    plan = ExperimentPlan(args.generator, _parse_sizes(args.sizes), args.trials, args.seed, args.mode, args.dim)
    try:
        report = run_experiment(plan, args.budget or DEFAULT_MAX_NODES, args.oracle_max_n, args.jobs)
    except GeometryError as exc:
        raise CliError(str(exc), EXIT_PRECONDITION)
    table = rows_to_csv(report["rows"])
    if args.csv:
        _write(args.csv, table)
    if args.format == "json":
        _emit(report, "json", "")
    else:
        sys.stdout.write(table)
        for agg in report["aggregates"]:
            sys.stdout.write("# " + " ".join(f"{k}={v}" for k, v in agg.items()) + "\n")
        sys.stdout.write(f"# report_hash={report['report_hash']}\n")
    return EXIT_OK if report["verification"]["status"] == "ok" else EXIT_VERIFY


# -- argument parsing --------------------------------------------------------

def _u64(text: str) -> int:
    v = int(text, 0)
    if not 0 <= v < U64:
        raise argparse.ArgumentTypeError("seed must fit in 64 unsigned bits")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=_u64, default=0)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--budget", type=int, default=0, help="node budget for exhaustive searches (0 = default)")

    p = argparse.ArgumentParser(prog="canonical-ramsey", description=__doc__.split("\n\n")[0].strip(),
                                parents=[common])
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", parents=[common], help="write a point-set JSON file")
    g.add_argument("--generator", choices=GENERATORS, required=True)
    g.add_argument("--n", type=int, required=True, help="number of points (grid: side length)")
    g.add_argument("--dim", type=int, default=2, help="ambient dimension (sphere: sphere dimension)")
    g.add_argument("--mode", choices=("distance", "area"), default="distance")
    g.add_argument("--out")
    g.set_defaults(func=cmd_generate)

    f = sub.add_parser("find", parents=[common], help="extract a distinct-distance or distinct-area subset")
    f.add_argument("--input", required=True)
    f.add_argument("--mode", choices=("distance", "area"), default="distance")
    f.add_argument("--k2", type=int)
    f.add_argument("--retries", type=int, default=64)
    f.add_argument("--out")
    f.set_defaults(func=cmd_find)

    v = sub.add_parser("verify", parents=[common], help="re-check a witness against the coordinates")
    v.add_argument("--input", required=True)
    v.add_argument("--witness", required=True, help="report file, JSON list or comma list of indices")
    v.add_argument("--mode", choices=("distance", "area", "whomog"))
    v.set_defaults(func=cmd_verify)

    o = sub.add_parser("oracle", parents=[common], help="exact maximum rainbow set and whomog search")
    src = o.add_mutually_exclusive_group(required=True)
    src.add_argument("--input")
    src.add_argument("--coloring", help="coloring dump JSON")
    o.add_argument("--mode", choices=("distance", "area"), default="distance")
    o.add_argument("--max-n", type=int, default=0)
    o.add_argument("--whomog", type=int, default=0, help="also search for a whomog set of this size")
    o.add_argument("--search-cap", type=int, default=10 ** 9)
    o.set_defaults(func=cmd_oracle)

    b = sub.add_parser("bounds", parents=[common], help="evaluate the quantitative bounds")
    b.add_argument("--k1", type=int)
    b.add_argument("--k2", type=int)
    b.add_argument("--C", default="1")
    b.add_argument("--d", type=int)
    b.add_argument("--n", type=int)
    b.add_argument("--e", type=int)
    b.add_argument("--k", type=int)
    b.add_argument("--ks", help="comma list of Ramsey arguments")
    b.set_defaults(func=cmd_bounds)

    x = sub.add_parser("experiment", parents=[common], help="batch trials over a generator")
    x.add_argument("--generator", choices=GENERATORS, required=True)
    x.add_argument("--sizes", required=True, help="e.g. 8,10,12 or 2..8")
    x.add_argument("--trials", type=int, default=1)
    x.add_argument("--mode", choices=("distance", "area"), default="distance")
    x.add_argument("--dim", type=int, default=2)
    x.add_argument("--oracle-max-n", type=int, default=12)
    x.add_argument("--jobs", type=int, default=1)
    x.add_argument("--csv")
    x.set_defaults(func=cmd_experiment)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        sys.stderr.write(f"error: {exc}\n")
        if exc.detail:
            sys.stderr.write(json.dumps(exc.detail, sort_keys=True) + "\n")
        return exc.code
    except BudgetExceeded as exc:
        sys.stderr.write(f"budget exceeded: {exc}\n")
        return EXIT_BUDGET


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
