"""Command-line front end.

Every subcommand prints one JSON object on stdout (sorted keys, so identical
invocations are byte-identical) and exits 0 on success, 2 on argument
errors, and 1 on numerical-instability or verification failures. A zero-rank
gadget serializes its log-weight as null rather than JSON-hostile -Infinity.
"""

from __future__ import annotations

import argparse
import json
import sys
from math import isfinite

from . import analysis, gadgets, peeling
from .hypergraph import random_hypergraph, read_hypergraph
from .rank_oracle import (DEFAULT_CAP, DEFAULT_TOLERANCE, RankInstabilityError,
                          generic_rank_field, min_rank_float)
from ._modlin import MERSENNE61
from .rng import child_rng


def _json_float(x: float):
    return x if isfinite(x) else None


def _cmd_rank(args) -> tuple[int, dict]:
    g = read_hypergraph(args.graph)
    cap = max(DEFAULT_CAP, g.n) if args.force else DEFAULT_CAP
    payload = {
        "command": "rank",
        "graph": args.graph,
        "n": g.n,
        "m": g.m,
        "mode": args.mode,
        "seed": args.seed,
    }
    if args.mode == "field":
        trials = args.trials if args.trials is not None else 2
        result = generic_rank_field(g, trials=trials, prime=args.prime,
                                    seed=args.seed, cap=cap)
        payload.update(trials=trials, prime=args.prime)
    else:
        samples = args.trials if args.trials is not None else 3
        result = min_rank_float(g, samples=samples, tolerance=args.tolerance,
                                seed=args.seed, cap=cap)
        payload.update(trials=samples, tolerance=args.tolerance)
    payload.update(rank=result.rank, backend=result.backend,
                   confidence=_json_float(result.confidence))
    return 0, payload


def _parse_dvec(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(tok) for tok in text.split(","))
    except ValueError as exc:
        raise ValueError(f"--dvec expects comma-separated integers, got {text!r}") from exc


def _cmd_gadget(args) -> tuple[int, dict]:
    if args.family == "sunflower":
        spec = gadgets.Sunflower(args.d, args.k)
        params = {"d": args.d, "k": args.k}
    elif args.family == "nosegay3":
        spec = gadgets.Nosegay3(args.a, args.b, args.c)
        params = {"a": args.a, "b": args.b, "c": args.c}
    elif args.family == "nosegay-hang":
        spec = gadgets.NosegayHang(args.a, args.b, args.c)
        params = {"a": args.a, "b": args.b, "c": args.c}
    elif args.family == "nosegay-k":
        dvec = _parse_dvec(args.dvec)
        spec = gadgets.NosegayK(dvec, len(dvec))
        params = {"dvec": list(dvec), "k": len(dvec)}
    else:
        spec = gadgets.K2Component(args.vertices, args.edges, args.max_mult)
        params = {"vertices": args.vertices, "edges": args.edges,
                  "max_mult": args.max_mult}
    result = gadgets.gadget_rank(spec)
    return 0, {
        "command": "gadget",
        "family": args.family,
        "params": params,
        "rank": result.rank,
        "vertex_count": result.vertex_count,
        "log_weight": _json_float(result.log_weight),
    }


def _verify_cases(max_size: int):
    for k in (3, 4):
        for d in range(0, max_size + 1):
            g = gadgets.sunflower_graph(d, k)
            if g.n > DEFAULT_CAP:
                continue
            yield ("sunflower", {"d": d, "k": k},
                   gadgets.sunflower_rank(d, k).rank, g)
    for total in range(0, max_size + 1):
        for a in range(total, -1, -1):
            for b in range(total - a, -1, -1):
                c = total - a - b
                if not a >= b >= c:
                    continue
                g3 = gadgets.nosegay3_graph(a, b, c)
                if g3.n <= DEFAULT_CAP:
                    yield ("nosegay3", {"a": a, "b": b, "c": c},
                           gadgets.nosegay3_rank(a, b, c).rank, g3)
                gh = gadgets.nosegay_hang_graph(a, b, c)
                if gh.n <= DEFAULT_CAP:
                    yield ("nosegay-hang", {"a": a, "b": b, "c": c},
                           gadgets.nosegay_hang_rank(a, b, c).rank, gh)
    from itertools import combinations, combinations_with_replacement

    from .hypergraph import DisjointSets, Hypergraph

    for n in range(2, 5):
        pairs = list(combinations(range(n), 2))
        for m in range(n - 1, max_size + 1):
            for combo in combinations_with_replacement(pairs, m):
                dsu = DisjointSets(n)
                for u, v in combo:
                    dsu.union(u, v)
                if len({dsu.find(v) for v in range(n)}) != 1:
                    continue
                g = Hypergraph(n, combo)
                yield ("k2", {"n": n, "edges": [list(e) for e in combo]},
                       gadgets.k2_rank(g), g)


def _cmd_verify(args) -> tuple[int, dict]:
    cases = []
    failures = 0
    for family, params, formula_rank, graph in _verify_cases(args.max_size):
        oracle = generic_rank_field(graph, trials=2, seed=args.seed)
        equal = oracle.rank == formula_rank
        failures += not equal
        cases.append({"family": family, "params": params,
                      "formula": formula_rank, "oracle": oracle.rank,
                      "equal": equal})
    payload = {
        "command": "verify",
        "max_size": args.max_size,
        "seed": args.seed,
        "cases": cases,
        "case_count": len(cases),
        "all_equal": failures == 0,
        "failures": failures,
    }
    return (0 if failures == 0 else 1), payload


def _cmd_peel(args) -> tuple[int, dict]:
    if args.gadget == "nosegay" and args.k != 3:
        raise ValueError("the nosegay peel needs --k 3")
    m = round(args.alpha * args.n)
    # graph comes from a child stream, the peel order from the master seed
    g = random_hypergraph(args.n, m, args.k, child_rng(args.seed, 0))
    if args.gadget == "sunflower":
        trace = peeling.sunflower_peel(g, args.seed)
    else:
        trace = peeling.nosegay_peel(g, args.seed)
    bound = peeling.empirical_log_rank(trace)
    if args.trace:
        peeling.write_trace_csv(trace, args.trace)
    return 0, {
        "command": "peel",
        "algorithm": args.gadget,
        "n": args.n,
        "m": m,
        "k": args.k,
        "alpha": args.alpha,
        "seed": args.seed,
        "value": _json_float(bound.value),
        "step_count": bound.step_count,
        "anomalies": bound.anomalies,
        "trace_file": args.trace,
    }


def _report_payload(report: analysis.BoundReport) -> dict:
    return {
        "command": "bound",
        "method": report.method,
        "alpha": report.alpha,
        "k": report.k,
        "value": report.value,
        "verdict": report.verdict,
        "quad_error": report.quad_error,
        "params": report.params,
    }


def _cmd_bound(args) -> tuple[int, dict]:
    if args.method == "single-clause":
        threshold = analysis.single_clause_threshold(args.k)
        payload = {"command": "bound", "method": "single_clause", "k": args.k,
                   "threshold": threshold}
        if args.alpha is not None:
            payload["alpha"] = args.alpha
            payload["verdict"] = ("unsat-whp" if args.alpha > threshold
                                  else "inconclusive")
        return 0, payload
    if args.alpha is None:
        raise ValueError(f"bound {args.method} requires --alpha")
    if args.method == "sunflower":
        report = analysis.sunflower_bound(args.alpha, args.k, args.dmax)
    elif args.method == "nosegay":
        if args.k != 3:
            raise ValueError("the nosegay bound needs --k 3")
        report = analysis.nosegay_bound(args.alpha, args.trunc)
    else:
        report = analysis.general_k_bound(args.alpha, args.k)
    return 0, _report_payload(report)


def _cmd_threshold(args) -> tuple[int, dict]:
    method = args.method.replace("-", "_")
    root = analysis.threshold_root(method, args.k, truncation=args.trunc,
                                   d_max=args.dmax)
    return 0, {
        "command": "threshold",
        "method": method,
        "k": args.k,
        "root": root,
        "precision": 1e-4,
        "params": {"d_max": args.dmax, "truncation": args.trunc},
    }


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qksat",
        description="Generic ranks, gadget formulas, peeling simulations, and "
                    "threshold bounds for random quantum k-SAT.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("rank", help="generic rank of a hypergraph file")
    p.add_argument("--graph", required=True, help="hypergraph text file")
    p.add_argument("--mode", choices=("field", "float"), default="field")
    p.add_argument("--trials", type=int, default=None,
                   help="field trials / float samples (defaults 2 / 3)")
    p.add_argument("--tolerance", type=float, default=DEFAULT_TOLERANCE,
                   help="relative singular-value cutoff (float mode)")
    p.add_argument("--prime", type=int, default=MERSENNE61,
                   help="field modulus (field mode)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--force", action="store_true",
                   help="lift the qubit cap (memory grows as m*4^n)")
    p.set_defaults(handler=_cmd_rank)

    p = sub.add_parser("gadget", help="closed-form gadget rank")
    fam = p.add_subparsers(dest="family", required=True)
    q = fam.add_parser("sunflower")
    q.add_argument("--d", type=int, required=True)
    q.add_argument("--k", type=int, default=3)
    for name in ("nosegay3", "nosegay-hang"):
        q = fam.add_parser(name)
        q.add_argument("--a", type=int, required=True)
        q.add_argument("--b", type=int, required=True)
        q.add_argument("--c", type=int, required=True)
    q = fam.add_parser("nosegay-k")
    q.add_argument("--dvec", required=True,
                   help="comma-separated hanging counts; arity = length")
    q = fam.add_parser("k2")
    q.add_argument("--vertices", type=int, required=True)
    q.add_argument("--edges", type=int, required=True)
    q.add_argument("--max-mult", type=int, default=1)
    for q in fam.choices.values():
        q.set_defaults(handler=_cmd_gadget)

    p = sub.add_parser("verify",
                       help="check gadget formulas against the field oracle")
    p.add_argument("target", choices=("gadgets",))
    p.add_argument("--max-size", type=int, default=3,
                   help="bounds sunflower d, nosegay a+b+c, and k2 edge count")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(handler=_cmd_verify)

    p = sub.add_parser("peel", help="peel a random hypergraph, report the bound")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--gadget", choices=("sunflower", "nosegay"), required=True)
    p.add_argument("--seed", type=int, required=True,
                   help="explicit seed; runs are replayable")
    p.add_argument("--trace", default=None, help="write a per-step CSV here")
    p.set_defaults(handler=_cmd_peel)

    p = sub.add_parser("bound", help="analytic per-qubit log-rank bound")
    p.add_argument("method",
                   choices=("sunflower", "nosegay", "general-k", "single-clause"))
    p.add_argument("--alpha", type=float, default=None)
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--dmax", type=int, default=100)
    p.add_argument("--trunc", type=int, default=50)
    p.set_defaults(handler=_cmd_bound)

    p = sub.add_parser("threshold", help="root of a bound, by bisection")
    p.add_argument("method", choices=("sunflower", "nosegay", "general-k"))
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--dmax", type=int, default=None)
    p.add_argument("--trunc", type=int, default=50)
    p.set_defaults(handler=_cmd_threshold)
    return parser


def main(argv=None) -> int:
    try:
        args = _build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        code, payload = args.handler(args)
    except RankInstabilityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, TypeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(json.dumps(payload, sort_keys=True))
    return code


if __name__ == "__main__":
    sys.exit(main())
