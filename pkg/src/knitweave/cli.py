"""Command-line interface: every solver, checker, and campaign behind one
JSON-emitting tool.

Exit codes: 0 = verdict computed (whatever it is), 1 = a mathematical finding
(campaign violation or internal-consistency failure), 2 = input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

from . import campaigns, certify, coloring, solver, structure
from .errors import InputError, InternalConsistencyError, KnitweaveError
from .formats import parse_edge_list, parse_graph6, parse_graph_auto, write_edge_list, write_graph6
from .generators import gen_min_degree, gen_universal_vertex
from .graphs import Graph, mask_of, set_of


def _read_graph(args) -> Graph:
    if args.input and args.input != "-":
        with open(args.input, "r", encoding="utf-8") as fh:
            text = fh.read()
    else:
        text = sys.stdin.read()
    if args.format == "graph6":
        return parse_graph6(text)
    if args.format == "edges":
        return parse_edge_list(text)
    return parse_graph_auto(text)


def _parse_ints(text: str) -> list[int]:
    return [int(x) for x in text.replace(",", " ").split()]


def _parse_pairs(text: str) -> list[tuple[int, int]]:
    out = []
    for chunk in text.split(","):
        a, b = chunk.split("-")
        out.append((int(a), int(b)))
    return out


def _mask_arg(text: Optional[str]) -> int:
    return mask_of(_parse_ints(text)) if text else 0


def _emit(payload: dict, code: int = 0) -> int:
    json.dump({"schema": campaigns.SCHEMA, **payload}, sys.stdout, indent=2, sort_keys=True)
    sys.stdout.write("\n")
    return code


def _spec_from_args(args) -> solver.TerminalSpec:
    parts: list[tuple[int, ...]] = []
    if getattr(args, "pairs", None):
        parts.extend(tuple(p) for p in _parse_pairs(args.pairs))
    if getattr(args, "terminals", None):
        ts = _parse_ints(args.terminals)
        if getattr(args, "profile", None):
            profile = _parse_ints(args.profile)
            pos = 0
            for size in profile:
                parts.append(tuple(ts[pos:pos + size]))
                pos += size
        else:
            parts.extend((t,) for t in ts)
    return solver.TerminalSpec(tuple(parts), _mask_arg(getattr(args, "forbidden", None)))


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="knitweave")
    ap.add_argument("--input", "-i", default="-", help="graph file or - for stdin")
    ap.add_argument("--format", choices=["auto", "graph6", "edges"], default="auto")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--samples", type=int, default=100)
    ap.add_argument("--no-timestamps", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("linkage", help="disjoint paths for the given pairs")
    p.add_argument("--pairs", required=True, help="e.g. 0-1,2-3")
    p.add_argument("--forbidden")
    p.add_argument("--max-path-len", type=int)

    p = sub.add_parser("knit", help="disjoint connected subgraphs per part")
    p.add_argument("--pairs")
    p.add_argument("--terminals")
    p.add_argument("--profile")
    p.add_argument("--forbidden")

    p = sub.add_parser("profile-knitted", help="knit every partition of a set")
    p.add_argument("--terminals", required=True)
    p.add_argument("--profile", required=True)

    p = sub.add_parser("k-linked")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--mode", choices=["exhaustive", "sampled"], default="exhaustive")

    p = sub.add_parser("massed")
    p.add_argument("--set", required=True, help="terminal set, e.g. 0,1,2")
    p.add_argument("--p", type=int, required=True)

    p = sub.add_parser("minimize")
    p.add_argument("--set", required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--limit", type=int, required=True)

    p = sub.add_parser("separations")
    p.add_argument("--set", required=True)
    p.add_argument("--max-order", type=int, required=True)

    p = sub.add_parser("rigid")
    p.add_argument("--side-a", required=True)
    p.add_argument("--side-b", required=True)
    p.add_argument("--convention", default="all-size-le-2")

    sub.add_parser("chromatic")

    p = sub.add_parser("critical")
    p.add_argument("--k", type=int, required=True)

    p = sub.add_parser("dirac")
    p.add_argument("--k", type=int, required=True)

    p = sub.add_parser("certify-common")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--knitted-variant", action="store_true")

    p = sub.add_parser("certify-greedy")
    p.add_argument("--pairs", required=True)
    p.add_argument("--forbidden")
    p.add_argument("--knitted-variant", action="store_true")

    p = sub.add_parser("dense")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--set", default="")

    p = sub.add_parser("knitted1")
    p.add_argument("--p", type=int, required=True)

    p = sub.add_parser("campaign-si")
    p.add_argument("--size-range", default="10,13")

    sub.add_parser("campaign-4linked")

    p = sub.add_parser("gen")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--delta", type=int, required=True)
    p.add_argument("--universal", action="store_true")

    p = sub.add_parser("convert")
    p.add_argument("--to", choices=["graph6", "edges"], required=True)

    p = sub.add_parser("thresholds")
    p.add_argument("--k", type=int)
    p.add_argument("--t", type=int)
    return ap


def _paths_json(linkage: Optional[solver.Linkage]):
    return None if linkage is None else [list(p) for p in linkage.paths]


def cli_main(argv: Optional[list[str]] = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return _dispatch(args)
    except InternalConsistencyError as exc:
        json.dump({"error": str(exc), "kind": "internal-consistency"}, sys.stdout, indent=2)
        sys.stdout.write("\n")
        return 1
    except (InputError, KnitweaveError, OSError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


def _dispatch(args) -> int:
    cmd = args.command
    if cmd == "thresholds":
        out = {}
        if args.t is not None:
            out["mader"] = certify.mader_threshold(args.t - 1, args.t - 3)
            out["easy_connectivity"] = certify.easy_connectivity_threshold(args.t)
        if args.k is not None:
            out["connectivity"] = certify.main_theorem_table(args.k)
        return _emit(out)
    if cmd == "gen":
        if args.universal:
            g, z = gen_universal_vertex(args.n, args.delta, args.seed)
            return _emit({"graph6": write_graph6(g), "universal_vertex": z})
        g = gen_min_degree(args.n, args.delta, args.seed)
        return _emit({"graph6": write_graph6(g)})
    if cmd == "campaign-si":
        lo, hi = _parse_ints(args.size_range)
        rep = campaigns.campaign_lemma_si(
            args.samples, args.seed, (lo, hi), no_timestamps=args.no_timestamps
        )
        _emit(rep)
        return 1 if rep["violations"] else 0
    if cmd == "campaign-4linked":
        rep = campaigns.campaign_pipeline_4linked(
            args.samples, args.seed, no_timestamps=args.no_timestamps
        )
        _emit(rep)
        return 1 if rep["violations"] else 0

    g = _read_graph(args)
    if cmd == "convert":
        text = write_graph6(g) if args.to == "graph6" else write_edge_list(g)
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
        return 0
    if cmd == "linkage":
        spec = _spec_from_args(args)
        got = solver.disjoint_paths(g, spec, args.max_path_len)
        return _emit({"exists": got is not None, "paths": _paths_json(got)})
    if cmd == "knit":
        spec = _spec_from_args(args)
        got = solver.knit(g, spec)
        return _emit({
            "exists": got is not None,
            "subgraphs": None if got is None else [sorted(set_of(m)) for m in got.subgraphs],
        })
    if cmd == "profile-knitted":
        ts = mask_of(_parse_ints(args.terminals))
        ok, witness = solver.is_profile_knitted(g, ts, tuple(_parse_ints(args.profile)))
        return _emit({"knitted": ok, "violating_partition": witness and [list(p) for p in witness]})
    if cmd == "k-linked":
        ok, witness = solver.is_k_linked(
            g, args.k, mode=args.mode, samples=args.samples, seed=args.seed
        )
        return _emit({"k_linked": ok, "violating_pairs": witness and [list(p) for p in witness]})
    if cmd == "massed":
        rep = structure.is_p_massed(g, mask_of(_parse_ints(args.set)), args.p)
        return _emit({
            "massed": rep.satisfied,
            "rho": rep.rho_value,
            "threshold": str(rep.threshold),
            "condition_i": rep.condition_i,
            "condition_ii": rep.condition_ii,
            "violating_separation": rep.violating_separation and {
                "a": sorted(set_of(rep.violating_separation.a)),
                "b": sorted(set_of(rep.violating_separation.b)),
            },
        })
    if cmd == "separations":
        seps = [
            {"a": sorted(set_of(sp.a)), "b": sorted(set_of(sp.b)), "order": sp.order}
            for sp in structure.enumerate_separations(
                g, mask_of(_parse_ints(args.set)), args.max_order
            )
        ]
        return _emit({"count": len(seps), "separations": seps})
    if cmd == "minimize":
        res = structure.minimize_pair(g, mask_of(_parse_ints(args.set)), args.p, args.limit)
        return _emit({
            "graph6": write_graph6(res.graph),
            "set": sorted(set_of(res.s)),
            "trail": [list(t) for t in res.trail],
        })
    if cmd == "rigid":
        sep = structure.Separation(
            mask_of(_parse_ints(args.side_a)), mask_of(_parse_ints(args.side_b))
        )
        sep.validate(g)
        return _emit({"rigid": structure.is_rigid(g, sep, args.convention)})
    if cmd == "chromatic":
        chi, col = coloring.chromatic_number(g)
        return _emit({"chromatic_number": chi, "coloring": [c + 1 for c in col.colors]})
    if cmd == "critical":
        ok, wit = coloring.is_contraction_critical(g, args.k)
        return _emit({
            "contraction_critical": ok,
            "witness_minor": wit and {
                "branch_sets": [sorted(set_of(b)) for b in wit.branch_sets],
                "model_edges": [list(e) for e in wit.model_edges],
            },
        })
    if cmd == "dirac":
        return _emit({"violations": coloring.dirac_neighborhood_check(g, args.k)})
    if cmd == "certify-common":
        ok, pair = certify.common_neighbor_certificate(g, args.k, args.knitted_variant)
        return _emit({"certified": ok, "violating_pair": pair and list(pair)})
    if cmd == "certify-greedy":
        spec = _spec_from_args(args)
        res = certify.greedy_link(g, spec, args.knitted_variant)
        return _emit({
            "linked": res.linkage is not None,
            "paths": _paths_json(res.linkage),
            "ordering": list(res.ordering),
            "failed_pair": res.failed_pair and list(res.failed_pair),
        })
    if cmd == "dense":
        s = mask_of(_parse_ints(args.set)) if args.set else 0
        hit = certify.find_dense_neighborhood(g, s, args.p)
        if hit is None:
            return _emit({"found": False})
        v, rep = hit
        return _emit({
            "found": True,
            "vertex": v,
            "case": rep.case,
            "n": rep.n_h,
            "min_degree": rep.delta_h,
        })
    if cmd == "knitted1":
        verdict = certify.knitted1_check(g, args.p, args.samples, args.seed)
        code = 1 if verdict.status == "not-found" else 0
        _emit({
            "status": verdict.status,
            "route": verdict.route,
            "candidate": sorted(set_of(verdict.candidate)),
            "samples_run": verdict.samples_run,
        })
        return code
    raise InputError(f"unknown command {cmd!r}")


def main() -> None:
    sys.exit(cli_main())


if __name__ == "__main__":
    main()
