"""Falsification campaigns: sweep the coverage-score lemmas over sampled
configurations, and replay the dense-graph linkage pipeline end to end.

Reports are self-contained JSON-ready dicts: every instance embeds its graph
as graph6 and every claimed certificate can be re-checked by
:func:`revalidate_report`, which trusts nothing it reads.
"""

from __future__ import annotations

import json
import os
import time
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Optional

from .certify import find_dense_neighborhood, greedy_link, knitted1_check
from .errors import InputError, PreconditionError
from .formats import parse_graph6, write_graph6
from .generators import complete_minus_matching, gen_min_degree, gen_split_host
from .graphs import (
    Graph,
    bits,
    induced,
    is_connected,
    mask_of,
    max_clique,
    neighbors_closed,
    reachable,
    set_of,
)
from .solver import (
    Configuration,
    Linkage,
    build_configuration,
    disjoint_paths,
    max_vertex_disjoint_flow,
    pairs_spec,
    s_value,
)
from .structure import is_p_massed, minimize_pair, pair_is_knitted

SCHEMA = 1


def _thread_count() -> int:
    raw = os.environ.get("KNITWEAVE_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _map_instances(fn: Callable, args: list) -> list:
    threads = _thread_count()
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(fn, args))
    return [fn(a) for a in args]


def _now(no_timestamps: bool) -> Optional[float]:
    return None if no_timestamps else time.time()


def _elapsed_ms(t0: Optional[float]) -> Optional[float]:
    return None if t0 is None else round((time.time() - t0) * 1000.0, 3)


def _is_biconnected(g: Graph, domain: int) -> bool:
    if domain.bit_count() < 3 or not is_connected(g, domain):
        return False
    for v in bits(domain):
        if not is_connected(g, domain & ~(1 << v)):
            return False
    return True


# ---------------------------------------------------------------------------
# Coverage-score lemma campaign
# ---------------------------------------------------------------------------

def _config_block_facts(cfg: Configuration):
    h = cfg.host
    conn = []
    for idx in range(1, 5):
        blk = cfg.blocks[idx]
        conn.append(all(h.has_edge(a, b) for a, b in zip(blk, blk[1:])))
    return conn


def _score_checks(cfg: Configuration, j: int, form: str, a: int, b: int, a2=None, b2=None):
    """Evaluate every lemma conclusion that applies; returns violation strings."""
    h = cfg.host
    conn = _config_block_facts(cfg)
    out = []
    svals = {}
    for i in range(5):
        if i == j:
            continue
        svals[i] = s_value(cfg, a, b, i)
        blk = cfg.blocks[i]
        if i >= 1 and not conn[i - 1]:
            if svals[i] > 0:
                out.append(f"(a) disconnected block {i} has score {svals[i]} > 0")
        if i >= 1 and conn[i - 1]:
            for x in (a, b):
                hits = [pos for pos, w in enumerate(blk) if h.has_edge(x, w)]
                if any(q - pq > 2 for pq, q in zip(hits, hits[1:])):
                    out.append(f"(b) vertex {x} has spread neighbors on block {i}")
                if len(hits) > 3:
                    out.append(f"(b) vertex {x} has {len(hits)} > 3 neighbors on block {i}")
            lo, hi = -len(blk), min(len(blk), 6 - len(blk))
            if not lo <= svals[i] <= hi:
                out.append(f"(c) score {svals[i]} of block {i} outside [{lo}, {hi}]")
    return out, svals


def campaign_lemma_si(
    samples: int,
    seed: int,
    size_range: tuple[int, int] = (10, 13),
    no_timestamps: bool = False,
) -> dict:
    """Sample configurations and assert the coverage-score conclusions on
    every (a, b) draw whose preconditions hold. Violations are findings."""
    instances = []
    violations = []
    done = 0
    host_idx = 0
    import random as _random

    rng = _random.Random(seed)
    while done < samples and host_idx < 40 * (samples + 1):
        t0 = _now(no_timestamps)
        use_split = host_idx % 5 != 4
        if use_split:
            host = gen_split_host(seed * 1000 + host_idx, blob_size=rng.randint(*size_range))
            g, terminals = host.graph, host.terminals
        else:
            g = gen_min_degree(rng.randint(16, 20), 12, seed * 1000 + host_idx)
            terminals = tuple(rng.sample(range(g.n), 9))
        host_idx += 1
        cfg = build_configuration(g, terminals)
        conn = _config_block_facts(cfg)
        inst = {
            "graph6": write_graph6(g),
            "terminals": list(terminals),
            "blocks": [list(b) for b in cfg.blocks],
            "samples": [],
            "skipped": False,
        }
        djs = [i for i in range(1, 5) if not conn[i - 1]]
        if not djs:
            inst["skipped"] = True
            inst["wall_ms"] = _elapsed_ms(t0)
            instances.append(inst)
            continue
        for j in djs:
            if done >= samples:
                break
            uj, vj = cfg.pairs[j - 1]
            cover = cfg.cover_mask
            dom = g.full_mask & ~(cover & ~mask_of((uj, vj)))
            comp_a = reachable(g, 1 << uj, dom)
            comp_b = reachable(g, 1 << vj, dom)
            if comp_a & comp_b:
                continue  # the sides must be disjoint for the setup to apply
            aj = g.adj[uj] & ~cover
            bj = g.adj[vj] & ~cover
            for form, amask, bmask in (("AB", comp_a, comp_b), ("AjBj", aj, bj)):
                if done >= samples:
                    break
                pool_a = set_of(amask & ~(1 << uj))
                pool_b = set_of(bmask & ~(1 << vj))
                if not pool_a or not pool_b:
                    continue
                for _ in range(3):
                    if done >= samples:
                        break
                    a = rng.choice(pool_a)
                    b = rng.choice(pool_b)
                    bad, svals = _score_checks(cfg, j, form, a, b)
                    total = sum(svals.values()) + s_value(cfg, a, b, j)
                    # the side remainders are taken outside the block system so
                    # the decomposition behind (d) stays disjoint; in the
                    # neighborhood form the sets avoid it already
                    ta = (amask & ~neighbors_closed(g, a) & ~cover).bit_count()
                    tb = (bmask & ~neighbors_closed(g, b) & ~cover).bit_count()
                    rhs = g.degree(a) + g.degree(b) - (g.n - 2) + ta + tb
                    if total < rhs:
                        bad.append(f"(d) total score {total} < bound {rhs}")
                    e_applies = (
                        form == "AB"
                        and _is_biconnected(g, comp_a)
                        and _is_biconnected(g, comp_b)
                        and (g.full_mask & ~(comp_a | comp_b)).bit_count() <= g.min_degree() - 2
                    )
                    if e_applies:
                        for i in range(1, 5):
                            if i != j and conn[i - 1] and svals.get(i) == 3:
                                bad.append(f"(e) connected block {i} has score 3")
                    rec = {
                        "lemma": "si",
                        "j": j,
                        "form": form,
                        "a": a,
                        "b": b,
                        "scores": {str(i): v for i, v in svals.items()},
                        "violations": bad,
                    }
                    inst["samples"].append(rec)
                    done += 1
                    if bad:
                        violations.append({"instance": len(instances), **rec})
                # paired draws for the two-observer conclusions
                if len(pool_a) >= 2 and len(pool_b) >= 2 and done < samples:
                    two_ok = form == "AjBj" or (
                        _is_biconnected(g, amask) and _is_biconnected(g, bmask)
                    )
                    if two_ok:
                        a, a2 = rng.sample(pool_a, 2)
                        b, b2 = rng.sample(pool_b, 2)
                        bad = []
                        pair_scores = {}
                        for i in range(5):
                            if i == j:
                                continue
                            si = s_value(cfg, a, b, i, closed=True)
                            si2 = s_value(cfg, a2, b2, i, closed=True)
                            if si < si2:
                                si, si2 = si2, si
                                lo_pair = ((a2, b2), (a, b))
                            else:
                                lo_pair = ((a, b), (a2, b2))
                            pair_scores[str(i)] = [si, si2]
                            if si + si2 < 3:
                                continue
                            blk = cfg.blocks[i]
                            if si + si2 not in (3, 4) or len(blk) not in (2, 3):
                                bad.append(f"(a) pair scores {si}+{si2} block size {len(blk)}")
                            if len(blk) == 3:
                                mid = blk[1]
                                if any(
                                    all(g.has_edge(x, w) for w in blk)
                                    for x in bits(comp_a)
                                ) and g.adj[mid] & comp_b:
                                    bad.append(f"(b) covered middle of block {i} sees the far side")
                            if si + si2 == 4:
                                (aa, bb), (aa2, bb2) = lo_pair
                                ends = (blk[0], blk[-1])
                                if si != 2 or si2 != 2:
                                    bad.append(f"(c) pair scores {si},{si2} not both 2")
                                elif not all(
                                    g.has_edge(x, e) for x in (aa, aa2, bb, bb2) for e in ends
                                ):
                                    bad.append(f"(c) observers not complete to block {i} ends")
                        rec = {
                            "lemma": "si2",
                            "j": j,
                            "form": form,
                            "observers": [a, a2, b, b2],
                            "pair_scores": pair_scores,
                            "violations": bad,
                        }
                        inst["samples"].append(rec)
                        done += 1
                        if bad:
                            violations.append({"instance": len(instances), **rec})
        inst["wall_ms"] = _elapsed_ms(t0)
        instances.append(inst)
    return {
        "schema": SCHEMA,
        "experiment": "lemma-si",
        "seed": seed,
        "samples_requested": samples,
        "samples_run": done,
        "timestamp": _now(no_timestamps),
        "instances": instances,
        "violations": violations,
    }


# ---------------------------------------------------------------------------
# Pipeline replay campaign
# ---------------------------------------------------------------------------

def _pipeline_one(g: Graph, pairs: tuple, p: int, seed: int, no_timestamps: bool) -> dict:
    t0 = _now(no_timestamps)
    s = mask_of(x for pr in pairs for x in pr)
    stages = []
    inst = {
        "graph6": write_graph6(g),
        "pairs": [list(pr) for pr in pairs],
        "p": p,
        "stages": stages,
        "ok": False,
    }
    rep = is_p_massed(g, s, p)
    stages.append({
        "stage": "massed",
        "ok": rep.satisfied,
        "rho": rep.rho_value,
        "outside": (g.full_mask & ~s).bit_count(),
    })
    if not rep.satisfied:
        inst["wall_ms"] = _elapsed_ms(t0)
        return inst

    work = g
    work_s = s
    try:
        res = minimize_pair(g, s, p, limit=s.bit_count())
        work, work_s = res.graph, res.s
        stages.append({
            "stage": "minimize",
            "ok": True,
            "outcome": "descended",
            "trail": [list(t) for t in res.trail],
            "graph6": write_graph6(work),
        })
    except PreconditionError as exc:
        if exc.clause != "knitted":
            raise
        knitted, _ = pair_is_knitted(g, s)
        stages.append({
            "stage": "minimize",
            "ok": knitted,
            "outcome": "already-knitted",
        })

    clique = max_clique(work)
    if clique.bit_count() >= 9:
        cand = mask_of(set_of(clique)[:9])
        stages.append({
            "stage": "dense-subgraph",
            "ok": True,
            "route": "clique",
            "candidate": sorted(set_of(cand)),
        })
        stages.append({"stage": "knitted-subgraph", "ok": True, "route": "clique"})
    else:
        hit = find_dense_neighborhood(work, work_s, p)
        if hit is None:
            stages.append({"stage": "dense-subgraph", "ok": False})
            inst["wall_ms"] = _elapsed_ms(t0)
            return inst
        v, drep = hit
        sub_mask = neighbors_closed(work, v)
        stages.append({
            "stage": "dense-subgraph",
            "ok": True,
            "route": "neighborhood",
            "vertex": v,
            "case": drep.case,
        })
        sub, vmap = induced(work, sub_mask)
        verdict = knitted1_check(sub, p, samples=20, seed=seed)
        stages.append({
            "stage": "knitted-subgraph",
            "ok": verdict.status in ("certified", "sampled-pass"),
            "route": verdict.route,
            "status": verdict.status,
        })
        if verdict.status == "not-found":
            inst["wall_ms"] = _elapsed_ms(t0)
            return inst
        cand = mask_of(vmap[i] for i in bits(verdict.candidate))

    # route |s| disjoint paths from s into the certified subgraph, then link
    # the entry points inside it; s-vertices already inside enter trivially
    flow, into = max_vertex_disjoint_flow(
        g, s & ~cand, cand & ~s, g.full_mask & ~cand & ~s, collect=True
    )
    trivial = [(x,) for x in bits(s & cand)]
    into = list(into) + trivial
    ok_flow = len(into) == s.bit_count()
    stages.append({
        "stage": "paths-into-subgraph",
        "ok": ok_flow,
        "count": len(into),
        "paths": [list(pp) for pp in into],
    })
    if not ok_flow:
        inst["wall_ms"] = _elapsed_ms(t0)
        return inst
    entry = {pp[0]: pp for pp in into}
    end_pairs = []
    for pr in pairs:
        end_pairs.append((entry[pr[0]][-1], entry[pr[1]][-1]))
    sub, vmap = induced(g, cand)
    back = {v: i for i, v in enumerate(vmap)}
    local = [(back[x], back[y]) for x, y in end_pairs]
    res = greedy_link(sub, pairs_spec(local))
    method = "greedy"
    inner = res.linkage
    if inner is None:
        inner = disjoint_paths(sub, pairs_spec(local))
        method = "exact"
    stages.append({"stage": "link-inside", "ok": inner is not None, "method": method})
    if inner is None:
        inst["wall_ms"] = _elapsed_ms(t0)
        return inst
    full_paths = []
    for pr, link in zip(pairs, inner.paths):
        left = entry[pr[0]]
        right = entry[pr[1]]
        mid = [vmap[i] for i in link]
        if mid and mid[0] != left[-1]:
            mid.reverse()  # solver paths run between sorted endpoints
        path = list(left) + mid[1:] + list(reversed(right))[1:]
        full_paths.append(tuple(path))
    linkage = Linkage(tuple(full_paths))
    linkage.validate(g, pairs_spec(pairs))
    stages.append({
        "stage": "linkage",
        "ok": True,
        "paths": [list(pp) for pp in full_paths],
    })
    inst["ok"] = True
    inst["wall_ms"] = _elapsed_ms(t0)
    return inst


def campaign_pipeline_4linked(samples: int, seed: int, no_timestamps: bool = False) -> dict:
    """Replay the dense-host linkage pipeline on complete and near-complete
    hosts: mass check, minimization, dense-subgraph certificate, and an
    explicit four-pair linkage assembled through it."""
    import random as _random

    rng = _random.Random(seed)
    hosts = [Graph.complete(32), complete_minus_matching(33, 16)]
    jobs = []
    for hidx, g in enumerate(hosts):
        for _ in range(max(1, samples)):
            verts = rng.sample(range(g.n), 8)
            pairs = tuple((verts[2 * i], verts[2 * i + 1]) for i in range(4))
            jobs.append((g, pairs))
    results = _map_instances(
        lambda job: _pipeline_one(job[0], job[1], 30, seed, no_timestamps), jobs
    )
    violations = [
        {"instance": i, "stages": inst["stages"]}
        for i, inst in enumerate(results)
        if not inst["ok"]
    ]
    return {
        "schema": SCHEMA,
        "experiment": "pipeline-4linked",
        "seed": seed,
        "samples_requested": samples,
        "samples_run": len(results),
        "timestamp": _now(no_timestamps),
        "instances": results,
        "violations": violations,
    }


# ---------------------------------------------------------------------------
# Revalidation
# ---------------------------------------------------------------------------

def revalidate_report(report: dict) -> None:
    """Re-check every embedded certificate; raises on the first mismatch.

    A report is evidence, not a verdict: anything it claims must be
    reproducible from the embedded graphs alone.
    """
    if report.get("schema") != SCHEMA:
        raise InputError("unknown report schema")
    kind = report.get("experiment")
    if kind == "lemma-si":
        for inst in report["instances"]:
            g = parse_graph6(inst["graph6"])
            cfg = Configuration(
                host=g,
                u0=inst["blocks"][0][0],
                pairs=tuple((b[0], b[-1]) for b in inst["blocks"][1:]),
                blocks=tuple(tuple(b) for b in inst["blocks"]),
            )
            cfg.validate(induced_paths=False)
            for rec in inst["samples"]:
                if rec["lemma"] != "si":
                    continue
                for i_str, val in rec["scores"].items():
                    got = s_value(cfg, rec["a"], rec["b"], int(i_str))
                    if got != val:
                        raise InputError(
                            f"embedded score {val} for block {i_str} does not recompute ({got})"
                        )
    elif kind == "pipeline-4linked":
        for inst in report["instances"]:
            g = parse_graph6(inst["graph6"])
            pairs = tuple(tuple(pr) for pr in inst["pairs"])
            if inst["ok"]:
                final = [st for st in inst["stages"] if st["stage"] == "linkage"]
                if not final:
                    raise InputError("successful instance lacks a linkage certificate")
                linkage = Linkage(tuple(tuple(pp) for pp in final[0]["paths"]))
                linkage.validate(g, pairs_spec(pairs))
            massed = [st for st in inst["stages"] if st["stage"] == "massed"][0]
            s = mask_of(x for pr in pairs for x in pr)
            rep = is_p_massed(g, s, inst["p"])
            if rep.satisfied != massed["ok"] or rep.rho_value != massed["rho"]:
                raise InputError("massed stage does not recompute")
    else:
        raise InputError(f"unknown experiment kind {kind!r}")


def report_to_json(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True)


def load_report(text: str) -> dict:
    report = json.loads(text)
    revalidate_report(report)
    return report
