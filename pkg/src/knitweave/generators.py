"""Seeded graph generators: minimum-degree random graphs, universal-vertex
graphs, complete graphs minus matchings, and the split hosts used by the
coverage-score campaign."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import InputError
from .graphs import Graph, mask_of


def gen_min_degree(n: int, delta: int, seed: int) -> Graph:
    """Random graph with minimum degree at least ``delta``: a binomial base
    augmented by random edges at deficient vertices. Deterministic per seed."""
    if not 0 <= delta < n:
        raise InputError(f"need 0 <= delta < n, got delta={delta}, n={n}")
    rng = random.Random(seed)
    p = min(0.95, (delta + 1) / max(1, n - 1))
    rows = [0] * n
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < p:
                rows[u] |= 1 << v
                rows[v] |= 1 << u
    while True:
        deficient = [v for v in range(n) if rows[v].bit_count() < delta]
        if not deficient:
            break
        v = deficient[0]
        options = [w for w in range(n) if w != v and not (rows[v] >> w) & 1]
        w = rng.choice(options)
        rows[v] |= 1 << w
        rows[w] |= 1 << v
    return Graph(n, tuple(rows))


def gen_universal_vertex(n: int, delta: int, seed: int) -> tuple[Graph, int]:
    """Graph whose vertex 0 is adjacent to everything, minimum degree at
    least ``delta`` overall."""
    if not 1 <= delta < n:
        raise InputError(f"need 1 <= delta < n, got delta={delta}, n={n}")
    base = gen_min_degree(n - 1, delta - 1, seed)
    rows = [((1 << (n - 1)) - 1) << 1]
    for v in range(n - 1):
        rows.append((base.adj[v] << 1) | 1)
    return Graph(n, tuple(rows)), 0


def complete_minus_matching(n: int, m: int) -> Graph:
    """Complete graph minus the matching {0,1}, {2,3}, ..., {2m-2, 2m-1}."""
    if 2 * m > n:
        raise InputError("matching does not fit")
    edges = [
        (u, v)
        for u in range(n)
        for v in range(u + 1, n)
        if not (u % 2 == 0 and v == u + 1 and u < 2 * m)
    ]
    return Graph.from_edges(n, edges)


@dataclass(frozen=True)
class SplitHost:
    """Two dense blobs joined only through a sparse middle layer. Built so
    that the straddling terminal pairs can never connect within the path cap
    and the blob sides stay in separate components once the middle is used."""

    graph: Graph
    terminals: tuple[int, ...]  # u0 then four pairs
    blob_a: int
    blob_b: int
    straddling: int  # how many of the four pairs straddle the blobs (1 or 2)


def gen_split_host(seed: int, blob_size: int = 12) -> SplitHost:
    """Host whose best configuration leaves one or two blocks disconnected.

    Middle-layer pairs sit one endpoint per side with their connecting
    vertices inside the middle, so every block lives in the middle; the
    straddling pairs' endpoints see only their own blob, forcing any
    connection to run through at least four intermediate vertices.
    """
    rng = random.Random(seed)
    straddling = rng.choice([1, 2])
    m = blob_size
    # layout: blob A = [0, m); blob B = [m, 2m); middle/anchor vertices after
    a0, b0 = 0, m
    nxt = 2 * m
    u0 = nxt
    nxt += 1
    mid_a = []   # middle vertices attached to blob A only
    mid_b = []
    mid_ab = []  # middle terminals attached to both blobs; safe because
    pairs = []   # terminals are never interior to a connecting path
    edges = []
    bridge_pairs = 4 - straddling
    for i in range(bridge_pairs):
        ua, vb = nxt, nxt + 1
        nxt += 2
        (mid_ab if rng.random() < 0.5 else mid_a).append(ua)
        (mid_ab if rng.random() < 0.5 else mid_b).append(vb)
        if i < bridge_pairs - 1:
            edges.append((ua, vb))  # adjacent cross pair
            pairs.append((ua, vb))
        else:
            w = nxt
            nxt += 1
            mid_b.append(w)
            edges.append((ua, w))
            edges.append((w, vb))
            pairs.append((ua, vb))
    for i in range(straddling):
        xa = a0 + 1 + i
        xb = b0 + 1 + i
        pairs.append((xa, xb))
    n = nxt
    for base in (a0, b0):
        for u in range(base, base + m):
            for v in range(u + 1, base + m):
                if rng.random() < 0.9:
                    edges.append((u, v))
    for x in mid_a + [u0]:
        for v in range(a0, a0 + m):
            edges.append((x, v))
    for x in mid_b:
        for v in range(b0, b0 + m):
            edges.append((x, v))
    for x in mid_ab:
        for v in range(a0, b0 + m):
            edges.append((x, v))
    g = Graph.from_edges(n, edges)
    terminals = (u0,) + tuple(x for p in pairs for x in p)
    return SplitHost(
        graph=g,
        terminals=terminals,
        blob_a=mask_of(range(a0, a0 + m)),
        blob_b=mask_of(range(b0, b0 + m)),
        straddling=straddling,
    )
