"""Exact decision procedures with certificates: disjoint paths, knits,
profile knittedness, and terminal-block configurations with reroutes.

Everything here is deterministic: ties break lexicographically by vertex
index, so repeated runs return identical certificates.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

from .errors import InputError, PreconditionError
from .graphs import Graph, bits, is_connected, mask_of, reachable, set_of

_COUNT_CAP = 24  # candidate-path counting cutoff, used only for search ordering


@dataclass(frozen=True)
class TerminalSpec:
    """A partition of the terminal set into parts of size 1 or 2, plus a set of
    vertices the connecting subgraphs must avoid."""

    parts: tuple[tuple[int, ...], ...]
    forbidden: int = 0

    def __post_init__(self):
        seen = 0
        norm = []
        for part in self.parts:
            t = tuple(sorted(part))
            if len(t) not in (1, 2) or len(set(t)) != len(t):
                raise InputError(f"part {part} must have one or two distinct vertices")
            m = mask_of(t)
            if m & seen:
                raise InputError("terminal parts overlap")
            seen |= m
            norm.append(t)
        if seen & self.forbidden:
            raise InputError("terminals overlap the forbidden set")
        object.__setattr__(self, "parts", tuple(norm))

    @property
    def terminal_mask(self) -> int:
        return mask_of(v for part in self.parts for v in part)

    def pair_parts(self) -> list[tuple[int, tuple[int, int]]]:
        return [(i, p) for i, p in enumerate(self.parts) if len(p) == 2]

    def singleton_parts(self) -> list[tuple[int, int]]:
        return [(i, p[0]) for i, p in enumerate(self.parts) if len(p) == 1]

    def check_in_graph(self, g: Graph) -> None:
        if (self.terminal_mask | self.forbidden) & ~g.full_mask:
            raise InputError("terminal specification mentions out-of-range vertices")


def pairs_spec(pairs: Sequence[tuple[int, int]], forbidden: int = 0) -> TerminalSpec:
    return TerminalSpec(tuple(tuple(p) for p in pairs), forbidden)


@dataclass(frozen=True)
class Linkage:
    paths: tuple[tuple[int, ...], ...]

    def validate(self, g: Graph, spec: TerminalSpec) -> None:
        if len(self.paths) != len(spec.parts):
            raise InputError("path count does not match the terminal parts")
        used = 0
        for part, path in zip(spec.parts, self.paths):
            if len(part) != 2:
                raise InputError("linkage parts must be pairs")
            if {path[0], path[-1]} != set(part):
                raise InputError(f"path {path} does not join {part}")
            if len(set(path)) != len(path):
                raise InputError(f"path {path} repeats a vertex")
            for a, b in zip(path, path[1:]):
                if not g.has_edge(a, b):
                    raise InputError(f"{a},{b} on path {path} is not an edge")
            m = mask_of(path)
            if m & used:
                raise InputError("paths are not vertex-disjoint")
            if m & spec.forbidden:
                raise InputError("a path meets the forbidden set")
            used |= m


@dataclass(frozen=True)
class Knit:
    subgraphs: tuple[int, ...]

    def validate(self, g: Graph, spec: TerminalSpec) -> None:
        if len(self.subgraphs) != len(spec.parts):
            raise InputError("subgraph count does not match the terminal parts")
        used = 0
        for part, sub in zip(spec.parts, self.subgraphs):
            if mask_of(part) & ~sub:
                raise InputError(f"subgraph misses its terminals {part}")
            if sub & used:
                raise InputError("subgraphs overlap")
            if sub & spec.forbidden:
                raise InputError("a subgraph meets the forbidden set")
            if not is_connected(g, sub):
                raise InputError("a subgraph is not connected")
            used |= sub


# ---------------------------------------------------------------------------
# Path and flow machinery
# ---------------------------------------------------------------------------

def iter_paths(g: Graph, u: int, v: int, allowed: int, max_len: Optional[int]) -> Iterator[tuple[int, ...]]:
    """Simple u-v paths whose interior lies in ``allowed``, in lexicographic
    order of the vertex sequence, at most ``max_len`` vertices long."""
    cap = g.n if max_len is None else max_len
    if cap < 2 or u == v:
        return
    if not (reachable(g, 1 << u, allowed | (1 << u) | (1 << v)) >> v) & 1:
        return
    adj = g.adj
    path = [u]
    state = {"on": 1 << u}
    target_bit = 1 << v

    def rec() -> Iterator[tuple[int, ...]]:
        last = path[-1]
        cand = adj[last] & ((allowed & ~state["on"]) | target_bit)
        for w in bits(cand):
            if w == v:
                yield (*path, v)
            elif len(path) + 2 <= cap:
                path.append(w)
                state["on"] |= 1 << w
                yield from rec()
                state["on"] &= ~(1 << w)
                path.pop()

    yield from rec()


def iter_paths_by_length(g: Graph, u: int, v: int, allowed: int, max_len: int) -> Iterator[tuple[int, ...]]:
    """Like :func:`iter_paths` but shortest first ((length, lex) order)."""
    for cap in range(2, max_len + 1):
        for p in iter_paths(g, u, v, allowed, cap):
            if len(p) == cap:
                yield p


def _bfs_dist(g: Graph, src: int, dom: int) -> dict[int, int]:
    dist = {src: 0}
    frontier = 1 << src
    seen = frontier
    d = 0
    while frontier:
        nxt = 0
        for x in bits(frontier):
            nxt |= g.adj[x]
        nxt &= dom & ~seen
        d += 1
        for x in bits(nxt):
            dist[x] = d
        seen |= nxt
        frontier = nxt
    return dist


def shortest_path(g: Graph, u: int, v: int, allowed: int, max_len: Optional[int] = None) -> Optional[tuple[int, ...]]:
    """Lexicographically least shortest u-v path with interior in ``allowed``."""
    dom = (allowed | (1 << u) | (1 << v)) & g.full_mask
    du = _bfs_dist(g, u, dom)
    if v not in du:
        return None
    total = du[v]
    if max_len is not None and total + 1 > max_len:
        return None
    dv = _bfs_dist(g, v, dom)
    path = [u]
    cur = u
    while cur != v:
        for w in bits(g.adj[cur] & dom):
            if du.get(w) == du[cur] + 1 and dv.get(w) == total - du[cur] - 1:
                path.append(w)
                cur = w
                break
    return tuple(path)


def max_vertex_disjoint_flow(
    g: Graph,
    sources: int,
    sinks: int,
    allowed: int,
    cap: Optional[int] = None,
    collect: bool = False,
):
    """Maximum number of vertex-disjoint paths from ``sources`` to ``sinks``.

    Unit vertex capacities via node splitting (v_in = 2v, v_out = 2v + 1).
    Interior vertices are restricted to ``allowed``; source and sink vertices
    carry capacity one as well, so each is the endpoint of at most one path.
    Paths stop at the first sink they touch. A vertex that is both a source
    and a sink counts as a length-one path.
    """
    n = g.n
    sources &= g.full_mask
    sinks &= g.full_mask
    usable = (allowed | sources | sinks) & g.full_mask
    size = 2 * n + 2
    S, T = 2 * n, 2 * n + 1
    capm = [[0] * size for _ in range(size)]
    for v in bits(usable):
        capm[2 * v][2 * v + 1] = 1
        if (sources >> v) & 1:
            capm[S][2 * v] = 1
        if (sinks >> v) & 1:
            capm[2 * v + 1][T] = 1
        else:
            for w in bits(g.adj[v] & usable):
                capm[2 * v + 1][2 * w] = 1
    flow = 0
    limit = min(sources.bit_count(), sinks.bit_count()) if cap is None else cap
    while flow < limit:
        parent = [-1] * size
        parent[S] = S
        queue = [S]
        while queue and parent[T] == -1:
            x = queue.pop(0)
            row = capm[x]
            for y in range(size):
                if row[y] > 0 and parent[y] == -1:
                    parent[y] = x
                    if y == T:
                        break
                    queue.append(y)
        if parent[T] == -1:
            break
        y = T
        while y != S:
            x = parent[y]
            capm[x][y] -= 1
            capm[y][x] += 1
            y = x
        flow += 1
    if not collect:
        return flow
    paths = []
    for s in bits(sources):
        if capm[S][2 * s] == 0 and capm[2 * s][S] == 1:
            path = [s]
            cur = s
            while capm[T][2 * cur + 1] == 0:  # walk until the unit reaches T
                nxt = None
                for w in bits(usable):
                    if capm[2 * w][2 * cur + 1] == 1 and g.has_edge(cur, w):
                        nxt = w
                        break
                path.append(nxt)
                cur = nxt
            paths.append(tuple(path))
    return flow, paths


# ---------------------------------------------------------------------------
# Disjoint paths and knits
# ---------------------------------------------------------------------------

def disjoint_paths(g: Graph, spec: TerminalSpec, max_path_len: Optional[int] = None) -> Optional[Linkage]:
    """Pairwise vertex-disjoint paths joining every pair of ``spec``.

    Exhaustive backtracking. Pairs are attacked fewest-candidate-paths first
    (recomputed as the search deepens), and a unit-capacity flow bound between
    the unlinked terminals prunes hopeless branches early.
    """
    spec.check_in_graph(g)
    if any(len(p) != 2 for p in spec.parts):
        raise InputError("disjoint_paths takes pair parts only; use knit for singletons")
    all_pairs = [p for _, p in spec.pair_parts()]
    if not all_pairs:
        return Linkage(())
    base_blocked = spec.forbidden | spec.terminal_mask
    chosen: dict[int, tuple[int, ...]] = {}
    pairs = []
    for idx, p in enumerate(all_pairs):
        if g.has_edge(*p):
            # a direct edge uses no interior vertex, so it can never conflict
            # with the other paths; taking it loses no solutions
            chosen[idx] = p
        else:
            pairs.append((idx, p))
    if not pairs:
        return Linkage(tuple(chosen[i] for i in range(len(all_pairs))))

    def search(used: int, remaining: list[tuple[int, tuple[int, int]]]) -> bool:
        if not remaining:
            return True
        interior = g.full_mask & ~used & ~base_blocked
        if len(remaining) > 1:
            srcs = mask_of(p[0] for _, p in remaining)
            snks = mask_of(p[1] for _, p in remaining)
            if max_vertex_disjoint_flow(g, srcs, snks, interior, cap=len(remaining)) < len(remaining):
                return False
        best = None
        best_count = None
        for item in remaining:
            u, v = item[1]
            cnt = sum(1 for _ in itertools.islice(
                iter_paths(g, u, v, interior, max_path_len), _COUNT_CAP))
            if cnt == 0:
                return False
            if best_count is None or cnt < best_count:
                best, best_count = item, cnt
                if cnt == 1:
                    break
        idx, (u, v) = best
        rest = [it for it in remaining if it is not best]
        for path in iter_paths(g, u, v, interior, max_path_len):
            chosen[idx] = path
            if search(used | mask_of(path[1:-1]), rest):
                return True
            del chosen[idx]
        return False

    if search(0, pairs):
        return Linkage(tuple(chosen[i] for i in range(len(all_pairs))))
    return None


def knit(g: Graph, spec: TerminalSpec) -> Optional[Knit]:
    """Disjoint connected subgraphs, one per part, each containing its part.

    Reduces to disjoint paths: a connected subgraph containing a pair contains
    a path between its two vertices, and a path is itself connected, so the
    pair parts are solved as a linkage whose paths must additionally avoid all
    singleton-part vertices.
    """
    spec.check_in_graph(g)
    singles = spec.singleton_parts()
    pairs = spec.pair_parts()
    extra_forbidden = mask_of(v for _, v in singles)
    sub_spec = TerminalSpec(tuple(p for _, p in pairs), spec.forbidden | extra_forbidden)
    linkage = disjoint_paths(g, sub_spec) if pairs else Linkage(())
    if linkage is None and pairs:
        return None
    out = [0] * len(spec.parts)
    for (idx, _), path in zip(pairs, linkage.paths):
        out[idx] = mask_of(path)
    for idx, v in singles:
        out[idx] = 1 << v
    return Knit(tuple(out))


def partitions_with_profile(vertices: Sequence[int], profile: Sequence[int]) -> Iterator[tuple[tuple[int, ...], ...]]:
    """All partitions of ``vertices`` into parts matching ``profile`` (sizes 1
    and 2), each partition produced exactly once, in lexicographic order."""
    sizes = sorted(profile)
    n_singles = sizes.count(1)
    n_pairs = sizes.count(2)
    verts = sorted(vertices)
    if n_singles + 2 * n_pairs != len(verts):
        raise InputError("profile does not sum to the terminal set size")

    def pairings(pool: tuple[int, ...]) -> Iterator[tuple[tuple[int, int], ...]]:
        if not pool:
            yield ()
            return
        first = pool[0]
        for k in range(1, len(pool)):
            rest = pool[1:k] + pool[k + 1:]
            for sub in pairings(rest):
                yield ((first, pool[k]),) + sub

    for singles in itertools.combinations(verts, n_singles):
        pool = tuple(v for v in verts if v not in singles)
        for pr in pairings(pool):
            yield tuple((s,) for s in singles) + pr


def is_profile_knitted(
    g: Graph, s: int, profile: Sequence[int], forbidden: int = 0
) -> tuple[bool, Optional[tuple[tuple[int, ...], ...]]]:
    """Whether every partition of ``s`` with the given part sizes can be knit.

    Returns the lexicographically first violating partition on failure.
    """
    if any(x not in (1, 2) for x in profile):
        raise InputError("profile sizes must be 1 or 2")
    if sum(profile) != s.bit_count():
        raise InputError("profile does not sum to the terminal set size")
    for part_sets in partitions_with_profile(set_of(s), profile):
        spec = TerminalSpec(part_sets, forbidden)
        if knit(g, spec) is None:
            return False, part_sets
    return True, None


def is_k_linked(
    g: Graph,
    k: int,
    mode: str = "exhaustive",
    samples: int = 0,
    seed: int = 0,
) -> tuple[bool, Optional[tuple[tuple[int, int], ...]]]:
    """Whether every k disjoint terminal pairs admit disjoint linking paths.

    Exhaustive mode sweeps all unordered systems of k disjoint unordered pairs
    in lexicographic order, so a returned counterexample is the least one.
    Sampled mode draws ``samples`` pseudorandom systems.
    """
    if g.n < 2 * k:
        raise InputError(f"need at least {2 * k} vertices for k = {k}")
    if mode == "exhaustive":
        systems = (
            tuple(sorted(pr))
            for verts in itertools.combinations(range(g.n), 2 * k)
            for pr in _pairings_of(verts)
        )
    elif mode == "sampled":
        rng = random.Random(seed)

        def sample_iter():
            for _ in range(samples):
                verts = rng.sample(range(g.n), 2 * k)
                rng.shuffle(verts)
                yield tuple(sorted(tuple(sorted(verts[2 * i:2 * i + 2])) for i in range(k)))

        systems = sample_iter()
    else:
        raise InputError(f"unknown mode {mode!r}")
    for system in systems:
        if disjoint_paths(g, pairs_spec(system)) is None:
            return False, system
    return True, None


def _pairings_of(verts: Sequence[int]) -> Iterator[tuple[tuple[int, int], ...]]:
    verts = tuple(verts)
    if not verts:
        yield ()
        return
    first = verts[0]
    for k in range(1, len(verts)):
        rest = verts[1:k] + verts[k + 1:]
        for sub in _pairings_of(rest):
            yield ((first, verts[k]),) + sub


# ---------------------------------------------------------------------------
# Configurations (terminal blocks with reroutes and coverage scores)
# ---------------------------------------------------------------------------

PATH_CAP = 5  # vertex cap for connecting paths when building configurations


@dataclass(frozen=True)
class Configuration:
    """Blocks C_0..C_4 for nine terminals: C_0 = {u_0}; block i is either the
    vertex sequence of an induced path joining pair i or the bare pair."""

    host: Graph
    u0: int
    pairs: tuple[tuple[int, int], ...]
    blocks: tuple[tuple[int, ...], ...]

    @property
    def connected_count(self) -> int:
        return sum(1 for b in self.blocks[1:] if self._block_connected(b))

    def _block_connected(self, block: tuple[int, ...]) -> bool:
        return all(self.host.has_edge(a, b) for a, b in zip(block, block[1:]))

    def block_mask(self, i: int) -> int:
        return mask_of(self.blocks[i])

    @property
    def cover_mask(self) -> int:
        return mask_of(v for b in self.blocks for v in b)

    def validate(self, induced_paths: bool = True) -> None:
        if self.blocks[0] != (self.u0,):
            raise InputError("block 0 must be exactly the anchor vertex")
        used = 1 << self.u0
        conn_sizes = []
        seen_disconnected = False
        for (u, v), block in zip(self.pairs, self.blocks[1:]):
            if block[0] != u or block[-1] != v or len(set(block)) != len(block):
                raise InputError(f"block {block} does not run from {u} to {v}")
            m = mask_of(block)
            if m & used:
                raise InputError("blocks overlap")
            used |= m
            if self._block_connected(block):
                if seen_disconnected:
                    raise InputError("connected blocks must precede disconnected ones")
                if induced_paths:
                    for i, a in enumerate(block):
                        for j in range(i + 2, len(block)):
                            if self.host.has_edge(a, block[j]):
                                raise InputError(f"block {block} is not an induced path")
                conn_sizes.append(len(block))
            else:
                if len(block) != 2:
                    raise InputError("a disconnected block must be a bare pair")
                seen_disconnected = True
        if conn_sizes != sorted(conn_sizes):
            raise InputError("connected blocks must be ordered by size")


def build_configuration(h: Graph, terminals: Sequence[int]) -> Configuration:
    """Best block system for nine terminals: anchor u_0 plus four pairs.

    Slots 1..3 take a connecting path of at most five vertices whenever one
    exists in what remains after earlier blocks and later terminals are
    removed; slot 4 is always the bare pair. The pair-to-slot assignment and
    the path choices are optimized exactly: first maximize the number of
    connected blocks, then minimize the total number of vertices. First-found
    under lexicographic enumeration breaks ties.
    """
    terminals = tuple(terminals)
    if len(terminals) != 9 or len(set(terminals)) != 9:
        raise InputError("need nine distinct terminals")
    for t in terminals:
        h._check_vertex(t)
    u0 = terminals[0]
    in_pairs = tuple((terminals[1 + 2 * i], terminals[2 + 2 * i]) for i in range(4))
    all_term_mask = mask_of(terminals)

    # admissible lower bound on a slot's size if it ever connects
    pair_floor = {}
    for p in in_pairs:
        free = h.full_mask & ~(all_term_mask & ~mask_of(p)) & ~(1 << u0)
        sp = shortest_path(h, p[0], p[1], free & ~mask_of(p), PATH_CAP)
        pair_floor[p] = len(sp) if sp is not None else None

    best: dict = {"key": None, "blocks": None, "order": None}

    def consider(order, blocks):
        s = sum(
            1 for blk in blocks
            if all(h.has_edge(a, b) for a, b in zip(blk, blk[1:]))
        )
        size = 1 + sum(len(b) for b in blocks)
        key = (s, -size)
        if best["key"] is None or key > best["key"]:
            best["key"] = key
            best["blocks"] = tuple(blocks)
            best["order"] = order

    def bound_ok(order, blocks, used):
        if best["key"] is None:
            return True
        s = sum(1 for blk in blocks if all(h.has_edge(a, b) for a, b in zip(blk, blk[1:])))
        size = 1 + sum(len(b) for b in blocks)
        opt_s = s
        opt_size = size
        for j in range(len(blocks), 4):
            p = order[j]
            if j == 3:
                opt_s += 1 if h.has_edge(*p) else 0
                opt_size += 2
            elif pair_floor[p] is None:
                opt_size += 2
            else:
                opt_s += 1
                opt_size += pair_floor[p]
        return (opt_s, -opt_size) >= best["key"]

    def extend(order, blocks, used):
        slot = len(blocks) + 1
        if slot == 5:
            consider(order, blocks)
            return
        if not bound_ok(order, blocks, used):
            return
        u, v = order[slot - 1]
        if slot == 4:
            extend(order, blocks + [(u, v)], used | mask_of((u, v)))
            return
        later = mask_of(x for p in order[slot - 1:] for x in p)
        avail = h.full_mask & ~used & ~later
        found_path = False
        for path in iter_paths_by_length(h, u, v, avail & ~(1 << u) & ~(1 << v), PATH_CAP):
            found_path = True
            extend(order, blocks + [path], used | mask_of(path))
        if not found_path:
            extend(order, blocks + [(u, v)], used | mask_of((u, v)))

    for order in itertools.permutations(in_pairs):
        extend(list(order), [], 1 << u0)

    order = best["order"]
    blocks = best["blocks"]
    # normalize: connected blocks first, ascending size, disconnected after
    items = []
    for p, blk in zip(order, blocks):
        conn = all(h.has_edge(a, b) for a, b in zip(blk, blk[1:]))
        items.append((not conn, len(blk), blk, p))
    items.sort(key=lambda t: (t[0], t[1], t[2]))
    cfg = Configuration(
        host=h,
        u0=u0,
        pairs=tuple((blk[0], blk[-1]) for _, _, blk, _ in items),
        blocks=((u0,),) + tuple(blk for _, _, blk, _ in items),
    )
    cfg.validate(induced_paths=True)
    return cfg


def reroute(cfg: Configuration, x: int, y: int, i: int, j: int) -> Configuration:
    """Swap the interior vertex ``y`` of connected block ``i`` for the outside
    vertex ``x``, then connect the disconnected block ``j`` through ``y``.

    The result has strictly more connected blocks. Each violated precondition
    raises a structured error naming the failed clause.
    """
    h = cfg.host
    if not (1 <= i <= 4 and 1 <= j <= 4 and i != j):
        raise PreconditionError("block-indices", "i and j must be distinct block indices in 1..4")
    bi = cfg.blocks[i]
    if not all(h.has_edge(a, b) for a, b in zip(bi, bi[1:])):
        raise PreconditionError("i-connected", f"block {i} is not a connected path")
    if y not in bi[1:-1]:
        raise PreconditionError("y-interior", f"{y} is not interior to block {i}")
    pos = bi.index(y)
    z1, z2 = bi[pos - 1], bi[pos + 1]
    bj = cfg.blocks[j]
    if len(bj) != 2 or h.has_edge(*bj):
        raise PreconditionError("j-disconnected", f"block {j} is not a disconnected pair")
    cover = cfg.cover_mask
    if (cover >> x) & 1:
        raise PreconditionError("x-outside", f"{x} lies inside the configuration")
    if not (h.has_edge(x, z1) and h.has_edge(x, z2)):
        raise PreconditionError("x-adjacent-flanks", f"{x} must be adjacent to {z1} and {z2}")
    uj, vj = bj
    allowed = (h.full_mask & ~cover & ~(1 << x)) | (1 << y)
    newpath = None
    for p in iter_paths_by_length(h, uj, vj, allowed, h.n):
        if y in p[1:-1]:
            newpath = p
            break
    if newpath is None:
        raise PreconditionError(
            "path-through-y",
            f"no ({uj},{vj})-path whose only configuration-interior vertex is {y}",
        )
    new_bi = bi[:pos] + (x,) + bi[pos + 1:]
    items = []
    for idx in range(1, 5):
        blk = new_bi if idx == i else (newpath if idx == j else cfg.blocks[idx])
        conn = all(h.has_edge(a, b) for a, b in zip(blk, blk[1:]))
        items.append((not conn, len(blk), blk))
    items.sort(key=lambda t: (t[0], t[1], t[2]))
    new_cfg = Configuration(
        host=h,
        u0=cfg.u0,
        pairs=tuple((blk[0], blk[-1]) for _, _, blk in items),
        blocks=((cfg.u0,),) + tuple(blk for _, _, blk in items),
    )
    new_cfg.validate(induced_paths=False)
    if new_cfg.connected_count <= cfg.connected_count:
        raise PreconditionError("more-connected", "reroute did not increase the connected count")
    return new_cfg


def s_value(cfg: Configuration, a: int, b: int, i: int, closed: bool = False) -> int:
    """Coverage score of block ``i`` by the neighborhoods of ``a`` and ``b``:
    common neighbors inside the block minus block vertices missed by both.

    ``closed`` selects closed neighborhoods in the missed term; the two
    spellings agree whenever a and b lie outside the block, which the
    preconditions enforce.
    """
    h = cfg.host
    h._check_vertex(a)
    h._check_vertex(b)
    if not 0 <= i <= 4:
        raise InputError("block index out of range")
    ci = cfg.block_mask(i)
    if (ci >> a) & 1 or (ci >> b) & 1:
        raise InputError("a and b must lie outside the block")
    na, nb = h.adj[a], h.adj[b]
    if closed:
        na |= 1 << a
        nb |= 1 << b
    common = (h.adj[a] & h.adj[b] & ci).bit_count()
    missed = (ci & ~(na | nb)).bit_count()
    return common - missed
