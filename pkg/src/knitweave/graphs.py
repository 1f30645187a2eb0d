"""Bitset graphs on at most 64 vertices plus the exact primitives built on them.

Vertex sets are plain Python ints used as bitsets, which keeps every set
operation a single machine-word instruction at the scales this package
targets (nothing in the domain exceeds a few dozen vertices).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Optional

from .errors import InputError, ResourceError

MAX_VERTICES = 64
MINOR_ENUM_LIMIT = 9


def bits(mask: int) -> Iterator[int]:
    """Iterate the set bit positions of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def set_of(mask: int) -> tuple[int, ...]:
    return tuple(bits(mask))


class Graph:
    """Immutable simple undirected graph with one adjacency bitset per vertex."""

    __slots__ = ("n", "adj", "_hash")

    def __init__(self, n: int, adj: tuple[int, ...]):
        if not 0 <= n <= MAX_VERTICES:
            raise InputError(f"vertex count {n} outside supported range 0..{MAX_VERTICES}")
        adj = tuple(adj)
        if len(adj) != n:
            raise InputError("adjacency table length does not match vertex count")
        full = (1 << n) - 1
        for v, row in enumerate(adj):
            if row & ~full:
                raise InputError(f"adjacency of vertex {v} mentions out-of-range vertices")
            if (row >> v) & 1:
                raise InputError(f"vertex {v} has a loop")
        for v, row in enumerate(adj):
            for u in bits(row):
                if not (adj[u] >> v) & 1:
                    raise InputError(f"edge {v},{u} is not symmetric")
        self.n = n
        self.adj = adj
        self._hash = hash((n, adj))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        rows = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise InputError(f"edge {u},{v} outside vertex range 0..{n - 1}")
            if u == v:
                raise InputError(f"loop at vertex {u}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows))

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, tuple([0] * n))

    @classmethod
    def complete(cls, n: int) -> "Graph":
        full = (1 << n) - 1
        return cls(n, tuple(full ^ (1 << v) for v in range(n)))

    @classmethod
    def cycle(cls, n: int) -> "Graph":
        return cls.from_edges(n, [(i, (i + 1) % n) for i in range(n)])

    @classmethod
    def path(cls, n: int) -> "Graph":
        return cls.from_edges(n, [(i, i + 1) for i in range(n - 1)])

    @classmethod
    def petersen(cls) -> "Graph":
        outer = [(i, (i + 1) % 5) for i in range(5)]
        inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
        spokes = [(i, 5 + i) for i in range(5)]
        return cls.from_edges(10, outer + inner + spokes)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def has_edge(self, u: int, v: int) -> bool:
        self._check_vertex(u)
        self._check_vertex(v)
        return bool((self.adj[u] >> v) & 1)

    def degree(self, v: int) -> int:
        self._check_vertex(v)
        return self.adj[v].bit_count()

    def min_degree(self) -> int:
        return min((row.bit_count() for row in self.adj), default=0)

    def edge_count(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    def edges(self) -> Iterator[tuple[int, int]]:
        for u in range(self.n):
            for v in bits(self.adj[u] >> (u + 1) << (u + 1)):
                yield (u, v)

    def complement(self) -> "Graph":
        full = self.full_mask
        return Graph(self.n, tuple((full ^ row) & ~(1 << v) for v, row in enumerate(self.adj)))

    def _check_vertex(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise InputError(f"vertex {v} outside range 0..{self.n - 1}")

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.adj == other.adj

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={list(self.edges())})"


def neighbors_closed(g: Graph, v: int) -> int:
    """Closed neighborhood of ``v`` as a bitset."""
    g._check_vertex(v)
    return g.adj[v] | (1 << v)


def induced(g: Graph, s: int) -> tuple[Graph, tuple[int, ...]]:
    """Induced subgraph on bitset ``s``; also returns new-index -> old-vertex map."""
    if s & ~g.full_mask:
        raise InputError("vertex set is not a subset of the graph")
    verts = set_of(s)
    pos = {v: i for i, v in enumerate(verts)}
    rows = []
    for v in verts:
        row = 0
        for u in bits(g.adj[v] & s):
            row |= 1 << pos[u]
        rows.append(row)
    return Graph(len(verts), tuple(rows)), verts


def components(g: Graph, domain: Optional[int] = None) -> list[int]:
    """Connected components restricted to ``domain`` (default all), as bitsets."""
    remaining = g.full_mask if domain is None else domain & g.full_mask
    out = []
    while remaining:
        start = remaining & -remaining
        comp = start
        frontier = start
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= g.adj[v]
            nxt &= remaining & ~comp
            comp |= nxt
            frontier = nxt
        out.append(comp)
        remaining &= ~comp
    return out


def reachable(g: Graph, start: int, domain: int) -> int:
    """Vertices of ``domain`` reachable from the bitset ``start`` inside ``domain``."""
    comp = start & domain
    frontier = comp
    while frontier:
        nxt = 0
        for v in bits(frontier):
            nxt |= g.adj[v]
        nxt &= domain & ~comp
        comp |= nxt
        frontier = nxt
    return comp


def is_connected(g: Graph, domain: Optional[int] = None) -> bool:
    dom = g.full_mask if domain is None else domain & g.full_mask
    if dom == 0:
        return True
    return reachable(g, dom & -dom, dom) == dom


def rho(g: Graph, t: int) -> int:
    """Number of edges with at least one endpoint in the bitset ``t``."""
    if t & ~g.full_mask:
        raise InputError("vertex set is not a subset of the graph")
    inside = 0
    crossing = 0
    for v in bits(t):
        inside += (g.adj[v] & t).bit_count()
        crossing += (g.adj[v] & ~t).bit_count()
    return inside // 2 + crossing


def contract_edge(g: Graph, u: int, v: int) -> Graph:
    """Contract the edge uv; the merged vertex sits at min(u, v), labels above
    max(u, v) shift down by one, and parallel edges/loops are simplified."""
    if not g.has_edge(u, v):
        raise InputError(f"{u},{v} is not an edge")
    keep, gone = min(u, v), max(u, v)
    merged = (g.adj[keep] | g.adj[gone]) & ~(1 << keep) & ~(1 << gone)
    rows = []
    for w in range(g.n):
        if w == gone:
            continue
        row = merged if w == keep else g.adj[w]
        if w != keep:
            if (row >> gone) & 1:
                row = (row & ~(1 << gone)) | (1 << keep)
        low = row & ((1 << gone) - 1)
        high = row >> (gone + 1)
        rows.append(low | (high << gone))
    return Graph(g.n - 1, tuple(rows))


# ---------------------------------------------------------------------------
# Exact independence number and maximum clique
# ---------------------------------------------------------------------------

def independence_number(g: Graph) -> int:
    """Exact independence number via branch and bound.

    The upper bound at each node is a greedy clique cover of the candidate
    set: each clique can contribute at most one vertex to an independent set.
    """
    adj = g.adj
    best = 0

    def clique_cover_bound(cand: int) -> int:
        count = 0
        rest = cand
        while rest:
            v = (rest & -rest).bit_length() - 1
            clique = 1 << v
            pool = rest & adj[v]
            while pool:
                w = (pool & -pool).bit_length() - 1
                clique |= 1 << w
                pool &= adj[w]
            rest &= ~clique
            count += 1
        return count

    def expand(cand: int, size: int) -> None:
        nonlocal best
        if size + cand.bit_count() <= best:
            return
        if not cand:
            best = max(best, size)
            return
        if size + clique_cover_bound(cand) <= best:
            return
        # branch on a vertex of maximum degree within the candidate set
        v = max(bits(cand), key=lambda x: (adj[x] & cand).bit_count())
        expand(cand & ~adj[v] & ~(1 << v), size + 1)
        expand(cand & ~(1 << v), size)

    expand(g.full_mask, 0)
    return best


def max_clique(g: Graph) -> int:
    """A maximum clique as a bitset, via coloring-bounded branch and bound."""
    adj = g.adj
    best_mask = 0
    best_size = 0

    def color_sort(cand: int) -> list[tuple[int, int]]:
        # greedy coloring of the candidate set; bound for v = its color index + 1
        order = []
        rest = cand
        color = 0
        while rest:
            color += 1
            avail = rest
            while avail:
                v = (avail & -avail).bit_length() - 1
                order.append((v, color))
                avail &= ~adj[v] & ~(1 << v)
                rest &= ~(1 << v)
        return order

    def expand(cur: int, size: int, cand: int) -> None:
        nonlocal best_mask, best_size
        order = color_sort(cand)
        for v, bound in reversed(order):
            if size + bound <= best_size:
                return
            newcand = cand & adj[v]
            if size + 1 + newcand.bit_count() > best_size:
                expand(cur | (1 << v), size + 1, newcand)
            if size + 1 > best_size:
                best_size = size + 1
                best_mask = cur | (1 << v)
            cand &= ~(1 << v)

    expand(0, 0, g.full_mask)
    return best_mask


# ---------------------------------------------------------------------------
# Canonical form
# ---------------------------------------------------------------------------

def canonical_form(g: Graph) -> tuple[int, tuple[int, ...]]:
    """Exact canonical form: (n, lexicographically maximal row-bit sequence).

    Row i of a vertex ordering records adjacency toward the already placed
    vertices. Backtracking keeps only orderings whose row sequence can still
    reach the maximum; interchangeable twin vertices are pruned since swapping
    them is an automorphism.
    """
    n = g.n
    if n == 0:
        return (0, ())
    adj = g.adj
    best: list[Optional[list[int]]] = [None]
    perm: list[int] = []

    def rec(i: int, used: int, rows: list[int], tight: bool) -> None:
        if i == n:
            cur = best[0]
            if cur is None or rows > cur:
                best[0] = list(rows)
            return
        cand = []
        for v in range(n):
            if (used >> v) & 1:
                continue
            b = 0
            row = adj[v]
            for k in range(i):
                if (row >> perm[k]) & 1:
                    b |= 1 << (i - 1 - k)
            cand.append((b, v))
        cand.sort(key=lambda t: (-t[0], t[1]))
        seen_twins: list[tuple[int, int]] = []
        for b, v in cand:
            twin = False
            for b2, v2 in seen_twins:
                if b2 == b and (adj[v] ^ adj[v2]) & ~((1 << v) | (1 << v2)) == 0:
                    twin = True
                    break
            if twin:
                continue
            seen_twins.append((b, v))
            t = tight
            cur = best[0]
            if t and cur is not None:
                if b < cur[i]:
                    break  # sorted descending, every later candidate is worse
                if b > cur[i]:
                    best[0] = None  # stale optimum, strictly dominated below here
                    t = True
            perm.append(v)
            rows.append(b)
            rec(i + 1, used | (1 << v), rows, t)
            rows.pop()
            perm.pop()
        return

    rec(0, 0, [], True)
    return (n, tuple(best[0]))


def are_isomorphic(g: Graph, h: Graph) -> bool:
    return canonical_form(g) == canonical_form(h)


_CENSUS_CACHE: dict[int, list[Graph]] = {}


def nonisomorphic_graphs(n: int) -> list[Graph]:
    """All graphs on ``n`` vertices up to isomorphism (small n only)."""
    if n < 0:
        raise InputError("negative vertex count")
    if n > 8:
        raise ResourceError("census generation supported for n <= 8")
    if n in _CENSUS_CACHE:
        return _CENSUS_CACHE[n]
    if n == 0:
        out = [Graph.empty(0)]
    else:
        seen = {}
        for g in nonisomorphic_graphs(n - 1):
            for nb in range(1 << (n - 1)):
                rows = [row | ((nb >> v & 1) << (n - 1)) for v, row in enumerate(g.adj)]
                rows.append(nb)
                h = Graph(n, tuple(rows))
                key = canonical_form(h)
                if key not in seen:
                    seen[key] = h
        out = list(seen.values())
    _CENSUS_CACHE[n] = out
    return out


# ---------------------------------------------------------------------------
# Minors
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MinorWitness:
    """A minor model: disjoint connected branch sets of the host plus the kept
    adjacencies between them. ``quotient()`` rebuilds the minor itself."""

    host: Graph
    branch_sets: tuple[int, ...]
    model_edges: tuple[tuple[int, int], ...]

    def quotient(self) -> Graph:
        return Graph.from_edges(len(self.branch_sets), self.model_edges)

    def validate(self) -> None:
        seen = 0
        for bs in self.branch_sets:
            if bs == 0:
                raise InputError("empty branch set")
            if bs & seen:
                raise InputError("branch sets overlap")
            if bs & ~self.host.full_mask:
                raise InputError("branch set outside host")
            if not is_connected(self.host, bs):
                raise InputError("branch set does not induce a connected subgraph")
            seen |= bs
        used = set()
        for i, j in self.model_edges:
            if i == j:
                raise InputError("model loop")
            key = (min(i, j), max(i, j))
            if key in used:
                raise InputError("parallel model edge")
            used.add(key)
            bi, bj = self.branch_sets[i], self.branch_sets[j]
            if not any(self.host.adj[v] & bj for v in bits(bi)):
                raise InputError(f"model edge {i},{j} has no host edge backing it")


def enumerate_minors(g: Graph, max_order_drop: Optional[int] = None) -> Iterator[MinorWitness]:
    """Stream every proper minor of ``g`` up to isomorphism, with witnesses.

    Full recursive deletion/contraction enumeration with canonical-form
    memoization; one-step enumeration would be wrong because chromatic number
    is not monotone under single contractions (C_5 is the classic trap).
    """
    if g.n > MINOR_ENUM_LIMIT:
        raise ResourceError(
            f"minor enumeration supported for n <= {MINOR_ENUM_LIMIT}; "
            f"got n = {g.n} (the state space is the set of all smaller graphs)"
        )
    drop = g.n if max_order_drop is None else max_order_drop
    if drop < 0:
        raise InputError("negative order drop")
    min_order = g.n - drop

    identity = MinorWitness(
        g,
        tuple(1 << v for v in range(g.n)),
        tuple(g.edges()),
    )
    seen = {canonical_form(g)}
    queue = [(g, identity)]
    while queue:
        cur, wit = queue.pop(0)
        out: list[MinorWitness] = []
        if cur.n > min_order:
            for v in range(cur.n):
                bs = wit.branch_sets[:v] + wit.branch_sets[v + 1:]
                edges = tuple(
                    (i - (i > v), j - (j > v))
                    for i, j in wit.model_edges
                    if i != v and j != v
                )
                out.append(MinorWitness(g, bs, edges))
        for u, v in cur.edges():
            edges = tuple(e for e in wit.model_edges if e != (u, v) and e != (v, u))
            out.append(MinorWitness(g, wit.branch_sets, edges))
            if cur.n > min_order:
                keep, gone = min(u, v), max(u, v)
                bs = list(wit.branch_sets)
                bs[keep] |= bs[gone]
                del bs[gone]
                merged_edges = set()
                for i, j in wit.model_edges:
                    if (i, j) in ((u, v), (v, u)):
                        continue
                    a = keep if i == gone else i - (i > gone)
                    b = keep if j == gone else j - (j > gone)
                    if a != b:
                        merged_edges.add((min(a, b), max(a, b)))
                out.append(MinorWitness(g, tuple(bs), tuple(sorted(merged_edges))))
        for w in out:
            q = w.quotient()
            key = canonical_form(q)
            if key in seen:
                continue
            seen.add(key)
            yield w
            queue.append((q, w))
