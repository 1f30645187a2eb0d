"""Separation enumeration, mass/density analysis, rigidity, and local
minimization of graph-terminal pairs.

All density thresholds of the form p/2 are compared in exact integer
arithmetic (2*rho versus p*size); no floats anywhere.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional

from .errors import InputError, PreconditionError
from .graphs import Graph, bits, components, induced, mask_of, rho, set_of
from .solver import TerminalSpec, knit, max_vertex_disjoint_flow, partitions_with_profile

PARTITION_CONVENTIONS = ("all-size-le-2", "max-pairing")


@dataclass(frozen=True)
class Separation:
    """An ordered cover (a, b) of the vertex set with no edge between the two
    private sides; its order is |a & b|."""

    a: int
    b: int

    @property
    def order(self) -> int:
        return (self.a & self.b).bit_count()

    @property
    def separator(self) -> int:
        return self.a & self.b

    def validate(self, g: Graph, s: int = 0) -> None:
        if (self.a | self.b) != g.full_mask:
            raise InputError("separation sides do not cover the graph")
        priv_a = self.a & ~self.b
        priv_b = self.b & ~self.a
        for v in bits(priv_a):
            if g.adj[v] & priv_b:
                raise InputError("edge between the private sides")
        if s & ~self.a:
            raise InputError("terminal set is not inside side a")


@dataclass(frozen=True)
class MassedReport:
    satisfied: bool
    rho_value: int
    threshold: Fraction
    violating_separation: Optional[Separation]
    condition_i: bool
    condition_ii: bool


def _subsets_lex(universe: tuple[int, ...], max_size: int) -> Iterator[tuple[int, ...]]:
    """All subsets of ``universe`` with at most ``max_size`` elements, in
    lexicographic (prefix-extension) order over sorted tuples."""

    def rec(prefix: list[int], start: int) -> Iterator[tuple[int, ...]]:
        yield tuple(prefix)
        if len(prefix) == max_size:
            return
        for k in range(start, len(universe)):
            prefix.append(universe[k])
            yield from rec(prefix, k + 1)
            prefix.pop()

    yield from rec([], 0)


def separations_exist(l: Graph, s: int, max_order: int) -> bool:
    """Fast emptiness test for proper separations of (l, s) of small order.

    Valid whenever ``max_order < |s|``: such a separation exists iff some
    vertex outside s can be cut off from s by at most ``max_order`` vertices
    (Menger, with the terminal set as sinks).
    """
    if max_order >= s.bit_count():
        raise InputError("shortcut requires max_order < |s|")
    full = l.full_mask
    for b in bits(full & ~s):
        # fan from b: paths share only b, so its neighbors act as the sources
        flow = max_vertex_disjoint_flow(
            l, l.adj[b] & ~(1 << b), s, full & ~s & ~(1 << b), cap=max_order + 1
        )
        if flow <= max_order:
            return True
    return False


def enumerate_separations(l: Graph, s: int, max_order: int) -> Iterator[Separation]:
    """All separations (A, B) of (l, s) with both private sides nonempty and
    order at most ``max_order``.

    Candidate separators X are swept in lexicographic order; the components of
    l - X that miss s may go to the B side in any nonempty combination that
    leaves A - B nonempty. Each separation is produced exactly once since
    (A, B) determines X = A & B and B - A.
    """
    if s & ~l.full_mask:
        raise InputError("terminal set is not a subset of the graph")
    if max_order > l.n:
        raise InputError("max_order exceeds the vertex count")
    if max_order < s.bit_count() and not separations_exist(l, s, max_order):
        return
    full = l.full_mask
    seen = set()
    for xs in _subsets_lex(tuple(range(l.n)), max_order):
        x = mask_of(xs)
        comps = components(l, full & ~x)
        free = [c for c in comps if not (c & s)]
        anchored = [c for c in comps if c & s]
        if not free:
            continue
        for r in range(1, len(free) + 1):
            for combo in itertools.combinations(free, r):
                bset = x
                for c in combo:
                    bset |= c
                a = full & ~(bset & ~x)
                if a & ~bset == 0:
                    continue  # A must keep a private side
                key = (a, bset)
                if key in seen:
                    continue
                seen.add(key)
                yield Separation(a, bset)


def is_p_massed(l: Graph, s: int, p: int) -> MassedReport:
    """Density report: the graph outside ``s`` is dense (rho > p/2 per vertex)
    and no small separation hangs a sparse piece off the terminal side.

    The first violating separation under lexicographic separator order is
    reported when condition (ii) fails.
    """
    if s & ~l.full_mask:
        raise InputError("terminal set is not a subset of the graph")
    if p < 0:
        raise InputError("p must be nonnegative")
    outside = l.full_mask & ~s
    rv = rho(l, outside)
    size = outside.bit_count()
    cond_i = 2 * rv > p * size
    cond_ii = True
    violator = None
    max_order = s.bit_count() - 1
    if max_order >= 0:
        for sep in enumerate_separations(l, s, max_order):
            bpriv = sep.b & ~sep.a
            if 2 * rho(l, bpriv) > p * bpriv.bit_count():
                cond_ii = False
                violator = sep
                break
    return MassedReport(
        satisfied=cond_i and cond_ii,
        rho_value=rv,
        threshold=Fraction(p * size, 2),
        violating_separation=violator,
        condition_i=cond_i,
        condition_ii=cond_ii,
    )


# ---------------------------------------------------------------------------
# Knittedness of a pair, rigidity
# ---------------------------------------------------------------------------

def _cut_partitions(cut: tuple[int, ...], convention: str) -> Iterator[tuple[tuple[int, ...], ...]]:
    if convention not in PARTITION_CONVENTIONS:
        raise InputError(f"unknown partition convention {convention!r}")
    k = len(cut)
    if convention == "max-pairing":
        profiles = [[2] * (k // 2) + [1] * (k % 2)]
    else:
        # most pairs first: unknittable partitions are pair-heavy, so sweeps
        # that stop at the first failure find it early
        profiles = [[2] * q + [1] * (k - 2 * q) for q in range(k // 2, -1, -1)]
    for profile in profiles:
        if not profile:
            yield ()
            continue
        yield from partitions_with_profile(cut, profile)


def pair_is_knitted(
    l: Graph, s: int, convention: str = "all-size-le-2"
) -> tuple[bool, Optional[tuple[tuple[int, ...], ...]]]:
    """Whether (l, s) is knitted for every partition of ``s`` into parts of
    size at most two. Returns the first violating partition otherwise."""
    for part_sets in _cut_partitions(set_of(s), convention):
        if len(part_sets) == 0:
            continue
        if knit(l, TerminalSpec(part_sets)) is None:
            return False, part_sets
    return True, None


def is_rigid(l: Graph, sep: Separation, convention: str = "all-size-le-2") -> bool:
    """A separation is rigid when the b side, seen from the separator, is
    knitted for every partition of the separator under the convention."""
    sep.validate(l)
    sub, vmap = induced(l, sep.b)
    back = {v: i for i, v in enumerate(vmap)}
    cut = tuple(back[v] for v in bits(sep.separator))
    for part_sets in _cut_partitions(cut, convention):
        if len(part_sets) == 0:
            continue
        if knit(sub, TerminalSpec(part_sets)) is None:
            return False
    return True


# ---------------------------------------------------------------------------
# Local minimization
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MinimizeResult:
    graph: Graph
    s: int
    trail: tuple[tuple, ...]
    vertex_map: tuple[int, ...]  # new index -> original vertex


def minimize_pair(l: Graph, s: int, p: int, limit: int) -> MinimizeResult:
    """Locally minimal massed-but-unknitted pair by greedy descent.

    Moves, scanned in lexicographic order and restarted after each accepted
    one: delete a vertex outside ``s``, delete an edge not inside ``s``, add a
    missing edge inside ``s``. A move is kept when the pair stays massed and
    unknitted and the (vertex count, outside-rho, -edges inside s) triple
    improves. The fixpoint is local; nothing global is claimed.
    """
    if limit > p // 2 - 1:
        raise InputError(f"limit {limit} exceeds p/2 - 1 = {p // 2 - 1}")
    if s.bit_count() > limit:
        raise PreconditionError("size", f"|s| = {s.bit_count()} exceeds the limit {limit}")
    if not is_p_massed(l, s, p).satisfied:
        raise PreconditionError("massed", "(1) fails: pair is not massed")
    knitted, _ = pair_is_knitted(l, s)
    if knitted:
        raise PreconditionError("knitted", "(2) fails: pair is knitted")

    cur = l
    cur_s = s
    vmap = tuple(range(l.n))
    trail: list[tuple] = []
    # cache of partitions known to defeat knits; re-checking one solve usually
    # settles "still not knitted" without sweeping every partition again
    known_bad: list[tuple[tuple[int, ...], ...]] = []

    def admissible(g2: Graph, s2: int) -> bool:
        if not is_p_massed(g2, s2, p).satisfied:
            return False
        for part in known_bad:
            if knit(g2, TerminalSpec(part)) is None:
                return True
        k, wit = pair_is_knitted(g2, s2)
        if not k:
            known_bad.append(wit)
        return not k

    improved = True
    while improved:
        improved = False
        outside = cur.full_mask & ~cur_s
        for v in bits(outside):  # vertex deletions always shrink the triple
            keep = cur.full_mask & ~(1 << v)
            g2, sub_map = induced(cur, keep)
            s2 = mask_of(i for i, old in enumerate(sub_map) if (cur_s >> old) & 1)
            if admissible(g2, s2):
                trail.append(("delete_vertex", vmap[v]))
                vmap = tuple(vmap[old] for old in sub_map)
                relabel = {old: i for i, old in enumerate(sub_map)}
                known_bad = [
                    tuple(tuple(relabel[x] for x in part) for part in parts)
                    for parts in known_bad
                ]
                cur, cur_s = g2, s2
                improved = True
                break
        if improved:
            continue
        for u, v in cur.edges():
            if (cur_s >> u) & 1 and (cur_s >> v) & 1:
                continue
            rows = list(cur.adj)
            rows[u] &= ~(1 << v)
            rows[v] &= ~(1 << u)
            g2 = Graph(cur.n, tuple(rows))
            if admissible(g2, cur_s):
                trail.append(("delete_edge", vmap[u], vmap[v]))
                cur = g2
                improved = True
                break
        if improved:
            continue
        svs = set_of(cur_s)
        for u, v in itertools.combinations(svs, 2):
            if cur.has_edge(u, v):
                continue
            rows = list(cur.adj)
            rows[u] |= 1 << v
            rows[v] |= 1 << u
            g2 = Graph(cur.n, tuple(rows))
            if admissible(g2, cur_s):
                trail.append(("add_edge", vmap[u], vmap[v]))
                cur = g2
                improved = True
                break
    return MinimizeResult(graph=cur, s=cur_s, trail=tuple(trail), vertex_map=vmap)
