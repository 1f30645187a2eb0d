"""Exact chromatic number, contraction-criticality, the neighborhood
independence test, and the monochromatic-set recombination engine.

Color indices are 0-based internally; the reserved color of the
monochromatic set is the last palette index (palette_size - 1). The CLI
layer converts to 1-based for display.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import (
    InputError,
    InternalConsistencyError,
    PreconditionError,
    SplitClassError,
)
from .graphs import (
    Graph,
    MinorWitness,
    bits,
    canonical_form,
    components,
    enumerate_minors,
    independence_number,
    induced,
    mask_of,
    max_clique,
    set_of,
)


@dataclass(frozen=True)
class Coloring:
    colors: tuple[int, ...]
    palette_size: int

    def check_proper(self, g: Graph, domain: Optional[int] = None) -> None:
        dom = g.full_mask if domain is None else domain
        if len(self.colors) != g.n:
            raise InputError("coloring length does not match the graph")
        for v in bits(dom):
            c = self.colors[v]
            if not 0 <= c < self.palette_size:
                raise InputError(f"color of {v} outside the palette")
            for u in bits(g.adj[v] & dom):
                if self.colors[u] == c:
                    raise InputError(f"monochromatic edge {v},{u}")

    def color_class(self, c: int, domain: int) -> int:
        return mask_of(v for v in bits(domain) if self.colors[v] == c)

    def colors_used(self, domain: int) -> set[int]:
        return {self.colors[v] for v in bits(domain)}


def chromatic_number(g: Graph) -> tuple[int, Coloring]:
    """Exact chromatic number with an optimal coloring.

    Saturation-guided backtracking: try k-colorability for increasing k
    between the clique lower bound and the greedy upper bound, branching on
    the most saturated vertex and never opening more than one fresh color.
    """
    n = g.n
    if n == 0:
        return 0, Coloring((), 0)
    adj = g.adj
    clique = max_clique(g)
    lb = clique.bit_count()

    greedy = [-1] * n
    order = sorted(range(n), key=lambda v: -adj[v].bit_count())
    for v in order:
        used = {greedy[u] for u in bits(adj[v]) if greedy[u] >= 0}
        c = 0
        while c in used:
            c += 1
        greedy[v] = c
    ub = max(greedy) + 1

    def try_k(k: int) -> Optional[list[int]]:
        colors = [-1] * n
        for i, v in enumerate(bits(clique)):
            colors[v] = i

        def admissible(v: int) -> set[int]:
            used = {colors[u] for u in bits(adj[v]) if colors[u] >= 0}
            hi = min(k, max((c for c in colors if c >= 0), default=-1) + 2)
            return {c for c in range(hi) if c not in used}

        def rec() -> bool:
            pending = [v for v in range(n) if colors[v] < 0]
            if not pending:
                return True
            v = max(
                pending,
                key=lambda x: (
                    len({colors[u] for u in bits(adj[x]) if colors[u] >= 0}),
                    adj[x].bit_count(),
                    -x,
                ),
            )
            for c in sorted(admissible(v)):
                colors[v] = c
                if rec():
                    return True
                colors[v] = -1
            return False

        return colors if rec() else None

    for k in range(lb, ub):
        got = try_k(k)
        if got is not None:
            return k, Coloring(tuple(got), k)
    return ub, Coloring(tuple(greedy), ub)


def is_contraction_critical(g: Graph, k: int) -> tuple[bool, Optional[MinorWitness]]:
    """Whether the chromatic number is exactly k and every proper minor needs
    fewer colors. On failure returns a validated witness minor."""
    chi, _ = chromatic_number(g)
    if chi != k:
        return False, None
    cache: dict = {}
    for wit in enumerate_minors(g):
        q = wit.quotient()
        key = canonical_form(q)
        if key not in cache:
            cache[key] = chromatic_number(q)[0]
        if cache[key] > k - 1:
            wit.validate()
            return False, wit
    return True, None


def dirac_neighborhood_check(g: Graph, k: int) -> list[int]:
    """Vertices whose neighborhood independence number exceeds d(u) - k + 2;
    an empty list is necessary for k-contraction-criticality."""
    out = []
    for u in range(g.n):
        sub, _ = induced(g, g.adj[u])
        if independence_number(sub) > g.degree(u) - k + 2:
            out.append(u)
    return out


# ---------------------------------------------------------------------------
# Recombination engine
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RecombinationPlan:
    """Everything extracted from the side-1 coloring: color classes on the
    separator remainder, the power-set color lists, the class components, and
    the leftover components."""

    domain: int
    u: int
    w: int
    classes: tuple[int, ...]          # V_i as bitsets over W
    class_colors: tuple[int, ...]     # the color each class carries
    lists: tuple[frozenset[int], ...]
    codes: dict
    extras: dict
    components: tuple[int, ...]       # C_i, aligned with classes
    leftovers: tuple[int, ...]        # D_j
    phi1: Coloring


def coding_colors(class_colors: Sequence[int], class_sizes: Sequence[int], palette_size: int):
    """Deterministic power-set color lists for the given classes.

    List i holds the class color plus one fresh color per subset of classes
    containing i (subsets ordered lexicographically get ascending fresh
    colors), plus one extra fresh color per big class when some class other
    than the first is big.
    """
    p = len(class_colors)
    reserved = palette_size - 1
    taken = set(class_colors) | {reserved}
    fresh = (c for c in range(palette_size) if c not in taken)
    codes = {}
    subsets = sorted(
        tuple(c) for r in range(2, p + 1) for c in itertools.combinations(range(p), r)
    )
    try:
        for j in subsets:
            codes[frozenset(j)] = next(fresh)
        extras = {}
        if any(class_sizes[i] >= 2 for i in range(1, p)):
            for i in range(p):
                if class_sizes[i] >= 2:
                    extras[i] = next(fresh)
    except StopIteration:
        raise PreconditionError(
            "palette",
            f"palette of {palette_size} cannot host the coding colors",
        )
    lists = []
    for i in range(p):
        li = {class_colors[i]}
        for j, c in codes.items():
            if i in j:
                li.add(c)
        if i in extras:
            li.add(extras[i])
        lists.append(frozenset(li))
    return lists, codes, extras


def validate_power_set_coding(lists: Sequence[frozenset[int]]) -> None:
    """Brute-force check: every nonempty index set J owns a color common to
    exactly the lists indexed by J."""
    p = len(lists)
    for r in range(1, p + 1):
        for combo in itertools.combinations(range(p), r):
            j = set(combo)
            ok = False
            for c in set().union(*lists):
                if all((c in lists[i]) == (i in j) for i in range(p)):
                    ok = True
                    break
            if not ok:
                raise InternalConsistencyError(f"no color codes exactly the set {sorted(j)}")


def build_recombination_plan(
    g1: Graph, s: int, u: int, phi1: Coloring, domain: Optional[int] = None
) -> RecombinationPlan:
    """Extract the recombination structure from a side-1 coloring.

    Preconditions: phi1 proper on side 1, monochromatic on ``u`` with the
    reserved color, and using fewer colors on w = s - u than w has vertices.
    A class split across components of its list-induced subgraph is the
    classic color-swap contradiction and raises :class:`SplitClassError`
    describing the swap instead of being repaired.
    """
    dom = g1.full_mask if domain is None else domain
    if u & ~s or s & ~dom:
        raise PreconditionError("nesting", "need u inside s inside the domain")
    phi1.check_proper(g1, dom)
    r = phi1.palette_size
    reserved = r - 1
    for v in bits(u):
        if phi1.colors[v] != reserved:
            raise PreconditionError("u-monochromatic", f"vertex {v} does not carry the reserved color")
    w = s & ~u
    w_colors = sorted(phi1.colors_used(w)) if w else []
    if reserved in w_colors:
        raise PreconditionError("w-colors", "the reserved color appears on w")
    p = len(w_colors)
    if p >= w.bit_count():
        raise PreconditionError("fewer-colors", f"w carries {p} colors on {w.bit_count()} vertices; need fewer")

    raw = [(c, phi1.color_class(c, w)) for c in w_colors]
    raw.sort(key=lambda t: set_of(t[1])[0])
    big_at = next(i for i, (_, cls) in enumerate(raw) if cls.bit_count() >= 2)
    ordered = [raw[big_at]] + raw[:big_at] + raw[big_at + 1:]
    class_colors = tuple(c for c, _ in ordered)
    classes = tuple(cls for _, cls in ordered)
    sizes = [cls.bit_count() for cls in classes]

    lists, codes, extras = coding_colors(class_colors, sizes, r)
    validate_power_set_coding(lists)

    comps: list[int] = []
    removed = 0
    for i in range(p):
        pool = mask_of(
            v for v in bits(dom & ~removed) if phi1.colors[v] in lists[i]
        )
        pieces = components(g1, pool)
        holding = [c for c in pieces if c & classes[i]]
        if len(holding) != 1:
            swap_options = sorted(lists[i] - {class_colors[i]})
            raise SplitClassError(
                i,
                tuple(holding),
                swap_options[0] if swap_options else None,
                f"class {i} spans {len(holding)} components of its list subgraph; "
                f"swapping its color on one component would put more colors on w",
            )
        comps.append(holding[0])
        removed |= holding[0]
    leftovers = tuple(components(g1, dom & ~removed))
    return RecombinationPlan(
        domain=dom,
        u=u,
        w=w,
        classes=classes,
        class_colors=class_colors,
        lists=tuple(lists),
        codes=codes,
        extras=extras,
        components=tuple(comps),
        leftovers=leftovers,
        phi1=phi1,
    )


def recombine(
    g: Graph,
    g1: Graph,
    g2: Graph,
    s: int,
    u: int,
    plan: RecombinationPlan,
    phi2prime: Coloring,
    domain1: Optional[int] = None,
    domain2: Optional[int] = None,
) -> Coloring:
    """Merge the side colorings into one proper coloring of the whole graph.

    The side-2 coloring must be proper, monochromatic on ``u``, constant on
    every class, and use the group code of each set of classes it merges (a
    solo class keeps its own color). Swapping, per component: the side-2
    color with the class color on each class component, and the side-2 color
    of its separator vertices with the reserved color on each leftover
    component. The result is asserted proper; a failure here would mean the
    swap argument itself is wrong and raises InternalConsistencyError.
    """
    dom1 = _resolve_domain(g1, s, domain1)
    dom2 = _resolve_domain(g2, s, domain2)
    if dom1 != plan.domain:
        raise PreconditionError("plan-domain", "plan was built for a different side-1 domain")
    if (dom1 | dom2) != g.full_mask or (dom1 & dom2) != s:
        raise PreconditionError("gluing", "sides must cover the graph and meet exactly in s")
    for v in bits(dom1 & ~s):
        if g.adj[v] & dom2 & ~s:
            raise PreconditionError("gluing", "edge between the private sides")
    for v in range(g.n):
        row1 = g1.adj[v] if v < g1.n else 0
        row2 = g2.adj[v] if v < g2.n else 0
        if (row1 | row2) != g.adj[v]:
            raise PreconditionError("gluing", f"edges at {v} are not the union of the sides")

    r = plan.phi1.palette_size
    if phi2prime.palette_size != r:
        raise PreconditionError("palette", "side colorings use different palettes")
    phi2prime.check_proper(g2, dom2)
    mu = None
    for v in bits(u):
        if mu is None:
            mu = phi2prime.colors[v]
        elif phi2prime.colors[v] != mu:
            raise PreconditionError("u-monochromatic", "side-2 coloring is not constant on u")

    p = len(plan.classes)
    lam = []
    for i, cls in enumerate(plan.classes):
        vals = {phi2prime.colors[v] for v in bits(cls)}
        if len(vals) != 1:
            raise PreconditionError("class-constant", f"class {i} is not monochromatic on side 2")
        lam.append(vals.pop())
    groups: dict[int, list[int]] = {}
    for i, c in enumerate(lam):
        groups.setdefault(c, []).append(i)
    for c, members in groups.items():
        if len(members) == 1:
            i = members[0]
            if c != plan.class_colors[i]:
                raise PreconditionError(
                    "group-code", f"solo class {i} must keep its own color, got {c}"
                )
        else:
            want = plan.codes.get(frozenset(members))
            if c != want:
                raise PreconditionError(
                    "group-code",
                    f"classes {members} share color {c} but their group code is {want}",
                )
    list_colors = set().union(*plan.lists) if plan.lists else set()
    w_used = {phi2prime.colors[v] for v in bits(plan.w)}
    u_used = {phi2prime.colors[v] for v in bits(u)}
    for c in sorted(list_colors - w_used):
        if c in u_used:
            raise PreconditionError(
                "coding-compatible",
                f"coding color {c} is unused on w but appears on u",
            )

    reserved = r - 1
    new1 = list(plan.phi1.colors)

    def swap(region: int, c1: int, c2: int) -> None:
        if c1 == c2:
            return
        for v in bits(region):
            if new1[v] == c1:
                new1[v] = c2
            elif new1[v] == c2:
                new1[v] = c1

    for i in range(p):
        swap(plan.components[i], lam[i], plan.class_colors[i])
    for dcomp in plan.leftovers:
        anchor = dcomp & s
        if not anchor:
            continue
        vals = {phi2prime.colors[v] for v in bits(anchor)}
        if len(vals) != 1:
            raise PreconditionError(
                "leftover-constant", "a leftover component meets s in two side-2 colors"
            )
        swap(dcomp, vals.pop(), reserved)

    phi1prime = Coloring(tuple(new1), r)
    try:
        phi1prime.check_proper(g1, dom1)
    except InputError as exc:
        raise InternalConsistencyError(f"swaps broke properness on side 1: {exc}") from exc
    for v in bits(s):
        if phi1prime.colors[v] != phi2prime.colors[v]:
            raise InternalConsistencyError(
                f"swapped side-1 coloring disagrees with side 2 at {v}"
            )
    merged = [0] * g.n
    for v in range(g.n):
        merged[v] = phi1prime.colors[v] if (dom1 >> v) & 1 else phi2prime.colors[v]
    final = Coloring(tuple(merged), r)
    try:
        final.check_proper(g)
    except InputError as exc:
        raise InternalConsistencyError(f"merged coloring is not proper: {exc}") from exc
    return final


def _resolve_domain(side: Graph, s: int, explicit: Optional[int]) -> int:
    if explicit is not None:
        return explicit
    support = mask_of(v for v in range(side.n) if side.adj[v])
    return support | s
