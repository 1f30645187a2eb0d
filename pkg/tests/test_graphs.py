import random

import pytest
from hypothesis import given, settings, strategies as st

from knitweave.errors import InputError, ResourceError
from knitweave.graphs import (
    Graph,
    are_isomorphic,
    bits,
    canonical_form,
    contract_edge,
    enumerate_minors,
    independence_number,
    induced,
    is_connected,
    mask_of,
    max_clique,
    neighbors_closed,
    rho,
    set_of,
)

from conftest import random_graph
from oracles import (
    clique_by_enumeration,
    independence_by_enumeration,
    minors_by_recursion,
    rho_by_double_loop,
)


@st.composite
def graphs(draw, max_n=8):
    n = draw(st.integers(min_value=0, max_value=max_n))
    bits_needed = n * (n - 1) // 2
    word = draw(st.integers(min_value=0, max_value=(1 << bits_needed) - 1)) if bits_needed else 0
    edges = []
    k = 0
    for u in range(n):
        for v in range(u + 1, n):
            if (word >> k) & 1:
                edges.append((u, v))
            k += 1
    return Graph.from_edges(n, edges)


def test_construction_rejects_bad_input():
    with pytest.raises(InputError):
        Graph(2, (0b10, 0b00))  # asymmetric
    with pytest.raises(InputError):
        Graph(2, (0b01, 0b01))  # loop at 0? bit 0 of row 0
    with pytest.raises(InputError):
        Graph.from_edges(3, [(0, 3)])


def test_neighbors_closed_examples():
    assert neighbors_closed(Graph.complete(4), 0) == mask_of(range(4))
    assert set_of(neighbors_closed(Graph.cycle(5), 0)) == (0, 1, 4)
    pet = Graph.petersen()
    assert neighbors_closed(pet, 0).bit_count() == 4
    assert set_of(neighbors_closed(pet, 0)) == (0, 1, 4, 5)
    with pytest.raises(InputError):
        neighbors_closed(pet, 10)


def test_induced_examples():
    k3, _ = induced(Graph.complete(5), 0b10101)
    assert k3 == Graph.complete(3)
    p3, vmap = induced(Graph.cycle(6), 0b000111)
    assert sorted(p3.edges()) == [(0, 1), (1, 2)]
    assert vmap == (0, 1, 2)
    pet = Graph.petersen()
    sub, vmap = induced(pet, mask_of([0, 1, 2, 5, 8]))
    for i, u in enumerate(vmap):
        for j, v in enumerate(vmap):
            assert sub.has_edge(i, j) == pet.has_edge(u, v)


def test_induced_full_is_identity():
    rng = random.Random(5)
    for _ in range(20):
        g = random_graph(rng, rng.randint(0, 9))
        h, vmap = induced(g, g.full_mask)
        assert h == g and vmap == tuple(range(g.n))


def test_independence_number_examples():
    assert independence_number(Graph.complete(7)) == 1
    assert independence_number(Graph.empty(6)) == 6
    assert independence_number(Graph.cycle(5)) == 2
    assert independence_number(Graph.petersen()) == independence_by_enumeration(Graph.petersen()) == 4


def test_max_clique_examples():
    assert max_clique(Graph.complete(9)).bit_count() == 9
    assert max_clique(Graph.cycle(5)).bit_count() == 2
    k8m = Graph.from_edges(
        8,
        [(u, v) for u in range(8) for v in range(u + 1, 8) if not (u % 2 == 0 and v == u + 1)],
    )
    assert max_clique(k8m).bit_count() == clique_by_enumeration(k8m) == 4
    mask = max_clique(k8m)
    for u in bits(mask):
        for v in bits(mask):
            assert u == v or k8m.has_edge(u, v)


def test_independence_equals_complement_clique():
    rng = random.Random(11)
    for _ in range(40):
        g = random_graph(rng, rng.randint(1, 9))
        assert independence_number(g) == max_clique(g.complement()).bit_count()


def test_contract_edge_examples():
    assert are_isomorphic(contract_edge(Graph.cycle(5), 0, 1), Graph.cycle(4))
    assert are_isomorphic(contract_edge(Graph.complete(4), 2, 3), Graph.complete(3))
    with pytest.raises(InputError):
        contract_edge(Graph.cycle(5), 0, 2)


def test_contract_edge_petersen_degrees():
    pet = Graph.petersen()
    h = contract_edge(pet, 0, 5)
    assert h.n == 9
    # merged vertex keeps the union of both neighborhoods minus the pair
    merged_neighbors = (pet.adj[0] | pet.adj[5]) & ~mask_of([0, 5])
    expected = sorted(v - 1 if v > 5 else v for v in set_of(merged_neighbors))
    assert sorted(set_of(h.adj[0])) == expected
    for v in range(h.n):
        for u in bits(h.adj[v]):
            assert (h.adj[u] >> v) & 1


@settings(max_examples=60, deadline=None)
@given(graphs(max_n=8), st.integers(min_value=0, max_value=255))
def test_rho_matches_double_loop(g, sub):
    t = sub & g.full_mask
    assert rho(g, t) == rho_by_double_loop(g, t)


def test_rho_examples():
    g = Graph.complete(6)
    assert rho(g, g.full_mask) == 15
    assert rho(g, 0) == 0
    assert rho(g, 0b111) == 12  # 3 inside + 9 crossing


@settings(max_examples=40, deadline=None)
@given(graphs(max_n=7))
def test_contract_shrinks_and_stays_simple(g):
    for u, v in g.edges():
        h = contract_edge(g, u, v)
        assert h.n == g.n - 1
        for x in range(h.n):
            assert not (h.adj[x] >> x) & 1


def test_canonical_form_invariance():
    rng = random.Random(3)
    for _ in range(30):
        g = random_graph(rng, rng.randint(1, 7))
        perm = list(range(g.n))
        rng.shuffle(perm)
        edges = [(perm[u], perm[v]) for u, v in g.edges()]
        h = Graph.from_edges(g.n, edges)
        assert canonical_form(g) == canonical_form(h)


def test_canonical_form_distinguishes():
    assert canonical_form(Graph.path(4)) != canonical_form(Graph.cycle(4))
    assert canonical_form(Graph.complete(5)) != canonical_form(Graph.complete(4))


def test_canonical_form_agrees_with_networkx():
    import networkx as nx

    def to_nx(g):
        h = nx.Graph()
        h.add_nodes_from(range(g.n))
        h.add_edges_from(g.edges())
        return h

    rng = random.Random(31)
    for _ in range(60):
        n = rng.randint(1, 7)
        g = random_graph(rng, n, p=rng.uniform(0.1, 0.9))
        h = random_graph(rng, n, p=rng.uniform(0.1, 0.9))
        ours = canonical_form(g) == canonical_form(h)
        truth = nx.is_isomorphic(to_nx(g), to_nx(h))
        assert ours == truth


def test_minor_enumeration_k3():
    witnesses = list(enumerate_minors(Graph.complete(3)))
    for w in witnesses:
        w.validate()
    keys = {canonical_form(w.quotient()) for w in witnesses}
    assert len(keys) == len(witnesses)
    oracle = minors_by_recursion(Graph.complete(3))
    assert len(witnesses) == len(oracle) == 7


def test_minor_enumeration_matches_oracle_small():
    rng = random.Random(9)
    for _ in range(6):
        g = random_graph(rng, rng.randint(1, 5), p=0.6)
        ours = {canonical_form(w.quotient()) for w in enumerate_minors(g)}
        assert len(ours) == len(minors_by_recursion(g))


def test_minor_k1_and_c5():
    k1 = list(enumerate_minors(Graph.complete(1)))
    assert len(k1) == 1 and k1[0].quotient().n == 0
    c5 = Graph.cycle(5)
    hits = [
        w for w in enumerate_minors(c5) if are_isomorphic(w.quotient(), Graph.complete(3))
    ]
    assert hits
    hits[0].validate()
    assert len(hits[0].branch_sets) == 3


def test_minor_witnesses_validate():
    for g in (Graph.cycle(6), Graph.petersen(), Graph.complete(4)):
        if g.n > 9:
            continue
        for w in enumerate_minors(g, max_order_drop=2):
            w.validate()


def test_minor_envelope():
    with pytest.raises(ResourceError):
        next(enumerate_minors(Graph.complete(10)))


def test_max_order_drop_limits_orders():
    g = Graph.complete(5)
    orders = {w.quotient().n for w in enumerate_minors(g, max_order_drop=1)}
    assert orders <= {4, 5}


def test_components_and_connectivity():
    g = Graph.from_edges(6, [(0, 1), (2, 3), (3, 4)])
    from knitweave.graphs import components

    comps = components(g)
    assert sorted(c.bit_count() for c in comps) == [1, 2, 3]
    assert not is_connected(g)
    assert is_connected(g, mask_of([2, 3, 4]))
