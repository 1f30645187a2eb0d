import random

import pytest

from knitweave.graphs import Graph, nonisomorphic_graphs


@pytest.fixture(scope="session")
def census7():
    """Every graph on at most 7 vertices, up to isomorphism."""
    out = []
    for n in range(8):
        out.extend(nonisomorphic_graphs(n))
    return out


def random_graph(rng: random.Random, n: int, p: float = 0.5) -> Graph:
    edges = [
        (u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p
    ]
    return Graph.from_edges(n, edges)
