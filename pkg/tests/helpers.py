"""Independent oracles and corpora shared by the tests.

Nothing here calls the package's own algorithms; conversions go through
networkx and the oracles are direct enumerations.
"""

from __future__ import annotations

import itertools
import random
from functools import lru_cache

import networkx as nx

from msorder.generators import random_graph
from msorder.graph import Graph


def to_graph(h: nx.Graph) -> Graph:
    index = {v: i for i, v in enumerate(sorted(h.nodes))}
    return Graph(len(index), [(index[u], index[v]) for u, v in h.edges])


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    return h


@lru_cache(maxsize=None)
def atlas(max_n: int = 7) -> tuple[Graph, ...]:
    """Every graph on at most ``max_n <= 7`` vertices, one per isomorphism class."""
    return tuple(to_graph(h) for h in nx.graph_atlas_g() if h.number_of_nodes() <= max_n)


def labelled_graphs(n: int):
    """Every graph on the vertex set ``0..n-1``."""
    pairs = list(itertools.combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield Graph(n, [p for i, p in enumerate(pairs) if mask >> i & 1])


def seeded_graphs(count: int, max_n: int, seed: int = 0, min_n: int = 1) -> list[Graph]:
    rng = random.Random(seed)
    return [random_graph(rng.randint(min_n, max_n), rng.random(), rng.randrange(1 << 30)) for _ in range(count)]


def _induced(g: Graph, vs) -> nx.Graph:
    return to_nx(g).subgraph(vs)


def has_long_induced_cycle(g: Graph) -> bool:
    """Some vertex set of size >= 4 induces a cycle (a chordless cycle)."""
    h = to_nx(g)
    for size in range(4, g.n + 1):
        for vs in itertools.combinations(range(g.n), size):
            sub = h.subgraph(vs)
            if sub.number_of_edges() == size and all(d == 2 for _, d in sub.degree) and nx.is_connected(sub):
                return True
    return False


def has_induced_p4(g: Graph) -> bool:
    h = to_nx(g)
    for vs in itertools.combinations(range(g.n), 4):
        sub = h.subgraph(vs)
        if sub.number_of_edges() == 3 and sorted(d for _, d in sub.degree) == [1, 1, 2, 2] and nx.is_connected(sub):
            return True
    return False


def brute_sep(g: Graph, k: int) -> int:
    """Largest component count of ``g - S`` over ``|S| <= k``, via networkx."""
    h = to_nx(g)
    best = 0
    for size in range(min(k, g.n) + 1):
        for s in itertools.combinations(range(g.n), size):
            rest = h.copy()
            rest.remove_nodes_from(s)
            best = max(best, nx.number_connected_components(rest))
    return best


def components_after_removal(g: Graph, s) -> int:
    h = to_nx(g)
    h.remove_nodes_from(s)
    return nx.number_connected_components(h)


def isomorphic(g: Graph, h: Graph) -> bool:
    return nx.is_isomorphic(to_nx(g), to_nx(h))
