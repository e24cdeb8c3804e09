"""Generators for the graph families used throughout the package.

Every generator is deterministic.  ``random_graph`` draws each pair
``u < v`` in lexicographic order from ``random.Random(seed)`` and keeps the
edge when the draw is below ``p``.
"""

from __future__ import annotations

import itertools
import math
import random
from typing import Sequence

from .graph import CoTerm, Graph, cograph_from_coterm, parse_coterm

HP_MAX = 5


def clique(n: int) -> Graph:
    return Graph(n, itertools.combinations(range(n), 2))


def edgeless(n: int) -> Graph:
    return Graph(n)


def path(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def star(leaves: int) -> Graph:
    return Graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def complete_multipartite(sizes: Sequence[int]) -> Graph:
    """Parts are consecutive id blocks in the given order."""
    if any(m < 1 for m in sizes):
        raise ValueError("part sizes must be positive")
    part = []
    for i, m in enumerate(sizes):
        part.extend([i] * m)
    n = len(part)
    return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n) if part[u] != part[v]])


def complete_bipartite(n: int, m: int) -> Graph:
    """Vertices ``0..n-1`` form one side, ``n..n+m-1`` the other."""
    if n == 0 or m == 0:
        return edgeless(n + m)
    return complete_multipartite([n, m])


def split_join(k: int, m: int) -> Graph:
    """``K_k ⊗ D_m``: a clique on ``0..k-1`` joined to an independent set."""
    edges = list(itertools.combinations(range(k), 2))
    edges += [(a, k + b) for a in range(k) for b in range(m)]
    return Graph(k + m, edges)


def tree_closure(f: Sequence[int]) -> Graph:
    """The tree whose vertices on level ``i`` have ``f[i]`` children, plus every ancestor edge.

    Vertices are numbered level by level, each level in lexicographic order
    of the child-index sequences.
    """
    if any(x < 0 for x in f):
        raise ValueError("branching values must be non-negative")
    levels: list[list[tuple[int, ...]]] = [[()]]
    for branching in f:
        levels.append([w + (i,) for w in levels[-1] for i in range(branching)])
    words = [w for level in levels for w in level]
    ids = {w: i for i, w in enumerate(words)}
    edges = [(ids[w[:j]], ids[w]) for w in words for j in range(len(w))]
    return Graph(len(words), edges)


def hp_vertex_ids(p: int) -> dict:
    """Vertex naming for ``hp(p)``: ``'*'``, then ``i``, then ``(i, sigma)``."""
    perms = list(itertools.permutations(range(p)))
    names: dict = {"*": 0}
    for i in range(p):
        names[i] = 1 + i
    for i in range(p):
        for j, sigma in enumerate(perms):
            names[(i, sigma)] = 1 + p + i * len(perms) + j
    return names


def hp(p: int) -> Graph:
    """The gadget graph ``H_p``.

    Vertex ``*`` is 0, vertex ``i`` is ``1+i``, and ``(i, sigma)`` is
    ``1 + p + i*p! + rank(sigma)`` with permutations ranked lexicographically.
    """
    if not 1 <= p <= HP_MAX:
        raise ValueError(f"hp needs 1 <= p <= {HP_MAX}")
    ids = hp_vertex_ids(p)
    perms = list(itertools.permutations(range(p)))
    edges = [(ids["*"], ids[0])]
    for sigma in perms:
        edges.append((ids["*"], ids[(0, sigma)]))
    for i in range(p - 1):
        edges.append((ids[i], ids[i + 1]))
        for sigma in perms:
            edges.append((ids[(i, sigma)], ids[(i + 1, sigma)]))
    for sigma in perms:
        for i in range(p):
            edges.append((ids[i], ids[(sigma[i], sigma)]))
    return Graph(1 + p + p * math.factorial(p), edges)


def random_graph(n: int, p: float, seed: int) -> Graph:
    if not 0.0 <= p <= 1.0:
        raise ValueError("edge probability must lie in [0,1]")
    rng = random.Random(seed)
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return Graph(n, edges)


def random_chordal(n: int, seed: int, density: float = 0.5) -> Graph:
    """Build a chordal graph by adding vertices whose earlier neighbours form a clique."""
    rng = random.Random(seed)
    adj: list[set[int]] = []
    for v in range(n):
        nbrs: set[int] = set()
        if v and rng.random() < density * 2:
            seedv = rng.randrange(v)
            nbrs = {seedv}
            for u in sorted(adj[seedv]):
                if rng.random() < density:
                    if all(u in adj[w] for w in nbrs):
                        nbrs.add(u)
        adj.append(set(nbrs))
        for u in nbrs:
            adj[u].add(v)
    return Graph(n, [(u, v) for v in range(n) for u in adj[v] if u < v])


def random_tree(n: int, seed: int, max_degree: int | None = None) -> Graph:
    rng = random.Random(seed)
    deg = [0] * n
    edges = []
    for v in range(1, n):
        choices = [u for u in range(v) if max_degree is None or deg[u] < max_degree]
        if not choices:
            raise ValueError("degree bound too small for a tree of this size")
        u = rng.choice(choices)
        deg[u] += 1
        deg[v] += 1
        edges.append((u, v))
    return Graph(n, edges)


def permute(g: Graph, perm: Sequence[int]) -> Graph:
    """Rename vertex ``v`` to ``perm[v]``."""
    return Graph(g.n, [(perm[u], perm[v]) for u, v in g.edges])


FAMILIES = {
    "clique": (clique, (int,)),
    "edgeless": (edgeless, (int,)),
    "path": (path, (int,)),
    "cycle": (cycle, (int,)),
    "star": (star, (int,)),
    "complete_bipartite": (complete_bipartite, (int, int)),
    "split_join": (split_join, (int, int)),
    "hp": (hp, (int,)),
    "random": (random_graph, (int, float, int)),
}


def generate(family: str, *args) -> Graph:
    """Build a graph from a family name and its parameters.

    ``complete_multipartite`` and ``tree_closure`` take any number of integer
    arguments (the part sizes, resp. the branching list).  ``cograph`` takes
    one coterm string.
    """
    if family == "complete_multipartite":
        return complete_multipartite([int(a) for a in args])
    if family in ("tree_closure", "tree_closure_Gnf"):
        return tree_closure([int(a) for a in args])
    if family == "cograph":
        if len(args) != 1:
            raise ValueError("cograph takes one coterm argument")
        t = args[0] if isinstance(args[0], CoTerm) else parse_coterm(str(args[0]))
        return cograph_from_coterm(t)
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}")
    fn, types = FAMILIES[family]
    if len(args) != len(types):
        raise ValueError(f"{family} takes {len(types)} argument(s), got {len(args)}")
    try:
        values = [t(a) for t, a in zip(types, args)]
    except (TypeError, ValueError) as exc:
        raise ValueError(f"bad arguments for {family}: {exc}") from None
    return fn(*values)
