"""Normal and perfect spanning forests, B-sets, chordal and split recognition."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .graph import Graph, RootedForest, bits, component_masks, mask_of

EXHAUSTIVE_FOREST_MAX_N = 7


def normal_spanning_forest(g: Graph) -> RootedForest:
    """Depth-first forest: each component is rooted at its smallest vertex and
    neighbours are explored in ascending order."""
    parent = [-1] * g.n
    seen = 0
    for root in range(g.n):
        if seen >> root & 1:
            continue
        seen |= 1 << root
        stack = [(root, iter(g.neighbors(root)))]
        while stack:
            v, it = stack[-1]
            for u in it:
                if not seen >> u & 1:
                    seen |= 1 << u
                    parent[u] = v
                    stack.append((u, iter(g.neighbors(u))))
                    break
            else:
                stack.pop()
    return RootedForest(g, tuple(parent))


def _check_spans(g: Graph, f: RootedForest) -> None:
    if f.host.n != g.n:
        raise ValueError("forest does not span the graph")
    for v, p in enumerate(f.parent):
        if p != -1 and not g.has_edge(v, p):
            raise ValueError(f"forest edge ({p},{v}) is not an edge of the graph")


def verify_normal(g: Graph, f: RootedForest) -> bool:
    """Every edge joins tree-order comparable vertices."""
    _check_spans(g, f)
    return all(f.comparable(u, v) for u, v in g.edges)


@dataclass(frozen=True)
class BSetReport:
    vertex: int
    pred_set: frozenset[int]
    b_set: frozenset[int]


def b_set_mask(g: Graph, f: RootedForest, x: int) -> int:
    reach = 0
    for u in bits(f.descendants[x]):
        reach |= g.adj[u]
    return reach & f.ancestors[x]


def b_set(g: Graph, f: RootedForest, x: int) -> BSetReport:
    """Strict predecessors of ``x`` that have an edge into the subtree of ``x``."""
    if not 0 <= x < g.n:
        raise ValueError(f"vertex {x} out of range")
    return BSetReport(x, frozenset(bits(f.ancestors[x])), frozenset(bits(b_set_mask(g, f, x))))


def chain_order(f: RootedForest, mask: int) -> list[int]:
    """Elements of a ⪯_F-chain sorted from the root downwards."""
    return sorted(bits(mask), key=f.depth)


def mcs_order(g: Graph) -> list[int]:
    """Maximum cardinality search; ties go to the smallest vertex id."""
    weight = [0] * g.n
    done = 0
    order = []
    for _ in range(g.n):
        best = -1
        for v in range(g.n):
            if not done >> v & 1 and (best == -1 or weight[v] > weight[best]):
                best = v
        order.append(best)
        done |= 1 << best
        for u in bits(g.adj[best] & ~done):
            weight[u] += 1
    return order


def _earlier_neighbours_are_cliques(g: Graph, order: list[int]) -> bool:
    before = 0
    for v in order:
        earlier = g.adj[v] & before
        for u in bits(earlier):
            if earlier & ~g.adj[u] & ~(1 << u):
                return False
        before |= 1 << v
    return True


def is_chordal(g: Graph) -> bool:
    """The reverse of an MCS order is a perfect elimination order iff ``g`` is chordal."""
    return _earlier_neighbours_are_cliques(g, mcs_order(g))


def verify_perfect(g: Graph, f: RootedForest) -> bool:
    """Normal, and the smaller neighbours of every vertex form a clique."""
    if not verify_normal(g, f):
        return False
    for v in range(g.n):
        lower = g.adj[v] & f.ancestors[v]
        for u in bits(lower):
            if lower & ~g.adj[u] & ~(1 << u):
                return False
    return True


def predecessor_edges_hold(g: Graph, f: RootedForest) -> bool:
    """For all ``u ≺ v ⪯ w``: an edge ``(u, w)`` forces the edge ``(u, v)``."""
    for w in range(g.n):
        for u in bits(g.adj[w] & f.ancestors[w]):
            # v ranges over the chain strictly below u down to w.
            for v in bits((f.ancestors[w] | (1 << w)) & ~f.ancestors[u] & ~(1 << u)):
                if f.precedes(u, v) and not g.has_edge(u, v):
                    return False
    return True


def _forest_from_order(g: Graph, order: list[int]) -> RootedForest:
    pos = {v: i for i, v in enumerate(order)}
    parent = [-1] * g.n
    for v in order:
        earlier = [u for u in bits(g.adj[v]) if pos[u] < pos[v]]
        if earlier:
            parent[v] = max(earlier, key=pos.__getitem__)
    return RootedForest(g, tuple(parent))


def _exhaustive_perfect_forest(g: Graph) -> RootedForest | None:
    choices = [[-1] + g.neighbors(v) for v in range(g.n)]
    for parent in itertools.product(*choices):
        try:
            f = RootedForest(g, parent)
        except ValueError:
            continue
        if verify_perfect(g, f):
            return f
    return None


def perfect_spanning_forest(g: Graph) -> RootedForest | None:
    """A perfect spanning forest built from an MCS order, or ``None`` if ``g`` is not chordal.

    Each vertex hangs below its latest earlier neighbour.  The result is
    re-verified; small graphs fall back to exhaustive search if that ever
    fails.
    """
    order = mcs_order(g)
    if not _earlier_neighbours_are_cliques(g, order):
        return None
    f = _forest_from_order(g, order)
    if verify_perfect(g, f):
        return f
    if g.n <= EXHAUSTIVE_FOREST_MAX_N:
        return _exhaustive_perfect_forest(g)
    raise RuntimeError("MCS forest failed verification on a chordal graph")


@dataclass(frozen=True)
class SplitPartition:
    clique_side: frozenset[int]
    independent_side: frozenset[int]


def is_split_partition(g: Graph, a, b) -> bool:
    a, b = set(a), set(b)
    if a & b or a | b != set(range(g.n)):
        return False
    clique = all(g.has_edge(x, y) for x, y in itertools.combinations(sorted(a), 2))
    independent = not any(g.has_edge(x, y) for x, y in itertools.combinations(sorted(b), 2))
    return clique and independent


def split_partition(g: Graph) -> SplitPartition | None:
    """Split recognition from the degree sequence.

    With degrees sorted ``d_1 >= ... >= d_n`` (ties by id) and ``m`` the
    largest ``i`` with ``d_i >= i - 1``, the graph is split iff
    ``sum_{i<=m} d_i = m(m-1) + sum_{i>m} d_i``; the first ``m`` vertices are
    then a maximum clique.  When the independent side is nonempty, clique
    vertices without a neighbour on it are moved across (ascending id), so
    ``K_k ⊗ D_m`` reports its ``K_k`` side.
    """
    if g.n == 0:
        return SplitPartition(frozenset(), frozenset())
    order = sorted(range(g.n), key=lambda v: (-g.degree(v), v))
    deg = [g.degree(v) for v in order]
    m = max(i for i in range(1, g.n + 1) if deg[i - 1] >= i - 1)
    if sum(deg[:m]) != m * (m - 1) + sum(deg[m:]):
        return None
    a = set(order[:m])
    b = set(order[m:])
    if b:
        for v in sorted(a):
            if not g.adj[v] & mask_of(b):
                a.discard(v)
                b.add(v)
    if not is_split_partition(g, a, b):
        raise RuntimeError("degree-sequence split test produced an invalid partition")
    return SplitPartition(frozenset(a), frozenset(b))


def successor_classes(g: Graph, f: RootedForest, x: int) -> dict[int, list[int]]:
    """Children of ``x`` grouped by their B-set (as a bitmask), children ascending."""
    classes: dict[int, list[int]] = {}
    for y in sorted(f.children[x]):
        classes.setdefault(b_set_mask(g, f, y), []).append(y)
    return classes


def components_with_successor(g: Graph, f: RootedForest, s, x: int) -> int:
    """Number of components of ``g - s`` that contain a child of ``x``."""
    alive = g.full_mask & ~mask_of(s)
    kids = mask_of(f.children[x])
    return sum(1 for c in component_masks(g.adj, alive) if c & kids)
