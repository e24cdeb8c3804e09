"""Core graph values: simple graphs, ported graphs, rooted forests and coterms.

Vertices are dense integers ``0..n-1``.  Edges are stored as ``(min, max)``
pairs.  Adjacency is also exposed as one integer bitmask per vertex, which is
what the subset-enumeration code in the rest of the package works on.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Sequence


class BudgetExceeded(RuntimeError):
    """An exact search would exceed its configured size budget."""


def bits(mask: int) -> Iterator[int]:
    """Yield the positions of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


@dataclass(frozen=True)
class Graph:
    """A finite simple undirected graph on the vertices ``0..n-1``."""

    n: int
    edges: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("vertex count must be non-negative")
        canon = set()
        for e in self.edges:
            u, v = e
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge ({u},{v}) out of range for n={self.n}")
            canon.add((u, v) if u < v else (v, u))
        object.__setattr__(self, "edges", frozenset(canon))

    @cached_property
    def adj(self) -> tuple[int, ...]:
        rows = [0] * self.n
        for u, v in self.edges:
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return tuple(rows)

    @cached_property
    def edge_list(self) -> tuple[tuple[int, int], ...]:
        return tuple(sorted(self.edges))

    @cached_property
    def edge_index(self) -> dict[tuple[int, int], int]:
        return {e: i for i, e in enumerate(self.edge_list)}

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def vertices(self) -> range:
        return range(self.n)

    def has_edge(self, u: int, v: int) -> bool:
        return u != v and bool(self.adj[u] >> v & 1)

    def neighbors(self, v: int) -> list[int]:
        return list(bits(self.adj[v]))

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={list(self.edge_list)})"


@dataclass(frozen=True)
class PortedGraph:
    """A graph together with a port labelling ``ports[v] in range(k)``."""

    graph: Graph
    k: int
    ports: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "ports", tuple(self.ports))
        if len(self.ports) != self.graph.n:
            raise ValueError("every vertex needs exactly one port label")
        for v, a in enumerate(self.ports):
            if not 0 <= a < self.k:
                raise ValueError(f"port label {a} of vertex {v} not in [0,{self.k})")

    @classmethod
    def uniform(cls, g: Graph, k: int = 1, label: int = 0) -> "PortedGraph":
        return cls(g, k, (label,) * g.n)


def symmetrize(r: Iterable[tuple[int, int]]) -> frozenset:
    out = set()
    for a, b in r:
        out.add((a, b))
        out.add((b, a))
    return frozenset(out)


def disjoint_union(g: Graph, h: Graph) -> Graph:
    shift = g.n
    return Graph(g.n + h.n, g.edges | {(u + shift, v + shift) for u, v in h.edges})


def join_with_relation(g: PortedGraph, h: PortedGraph, r: Iterable[tuple[int, int]]) -> PortedGraph:
    """The product ``g ⊗_r h``: disjoint union plus all cross edges allowed by ``r``."""
    if g.k != h.k:
        raise ValueError(f"label-count mismatch: {g.k} vs {h.k}")
    rel = symmetrize(r)
    for a, b in rel:
        if not (0 <= a < g.k and 0 <= b < g.k):
            raise ValueError(f"relation pair ({a},{b}) outside [0,{g.k})")
    base = disjoint_union(g.graph, h.graph)
    shift = g.graph.n
    cross = {
        (x, y + shift)
        for x in range(g.graph.n)
        for y in range(h.graph.n)
        if (g.ports[x], h.ports[y]) in rel
    }
    return PortedGraph(Graph(base.n, base.edges | cross), g.k, g.ports + h.ports)


def delete_ports(g: PortedGraph) -> Graph:
    return g.graph


def relabel(g: PortedGraph, rho: dict[int, int] | Sequence[int], k: int | None = None) -> PortedGraph:
    k = g.k if k is None else k
    return PortedGraph(g.graph, k, tuple(rho[a] for a in g.ports))


def complement(g: Graph) -> Graph:
    return Graph(g.n, {(u, v) for u in range(g.n) for v in range(u + 1, g.n) if not g.has_edge(u, v)})


def induced_subgraph(g: Graph, s: Iterable[int]) -> tuple[Graph, list[int]]:
    """Return ``g[s]`` and the id map (new id ``i`` is old vertex ``idmap[i]``)."""
    keep = sorted(set(s))
    for v in keep:
        if not 0 <= v < g.n:
            raise ValueError(f"vertex {v} out of range")
    new = {v: i for i, v in enumerate(keep)}
    edges = {(new[u], new[v]) for u, v in g.edges if u in new and v in new}
    return Graph(len(keep), edges), keep


def remove_vertices(g: Graph, s: Iterable[int]) -> tuple[Graph, list[int]]:
    drop = set(s)
    for v in drop:
        if not 0 <= v < g.n:
            raise ValueError(f"vertex {v} out of range")
    return induced_subgraph(g, [v for v in range(g.n) if v not in drop])


def component_masks(adj: Sequence[int], alive: int) -> list[int]:
    """Connected components of the subgraph induced by ``alive``, as bitmasks.

    Components come out ordered by their minimum vertex.
    """
    comps = []
    rest = alive
    while rest:
        comp = rest & -rest
        frontier = comp
        while frontier:
            reach = 0
            for v in bits(frontier):
                reach |= adj[v]
            frontier = reach & rest & ~comp
            comp |= frontier
        comps.append(comp)
        rest &= ~comp
    return comps


def count_components(adj: Sequence[int], alive: int) -> int:
    count = 0
    rest = alive
    while rest:
        comp = rest & -rest
        frontier = comp
        while frontier:
            reach = 0
            f = frontier
            while f:
                low = f & -f
                reach |= adj[low.bit_length() - 1]
                f ^= low
            frontier = reach & rest & ~comp
            comp |= frontier
        count += 1
        rest &= ~comp
    return count


def connected_components(g: Graph) -> list[frozenset[int]]:
    return [frozenset(bits(c)) for c in component_masks(g.adj, g.full_mask)]


def is_connected(g: Graph) -> bool:
    return g.n > 0 and count_components(g.adj, g.full_mask) == 1


@dataclass(frozen=True)
class RootedForest:
    """A spanning forest of ``host`` given by a parent map (``-1`` marks a root)."""

    host: Graph
    parent: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "parent", tuple(self.parent))
        if len(self.parent) != self.host.n:
            raise ValueError("parent map must cover every vertex")
        for v, p in enumerate(self.parent):
            if p == -1:
                continue
            if not 0 <= p < self.host.n:
                raise ValueError(f"parent {p} of {v} out of range")
        # Fails with ValueError on cycles.
        self.ancestors  # noqa: B018

    @cached_property
    def roots(self) -> tuple[int, ...]:
        return tuple(v for v, p in enumerate(self.parent) if p == -1)

    @cached_property
    def ancestors(self) -> tuple[int, ...]:
        """Bitmask of strict predecessors of each vertex."""
        n = self.host.n
        anc: list[int | None] = [None] * n
        for start in range(n):
            path = []
            v = start
            while v != -1 and anc[v] is None:
                if v in path:
                    raise ValueError("parent map contains a cycle")
                path.append(v)
                v = self.parent[v]
            base = 0 if v == -1 else anc[v] | (1 << v)
            for w in reversed(path):
                anc[w] = base
                base |= 1 << w
        return tuple(anc)  # type: ignore[arg-type]

    @cached_property
    def children(self) -> tuple[tuple[int, ...], ...]:
        ch: list[list[int]] = [[] for _ in range(self.host.n)]
        for v, p in enumerate(self.parent):
            if p != -1:
                ch[p].append(v)
        return tuple(tuple(c) for c in ch)

    @cached_property
    def descendants(self) -> tuple[int, ...]:
        """Bitmask of the subtree rooted at each vertex, the vertex included."""
        desc = [1 << v for v in range(self.host.n)]
        for v in range(self.host.n):
            for a in bits(self.ancestors[v]):
                desc[a] |= 1 << v
        return tuple(desc)

    def depth(self, v: int) -> int:
        return self.ancestors[v].bit_count()

    def height(self) -> int:
        return max((self.depth(v) for v in range(self.host.n)), default=0)

    def precedes(self, x: int, y: int) -> bool:
        """Tree order ``x ⪯_F y``: x lies on the root-to-y path."""
        return x == y or bool(self.ancestors[y] >> x & 1)

    def comparable(self, x: int, y: int) -> bool:
        return self.precedes(x, y) or self.precedes(y, x)

    def tree_edges(self) -> list[tuple[int, int]]:
        return sorted((min(v, p), max(v, p)) for v, p in enumerate(self.parent) if p != -1)


@dataclass(frozen=True)
class CoTerm:
    """A term over single vertices, disjoint union (``plus``) and complete join (``times``).

    ``vertex`` is only set on leaves that name a vertex of some host graph,
    as produced by the cotree computation.
    """

    kind: str
    children: tuple["CoTerm", ...] = ()
    vertex: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "children", tuple(self.children))
        if self.kind == "leaf":
            if self.children:
                raise ValueError("a leaf has no children")
        elif self.kind in ("plus", "times"):
            if not self.children:
                raise ValueError(f"{self.kind} node needs children")
        else:
            raise ValueError(f"unknown coterm kind {self.kind!r}")

    @classmethod
    def leaf(cls, vertex: int | None = None) -> "CoTerm":
        return cls("leaf", (), vertex)

    @classmethod
    def plus(cls, *children: "CoTerm") -> "CoTerm":
        return cls("plus", children)

    @classmethod
    def times(cls, *children: "CoTerm") -> "CoTerm":
        return cls("times", children)

    def leaves(self) -> list["CoTerm"]:
        if self.kind == "leaf":
            return [self]
        out = []
        for c in self.children:
            out.extend(c.leaves())
        return out

    def size(self) -> int:
        return len(self.leaves())

    def is_cotree(self) -> bool:
        """No like-labelled parent/child pair and at least two children per internal node."""
        if self.kind == "leaf":
            return True
        if len(self.children) < 2:
            return False
        return all(c.kind != self.kind and c.is_cotree() for c in self.children)

    def canonical(self) -> str:
        """Isomorphism-invariant rendering (children sorted, vertex ids dropped)."""
        if self.kind == "leaf":
            return "1"
        op = "+" if self.kind == "plus" else "*"
        return "(" + op.join(sorted(c.canonical() for c in self.children)) + ")"

    def __str__(self) -> str:
        if self.kind == "leaf":
            return "1" if self.vertex is None else f"v{self.vertex}"
        op = " + " if self.kind == "plus" else " * "
        return "(" + op.join(str(c) for c in self.children) + ")"


def cograph_from_coterm(t: CoTerm | str) -> Graph:
    """The graph denoted by a coterm; leaves become vertices in left-to-right order."""
    if isinstance(t, str):
        t = parse_coterm(t)
    edges: set[tuple[int, int]] = set()

    def build(node: CoTerm, start: int) -> int:
        if node.kind == "leaf":
            return start + 1
        bounds = []
        pos = start
        for c in node.children:
            end = build(c, pos)
            bounds.append((pos, end))
            pos = end
        if node.kind == "times":
            for i, (a0, a1) in enumerate(bounds):
                for b0, b1 in bounds[i + 1:]:
                    for x in range(a0, a1):
                        for y in range(b0, b1):
                            edges.add((x, y))
        return pos

    n = build(t, 0)
    return Graph(n, edges)


def parse_coterm(text: str) -> CoTerm:
    """Parse terms like ``(1+1)*(1+1+1)``.

    ``1`` is a single vertex, ``+`` (or ``⊕``) disjoint union and ``*`` (or
    ``⊗``) complete join.  ``*`` binds tighter than ``+``.  Chains of the same
    operator become one node, so ``1*1*1`` is a single three-child join.
    """
    s = text.replace("⊕", "+").replace("⊗", "*").replace(" ", "")
    pos = 0

    def fail(msg: str):
        raise ValueError(f"malformed coterm at position {pos}: {msg}")

    def parse_sum() -> CoTerm:
        nonlocal pos
        items = [parse_prod()]
        while pos < len(s) and s[pos] == "+":
            pos += 1
            items.append(parse_prod())
        return items[0] if len(items) == 1 else CoTerm.plus(*items)

    def parse_prod() -> CoTerm:
        nonlocal pos
        items = [parse_atom()]
        while pos < len(s) and s[pos] == "*":
            pos += 1
            items.append(parse_atom())
        return items[0] if len(items) == 1 else CoTerm.times(*items)

    def parse_atom() -> CoTerm:
        nonlocal pos
        if pos >= len(s):
            fail("unexpected end")
        if s[pos] == "1":
            pos += 1
            return CoTerm.leaf()
        if s[pos] == "(":
            pos += 1
            inner = parse_sum()
            if pos >= len(s) or s[pos] != ")":
                fail("expected ')'")
            pos += 1
            return inner
        fail(f"unexpected {s[pos]!r}")

    if not s:
        fail("empty term")
    t = parse_sum()
    if pos != len(s):
        fail(f"trailing input {s[pos:]!r}")
    return t
