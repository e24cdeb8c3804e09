"""Cotrees, exact Cut, ⊗-decompositions and their strengthening.

Cut is computed by enumerating a port labelling ``pi`` (in restricted-growth
form, so label ``0`` appears first) and a symmetric relation ``R`` on the
labels actually used.  For fixed ``(pi, R)`` a pair of vertices *conflicts*
when its adjacency differs from what ``R`` predicts.  Conflicting pairs must
share a part, and the components of the conflict graph are themselves a valid
part structure, so the best part count for ``(pi, R)`` is the number of
conflict components.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .graph import (
    BudgetExceeded,
    CoTerm,
    Graph,
    PortedGraph,
    bits,
    component_masks,
    count_components,
    induced_subgraph,
    join_with_relation,
    mask_of,
    symmetrize,
)

CUT_MAX_N = 10
CUT_MAX_K = 3
SEARCH_MAX_N = 6


# --- cotrees ----------------------------------------------------------------


def _cotree(adj: Sequence[int], cadj: Sequence[int], mask: int) -> CoTerm | None:
    if mask & (mask - 1) == 0:
        return CoTerm.leaf(mask.bit_length() - 1)
    for kind, rows in (("plus", adj), ("times", cadj)):
        parts = component_masks(rows, mask)
        if len(parts) > 1:
            children = []
            for p in parts:
                c = _cotree(adj, cadj, p)
                if c is None:
                    return None
                children.append(c)
            return CoTerm(kind, tuple(children))
    return None


def cotree(g: Graph) -> CoTerm | None:
    """The cotree of ``g``, or ``None`` if ``g`` is not a cograph (or is empty).

    Children are listed by their smallest vertex and leaves carry vertex ids.
    """
    if g.n == 0:
        return None
    full = g.full_mask
    cadj = [full & ~row & ~(1 << v) for v, row in enumerate(g.adj)]
    return _cotree(g.adj, cadj, full)


def cotree_stats(t: CoTerm) -> tuple[int, int]:
    """``(height, maximum number of children)``."""
    if t.kind == "leaf":
        return 0, 0
    stats = [cotree_stats(c) for c in t.children]
    return 1 + max(h for h, _ in stats), max(len(t.children), max(d for _, d in stats))


def is_cograph(g: Graph) -> bool:
    return g.n == 0 or cotree(g) is not None


# --- Cut --------------------------------------------------------------------


@dataclass(frozen=True)
class CutWitness:
    k: int
    labels: tuple[int, ...]
    relation: frozenset
    parts: tuple[frozenset[int], ...]

    @property
    def value(self) -> int:
        return len(self.parts)

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "labels": list(self.labels),
            "R": sorted([a, b] for a, b in self.relation),
            "parts": [sorted(p) for p in self.parts],
        }


def _rgs_labelings(n: int, k: int):
    """Labelings in first-occurrence canonical form using at most ``k`` labels."""
    lab = [0] * n

    def rec(i: int, used: int):
        if i == n:
            yield tuple(lab), used
            return
        for a in range(min(used + 1, k)):
            lab[i] = a
            yield from rec(i + 1, max(used, a + 1))

    yield from rec(0, 0)


def _relations(lab: Sequence[int], used: int, adj: Sequence[int], n: int):
    """Every symmetric relation on the used labels (as ``a <= b`` pairs) with its conflict rows."""
    cls = [0] * used
    for v, a in enumerate(lab):
        cls[a] |= 1 << v
    pairs = [(a, b) for a in range(used) for b in range(a, used)]
    for r in range(1 << len(pairs)):
        row = [0] * used
        for i, (a, b) in enumerate(pairs):
            if r >> i & 1:
                row[a] |= cls[b]
                row[b] |= cls[a]
        conflict = [(adj[v] ^ row[lab[v]]) & ~(1 << v) for v in range(n)]
        yield {p for i, p in enumerate(pairs) if r >> i & 1}, conflict


def _check_cut_budget(g: Graph, k: int, max_n: int, max_k: int) -> None:
    if g.n > max_n or k > max_k:
        raise BudgetExceeded(f"exact cut capped at n <= {max_n}, k <= {max_k} (got n={g.n}, k={k})")


def cut_witness(
    g: Graph,
    k: int,
    stop_at: int | None = None,
    max_n: int = CUT_MAX_N,
    max_k: int = CUT_MAX_K,
) -> CutWitness | None:
    """A witness for ``Cut(g, k)``; ``None`` for the empty graph.

    With ``stop_at`` the search returns as soon as a witness reaching that
    many parts is found.
    """
    if k < 1:
        if g.n == 0:
            return None
        raise ValueError("cut needs at least one port label")
    _check_cut_budget(g, k, max_n, max_k)
    n = g.n
    if n == 0:
        return None
    adj, full = g.adj, g.full_mask
    goal = n if stop_at is None else min(n, stop_at)
    best = -1
    best_cfg: tuple | None = None
    for lab, used in _rgs_labelings(n, k):
        for rel, conflict in _relations(lab, used, adj, n):
            c = count_components(conflict, full)
            if c > best:
                best, best_cfg = c, (lab, rel, conflict)
                if best >= goal:
                    break
        if best >= goal:
            break
    lab, rel, conflict = best_cfg  # type: ignore[misc]
    parts = tuple(frozenset(bits(c)) for c in component_masks(conflict, full))
    return CutWitness(k, lab, symmetrize(rel), parts)


def cut(g: Graph, k: int, max_n: int = CUT_MAX_N, max_k: int = CUT_MAX_K) -> int:
    w = cut_witness(g, k, max_n=max_n, max_k=max_k)
    return 0 if w is None else w.value


def rebuild_from_witness(g: Graph, w: CutWitness) -> Graph:
    """Fold the parts with ``⊗_R`` and map the result back to the ids of ``g``."""
    acc: PortedGraph | None = None
    order: list[int] = []
    for part in w.parts:
        sub, idmap = induced_subgraph(g, part)
        piece = PortedGraph(sub, w.k, tuple(w.labels[v] for v in idmap))
        acc = piece if acc is None else join_with_relation(acc, piece, w.relation)
        order.extend(idmap)
    if acc is None:
        return Graph(0)
    return Graph(g.n, {(order[u], order[v]) for u, v in acc.graph.edges})


def verify_cut_witness(g: Graph, w: CutWitness) -> bool:
    if len(w.labels) != g.n or any(not 0 <= a < w.k for a in w.labels):
        return False
    if any(not (0 <= a < w.k and 0 <= b < w.k) for a, b in w.relation):
        return False
    if symmetrize(w.relation) != w.relation:
        return False
    seen: set[int] = set()
    for p in w.parts:
        if not p or seen & p:
            return False
        seen |= p
    if seen != set(range(g.n)):
        return False
    owner = {v: i for i, p in enumerate(w.parts) for v in p}
    for u in range(g.n):
        for v in range(u + 1, g.n):
            if owner[u] != owner[v]:
                if g.has_edge(u, v) != ((w.labels[u], w.labels[v]) in w.relation):
                    return False
    return rebuild_from_witness(g, w).edges == g.edges


def separator_cut_witness(g: Graph, s: Iterable[int]) -> CutWitness:
    """Parts: each vertex of ``s`` alone, then each component of ``g - s``.

    A vertex of ``s`` gets its position in ``s`` as label; any other vertex
    gets ``|s|`` plus the code of its neighbourhood inside ``s``.  The
    relation joins ``s_i`` with ``s_j`` when adjacent and with the code of
    every neighbourhood containing ``s_i``.  This uses ``|s| + 2^|s|`` labels.
    """
    sep = sorted(set(s))
    pos = {x: i for i, x in enumerate(sep)}
    t = len(sep)
    labels = []
    for v in range(g.n):
        if v in pos:
            labels.append(pos[v])
        else:
            labels.append(t + sum(1 << pos[x] for x in sep if g.has_edge(v, x)))
    rel = {(i, j) for i, x in enumerate(sep) for j, y in enumerate(sep) if g.has_edge(x, y)}
    rel |= {(i, t + code) for i in range(t) for code in range(1 << t) if code >> i & 1}
    rest = g.full_mask & ~mask_of(sep)
    parts = [frozenset([x]) for x in sep]
    parts += [frozenset(bits(c)) for c in component_masks(g.adj, rest)]
    return CutWitness(t + (1 << t), tuple(labels), symmetrize(rel), tuple(parts))


def module_cut_witness(g: Graph, children: Sequence[Iterable[int]], join: bool) -> CutWitness:
    """Three-label witness from a module split into ``children``.

    Module vertices get label 2, outside vertices 0 (adjacent to the module)
    or 1.  The outside, when nonempty, is one extra part.
    """
    blocks = [frozenset(c) for c in children]
    module = frozenset().union(*blocks)
    labels = []
    for v in range(g.n):
        if v in module:
            labels.append(2)
        else:
            labels.append(0 if g.adj[v] & mask_of(module) else 1)
    rel = {(0, 2)} | ({(2, 2)} if join else set())
    outside = frozenset(range(g.n)) - module
    parts = tuple(blocks) + ((outside,) if outside else ())
    return CutWitness(3, tuple(labels), symmetrize(rel), parts)


# --- ⊗-decompositions -----------------------------------------------------


@dataclass
class DecompositionNode:
    id: int
    children: list[int] = field(default_factory=list)
    labels: dict[int, int] = field(default_factory=dict)
    relation: set = field(default_factory=set)
    rho: dict[int, int] | None = None


@dataclass
class OtimesDecomposition:
    width: int
    root: int
    nodes: dict[int, DecompositionNode]

    def to_dict(self) -> dict:
        out = []
        for nid in sorted(self.nodes):
            node = self.nodes[nid]
            entry = {
                "id": nid,
                "children": list(node.children),
                "labels": {str(v): a for v, a in sorted(node.labels.items())},
                "R": sorted([a, b] for a, b in node.relation),
                "rho": None if node.rho is None else {str(a): b for a, b in sorted(node.rho.items())},
            }
            out.append(entry)
        return {"width": self.width, "root": self.root, "nodes": out}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    @classmethod
    def from_dict(cls, data: Mapping) -> "OtimesDecomposition":
        try:
            nodes = {}
            for entry in data["nodes"]:
                nid = int(entry["id"])
                if nid in nodes:
                    raise ValueError(f"duplicate node id {nid}")
                rho = entry.get("rho")
                nodes[nid] = DecompositionNode(
                    nid,
                    [int(c) for c in entry.get("children", [])],
                    {int(v): int(a) for v, a in entry.get("labels", {}).items()},
                    {(int(a), int(b)) for a, b in entry.get("R", [])},
                    None if rho is None else {int(a): int(b) for a, b in rho.items()},
                )
            return cls(int(data["width"]), int(data["root"]), nodes)
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed decomposition: {exc}") from None

    @classmethod
    def from_json(cls, text: str) -> "OtimesDecomposition":
        return cls.from_dict(json.loads(text))

    def depths(self) -> dict[int, int]:
        """Depth of every node; raises ``ValueError`` unless the nodes form a tree."""
        if self.root not in self.nodes:
            raise ValueError("root is not a node")
        depth = {self.root: 0}
        stack = [self.root]
        while stack:
            v = stack.pop()
            for c in self.nodes[v].children:
                if c not in self.nodes:
                    raise ValueError(f"node {v} has unknown child {c}")
                if c in depth:
                    raise ValueError(f"node {c} has two parents or lies on a cycle")
                depth[c] = depth[v] + 1
                stack.append(c)
        if len(depth) != len(self.nodes):
            raise ValueError("some nodes are unreachable from the root")
        return depth

    def height(self) -> int:
        return max(self.depths().values())

    def max_outdegree(self) -> int:
        return max(len(node.children) for node in self.nodes.values())


def verify_otimes_decomposition(g: Graph, d: OtimesDecomposition, strong: bool = False) -> bool:
    """Check every node condition; malformed trees raise ``ValueError``."""
    d.depths()
    k = d.width
    root = d.nodes[d.root]
    if set(root.labels) != set(range(g.n)):
        return False
    for node in d.nodes.values():
        if any(not 0 <= a < k for a in node.labels.values()):
            return False
        if any(not 0 <= v < g.n for v in node.labels):
            return False
        if not node.children:
            if len(node.labels) != 1:
                return False
            continue
        rel = symmetrize(node.relation)
        if any(not (0 <= a < k and 0 <= b < k) for a, b in rel):
            return False
        owner: dict[int, int] = {}
        for c in node.children:
            for v in d.nodes[c].labels:
                if v in owner:
                    return False
                owner[v] = c
        if set(owner) != set(node.labels):
            return False
        verts = sorted(owner)
        for i, x in enumerate(verts):
            for y in verts[i + 1:]:
                cx, cy = owner[x], owner[y]
                if cx == cy:
                    continue
                predicted = (d.nodes[cx].labels[x], d.nodes[cy].labels[y]) in rel
                if predicted != g.has_edge(x, y):
                    return False
        if strong:
            if node.rho is None:
                return False
            for x in verts:
                a = d.nodes[owner[x]].labels[x]
                if node.rho.get(a) != node.labels[x]:
                    return False
    return True


def from_cotree(t: CoTerm) -> OtimesDecomposition:
    """Width-1 decomposition mirroring a coterm (``plus``: empty relation, ``times``: full).

    Leaves without a vertex id are numbered left to right.
    """
    nodes: dict[int, DecompositionNode] = {}
    counter = itertools.count()
    leaf_ids = itertools.count()

    def build(node: CoTerm) -> tuple[int, list[int]]:
        nid = next(counter)
        if node.kind == "leaf":
            v = node.vertex if node.vertex is not None else next(leaf_ids)
            nodes[nid] = DecompositionNode(nid, [], {v: 0}, set(), {0: 0})
            return nid, [v]
        entry = DecompositionNode(nid, [], {}, {(0, 0)} if node.kind == "times" else set(), {0: 0})
        nodes[nid] = entry
        verts: list[int] = []
        for c in node.children:
            cid, cv = build(c)
            entry.children.append(cid)
            verts.extend(cv)
        entry.labels = {v: 0 for v in verts}
        return nid, verts

    root, _ = build(t)
    return OtimesDecomposition(1, root, nodes)


def _paths(d: OtimesDecomposition) -> dict[int, list[int]]:
    """Root-to-node path for every node."""
    paths = {d.root: [d.root]}
    stack = [d.root]
    while stack:
        v = stack.pop()
        for c in d.nodes[v].children:
            paths[c] = paths[v] + [c]
            stack.append(c)
    return paths


def strengthen_decomposition(d: OtimesDecomposition, g: Graph) -> OtimesDecomposition:
    """Turn a weak decomposition of width ``k`` and height ``n`` into a strong one.

    The new label of ``x`` at a node of depth ``m`` packs the old labels of
    ``x`` along the root path, root coordinate most significant:
    ``sum(a_i * k**(m - i))``.  Each relabelling drops the last coordinate
    (``c // k``) and each relation compares last coordinates (``c % k``).
    The declared width is ``k**(n+1)``.
    """
    if not verify_otimes_decomposition(g, d, strong=False):
        raise ValueError("input is not a valid decomposition")
    k = d.width
    n = d.height()
    paths = _paths(d)
    nodes: dict[int, DecompositionNode] = {}
    for nid, path in paths.items():
        old = d.nodes[nid]
        labels = {}
        for x in old.labels:
            code = 0
            for step in path:
                code = code * k + d.nodes[step].labels[x]
            labels[x] = code
        nodes[nid] = DecompositionNode(nid, list(old.children), labels, set(), None)
    for nid, node in nodes.items():
        if not node.children:
            node.rho = {}
            continue
        old = d.nodes[nid]
        used = sorted({a for c in node.children for a in nodes[c].labels.values()})
        node.rho = {c: c // k for c in used}
        rel = symmetrize(old.relation)
        node.relation = {(a, b) for a in used for b in used if (a % k, b % k) in rel}
    return OtimesDecomposition(k ** (n + 1), d.root, nodes)


def outdegree_cut_witness(g: Graph, d: OtimesDecomposition, node_id: int) -> CutWitness:
    """Witness that the children of a node plus the outside give parts of a cut.

    Inside vertices keep their child labels; an outside vertex ``x`` gets
    ``k`` plus the code of the set of child labels it sees.  Valid for strong
    decompositions and for width 1, where equal child labels imply equal
    outside neighbourhoods.
    """
    k = d.width
    node = d.nodes[node_id]
    inside: dict[int, int] = {}
    for c in node.children:
        inside.update(d.nodes[c].labels)
    labels = [0] * g.n
    for v in range(g.n):
        if v in inside:
            labels[v] = inside[v]
        else:
            seen = {inside[y] for y in inside if g.has_edge(v, y)}
            labels[v] = k + sum(1 << a for a in seen)
    rel = set(symmetrize(node.relation))
    rel |= {(a, k + code) for a in range(k) for code in range(1 << k) if code >> a & 1}
    parts = [frozenset(d.nodes[c].labels) for c in node.children]
    outside = frozenset(range(g.n)) - frozenset(inside)
    if outside:
        parts.append(outside)
    return CutWitness(k + (1 << k), tuple(labels), symmetrize(rel), tuple(parts))


# --- tiny exhaustive search ------------------------------------------------


def _flat_config(g: Graph, verts: Sequence[int], k: int):
    """First ``(labels, R)`` making a height-1 decomposition of ``g[verts]``, if any."""
    m = len(verts)
    idx = {v: i for i, v in enumerate(verts)}
    local = [mask_of(idx[u] for u in g.neighbors(v) if u in idx) for v in verts]
    for lab, used in _rgs_labelings(m, k):
        for rel, conflict in _relations(lab, used, local, m):
            if not any(conflict):
                return lab, rel
    return None


def find_otimes_decomposition(g: Graph, k: int, height: int = 2) -> OtimesDecomposition | None:
    """Exhaustive search for a weak decomposition of width ``k`` and height at most ``height``.

    Only heights up to 2 and graphs with at most six vertices are supported.
    The first decomposition found in enumeration order is returned.
    """
    if height > 2 or g.n > SEARCH_MAX_N:
        raise BudgetExceeded(f"decomposition search supports height <= 2 and n <= {SEARCH_MAX_N}")
    if k < 1 or g.n == 0:
        return None
    counter = itertools.count()
    nodes: dict[int, DecompositionNode] = {}

    def leaf(v: int, label: int) -> int:
        nid = next(counter)
        nodes[nid] = DecompositionNode(nid, [], {v: label}, set(), None)
        return nid

    def flat(verts: Sequence[int], labels_here: Mapping[int, int], lab, rel) -> int:
        nid = next(counter)
        kids = [leaf(v, lab[i]) for i, v in enumerate(verts)]
        nodes[nid] = DecompositionNode(nid, kids, dict(labels_here), set(rel), None)
        return nid

    if g.n == 1:
        return OtimesDecomposition(k, leaf(0, 0), nodes)
    verts = list(range(g.n))
    found = _flat_config(g, verts, k)
    if found is not None:
        lab, rel = found
        root = flat(verts, {v: 0 for v in verts}, lab, rel)
        return OtimesDecomposition(k, root, nodes)
    if height < 2:
        return None
    for lab, used in _rgs_labelings(g.n, k):
        for rel, conflict in _relations(lab, used, g.adj, g.n):
            comps = component_masks(conflict, g.full_mask)
            inner = []
            for c in comps:
                cv = list(bits(c))
                if len(cv) == 1:
                    inner.append((cv, None))
                    continue
                sub = _flat_config(g, cv, k)
                if sub is None:
                    break
                inner.append((cv, sub))
            else:
                kids = []
                for cv, sub in inner:
                    here = {v: lab[v] for v in cv}
                    if sub is None:
                        kids.append(leaf(cv[0], lab[cv[0]]))
                    else:
                        kids.append(flat(cv, here, *sub))
                nid = next(counter)
                nodes[nid] = DecompositionNode(nid, kids, {v: 0 for v in verts}, set(rel), None)
                return OtimesDecomposition(k, nid, nodes)
    return None
