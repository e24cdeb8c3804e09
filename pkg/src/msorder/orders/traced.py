"""Order builders justified by a checkable trace rather than a formula.

The minor-free and chordal schemes order a spanning forest lexicographically,
ranking siblings by their B-sets and then by a per-class index carried by
marker parameters.  The cograph scheme lists cotree leaves in child order.
"""

from __future__ import annotations

from typing import Sequence

from ..decomposition import cotree, cotree_stats
from ..forests import b_set_mask, chain_order, normal_spanning_forest, perfect_spanning_forest, successor_classes
from ..generators import complete_bipartite
from ..graph import CoTerm, Graph, RootedForest
from ..measures import has_minor, sep
from ..mso.structure import edge_element, encode, vertex_name
from .certificate import OrderCertificate, PreconditionError, binary_codes, ceil_order, finish, names


def _forest_preorder(f: RootedForest, roots: Sequence[int], child_order) -> list[int]:
    out: list[int] = []
    stack = list(reversed(roots))
    while stack:
        v = stack.pop()
        out.append(v)
        stack.extend(reversed(child_order(v)))
    return out


def _forest_edges(st, f: RootedForest) -> list[int]:
    return sorted(edge_element(st, u, v) for u, v in f.tree_edges())


def _vnames(vs) -> list[str]:
    return [vertex_name(v) for v in vs]


# --- graphs without a K_{p,p} minor ------------------------------------------


def lex_key(f: RootedForest, mask: int) -> tuple[int, ...]:
    """A ⪯_F-chain as the depths of its elements, root end first."""
    return tuple(f.depth(v) for v in chain_order(f, mask))


def order_minor_free(g: Graph, p: int, d: int, check: bool = True) -> OrderCertificate:
    if p < 1:
        raise PreconditionError("p must be at least 1")
    sp = sep(g, p)
    if sp > d:
        raise PreconditionError(f"sep(G,{p}) = {sp} exceeds d = {d}")
    if has_minor(g, complete_bipartite(p, p)):
        raise PreconditionError(f"graph contains K_{{{p},{p}}} as a minor")
    f = normal_spanning_forest(g)
    roots = sorted(f.roots)
    bound = max(p, d)
    order_of: dict[int, list[int]] = {}
    index: dict[int, int] = {}
    classes_trace = {}
    for x in g.vertices():
        classes = successor_classes(g, f, x)
        for members in classes.values():
            if len(members) > bound:
                raise RuntimeError(f"sibling class of size {len(members)} exceeds max(p, d) = {bound}")
            for i, y in enumerate(members):
                index[y] = i
        ranked = sorted(classes, key=lambda m: lex_key(f, m))
        order_of[x] = [y for m in ranked for y in classes[m]]
        if classes:
            classes_trace[vertex_name(x)] = [_vnames(classes[m]) for m in ranked]
    vorder = _forest_preorder(f, roots, lambda v: order_of[v])
    st = encode(g, "ceil")
    params: dict[str, list[int]] = {"F": _forest_edges(st, f)}
    for i in range(d):
        params[f"Root{i}"] = [roots[i]] if i < len(roots) else []
    for j in range(bound):
        params[f"Idx{j}"] = sorted(y for y, i in index.items() if i == j)
    cert = OrderCertificate(
        scheme="MinorFree",
        universe="ceil",
        order=names(st, ceil_order(g, vorder)),
        params={k: names(st, v) for k, v in params.items()},
        formula=None,
        trace={
            "p": p,
            "d": d,
            "class_bound": bound,
            "parent": {vertex_name(v): vertex_name(q) for v, q in enumerate(f.parent) if q != -1},
            "roots": _vnames(roots),
            "b_sets": {vertex_name(v): _vnames(chain_order(f, b_set_mask(g, f, v))) for v in g.vertices()},
            "sibling_classes": classes_trace,
        },
    )
    return finish(cert, g, check)


# --- chordal graphs ---------------------------------------------------------


def chordal_b_mask(g: Graph, f: RootedForest, u: int) -> int:
    """``{w ⪯_F parent(u) : (w, u) ∈ E}``: the neighbours of ``u`` above it."""
    return g.adj[u] & f.ancestors[u]


def _delta_key(f: RootedForest, chain: Sequence[int], mask: int) -> tuple[int, ...]:
    # Sorting by this key puts B first when the shallowest element of B Δ B' is in B.
    return tuple(1 if mask >> w & 1 else 2 for w in chain)


def order_chordal(g: Graph, s: int, check: bool = True) -> OrderCertificate:
    if s < 0:
        raise PreconditionError("s must be non-negative")
    f = perfect_spanning_forest(g)
    if f is None:
        raise PreconditionError("graph is not chordal")
    roots = sorted(f.roots)
    if len(roots) > 2**s:
        raise PreconditionError(f"{len(roots)} components exceed 2^s = {2**s}")
    st = encode(g, "ceil")
    width = s + 1
    qs: list[list[int]] = [[] for _ in range(width)]
    codes_trace: dict[str, list[int]] = {}
    b_trace: dict[str, list[str]] = {}

    def assign(members: list[int], b_chain: list[int]) -> None:
        n = len(b_chain)
        codes = binary_codes(len(members), width * (n + 1))
        for i, u in enumerate(members):
            codes_trace[vertex_name(u)] = sorted(codes[i])
            for k in range(width):
                for l, a in enumerate(b_chain):
                    if k * (n + 1) + l in codes[i]:
                        qs[k].append(edge_element(st, u, a))
                if k * (n + 1) + n in codes[i]:
                    qs[k].append(u)

    assign(roots, [])
    order_of: dict[int, list[int]] = {}
    for v in g.vertices():
        kids = sorted(f.children[v])
        chain = chain_order(f, f.ancestors[v] | 1 << v)
        groups: dict[int, list[int]] = {}
        for u in kids:
            mask = chordal_b_mask(g, f, u)
            b_trace[vertex_name(u)] = _vnames(chain_order(f, mask))
            groups.setdefault(mask, []).append(u)
        for mask, members in groups.items():
            limit = 2 ** (s * (mask.bit_count() + 1))
            if len(members) > limit:
                raise PreconditionError(
                    f"{len(members)} children of {v} share a B-set of size {mask.bit_count()}; bound is {limit}"
                )
            assign(members, chain_order(f, mask))
        ranked = sorted(groups, key=lambda m: _delta_key(f, chain, m))
        order_of[v] = [u for m in ranked for u in groups[m]]
    vorder = _forest_preorder(f, roots, lambda v: order_of[v])
    params: dict[str, list[int]] = {"F": _forest_edges(st, f), "Roots": roots}
    for k in range(width):
        params[f"Q{k}"] = sorted(qs[k])
    cert = OrderCertificate(
        scheme="Chordal",
        universe="ceil",
        order=names(st, ceil_order(g, vorder)),
        params={k: names(st, v) for k, v in params.items()},
        formula=None,
        trace={
            "s": s,
            "parent": {vertex_name(v): vertex_name(q) for v, q in enumerate(f.parent) if q != -1},
            "roots": _vnames(roots),
            "b_sets": b_trace,
            "codes": codes_trace,
        },
    )
    return finish(cert, g, check)


# --- cographs ---------------------------------------------------------------


def cotree_leaf_paths(t: CoTerm) -> list[tuple[int, tuple[int, ...]]]:
    """``(vertex, child-index path)`` for every leaf, in left-to-right order."""
    out: list[tuple[int, tuple[int, ...]]] = []

    def walk(node: CoTerm, path: tuple[int, ...]) -> None:
        if node.kind == "leaf":
            out.append((node.vertex, path))
            return
        for i, c in enumerate(node.children):
            walk(c, path + (i,))

    walk(t, ())
    return out


def coterm_text(t: CoTerm) -> str:
    """Fully parenthesised term over ``1``, ``+`` and ``*`` (vertex ids dropped)."""
    if t.kind == "leaf":
        return "1"
    op = "+" if t.kind == "plus" else "*"
    return "(" + op.join(coterm_text(c) for c in t.children) + ")"


def order_cograph(g: Graph, d: int, check: bool = True) -> OrderCertificate:
    if g.n == 0:
        raise PreconditionError("the empty graph has no cotree")
    t = cotree(g)
    if t is None:
        raise PreconditionError("graph is not a cograph")
    height, outdegree = cotree_stats(t)
    if outdegree > d:
        raise PreconditionError(f"cotree outdegree {outdegree} exceeds d = {d}")
    paths = cotree_leaf_paths(t)
    vorder = [v for v, _ in paths]
    markers: list[list[int]] = [[] for _ in range(d)]
    for v, path in paths:
        if path:
            markers[path[-1]].append(v)
    st = encode(g, "floor")
    cert = OrderCertificate(
        scheme="Cograph",
        universe="floor",
        order=names(st, vorder),
        params={f"C{i}": names(st, sorted(m)) for i, m in enumerate(markers)},
        formula=None,
        trace={
            "d": d,
            "cotree": coterm_text(t),
            "height": height,
            "outdegree": outdegree,
            "paths": {vertex_name(v): list(path) for v, path in paths},
        },
    )
    return finish(cert, g, check)

