"""Order builders that come with an explicit ordering formula.

Each builder fixes the parameter sets, computes the order they induce, and
writes down a formula ``phi(x, y; params)`` defining that order.  The
certificate is marked ``verified`` only after the evaluator has confirmed it.
"""

from __future__ import annotations

from typing import Sequence

from ..forests import split_partition
from ..graph import Graph, complement, connected_components, is_connected
from ..mso.structure import edge_element, encode, vertex_name
from ..mso.syntax import And, Edg, Eq, Exists, Forall, Formula, Iff, Implies, In, Inc, Not, Or, conj, disj, to_text
from .certificate import OrderCertificate, PreconditionError, binary_codes, ceil_order, finish, names
from .formulas import (
    adjacent,
    ceil_wrapper,
    edge_in,
    false,
    fresh,
    incident_to,
    neq,
    reach_avoid,
    relativize,
    reset_names,
    vertex,
)


# --- trees ------------------------------------------------------------------


def tree_embedding(t: Graph) -> tuple[list[int], list[int | None], list[list[int]]]:
    """Root at vertex 0; returns (preorder, parent, children) with children by id."""
    parent: list[int | None] = [None] * t.n
    children: list[list[int]] = [[] for _ in range(t.n)]
    seen = {0}
    stack = [0]
    while stack:
        v = stack.pop()
        for w in t.neighbors(v):
            if w not in seen:
                seen.add(w)
                parent[w] = v
                children[v].append(w)
                stack.append(w)
    for c in children:
        c.sort()
    preorder: list[int] = []
    stack = [0]
    while stack:
        v = stack.pop()
        preorder.append(v)
        stack.extend(reversed(children[v]))
    return preorder, parent, children


def tree_order_formula(d: int) -> Formula:
    """Lexicographic order of a tree whose child indices are marked by ``P0..P{d-1}``."""
    marks = [f"P{i}" for i in range(d)]

    def root(r: str) -> Formula:
        return conj(*[Not(In(r, m)) for m in marks]) if marks else Eq(r, r)

    def step(p: str, q: str) -> Formula:
        return Edg(p, q)

    def below(a: str, b: str) -> Formula:
        r = fresh("r")
        return Or((Eq(a, b), Exists(r, And((root(r), Or((Eq(a, r), Not(reach_avoid(r, b, a, step)))))))))

    def sibling(u: str, v: str) -> Formula:
        p = fresh("p")
        return And((neq(u, v), Exists(p, And((Edg(p, u), Edg(p, v), below(p, u), below(p, v))))))

    u0, v0 = fresh("u"), fresh("v")
    index_less = [And((In(u0, marks[i]), In(v0, marks[k]))) for k in range(d) for i in range(k)]
    if not index_less:
        return below("x", "y")
    branch = Exists(
        u0,
        Exists(v0, And((below(u0, "x"), below(v0, "y"), sibling(u0, v0), disj(*index_less)))),
    )
    return Or((below("x", "y"), branch))


def order_tree_bounded_degree(t: Graph, d: int, check: bool = True) -> OrderCertificate:
    if t.n == 0 or not is_connected(t) or t.m != t.n - 1:
        raise PreconditionError("input is not a tree")
    if d < 0 or any(t.degree(v) > d for v in t.vertices()):
        raise PreconditionError(f"maximum degree exceeds {d}")
    reset_names()
    preorder, parent, children = tree_embedding(t)
    marks: list[list[int]] = [[] for _ in range(d)]
    index = {}
    for v in t.vertices():
        for i, c in enumerate(children[v]):
            marks[i].append(c)
            index[c] = i
    s = encode(t, "floor")
    phi = tree_order_formula(d)
    cert = OrderCertificate(
        scheme="TreeBoundedDegree",
        universe="floor",
        order=names(s, preorder),
        params={f"P{i}": names(s, sorted(m)) for i, m in enumerate(marks)},
        formula=to_text(phi),
        trace={
            "root": vertex_name(0),
            "parent": {vertex_name(v): vertex_name(p) for v, p in enumerate(parent) if p is not None},
            "child_index": {vertex_name(v): i for v, i in sorted(index.items())},
        },
    )
    return finish(cert, t, check)


# --- supergraphs of complete bipartite graphs -------------------------------


def _check_bipartite_base(g: Graph, a_side: Sequence[int], b_side: Sequence[int]) -> None:
    a, b = set(a_side), set(b_side)
    if a & b or a | b != set(g.vertices()) or len(a) + len(b) != g.n:
        raise PreconditionError("the two sides must partition the vertex set")
    for u in a:
        for v in b:
            if not g.has_edge(u, v):
                raise PreconditionError(f"missing base edge ({u},{v})")


def bipartite_vertex_formula(n: int, t: int) -> Formula:
    """Order on vertices from ``A, B, S, R0..R{t-1}`` (before relativisation)."""
    rs = [f"R{k}" for k in range(t)]

    def in_a(z: str) -> Formula:
        return In(z, "A")

    def in_b(z: str) -> Formula:
        return In(z, "B")

    def less_a(u: str, v: str) -> Formula:
        z = fresh("z")
        return And((neq(u, v), Forall(z, Implies(in_b(z), Implies(edge_in(u, z, "S"), edge_in(v, z, "S"))))))

    def differs(z: str, k: int, u: str, v: str) -> Formula:
        return Iff(edge_in(z, u, rs[k]), Not(edge_in(z, v, rs[k])))

    def less_b(u: str, v: str) -> Formula:
        if n == 0:
            cases = []
            for k in range(t):
                same = [Iff(In(u, rs[j]), In(v, rs[j])) for j in range(k)]
                cases.append(conj(*same, In(u, rs[k]), Not(In(v, rs[k]))))
            return And((neq(u, v), disj(*cases))) if cases else false()
        cases = []
        for k in range(t):
            same = []
            for j in range(k):
                z = fresh("z")
                same.append(Forall(z, Implies(in_a(z), Not(differs(z, j, u, v)))))
            z, w = fresh("z"), fresh("z")
            least = Forall(w, Implies(And((in_a(w), less_a(w, z))), Not(differs(w, k, u, v))))
            first = Exists(z, And((in_a(z), differs(z, k, u, v), least, edge_in(z, u, rs[k]))))
            cases.append(conj(*same, first))
        return And((neq(u, v), disj(*cases)))

    x, y = "x", "y"
    return Or(
        (
            And((in_a(x), in_a(y), Or((Eq(x, y), less_a(x, y))))),
            And((in_a(x), in_b(y))),
            And((in_b(x), in_b(y), Or((Eq(x, y), less_b(x, y))))),
        )
    )


def order_bipartite_supergraph(
    g: Graph,
    a_side: Sequence[int],
    b_side: Sequence[int],
    s: int,
    r: int,
    check: bool = True,
) -> OrderCertificate:
    """Order a supergraph of ``K_{n,m}`` with sides ``a_side`` (size n) and ``b_side`` (size m)."""
    _check_bipartite_base(g, a_side, b_side)
    n, m = len(a_side), len(b_side)
    if s < 0 or r < 0:
        raise PreconditionError("s and r must be non-negative")
    if not n <= m <= 2 ** (s * n + r):
        raise PreconditionError(f"need n <= m <= 2^(sn+r); got n={n}, m={m}, 2^(sn+r)={2 ** (s * n + r)}")
    reset_names()
    t = s + r
    st = encode(g, "ceil")
    # a_i by descending id, so that the defined order lists A by ascending id.
    a = sorted(a_side, reverse=True)
    b = sorted(b_side)
    edge = lambda u, v: edge_element(st, u, v)  # noqa: E731
    params: dict[str, list[int]] = {"A": sorted(a), "B": list(b)}
    params["S"] = sorted(edge(a[i], b[j]) for i in range(n) for j in range(m) if i <= j)
    if n == 0:
        codes = binary_codes(m, t)
        for k in range(t):
            params[f"R{k}"] = sorted(b[j] for j in range(m) if k in codes[j])
    else:
        # Position k*n + i; significance runs over k, then over i descending (the A order).
        length = t * n
        rank = {(k, i): k * n + (n - 1 - i) for k in range(t) for i in range(n)}
        codes = binary_codes(m, length)
        for k in range(t):
            params[f"R{k}"] = sorted(
                edge(a[i], b[j]) for i in range(n) for j in range(m) if rank[(k, i)] in codes[j]
            )
    base_edges = [edge(u, v) for u in a for v in b]
    params["Zp"] = sorted(list(g.vertices()) + base_edges)
    vorder = sorted(a) + b
    phi = ceil_wrapper(relativize(bipartite_vertex_formula(n, t), "Zp"))
    cert = OrderCertificate(
        scheme="BipartiteSupergraph",
        universe="ceil",
        order=names(st, ceil_order(g, vorder)),
        params={k: names(st, v) for k, v in params.items()},
        formula=to_text(phi),
        trace={
            "a_enumeration": [vertex_name(v) for v in a],
            "b_enumeration": [vertex_name(v) for v in b],
            "code_length": t * n if n else t,
            "codes": {vertex_name(b[j]): sorted(c) for j, c in enumerate(codes)},
        },
    )
    return finish(cert, g, check)


# --- complete multipartite graphs -------------------------------------------


def multipartite_parts(g: Graph) -> list[list[int]] | None:
    """Parts of a complete multipartite graph (non-adjacency classes), or ``None``."""
    comps = connected_components(complement(g))
    parts = [sorted(c) for c in comps]
    for i, p in enumerate(parts):
        for u in p:
            for v in p:
                if u < v and g.has_edge(u, v):
                    return None
        for q in parts[i + 1 :]:
            for u in p:
                for v in q:
                    if not g.has_edge(u, v):
                        return None
    return parts


def multipartite_vertex_formula() -> Formula:
    def rep(r: str) -> Formula:
        return incident_to(r, "R")

    def same_part(u: str, v: str) -> Formula:
        return Or((Eq(u, v), Not(adjacent(u, v))))

    def start(r: str) -> Formula:
        e, w = fresh("e"), fresh("w")
        return And((rep(r), Forall(e, Implies(In(e, "S0"), Exists(w, And((Inc(w, e), same_part(w, r))))))))

    def rep_step(p: str, q: str) -> Formula:
        return edge_in(p, q, "R")

    def rep_le(r1: str, r2: str) -> Formula:
        st = fresh("r")
        return Or(
            (
                Eq(r1, r2),
                Exists(st, And((start(st), Or((Eq(st, r1), Not(reach_avoid(st, r2, r1, rep_step, rep))))))),
            )
        )

    def part_le(u: str, v: str) -> Formula:
        r1, r2 = fresh("r"), fresh("r")
        return Exists(
            r1,
            Exists(r2, And((rep(r1), rep(r2), same_part(u, r1), same_part(v, r2), rep_le(r1, r2)))),
        )

    def in_first(u: str) -> Formula:
        r1 = fresh("r")
        return Exists(r1, And((start(r1), same_part(u, r1))))

    x, y = "x", "y"
    z = fresh("z")
    first_le = Forall(z, Implies(edge_in(y, z, "S0"), edge_in(x, z, "S0")))
    z2 = fresh("z")
    earlier = And((part_le(z2, x), Not(same_part(z2, x))))
    later_le = Forall(z2, Implies(And((earlier, edge_in(z2, x, "S"))), edge_in(z2, y, "S")))
    within = Or((And((in_first(x), first_le)), And((Not(in_first(x)), later_le))))
    return Or((And((part_le(x, y), Not(same_part(x, y)))), And((same_part(x, y), within))))


def order_multipartite(g: Graph, parts: Sequence[Sequence[int]] | None = None, check: bool = True) -> OrderCertificate:
    found = multipartite_parts(g)
    if found is None:
        raise PreconditionError("graph is not complete multipartite")
    if parts is not None:
        given = sorted(sorted(p) for p in parts)
        if given != sorted(found):
            raise PreconditionError("given parts do not match the graph")
    # Largest part first; ties by smallest vertex.
    ordered = sorted(found, key=lambda p: (-len(p), p[0]))
    d = len(ordered)
    sizes = [len(p) for p in ordered]
    if d <= 2:
        raise PreconditionError("need more than two parts")
    if sizes[0] > sum(sizes[1:]):
        raise PreconditionError(f"largest part {sizes[0]} exceeds the rest {sum(sizes[1:])}")
    reset_names()
    st = encode(g, "ceil")
    edge = lambda u, v: edge_element(st, u, v)  # noqa: E731
    b = [v for p in ordered[1:] for v in p]
    params = {
        "R": sorted(edge(ordered[k][0], ordered[k + 1][0]) for k in range(d - 1)),
        "S": sorted(
            edge(ordered[k][i], ordered[k + 1][j])
            for k in range(d - 1)
            for i in range(sizes[k])
            for j in range(sizes[k + 1])
            if i <= j
        ),
        "S0": sorted(edge(ordered[0][i], b[j]) for i in range(sizes[0]) for j in range(len(b)) if i <= j),
    }
    vorder = [v for p in ordered for v in p]
    phi = ceil_wrapper(multipartite_vertex_formula())
    cert = OrderCertificate(
        scheme="Multipartite",
        universe="ceil",
        order=names(st, ceil_order(g, vorder)),
        params={k: names(st, v) for k, v in params.items()},
        formula=to_text(phi),
        trace={"parts": [[vertex_name(v) for v in p] for p in ordered], "b_enumeration": [vertex_name(v) for v in b]},
    )
    return finish(cert, g, check)


# --- split graphs -----------------------------------------------------------


def split_vertex_formula(s: int) -> Formula:
    qs = [f"Q{k}" for k in range(s)]

    def in_a(z: str) -> Formula:
        return And((vertex(z), Or((In(z, "P"), incident_to(z, "P")))))

    def chain_step(p: str, q: str) -> Formula:
        return edge_in(p, q, "P")

    def le_a(u: str, v: str) -> Formula:
        r = fresh("r")
        start = And((In(r, "P"), vertex(r)))
        return Or(
            (Eq(u, v), Exists(r, And((start, Or((Eq(r, u), Not(reach_avoid(r, v, u, chain_step, in_a))))))))
        )

    def nb(a: str, b: str) -> Formula:
        return And((in_a(a), adjacent(a, b)))

    def same_nb(u: str, v: str) -> Formula:
        z = fresh("z")
        return Forall(z, Implies(in_a(z), Iff(adjacent(z, u), adjacent(z, v))))

    def nb_less(u: str, v: str) -> Formula:
        z, w = fresh("z"), fresh("z")
        sym = lambda t: And((in_a(t), Iff(adjacent(t, u), Not(adjacent(t, v)))))  # noqa: E731
        return Exists(z, And((nb(z, u), Not(adjacent(z, v)), Forall(w, Implies(sym(w), le_a(z, w))))))

    def coded(b: str, a: str, k: int) -> Formula:
        return edge_in(b, a, qs[k])

    def code_less(u: str, v: str) -> Formula:
        cases = []
        for k in range(s):
            same = []
            for j in range(k):
                z = fresh("z")
                same.append(Forall(z, Implies(nb(z, u), Iff(coded(u, z, j), coded(v, z, j)))))
                same.append(Iff(In(u, qs[j]), In(v, qs[j])))
            z, w = fresh("z"), fresh("z")
            diff = lambda t: And((nb(t, u), Iff(coded(u, t, k), Not(coded(v, t, k)))))  # noqa: E731
            least = Forall(w, Implies(And((diff(w), le_a(w, z), neq(w, z))), false()))
            first = Exists(z, And((diff(z), least, coded(u, z, k))))
            w2 = fresh("z")
            none = Forall(w2, Not(diff(w2)))
            flag = And((none, In(u, qs[k]), Not(In(v, qs[k]))))
            cases.append(conj(*same, Or((first, flag))))
        return disj(*cases) if cases else false()

    x, y = "x", "y"
    b_part = Or((Eq(x, y), And((Not(same_nb(x, y)), nb_less(x, y))), And((same_nb(x, y), code_less(x, y)))))
    return Or(
        (
            And((in_a(x), in_a(y), le_a(x, y))),
            And((in_a(x), Not(in_a(y)))),
            And((Not(in_a(x)), Not(in_a(y)), b_part)),
        )
    )


def split_classes(g: Graph, clique: Sequence[int], independent: Sequence[int]) -> dict[tuple[int, ...], list[int]]:
    a = set(clique)
    classes: dict[tuple[int, ...], list[int]] = {}
    for v in sorted(independent):
        key = tuple(sorted(w for w in g.neighbors(v) if w in a))
        classes.setdefault(key, []).append(v)
    return classes


def order_split(g: Graph, s: int, check: bool = True) -> OrderCertificate:
    part = split_partition(g)
    if part is None:
        raise PreconditionError("graph is not a split graph")
    clique = sorted(part.clique_side)
    indep = sorted(part.independent_side)
    classes = split_classes(g, clique, indep)
    for nb, members in classes.items():
        bound = 2 ** (s * (len(nb) + 1))
        if len(members) > bound:
            raise PreconditionError(
                f"{len(members)} independent vertices share a neighbourhood of size {len(nb)}; bound is {bound}"
            )
    reset_names()
    st = encode(g, "ceil")
    edge = lambda u, v: edge_element(st, u, v)  # noqa: E731
    params: dict[str, list[int]] = {"P": ([clique[0]] if clique else [])}
    params["P"] += [edge(clique[i], clique[i + 1]) for i in range(len(clique) - 1)]
    qs: list[list[int]] = [[] for _ in range(s)]
    codes_trace = {}
    for nb, members in classes.items():
        n = len(nb)
        codes = binary_codes(len(members), s * (n + 1))
        for i, b in enumerate(members):
            codes_trace[vertex_name(b)] = sorted(codes[i])
            for k in range(s):
                for l, a in enumerate(nb):
                    if k * (n + 1) + l in codes[i]:
                        qs[k].append(edge(b, a))
                if k * (n + 1) + n in codes[i]:
                    qs[k].append(b)
    for k in range(s):
        params[f"Q{k}"] = sorted(qs[k])

    def nb_key(nb: tuple[int, ...]):
        # The least element of the symmetric difference belongs to the earlier set.
        return tuple(1 if a in nb else 2 for a in clique)

    border = [b for nb in sorted(classes, key=nb_key) for b in classes[nb]]
    vorder = clique + border
    phi = ceil_wrapper(split_vertex_formula(s))
    cert = OrderCertificate(
        scheme="Split",
        universe="ceil",
        order=names(st, ceil_order(g, vorder)),
        params={k: names(st, sorted(v)) for k, v in params.items()},
        formula=to_text(phi),
        trace={
            "clique_side": [vertex_name(v) for v in clique],
            "independent_side": [vertex_name(v) for v in indep],
            "classes": [[vertex_name(v) for v in classes[nb]] for nb in sorted(classes, key=nb_key)],
            "codes": codes_trace,
        },
    )
    return finish(cert, g, check)
