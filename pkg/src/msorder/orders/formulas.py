"""Reusable formula pieces for the order builders.

All helpers return formulas whose free individual variables are exactly the
arguments they are given.  Bound variables get fresh names so helpers can be
nested freely.
"""

from __future__ import annotations

import itertools

from ..mso.orders import _instance
from ..mso.syntax import (
    And,
    Eq,
    Exists,
    ExistsSet,
    Forall,
    ForallSet,
    Formula,
    Iff,
    Implies,
    In,
    Inc,
    Not,
    Or,
    truth,
)

_counter = itertools.count()


def fresh(base: str = "z") -> str:
    """A variable name that no hand-written formula in this package uses."""
    return f"{base}{next(_counter)}"


def reset_names() -> None:
    """Restart fresh-name numbering so that builders emit identical text on every run."""
    global _counter
    _counter = itertools.count()


def false() -> Formula:
    return Not(truth())


def neq(a: str, b: str) -> Formula:
    return Not(Eq(a, b))


def in_set(x: str, name: str) -> Formula:
    return In(x, name)


def vertex(x: str) -> Formula:
    """In a ceil structure: ``x`` is a vertex (no element is incident to it)."""
    z = fresh()
    return Not(Exists(z, Inc(z, x)))


def ends(e: str, a: str, b: str) -> Formula:
    """``a`` and ``b`` are the two distinct endpoints of the edge element ``e``."""
    return And((Inc(a, e), Inc(b, e), neq(a, b)))


def adjacent(u: str, v: str) -> Formula:
    """Adjacency of two vertices in a ceil structure."""
    e = fresh("e")
    return And((neq(u, v), Exists(e, And((Inc(u, e), Inc(v, e))))))


def edge_in(u: str, v: str, name: str) -> Formula:
    """Some edge joining ``u`` and ``v`` belongs to the parameter ``name``."""
    e = fresh("e")
    return And((neq(u, v), Exists(e, And((In(e, name), Inc(u, e), Inc(v, e))))))


def incident_to(u: str, name: str) -> Formula:
    """``u`` is an endpoint of some edge in ``name``."""
    e = fresh("e")
    return Exists(e, And((In(e, name), Inc(u, e))))


def reach_avoid(a: str, b: str, c: str, step, domain=None) -> Formula:
    """``b`` is reachable from ``a`` by ``step`` moves that never enter ``c``.

    ``step(p, q)`` builds the one-step formula.  ``domain(z)``, when given,
    restricts the closure set; it must hold for every element on such a walk.
    """
    big = fresh("X")
    p, q, z = fresh("p"), fresh("q"), fresh()
    premise = [In(a, big), Not(In(c, big))]
    if domain is not None:
        premise.insert(0, Forall(z, Implies(In(z, big), domain(z))))
    closed = Forall(p, Forall(q, Implies(And((In(p, big), step(p, q), neq(q, c))), In(q, big))))
    premise.append(closed)
    return ForallSet(big, Implies(And(tuple(premise)), In(b, big)))


def instance(phi: Formula, a: str, b: str, x: str = "x", y: str = "y") -> Formula:
    """``phi(a, b)`` for a formula with free ``x, y``."""
    if (a, b) == (x, y):
        return phi
    return _instance(phi, x, y, a, b)


def strict(phi: Formula, a: str, b: str) -> Formula:
    return And((instance(phi, a, b), neq(a, b)))


def ceil_wrapper(vertex_order: Formula) -> Formula:
    """Extend an order on vertices to the whole ceil universe.

    Vertices come first.  Edges follow, compared by their earlier endpoint
    and then by their later endpoint.
    """
    ea, eb, ec, ed = fresh("a"), fresh("b"), fresh("c"), fresh("d")
    lt = lambda u, v: strict(vertex_order, u, v)  # noqa: E731
    edge_cmp = Or(
        (
            Eq("x", "y"),
            Exists(
                ea,
                Exists(
                    eb,
                    And(
                        (
                            ends("x", ea, eb),
                            lt(ea, eb),
                            Exists(
                                ec,
                                Exists(
                                    ed,
                                    And(
                                        (
                                            ends("y", ec, ed),
                                            lt(ec, ed),
                                            Or((lt(ea, ec), And((Eq(ea, ec), lt(eb, ed))))),
                                        )
                                    ),
                                ),
                            ),
                        )
                    ),
                ),
            ),
        )
    )
    vx, vy = vertex("x"), vertex("y")
    return Or(
        (
            And((vx, vy, vertex_order)),
            And((vx, Not(vy))),
            And((Not(vx), Not(vy), edge_cmp)),
        )
    )


def relativize(f: Formula, name: str) -> Formula:
    """Restrict ``inc`` atoms and individual quantifiers to members of ``name``."""
    if isinstance(f, Inc):
        return And((f, In(f.y, name)))
    if isinstance(f, Forall):
        return Forall(f.var, Implies(In(f.var, name), relativize(f.body, name)))
    if isinstance(f, Exists):
        return Exists(f.var, And((In(f.var, name), relativize(f.body, name))))
    if isinstance(f, (ForallSet, ExistsSet)):
        return type(f)(f.var, relativize(f.body, name))
    if isinstance(f, Not):
        return Not(relativize(f.arg, name))
    if isinstance(f, (And, Or)):
        return type(f)(tuple(relativize(a, name) for a in f.args))
    if isinstance(f, (Implies, Iff)):
        return type(f)(relativize(f.left, name), relativize(f.right, name))
    return f

