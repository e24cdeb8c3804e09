"""Seeded random structures and formulas for evaluator cross-checks."""

from __future__ import annotations

import random

from ..generators import random_graph
from .structure import Structure, encode
from .syntax import (
    And,
    Card,
    Edg,
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
    Pred,
)


def random_structure(rng: random.Random, max_size: int = 6) -> Structure:
    """A floor or ceil graph encoding with at most ``max_size`` elements and a unary ``P``."""
    while True:
        n = rng.randint(1, max_size)
        g = random_graph(n, rng.random(), rng.randrange(1 << 30))
        mode = rng.choice(["floor", "ceil"])
        if mode == "ceil" and g.n + g.m > max_size:
            continue
        s = encode(g, mode)
        marked = frozenset(e for e in range(s.size) if rng.random() < 0.5)
        return Structure(s.names, s.relations, {"P": marked}, s.kind, s.graph)


def random_formula(
    rng: random.Random,
    depth: int,
    inds: tuple[str, ...] = ("x", "y"),
    sets: tuple[str, ...] = ("X",),
    binary: str = "edg",
) -> Formula:
    """A random formula of nesting depth at most ``depth`` over the given variables."""
    if depth == 0 or rng.random() < 0.2:
        return _atom(rng, inds, sets, binary)
    kind = rng.choice(["and", "or", "not", "implies", "iff", "q", "q", "qset"])
    sub = lambda: random_formula(rng, depth - 1, inds, sets, binary)  # noqa: E731
    if kind == "and":
        return And((sub(), sub()))
    if kind == "or":
        return Or((sub(), sub()))
    if kind == "not":
        return Not(sub())
    if kind == "implies":
        return Implies(sub(), sub())
    if kind == "iff":
        return Iff(sub(), sub())
    if kind == "q":
        var = rng.choice(["x", "y", "z", "w"])
        body = random_formula(rng, depth - 1, tuple(sorted(set(inds) | {var})), sets, binary)
        return (Forall if rng.random() < 0.5 else Exists)(var, body)
    var = rng.choice(["X", "Y"])
    body = random_formula(rng, depth - 1, inds, tuple(sorted(set(sets) | {var})), binary)
    return (ForallSet if rng.random() < 0.5 else ExistsSet)(var, body)


def _atom(rng: random.Random, inds, sets, binary: str) -> Formula:
    kind = rng.choice(["eq", "rel", "rel", "in", "in", "card", "pred"])
    a, b = rng.choice(inds), rng.choice(inds)
    if kind == "eq":
        return Eq(a, b)
    if kind == "rel":
        return (Edg if binary == "edg" else Inc)(a, b)
    if kind == "in":
        return In(a, rng.choice(sets))
    if kind == "card":
        return Card(rng.randint(1, 3), rng.choice(sets))
    return Pred("P", a)


def random_instance(rng: random.Random, max_size: int = 6, depth: int = 4):
    """``(structure, formula, valuation)`` with every free variable assigned."""
    s = random_structure(rng, max_size)
    binary = "edg" if s.kind == "floor" else "inc"
    f = random_formula(rng, depth, binary=binary)
    valuation = {
        "x": rng.randrange(s.size),
        "y": rng.randrange(s.size),
        "X": [e for e in range(s.size) if rng.random() < 0.5],
    }
    return s, f, valuation
