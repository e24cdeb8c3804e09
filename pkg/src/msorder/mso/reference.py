"""Naive reference evaluator, written independently of the compiled one.

Sets are frozensets, relations are looked up as pairs, set quantifiers walk
every subset.  No memoisation, no pruning.  Used as a test oracle only.
"""

from __future__ import annotations

import itertools

from .structure import Structure
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


def _subsets(n: int):
    elems = range(n)
    for r in range(n + 1):
        for combo in itertools.combinations(elems, r):
            yield frozenset(combo)


def reference_evaluate(s: Structure, f: Formula, env: dict) -> bool:
    """``env`` maps individual variables to element indices and set variables to frozensets."""
    if isinstance(f, Eq):
        return env[f.x] == env[f.y]
    if isinstance(f, Edg):
        return (env[f.x], env[f.y]) in s.relations.get("edg", frozenset())
    if isinstance(f, Inc):
        return (env[f.x], env[f.y]) in s.relations.get("inc", frozenset())
    if isinstance(f, In):
        return env[f.x] in env[f.set_var]
    if isinstance(f, Card):
        return len(env[f.set_var]) % f.q == 0
    if isinstance(f, Pred):
        return env[f.x] in s.unary.get(f.name, frozenset())
    if isinstance(f, Not):
        return not reference_evaluate(s, f.arg, env)
    if isinstance(f, And):
        return all(reference_evaluate(s, a, env) for a in f.args)
    if isinstance(f, Or):
        return any(reference_evaluate(s, a, env) for a in f.args)
    if isinstance(f, Implies):
        return (not reference_evaluate(s, f.left, env)) or reference_evaluate(s, f.right, env)
    if isinstance(f, Iff):
        return reference_evaluate(s, f.left, env) == reference_evaluate(s, f.right, env)
    if isinstance(f, (Forall, Exists)):
        results = (reference_evaluate(s, f.body, {**env, f.var: e}) for e in range(s.size))
        return all(results) if isinstance(f, Forall) else any(results)
    if isinstance(f, (ForallSet, ExistsSet)):
        results = (reference_evaluate(s, f.body, {**env, f.var: x}) for x in _subsets(s.size))
        return all(results) if isinstance(f, ForallSet) else any(results)
    raise TypeError(f"not a formula node: {f!r}")


def reference_relation(s: Structure, f: Formula, params: dict, x: str = "x", y: str = "y") -> frozenset:
    return frozenset(
        (a, b)
        for a in range(s.size)
        for b in range(s.size)
        if reference_evaluate(s, f, {**params, x: a, y: b})
    )
