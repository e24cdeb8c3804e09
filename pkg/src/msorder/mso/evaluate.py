"""Evaluation of MSO formulas over finite structures.

Formulas are compiled to closures over an environment mapping variable names
to elements (individuals) or bitmasks (sets).  Two optimisations keep set
quantifiers affordable:

* Quantifier nodes are memoised on the values of their free individual
  variables.  Nodes that are equal up to renaming of bound variables share a
  table.  Nodes with free set variables that are quantified inside the
  formula are not memoised.
* Before enumerating subsets for ``forallset X`` (resp. ``existsset X``) the
  body is scanned for literals on ``X`` that any counterexample (resp.
  witness) must satisfy.  Those bits are fixed and only the rest are
  enumerated.  Besides plain ``(in x X)`` literals under connectives, a
  conjunct ``(forall z (implies (in z X) g))`` with ``X`` not free in ``g``
  forces ``X`` to avoid every element where ``g`` fails.

A unary predicate missing from the structure is read as the empty set.
"""

from __future__ import annotations

from typing import Callable, Iterable, Mapping

from ..graph import BudgetExceeded
from .structure import Structure
from .syntax import (
    IND_QUANTIFIERS,
    SET_QUANTIFIERS,
    SET_RE,
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
    children,
    free_variables,
)

SET_QUANTIFIER_MAX = 16

Env = dict
Compiled = Callable[[Env], bool]


class UnboundVariable(ValueError):
    pass


def has_set_quantifier(f: Formula) -> bool:
    return isinstance(f, SET_QUANTIFIERS) or any(has_set_quantifier(c) for c in children(f))


def normalize_valuation(s: Structure, valuation: Mapping | None) -> dict:
    """Map individual variables to element indices and set variables to bitmasks."""
    env = {}
    for name, value in (valuation or {}).items():
        if SET_RE.match(name):
            mask = 0
            for e in value:
                mask |= 1 << s.element(e)
            env[name] = mask
        else:
            env[name] = s.element(value)
    return env


def canonical_key(f: Formula) -> tuple[str, tuple[str, ...]]:
    """Rendering of ``f`` up to bound-variable renaming, plus its free individual variables.

    Free individual variables become ``%0, %1, ...`` in order of first
    occurrence; free set variables keep their names.
    """
    free_order: list[str] = []
    out: list[str] = []

    def name(v: str, bound: dict[str, str]) -> str:
        if v in bound:
            return bound[v]
        if SET_RE.match(v):
            return v
        if v not in free_order:
            free_order.append(v)
        return f"%{free_order.index(v)}"

    def walk(g: Formula, bound: dict[str, str], depth: int) -> None:
        if isinstance(g, (Eq, Edg, Inc)):
            out.append(f"({type(g).__name__} {name(g.x, bound)} {name(g.y, bound)})")
        elif isinstance(g, In):
            out.append(f"(In {name(g.x, bound)} {name(g.set_var, bound)})")
        elif isinstance(g, Card):
            out.append(f"(Card {g.q} {name(g.set_var, bound)})")
        elif isinstance(g, Pred):
            out.append(f"(Pred {g.name} {name(g.x, bound)})")
        elif isinstance(g, IND_QUANTIFIERS + SET_QUANTIFIERS):
            inner = dict(bound)
            inner[g.var] = f"${depth}"
            out.append(f"({type(g).__name__} ")
            walk(g.body, inner, depth + 1)
            out.append(")")
        else:
            out.append(f"({type(g).__name__}")
            for c in children(g):
                out.append(" ")
                walk(c, bound, depth)
            out.append(")")

    walk(f, {}, 0)
    return "".join(out), tuple(free_order)


class Evaluator:
    """Evaluate one formula over one structure under fixed parameter values.

    ``params`` assigns the free set variables (and optionally some
    individuals) once; each call supplies the remaining individual variables.
    """

    def __init__(
        self,
        s: Structure,
        f: Formula,
        params: Mapping | None = None,
        max_universe: int = SET_QUANTIFIER_MAX,
    ):
        self.s = s
        self.formula = f
        self.base = normalize_valuation(s, params)
        self.full = (1 << s.size) - 1
        if has_set_quantifier(f) and s.size > max_universe:
            raise BudgetExceeded(
                f"set quantifiers over {s.size} elements exceed the cap of {max_universe}"
            )
        ind, sets = free_variables(f)
        missing = sorted(v for v in sets if v not in self.base)
        if missing:
            raise UnboundVariable(f"free set variables without a value: {', '.join(missing)}")
        self.free_individuals = ind
        self.params = frozenset(sets)
        self.memo: dict = {}
        self.compiled = self._compile(f, frozenset())

    def __call__(self, assignment: Mapping | None = None) -> bool:
        env = dict(self.base)
        env.update(normalize_valuation(self.s, assignment))
        missing = sorted(v for v in self.free_individuals if v not in env)
        if missing:
            raise UnboundVariable(f"free variables without a value: {', '.join(missing)}")
        return self.compiled(env)

    # -- compilation -------------------------------------------------------

    def _compile(self, f: Formula, bound: frozenset[str]) -> Compiled:
        """``bound`` holds the set variables quantified above ``f`` inside the formula."""
        s = self.s
        if isinstance(f, Eq):
            x, y = f.x, f.y
            return lambda env: env[x] == env[y]
        if isinstance(f, (Edg, Inc)):
            rows = s.row("edg" if isinstance(f, Edg) else "inc")
            x, y = f.x, f.y
            return lambda env: bool(rows[env[x]] >> env[y] & 1)
        if isinstance(f, In):
            x, big = f.x, f.set_var
            return lambda env: bool(env[big] >> env[x] & 1)
        if isinstance(f, Card):
            q, big = f.q, f.set_var
            return lambda env: env[big].bit_count() % q == 0
        if isinstance(f, Pred):
            mask = 0
            for e in s.unary.get(f.name, ()):
                mask |= 1 << e
            x = f.x
            return lambda env: bool(mask >> env[x] & 1)
        if isinstance(f, Not):
            inner = self._compile(f.arg, bound)
            return lambda env: not inner(env)
        if isinstance(f, And):
            parts = [self._compile(a, bound) for a in f.args]

            def conj(env):
                for p in parts:
                    if not p(env):
                        return False
                return True

            return conj
        if isinstance(f, Or):
            parts = [self._compile(a, bound) for a in f.args]

            def disj(env):
                for p in parts:
                    if p(env):
                        return True
                return False

            return disj
        if isinstance(f, Implies):
            left, right = self._compile(f.left, bound), self._compile(f.right, bound)
            return lambda env: (not left(env)) or right(env)
        if isinstance(f, Iff):
            left, right = self._compile(f.left, bound), self._compile(f.right, bound)
            return lambda env: left(env) == right(env)
        if isinstance(f, IND_QUANTIFIERS):
            fn = self._compile_individual(f, bound)
        else:
            fn = self._compile_set(f, bound)
        return self._memoise(f, fn, bound)

    def _memoise(self, f: Formula, fn: Compiled, bound: frozenset[str]) -> Compiled:
        _, sets = free_variables(f)
        if sets & bound:
            return fn
        canon, free_order = canonical_key(f)
        table = self.memo.setdefault(canon, {})

        def cached(env):
            key = tuple(env[v] for v in free_order)
            hit = table.get(key)
            if hit is None:
                hit = table[key] = fn(env)
            return hit

        return cached

    def _compile_individual(self, f: Forall | Exists, bound: frozenset[str]) -> Compiled:
        body = self._compile(f.body, bound)
        var = f.var
        universe = range(self.s.size)
        want = isinstance(f, Exists)

        def quant(env):
            old = env.get(var, _MISSING)
            try:
                for e in universe:
                    env[var] = e
                    if body(env) == want:
                        return want
                return not want
            finally:
                _restore(env, var, old)

        return quant

    def _compile_set(self, f: ForallSet | ExistsSet, bound: frozenset[str]) -> Compiled:
        bound = bound | {f.var}
        body = self._compile(f.body, bound)
        var = f.var
        full = self.full
        universal = isinstance(f, ForallSet)
        # A counterexample to forall needs the body false; a witness for exists needs it true.
        constraints = self._forced(f.body, var, not universal, bound)

        def quant(env):
            ones = zeros = 0
            for c in constraints:
                o, z = c(env)
                ones |= o
                zeros |= z
            if ones & zeros:
                return universal
            free = full & ~ones & ~zeros
            old = env.get(var, _MISSING)
            try:
                sub = free
                while True:
                    env[var] = ones | sub
                    if body(env) != universal:
                        return not universal
                    if sub == 0:
                        return universal
                    sub = (sub - 1) & free
            finally:
                _restore(env, var, old)

        return quant

    def _forced(self, f: Formula, var: str, value: bool, bound: frozenset[str]) -> list[Callable[[Env], tuple[int, int]]]:
        """Necessary conditions on the bits of ``var`` for ``f`` to evaluate to ``value``."""
        if isinstance(f, In) and f.set_var == var:
            x = f.x
            if value:
                return [lambda env: (1 << env[x], 0)]
            return [lambda env: (0, 1 << env[x])]
        if isinstance(f, Not):
            return self._forced(f.arg, var, not value, bound)
        if isinstance(f, And) and value:
            return [c for a in f.args for c in self._forced(a, var, True, bound)]
        if isinstance(f, Or) and not value:
            return [c for a in f.args for c in self._forced(a, var, False, bound)]
        if isinstance(f, Implies) and not value:
            return self._forced(f.left, var, True, bound) + self._forced(f.right, var, False, bound)
        if (
            isinstance(f, Forall)
            and value
            and isinstance(f.body, Implies)
            and isinstance(f.body.left, In)
            and f.body.left.x == f.var
            and f.body.left.set_var == var
            and var not in free_variables(f.body.right)[1]
            and f.var != var
        ):
            z = f.var
            guard = self._compile(f.body.right, bound)
            universe = range(self.s.size)
            full = self.full

            def bounded(env):
                old = env.get(z, _MISSING)
                allowed = 0
                try:
                    for e in universe:
                        env[z] = e
                        if guard(env):
                            allowed |= 1 << e
                finally:
                    _restore(env, z, old)
                return 0, full & ~allowed

            return [bounded]
        return []


_MISSING = object()


def _restore(env: Env, var: str, old) -> None:
    if old is _MISSING:
        env.pop(var, None)
    else:
        env[var] = old


def evaluate(
    s: Structure,
    f: Formula,
    valuation: Mapping | None = None,
    max_universe: int = SET_QUANTIFIER_MAX,
) -> bool:
    valuation = dict(valuation or {})
    sets = {k: v for k, v in valuation.items() if SET_RE.match(k)}
    inds = {k: v for k, v in valuation.items() if not SET_RE.match(k)}
    return Evaluator(s, f, sets, max_universe)(inds)


def relation_rows(
    s: Structure,
    f: Formula,
    params: Mapping | None = None,
    x: str = "x",
    y: str = "y",
    max_universe: int = SET_QUANTIFIER_MAX,
) -> tuple[int, ...]:
    """Row ``a`` has bit ``b`` set iff ``f(a, b)`` holds."""
    ev = Evaluator(s, f, params, max_universe)
    extra = ev.free_individuals - {x, y}
    if extra:
        raise UnboundVariable(f"free variables other than {x}, {y}: {', '.join(sorted(extra))}")
    rows = []
    for a in range(s.size):
        row = 0
        for b in range(s.size):
            if ev({x: a, y: b}):
                row |= 1 << b
        rows.append(row)
    return tuple(rows)


def defined_relation(
    s: Structure,
    f: Formula,
    params: Mapping | None = None,
    x: str = "x",
    y: str = "y",
    max_universe: int = SET_QUANTIFIER_MAX,
) -> frozenset[tuple[int, int]]:
    rows = relation_rows(s, f, params, x, y, max_universe)
    return frozenset((a, b) for a, row in enumerate(rows) for b in range(s.size) if row >> b & 1)


def is_linear_order_rows(rows: Iterable[int]) -> bool:
    """Reflexive, exactly one direction for distinct pairs, and transitive."""
    rows = tuple(rows)
    n = len(rows)
    for a in range(n):
        if not rows[a] >> a & 1:
            return False
        for b in range(a + 1, n):
            if (rows[a] >> b & 1) == (rows[b] >> a & 1):
                return False
    for a in range(n):
        for b in range(n):
            if rows[a] >> b & 1 and rows[b] & ~rows[a]:
                return False
    return True


def order_of_rows(rows: Iterable[int]) -> list[int] | None:
    """Elements listed from least to greatest, or ``None`` if not a linear order."""
    rows = tuple(rows)
    if not is_linear_order_rows(rows):
        return None
    # In a linear order the least element is below everything: largest row first.
    return sorted(range(len(rows)), key=lambda a: -rows[a].bit_count())


def defines_linear_order(
    s: Structure,
    f: Formula,
    params: Mapping | None = None,
    x: str = "x",
    y: str = "y",
    max_universe: int = SET_QUANTIFIER_MAX,
) -> bool:
    return is_linear_order_rows(relation_rows(s, f, params, x, y, max_universe))
