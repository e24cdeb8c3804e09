"""MSO formula syntax: AST, S-expression parser, printer, and syntactic helpers.

Grammar::

    f ::= (and f f+) | (or f f+) | (not f) | (implies f f) | (iff f f)
        | (forall v f) | (exists v f) | (forallset V f) | (existsset V f)
        | (= v v) | (edg v v) | (inc v v) | (in v V) | (card NAT V) | (pred NAME v)

Individual variables match ``[a-z][a-z0-9]*`` and set variables
``[A-Z][A-Za-z0-9]*``.  ``forall``/``exists`` followed by a set variable are
read as ``forallset``/``existsset``; the printer always writes the latter.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Union

IND_RE = re.compile(r"[a-z][a-z0-9]*\Z")
SET_RE = re.compile(r"[A-Z][A-Za-z0-9]*\Z")
NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")

Span = tuple[int, int]


class FormulaSyntaxError(ValueError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} at position {pos}")
        self.pos = pos


# --- AST ---------------------------------------------------------------------


@dataclass(frozen=True)
class And:
    args: tuple["Formula", ...]
    span: Span | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Or:
    args: tuple["Formula", ...]
    span: Span | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Not:
    arg: "Formula"
    span: Span | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Implies:
    left: "Formula"
    right: "Formula"
    span: Span | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Iff:
    left: "Formula"
    right: "Formula"
    span: Span | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Forall:
    var: str
    body: "Formula"
    span: Span | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Exists:
    var: str
    body: "Formula"
    span: Span | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class ForallSet:
    var: str
    body: "Formula"
    span: Span | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class ExistsSet:
    var: str
    body: "Formula"
    span: Span | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Eq:
    x: str
    y: str
    span: Span | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Edg:
    x: str
    y: str
    span: Span | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Inc:
    x: str
    y: str
    span: Span | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class In:
    x: str
    set_var: str
    span: Span | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Card:
    q: int
    set_var: str
    span: Span | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if self.q < 1:
            raise ValueError("card needs q >= 1")


@dataclass(frozen=True)
class Pred:
    name: str
    x: str
    span: Span | None = field(default=None, compare=False, repr=False)


Formula = Union[And, Or, Not, Implies, Iff, Forall, Exists, ForallSet, ExistsSet, Eq, Edg, Inc, In, Card, Pred]

IND_QUANTIFIERS = (Forall, Exists)
SET_QUANTIFIERS = (ForallSet, ExistsSet)
QUANTIFIERS = IND_QUANTIFIERS + SET_QUANTIFIERS
BINARY_ATOMS = {"=": Eq, "edg": Edg, "inc": Inc}
_KEYWORD = {
    And: "and", Or: "or", Not: "not", Implies: "implies", Iff: "iff",
    Forall: "forall", Exists: "exists", ForallSet: "forallset", ExistsSet: "existsset",
    Eq: "=", Edg: "edg", Inc: "inc", In: "in", Card: "card", Pred: "pred",
}


# --- parser ------------------------------------------------------------------

_TOKEN = re.compile(r"\(|\)|[^\s()]+")


def _tokenize(text: str) -> list[tuple[str, int]]:
    return [(m.group(), m.start()) for m in _TOKEN.finditer(text)]


def parse_formula(text: str) -> Formula:
    tokens = _tokenize(text)
    i = 0

    def peek() -> tuple[str, int]:
        if i >= len(tokens):
            raise FormulaSyntaxError("unexpected end of input", len(text))
        return tokens[i]

    def take() -> tuple[str, int]:
        nonlocal i
        tok = peek()
        i += 1
        return tok

    def expect(tok: str) -> int:
        got, pos = take()
        if got != tok:
            raise FormulaSyntaxError(f"expected {tok!r}, found {got!r}", pos)
        return pos

    def ind_var() -> str:
        tok, pos = take()
        if not IND_RE.match(tok):
            raise FormulaSyntaxError(f"{tok!r} is not an individual variable", pos)
        return tok

    def set_var() -> str:
        tok, pos = take()
        if not SET_RE.match(tok):
            raise FormulaSyntaxError(f"{tok!r} is not a set variable", pos)
        return tok

    def formula() -> Formula:
        start = expect("(")
        head, hpos = take()
        if head in ("and", "or"):
            args = [formula(), formula()]
            while peek()[0] != ")":
                args.append(formula())
            node_cls = And if head == "and" else Or
            node = node_cls(tuple(args))
        elif head == "not":
            node = Not(formula())
        elif head in ("implies", "iff"):
            left, right = formula(), formula()
            node = (Implies if head == "implies" else Iff)(left, right)
        elif head in ("forall", "exists") and SET_RE.match(peek()[0]):
            # An uppercase variable makes this a set quantifier.
            v = set_var()
            node = (ForallSet if head == "forall" else ExistsSet)(v, formula())
        elif head in ("forall", "exists"):
            v = ind_var()
            node = (Forall if head == "forall" else Exists)(v, formula())
        elif head in ("forallset", "existsset"):
            v = set_var()
            node = (ForallSet if head == "forallset" else ExistsSet)(v, formula())
        elif head in BINARY_ATOMS:
            node = BINARY_ATOMS[head](ind_var(), ind_var())
        elif head == "in":
            x = ind_var()
            node = In(x, set_var())
        elif head == "card":
            tok, pos = take()
            if not tok.isdigit() or int(tok) < 1:
                raise FormulaSyntaxError(f"card needs a positive integer, found {tok!r}", pos)
            node = Card(int(tok), set_var())
        elif head == "pred":
            tok, pos = take()
            if not NAME_RE.match(tok):
                raise FormulaSyntaxError(f"bad predicate name {tok!r}", pos)
            node = Pred(tok, ind_var())
        else:
            raise FormulaSyntaxError(f"unknown operator {head!r}", hpos)
        end = expect(")")
        return _with_span(node, (start, end + 1))

    if not tokens:
        raise FormulaSyntaxError("empty formula", 0)
    result = formula()
    if i != len(tokens):
        raise FormulaSyntaxError(f"trailing input {tokens[i][0]!r}", tokens[i][1])
    return result


def _with_span(node: Formula, span: Span) -> Formula:
    object.__setattr__(node, "span", span)
    return node


# --- printing ----------------------------------------------------------------


def to_text(f: Formula) -> str:
    kw = _KEYWORD[type(f)]
    if isinstance(f, (And, Or)):
        return f"({kw} " + " ".join(to_text(a) for a in f.args) + ")"
    if isinstance(f, Not):
        return f"(not {to_text(f.arg)})"
    if isinstance(f, (Implies, Iff)):
        return f"({kw} {to_text(f.left)} {to_text(f.right)})"
    if isinstance(f, QUANTIFIERS):
        return f"({kw} {f.var} {to_text(f.body)})"
    if isinstance(f, (Eq, Edg, Inc)):
        return f"({kw} {f.x} {f.y})"
    if isinstance(f, In):
        return f"(in {f.x} {f.set_var})"
    if isinstance(f, Card):
        return f"(card {f.q} {f.set_var})"
    return f"(pred {f.name} {f.x})"


# --- syntactic helpers ---------------------------------------------------


def children(f: Formula) -> tuple[Formula, ...]:
    if isinstance(f, (And, Or)):
        return f.args
    if isinstance(f, Not):
        return (f.arg,)
    if isinstance(f, (Implies, Iff)):
        return (f.left, f.right)
    if isinstance(f, QUANTIFIERS):
        return (f.body,)
    return ()


def quantifier_rank(f: Formula) -> int:
    """Maximal nesting of quantifiers, individual and set quantifiers alike."""
    inner = max((quantifier_rank(c) for c in children(f)), default=0)
    return inner + 1 if isinstance(f, QUANTIFIERS) else inner


def size(f: Formula) -> int:
    return 1 + sum(size(c) for c in children(f))


def free_variables(f: Formula) -> tuple[frozenset[str], frozenset[str]]:
    """``(free individual variables, free set variables)``."""
    if isinstance(f, (Eq, Edg, Inc)):
        return frozenset({f.x, f.y}), frozenset()
    if isinstance(f, In):
        return frozenset({f.x}), frozenset({f.set_var})
    if isinstance(f, Card):
        return frozenset(), frozenset({f.set_var})
    if isinstance(f, Pred):
        return frozenset({f.x}), frozenset()
    ind: set[str] = set()
    sets: set[str] = set()
    for c in children(f):
        ci, cs = free_variables(c)
        ind |= ci
        sets |= cs
    if isinstance(f, IND_QUANTIFIERS):
        ind.discard(f.var)
    elif isinstance(f, SET_QUANTIFIERS):
        sets.discard(f.var)
    return frozenset(ind), frozenset(sets)


def all_variables(f: Formula) -> set[str]:
    out: set[str] = set()
    if isinstance(f, (Eq, Edg, Inc)):
        out |= {f.x, f.y}
    elif isinstance(f, In):
        out |= {f.x, f.set_var}
    elif isinstance(f, Card):
        out.add(f.set_var)
    elif isinstance(f, Pred):
        out.add(f.x)
    elif isinstance(f, QUANTIFIERS):
        out.add(f.var)
    for c in children(f):
        out |= all_variables(c)
    return out


def fresh_name(base: str, avoid: Iterable[str]) -> str:
    avoid = set(avoid)
    for i in itertools.count():
        cand = f"{base}{i}"
        if cand not in avoid:
            return cand
    raise AssertionError("unreachable")


def substitute(f: Formula, mapping: Mapping[str, str]) -> Formula:
    """Capture-avoiding renaming of free variables (individual or set)."""
    mapping = {k: v for k, v in mapping.items() if k != v}
    if not mapping:
        return f
    if isinstance(f, (Eq, Edg, Inc)):
        return type(f)(mapping.get(f.x, f.x), mapping.get(f.y, f.y))
    if isinstance(f, In):
        return In(mapping.get(f.x, f.x), mapping.get(f.set_var, f.set_var))
    if isinstance(f, Card):
        return Card(f.q, mapping.get(f.set_var, f.set_var))
    if isinstance(f, Pred):
        return Pred(f.name, mapping.get(f.x, f.x))
    if isinstance(f, (And, Or)):
        return type(f)(tuple(substitute(a, mapping) for a in f.args))
    if isinstance(f, Not):
        return Not(substitute(f.arg, mapping))
    if isinstance(f, (Implies, Iff)):
        return type(f)(substitute(f.left, mapping), substitute(f.right, mapping))
    # quantifier
    inner = {k: v for k, v in mapping.items() if k != f.var}
    var, body = f.var, f.body
    if var in inner.values():
        base = "x" if isinstance(f, IND_QUANTIFIERS) else "X"
        new = fresh_name(base, all_variables(body) | set(inner) | set(inner.values()))
        body = substitute(body, {var: new})
        var = new
    return type(f)(var, substitute(body, inner))


# --- convenience constructors ---------------------------------------------


def conj(*args: Formula) -> Formula:
    flat = [a for a in args if a is not None]
    if len(flat) == 1:
        return flat[0]
    return And(tuple(flat))


def disj(*args: Formula) -> Formula:
    flat = [a for a in args if a is not None]
    if len(flat) == 1:
        return flat[0]
    return Or(tuple(flat))


def forall(vars_: str, body: Formula) -> Formula:
    for v in reversed(vars_.split()):
        body = (ForallSet if SET_RE.match(v) else Forall)(v, body)
    return body


def exists(vars_: str, body: Formula) -> Formula:
    for v in reversed(vars_.split()):
        body = (ExistsSet if SET_RE.match(v) else Exists)(v, body)
    return body


def truth() -> Formula:
    """A closed tautology; the grammar has no constants."""
    return Forall("x", Eq("x", "x"))
