"""Relational structures encoding graphs.

``floor`` encodes a graph by its vertices and the symmetric ``edg`` relation.
``ceil`` uses vertices followed by edges (in ``(min, max)`` order) as the
universe, with ``inc(v, e)`` when ``v`` is an endpoint of ``e``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

from ..graph import Graph


def vertex_name(v: int) -> str:
    return f"v:{v}"


def edge_name(u: int, v: int) -> str:
    return f"e:{min(u, v)}-{max(u, v)}"


@dataclass(frozen=True, eq=False)
class Structure:
    names: tuple[str, ...]
    relations: Mapping[str, frozenset] = field(default_factory=dict)
    unary: Mapping[str, frozenset] = field(default_factory=dict)
    kind: str = "raw"
    graph: Graph | None = None

    def __post_init__(self):
        size = len(self.names)
        if len(set(self.names)) != size:
            raise ValueError("element names must be distinct")
        for rel, pairs in self.relations.items():
            for a, b in pairs:
                if not (0 <= a < size and 0 <= b < size):
                    raise ValueError(f"relation {rel} mentions a non-element")
        for pred, members in self.unary.items():
            for a in members:
                if not 0 <= a < size:
                    raise ValueError(f"predicate {pred} mentions a non-element")
        index = {name: i for i, name in enumerate(self.names)}
        object.__setattr__(self, "_index", index)
        rows = {}
        for rel, pairs in self.relations.items():
            r = [0] * size
            for a, b in pairs:
                r[a] |= 1 << b
            rows[rel] = tuple(r)
        object.__setattr__(self, "_rows", rows)

    @property
    def size(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self._index[name]  # type: ignore[attr-defined]
        except KeyError:
            raise ValueError(f"no element named {name!r}") from None

    def element(self, e: int | str) -> int:
        if isinstance(e, str):
            return self.index(e)
        if not 0 <= e < self.size:
            raise ValueError(f"element {e} outside the universe")
        return e

    def elements(self, items: Iterable[int | str]) -> frozenset[int]:
        return frozenset(self.element(e) for e in items)

    def row(self, rel: str) -> tuple[int, ...]:
        """Bitmask rows of a binary relation (all zero when the relation is absent)."""
        return self._rows.get(rel, (0,) * self.size)  # type: ignore[attr-defined]

    def holds(self, rel: str, a: int, b: int) -> bool:
        return bool(self.row(rel)[a] >> b & 1)

    @property
    def vertex_count(self) -> int:
        if self.kind == "ceil" and self.graph is not None:
            return self.graph.n
        return self.size

    def is_vertex(self, a: int) -> bool:
        return a < self.vertex_count


def encode(g: Graph, mode: str = "floor") -> Structure:
    if mode == "floor":
        names = tuple(vertex_name(v) for v in range(g.n))
        edg = frozenset(p for u, v in g.edges for p in ((u, v), (v, u)))
        return Structure(names, {"edg": edg}, {}, "floor", g)
    if mode == "ceil":
        names = tuple(vertex_name(v) for v in range(g.n))
        names += tuple(edge_name(u, v) for u, v in g.edge_list)
        inc = set()
        for j, (u, v) in enumerate(g.edge_list):
            inc.add((u, g.n + j))
            inc.add((v, g.n + j))
        return Structure(names, {"inc": frozenset(inc)}, {}, "ceil", g)
    raise ValueError(f"unknown encoding mode {mode!r}")


def edge_element(s: Structure, u: int, v: int) -> int:
    """Universe index of the edge ``{u, v}`` in a ``ceil`` structure."""
    if s.kind != "ceil" or s.graph is None:
        raise ValueError("edge elements exist only in ceil encodings")
    key = (min(u, v), max(u, v))
    try:
        return s.graph.n + s.graph.edge_index[key]
    except KeyError:
        raise ValueError(f"{key} is not an edge") from None
