"""Plain-text graph format.

::

    graph 4
    # a comment
    edge 0 1
    edge 1 2
    port 0 1

Edges are written with ``u < v``.  When any ``port`` line is present every
vertex needs one, and the result is a :class:`PortedGraph` with ``k`` equal
to the largest label plus one.
"""

from __future__ import annotations

from .graph import Graph, PortedGraph


class GraphFormatError(ValueError):
    pass


def dumps(g: Graph | PortedGraph) -> str:
    ports = None
    if isinstance(g, PortedGraph):
        ports = g.ports
        g = g.graph
    lines = [f"graph {g.n}"]
    lines += [f"edge {u} {v}" for u, v in g.edge_list]
    if ports is not None:
        lines += [f"port {v} {a}" for v, a in enumerate(ports)]
    return "\n".join(lines) + "\n"


def loads(text: str) -> Graph | PortedGraph:
    n = None
    edges: set[tuple[int, int]] = set()
    ports: dict[int, int] = {}

    def vertex(tok: str, lineno: int) -> int:
        try:
            v = int(tok)
        except ValueError:
            raise GraphFormatError(f"line {lineno}: {tok!r} is not an integer") from None
        if not 0 <= v < n:
            raise GraphFormatError(f"line {lineno}: vertex {v} out of range for n={n}")
        return v

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if n is None:
            if parts[0] != "graph" or len(parts) != 2:
                raise GraphFormatError(f"line {lineno}: expected 'graph <n>'")
            try:
                n = int(parts[1])
            except ValueError:
                raise GraphFormatError(f"line {lineno}: bad vertex count {parts[1]!r}") from None
            if n < 0:
                raise GraphFormatError(f"line {lineno}: negative vertex count")
            continue
        head = parts[0]
        if head == "edge" and len(parts) == 3:
            u, v = vertex(parts[1], lineno), vertex(parts[2], lineno)
            if u >= v:
                raise GraphFormatError(f"line {lineno}: edge must be written with u < v")
            if (u, v) in edges:
                raise GraphFormatError(f"line {lineno}: duplicate edge {u} {v}")
            edges.add((u, v))
        elif head == "port" and len(parts) == 3:
            v = vertex(parts[1], lineno)
            if v in ports:
                raise GraphFormatError(f"line {lineno}: duplicate port for vertex {v}")
            try:
                label = int(parts[2])
            except ValueError:
                raise GraphFormatError(f"line {lineno}: bad port label {parts[2]!r}") from None
            if label < 0:
                raise GraphFormatError(f"line {lineno}: negative port label")
            ports[v] = label
        else:
            raise GraphFormatError(f"line {lineno}: cannot parse {line!r}")
    if n is None:
        raise GraphFormatError("missing 'graph <n>' header")
    g = Graph(n, edges)
    if not ports:
        return g
    if len(ports) != n:
        raise GraphFormatError("port lines must label every vertex")
    k = max(ports.values()) + 1
    return PortedGraph(g, k, tuple(ports[v] for v in range(n)))


def read_graph(path) -> Graph | PortedGraph:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


def write_graph(g: Graph | PortedGraph, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(g))
