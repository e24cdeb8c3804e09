"""Incidence, incidence-split and four-layer bipartite transforms, with
pointwise checks of the separator and cut inequalities that relate them.

Transformed graphs number the original vertices first (same ids) and then the
edge-elements in ``(min, max)`` edge order.  ``BP`` numbers ``(x, i)`` as
``4 * x + i``.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field

from .decomposition import CUT_MAX_N, cut
from .forests import is_split_partition, split_partition
from .graph import BudgetExceeded, Graph
from .measures import sep, sep_witness

REPORT_MAX_N = 8
REPORT_MAX_K = 3


def inc_graph(g: Graph) -> tuple[Graph, frozenset[int]]:
    """Incidence graph on ``V ∪ E`` and the marker set ``P = V``."""
    edges = []
    for j, (u, v) in enumerate(g.edge_list):
        edges.append((u, g.n + j))
        edges.append((v, g.n + j))
    return Graph(g.n + g.m, edges), frozenset(range(g.n))


def incidence_split_graph(g: Graph) -> Graph:
    """The incidence graph plus a clique on the original vertices."""
    inc, _ = inc_graph(g)
    clique = itertools.combinations(range(g.n), 2)
    return Graph(inc.n, list(inc.edges) + list(clique))


def bp_graph(g: Graph) -> Graph:
    """Four copies ``(x, 0..3)`` of each vertex joined in a path, and
    ``(x, 0)-(y, 3)`` and ``(y, 0)-(x, 3)`` for every edge ``xy``."""
    edges = [(4 * x + i, 4 * x + i + 1) for x in range(g.n) for i in range(3)]
    for x, y in g.edge_list:
        edges.append((4 * x, 4 * y + 3))
        edges.append((4 * y, 4 * x + 3))
    h = Graph(4 * g.n, edges)
    if any((u - v) % 2 == 0 for u, v in h.edges):
        raise RuntimeError("BP(G) is not bipartite by coordinate parity")
    return h


@dataclass(frozen=True)
class Measurement:
    measure: str
    k: int
    base: int
    transformed: int
    transform: str


@dataclass(frozen=True)
class Verdict:
    """``lhs <= rhs`` (or ``==``) over recorded values."""

    name: str
    lhs: int
    rhs: int
    relation: str = "<="
    witness: dict = field(default_factory=dict)

    @property
    def holds(self) -> bool:
        return self.lhs <= self.rhs if self.relation == "<=" else self.lhs == self.rhs


@dataclass(frozen=True)
class ReductionReport:
    n: int
    m: int
    transform: str
    measured: tuple[Measurement, ...]
    verdicts: tuple[Verdict, ...]

    @property
    def ok(self) -> bool:
        return all(v.holds for v in self.verdicts)

    def to_dict(self) -> dict:
        return {
            "graph": {"n": self.n, "m": self.m},
            "transform": self.transform,
            "measured": [m.__dict__ for m in self.measured],
            "verdicts": [
                {"name": v.name, "lhs": v.lhs, "relation": v.relation, "rhs": v.rhs, "holds": v.holds, "witness": v.witness}
                for v in self.verdicts
            ],
            "ok": self.ok,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"


def _sep_witness_dict(g: Graph, k: int) -> dict:
    w = sep_witness(g, k)
    return {"separator": list(w.separator), "components": w.value}


def reduction_invariant_report(g: Graph, k: int, transform: str = "Inc") -> ReductionReport:
    """Measure ``g`` and its transform and instantiate the applicable inequalities.

    ``Inc``: ``Sep(G,j) <= Sep(Inc(G),j) <= Sep(G,j) + j(j-1)/2`` for ``j <= k``.
    ``IS``: split recognition, and ``Cut(IS(G),1) <= Cut(Inc(G),2)`` and
    ``Cut(Inc(G),1) <= Cut(IS(G),2)`` when both fit the exact-cut budget.
    ``BP``: separator values are recorded; no inequality is asserted.
    """
    if g.n > REPORT_MAX_N or k > REPORT_MAX_K or k < 0:
        raise BudgetExceeded(f"reports need n <= {REPORT_MAX_N} and 0 <= k <= {REPORT_MAX_K}")
    measured: list[Measurement] = []
    verdicts: list[Verdict] = []
    if transform == "Inc":
        h, _ = inc_graph(g)
        for j in range(k + 1):
            base, lifted = sep(g, j), sep(h, j)
            measured.append(Measurement("sep", j, base, lifted, "Inc"))
            verdicts.append(Verdict(f"sep_lower_k{j}", base, lifted, "<=", {} if base <= lifted else _sep_witness_dict(g, j)))
            slack = j * (j - 1) // 2
            verdicts.append(
                Verdict(f"sep_upper_k{j}", lifted, base + slack, "<=", {} if lifted <= base + slack else _sep_witness_dict(h, j))
            )
            if j == 0:
                verdicts.append(Verdict("sep_k0_equal", lifted, base, "=="))
    elif transform == "IS":
        h = incidence_split_graph(g)
        part = split_partition(h)
        verdicts.append(Verdict("is_split", int(part is not None), 1, "=="))
        natural = is_split_partition(h, range(g.n), range(g.n, h.n))
        verdicts.append(Verdict("vertices_form_clique_side", int(natural), 1, "=="))
        inc, _ = inc_graph(g)
        if inc.n <= CUT_MAX_N:
            c_is1, c_is2 = cut(h, 1), cut(h, 2)
            c_inc1, c_inc2 = cut(inc, 1), cut(inc, 2)
            measured += [
                Measurement("cut", 1, c_inc1, c_is1, "Inc->IS"),
                Measurement("cut", 2, c_inc2, c_is2, "Inc->IS"),
            ]
            verdicts.append(Verdict("cut_is1_le_inc2", c_is1, c_inc2))
            verdicts.append(Verdict("cut_inc1_le_is2", c_inc1, c_is2))
    elif transform == "BP":
        h = bp_graph(g)
        verdicts.append(Verdict("bp_vertices", h.n, 4 * g.n, "=="))
        verdicts.append(Verdict("bp_edges", h.m, 3 * g.n + 2 * g.m, "=="))
        for j in range(k + 1):
            if h.n <= 16:
                measured.append(Measurement("sep", j, sep(g, j), sep(h, j), "BP"))
    else:
        raise ValueError(f"unknown transform {transform!r}")
    return ReductionReport(g.n, g.m, transform, tuple(measured), tuple(verdicts))
