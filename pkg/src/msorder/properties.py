"""Corpus-level property checks used by ``msorder suite``."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, Iterable

from .decomposition import cotree, cut
from .forests import (
    is_chordal,
    normal_spanning_forest,
    perfect_spanning_forest,
    predecessor_edges_hold,
    split_partition,
    verify_normal,
    verify_perfect,
)
from .generators import permute, random_graph
from .graph import BudgetExceeded, CoTerm, Graph, cograph_from_coterm, complement
from .measures import sep
from .orders import PreconditionError, order_chordal, order_cograph, order_minor_free, verify_certificate
from .reductions import inc_graph, incidence_split_graph


@dataclass
class PropertyResult:
    name: str
    passed: int = 0
    failed: int = 0
    skipped: int = 0
    failures: list[int] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "failed": self.failed,
            "skipped": self.skipped,
            "failures": self.failures,
        }


def cotree_rebuilds(g: Graph, t: CoTerm) -> bool:
    """Rebuild from ``t`` and map leaf ``i`` back to the vertex it names."""
    h = cograph_from_coterm(t)
    ids = [leaf.vertex for leaf in t.leaves()]
    return h.n == g.n and permute(h, ids).edges == g.edges


def _check_sep_monotone(g: Graph) -> bool | None:
    values = [sep(g, k) for k in range(min(g.n, 4) + 1)]
    return all(a <= b for a, b in zip(values, values[1:]))


def _check_sep_inc_lower(g: Graph) -> bool | None:
    h, _ = inc_graph(g)
    return all(sep(g, k) <= sep(h, k) for k in range(3))


def _check_cut_complement(g: Graph) -> bool | None:
    if g.n > 7:
        return None
    return cut(g, 1) == cut(complement(g), 1)


def _check_normal_forest(g: Graph) -> bool:
    return verify_normal(g, normal_spanning_forest(g))


def _check_chordal_forest(g: Graph) -> bool | None:
    f = perfect_spanning_forest(g)
    if (f is None) == is_chordal(g):
        return False
    return f is None or (verify_perfect(g, f) and predecessor_edges_hold(g, f))


def _check_is_split(g: Graph) -> bool:
    return split_partition(incidence_split_graph(g)) is not None


def _check_cotree(g: Graph) -> bool | None:
    t = cotree(g)
    if t is None:
        return None
    return cotree_rebuilds(g, t)


def _check_certificates(g: Graph) -> bool | None:
    ran = False
    for build in (
        lambda: order_minor_free(g, 2, max(g.n, 1)),
        lambda: order_chordal(g, 2),
        lambda: order_cograph(g, max(g.n, 1)),
    ):
        try:
            cert = build()
        except (PreconditionError, BudgetExceeded):
            continue
        ran = True
        if not (cert.verified and verify_certificate(g, cert).ok):
            return False
    return True if ran else None


PROPERTIES: dict[str, Callable[[Graph], bool | None]] = {
    "sep_monotone": _check_sep_monotone,
    "sep_inc_lower_bound": _check_sep_inc_lower,
    "cut_complement": _check_cut_complement,
    "dfs_forest_normal": _check_normal_forest,
    "perfect_forest": _check_chordal_forest,
    "is_split": _check_is_split,
    "cotree_round_trip": _check_cotree,
    "trace_certificates": _check_certificates,
}


def default_corpus(seed: int = 0, count: int = 30, max_n: int = 7) -> list[Graph]:
    rng = random.Random(seed)
    return [random_graph(rng.randint(1, max_n), rng.random(), rng.randrange(1 << 30)) for _ in range(count)]


def run_suite(graphs: Iterable[Graph]) -> list[PropertyResult]:
    results = {name: PropertyResult(name) for name in PROPERTIES}
    for i, g in enumerate(graphs):
        for name, check in PROPERTIES.items():
            try:
                verdict = check(g)
            except BudgetExceeded:
                verdict = None
            r = results[name]
            if verdict is None:
                r.skipped += 1
            elif verdict:
                r.passed += 1
            else:
                r.failed += 1
                r.failures.append(i)
    return list(results.values())
