"""Order certificates and their JSON form."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Mapping, Sequence

from ..graph import Graph
from ..mso.structure import Structure, encode

SCHEMES = (
    "TreeBoundedDegree",
    "MinorFree",
    "BipartiteSupergraph",
    "Multipartite",
    "Split",
    "Chordal",
    "Cograph",
)

FORMULA_SCHEMES = ("TreeBoundedDegree", "BipartiteSupergraph", "Multipartite", "Split")


class PreconditionError(ValueError):
    """The input graph is outside the validity domain of a builder."""


@dataclass(frozen=True)
class OrderCertificate:
    """A total order on ``encode(g, universe)`` with the parameters that justify it.

    ``order`` and ``params`` hold element names (``v:3``, ``e:1-4``).
    """

    scheme: str
    universe: str
    order: tuple[str, ...]
    params: Mapping[str, tuple[str, ...]]
    formula: str | None
    trace: Mapping[str, Any] = field(default_factory=dict)
    verified: bool = False

    def __post_init__(self):
        if self.scheme not in SCHEMES:
            raise ValueError(f"unknown scheme {self.scheme!r}")
        if self.universe not in ("floor", "ceil"):
            raise ValueError(f"unknown universe {self.universe!r}")

    def structure(self, g: Graph) -> Structure:
        return encode(g, self.universe)

    def order_indices(self, s: Structure) -> list[int]:
        return [s.index(name) for name in self.order]

    def param_values(self) -> dict[str, list[str]]:
        return {k: list(v) for k, v in self.params.items()}

    def to_dict(self) -> dict:
        return {
            "scheme": self.scheme,
            "universe": self.universe,
            "order": list(self.order),
            "params": {k: list(v) for k, v in sorted(self.params.items())},
            "formula": self.formula,
            "trace": self.trace,
            "verified": self.verified,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=False) + "\n"

    @classmethod
    def from_dict(cls, data: Mapping) -> "OrderCertificate":
        try:
            return cls(
                scheme=data["scheme"],
                universe=data["universe"],
                order=tuple(data["order"]),
                params={k: tuple(v) for k, v in data["params"].items()},
                formula=data.get("formula"),
                trace=data.get("trace", {}),
                verified=bool(data.get("verified", False)),
            )
        except (KeyError, TypeError, AttributeError) as exc:
            raise ValueError(f"malformed certificate: {exc}") from None

    @classmethod
    def from_json(cls, text: str) -> "OrderCertificate":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ValueError(f"certificate is not JSON: {exc}") from None
        return cls.from_dict(data)


def names(s: Structure, elements: Sequence[int]) -> tuple[str, ...]:
    return tuple(s.names[e] for e in elements)


def ceil_order(g: Graph, vertex_order: Sequence[int]) -> list[int]:
    """Vertices in the given order, then edges by their (earlier, later) endpoint pair."""
    pos = {v: i for i, v in enumerate(vertex_order)}

    def key(j: int):
        u, v = g.edge_list[j]
        a, b = sorted((pos[u], pos[v]))
        return a, b

    edges = sorted(range(g.m), key=key)
    return list(vertex_order) + [g.n + j for j in edges]


def binary_codes(count: int, length: int) -> list[frozenset[int]]:
    """Injective codes ``[count] -> subsets of [length]`` ordered by their least difference.

    Code ``j`` holds the positions of the zero bits of ``j`` written with
    ``length`` bits, most significant first.  For ``i < j`` the least
    position in the symmetric difference then belongs to code ``i``.
    """
    if count > 1 << length:
        raise PreconditionError(f"{count} codes do not fit into {length} bits")
    return [
        frozenset(p for p in range(length) if not j >> (length - 1 - p) & 1)
        for j in range(count)
    ]


def finish(cert: OrderCertificate, g: Graph, check: bool) -> OrderCertificate:
    """Run the verifier on a fresh certificate and mark it verified."""
    if not check:
        return cert
    from .verify import verify_certificate

    report = verify_certificate(g, cert)
    if not report.ok:
        raise RuntimeError(f"builder produced an unsound certificate: {report.reason}")
    return OrderCertificate(cert.scheme, cert.universe, cert.order, cert.params, cert.formula, cert.trace, True)
