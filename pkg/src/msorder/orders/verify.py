"""Certificate verification and class-level condition checks."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Mapping

from ..decomposition import cotree_stats
from ..forests import verify_normal, verify_perfect
from ..graph import Graph, RootedForest, parse_coterm
from ..mso.evaluate import SET_QUANTIFIER_MAX, order_of_rows, relation_rows
from ..mso.structure import encode
from ..mso.syntax import FormulaSyntaxError, free_variables, parse_formula
from .certificate import OrderCertificate, PreconditionError


@dataclass(frozen=True)
class VerificationReport:
    ok: bool
    reason: str = ""
    checks: Mapping[str, bool] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"ok": self.ok, "reason": self.reason, "checks": dict(self.checks)}


def _forest_from_trace(g: Graph, trace: Mapping[str, Any]) -> RootedForest:
    parent = [-1] * g.n
    for child, par in trace.get("parent", {}).items():
        parent[_vertex_id(child)] = _vertex_id(par)
    return RootedForest(g, tuple(parent))


def _vertex_id(name: str) -> int:
    if not name.startswith("v:"):
        raise ValueError(f"{name!r} is not a vertex element")
    return int(name[2:])


def _rebuild(g: Graph, cert: OrderCertificate) -> OrderCertificate:
    from .traced import order_chordal, order_cograph, order_minor_free

    t = cert.trace
    if cert.scheme == "MinorFree":
        return order_minor_free(g, int(t["p"]), int(t["d"]), check=False)
    if cert.scheme == "Chordal":
        return order_chordal(g, int(t["s"]), check=False)
    if cert.scheme == "Cograph":
        return order_cograph(g, int(t["d"]), check=False)
    raise ValueError(f"scheme {cert.scheme} has no trace rebuild")


def _structural_checks(g: Graph, cert: OrderCertificate) -> dict[str, bool]:
    checks: dict[str, bool] = {}
    if cert.scheme == "MinorFree":
        f = _forest_from_trace(g, cert.trace)
        checks["forest_normal"] = verify_normal(g, f)
        bound = int(cert.trace["class_bound"])
        checks["class_bound"] = all(
            len(c) <= bound for classes in cert.trace["sibling_classes"].values() for c in classes
        )
    elif cert.scheme == "Chordal":
        f = _forest_from_trace(g, cert.trace)
        checks["forest_perfect"] = verify_perfect(g, f)
    elif cert.scheme == "Cograph":
        t = parse_coterm(cert.trace["cotree"])
        checks["outdegree"] = cotree_stats(t)[1] <= int(cert.trace["d"])
    return checks


def verify_certificate(g: Graph, cert: OrderCertificate, max_universe: int = SET_QUANTIFIER_MAX) -> VerificationReport:
    """Check a certificate against ``g``.

    With a formula: the formula under the parameters must define a linear order
    equal to the declared one.  Without: the trace must match a fresh rebuild
    and pass its structural checks.
    """
    checks: dict[str, bool] = {}
    s = encode(g, cert.universe)
    try:
        order = [s.index(name) for name in cert.order]
        params = {k: [s.index(name) for name in v] for k, v in cert.params.items()}
    except ValueError as exc:
        return VerificationReport(False, str(exc), {"names": False})
    checks["permutation"] = sorted(order) == list(range(s.size))
    if not checks["permutation"]:
        return VerificationReport(False, "order is not a permutation of the universe", checks)
    if cert.formula is not None:
        try:
            phi = parse_formula(cert.formula)
        except FormulaSyntaxError as exc:
            return VerificationReport(False, f"formula does not parse: {exc}", checks)
        ind, sets = free_variables(phi)
        missing = sorted(sets - set(params))
        if missing or not ind <= {"x", "y"}:
            return VerificationReport(False, f"formula has unassigned variables {missing or sorted(ind)}", checks)
        rows = relation_rows(s, phi, params, max_universe=max_universe)
        defined = order_of_rows(rows)
        checks["linear_order"] = defined is not None
        checks["table_equals_order"] = defined == order
        if defined is None:
            return VerificationReport(False, "formula does not define a linear order", checks)
        if defined != order:
            return VerificationReport(False, "defined order differs from the declared order", checks)
        return VerificationReport(True, "", checks)
    if cert.scheme in ("TreeBoundedDegree", "BipartiteSupergraph", "Multipartite", "Split"):
        return VerificationReport(False, f"{cert.scheme} certificates must carry a formula", checks)
    try:
        checks.update(_structural_checks(g, cert))
        fresh = _rebuild(g, cert)
    except (PreconditionError, KeyError, ValueError) as exc:
        return VerificationReport(False, f"trace does not check: {exc}", checks)
    mine, theirs = fresh.to_dict(), cert.to_dict()
    mine.pop("verified")
    theirs.pop("verified")
    checks["trace_matches_rebuild"] = mine == theirs
    if not all(checks.values()):
        failed = sorted(k for k, v in checks.items() if not v)
        return VerificationReport(False, f"failed checks: {', '.join(failed)}", checks)
    return VerificationReport(True, "", checks)


# --- class-level conditions -------------------------------------------------


@dataclass(frozen=True)
class ConditionVerdict:
    name: str
    holds: bool
    instance: str


@dataclass(frozen=True)
class ClassReport:
    kind: str
    verdicts: tuple[ConditionVerdict, ...]

    @property
    def holds(self) -> bool:
        return all(v.holds for v in self.verdicts)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "holds": self.holds,
            "verdicts": [{"name": v.name, "holds": v.holds, "instance": v.instance} for v in self.verdicts],
        }


def check_class_conditions(family: Mapping[str, Any], s: int, d: int | None = None) -> ClassReport:
    """Instantiate the orderability condition for one member of a family.

    ``family`` is one of
    ``{"kind": "multipartite", "shape": [m_0, ...]}``,
    ``{"kind": "split", "classes": [[n, m], ...]}`` (independent vertices
    sharing a clique neighbourhood of size ``n``, ``m`` of them), or
    ``{"kind": "cograph", "coterm": "..."}`` together with ``d``.
    """
    kind = family.get("kind")
    verdicts: list[ConditionVerdict] = []
    if kind == "multipartite":
        shape = [int(m) for m in family["shape"]]
        if not shape or min(shape) < 1:
            raise ValueError("shape needs positive part sizes")
        big, total = max(shape), sum(shape)
        bound = 2 ** (s * (total - big + 1))
        verdicts.append(
            ConditionVerdict("largest_part", big <= bound, f"M={big} <= 2^({s}*({total}-{big}+1)) = {bound}")
        )
    elif kind == "split":
        for n, m in family["classes"]:
            bound = 2 ** (s * (int(n) + 1))
            verdicts.append(
                ConditionVerdict(
                    f"class_n{n}", int(m) <= bound, f"m={m} <= 2^({s}*({n}+1)) = {bound}"
                )
            )
    elif kind == "cograph":
        if d is None:
            raise ValueError("cograph condition needs d")
        t = parse_coterm(family["coterm"]) if isinstance(family["coterm"], str) else family["coterm"]
        out = cotree_stats(t)[1]
        verdicts.append(ConditionVerdict("outdegree", out <= d, f"outdegree={out} <= d={d}"))
    else:
        raise ValueError(f"unknown family kind {kind!r}")
    return ClassReport(str(kind), tuple(verdicts))
