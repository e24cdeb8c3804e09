import json

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import brute_sep, isomorphic, to_graph, to_nx
from msorder.decomposition import cut
from msorder.forests import is_split_partition, split_partition
from msorder.generators import clique, cycle, edgeless, path, random_graph
from msorder.graph import BudgetExceeded, Graph, disjoint_union
from msorder.measures import sep
from msorder.reductions import bp_graph, inc_graph, incidence_split_graph, reduction_invariant_report


def _nx_subdivision(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(("v", v) for v in range(g.n))
    for u, v in g.edges:
        h.add_edge(("v", u), ("e", u, v))
        h.add_edge(("v", v), ("e", u, v))
    return h


def _nx_four_layer(g: Graph) -> nx.Graph:
    h = nx.Graph()
    for x in range(g.n):
        nx.add_path(h, [(x, i) for i in range(4)])
    for x, y in g.edges:
        h.add_edge((x, 0), (y, 3))
        h.add_edge((y, 0), (x, 3))
    return h


def test_inc_examples():
    h, p = inc_graph(clique(2))
    assert (h.n, h.m) == (3, 2) and p == frozenset({0, 1})
    h, _ = inc_graph(clique(3))
    assert (h.n, h.m) == (6, 6) and isomorphic(h, cycle(6))
    for n in range(5):
        assert inc_graph(edgeless(n))[0] == edgeless(n)


def test_is_examples():
    assert isomorphic(incidence_split_graph(clique(2)), clique(3))
    h = incidence_split_graph(clique(3))
    assert (h.n, h.m) == (6, 9)
    for n in range(1, 6):
        assert incidence_split_graph(edgeless(n)) == clique(n)


def test_bp_examples():
    h = bp_graph(clique(2))
    assert (h.n, h.m) == (8, 8)
    assert isomorphic(bp_graph(edgeless(3)), disjoint_union(path(4), disjoint_union(path(4), path(4))))
    h = bp_graph(clique(3))
    assert (h.n, h.m) == (12, 15)
    assert nx.is_bipartite(to_nx(h))


def test_report_examples():
    r = reduction_invariant_report(clique(3), 0, "Inc")
    assert {v.name: v.holds for v in r.verdicts}["sep_k0_equal"]
    r = reduction_invariant_report(clique(2), 1, "IS")
    verdicts = {v.name: v for v in r.verdicts}
    assert verdicts["is_split"].holds and verdicts["vertices_form_clique_side"].holds
    assert verdicts["cut_is1_le_inc2"].lhs == cut(clique(3), 1)
    assert verdicts["cut_is1_le_inc2"].holds
    r = reduction_invariant_report(path(3), 2, "BP")
    assert r.ok and not any(v.relation == "<=" for v in r.verdicts)


def test_report_flags_single_edge_upper_bound():
    # Inc(K_2) is P_3: one removal leaves two components while K_2 leaves one.
    r = reduction_invariant_report(clique(2), 1, "Inc")
    verdicts = {v.name: v for v in r.verdicts}
    assert not verdicts["sep_upper_k1"].holds
    assert verdicts["sep_upper_k1"].witness == {"separator": [2], "components": 2}
    assert not r.ok


def test_report_json():
    r = reduction_invariant_report(path(3), 2, "Inc")
    data = json.loads(r.to_json())
    assert data["graph"] == {"n": 3, "m": 2} and data["transform"] == "Inc"
    assert data["ok"] == r.ok
    assert r.to_json() == reduction_invariant_report(path(3), 2, "Inc").to_json()


def test_report_errors():
    with pytest.raises(BudgetExceeded):
        reduction_invariant_report(Graph(9), 1)
    with pytest.raises(BudgetExceeded):
        reduction_invariant_report(path(3), 4)
    with pytest.raises(ValueError):
        reduction_invariant_report(path(3), 1, "Nope")


@given(st.integers(0, 6), st.floats(0, 1), st.integers(0, 2**20))
@settings(max_examples=50, deadline=None)
def test_transforms_match_networkx_constructions(n, p, seed):
    g = random_graph(n, p, seed)
    assert isomorphic(inc_graph(g)[0], to_graph(_nx_subdivision(g)))
    assert isomorphic(bp_graph(g), to_graph(_nx_four_layer(g)))
    h = incidence_split_graph(g)
    assert split_partition(h) is not None
    assert is_split_partition(h, range(g.n), range(g.n, h.n))


@given(st.integers(1, 5), st.floats(0, 1), st.integers(0, 2**20), st.integers(0, 2))
@settings(max_examples=40, deadline=None)
def test_inc_separator_lower_bound(n, p, seed, k):
    g = random_graph(n, p, seed)
    h, _ = inc_graph(g)
    assert sep(g, k) == brute_sep(g, k)
    assert brute_sep(g, k) <= sep(h, k)
    if k == 0:
        assert sep(h, 0) == sep(g, 0)
