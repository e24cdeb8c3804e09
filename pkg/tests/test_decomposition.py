import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import has_induced_p4
from msorder.decomposition import (
    DecompositionNode,
    OtimesDecomposition,
    cotree,
    cotree_stats,
    cut,
    cut_witness,
    find_otimes_decomposition,
    from_cotree,
    is_cograph,
    module_cut_witness,
    outdegree_cut_witness,
    rebuild_from_witness,
    separator_cut_witness,
    strengthen_decomposition,
    verify_cut_witness,
    verify_otimes_decomposition,
)
from msorder.generators import clique, complete_bipartite, path, random_graph
from msorder.graph import BudgetExceeded, CoTerm, Graph, disjoint_union


def test_cotree_examples():
    t = cotree(complete_bipartite(2, 3))
    assert t.kind == "times"
    assert t.canonical() == "((1+1)*(1+1+1))"
    assert cotree(Graph(1)).kind == "leaf"
    assert cotree(path(4)) is None
    assert cotree(Graph(0)) is None


def test_cotree_stats_examples():
    assert cotree_stats(cotree(complete_bipartite(2, 3))) == (2, 3)
    assert cotree_stats(CoTerm.leaf()) == (0, 0)
    for n in range(2, 6):
        assert cotree_stats(cotree(clique(n))) == (1, n)


def test_cut_examples():
    for n in range(1, 6):
        assert cut(clique(n), 1) == n
    assert cut(disjoint_union(clique(3), clique(3)), 1) == 2
    assert cut(complete_bipartite(2, 3), 2) == 5


def test_module_witness_lower_bound():
    g = complete_bipartite(2, 3)
    w = module_cut_witness(g, [[2], [3], [4]], join=False)
    assert verify_cut_witness(g, w)
    assert w.value == 4
    assert cut(g, 3) >= 4


def test_separator_witness_is_valid():
    g = complete_bipartite(2, 3)
    w = separator_cut_witness(g, [0, 1])
    assert verify_cut_witness(g, w)
    assert w.value == 5


def test_cut_budget():
    with pytest.raises(BudgetExceeded):
        cut(Graph(11), 1)
    with pytest.raises(BudgetExceeded):
        cut(Graph(3), 4)


def _k2_decomposition(relation):
    nodes = {
        0: DecompositionNode(0, [1, 2], {0: 0, 1: 0}, relation, {0: 0}),
        1: DecompositionNode(1, [], {0: 0}, set(), {0: 0}),
        2: DecompositionNode(2, [], {1: 0}, set(), {0: 0}),
    }
    return OtimesDecomposition(1, 0, nodes)


def test_hand_built_decompositions():
    k2 = clique(2)
    assert verify_otimes_decomposition(k2, _k2_decomposition({(0, 0)}))
    assert not verify_otimes_decomposition(k2, _k2_decomposition(set()))


def test_decomposition_json_round_trip():
    d = from_cotree(cotree(complete_bipartite(2, 3)))
    assert OtimesDecomposition.from_json(d.to_json()).to_dict() == d.to_dict()
    with pytest.raises(ValueError):
        OtimesDecomposition.from_dict({"width": 1})


def test_malformed_tree_is_rejected():
    d = _k2_decomposition({(0, 0)})
    d.nodes[1].children.append(0)
    with pytest.raises(ValueError):
        d.depths()


def test_strengthen_examples():
    k2 = clique(2)
    s = strengthen_decomposition(_k2_decomposition({(0, 0)}), k2)
    assert verify_otimes_decomposition(k2, s, strong=True) and s.width <= 1
    g = complete_bipartite(2, 3)
    d = find_otimes_decomposition(g, 2, 2)
    assert d is not None and d.width == 2
    s = strengthen_decomposition(d, g)
    assert verify_otimes_decomposition(g, s, strong=True)
    assert s.width <= 2 ** (d.height() + 1) <= 8


def test_outdegree_witness_on_cotree_nodes():
    g = complete_bipartite(2, 3)
    d = from_cotree(cotree(g))
    for nid, node in d.nodes.items():
        if node.children:
            w = outdegree_cut_witness(g, d, nid)
            assert verify_cut_witness(g, w)
            assert w.value >= len(node.children)


def test_search_budget():
    with pytest.raises(BudgetExceeded):
        find_otimes_decomposition(Graph(7), 1)


@given(st.integers(0, 7), st.floats(0, 1), st.integers(0, 2**20))
@settings(max_examples=60, deadline=None)
def test_cograph_recognition_matches_p4_oracle(n, p, seed):
    g = random_graph(n, p, seed)
    assert is_cograph(g) == (not has_induced_p4(g))


@given(st.integers(1, 6), st.floats(0, 1), st.integers(0, 2**20), st.integers(1, 2))
@settings(max_examples=40, deadline=None)
def test_cut_witness_rebuilds_graph(n, p, seed, k):
    g = random_graph(n, p, seed)
    w = cut_witness(g, k)
    assert verify_cut_witness(g, w)
    assert rebuild_from_witness(g, w) == g
    assert w.value == cut(g, k)
    assert cut(g, k) <= cut(g, k + 1)


@given(st.integers(1, 7), st.floats(0, 1), st.integers(0, 2**20))
@settings(max_examples=40, deadline=None)
def test_cotree_translation_is_a_valid_decomposition(n, p, seed):
    g = random_graph(n, p, seed)
    t = cotree(g)
    if t is None:
        return
    d = from_cotree(t)
    assert verify_otimes_decomposition(g, d)
    s = strengthen_decomposition(d, g)
    assert verify_otimes_decomposition(g, s, strong=True)
