import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import isomorphic, to_nx
from msorder.generators import (
    clique,
    complete_bipartite,
    cycle,
    edgeless,
    generate,
    hp,
    path,
    random_chordal,
    random_tree,
    star,
    tree_closure,
)
from msorder.graph import (
    CoTerm,
    Graph,
    PortedGraph,
    cograph_from_coterm,
    complement,
    connected_components,
    disjoint_union,
    induced_subgraph,
    join_with_relation,
    parse_coterm,
    relabel,
    remove_vertices,
)
from msorder.graphio import GraphFormatError, dumps, loads, read_graph, write_graph


@st.composite
def graphs(draw, max_n=8):
    n = draw(st.integers(0, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True) if pairs else st.just([]))
    return Graph(n, chosen)


def test_graph_rejects_loops_and_out_of_range():
    with pytest.raises(ValueError):
        Graph(2, [(0, 0)])
    with pytest.raises(ValueError):
        Graph(2, [(0, 2)])
    with pytest.raises(ValueError):
        Graph(-1)


def test_disjoint_union_examples():
    assert disjoint_union(edgeless(2), edgeless(3)) == edgeless(5)
    g = disjoint_union(clique(3), clique(3))
    assert (g.n, g.m, len(connected_components(g))) == (6, 6, 2)
    assert disjoint_union(Graph(0), path(3)) == path(3)


def test_join_with_relation_examples():
    one = PortedGraph.uniform(Graph(1))
    assert join_with_relation(one, one, []).graph == edgeless(2)
    assert join_with_relation(one, one, [(0, 0)]).graph == clique(2)
    two = PortedGraph.uniform(edgeless(2))
    three = PortedGraph.uniform(edgeless(3))
    assert isomorphic(join_with_relation(two, three, [(0, 0)]).graph, complete_bipartite(2, 3))


def test_join_rejects_label_mismatch():
    with pytest.raises(ValueError):
        join_with_relation(PortedGraph.uniform(Graph(1), 1), PortedGraph.uniform(Graph(1), 2), [])


def test_relabel_maps_ports():
    g = PortedGraph(edgeless(3), 3, (0, 1, 2))
    assert relabel(g, {0: 0, 1: 0, 2: 1}, 2).ports == (0, 0, 1)


def test_complement_examples():
    assert complement(clique(4)) == edgeless(4)
    k33 = complement(disjoint_union(clique(3), clique(3)))
    assert isomorphic(k33, complete_bipartite(3, 3))


def test_induced_and_removal_examples():
    sub, _ = induced_subgraph(clique(5), [0, 2, 4])
    assert sub == clique(3)
    rest, _ = remove_vertices(path(5), [2])
    assert sorted(len(c) for c in connected_components(rest)) == [2, 2]
    assert remove_vertices(path(4), [])[0] == path(4)


def test_components_examples():
    assert sorted(map(sorted, connected_components(edgeless(4)))) == [[0], [1], [2], [3]]
    assert connected_components(Graph(0)) == []


def test_generator_counts():
    g = complete_bipartite(2, 3)
    assert (g.n, g.m) == (5, 6)
    assert (cycle(5).m, path(5).m, star(4).m) == (5, 4, 4)


def test_hp_degree_of_star_vertex():
    for p in range(1, 5):
        g = hp(p)
        assert g.n == 1 + p + p * math.factorial(p)
        assert g.degree(0) == 1 + math.factorial(p)
    assert hp(2).n == 7


def test_tree_closure_two_levels_of_two():
    g = tree_closure([2, 2])
    assert g.n == 7
    # 6 tree edges plus 4 grandparent edges
    assert g.m == 10
    assert g.degree(0) == 6


def test_generate_dispatch():
    assert generate("complete_bipartite", "2", "3") == complete_bipartite(2, 3)
    assert generate("complete_multipartite", 1, 1, 1) == clique(3)
    assert isomorphic(generate("cograph", "(1+1)*(1+1+1)"), complete_bipartite(2, 3))
    with pytest.raises(ValueError):
        generate("nope", 1)
    with pytest.raises(ValueError):
        generate("clique")


def test_random_generators_are_seeded():
    assert random_tree(9, 4) == random_tree(9, 4)
    assert random_chordal(9, 4) == random_chordal(9, 4)
    t = random_tree(12, 1, max_degree=3)
    assert t.m == 11 and max(t.degree(v) for v in range(t.n)) <= 3


def test_coterm_examples():
    assert isomorphic(cograph_from_coterm("(1+1)*(1+1+1)"), complete_bipartite(2, 3))
    assert cograph_from_coterm("1") == Graph(1)
    assert cograph_from_coterm("1*1*1*1") == clique(4)
    assert parse_coterm("(1+1)*1").kind == "times"
    with pytest.raises(ValueError):
        CoTerm("plus", ())


@pytest.mark.parametrize("text", ["graph 2\nedge 0 0\n", "graph x\n", "edge 0 1\n", "graph 2\nedge 0 5\n"])
def test_graph_format_errors(text):
    with pytest.raises(GraphFormatError):
        loads(text)


def test_ported_round_trip():
    g = PortedGraph(path(3), 2, (0, 1, 0))
    assert loads(dumps(g)) == g


def test_file_round_trip(tmp_path):
    g = complete_bipartite(2, 3)
    write_graph(g, tmp_path / "g.txt")
    assert read_graph(tmp_path / "g.txt") == g


@given(graphs())
def test_text_round_trip(g):
    assert loads(dumps(g)) == g
    assert dumps(loads(dumps(g))) == dumps(g)


@given(graphs())
def test_complement_is_an_involution(g):
    assert complement(complement(g)) == g
    assert g.m + complement(g).m == g.n * (g.n - 1) // 2


@given(graphs())
@settings(max_examples=60)
def test_components_match_networkx(g):
    import networkx as nx

    ours = sorted(sorted(c) for c in connected_components(g))
    theirs = sorted(sorted(c) for c in nx.connected_components(to_nx(g)))
    assert ours == theirs
