import random

from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import has_long_induced_cycle
from msorder.generators import (
    clique,
    complete_bipartite,
    cycle,
    edgeless,
    path,
    random_chordal,
    random_graph,
    random_tree,
    split_join,
    star,
)
from msorder.graph import Graph, RootedForest, connected_components, disjoint_union
from msorder.forests import (
    b_set,
    is_chordal,
    is_split_partition,
    normal_spanning_forest,
    perfect_spanning_forest,
    predecessor_edges_hold,
    split_partition,
    successor_classes,
    verify_normal,
    verify_perfect,
)
from msorder.reductions import incidence_split_graph


def test_normal_forest_examples():
    f = normal_spanning_forest(path(3))
    assert f.parent == (-1, 0, 1)
    f = normal_spanning_forest(clique(3))
    assert f.parent == (-1, 0, 1)
    assert f.comparable(0, 2)
    assert len(normal_spanning_forest(disjoint_union(clique(3), clique(3))).roots) == 2


def test_verify_normal_examples():
    assert verify_normal(clique(3), normal_spanning_forest(clique(3)))
    # Root 0 with children 1 and 2: the edge 1-2 joins incomparable vertices.
    assert not verify_normal(clique(3), RootedForest(clique(3), (-1, 0, 0)))
    assert verify_normal(star(3), RootedForest(star(3), (-1, 0, 0, 0)))


def test_b_set_examples():
    f = normal_spanning_forest(clique(3))
    assert b_set(clique(3), f, 0).b_set == frozenset()
    assert b_set(clique(3), f, 0).pred_set == frozenset()
    assert b_set(clique(3), f, 2).b_set == frozenset({0, 1})
    g = path(3)
    assert b_set(g, normal_spanning_forest(g), 2).b_set == frozenset({1})


def test_successor_classes_group_by_b_set():
    g = complete_bipartite(1, 3)
    f = RootedForest(g, (-1, 0, 0, 0))
    assert successor_classes(g, f, 0) == {1: [1, 2, 3]}


def test_chordal_examples():
    assert not is_chordal(cycle(4))
    assert is_chordal(random_tree(12, 5))
    for k, m in [(1, 3), (3, 2), (4, 4)]:
        assert is_chordal(split_join(k, m))


def test_perfect_forest_examples():
    f = perfect_spanning_forest(clique(3))
    assert f is not None and f.height() == 2
    assert perfect_spanning_forest(cycle(4)) is None
    triangle = incidence_split_graph(Graph(2, [(0, 1)]))
    assert perfect_spanning_forest(triangle).height() == 2


def test_verify_perfect_examples():
    for seed in range(50):
        g = random_chordal(random.Random(seed).randint(1, 10), seed)
        f = perfect_spanning_forest(g)
        assert verify_perfect(g, f) and predecessor_edges_hold(g, f)
    c4 = cycle(4)
    assert not verify_perfect(c4, normal_spanning_forest(c4))
    assert verify_perfect(Graph(1), RootedForest(Graph(1), (-1,)))


def test_split_examples():
    p = split_partition(split_join(3, 4))
    assert p.clique_side == frozenset(range(3)) and p.independent_side == frozenset(range(3, 7))
    assert split_partition(cycle(4)) is None
    p = split_partition(clique(4))
    assert p.clique_side == frozenset(range(4)) and p.independent_side == frozenset()
    assert split_partition(edgeless(3)) is not None


def _brute_split(g: Graph) -> bool:
    return any(
        is_split_partition(g, [v for v in range(g.n) if mask >> v & 1], [v for v in range(g.n) if not mask >> v & 1])
        for mask in range(1 << g.n)
    )


@given(st.integers(0, 7), st.floats(0, 1), st.integers(0, 2**20))
@settings(max_examples=80, deadline=None)
def test_split_recognition_matches_brute_force(n, p, seed):
    g = random_graph(n, p, seed)
    assert (split_partition(g) is not None) == _brute_split(g)


@given(st.integers(0, 8), st.floats(0, 1), st.integers(0, 2**20))
@settings(max_examples=60, deadline=None)
def test_chordal_matches_induced_cycle_oracle(n, p, seed):
    g = random_graph(n, p, seed)
    assert is_chordal(g) == (not has_long_induced_cycle(g))


@given(st.integers(0, 10), st.floats(0, 1), st.integers(0, 2**20))
@settings(max_examples=60, deadline=None)
def test_dfs_forest_is_normal(n, p, seed):
    g = random_graph(n, p, seed)
    f = normal_spanning_forest(g)
    assert verify_normal(g, f)
    assert len(f.roots) == len(connected_components(g))


@given(st.integers(1, 10), st.integers(0, 2**20), st.floats(0.1, 0.9))
@settings(max_examples=60, deadline=None)
def test_perfect_forest_on_random_chordal(n, seed, density):
    g = random_chordal(n, seed, density)
    f = perfect_spanning_forest(g)
    assert f is not None and verify_perfect(g, f) and predecessor_edges_hold(g, f)
