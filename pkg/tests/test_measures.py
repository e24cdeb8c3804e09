import random
from fractions import Fraction

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import brute_sep, to_nx
from msorder.decomposition import cut
from msorder.generators import (
    clique,
    complete_bipartite,
    complete_multipartite,
    edgeless,
    hp,
    path,
    random_graph,
    random_tree,
    tree_closure,
)
from msorder.graph import BudgetExceeded, Graph, disjoint_union
from msorder.measures import (
    has_minor,
    is_r_sparse,
    max_density,
    sep,
    sep_closed_form,
    sep_witness,
    swap_is_automorphism,
    twin_pair_under_params,
)
from msorder.mso.structure import encode


def test_sep_examples():
    k23 = complete_bipartite(2, 3)
    assert sep(k23, 1) == 1
    assert sep(k23, 2) == 3
    assert sep(disjoint_union(clique(3), clique(3)), 0) == 2
    assert sep(path(5), 1) == 2


def test_sep_witness_examples():
    w = sep_witness(complete_bipartite(2, 3), 2)
    assert w.separator == (0, 1) and w.value == 3
    w = sep_witness(edgeless(3), 0)
    assert w.separator == () and w.value == 3


def test_sep_lower_bound_on_branching_tree():
    g = tree_closure([3, 3])
    w = sep_witness(g, 2)
    assert w.value >= 3
    assert sep(g, 2) == brute_sep(g, 2)


def test_sep_budget():
    with pytest.raises(BudgetExceeded):
        sep(Graph(40), 6)
    with pytest.raises(ValueError):
        sep(path(3), -1)


def test_closed_form_helper():
    assert sep_closed_form([3, 2], 1) == 1
    assert sep_closed_form([3, 2], 2) == 3
    assert sep_closed_form([], 0) == 0


def test_sparseness_examples():
    assert is_r_sparse(complete_bipartite(2, 2), 1)[0]
    assert not is_r_sparse(complete_bipartite(3, 3), 1)[0]
    assert is_r_sparse(edgeless(5), 0)[0]
    ok, witness = is_r_sparse(clique(4), 1)
    assert not ok and witness == frozenset(range(4))
    assert max_density(clique(4))[0] == Fraction(3, 2)


def test_minor_examples():
    k22 = complete_bipartite(2, 2)
    assert has_minor(complete_bipartite(3, 3), k22)
    assert not has_minor(random_tree(10, 3), k22)
    assert has_minor(hp(2), k22)
    with pytest.raises(BudgetExceeded):
        has_minor(Graph(20), k22)


def test_minor_agrees_with_cycle_test_for_k22():
    rng = random.Random(2)
    for _ in range(40):
        g = random_graph(rng.randint(1, 8), rng.random(), rng.randrange(1 << 30))
        # K_{2,2} = C_4 is a minor exactly when some block has at least four vertices.
        long_cycle = any(len(b) >= 4 for b in nx.biconnected_components(to_nx(g)))
        assert has_minor(g, complete_bipartite(2, 2)) == long_cycle


def test_sparse_graph_with_large_cut_and_one_component():
    # K_5 has density 2 but its one-label cut is 5 while no separator splits it.
    k5 = clique(5)
    assert is_r_sparse(k5, 2)[0]
    assert cut(k5, 1) == 5
    assert sep(k5, 20) == 1


def test_twin_pair_examples():
    assert twin_pair_under_params(encode(clique(3), "floor")) is not None
    star = complete_bipartite(1, 4)
    s = encode(star, "floor")
    pair = twin_pair_under_params(s, [[1]])
    assert pair is not None and 1 not in pair and 0 not in pair
    assert swap_is_automorphism(s, pair, [[1]])


def test_twin_pairs_by_pigeonhole_on_small_bipartite():
    g = complete_bipartite(2, 3)
    s = encode(g, "ceil")
    rng = random.Random(9)
    for _ in range(100):
        p = frozenset(e for e in range(s.size) if rng.random() < 0.5)
        sig = {v: (v in p,) + tuple(s.index(f"e:{u}-{v}") in p for u in (0, 1)) for v in (2, 3, 4)}
        forced = len(set(sig.values())) < 3
        pair = twin_pair_under_params(s, [p])
        if forced:
            assert pair is not None
        if pair is not None:
            assert swap_is_automorphism(s, pair, [p])


@given(st.integers(0, 7), st.floats(0, 1), st.integers(0, 2**20), st.integers(0, 3))
@settings(max_examples=60, deadline=None)
def test_sep_matches_brute_force(n, p, seed, k):
    g = random_graph(n, p, seed)
    assert sep(g, k) == brute_sep(g, k)


@given(st.integers(1, 7), st.floats(0, 1), st.integers(0, 2**20))
@settings(max_examples=40, deadline=None)
def test_sep_is_monotone_in_k(n, p, seed):
    g = random_graph(n, p, seed)
    values = [sep(g, k) for k in range(n + 1)]
    assert values == sorted(values)
    assert values[0] == nx.number_connected_components(to_nx(g))


@given(st.lists(st.integers(1, 3), min_size=1, max_size=4), st.integers(0, 6))
@settings(max_examples=60, deadline=None)
def test_sep_closed_form_property(sizes, k):
    assert sep(complete_multipartite(sizes), k) == sep_closed_form(sizes, k)
