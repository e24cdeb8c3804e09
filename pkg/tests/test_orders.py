import dataclasses
import json

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from msorder.generators import (
    clique,
    complete_bipartite,
    complete_multipartite,
    cycle,
    generate,
    path,
    random_chordal,
    random_graph,
    random_tree,
    split_join,
    star,
)
from msorder.graph import Graph
from msorder.measures import sep
from msorder.orders import (
    OrderCertificate,
    PreconditionError,
    check_class_conditions,
    order_bipartite_supergraph,
    order_chordal,
    order_cograph,
    order_minor_free,
    order_multipartite,
    order_split,
    order_tree_bounded_degree,
    verify_certificate,
)
from msorder.orders.certificate import binary_codes


def _vertices(cert):
    return [x for x in cert.order if x.startswith("v:")]


def _names(*vs):
    return [f"v:{v}" for v in vs]


# --- trees -------------------------------------------------------------------


def test_tree_examples():
    assert order_tree_bounded_degree(path(3), 2).order == tuple(_names(0, 1, 2))
    single = order_tree_bounded_degree(Graph(1), 0)
    assert single.order == ("v:0",) and single.verified
    assert order_tree_bounded_degree(star(3), 3).order == tuple(_names(0, 1, 2, 3))


def test_tree_preconditions():
    with pytest.raises(PreconditionError):
        order_tree_bounded_degree(cycle(3), 2)
    with pytest.raises(PreconditionError):
        order_tree_bounded_degree(star(3), 2)


# --- graphs without a K_{p,p} minor --------------------------------------------


@pytest.mark.parametrize("seed", range(6))
def test_minor_free_agrees_with_tree_order(seed):
    t = random_tree(7, seed, 3)
    d = max(max(t.degree(v) for v in range(t.n)), sep(t, 2))
    assert _vertices(order_minor_free(t, 2, d)) == list(order_tree_bounded_degree(t, d).order)


def test_minor_free_examples():
    cert = order_minor_free(clique(3), 2, 1)
    assert _vertices(cert) == _names(0, 1, 2)
    with pytest.raises(PreconditionError):
        order_minor_free(complete_bipartite(2, 2), 2, 2)
    with pytest.raises(PreconditionError):
        order_minor_free(star(4), 2, 1)


# --- supergraphs of complete bipartite graphs -----------------------------------


def test_bipartite_examples():
    cert = order_bipartite_supergraph(complete_bipartite(1, 2), [0], [1, 2], 1, 1)
    assert cert.verified and verify_certificate(complete_bipartite(1, 2), cert).ok
    g = Graph(4, list(complete_bipartite(2, 2).edges) + [(0, 1)])
    assert order_bipartite_supergraph(g, [0, 1], [2, 3], 1, 0).verified
    with pytest.raises(PreconditionError):
        order_bipartite_supergraph(complete_bipartite(1, 3), [0], [1, 2, 3], 1, 0)
    with pytest.raises(PreconditionError):
        order_bipartite_supergraph(path(3), [0], [1, 2], 1, 1)


# --- complete multipartite graphs -------------------------------------------------


def test_multipartite_examples():
    assert order_multipartite(complete_multipartite([2, 2, 1])).verified
    with pytest.raises(PreconditionError):
        order_multipartite(complete_multipartite([3, 1, 1]))
    assert _vertices(order_multipartite(clique(3))) == _names(0, 1, 2)
    with pytest.raises(PreconditionError):
        order_multipartite(path(3))


# --- split graphs -------------------------------------------------------------------


def test_split_examples():
    g = split_join(2, 2)
    assert verify_certificate(g, order_split(g, 1)).ok
    with pytest.raises(PreconditionError):
        order_split(split_join(1, 9), 1)
    assert _vertices(order_split(clique(4), 1)) == _names(0, 1, 2, 3)
    with pytest.raises(PreconditionError):
        order_split(cycle(4), 1)


# --- chordal graphs -------------------------------------------------------------------


def test_chordal_examples():
    t = random_tree(8, 3)
    cert = order_chordal(t, 2)
    assert verify_certificate(t, cert).ok
    triangle_pendant = Graph(4, [(0, 1), (1, 2), (0, 2), (2, 3)])
    cert = order_chordal(triangle_pendant, 1)
    assert sorted(_vertices(cert)) == _names(0, 1, 2, 3)
    assert verify_certificate(triangle_pendant, cert).checks["trace_matches_rebuild"]
    with pytest.raises(PreconditionError):
        order_chordal(cycle(4), 1)


# --- cographs ----------------------------------------------------------------------------


def test_cograph_examples():
    cert = order_cograph(complete_bipartite(2, 3), 3)
    assert _vertices(cert) == _names(0, 1, 2, 3, 4)
    assert cert.params["C0"] == ("v:0", "v:2")
    assert order_cograph(Graph(1), 1).order == ("v:0",)
    with pytest.raises(PreconditionError):
        order_cograph(generate("cograph", "1+1+1+1+1"), 4)
    with pytest.raises(PreconditionError):
        order_cograph(path(4), 3)


# --- verification -----------------------------------------------------------------------------


def test_swapped_order_is_rejected():
    g = split_join(2, 2)
    cert = order_split(g, 1)
    order = list(cert.order)
    order[0], order[1] = order[1], order[0]
    report = verify_certificate(g, dataclasses.replace(cert, order=tuple(order)))
    assert not report.ok and report.checks["table_equals_order"] is False


def test_missing_or_broken_formula_is_rejected():
    g = path(3)
    cert = order_tree_bounded_degree(g, 2)
    assert not verify_certificate(g, dataclasses.replace(cert, formula=None)).ok
    assert not verify_certificate(g, dataclasses.replace(cert, formula="(edg x")).ok
    assert not verify_certificate(g, dataclasses.replace(cert, params={})).ok


def test_tampered_trace_is_rejected():
    g = complete_bipartite(2, 3)
    cert = order_cograph(g, 3)
    bad = dataclasses.replace(cert, order=tuple(reversed(cert.order)))
    assert not verify_certificate(g, bad).ok
    t = random_tree(6, 2)
    cert = order_chordal(t, 2)
    trace = dict(cert.trace)
    trace["s"] = 0
    assert not verify_certificate(t, dataclasses.replace(cert, trace=trace)).ok


def test_certificate_json_round_trip():
    g = split_join(2, 2)
    cert = order_split(g, 1)
    again = OrderCertificate.from_json(cert.to_json())
    assert again == cert
    assert again.to_json() == cert.to_json()
    with pytest.raises(ValueError):
        OrderCertificate.from_json("{")
    with pytest.raises(ValueError):
        OrderCertificate.from_json(json.dumps({"scheme": "Split"}))
    with pytest.raises(ValueError):
        OrderCertificate.from_dict({**cert.to_dict(), "scheme": "Nope"})


def test_unknown_names_are_rejected():
    g = path(3)
    cert = order_tree_bounded_degree(g, 2)
    report = verify_certificate(path(2), dataclasses.replace(cert, order=("v:0", "v:1", "v:9")))
    assert not report.ok


def test_binary_codes_order_by_least_difference():
    codes = binary_codes(8, 3)
    for i in range(8):
        for j in range(i + 1, 8):
            assert min(codes[i] ^ codes[j]) in codes[i]
    with pytest.raises(PreconditionError):
        binary_codes(9, 3)


# --- class conditions -----------------------------------------------------------------------------


def test_class_condition_examples():
    assert check_class_conditions({"kind": "multipartite", "shape": [3, 2]}, 1).holds
    assert not check_class_conditions({"kind": "multipartite", "shape": [8, 1]}, 1).holds
    for n in range(2, 8):
        coterm = "+".join(["1"] * n)
        assert check_class_conditions({"kind": "cograph", "coterm": coterm}, 1, d=3).holds == (n <= 3)
    assert check_class_conditions({"kind": "split", "classes": [[2, 8], [0, 2]]}, 1).holds
    assert not check_class_conditions({"kind": "split", "classes": [[0, 3]]}, 1).holds
    with pytest.raises(ValueError):
        check_class_conditions({"kind": "tree"}, 1)


# --- properties ----------------------------------------------------------------------------------


@given(st.integers(1, 10), st.integers(0, 2**20), st.floats(0.1, 0.9))
@settings(max_examples=30, deadline=None)
def test_chordal_certificates_verify(n, seed, density):
    g = random_chordal(n, seed, density)
    try:
        cert = order_chordal(g, 2)
    except PreconditionError:
        assume(False)
    assert cert.verified and verify_certificate(g, cert).ok
    assert sorted(cert.order) == sorted(cert.structure(g).names)


@given(st.integers(1, 7), st.floats(0, 1), st.integers(0, 2**20))
@settings(max_examples=30, deadline=None)
def test_cograph_certificates_verify(n, p, seed):
    g = random_graph(n, p, seed)
    try:
        cert = order_cograph(g, n)
    except PreconditionError:
        assume(False)
    assert verify_certificate(g, cert).ok


@given(st.integers(1, 9), st.integers(0, 2**20))
@settings(max_examples=20, deadline=None)
def test_tree_certificates_verify(n, seed):
    t = random_tree(n, seed, 3)
    cert = order_tree_bounded_degree(t, 3)
    assert cert.order[0] == "v:0"
    assert verify_certificate(t, cert).ok
