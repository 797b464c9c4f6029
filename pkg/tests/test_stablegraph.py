import json

import pytest
from hypothesis import given, strategies as st

from tropsection.stablegraph import (
    GraphAutomorphism,
    GraphError,
    StableGraph,
    automorphism_order,
    check_automorphism,
    contract_edges,
    cycle_graph,
    doubled_path,
    graph_from_dict,
    graph_to_dict,
    is_isomorphic,
    small_doubled_trees,
    specializes_to,
    tree_involution_check,
    two_vertex_tree,
    validate_stable,
)


@given(st.integers(2, 8), st.integers(1, 3))
def test_cycle_family(d, q):
    G, rot = cycle_graph(d, q)
    rep = validate_stable(G)
    assert rep.valid and rep.genus == d * q + 1
    assert check_automorphism(G, rot).valid
    assert automorphism_order(rot) == d


def test_genus_zero_degree_two_is_unstable():
    G = StableGraph.build({"u": 0, "v": 2}, [("e", "u", "v", 1), ("f", "u", "v", 1)])
    rep = validate_stable(G)
    assert not rep.valid and "u" in rep.violations[0]


def test_isolated_genus_one_vertex_is_unstable():
    assert not validate_stable(StableGraph.build({"v": 1}, [])).valid


def test_bad_edge_endpoint():
    with pytest.raises(GraphError):
        StableGraph.build({"v": 1}, [("e", "v", "w", 1)])


@given(st.integers(1, 4))
def test_two_vertex_tree_is_doubled(g):
    G, s = two_vertex_tree(g)
    assert G.genus == 2 * g and tree_involution_check(G, s)


def test_cycle_is_not_a_doubled_tree():
    G, rot = cycle_graph(2, 1)
    assert not tree_involution_check(G, rot)


def test_doubled_trees_enumeration_is_stable():
    trees = list(small_doubled_trees(3))
    assert trees
    for G, s in trees:
        assert validate_stable(G).valid and G.genus == 6 and tree_involution_check(G, s)


def test_json_round_trip():
    G, s = doubled_path(2, 1)
    data = json.loads(json.dumps(graph_to_dict(G, s)))
    G2, s2 = graph_from_dict(data)
    assert graph_to_dict(G2, s2) == graph_to_dict(G, s)


def test_malformed_json_data():
    with pytest.raises(GraphError):
        graph_from_dict({"vertices": [{"id": "v"}]})


def test_contraction_and_specialization():
    G, _ = cycle_graph(3, 1)
    one = contract_edges(G, ["e1", "e2"])
    assert len(one.vertices) == 1 and one.genus == G.genus
    assert specializes_to(one, G)
    assert not specializes_to(G, one)
    assert is_isomorphic(contract_edges(G, ["e1"]), contract_edges(G, ["e3"]))


def test_wrong_automorphism_is_reported():
    G, _ = cycle_graph(3, 1)
    bad = GraphAutomorphism({"v1": "v2", "v2": "v1", "v3": "v3"}, {"e1": "e1", "e2": "e3", "e3": "e2"})
    assert not check_automorphism(G, bad).valid
