from hypothesis import given, strategies as st

from tropsection.exactla import IntMatrix
from tropsection.stablegraph import cycle_graph, doubled_path, two_vertex_tree
from tropsection.surfhom import (
    automorphism_matrix,
    homology_model,
    is_unimodular,
    o1_order,
    twist_matrix,
)


@given(st.integers(2, 7), st.integers(1, 2), st.integers(1, 3))
def test_matrices_on_cycles(d, q, mult):
    G, rot = cycle_graph(d, q, mult)
    model = homology_model(G)
    assert model.rank == 2 * G.genus
    T = twist_matrix(model)
    S = automorphism_matrix(model, rot)
    assert is_unimodular(T) and is_unimodular(S)
    # the rotation preserves multiplicities, so it commutes with the multitwist
    assert S @ T == T @ S
    Sd = IntMatrix.identity(model.rank)
    for _ in range(d):
        Sd = Sd @ S
    assert Sd == IntMatrix.identity(model.rank)


@given(st.integers(2, 9))
def test_cycle_order_is_d(d):
    G, rot = cycle_graph(d, 1)
    assert o1_order(homology_model(G), rot) == d


def test_basepoint_does_not_change_order():
    G, rot = cycle_graph(4, 1)
    model = homology_model(G)
    assert {o1_order(model, rot, v) for v in G.vertex_ids} == {4}


def test_trees_have_trivial_twist():
    for G, _ in (two_vertex_tree(2), doubled_path(2, 1)):
        model = homology_model(G)
        assert twist_matrix(model) == IntMatrix.identity(model.rank)
