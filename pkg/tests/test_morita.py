import pytest
from hypothesis import given, strategies as st

from tropsection.exactla import INFINITE
from tropsection.morita import (
    HypothesisError,
    doubled_tree_model,
    o1_report,
    o2_cross_checked,
    o2_generic_order,
    o2_tree_order,
    rho,
    shortcut_relations,
    side_one_class,
)
from tropsection.stablegraph import cycle_graph, doubled_path, small_doubled_trees, two_vertex_tree


@pytest.mark.parametrize("g", range(3, 11))
def test_cycle_order(g):
    G, rot = cycle_graph(g - 1, 1)
    rep = o1_report(G, rot)
    assert rep.order == g - 1
    assert rep.convention == "rigid-lift"


@given(st.integers(1, 4), st.integers(1, 3))
def test_o1_vanishes_on_doubled_trees(g, mult):
    G, s = two_vertex_tree(g, mult)
    assert o1_report(G, s).order == 1


@pytest.mark.parametrize("g", [1, 2, 3])
def test_o2_order_two_both_routes(g):
    G, s = two_vertex_tree(g)
    fast = o2_tree_order(G, s)
    slow = o2_generic_order(doubled_tree_model(G, s))
    assert fast.order == slow.order == 2
    assert fast.invariant_factors == slow.invariant_factors
    assert fast.certificate is not None


def test_o2_even_bridge_multiplicity_kills_the_class():
    G, s = two_vertex_tree(1, 2)
    assert o2_cross_checked(G, s).order == 1


def test_o2_other_doubled_trees():
    assert o2_cross_checked(*doubled_path(2, 1)).order == 2
    for G, s in list(small_doubled_trees(2))[:4]:
        assert o2_cross_checked(G, s).order == 2


def test_rho_kills_relations_and_detects_class():
    model = doubled_tree_model(*two_vertex_tree(2))
    assert all(rho(model, r) == 0 for r in shortcut_relations(model))
    assert rho(model, side_one_class(model)) == 1


def test_o2_rejects_cycles():
    with pytest.raises(HypothesisError):
        o2_tree_order(*cycle_graph(3, 1))


def test_order_is_never_infinite_on_trees():
    assert o2_tree_order(*two_vertex_tree(1)).order is not INFINITE
