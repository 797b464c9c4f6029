import random

from hypothesis import given, strategies as st

from tropsection.morita import doubled_tree_model
from tropsection.stablegraph import two_vertex_tree
from tropsection.surfcoh import (
    augmentation,
    coboundary,
    delta,
    fox_closed_forms,
    fox_derivatives,
    fox_lattice_equals_im,
    h2_wedge_lattice,
    is_cocycle,
    m_pairing,
    one_cocycles,
    random_cocycle,
    random_surface_action,
)

seeds = st.integers(0, 10_000)


def test_fox_closed_forms():
    for h in (1, 2, 3):
        assert fox_derivatives(h) == fox_closed_forms(h)
        # the fundamental formula: augmentations of dR/dx vanish for a product of commutators
        assert all(augmentation(d) == 0 for d in fox_derivatives(h))


@given(seeds, st.sampled_from([1, 2]), st.integers(1, 6))
def test_fox_lattice_is_im(seed, h, rank):
    action = random_surface_action(random.Random(seed), h, rank)
    assert action.relator_holds()
    assert fox_lattice_equals_im(action)


@given(seeds, st.integers(1, 4))
def test_coboundaries_are_cocycles(seed, rank):
    action = random_surface_action(random.Random(seed), 1, rank)
    rng = random.Random(seed)
    m = [rng.randint(-5, 5) for _ in range(rank)]
    assert is_cocycle(action, coboundary(action, m))
    space = one_cocycles(action)
    assert all(is_cocycle(action, c) for c in space.basis)


def _setup(seed, g):
    model = doubled_tree_model(*two_vertex_tree(g))
    A = model.action
    rng = random.Random(seed)
    space = one_cocycles(A)
    return model, A, rng, space


@given(seeds, st.integers(1, 2))
def test_m_is_symmetric_in_coinvariants(seed, g):
    model, A, rng, space = _setup(seed, g)
    p, q = random_cocycle(rng, space), random_cocycle(rng, space)
    diff = [a - b for a, b in zip(m_pairing(p, q, A), m_pairing(q, p, A))]
    assert diff in h2_wedge_lattice(A)


@given(seeds, st.integers(1, 2))
def test_delta_defect_is_minus_m(seed, g):
    model, A, rng, space = _setup(seed, g)
    S, T = model.S_endo, model.T_endo
    p, q = random_cocycle(rng, space), random_cocycle(rng, space)
    d = [a - b - c for a, b, c in zip(delta(p + q, A, S, T), delta(p, A, S, T), delta(q, A, S, T))]
    m = m_pairing(p, q, A)
    assert [a + b for a, b in zip(d, m)] in h2_wedge_lattice(A)


@given(seeds, st.integers(1, 2))
def test_delta_of_zero(seed, g):
    model, A, rng, space = _setup(seed, g)
    zero = random_cocycle(rng, space).scale(0)
    assert not any(delta(zero, A, model.S_endo, model.T_endo))


@given(seeds, st.integers(1, 2))
def test_section_change_moves_delta_by_m(seed, g):
    from tropsection.acceptance import random_section

    model, A, rng, space = _setup(seed, g)
    S2, T2, c = random_section(rng, model, space)
    if c is None:
        return
    x = random_cocycle(rng, space)
    diff = [a - b for a, b in zip(delta(x, A, S2, T2), delta(x, A, model.S_endo, model.T_endo))]
    assert [a - b for a, b in zip(diff, m_pairing(c, x, A))] in h2_wedge_lattice(A)
