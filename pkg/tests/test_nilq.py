"""Arithmetic in pi / L^3 against the free-group word model."""
import pytest
from hypothesis import given, strategies as st

from tropsection.nilq import (
    EndoError,
    NilElement,
    NilEndo,
    NotInL2,
    WordError,
    apply_endo,
    eval_word,
    format_word,
    free_reduce,
    hur2,
    invert_word,
    nil_commutator,
    parse_word,
    surface_relator,
    swap_endo,
    wedge_space,
)

genera = st.integers(1, 4)


@st.composite
def words(draw, genus):
    letters = st.sampled_from([k for i in range(1, 2 * genus + 1) for k in (i, -i)])
    return draw(st.lists(letters, max_size=12))


@st.composite
def elements(draw, genus):
    ws = wedge_space(genus)
    h = draw(st.lists(st.integers(-5, 5), min_size=ws.n, max_size=ws.n))
    w = draw(st.lists(st.integers(-5, 5), min_size=ws.dim, max_size=ws.dim))
    return NilElement(genus, tuple(h), tuple(w))


@given(st.data(), genera)
def test_group_axioms(data, g):
    x, y, z = (data.draw(elements(g)) for _ in range(3))
    assert (x * y) * z == x * (y * z)
    assert (x * x.inverse()).is_identity()
    assert x * NilElement.identity(g) == x


@given(st.data(), genera)
def test_commutator_is_wedge(data, g):
    x, y = data.draw(elements(g)), data.draw(elements(g))
    assert hur2(nil_commutator(x, y)) == wedge_space(g).wedge(x.h, y.h)


@given(st.data(), genera)
def test_eval_is_a_homomorphism_from_words(data, g):
    u, v = data.draw(words(g)), data.draw(words(g))
    assert eval_word(u + v, g) == eval_word(u, g) * eval_word(v, g)
    assert eval_word(free_reduce(u + invert_word(u)), g).is_identity()


@given(genera)
def test_surface_relator(g):
    assert eval_word(surface_relator(g), g).is_identity()


def test_single_commutator_is_x1_wedge_y1():
    x = eval_word(parse_word("a1 b1 A1 B1"), 2)
    ws = wedge_space(2)
    assert not any(x.h) and list(x.w) == ws.basis_wedge(0, 1)


def test_parse_format_round_trip():
    w = parse_word("a1 B2 A1 b2")
    assert parse_word(format_word(w)) == w
    with pytest.raises(WordError):
        parse_word("c1")


def test_hur2_rejects_elements_outside_l2():
    with pytest.raises(NotInL2):
        hur2(NilElement.generator(2, 1))


@given(st.data(), st.integers(2, 4))
def test_endomorphisms(data, g):
    x, y = data.draw(elements(g)), data.draw(elements(g))
    r = data.draw(elements(g))
    c = NilEndo.conjugation(r)
    assert c(x * y) == c(x) * c(y)
    s = swap_endo(g, {i: g + 1 - i for i in range(1, g + 1)})
    assert s.compose(s) == NilEndo.identity(g)
    assert apply_endo(s, x * y) == s(x) * s(y)


def test_endo_must_kill_relator():
    g = 2
    with pytest.raises(EndoError):
        NilEndo(g, (NilElement.generator(g, 1), NilElement.generator(g, 2),
                    NilElement.generator(g, 1), NilElement.generator(g, 4)))
