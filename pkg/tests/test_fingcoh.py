"""H^1 of finite groups, checked against exhaustive enumeration of crossed homomorphisms."""
import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from tropsection.exactla import IntMatrix
from tropsection.fingcoh import (
    FiniteGroup,
    FiniteModule,
    GroupError,
    NoWitnessNeeded,
    cyclic_detection_is_injective,
    cyclic_witness,
    format_module,
    format_table,
    h1_finite,
    inflate,
    parse_module,
    parse_table,
    random_ptorsion_module,
    restrict_h1,
)
from tropsection.smallgroups import abelian, corpus, cyclic, dihedral, dicyclic


def brute_h1_order(G: FiniteGroup, A: FiniteModule) -> int:
    """|Z^1| / |B^1| by listing every function G -> A obeying f(gh) = f(g) + g f(h)."""
    elems = list(itertools.product(*[range(m) for m in A.moduli]))
    gens = G.generators
    z1 = 0
    for vals in itertools.product(elems, repeat=len(gens)):
        f = {G.identity: A.reduce([0] * A.rank)}
        ok, frontier = True, [G.identity]
        while frontier and ok:
            nxt = []
            for g in frontier:
                for s, v in zip(gens, vals):
                    h = G.mul(g, s)
                    val = A.reduce([a + b for a, b in zip(f[g], A.act(g, v))])
                    if h in f:
                        ok &= f[h] == val
                    else:
                        f[h] = val
                        nxt.append(h)
            frontier = nxt
        if ok and all(
            f[G.mul(g, h)] == A.reduce([a + b for a, b in zip(f[g], A.act(g, f[h]))])
            for g in range(G.order) for h in range(G.order)
        ):
            z1 += 1
    b1 = {tuple(A.reduce([x - y for x, y in zip(A.act(g, a), a)]) for g in range(G.order)) for a in elems}
    return z1 // len(b1)


small = [G for G in corpus(8)]


@settings(max_examples=40)
@given(st.sampled_from(small), st.integers(0, 10**6))
def test_h1_against_enumeration(G, seed):
    A = random_ptorsion_module(G, random.Random(seed), max_rank=2)
    if A.size ** len(G.generators) > 5000:
        return
    assert h1_finite(G, A).order == brute_h1_order(G, A)


def test_trivial_group():
    G = cyclic(1)
    assert h1_finite(G, FiniteModule.trivial(G, (3,))).order == 1


def test_c2_trivial_z2():
    G = cyclic(2)
    assert h1_finite(G, FiniteModule.trivial(G, (2,))).invariant_factors == (2,)


def test_c2_negation_on_z4():
    G = cyclic(2)
    A = FiniteModule((4,), (IntMatrix.from_rows([[1]]), IntMatrix.from_rows([[3]])), G)
    assert h1_finite(G, A).invariant_factors == (2,)
    assert brute_h1_order(G, A) == 2


def test_klein_restrictions_and_witness():
    G = abelian(2, 2)
    res = h1_finite(G, FiniteModule.trivial(G, (2,)))
    assert res.invariant_factors == (2, 2)
    # G = C2 x C2 with index a*2 + b; first projection sends (a, b) -> a
    proj = [g // 2 for g in range(4)]
    u = []
    for s in G.generators:
        u.append(proj[s])
    first, second = frozenset({0, 2}), frozenset({0, 1})
    assert not restrict_h1(res, u, first).is_zero
    assert restrict_h1(res, u, second).is_zero
    assert restrict_h1(res, u, frozenset({0})).is_zero
    w = cyclic_witness(res, u)
    assert w.subgroup != second


def test_zero_class_needs_no_witness():
    G = cyclic(2)
    res = h1_finite(G, FiniteModule.trivial(G, (2,)))
    with pytest.raises(NoWitnessNeeded):
        cyclic_witness(res, [0])
    assert cyclic_witness(res, [1]).subgroup == frozenset({0, 1})


def test_restriction_to_non_subgroup():
    G = cyclic(4)
    res = h1_finite(G, FiniteModule.trivial(G, (2,)))
    with pytest.raises(GroupError):
        restrict_h1(res, [1], frozenset({0, 1}))


@settings(max_examples=25)
@given(st.sampled_from([G for G in corpus(16) if G.order > 1]), st.integers(0, 10**6))
def test_every_class_has_a_witness(G, seed):
    res = h1_finite(G, random_ptorsion_module(G, random.Random(seed)))
    assert cyclic_detection_is_injective(res)
    if res.order <= 64:
        for u in res.classes():
            if not res.is_zero(u):
                cyclic_witness(res, u)


@settings(max_examples=25)
@given(st.sampled_from([G for G in corpus(16) if G.order > 1]), st.integers(0, 10**6))
def test_sylow_restriction_detects(G, seed):
    rng = random.Random(seed)
    A = random_ptorsion_module(G, rng)
    res = h1_finite(G, A)
    p = next(q for q in range(2, 100) if all(m % q == 0 for m in A.moduli))
    P = G.sylow(p)
    u = res.random_class(rng)
    if not res.is_zero(u):
        assert not restrict_h1(res, u, P).is_zero


def test_inflation_from_central_quotient():
    G = dicyclic(2)  # Q8, center of order 2, quotient C2 x C2
    Q, proj = G.quotient(G.center())
    res_q = h1_finite(Q, FiniteModule.trivial(Q, (2,)))
    for u in res_q.classes():
        big, v = inflate(res_q, proj, G, FiniteModule.trivial(G, (2,)), u)
        assert big.is_zero(v) == res_q.is_zero(u)


def test_table_validation():
    with pytest.raises(GroupError):
        FiniteGroup(((0, 1), (0, 1)), 0, "bad")
    with pytest.raises(GroupError):
        parse_table("2\n0 1\n1")


def test_file_round_trip():
    G = dihedral(3)
    G2 = parse_table(format_table(G))
    assert G2.table == G.table
    A = random_ptorsion_module(G, random.Random(3))
    A2 = parse_module(format_module(A), G2)
    assert A2.moduli == A.moduli and A2.action == A.action
