"""Integer linear algebra, checked against brute force and defining identities."""
import itertools
from math import gcd

import pytest
from hypothesis import given, strategies as st

from tropsection.exactla import (
    INFINITE,
    AbelianPresentation,
    IntMatrix,
    Lattice,
    cokernel_order_of,
    congruence_lattice,
    determinant,
    hermite_normal_form,
    integer_kernel,
    lattice_intersection,
    smith_invariants,
    smith_normal_form,
    unimodular_inverse,
)

entries = st.integers(-12, 12)


@st.composite
def matrices(draw, max_dim=6):
    r = draw(st.integers(1, max_dim))
    c = draw(st.integers(1, max_dim))
    rows = draw(st.lists(st.lists(entries, min_size=c, max_size=c), min_size=r, max_size=r))
    return IntMatrix.from_rows(rows, c)


def _minor_gcd(M: IntMatrix, k: int) -> int:
    """gcd of all k x k minors: the product d_1 ... d_k."""
    g = 0
    rows = M.to_rows()
    for I in itertools.combinations(range(M.rows), k):
        for J in itertools.combinations(range(M.cols), k):
            g = gcd(g, determinant(IntMatrix.from_rows([[rows[i][j] for j in J] for i in I], k)))
    return g


def test_textbook_snf():
    D, U, V = smith_normal_form([[2, 4, 4], [-6, 6, 12], [10, -4, -16]])
    assert [D[i, i] for i in range(3)] == [2, 6, 12]


@given(matrices())
def test_snf_identity_and_divisibility(M):
    D, U, V = smith_normal_form(M)
    assert U @ M @ V == D
    assert abs(determinant(U)) == 1 and abs(determinant(V)) == 1
    diag = [D[i, i] for i in range(min(M.rows, M.cols))]
    assert all(d >= 0 for d in diag)
    for a, b in zip(diag, diag[1:]):
        assert (b % a == 0) if a else b == 0
    assert smith_invariants(M) == diag


@given(matrices(max_dim=4))
def test_snf_matches_minor_gcds(M):
    diag = smith_invariants(M)
    prod = 1
    for k, d in enumerate(diag, start=1):
        prod *= d
        assert prod == _minor_gcd(M, k)


@given(matrices())
def test_hnf_row_operations(M):
    H, U = hermite_normal_form(M)
    assert U @ M == H
    assert abs(determinant(U)) == 1


@given(matrices())
def test_integer_kernel(M):
    ker = integer_kernel(M)
    for k in ker:
        assert all(x == 0 for x in M @ k)
    rank = sum(1 for d in smith_invariants(M) if d)
    assert len(ker) == M.cols - rank


@given(st.lists(st.lists(st.integers(-3, 3), min_size=3, max_size=3), min_size=3, max_size=3))
def test_unimodular_inverse(rows):
    M = IntMatrix.from_rows(rows, 3)
    if abs(determinant(M)) != 1:
        with pytest.raises(ValueError):
            unimodular_inverse(M)
        return
    assert unimodular_inverse(M) @ M == IntMatrix.identity(3)


def _brute_order(mods, c):
    """Order of c in Z/m1 x ... by repeated addition."""
    k, x = 1, [ci % m for ci, m in zip(c, mods)]
    while any(x):
        k += 1
        x = [(xi + ci) % m for xi, ci, m in zip(x, c, mods)]
    return k


@given(st.lists(st.integers(1, 9), min_size=1, max_size=3), st.data())
def test_presentation_of_diagonal_group(mods, data):
    rels = [[m * int(i == j) for j in range(len(mods))] for i, m in enumerate(mods)]
    pres = AbelianPresentation.from_relations(len(mods), rels)
    size = 1
    for m in mods:
        size *= m
    assert pres.order == size
    c = data.draw(st.lists(st.integers(-20, 20), min_size=len(mods), max_size=len(mods)))
    assert pres.order_of(c) == _brute_order(mods, c)
    assert cokernel_order_of(IntMatrix.from_columns(rels, len(mods)), c) == _brute_order(mods, c)


def test_free_part_gives_infinite_order():
    pres = AbelianPresentation.from_relations(2, [[2, 0]])
    assert pres.invariant_factors == (2, 0)
    assert pres.order is INFINITE
    assert pres.order_of([0, 1]) is INFINITE
    assert pres.order_of([1, 0]) == 2


@given(st.lists(st.lists(st.integers(-6, 6), min_size=3, max_size=3), min_size=1, max_size=4),
       st.lists(st.integers(1, 6), min_size=1, max_size=4))
def test_congruence_lattice_brute_force(rows, mods):
    n = min(len(rows), len(mods))
    rows, mods = rows[:n], mods[:n]
    L = congruence_lattice(rows, mods, 3)
    N = 1
    for m in mods:
        N = N * m // gcd(N, m)
    for x in itertools.product(range(N), repeat=3):
        inside = all(sum(a * b for a, b in zip(r, x)) % m == 0 for r, m in zip(rows, mods))
        assert (list(x) in L) == inside


def test_lattice_intersection_small():
    a = Lattice(2, [[2, 0], [0, 1]])
    b = Lattice(2, [[1, 0], [0, 3]])
    c = lattice_intersection(a, b)
    assert c == Lattice(2, [[2, 0], [0, 3]])
