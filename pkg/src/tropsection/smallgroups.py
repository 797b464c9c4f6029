"""A bundled corpus of small finite groups as multiplication tables.

Groups are built from concrete models (residues, permutations, matrices over
``F_3``) and closed under multiplication; the table is the only thing kept.
The corpus covers the common families up to order 24 but is a curated list,
not a complete census of isomorphism types.
"""
from __future__ import annotations

from dataclasses import replace
from typing import Callable, Hashable, Iterable, Sequence

from .fingcoh import FiniteGroup


def from_closure(generators: Sequence[Hashable], mul: Callable, identity: Hashable, name: str) -> FiniteGroup:
    """Close ``generators`` under ``mul`` and tabulate."""
    elems = [identity]
    index = {identity: 0}
    frontier = [identity]
    while frontier:
        nxt = []
        for x in frontier:
            for s in generators:
                y = mul(x, s)
                if y not in index:
                    index[y] = len(elems)
                    elems.append(y)
                    nxt.append(y)
        frontier = nxt
    table = tuple(tuple(index[mul(a, b)] for b in elems) for a in elems)
    return FiniteGroup(table, 0, name)


def cyclic(n: int) -> FiniteGroup:
    return from_closure([1 % n], lambda a, b: (a + b) % n, 0, f"C{n}")


def semidirect(m: int, n: int, r: int, name: str | None = None) -> FiniteGroup:
    """``C_m x| C_n`` with the generator of ``C_n`` acting by ``a -> r a``."""
    if pow(r, n, m) != 1 % m:
        raise ValueError("r^n must be 1 mod m")

    def mul(x, y):
        (a1, b1), (a2, b2) = x, y
        return ((a1 + pow(r, b1, m) * a2) % m, (b1 + b2) % n)

    return from_closure([(1 % m, 0), (0, 1 % n)], mul, (0, 0), name or f"C{m}:C{n}[{r}]")


def dihedral(n: int) -> FiniteGroup:
    """Symmetries of the ``n``-gon, order ``2n``."""
    return semidirect(n, 2, n - 1, f"D{2 * n}")


def dicyclic(n: int) -> FiniteGroup:
    """``<a, x | a^{2n}, x^2 = a^n, x a x^-1 = a^-1>``, order ``4n`` (``n = 2``: quaternion)."""
    m = 2 * n

    def mul(p, q):
        (i, j), (k, l) = p, q
        if j == 0:
            return ((i + k) % m, l)
        # x a^k = a^-k x ; x x = a^n
        if l == 0:
            return ((i - k) % m, 1)
        return ((i - k + n) % m, 0)

    return from_closure([(1, 0), (0, 1)], mul, (0, 0), "Q8" if n == 2 else f"Dic{n}")


def perm_group(gens: Iterable[Sequence[int]], name: str) -> FiniteGroup:
    gens = [tuple(g) for g in gens]
    ident = tuple(range(len(gens[0])))
    return from_closure(gens, lambda p, q: tuple(p[q[i]] for i in range(len(p))), ident, name)


def sl2_f3() -> FiniteGroup:
    def mul(A, B):
        a, b, c, d = A
        e, f, g, h = B
        return ((a * e + b * g) % 3, (a * f + b * h) % 3, (c * e + d * g) % 3, (c * f + d * h) % 3)

    return from_closure([(1, 1, 0, 1), (1, 0, 1, 1)], mul, (1, 0, 0, 1), "SL(2,3)")


def direct_product(G: FiniteGroup, H: FiniteGroup) -> FiniteGroup:
    n, m = G.order, H.order
    table = tuple(
        tuple(G.table[a // m][b // m] * m + H.table[a % m][b % m] for b in range(n * m))
        for a in range(n * m)
    )
    return FiniteGroup(table, G.identity * m + H.identity, f"{G.name}x{H.name}")


def abelian(*orders: int) -> FiniteGroup:
    G = cyclic(orders[0])
    for k in orders[1:]:
        G = direct_product(G, cyclic(k))
    return replace(G, name="x".join(f"C{k}" for k in orders))


def corpus(max_order: int = 24) -> list[FiniteGroup]:
    """The bundled table corpus, sorted by order then name."""
    out: list[FiniteGroup] = [cyclic(n) for n in range(1, max_order + 1)]
    for orders in [(2, 2), (2, 4), (2, 2, 2), (3, 3), (2, 6), (4, 4), (2, 8), (2, 2, 4),
                   (2, 2, 2, 2), (3, 6), (2, 10), (2, 12), (2, 2, 6)]:
        out.append(abelian(*orders))
    out += [dihedral(n) for n in range(3, 13)]
    out += [dicyclic(n) for n in range(2, 7)]
    out += [
        semidirect(5, 4, 2, "F20"),
        semidirect(7, 3, 2, "C7:C3"),
        semidirect(8, 2, 5, "M16"),
        semidirect(8, 2, 3, "SD16"),
        semidirect(3, 8, 2, "C3:C8"),
        perm_group([(1, 2, 0, 3), (0, 2, 3, 1)], "A4"),
        perm_group([(1, 0, 2, 3), (1, 2, 3, 0)], "S4"),
        sl2_f3(),
        direct_product(dihedral(3), cyclic(3)),
        direct_product(dihedral(4), cyclic(2)),
        direct_product(dicyclic(2), cyclic(2)),
        direct_product(perm_group([(1, 2, 0, 3), (0, 2, 3, 1)], "A4"), cyclic(2)),
        direct_product(dihedral(3), cyclic(4)),
        direct_product(dihedral(4), cyclic(3)),
        direct_product(dicyclic(2), cyclic(3)),
        direct_product(dihedral(3), abelian(2, 2)),
    ]
    out = [G for G in out if G.order <= max_order]
    return sorted(out, key=lambda G: (G.order, G.name))
