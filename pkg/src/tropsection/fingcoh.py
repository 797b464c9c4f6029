"""First cohomology of finite groups with coefficients in finite modules.

Cocycles are solved over the integers: the unknowns are the values on a
generating set, every element is reached along a breadth-first Cayley tree,
and each remaining Cayley edge contributes the constraint
``f(g s) = f(g) + g f(s)``.  Moduli enter as extra lattice generators, so
one Smith reduction handles any mix of ``Z/m_i`` summands.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import cached_property
from math import gcd
from typing import Iterator, Sequence

from .exactla import (
    AbelianPresentation,
    IntMatrix,
    Lattice,
    Order,
    congruence_lattice,
)

MAX_ORDER = 10_000


class GroupError(ValueError):
    pass


class ModuleError(ValueError):
    pass


class NoWitnessNeeded(ValueError):
    """The class is zero, so no cyclic witness is required."""


@dataclass(frozen=True)
class FiniteGroup:
    table: tuple[tuple[int, ...], ...]
    identity: int = 0
    name: str = "G"

    def __post_init__(self):
        n = len(self.table)
        if n == 0 or any(len(r) != n for r in self.table):
            raise GroupError("table must be square and nonempty")
        if n > MAX_ORDER:
            raise GroupError(f"group order {n} exceeds the bound {MAX_ORDER}")
        if any(not 0 <= x < n for r in self.table for x in r):
            raise GroupError("table entry out of range")
        e = self.identity
        if any(self.table[e][g] != g or self.table[g][e] != g for g in range(n)):
            raise GroupError("identity element fails")
        for r in self.table:
            if len(set(r)) != n:
                raise GroupError("table rows must be permutations")
        if any(len({self.table[a][b] for a in range(n)}) != n for b in range(n)):
            raise GroupError("table columns must be permutations")
        triples = (
            ((a, b, c) for a in range(n) for b in range(n) for c in range(n))
            if n <= 64
            else ((g, h, k) for g, h, k in _sample_triples(n, 20_000))
        )
        t = self.table
        for a, b, c in triples:
            if t[t[a][b]][c] != t[a][t[b][c]]:
                raise GroupError(f"associativity fails at ({a}, {b}, {c})")

    @property
    def order(self) -> int:
        return len(self.table)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    @cached_property
    def inverses(self) -> tuple[int, ...]:
        e = self.identity
        return tuple(next(h for h in range(self.order) if self.table[g][h] == e) for g in range(self.order))

    def power(self, g: int, k: int) -> int:
        out = self.identity
        base = g if k >= 0 else self.inverses[g]
        for _ in range(abs(k)):
            out = self.table[out][base]
        return out

    def element_order(self, g: int) -> int:
        k, x = 1, g
        while x != self.identity:
            x = self.table[x][g]
            k += 1
        return k

    def generated(self, gens: Sequence[int]) -> frozenset[int]:
        seen = {self.identity}
        frontier = [self.identity]
        while frontier:
            nxt = []
            for x in frontier:
                for s in gens:
                    y = self.table[x][s]
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return frozenset(seen)

    @cached_property
    def generators(self) -> tuple[int, ...]:
        """Greedy generating set: repeatedly adjoin the least element not yet generated."""
        gens: list[int] = []
        cur = frozenset({self.identity})
        while len(cur) < self.order:
            g = min(x for x in range(self.order) if x not in cur)
            gens.append(g)
            cur = self.generated(gens)
        return tuple(gens)

    def is_subgroup(self, H) -> bool:
        H = set(H)
        if self.identity not in H:
            return False
        return all(self.table[a][self.inverses[b]] in H for a in H for b in H)

    def cyclic_subgroups(self) -> list[tuple[int, frozenset[int]]]:
        """One ``(generator, subgroup)`` per cyclic subgroup, by order then generator."""
        seen: dict[frozenset[int], int] = {}
        for g in range(self.order):
            C = self.generated([g])
            if C not in seen:
                seen[C] = g
        return sorted(((g, C) for C, g in seen.items()), key=lambda t: (len(t[1]), t[0]))

    def sylow(self, p: int) -> frozenset[int]:
        """A Sylow ``p``-subgroup, grown greedily (every maximal ``p``-subgroup is Sylow)."""
        P = frozenset({self.identity})
        gens: list[int] = []
        pel = [g for g in range(self.order) if _is_power_of(self.element_order(g), p)]
        grown = True
        while grown:
            grown = False
            for x in pel:
                if x in P:
                    continue
                Q = self.generated(gens + [x])
                if _is_power_of(len(Q), p):
                    P, gens, grown = Q, gens + [x], True
                    break
        full = self.order
        while full % p == 0:
            full //= p
        if len(P) * full != self.order:
            raise AssertionError("greedy search did not reach a Sylow subgroup")
        return P

    def subgroup(self, H) -> tuple["FiniteGroup", list[int]]:
        """``H`` as a group in its own right, plus the list of its elements (new index -> old)."""
        if not self.is_subgroup(H):
            raise GroupError("not a subgroup")
        elems = sorted(H, key=lambda x: (x != self.identity, x))
        pos = {x: i for i, x in enumerate(elems)}
        table = tuple(tuple(pos[self.table[a][b]] for b in elems) for a in elems)
        return FiniteGroup(table, 0, f"sub({self.name})"), elems

    def quotient(self, N) -> tuple["FiniteGroup", list[int]]:
        """``G/N`` for normal ``N``; returns the group and the projection as a list."""
        N = frozenset(N)
        if not self.is_subgroup(N):
            raise GroupError("not a subgroup")
        inv = self.inverses
        if any(self.table[self.table[g][n]][inv[g]] not in N for g in range(self.order) for n in N):
            raise GroupError("subgroup is not normal")
        cosets: list[frozenset[int]] = []
        proj = [-1] * self.order
        for g in range(self.order):
            if proj[g] >= 0:
                continue
            c = frozenset(self.table[g][n] for n in N)
            for x in c:
                proj[x] = len(cosets)
            cosets.append(c)
        reps = [min(c) for c in cosets]
        table = tuple(tuple(proj[self.table[a][b]] for b in reps) for a in reps)
        return FiniteGroup(table, proj[self.identity], f"{self.name}/N"), proj

    def center(self) -> frozenset[int]:
        t = self.table
        return frozenset(z for z in range(self.order) if all(t[z][g] == t[g][z] for g in range(self.order)))


def _is_power_of(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


def _sample_triples(n: int, k: int):
    rng = random.Random(n)
    for _ in range(k):
        yield rng.randrange(n), rng.randrange(n), rng.randrange(n)


# ---------------------------------------------------------------------------
# modules


def _mod_rows(M: Sequence[Sequence[int]], moduli: Sequence[int]) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(x % m for x in row) for row, m in zip(M, moduli))


@dataclass(frozen=True)
class FiniteModule:
    """``A = sum Z/m_i`` with ``action[g]`` the matrix of ``g`` (acting on columns)."""

    moduli: tuple[int, ...]
    action: tuple[IntMatrix, ...]
    group: FiniteGroup = field(repr=False)

    def __post_init__(self):
        r = len(self.moduli)
        if any(m < 1 for m in self.moduli):
            raise ModuleError("moduli must be positive")
        if len(self.action) != self.group.order:
            raise ModuleError("need one matrix per group element")
        for A in self.action:
            if (A.rows, A.cols) != (r, r):
                raise ModuleError("action matrix has the wrong size")
            for i in range(r):
                for j in range(r):
                    if (self.moduli[j] * A[i, j]) % self.moduli[i]:
                        raise ModuleError(f"entry ({i}, {j}) does not define a map Z/{self.moduli[j]} -> Z/{self.moduli[i]}")
        G = self.group
        if not self.reduce_matrix(self.action[G.identity]) == self.reduce_matrix(IntMatrix.identity(r)):
            raise ModuleError("identity acts nontrivially")
        for g in range(G.order):
            for s in G.generators:
                if self.reduce_matrix(self.action[g] @ self.action[s]) != self.reduce_matrix(self.action[G.mul(g, s)]):
                    raise ModuleError(f"action is not a homomorphism at ({g}, {s})")

    @property
    def rank(self) -> int:
        return len(self.moduli)

    @property
    def size(self) -> int:
        out = 1
        for m in self.moduli:
            out *= m
        return out

    def reduce_matrix(self, A: IntMatrix):
        return _mod_rows(A.to_rows(), self.moduli)

    def reduce(self, v: Sequence[int]) -> tuple[int, ...]:
        return tuple(x % m for x, m in zip(v, self.moduli))

    def act(self, g: int, v: Sequence[int]) -> list[int]:
        return list(self.reduce(self.action[g] @ list(v)))

    @classmethod
    def trivial(cls, G: FiniteGroup, moduli: Sequence[int]) -> "FiniteModule":
        I = IntMatrix.identity(len(moduli))
        return cls(tuple(moduli), tuple(I for _ in range(G.order)), G)

    def restrict(self, sub: FiniteGroup, elems: Sequence[int]) -> "FiniteModule":
        return FiniteModule(self.moduli, tuple(self.action[g] for g in elems), sub)


def permutation_module(G: FiniteGroup, H, modulus: int) -> FiniteModule:
    """``Z/modulus`` on the left cosets ``G/H``."""
    H = frozenset(H)
    cosets: list[frozenset[int]] = []
    where = {}
    for g in range(G.order):
        if g in where:
            continue
        c = frozenset(G.mul(g, h) for h in H)
        for x in c:
            where[x] = len(cosets)
        cosets.append(c)
    k = len(cosets)
    mats = []
    for g in range(G.order):
        cols = []
        for c in cosets:
            col = [0] * k
            col[where[G.mul(g, min(c))]] = 1
            cols.append(col)
        mats.append(IntMatrix.from_columns(cols, k))
    return FiniteModule((modulus,) * k, tuple(mats), G)


def character_module(G: FiniteGroup, images: Sequence[int], modulus: int) -> FiniteModule | None:
    """Rank-one module with generator ``G.generators[i]`` acting by ``images[i]``; ``None`` if ill-defined."""
    val = {G.identity: 1}
    frontier = [G.identity]
    gens = G.generators
    while frontier:
        nxt = []
        for x in frontier:
            for s, u in zip(gens, images):
                y = G.mul(x, s)
                v = (val[x] * u) % modulus
                if y in val:
                    if val[y] != v:
                        return None
                else:
                    val[y] = v
                    nxt.append(y)
        frontier = nxt
    mats = tuple(IntMatrix.from_rows([[val[g]]]) for g in range(G.order))
    try:
        return FiniteModule((modulus,), mats, G)
    except ModuleError:
        return None


def direct_sum(A: FiniteModule, B: FiniteModule) -> FiniteModule:
    if A.group is not B.group and A.group.table != B.group.table:
        raise ModuleError("modules over different groups")
    r, s = A.rank, B.rank
    mats = []
    for X, Y in zip(A.action, B.action):
        rows = [list(row) + [0] * s for row in X.to_rows()] + [[0] * r + list(row) for row in Y.to_rows()]
        mats.append(IntMatrix.from_rows(rows, r + s))
    return FiniteModule(A.moduli + B.moduli, tuple(mats), A.group)


def _inverse_mod(P: list[list[int]], m: int) -> list[list[int]] | None:
    n = len(P)
    A = [row[:] + [int(i == j) for j in range(n)] for i, row in enumerate(P)]
    for c in range(n):
        piv = next((r for r in range(c, n) if gcd(A[r][c], m) == 1), None)
        if piv is None:
            return None
        A[c], A[piv] = A[piv], A[c]
        inv = pow(A[c][c], -1, m)
        A[c] = [(x * inv) % m for x in A[c]]
        for r in range(n):
            if r != c and A[r][c]:
                f = A[r][c]
                A[r] = [(x - f * y) % m for x, y in zip(A[r], A[c])]
    return [row[n:] for row in A]


def base_change(A: FiniteModule, rng: random.Random) -> FiniteModule:
    """Conjugate by a random invertible matrix; only for a single common modulus."""
    if len(set(A.moduli)) != 1:
        return A
    m, n = A.moduli[0], A.rank
    for _ in range(20):
        P = [[rng.randrange(m) for _ in range(n)] for _ in range(n)]
        Pi = _inverse_mod(P, m)
        if Pi is not None:
            break
    else:
        return A
    Pm, Pim = IntMatrix.from_rows(P, n), IntMatrix.from_rows(Pi, n)
    mats = tuple(IntMatrix.from_rows(_mod_rows((Pm @ X @ Pim).to_rows(), A.moduli), n) for X in A.action)
    return FiniteModule(A.moduli, mats, A.group)


def _prime_factors(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def random_ptorsion_module(G: FiniteGroup, rng: random.Random, max_rank: int = 4) -> FiniteModule:
    """A random ``Z/p^n [G]``-module: trivial, character, permutation, base-changed or a sum."""
    primes = _prime_factors(G.order) or [2]
    p = rng.choice(primes + [2, 3])
    n = rng.choice((1, 1, 2))
    m = p ** n

    def piece(budget: int) -> FiniteModule:
        kind = rng.choice(("trivial", "character", "perm", "perm"))
        if kind == "character":
            units = [u for u in range(1, m) if gcd(u, m) == 1]
            for _ in range(10):
                M = character_module(G, [rng.choice(units) for _ in G.generators], m)
                if M is not None:
                    return M
        if kind == "perm":
            subs = [C for _, C in G.cyclic_subgroups() if 1 < G.order // len(C) <= budget]
            if subs:
                return permutation_module(G, rng.choice(subs), m)
        k = rng.randint(1, min(2, budget))
        mod = [m if rng.random() < 0.7 else p for _ in range(k)]
        return FiniteModule.trivial(G, mod)

    M = piece(max_rank)
    if M.rank < max_rank and rng.random() < 0.4:
        N = piece(max_rank - M.rank)
        M = direct_sum(M, N)
    if rng.random() < 0.5:
        M = base_change(M, rng)
    return M


# ---------------------------------------------------------------------------
# H^1


@dataclass
class H1Result:
    """``H^1(G, A)`` with cocycles parametrized by their values on ``G.generators``.

    A parameter vector ``u`` (length ``k * rank``) stacks ``f(s_1), ..., f(s_k)``.
    ``value_maps[g]`` is the integer matrix with ``f(g) = value_maps[g] u`` (mod moduli).
    """

    group: FiniteGroup
    module: FiniteModule
    value_maps: list[IntMatrix]
    cocycles: Lattice                      # parameter vectors of cocycles (includes the moduli)
    trivial: Lattice                       # coboundaries plus the moduli
    presentation: AbelianPresentation      # in coordinates w.r.t. cocycles.basis()

    @property
    def order(self) -> Order:
        return self.presentation.order

    @property
    def invariant_factors(self) -> tuple[int, ...]:
        return self.presentation.invariant_factors

    def values(self, u: Sequence[int]) -> list[tuple[int, ...]]:
        return [self.module.reduce(M @ list(u)) for M in self.value_maps]

    def is_zero(self, u: Sequence[int]) -> bool:
        return u in self.trivial

    def basis_coordinates(self, u: Sequence[int]) -> list[int]:
        return _solve_echelon(self.cocycles.basis(), u)

    def cocycle(self, coords: Sequence[int]) -> list[int]:
        """Parameter vector of the class with the given Smith coordinates."""
        x = self.presentation.element(coords)
        basis = self.cocycles.basis()
        out = [0] * len(basis[0]) if basis else []
        for c, b in zip(x, basis):
            if c:
                out = [a + c * y for a, y in zip(out, b)]
        return out

    def classes(self) -> Iterator[list[int]]:
        """One representative per class (finite groups only)."""
        factors = [d for d in self.invariant_factors]
        if 0 in factors:
            raise ValueError("H^1 is infinite")
        for coords in _product_ranges(factors):
            yield self.cocycle(coords)

    def random_class(self, rng: random.Random) -> list[int]:
        return self.cocycle([rng.randrange(d) for d in self.invariant_factors])


def _product_ranges(factors: Sequence[int]) -> Iterator[list[int]]:
    if not factors:
        yield []
        return
    for rest in _product_ranges(factors[1:]):
        for c in range(factors[0]):
            yield [c] + rest


def _solve_echelon(basis: list[list[int]], v: Sequence[int]) -> list[int]:
    """Coordinates of ``v`` in an echelon lattice basis (must lie in the lattice)."""
    v = list(v)
    coords = []
    for b in basis:
        p = next(i for i, x in enumerate(b) if x)
        if v[p] % b[p]:
            raise ValueError("vector is not in the lattice")
        q = v[p] // b[p]
        coords.append(q)
        v = [x - q * y for x, y in zip(v, b)]
    if any(v):
        raise ValueError("vector is not in the lattice")
    return coords


def _moduli_vectors(dim: int, moduli: Sequence[int], blocks: int) -> list[list[int]]:
    r = len(moduli)
    out = []
    for b in range(blocks):
        for i, m in enumerate(moduli):
            v = [0] * dim
            v[b * r + i] = m
            out.append(v)
    return out


def h1_finite(G: FiniteGroup, A: FiniteModule) -> H1Result:
    if G.order > MAX_ORDER:
        raise GroupError("group exceeds the size bound")
    if A.group.table != G.table:
        raise ModuleError("module is over a different group")
    r = A.rank
    gens = G.generators
    k = len(gens)
    dim = k * r
    zero = IntMatrix.zeros(r, dim)
    F: dict[int, IntMatrix] = {G.identity: zero}
    gen_map = {}
    for j, s in enumerate(gens):
        rows = [[int(c == j * r + i) for c in range(dim)] for i in range(r)]
        gen_map[s] = IntMatrix.from_rows(rows, dim)
    constraints: list[list[int]] = []
    row_moduli: list[int] = []
    frontier = [G.identity]
    while frontier:
        nxt = []
        for g in frontier:
            for s in gens:
                h = G.mul(g, s)
                val = F[g] + A.action[g] @ gen_map[s]
                if h not in F:
                    F[h] = val
                    nxt.append(h)
                else:
                    diff = (F[h] - val).to_rows()
                    for i, row in enumerate(diff):
                        if any(row):
                            constraints.append(row)
                            row_moduli.append(A.moduli[i])
        frontier = nxt

    # solve C u = 0 mod row moduli, inside the lattice that already contains the moduli
    moduli_vecs = _moduli_vectors(dim, A.moduli, k)
    Z = congruence_lattice(constraints, row_moduli, dim)
    for v in moduli_vecs:
        Z.add(v)

    B = Lattice(dim, moduli_vecs)
    I = IntMatrix.identity(r)
    for i in range(r):
        a = [int(i == j) for j in range(r)]
        v = []
        for s in gens:
            v += ((A.action[s] - I) @ a)
        B.add(v)
    if not B.is_sublattice_of(Z):
        raise AssertionError("coboundaries fail the cocycle constraints")
    basis = Z.basis()
    rels = [_solve_echelon(basis, b) for b in B.basis()]
    pres = AbelianPresentation.from_relations(len(basis), rels)
    maps = [F[g] for g in range(G.order)]
    return H1Result(G, A, maps, Z, B, pres)


# ---------------------------------------------------------------------------
# restriction and witnesses


def _zero_on_subgroup_lattice(res: H1Result, sub_gens: Sequence[int]) -> Lattice:
    """Lattice of target vectors ``(f(h_1), ..., f(h_t))`` that are coboundaries on ``<h_i>``."""
    A = res.module
    r = A.rank
    dim = r * len(sub_gens)
    lat = Lattice(dim, _moduli_vectors(dim, A.moduli, len(sub_gens)))
    I = IntMatrix.identity(r)
    for i in range(r):
        a = [int(i == j) for j in range(r)]
        v = []
        for h in sub_gens:
            v += ((A.action[h] - I) @ a)
        lat.add(v)
    return lat


def _stacked_values(res: H1Result, sub_gens: Sequence[int]) -> IntMatrix:
    rows = []
    for h in sub_gens:
        rows += res.value_maps[h].to_rows()
    return IntMatrix.from_rows(rows, res.value_maps[0].cols)


def _subgroup_generators(G: FiniteGroup, H) -> list[int]:
    gens: list[int] = []
    cur = frozenset({G.identity})
    for x in sorted(H):
        if x not in cur:
            gens.append(x)
            cur = G.generated(gens)
    return gens


def restricts_to_zero(res: H1Result, u: Sequence[int], H) -> bool:
    G = res.group
    if not G.is_subgroup(H):
        raise GroupError("not a subgroup")
    gens = _subgroup_generators(G, H)
    if not gens:
        return True
    target = _stacked_values(res, gens) @ list(u)
    return target in _zero_on_subgroup_lattice(res, gens)


@dataclass(frozen=True)
class Restriction:
    subgroup: frozenset[int]
    h1: H1Result
    cocycle: list[int]

    @property
    def is_zero(self) -> bool:
        return self.h1.is_zero(self.cocycle)

    @property
    def coordinates(self) -> list[int]:
        return self.h1.presentation.reduced_coordinates(self.h1.basis_coordinates(self.cocycle))


def restrict_h1(res: H1Result, u: Sequence[int], H) -> Restriction:
    """Restrict the class of ``u`` to ``H`` and re-solve ``H^1(H, A)``."""
    G = res.group
    sub, elems = G.subgroup(H)
    sub_res = h1_finite(sub, res.module.restrict(sub, elems))
    # parameters of the restricted cocycle: its values on the subgroup's generators
    vals = []
    for s in sub.generators:
        vals += list(res.module.reduce(res.value_maps[elems[s]] @ list(u)))
    if vals not in sub_res.cocycles:
        raise AssertionError("restricted values are not a cocycle on the subgroup")
    return Restriction(frozenset(H), sub_res, vals)


@dataclass(frozen=True)
class Witness:
    generator: int
    subgroup: frozenset[int]


def cyclic_witness(res: H1Result, u: Sequence[int]) -> Witness:
    """A cyclic subgroup on which the class of ``u`` stays nonzero."""
    if res.is_zero(u):
        raise NoWitnessNeeded("class is zero")
    for g, C in res.group.cyclic_subgroups():
        if g == res.group.identity:
            continue
        if not restricts_to_zero(res, u, C):
            return Witness(g, C)
    raise AssertionError("nonzero class vanishes on every cyclic subgroup")


def cyclic_detection_kernel(res: H1Result) -> Lattice:
    """Parameters of cocycles whose restriction to every cyclic subgroup is trivial."""
    dim = res.cocycles.dim
    K = Lattice(dim, res.cocycles.basis())
    for g, _ in res.group.cyclic_subgroups():
        if g == res.group.identity:
            continue
        target = AbelianPresentation.from_relations(res.module.rank, _zero_on_subgroup_lattice(res, [g]).basis())
        rows = (target.transform @ _stacked_values(res, [g])).to_rows()
        keep = [(row, d) for row, d in zip(rows, target.diagonal) if d != 1]
        K = congruence_lattice([r for r, _ in keep], [d for _, d in keep], dim, start=K)
    return K


def cyclic_detection_is_injective(res: H1Result) -> bool:
    """Every nonzero class has a cyclic witness, decided for all classes at once."""
    return cyclic_detection_kernel(res).is_sublattice_of(res.trivial)


def inflate(res_quot: H1Result, proj: Sequence[int], G: FiniteGroup, A: FiniteModule,
            u: Sequence[int]) -> tuple[H1Result, list[int]]:
    """Pull a cocycle on ``G/N`` back to ``G``; returns ``(H1Result for G, parameters)``."""
    big = h1_finite(G, A)
    vals = []
    for s in G.generators:
        vals += list(A.reduce(res_quot.value_maps[proj[s]] @ list(u)))
    if vals not in big.cocycles:
        raise AssertionError("inflated values are not a cocycle")
    return big, vals


# ---------------------------------------------------------------------------
# file formats


def parse_table(text: str) -> FiniteGroup:
    nums = text.split()
    try:
        n = int(nums[0])
        vals = [int(x) for x in nums[1:]]
    except (IndexError, ValueError) as exc:
        raise GroupError(f"malformed table: {exc}") from None
    if len(vals) != n * n:
        raise GroupError(f"expected {n * n} entries, found {len(vals)}")
    table = tuple(tuple(vals[i * n:(i + 1) * n]) for i in range(n))
    ident = next((e for e in range(n) if all(table[e][g] == g for g in range(n))), None)
    if ident is None:
        raise GroupError("no identity element")
    return FiniteGroup(table, ident, "table")


def format_table(G: FiniteGroup) -> str:
    lines = [str(G.order)] + [" ".join(map(str, row)) for row in G.table]
    return "\n".join(lines) + "\n"


def parse_module(text: str, G: FiniteGroup) -> FiniteModule:
    """First line: the moduli; then one ``r x r`` matrix per group element, row by row."""
    lines = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    try:
        moduli = tuple(int(x) for x in lines[0])
        r = len(moduli)
        rows = [[int(x) for x in ln] for ln in lines[1:]]
    except (IndexError, ValueError) as exc:
        raise ModuleError(f"malformed module: {exc}") from None
    if len(rows) != r * G.order or any(len(row) != r for row in rows):
        raise ModuleError(f"expected {G.order} matrices of size {r}")
    mats = tuple(IntMatrix.from_rows(rows[g * r:(g + 1) * r], r) for g in range(G.order))
    return FiniteModule(moduli, mats, G)


def format_module(A: FiniteModule) -> str:
    lines = [" ".join(map(str, A.moduli))]
    for g, M in enumerate(A.action):
        lines.append(f"# element {g}")
        lines += [" ".join(map(str, row)) for row in M.to_rows()]
    return "\n".join(lines) + "\n"
